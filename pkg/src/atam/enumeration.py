"""Exhaustive ground truth for small systems.

Two explorers live here. ``producible_assemblies`` is a plain breadth-first
closure of single-tile attachment and counts every producible assembly.
``explore_terminals`` only cares about terminal assemblies and prunes
interleavings: a frontier cell whose every possible future occupant is
already attachable can be filled first without losing any terminal
assembly, because at temperature 1 an attachable tile stays attachable until
its cell is taken.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable

from .model import CLOCKWISE, NULL, TAS, Assembly, Position, Rect, TileSet, TileType

DELTAS = tuple(d.value for d in CLOCKWISE)  # N, E, S, W


class Finiteness(str, Enum):
    ALL_FINITE = "ALL_FINITE"
    ESCAPED_BOUND = "ESCAPED_BOUND"
    PUMP_CERTIFICATE = "PUMP_CERTIFICATE"


class ResourceError(RuntimeError):
    """Raised when an exploration exceeds its state budget."""

    def __init__(self, message: str, explored: int, terminal_found: int):
        super().__init__(f"{message} (explored {explored} states, {terminal_found} terminal so far)")
        self.explored = explored
        self.terminal_found = terminal_found


@dataclass(frozen=True)
class Escape:
    assembly: Assembly
    pos: Position
    tile: int


@dataclass
class EnumerationResult:
    producible_count: int | None
    terminal: list[Assembly]
    finiteness: Finiteness
    bound_used: Rect
    escape: Escape | None = None
    pump: tuple | None = None
    states_explored: int = 0
    assemblies: frozenset | None = None


class _Engine:
    """Integer-indexed binding tables for the hot loops."""

    def __init__(self, tas: TAS):
        ts = tas.tileset
        self.tas = tas
        self.bind = [[ts.binders(t.id, d) for d in CLOCKWISE] for t in ts]

    def extensions(self, cells: dict, pos) -> list[tuple[tuple, int]]:
        t = cells[pos]
        x, y = pos
        out = []
        for di, (dx, dy) in enumerate(DELTAS):
            q = (x + dx, y + dy)
            if q not in cells:
                for u in self.bind[t][di]:
                    out.append((q, u))
        return out

    def frontier(self, cells: dict) -> dict:
        fr: dict = {}
        for pos in cells:
            for q, u in self.extensions(cells, pos):
                fr.setdefault(q, set()).add(u)
        return fr

    def possible(self, cells: dict, bound: Rect) -> dict:
        """Over-approximate the tiles each empty in-bound cell may ever hold."""
        poss: dict = {}
        work = deque()
        bind = self.bind
        for (x, y), t in cells.items():
            for di, (dx, dy) in enumerate(DELTAS):
                q = (x + dx, y + dy)
                if q in cells or q not in bound:
                    continue
                s = poss.setdefault(q, set())
                for u in bind[t][di]:
                    if u not in s:
                        s.add(u)
                        work.append((q, u))
        while work:
            (x, y), t = work.popleft()
            for di, (dx, dy) in enumerate(DELTAS):
                q = (x + dx, y + dy)
                if q in cells or q not in bound:
                    continue
                s = poss.setdefault(q, set())
                for u in bind[t][di]:
                    if u not in s:
                        s.add(u)
                        work.append((q, u))
        return poss


def _key(cells: dict) -> frozenset:
    return frozenset(cells.items())


def _as_assembly(cells: dict, tas: TAS) -> Assembly:
    return Assembly({Position(*p): t for p, t in cells.items()}, tas.seed_pos)


def _check_bound(tas: TAS, bound: Rect) -> None:
    if tas.seed_pos not in bound:
        raise ValueError(f"bound {tuple(bound)} does not contain the seed at {tuple(tas.seed_pos)}")


def producible_assemblies(
    tas: TAS, bound: Rect, max_states: int = 200_000, keep: bool = False
) -> EnumerationResult:
    """Breadth-first closure of single-tile attachment inside ``bound``.

    Attachments that would land outside ``bound`` are not explored; the first
    one met is reported as an escape.
    """
    _check_bound(tas, bound)
    eng = _Engine(tas)
    start = {tuple(tas.seed_pos): tas.seed_tile}
    seen = {_key(start)}
    queue = deque([(start, eng.frontier(start))])
    terminal: list[Assembly] = []
    escape = None
    explored = 0
    while queue:
        cells, fr = queue.popleft()
        explored += 1
        if not fr:
            terminal.append(_as_assembly(cells, tas))
            continue
        for q in sorted(fr):
            tiles = fr[q]
            if q not in bound:
                if escape is None:
                    escape = Escape(_as_assembly(cells, tas), Position(*q), min(tiles))
                continue
            for u in sorted(tiles):
                k = _key({**cells, q: u})
                if k in seen:
                    continue
                if len(seen) >= max_states:
                    raise ResourceError("producible-assembly budget exceeded", explored, len(terminal))
                seen.add(k)
                queue.append(_place(eng, cells, fr, q, u))
    result = EnumerationResult(
        producible_count=len(seen),
        terminal=sorted(terminal, key=lambda a: a.sorted_items()),
        finiteness=Finiteness.ALL_FINITE,
        bound_used=bound,
        states_explored=explored,
        assemblies=frozenset(seen) if keep else None,
    )
    _finish(result, escape, tas)
    return result


def _finish(result: EnumerationResult, escape: Escape | None, tas: TAS) -> None:
    if escape is None:
        return
    result.escape = escape
    result.finiteness = Finiteness.ESCAPED_BOUND
    cert = _pump_from_escape(escape, tas)
    if cert is not None:
        result.finiteness = Finiteness.PUMP_CERTIFICATE
        result.pump = cert


def _pump_from_escape(escape: Escape, tas: TAS):
    """Look for a pumpable seed-to-escape path inside the escaping assembly."""
    from .analysis import is_pumpable
    from .pathcalc import Path

    tiles = tas.tiles
    asm = escape.assembly
    cells = dict(asm.items())
    cells[escape.pos] = escape.tile
    parent = {asm.seed_pos: None}
    queue = deque([asm.seed_pos])
    while queue:
        p = queue.popleft()
        for d in CLOCKWISE:
            q = p.step(d)
            if q in cells and q not in parent:
                g = tiles[cells[p]].glue(d)
                if g != NULL and g == tiles[cells[q]].glue(d.opposite):
                    parent[q] = p
                    queue.append(q)
    if escape.pos not in parent:
        return None
    chain = []
    p = escape.pos
    while p is not None:
        chain.append((cells[p], p))
        p = parent[p]
    chain.reverse()
    ok, cert = is_pumpable(Path(chain))
    return cert if ok else None


def explore_terminals(
    tas: TAS,
    bound: Rect,
    max_states: int = 200_000,
    stop_on_escape: bool = False,
    reject=None,
) -> EnumerationResult:
    """Find every terminal assembly reachable inside ``bound``.

    ``producible_count`` is left as ``None``: interleavings that cannot change
    the set of terminal assemblies are skipped, so the number of states
    visited is not the number of producible assemblies.

    With ``stop_on_escape`` the search ends at the first escape. ``reject`` is
    an optional predicate on terminal assemblies; the search ends at the
    first terminal assembly it accepts, which is then the last one listed.
    """
    _check_bound(tas, bound)
    eng = _Engine(tas)
    start = {tuple(tas.seed_pos): tas.seed_tile}
    poss0 = eng.possible(start, bound)
    seen: set = set()
    terminal: dict = {}
    escape = None
    explored = 0
    popped: set = set()
    stack = [(start, eng.frontier(start))]
    while stack:
        cells, fr = stack.pop()
        # siblings often reach the same state; only new ones count
        k = _key(cells)
        if k in popped:
            continue
        popped.add(k)
        # saturate forced moves
        while True:
            explored += 1
            if explored > max_states:
                raise ResourceError("terminal-exploration budget exceeded", explored, len(terminal))
            forced = None
            for q, tiles in fr.items():
                if q in bound and len(tiles) == 1 and poss0.get(q, tiles) <= tiles:
                    forced = q
                    break
            if forced is None:
                break
            (u,) = fr[forced]
            cells, fr = _place(eng, cells, fr, forced, u)
        outside = [q for q in fr if q not in bound]
        if outside and escape is None:
            q = min(outside)
            escape = Escape(_as_assembly(cells, tas), Position(*q), min(fr[q]))
            if stop_on_escape:
                break
        inside = {q: s for q, s in fr.items() if q in bound}
        if not inside:
            if not outside:
                k = _key(cells)
                terminal.setdefault(k, cells)
                if reject is not None and reject(cells):
                    break
            continue
        k = _key(cells)
        if k in seen:
            continue
        seen.add(k)
        pick = _persistent_cell(inside, poss0)
        if pick is None:
            pick = _persistent_cell(inside, eng.possible(cells, bound))
        if pick is not None:
            moves = [(pick, u) for u in sorted(inside[pick], reverse=True)]
        else:
            moves = [(q, u) for q in sorted(inside, reverse=True) for u in sorted(inside[q], reverse=True)]
        for q, u in moves:
            stack.append(_place(eng, cells, fr, q, u))
    result = EnumerationResult(
        producible_count=None,
        terminal=sorted((_as_assembly(c, tas) for c in terminal.values()), key=lambda a: a.sorted_items()),
        finiteness=Finiteness.ALL_FINITE,
        bound_used=bound,
        states_explored=explored,
    )
    _finish(result, escape, tas)
    return result


def _persistent_cell(inside: dict, poss: dict):
    best = None
    for q in sorted(inside):
        tiles = inside[q]
        if poss.get(q, tiles) <= tiles and (best is None or len(tiles) < len(inside[best])):
            best = q
    return best


def _place(eng: _Engine, cells: dict, fr: dict, q, u):
    child = dict(cells)
    child[q] = u
    cfr = {p: s for p, s in fr.items() if p != q}
    for p, v in eng.extensions(child, q):
        s = cfr.get(p)
        if s is None:
            cfr[p] = {v}
        elif v not in s:
            cfr[p] = s | {v}
    return child, cfr


def terminal_assemblies(tas: TAS, bound: Rect, max_states: int = 200_000) -> list[Assembly]:
    return explore_terminals(tas, bound, max_states).terminal


# --------------------------------------------------------------------------
# squares


@dataclass
class SquareVerdict:
    ok: bool
    reason: str = ""
    counterexample: Assembly | None = None

    def __bool__(self) -> bool:
        return self.ok


def verify_square(tas: TAS, n: int, max_states: int = 200_000) -> SquareVerdict:
    """Do all terminal assemblies have domain exactly ``{0..n-1}^2``?"""
    # Any tile placed outside the square stays in every terminal assembly
    # above it, so leaving the square is already a failure.
    bound = Rect.square(n)
    if tas.seed_pos not in bound:
        return SquareVerdict(False, "seed outside the square")
    res = explore_terminals(
        tas, bound, max_states, stop_on_escape=True, reject=lambda cells: len(cells) != n * n
    )
    if res.escape is not None:
        e = res.escape
        return SquareVerdict(False, f"tile {e.tile} can attach outside the square at {tuple(e.pos)}", e.assembly)
    for asm in res.terminal:
        if len(asm) != n * n:
            return SquareVerdict(False, "terminal assembly with wrong domain", asm)
    return SquareVerdict(True)


# --------------------------------------------------------------------------
# canonical brute force over tiny tilesets


def canonical_form(glues: Iterable[tuple], seed: int = 0) -> tuple:
    """Canonical representative of a tileset up to symmetry.

    ``glues`` holds ``(north, east, south, west)`` rows. Symmetries quotiented:
    renaming of vertical glues (N/S) and of horizontal glues (E/W)
    independently, permutation of non-seed tiles, and the seed tile is moved
    to index 0. A label that never appears on the opposite side can never
    bind and is replaced by the null glue.
    """
    rows = [tuple(r) for r in glues]
    rows = _drop_dead_labels(rows)
    seed_row = rows[seed]
    others = rows[:seed] + rows[seed + 1:]
    best = None
    for perm in set(itertools.permutations(others)):
        cand = _relabel([seed_row, *perm])
        if best is None or cand < best:
            best = cand
    return best


def _drop_dead_labels(rows: list[tuple]) -> list[tuple]:
    norths = {r[0] for r in rows}
    souths = {r[2] for r in rows}
    easts = {r[1] for r in rows}
    wests = {r[3] for r in rows}
    live_v = (norths & souths) - {NULL, 0}
    live_h = (easts & wests) - {NULL, 0}

    def f(g, live):
        return g if g in live else 0

    return [(f(n, live_v), f(e, live_h), f(s, live_v), f(w, live_h)) for n, e, s, w in rows]


def _relabel(rows: list[tuple]) -> tuple:
    vmap: dict = {}
    hmap: dict = {}
    out = []
    for n, e, s, w in rows:
        row = []
        for g, m in ((n, vmap), (e, hmap), (s, vmap), (w, hmap)):
            if g in (0, NULL):
                row.append(0)
            else:
                if g not in m:
                    m[g] = len(m) + 1
                row.append(m[g])
        out.append(tuple(row))
    return tuple(out)


def system_from_canonical(form: tuple, seed_pos=(0, 0)) -> TAS:
    tiles = []
    for i, (n, e, s, w) in enumerate(form):
        lab = lambda axis, g: f"{axis}{g}" if g else NULL  # noqa: E731
        tiles.append(TileType(i, lab("v", n), lab("h", e), lab("v", s), lab("h", w)))
    return TAS(TileSet(tiles), 0, Position(*seed_pos))


@dataclass
class SearchReport:
    n: int
    max_tiles: int
    systems_scanned: int = 0
    fillers: list = field(default_factory=list)
    min_tiles_found: int | None = None
    complete: bool = True
    seed_positions: tuple = ((0, 0),)

    def to_text(self) -> str:
        lines = [
            f"n: {self.n}",
            f"max_tiles: {self.max_tiles}",
            f"seed_positions: {' '.join(f'{x},{y}' for x, y in self.seed_positions)}",
            f"systems_scanned: {self.systems_scanned}",
            f"complete: {'yes' if self.complete else 'no'}",
            f"min_tiles_found: {'NONE' if self.min_tiles_found is None else self.min_tiles_found}",
            f"fillers: {len(self.fillers)}",
        ]
        for seed_pos, form in sorted(self.fillers):
            body = " ".join("/".join(str(g) for g in row) for row in form)
            lines.append(f"  seed {seed_pos[0]},{seed_pos[1]}: {body}")
        return "\n".join(lines) + "\n"


def _rgs_assignments(slots: int, max_labels: int):
    """Label sequences where each new non-null label is the next integer."""

    def rec(prefix, used):
        if len(prefix) == slots:
            yield tuple(prefix)
            return
        for g in range(0, min(used + 1, max_labels) + 1):
            prefix.append(g)
            yield from rec(prefix, max(used, g))
            prefix.pop()

    yield from rec([], 0)


def canonical_systems(tiles: int, max_glue_pairs: int | None = None):
    """Yield each canonical tileset with exactly ``tiles`` tile types once."""
    max_labels = tiles if max_glue_pairs is None else min(tiles, max_glue_pairs)
    vert = list(_rgs_assignments(2 * tiles, max_labels))
    horiz = list(_rgs_assignments(2 * tiles, max_labels))
    for v in vert:
        for h in horiz:
            rows = tuple((v[2 * i], h[2 * i], v[2 * i + 1], h[2 * i + 1]) for i in range(tiles))
            if canonical_form(rows) == rows:
                yield rows


def scan_canonical(
    n: int,
    tiles: int,
    max_glue_pairs: int | None = None,
    seed_positions: Iterable = ((0, 0),),
    worker: int = 0,
    workers: int = 1,
):
    """Yield ``(seed_pos, form)`` for every filler in one partition of the classes."""
    seed_positions = tuple(tuple(p) for p in seed_positions)
    scanned = 0
    found = []
    for idx, form in enumerate(canonical_systems(tiles, max_glue_pairs)):
        if idx % workers != worker:
            continue
        scanned += 1
        seed = form[0]
        if seed[0] == 0 and seed[1] == 0 and seed[2] == 0 and seed[3] == 0 and n > 1:
            continue
        for sp in seed_positions:
            if verify_square(system_from_canonical(form, sp), n, max_states=20_000).ok:
                found.append((sp, form))
    return scanned, found


def _scan_job(args):
    return scan_canonical(*args)


def brute_force_min_tiles(
    n: int,
    max_tiles: int,
    max_glue_pairs: int | None = None,
    anywhere_seed: bool = False,
    workers: int = 1,
) -> SearchReport:
    """Search every canonical tileset with at most ``max_tiles`` tiles for square fillers.

    By default the seed sits at the corner ``(0, 0)``. With ``anywhere_seed``
    every seed position in the square is tried. The result does not depend on
    ``workers``.
    """
    if anywhere_seed:
        seeds = tuple((x, y) for x in range(n) for y in range(n))
    else:
        seeds = ((0, 0),)
    report = SearchReport(n=n, max_tiles=max_tiles, seed_positions=seeds)
    for k in range(1, max_tiles + 1):
        jobs = [(n, k, max_glue_pairs, seeds, w, workers) for w in range(workers)]
        if workers > 1:
            from concurrent.futures import ProcessPoolExecutor

            with ProcessPoolExecutor(workers) as ex:
                parts = list(ex.map(_scan_job, jobs))
        else:
            parts = [_scan_job(j) for j in jobs]
        for scanned, found in parts:
            report.systems_scanned += scanned
            report.fillers.extend(found)
    report.fillers.sort()
    if report.fillers:
        report.min_tiles_found = min(len(form) for _, form in report.fillers)
    return report
