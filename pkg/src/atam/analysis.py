"""Structural path analyses.

Repetitions and contraction vectors, breaking a path early along one of its
contraction vectors, tentacle restarts, pumping certificates and the
round-by-round square lower-bound construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

from .builder import BuildError, BuildResult, PriorityMode, SOracle, TileOrdering, build_path
from .model import TAS, Assembly, Direction, Position, Rect, interacts
from .pathcalc import Path, manhattan

# reading of the ambiguous breaking-branch phrase, surfaced in metadata
BREAKING_BRANCH_READING = "shortest translated suffix that restarts before its original first point"


class Repetition(NamedTuple):
    i: int
    j: int
    tile: int


class ContractionVector(NamedTuple):
    """Displacement from the later copy of a repeated type back to the earlier."""

    x: int
    y: int

    @classmethod
    def of(cls, p: Path, r: Repetition) -> "ContractionVector":
        a, b = p[r.i][1], p[r.j][1]
        return cls(a.x - b.x, a.y - b.y)


class NotApplicable(ValueError):
    code = "NOT_APPLICABLE"


def find_repetitions(p: Path) -> list[Repetition]:
    """Pairs ``i < j`` of equal tile type, by ``j - i`` then ``i``."""
    where: dict[int, list[int]] = {}
    for idx, t in enumerate(p.tiles):
        where.setdefault(t, []).append(idx)
    reps = [Repetition(i, j, t) for t, idxs in where.items() for a, i in enumerate(idxs) for j in idxs[a + 1:]]
    reps.sort(key=lambda r: (r.j - r.i, r.i))
    return reps


# --------------------------------------------------------------------------
# breaking


@dataclass
class BreakResult:
    broken_assembly: Assembly
    original_completable: bool
    repetition: Repetition
    vector: ContractionVector
    grown: Path  # the translated suffix that actually grew (may be just p[i])
    blocked_at: int | None = None  # index of the original path that could not regrow
    reading: str = BREAKING_BRANCH_READING


def _grow_sequence(tas: TAS, cells: dict, entries, stop_same: bool = False) -> int:
    """Place ``entries`` in order while each cell is free; return count placed.

    With ``stop_same`` false, a cell already holding the very same tile type
    counts as grown (the path is present there anyway).
    """
    placed = 0
    for t, q in entries:
        held = cells.get(q)
        if held is None:
            cells[q] = t
        elif held != t or stop_same:
            break
        placed += 1
    return placed


def try_break(tas: TAS, p: Path, r: Repetition) -> BreakResult:
    """Grow ``p[0..i]``, then ``p[j+1..]`` shifted by the contraction vector, then retry ``p[i+1..]``."""
    i, j = r.i, r.j
    if not (0 <= i < j < len(p)) or p[i][0] != p[j][0]:
        raise ValueError(f"({i}, {j}) is not a repetition of the path")
    v = ContractionVector.of(p, r)
    if j + 1 >= len(p):
        raise NotApplicable("the repeated tile ends the path, nothing to translate")
    cells = {q: t for t, q in p.entries[: i + 1]}
    shifted = [(t, q + v) for t, q in p.entries[j + 1:]]
    first_t, first_q = shifted[0]
    side = p.output_side(j)
    if first_q in cells or not interacts(tas.tiles[p[i][0]], side, tas.tiles[first_t]):
        raise NotApplicable("the translated suffix cannot start right after the earlier copy")
    n_grown = 0
    for t, q in shifted:
        if q in cells:
            break
        cells[q] = t
        n_grown += 1
    grown = Path([p[i]] + shifted[:n_grown])
    broken = Assembly(dict(cells), p.start)
    rest = p.entries[i + 1:]
    ok = _grow_sequence(tas, cells, rest)
    blocked_at = None if ok == len(rest) else i + 1 + ok
    return BreakResult(broken, blocked_at is None, r, v, grown, blocked_at)


# --------------------------------------------------------------------------
# tentacles and classification


@dataclass
class Classification:
    fragile: bool
    left_tentacular: bool
    right_tentacular: bool
    evidence: list = field(default_factory=list)  # (Repetition, branch index | None, outcome)
    breaking: BreakResult | None = None
    tentacles: list = field(default_factory=list)  # (Repetition, branch index, hand, translated Path, vector)

    @property
    def two_way(self) -> bool:
        return self.left_tentacular and self.right_tentacular

    def contraction_vectors(self, hand: str) -> list[ContractionVector]:
        return [v for _, _, h, _, v in self.tentacles if h == hand]


def restart_branch(tas: TAS, p: Path, r: Repetition, k: int, side: Direction, branch: Path):
    """Regrow ``branch`` (forked on ``side`` of ``p[k]``) from ``p[k - j + i]`` with all of ``p`` present.

    Returns ``(outcome, translated path grown so far)`` where outcome is
    ``grows``, ``no-bind`` or ``crash:<index>``.
    """
    anchor = k - r.j + r.i
    a, b = p[anchor][1], p[k][1]
    v = (a.x - b.x, a.y - b.y)
    moved = [(t, q + v) for t, q in branch]
    if not moved or not interacts(tas.tiles[p[anchor][0]], side, tas.tiles[moved[0][0]]):
        return "no-bind", Path([p[anchor]])
    cells = {q: t for t, q in p}
    for m, (t, q) in enumerate(moved):
        if q in cells:
            return f"crash:{m}", Path([p[anchor]] + moved[:m])
        cells[q] = t
    return "grows", Path([p[anchor]] + moved)


def classify_path(tas: TAS, p: Path, build: BuildResult | None = None) -> Classification:
    """Fragility over every repetition; tentacles over every recorded branch.

    ``p`` may be a prefix of ``build.path``; branches are clipped to it.
    """
    reps = find_repetitions(p)
    out = Classification(False, False, False)
    for r in reps:
        try:
            br = try_break(tas, p, r)
        except NotApplicable:
            out.evidence.append((r, None, "break-not-applicable"))
            continue
        out.evidence.append((r, None, "break-completable" if br.original_completable else "fragile"))
        if not br.original_completable and not out.fragile:
            out.fragile = True
            out.breaking = br
    if build is None:
        return out
    if build.path.entries[: len(p)] != p.entries:
        raise ValueError("the path is not a prefix of the built path")
    for bi, b in enumerate(build.branches):
        k = b.fork_index
        if b.hand not in ("left", "right") or k + 1 >= len(p):
            continue
        branch = Path(p.entries[k + 1:])
        for r in reps:
            if k <= r.j:
                continue
            outcome, grown = restart_branch(tas, p, r, k, b.side, branch)
            out.evidence.append((r, bi, f"{b.hand}-tentacle-{outcome}"))
            if outcome == "grows":
                out.tentacles.append((r, bi, b.hand, grown, ContractionVector.of(p, r)))
                if b.hand == "right":
                    out.right_tentacular = True
                else:
                    out.left_tentacular = True
    return out


# --------------------------------------------------------------------------
# pumping


def is_pumpable(p: Path):
    """Find a segment of ``p`` that can be repeated forever.

    Looks for ``i < j`` with the same tile type and the same input side such
    that translating ``p[i..j-1]`` by ``v = pos(j) - pos(i)`` again and again
    never meets ``p[0..j-1]`` nor an earlier copy. Copies far enough along
    ``v`` cannot meet anything, so only finitely many are checked.
    Returns ``(True, (i, j, v))`` or ``(False, None)``.
    """
    n = len(p)
    for j in range(1, n):
        tj, pj = p[j]
        ij = p.input_side(j)
        for i in range(1, j):
            ti, pi = p[i]
            if ti != tj or p.input_side(i) != ij:
                continue
            v = (pj[0] - pi[0], pj[1] - pi[1])
            if _pump_ok(p, i, j, v):
                return True, (i, j, v)
    return False, None


def _pump_ok(p: Path, i: int, j: int, v) -> bool:
    prefix = set(p.positions[:j])
    seg = p.positions[i:j]
    xs = [q[0] for q in p.positions[:j]]
    ys = [q[1] for q in p.positions[:j]]
    reach = []
    if v[0]:
        reach.append((max(xs) - min(xs)) // abs(v[0]) + 1)
    if v[1]:
        reach.append((max(ys) - min(ys)) // abs(v[1]) + 1)
    kmax = min(reach) + 1
    segset = set(seg)
    for k in range(1, kmax + 1):
        for q in seg:
            c = (q[0] + k * v[0], q[1] + k * v[1])
            if c in prefix or c in segset:
                return False
    return True


def pumped_path(p: Path, cert, copies: int) -> Path:
    """``p[0..j-1]`` followed by ``copies`` translated copies of ``p[i..j-1]``."""
    i, j, v = cert
    entries = list(p.entries[:j])
    for k in range(1, copies + 1):
        entries.extend((t, Position(q.x + k * v[0], q.y + k * v[1])) for t, q in p.entries[i:j])
    return Path(entries)


# --------------------------------------------------------------------------
# square lower-bound construction

CASES = ("FRAGILE_BREAK", "TENT_LEFT_VECTOR_BREAK", "TENT_RIGHT_GROW", "COUNT_CONTINUE", "COUNT_DONE")


class WitnessError(RuntimeError):
    def __init__(self, code: str, message: str, witness: "Witness | None" = None):
        super().__init__(f"{code}: {message}")
        self.code = code
        self.witness = witness


@dataclass
class WitnessRound:
    assembly: Assembly
    target: Position
    path: Path
    prefix: Path
    case: str
    note: str = ""


@dataclass
class Witness:
    n: int
    rounds: list[WitnessRound] = field(default_factory=list)
    final_path: Path | None = None
    distinct_tile_count: int | None = None
    finding: str = ""

    @property
    def done(self) -> bool:
        return bool(self.rounds) and self.rounds[-1].case == "COUNT_DONE"

    @property
    def claim_holds(self) -> bool | None:
        if not self.done:
            return None
        return self.distinct_tile_count >= 2 * self.n - 1

    def describe(self) -> str:
        lines = [f"n: {self.n}"]
        for k, r in enumerate(self.rounds):
            lines.append(
                f"round {k}: target={r.target.x},{r.target.y} case={r.case} "
                f"path={len(r.path)} prefix={len(r.prefix)} types={r.prefix.distinct_tiles()}"
                + (f" {r.note}" if r.note else "")
            )
        lines.append(f"distinct_tile_count: {'NONE' if self.distinct_tile_count is None else self.distinct_tile_count}")
        lines.append(f"claim_2n_minus_1: {self.claim_holds}")
        if self.finding:
            lines.append(f"finding: {self.finding}")
        return "\n".join(lines) + "\n"


def highest_prefix(p: Path) -> Path:
    """Prefix of ``p`` ending at the last visit of its highest row."""
    top = max(q.y for q in p.positions)
    last = max(i for i, q in enumerate(p.positions) if q.y == top)
    return p[: last + 1]


def next_target(cells, square: Rect) -> Position | None:
    """Leftmost cell right of the assembly and outside it; highest on ties."""
    best = None
    rows: dict[int, int] = {}
    for q in cells:
        rows[q[1]] = min(rows.get(q[1], q[0]), q[0])
    for y, xmin in rows.items():
        for x in range(xmin + 1, square.xmax + 1):
            if (x, y) not in cells:
                cand = (x, -y)
                if best is None or cand < best:
                    best = cand
                break
    if best is None:
        return None
    return Position(best[0], -best[1])


def _regrow(cells: dict, paths: list[Path]) -> list[Path]:
    kept = []
    for p in paths:
        k = _grow_sequence(None, cells, p.entries)
        if k:
            kept.append(p[:k])
    return kept


def lower_bound_witness(
    tas: TAS,
    n: int,
    round_limit: int | None = None,
    ord: TileOrdering | None = None,
    check_square: bool = True,
) -> Witness:
    """Run the round-by-round construction on a system filling the ``n x n`` square.

    Every round builds a right-priority path to the next target, keeps its
    prefix up to its last highest point, and then breaks it, grows its
    tentacles, or counts its tile types. The log is returned in full;
    departures from the expected behaviour end up in ``finding``.
    """
    from .enumeration import verify_square

    if tas.seed_pos != Position(0, 0):
        raise WitnessError("PRECONDITION", "the seed must sit at (0, 0)")
    if check_square:
        verdict = verify_square(tas, n)
        if not verdict:
            raise WitnessError("PRECONDITION", f"system does not fill the {n}x{n} square: {verdict.reason}")
    limit = round_limit if round_limit is not None else 10 * n * n
    square = Rect.square(n)
    corner_a = Position(0, n - 1)
    corner_b = Position(n - 1, n - 1)
    w = Witness(n)

    def build(target, foreign):
        return build_path(tas, PriorityMode.RIGHT, ord, SOracle(target, square), blocked=foreign)

    first = build(corner_a, ())
    paths: list[Path] = [first.path]
    extra: dict = {}  # cells of breaking branches and tentacles
    for _ in range(limit):
        cells = {q: t for p in paths for t, q in p}
        cells.update(extra)
        target = next_target(cells, square)
        if target is None:
            w.finding = "no cell left to the right of the assembly"
            return w
        snapshot = Assembly(dict(cells), tas.seed_pos)
        foreign = frozenset(extra)
        try:
            res = build(target, foreign)
        except BuildError as exc:
            w.finding = f"no path to {target.x},{target.y}: {exc.code}"
            return w
        p = res.path
        if p.end != target:
            w.finding = f"path to {target.x},{target.y} halted with {res.halt_reason.value}"
            return w
        q = highest_prefix(p)
        cls = classify_path(tas, q, res)
        if cls.fragile:
            br = cls.breaking
            case, note = "FRAGILE_BREAK", f"repetition {br.repetition.i},{br.repetition.j}"
        elif cls.right_tentacular:
            left_vec = [(r, v) for r, _, h, _, v in cls.tentacles if h == "right" and v.x <= 0]
            br = None
            for r, _ in left_vec:
                try:
                    br = try_break(tas, q, r)
                    break
                except NotApplicable:
                    continue
            if br is not None:
                case, note = "TENT_LEFT_VECTOR_BREAK", f"vector {br.vector.x},{br.vector.y}"
            else:
                case, note = "TENT_RIGHT_GROW", ""
        else:
            br = None
            case = "COUNT_DONE" if target == corner_b else "COUNT_CONTINUE"
            note = f"bound {manhattan(tas.seed_pos, target) - 1}"
        w.rounds.append(WitnessRound(snapshot, target, p, q, case, note))

        if case == "COUNT_DONE":
            w.final_path = p
            w.distinct_tile_count = q.distinct_tiles()
            if not w.claim_holds:
                w.finding = f"final path uses {w.distinct_tile_count} < {2 * n - 1} tile types"
            return w
        if case == "COUNT_CONTINUE":
            paths.append(p)
        elif br is not None:
            broken = {pos: t for pos, t in br.broken_assembly.items()}
            base = set(q.positions[: br.repetition.i + 1])
            kept = _regrow(broken, paths)
            extra = {pos: t for pos, t in broken.items() if pos not in base and all(pos not in kp for kp in kept)}
            paths = kept + [q[: br.repetition.i + 1]]
        else:
            paths.append(p)
            for _, _, h, grown, _ in cls.tentacles:
                if h != "right":
                    continue
                top = highest_prefix(grown)
                for t, pos in top.entries[1:]:
                    if pos in cells or pos in extra or pos not in square:
                        break
                    extra[pos] = t
    w.finding = f"no conclusion within {limit} rounds"
    raise WitnessError("ROUND_LIMIT", w.finding, w)
