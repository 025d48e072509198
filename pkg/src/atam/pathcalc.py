"""Path geometry: sides of path tiles, distances and visible glues."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .model import CLOCKWISE, TAS, Assembly, Direction, Position, direction_between, interacts


class Path:
    """Self-avoiding sequence of ``(tile id, position)`` entries."""

    __slots__ = ("entries", "_index")

    def __init__(self, entries: Iterable[Sequence]):
        self.entries: tuple[tuple[int, Position], ...] = tuple((int(t), Position(*p)) for t, p in entries)
        self._index = {}
        for i, (_, p) in enumerate(self.entries):
            if p in self._index:
                raise ValueError(f"position {tuple(p)} occurs twice in the path")
            self._index[p] = i
        for i in range(len(self.entries) - 1):
            direction_between(self.entries[i][1], self.entries[i + 1][1])

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return Path(self.entries[i])
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def __eq__(self, other) -> bool:
        return isinstance(other, Path) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        return f"Path({len(self.entries)} tiles, {self.start} -> {self.end})" if self.entries else "Path([])"

    @property
    def tiles(self) -> list[int]:
        return [t for t, _ in self.entries]

    @property
    def positions(self) -> list[Position]:
        return [p for _, p in self.entries]

    @property
    def start(self) -> Position:
        return self.entries[0][1]

    @property
    def end(self) -> Position:
        return self.entries[-1][1]

    def index_of(self, pos) -> int | None:
        return self._index.get(Position(*pos))

    def __contains__(self, pos) -> bool:
        return Position(*pos) in self._index

    def extend(self, tile: int, pos) -> "Path":
        return Path(self.entries + ((tile, Position(*pos)),))

    def translate(self, v) -> "Path":
        return Path((t, p + v) for t, p in self.entries)

    def output_side(self, i: int) -> Direction | None:
        if i + 1 >= len(self.entries):
            return None
        return direction_between(self.entries[i][1], self.entries[i + 1][1])

    def input_side(self, i: int) -> Direction | None:
        if i == 0:
            return None
        return direction_between(self.entries[i][1], self.entries[i - 1][1])

    def distinct_tiles(self) -> int:
        return len(set(self.tiles))

    def width(self) -> int:
        xs = [p.x for p in self.positions]
        return max(xs) - min(xs) + 1

    def as_assembly(self) -> Assembly:
        return Assembly({p: t for t, p in self.entries}, self.start)


def manhattan(a, b) -> int:
    return abs(a[0] - b[0]) + abs(a[1] - b[1])


@dataclass(frozen=True)
class SideAssignment:
    index: int
    input: Direction | None
    output: Direction | None
    left_hand: frozenset
    right_hand: frozenset


def hands(inp: Direction, out: Direction) -> tuple[frozenset, frozenset]:
    """``(left, right)`` hand sides of a tile entered on ``inp`` and left on ``out``.

    Right hand: sides strictly between input and output going
    counterclockwise from the input; left hand: the same going clockwise.
    """
    right = []
    d = inp.ccw()
    while d is not out:
        right.append(d)
        d = d.ccw()
    left = []
    d = inp.cw()
    while d is not out:
        left.append(d)
        d = d.cw()
    return frozenset(left), frozenset(right)


def side_assignments(p: Path) -> list[SideAssignment]:
    if len(p) == 0:
        raise ValueError("empty path")
    out = []
    for i in range(len(p)):
        inp, outp = p.input_side(i), p.output_side(i)
        if inp is not None and outp is not None:
            left, right = hands(inp, outp)
        else:
            left = right = frozenset()
        out.append(SideAssignment(i, inp, outp, left, right))
    return out


@dataclass(frozen=True)
class VisibleGlueReport:
    east: frozenset
    south: frozenset
    west: frozenset
    north: frozenset
    convention_index: int | None = None


def visible_glues(p: Path, top_row: int | None = None) -> VisibleGlueReport:
    """Indices of path tiles whose path glue is visible from each direction.

    ``east``: tiles leaving north whose edge is the rightmost path edge crossing
    its horizontal grid line. ``south``: tiles leaving east whose edge is the
    lowest one crossing its vertical grid line. ``west`` and ``north`` mirror
    these (leftmost north-going edge, highest east-going edge).

    The rightmost tile of row ``top_row`` (default: highest row of the path)
    also counts in ``east`` and ``south`` when it is the last tile of the path;
    the convention only stands in for the endpoint's missing output glue.
    """
    # crossings[(axis, line)] -> list of (coordinate along line, index, step)
    horiz: dict[int, list] = {}
    vert: dict[int, list] = {}
    for i in range(len(p) - 1):
        a, b = p[i][1], p[i + 1][1]
        d = direction_between(a, b)
        if d.dx == 0:
            horiz.setdefault(min(a.y, b.y), []).append((a.x, i, d))
        else:
            vert.setdefault(min(a.x, b.x), []).append((a.y, i, d))
    east, west, south, north = set(), set(), set(), set()
    for edges in horiz.values():
        x, i, d = max(edges)
        if d is Direction.N:
            east.add(i)
        x, i, d = min(edges)
        if d is Direction.N:
            west.add(i)
    for edges in vert.values():
        y, i, d = min(edges)
        if d is Direction.E:
            south.add(i)
        y, i, d = max(edges)
        if d is Direction.E:
            north.add(i)
    conv = None
    if len(p):
        row = max(q.y for q in p.positions) if top_row is None else top_row
        on_row = [(q.x, i) for i, (_, q) in enumerate(p) if q.y == row]
        if on_row:
            _, i = max(on_row)
            if i == len(p) - 1:
                conv = i
                east.add(i)
                south.add(i)
    return VisibleGlueReport(frozenset(east), frozenset(south), frozenset(west), frozenset(north), conv)


def path_interacts(tas: TAS, p: Path) -> bool:
    tiles = tas.tiles
    for i in range(len(p) - 1):
        (t, a), (u, b) = p[i], p[i + 1]
        if not interacts(tiles[t], direction_between(a, b), tiles[u]):
            return False
    return True


def is_producible_path(tas: TAS, p: Path) -> bool:
    if len(p) == 0:
        return False
    t0, p0 = p[0]
    if t0 != tas.seed_tile or p0 != tas.seed_pos:
        return False
    return path_interacts(tas, p)


def binding_path(tas: TAS, asm: Assembly, a, b) -> Path | None:
    """Shortest path of interacting tiles from ``a`` to ``b`` inside ``asm``."""
    a, b = Position(*a), Position(*b)
    if a not in asm or b not in asm:
        return None
    tiles = tas.tiles
    parent = {a: None}
    queue = deque([a])
    while queue:
        p = queue.popleft()
        if p == b:
            break
        for d in CLOCKWISE:
            q = p.step(d)
            if q in asm and q not in parent and interacts(tiles[asm[p]], d, tiles[asm[q]]):
                parent[q] = p
                queue.append(q)
    if b not in parent:
        return None
    chain = []
    p = b
    while p is not None:
        chain.append((asm[p], p))
        p = parent[p]
    return Path(reversed(chain))
