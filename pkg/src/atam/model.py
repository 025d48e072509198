"""Core temperature-1 aTAM semantics.

Tiles carry one glue label per side. Every non-null glue has strength one,
so a tile may attach wherever one of its sides matches an occupied
neighbour. The null glue is the empty string and never binds.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, NamedTuple, Sequence

NULL = ""


class Direction(Enum):
    N = (0, 1)
    E = (1, 0)
    S = (0, -1)
    W = (-1, 0)

    @property
    def dx(self) -> int:
        return self.value[0]

    @property
    def dy(self) -> int:
        return self.value[1]

    @property
    def opposite(self) -> "Direction":
        return _OPPOSITE[self]

    def cw(self, times: int = 1) -> "Direction":
        return CLOCKWISE[(CLOCKWISE.index(self) + times) % 4]

    def ccw(self, times: int = 1) -> "Direction":
        return CLOCKWISE[(CLOCKWISE.index(self) - times) % 4]

    def __repr__(self) -> str:
        return self.name


CLOCKWISE = (Direction.N, Direction.E, Direction.S, Direction.W)
_OPPOSITE = {
    Direction.N: Direction.S,
    Direction.S: Direction.N,
    Direction.E: Direction.W,
    Direction.W: Direction.E,
}


class Position(NamedTuple):
    x: int
    y: int

    def step(self, d: Direction) -> "Position":
        return Position(self.x + d.dx, self.y + d.dy)

    def __add__(self, other):  # type: ignore[override]
        return Position(self.x + other[0], self.y + other[1])

    def __sub__(self, other):
        return Position(self.x - other[0], self.y - other[1])


class Rect(NamedTuple):
    """Inclusive integer rectangle ``[xmin, xmax] x [ymin, ymax]``."""

    xmin: int
    ymin: int
    xmax: int
    ymax: int

    @classmethod
    def square(cls, n: int, margin: int = 0) -> "Rect":
        return cls(-margin, -margin, n - 1 + margin, n - 1 + margin)

    def __contains__(self, pos) -> bool:  # type: ignore[override]
        return self.xmin <= pos[0] <= self.xmax and self.ymin <= pos[1] <= self.ymax

    def cells(self) -> Iterator[Position]:
        for x in range(self.xmin, self.xmax + 1):
            for y in range(self.ymin, self.ymax + 1):
                yield Position(x, y)

    def grow(self, margin: int) -> "Rect":
        return Rect(self.xmin - margin, self.ymin - margin, self.xmax + margin, self.ymax + margin)

    @property
    def width(self) -> int:
        return self.xmax - self.xmin + 1

    @property
    def height(self) -> int:
        return self.ymax - self.ymin + 1


def direction_between(a: Position, b: Position) -> Direction:
    """Direction of the unit step from ``a`` to ``b``."""
    delta = (b[0] - a[0], b[1] - a[1])
    for d in CLOCKWISE:
        if d.value == delta:
            return d
    raise ValueError(f"positions {tuple(a)} and {tuple(b)} are not adjacent")


@dataclass(frozen=True)
class TileType:
    id: int
    north: str = NULL
    east: str = NULL
    south: str = NULL
    west: str = NULL
    name: str = ""

    def glue(self, side: Direction) -> str:
        if side is Direction.N:
            return self.north
        if side is Direction.E:
            return self.east
        if side is Direction.S:
            return self.south
        return self.west

    @property
    def glues(self) -> tuple[str, str, str, str]:
        return (self.north, self.east, self.south, self.west)


class TileSet:
    """Ordered, non-empty collection of tile types with ids ``0..n-1``."""

    def __init__(self, tiles: Iterable[TileType]):
        self.tiles: tuple[TileType, ...] = tuple(tiles)
        if not self.tiles:
            raise ValueError("a tileset needs at least one tile type")
        for i, t in enumerate(self.tiles):
            if t.id != i:
                raise ValueError(f"tile at index {i} has id {t.id}")
        # (side, glue) -> ids of tiles that can sit on that side of a tile
        # exposing `glue` there
        binders: dict[tuple[Direction, str], list[int]] = {}
        for t in self.tiles:
            for d in CLOCKWISE:
                g = t.glue(d.opposite)
                if g != NULL:
                    binders.setdefault((d, g), []).append(t.id)
        self._binders = {k: tuple(v) for k, v in binders.items()}

    @classmethod
    def from_glues(cls, glues: Sequence[Sequence[str]], names: Sequence[str] | None = None) -> "TileSet":
        """Build from ``(north, east, south, west)`` rows."""
        names = names or [""] * len(glues)
        return cls(TileType(i, *row, name=nm) for i, (row, nm) in enumerate(zip(glues, names)))

    def __len__(self) -> int:
        return len(self.tiles)

    def __iter__(self) -> Iterator[TileType]:
        return iter(self.tiles)

    def __getitem__(self, i: int) -> TileType:
        return self.tiles[i]

    def __eq__(self, other) -> bool:
        return isinstance(other, TileSet) and self.tiles == other.tiles

    def __hash__(self) -> int:
        return hash(self.tiles)

    def __repr__(self) -> str:
        return f"TileSet({len(self.tiles)} tiles)"

    def binders(self, tile: int, side: Direction) -> tuple[int, ...]:
        """Tile ids able to attach on ``side`` of tile ``tile``."""
        g = self.tiles[tile].glue(side)
        if g == NULL:
            return ()
        return self._binders.get((side, g), ())


@dataclass(frozen=True)
class TAS:
    tileset: TileSet
    seed_tile: int = 0
    seed_pos: Position = Position(0, 0)
    temperature: int = 1

    def __post_init__(self):
        if self.temperature != 1:
            raise ValueError(f"only temperature 1 is supported, got {self.temperature}")
        if not 0 <= self.seed_tile < len(self.tileset):
            raise ValueError(f"seed tile {self.seed_tile} not in tileset")
        object.__setattr__(self, "seed_pos", Position(*self.seed_pos))

    @property
    def tiles(self) -> tuple[TileType, ...]:
        return self.tileset.tiles


class AttachError(ValueError):
    pass


class Assembly:
    """Immutable finite placement map grown from a seed.

    Growth returns a new assembly; instances may be freely shared.
    """

    __slots__ = ("_cells", "seed_pos", "_key", "_hash")

    def __init__(self, cells: dict, seed_pos: Position):
        self._cells = cells
        self.seed_pos = Position(*seed_pos)
        self._key = None
        self._hash = None

    @classmethod
    def seed(cls, tas: TAS) -> "Assembly":
        return cls({tas.seed_pos: tas.seed_tile}, tas.seed_pos)

    def __contains__(self, pos) -> bool:
        return pos in self._cells

    def __getitem__(self, pos) -> int:
        return self._cells[pos]

    def get(self, pos, default=None):
        return self._cells.get(pos, default)

    def __len__(self) -> int:
        return len(self._cells)

    def __iter__(self):
        return iter(self._cells)

    def items(self):
        return self._cells.items()

    @property
    def domain(self) -> frozenset:
        return frozenset(self._cells)

    @property
    def key(self) -> frozenset:
        if self._key is None:
            self._key = frozenset(self._cells.items())
        return self._key

    def __eq__(self, other) -> bool:
        return isinstance(other, Assembly) and self._cells == other._cells

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.key)
        return self._hash

    def __repr__(self) -> str:
        return f"Assembly({len(self._cells)} tiles)"

    def with_tile(self, pos, tile: int) -> "Assembly":
        cells = dict(self._cells)
        cells[Position(*pos)] = tile
        return Assembly(cells, self.seed_pos)

    def bbox(self) -> tuple[int, int, int, int]:
        xs = [p[0] for p in self._cells]
        ys = [p[1] for p in self._cells]
        return min(xs), min(ys), max(xs), max(ys)

    def sorted_items(self) -> list[tuple[Position, int]]:
        return sorted(self._cells.items())


def interacts(a: TileType, side: Direction, b: TileType) -> bool:
    """True iff ``b``, sitting on ``side`` of ``a``, binds to it."""
    g = a.glue(side)
    return g != NULL and g == b.glue(side.opposite)


def attachable(tas: TAS, asm: Assembly, pos, t: int) -> bool:
    pos = Position(*pos)
    if pos in asm:
        return False
    tile = tas.tiles[t]
    for d in CLOCKWISE:
        nb = asm.get(pos.step(d))
        if nb is not None and interacts(tile, d, tas.tiles[nb]):
            return True
    return False


def attach(tas: TAS, asm: Assembly, pos, t: int) -> Assembly:
    pos = Position(*pos)
    if not 0 <= t < len(tas.tileset):
        raise AttachError(f"tile {t} is not in the tileset")
    if pos in asm:
        raise AttachError(f"position {tuple(pos)} is already occupied")
    if not attachable(tas, asm, pos, t):
        raise AttachError(f"tile {t} has no matching glue with any neighbour of {tuple(pos)}")
    return asm.with_tile(pos, t)


def frontier(tas: TAS, asm: Assembly) -> list[tuple[Position, int]]:
    """All single-tile extensions, sorted by (x, y) then tile id."""
    out = set()
    ts = tas.tileset
    for pos, t in asm.items():
        for d in CLOCKWISE:
            q = pos.step(d)
            if q in asm:
                continue
            for u in ts.binders(t, d):
                out.add((q, u))
    return sorted(out)


def is_terminal(tas: TAS, asm: Assembly) -> bool:
    ts = tas.tileset
    for pos, t in asm.items():
        for d in CLOCKWISE:
            if pos.step(d) not in asm and ts.binders(t, d):
                return False
    return True


@dataclass
class AssemblySequence:
    steps: list[tuple[Position, int]] = field(default_factory=list)

    def replay(self, tas: TAS) -> Assembly:
        if not self.steps:
            raise AttachError("an assembly sequence starts at the seed")
        (p0, t0), rest = self.steps[0], self.steps[1:]
        if Position(*p0) != tas.seed_pos or t0 != tas.seed_tile:
            raise AttachError("first step must be the seed placement")
        asm = Assembly.seed(tas)
        for pos, t in rest:
            asm = attach(tas, asm, pos, t)
        return asm


def grow(tas: TAS, rng=None, max_tiles: int = 10_000, bound: "Rect | None" = None) -> tuple[Assembly, bool]:
    """Run one assembly sequence from the seed.

    Each step attaches a frontier tile chosen by ``rng`` (a ``random.Random``)
    or, without one, the smallest frontier entry. Attachments outside
    ``bound`` are ignored. Returns the assembly and whether it is terminal
    (within ``bound``) rather than cut off at ``max_tiles``.
    """
    asm = Assembly.seed(tas)
    cells = dict(asm.items())
    ts = tas.tileset
    fr: set = set()

    def add_frontier(pos):
        for d in CLOCKWISE:
            q = pos.step(d)
            if q in cells or (bound is not None and q not in bound):
                continue
            for u in ts.binders(cells[pos], d):
                fr.add((q, u))

    add_frontier(tas.seed_pos)
    while fr:
        if len(cells) >= max_tiles:
            return Assembly(cells, tas.seed_pos), False
        choices = sorted(fr)
        q, u = choices[0] if rng is None else rng.choice(choices)
        cells[q] = u
        fr = {(p, t) for p, t in fr if p != q}
        add_frontier(q)
    return Assembly(cells, tas.seed_pos), True
