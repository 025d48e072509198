"""Tileset families: the comb square, efficient paths and a fragile hook."""

from __future__ import annotations

from dataclasses import dataclass, field

from .model import CLOCKWISE, NULL, TAS, Position, Rect, TileSet, TileType, direction_between, grow
from .pathcalc import Path


@dataclass
class GeneratedSystem:
    tas: TAS
    family: str
    n: int
    expected_tile_count: int
    endpoint_A: Position
    endpoint_B: Position | None = None
    expected_domain: Rect | None = None
    expected_width: int | None = None
    bound: Rect | None = None
    main_path: Path | None = None
    extra: dict = field(default_factory=dict)

    @property
    def meta(self) -> dict:
        m = {"family": self.family, "n": str(self.n), "A": f"{self.endpoint_A.x},{self.endpoint_A.y}"}
        if self.endpoint_B is not None:
            m["B"] = f"{self.endpoint_B.x},{self.endpoint_B.y}"
        if self.expected_width is not None:
            m["width"] = str(self.expected_width)
        m["tiles"] = str(self.expected_tile_count)
        bound = self.bound or self.expected_domain
        if bound is not None:
            m["bound"] = ",".join(str(v) for v in bound)
        m.update(self.extra)
        return m


def comb(n: int) -> GeneratedSystem:
    """The ``2n-1`` tile comb: a spine along the bottom row, shared teeth above.

    Spine tile ``i`` sits at ``(i, 0)``; tooth tile ``j`` sits at height ``j``
    in every column.
    """
    if n < 1:
        raise ValueError(f"comb needs n >= 1, got {n}")
    tiles = []
    for i in range(n):
        tiles.append(
            TileType(
                i,
                north="tooth:0" if n > 1 else NULL,
                east=f"spine:{i}" if i < n - 1 else NULL,
                west=f"spine:{i - 1}" if i > 0 else NULL,
                name=f"spine{i}",
            )
        )
    for j in range(1, n):
        tiles.append(
            TileType(
                n - 1 + j,
                north=f"tooth:{j}" if j < n - 1 else NULL,
                south=f"tooth:{j - 1}",
                name=f"tooth{j}",
            )
        )
    tas = TAS(TileSet(tiles), 0, Position(0, 0))
    return GeneratedSystem(
        tas=tas,
        family="COMB",
        n=n,
        expected_tile_count=2 * n - 1,
        endpoint_A=Position(0, 0),
        endpoint_B=Position(n - 1, n - 1),
        expected_domain=Rect.square(n),
    )


def path_system(cells, names, seed_pos=None) -> TAS:
    """Tileset that makes the labelled path ``cells`` producible.

    ``names[i]`` is the tile type placed at ``cells[i]``; repeated names are
    the same type. Each step of the path glues the two touching sides, and
    sides glued to each other through shared types end up with the same
    label (union-find over ``(type, side)`` slots). All other sides are null.
    """
    if len(cells) != len(names) or not cells:
        raise ValueError("cells and names must be non-empty and of equal length")
    order = list(dict.fromkeys(names))
    idx = {n: i for i, n in enumerate(order)}
    parent: dict = {}

    def find(a):
        while parent.setdefault(a, a) != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in range(len(cells) - 1):
        d = direction_between(cells[i], cells[i + 1])
        ra, rb = find((idx[names[i]], d)), find((idx[names[i + 1]], d.opposite))
        if ra != rb:
            parent[ra] = rb
    # a glue is named after the first step that uses it
    glue_of: dict = {}
    for i in range(len(cells) - 1):
        d = direction_between(cells[i], cells[i + 1])
        r = find((idx[names[i]], d))
        glue_of.setdefault(r, f"{names[i]}>{names[i + 1]}")
    tiles = []
    for n in order:
        t = idx[n]
        glues = [glue_of[find((t, d))] if (t, d) in parent else NULL for d in CLOCKWISE]
        tiles.append(TileType(t, *glues, name=n))
    seed = Position(*cells[0]) if seed_pos is None else Position(*seed_pos)
    return TAS(TileSet(tiles), idx[names[0]], seed)


# --------------------------------------------------------------------------
# efficient paths

# glues of the connecting run that get replaced by k new types each
EFFPATH_CUTS = 4


def _cave(add, place, tag: str, roof: int, entry: int) -> Position:
    """Lay out one cave gadget; ``place`` maps local to global cells.

    In local coordinates a row of 8 tiles runs east from the origin, a
    column of ``roof`` tiles climbs from its last tile, a roof runs back west
    and a drop ends on an entry tile at height ``entry``. From there the path
    regrows row types 3, 4 and 5 at that height. The regrown row would go on
    like the original row, but the column and the roof are in its way, so
    it stops. Returns the local position of the regrown type 5, where the
    caller attaches the exit.
    """
    for x in range(8):
        add(place(x, 0), f"{tag}row{x}")
    for y in range(1, roof + 1):
        add(place(7, y), f"{tag}col{y}")
    for x in range(6, 0, -1):
        add(place(x, roof), f"{tag}roof{x}")
    for y in range(roof - 1, entry, -1):
        add(place(1, y), f"{tag}drop{y}")
    add(place(1, entry), f"{tag}entry")
    for x in range(2, 5):
        add(place(x, entry), f"{tag}row{x + 1}")
    return Position(4, entry)


def efficient_path(k: int) -> GeneratedSystem:
    """Two cave gadgets joined by a westward run with stretchable glues.

    The seed is the west end of the outer cave's row. The outer cave exits
    south from its regrown row into the band under it; the run follows that
    band west, past the seed's column, into the inner cave. The inner cave is
    the same gadget turned half a turn; its exit leads into the pocket
    between its regrown row and its roof, where the path ends at ``B``.

    Each exit glue sits on a reused row type, so it is also exposed on the
    original row. What grows there is a translated copy of the rest of the
    path (a tentacle): under the outer row for the outer exit, inside the
    inner cave's band for the inner one. Neither copy meets anything else,
    and the system has a single terminal assembly.

    For ``k > 0`` each of the ``EFFPATH_CUTS`` cut glues of the run is
    replaced by ``k`` new tile types, which adds ``EFFPATH_CUTS * k`` types
    and moves the inner cave as many columns west.
    """
    if k < 0:
        raise ValueError(f"efficient_path needs k >= 0, got {k}")
    cells: list[tuple[int, int]] = []
    names: list[str] = []

    def add(c, name):
        cells.append(tuple(c))
        names.append(name)

    exit_o = _cave(add, lambda x, y: (x, y), "o.", 10, 8)
    y_run = exit_o.y - 1
    x = exit_o.x
    add((x, y_run), "run0")
    r = 0
    cuts = []
    for c in range(EFFPATH_CUTS + 1):
        for _ in range(2):
            x, r = x - 1, r + 1
            add((x, y_run), f"run{r}")
        if c == EFFPATH_CUTS:
            break
        cuts.append(f"run{r}>run{r + 1}")
        for i in range(k):
            x -= 1
            add((x, y_run), f"cut{c}.{i}")
    ox, oy = x - 1, y_run
    exit_i = _cave(add, lambda u, v: (ox - u, oy - v), "i.", 5, 3)
    for i, u in enumerate(range(exit_i.x, 1, -1)):
        add((ox - u, oy - exit_i.y - 1), f"i.tail{i}")

    tas = path_system(cells, names)
    ids = {t.name: t.id for t in tas.tiles}
    main = Path([(ids[n], c) for n, c in zip(names, cells)])
    # the family has a single terminal assembly, so one sequence gives the bound
    asm, _ = grow(tas, None, 50 * len(cells))
    xmin, ymin, xmax, ymax = asm.bbox()
    return GeneratedSystem(
        tas=tas,
        family="EFFPATH",
        n=k,
        expected_tile_count=len(tas.tileset),
        endpoint_A=main.start,
        endpoint_B=main.end,
        expected_width=main.width(),
        bound=Rect(xmin, ymin, xmax, ymax),
        main_path=main,
        extra={"k": str(k), "cuts": ",".join(cuts)},
    )


def fragile_hook() -> GeneratedSystem:
    """Six tile types whose main path is fragile.

    The seed ``s`` is followed by two copies of ``a`` and then ``b``, which
    turns north into a hook ``c``, ``d``, ``e`` running back west. Breaking
    the path along the repeated ``a`` shifts the hook one column west, where
    it takes the cells the original hook needs.
    """
    cells = [(0, 0), (1, 0), (2, 0), (3, 0), (3, 1), (2, 1), (1, 1)]
    names = ["s", "a", "a", "b", "c", "d", "e"]
    tas = path_system(cells, names)
    ids = {t.name: t.id for t in tas.tiles}
    main = Path([(ids[n], c) for n, c in zip(names, cells)])
    return GeneratedSystem(
        tas=tas,
        family="HOOK",
        n=len(tas.tileset),
        expected_tile_count=len(tas.tileset),
        endpoint_A=main.start,
        endpoint_B=main.end,
        expected_width=main.width(),
        bound=Rect(0, 0, 3, 1),
        main_path=main,
    )
