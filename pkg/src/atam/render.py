"""ASCII and SVG pictures of assemblies.

Both renderers are deterministic: elements are emitted in sorted cell order
and colours are derived from tile ids only.
"""

from __future__ import annotations

from html import escape

from .model import CLOCKWISE, TAS, Assembly, Direction
from .pathcalc import Path, visible_glues

SYMBOLS = "0123456789abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"
UNIT = 20


def tile_symbol(tile: int) -> str:
    return SYMBOLS[tile % len(SYMBOLS)]


def _highlight(path: Path | None, visible: bool) -> tuple[set, set]:
    """Indices of path tiles with an east-visible or a south-visible glue."""
    if path is None or not visible:
        return set(), set()
    rep = visible_glues(path)
    return set(rep.east), set(rep.south)


def render_ascii(asm: Assembly, path: Path | None = None, visible: bool = False) -> str:
    """One character per cell, north row first.

    Tiles show their id symbol. With a ``path`` overlay, cells off the path
    become ``.``; with ``visible`` the path tiles whose glue is visible from
    the east, the south or both are drawn as ``e``, ``s`` or ``x``.
    """
    if len(asm) == 0:
        return ""
    xmin, ymin, xmax, ymax = asm.bbox()
    east, south = _highlight(path, visible)
    on_path = {} if path is None else {p: i for i, (_, p) in enumerate(path)}
    rows = []
    for y in range(ymax, ymin - 1, -1):
        row = []
        for x in range(xmin, xmax + 1):
            t = asm.get((x, y))
            if t is None:
                row.append(" ")
            elif path is None:
                row.append(tile_symbol(t))
            elif (x, y) not in on_path:
                row.append(".")
            else:
                i = on_path[(x, y)]
                if i in east and i in south:
                    row.append("x")
                elif i in east:
                    row.append("e")
                elif i in south:
                    row.append("s")
                else:
                    row.append(tile_symbol(t))
        rows.append("".join(row).rstrip())
    return "\n".join(rows) + "\n"


def _colour(tile: int) -> str:
    # golden-ratio hue spacing keeps neighbouring ids apart
    hue = (tile * 137) % 360
    return f"hsl({hue},55%,80%)"


def render_svg(
    asm: Assembly,
    tas: TAS | None = None,
    path: Path | None = None,
    labels: bool = False,
    visible: bool = False,
) -> str:
    """SVG 1.1 drawing with one unit square per tile.

    ``labels`` writes the glue of every non-null side (needs ``tas``). The
    ``path`` overlay is a polyline through tile centres; ``visible`` fills
    east-visible path tiles green, south-visible ones yellow, and thickens
    the edge carrying the visible glue.
    """
    if labels and tas is None:
        raise ValueError("glue labels need the tile assembly system")
    if len(asm) == 0:
        xmin = ymin = xmax = ymax = 0
    else:
        xmin, ymin, xmax, ymax = asm.bbox()
    w = (xmax - xmin + 1) * UNIT
    h = (ymax - ymin + 1) * UNIT

    def sx(x):
        return (x - xmin) * UNIT

    def sy(y):
        return (ymax - y) * UNIT

    east, south = _highlight(path, visible)
    index = {} if path is None else {p: i for i, (_, p) in enumerate(path)}
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">',
    ]
    for pos, t in asm.sorted_items():
        fill = _colour(t)
        i = index.get(pos)
        if i in east and i in south:
            fill = "#9acd32"
        elif i in east:
            fill = "#7fd17f"
        elif i in south:
            fill = "#f2e25c"
        out.append(
            f'<rect id="t{pos.x}_{pos.y}" x="{sx(pos.x)}" y="{sy(pos.y)}" width="{UNIT}" height="{UNIT}" '
            f'fill="{fill}" stroke="#333" stroke-width="0.5"/>'
        )
        if labels:
            tile = tas.tiles[t]
            cx, cy = sx(pos.x) + UNIT / 2, sy(pos.y) + UNIT / 2
            for d in CLOCKWISE:
                g = tile.glue(d)
                if not g:
                    continue
                lx, ly = cx + d.dx * UNIT * 0.32, cy - d.dy * UNIT * 0.32
                out.append(
                    f'<text x="{lx:g}" y="{ly:g}" font-size="3" text-anchor="middle" '
                    f'dominant-baseline="middle">{escape(g)}</text>'
                )
    if path is not None and len(path) > 1:
        pts = " ".join(f"{sx(p.x) + UNIT / 2:g},{sy(p.y) + UNIT / 2:g}" for p in path.positions)
        out.append(f'<polyline points="{pts}" fill="none" stroke="#c00" stroke-width="2"/>')
    if path is not None:
        for i in sorted(east | south):
            if i + 1 >= len(path):
                continue
            p = path[i][1]
            d = path.output_side(i)
            x0, y0 = sx(p.x), sy(p.y)
            if d is Direction.N:
                seg = (x0, y0, x0 + UNIT, y0)
            elif d is Direction.E:
                seg = (x0 + UNIT, y0, x0 + UNIT, y0 + UNIT)
            elif d is Direction.S:
                seg = (x0, y0 + UNIT, x0 + UNIT, y0 + UNIT)
            else:
                seg = (x0, y0, x0, y0 + UNIT)
            out.append(
                f'<line class="visible" x1="{seg[0]}" y1="{seg[1]}" x2="{seg[2]}" y2="{seg[3]}" '
                'stroke="#060" stroke-width="3"/>'
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_assembly(
    asm: Assembly,
    style: str = "ascii",
    tas: TAS | None = None,
    path: Path | None = None,
    labels: bool = False,
    visible: bool = False,
) -> str:
    style = style.lower()
    if style == "ascii":
        return render_ascii(asm, path, visible)
    if style == "svg":
        return render_svg(asm, tas, path, labels, visible)
    raise ValueError(f"unknown style {style!r}; use 'ascii' or 'svg'")
