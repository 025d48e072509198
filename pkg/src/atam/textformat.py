"""Line-oriented, tab-separated tileset documents.

A document looks like::

    atam-tileset	1
    seed	0	0	0
    temperature	1
    tile	0	tooth:0	spine:0			spine0
    meta	family	comb

``seed`` gives the seed tile id and its x and y. Each ``tile`` record holds
the id, the north, east, south and west glues (an empty field is the null
glue) and an optional name. Blank lines and lines starting with ``#`` are
ignored. Rendering emits tiles by id and metadata sorted by key, so
``render_tileset(parse_tileset(x))`` is the normal form of ``x``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .model import TAS, Position, TileSet, TileType

FORMAT_NAME = "atam-tileset"
FORMAT_VERSION = 1
_FORBIDDEN = set("\t\r\n")


class ParseError(ValueError):
    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
        self.message = message


@dataclass
class TilesetDocument:
    tas: TAS
    meta: dict = field(default_factory=dict)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TilesetDocument)
            and self.tas.tileset == other.tas.tileset
            and self.tas.seed_tile == other.tas.seed_tile
            and self.tas.seed_pos == other.tas.seed_pos
            and self.meta == other.meta
        )


def _columns(line: str) -> list[tuple[int, str]]:
    """Fields with their 1-based starting column."""
    out, col = [], 1
    for part in line.split("\t"):
        out.append((col, part))
        col += len(part) + 1
    return out


def _int(lineno: int, col: int, text: str, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise ParseError(lineno, col, f"{what} must be an integer, got {text!r}") from None


def parse_tileset(text: str) -> TilesetDocument:
    header = None
    seed = None
    temperature = None
    tiles: dict[int, TileType] = {}
    meta: dict[str, str] = {}
    lines = text.replace("\r\n", "\n").split("\n")
    for lineno, line in enumerate(lines, 1):
        if not line.strip() or line.startswith("#"):
            continue
        cols = _columns(line)
        kind = cols[0][1]
        if header is None and kind != FORMAT_NAME:
            raise ParseError(lineno, 1, f"expected '{FORMAT_NAME}' header line, got {kind!r}")
        if kind == FORMAT_NAME:
            if header is not None:
                raise ParseError(lineno, 1, "duplicate header line")
            if len(cols) != 2:
                raise ParseError(lineno, 1, "header takes exactly one field: the format version")
            header = _int(lineno, cols[1][0], cols[1][1], "format version")
            if header != FORMAT_VERSION:
                raise ParseError(lineno, cols[1][0], f"unsupported format version {header}")
        elif kind == "seed":
            if seed is not None:
                raise ParseError(lineno, 1, "duplicate seed declaration")
            if len(cols) != 4:
                raise ParseError(lineno, 1, "seed takes three fields: tile id, x, y")
            seed = tuple(_int(lineno, c, v, w) for (c, v), w in zip(cols[1:], ("seed tile id", "seed x", "seed y")))
        elif kind == "temperature":
            if len(cols) != 2:
                raise ParseError(lineno, 1, "temperature takes exactly one field")
            temperature = _int(lineno, cols[1][0], cols[1][1], "temperature")
            if temperature != 1:
                raise ParseError(lineno, cols[1][0], f"only temperature 1 is supported, got {temperature}")
        elif kind == "tile":
            if len(cols) not in (6, 7):
                raise ParseError(lineno, 1, "tile takes an id, four glues and an optional name")
            tid = _int(lineno, cols[1][0], cols[1][1], "tile id")
            if tid in tiles:
                raise ParseError(lineno, cols[1][0], f"duplicate tile id {tid}")
            glues = [v for _, v in cols[2:6]]
            name = cols[6][1] if len(cols) == 7 else ""
            tiles[tid] = TileType(tid, *glues, name=name)
        elif kind == "meta":
            if len(cols) != 3:
                raise ParseError(lineno, 1, "meta takes a key and a value")
            key = cols[1][1]
            if not key:
                raise ParseError(lineno, cols[1][0], "empty metadata key")
            if key in meta:
                raise ParseError(lineno, cols[1][0], f"duplicate metadata key {key!r}")
            meta[key] = cols[2][1]
        else:
            raise ParseError(lineno, 1, f"unknown record type {kind!r}")
    end = len(lines)
    if header is None:
        raise ParseError(end, 1, f"missing '{FORMAT_NAME}' header")
    if seed is None:
        raise ParseError(end, 1, "missing header field 'seed'")
    if temperature is None:
        raise ParseError(end, 1, "missing header field 'temperature'")
    if not tiles:
        raise ParseError(end, 1, "no tile records")
    missing = sorted(set(range(len(tiles))) - set(tiles))
    if missing:
        raise ParseError(end, 1, f"tile ids must be 0..{len(tiles) - 1}; missing {missing[0]}")
    if not 0 <= seed[0] < len(tiles):
        raise ParseError(end, 1, f"seed tile {seed[0]} is not a tile id")
    ts = TileSet(tiles[i] for i in range(len(tiles)))
    return TilesetDocument(TAS(ts, seed[0], Position(seed[1], seed[2])), meta)


def _check_field(text: str, what: str) -> str:
    if _FORBIDDEN & set(text):
        raise ValueError(f"{what} {text!r} contains a tab or line break")
    return text


def render_tileset(doc: TilesetDocument | TAS, meta: dict | None = None) -> str:
    if isinstance(doc, TAS):
        doc = TilesetDocument(doc, dict(meta or {}))
    tas = doc.tas
    out = [
        f"{FORMAT_NAME}\t{FORMAT_VERSION}",
        f"seed\t{tas.seed_tile}\t{tas.seed_pos.x}\t{tas.seed_pos.y}",
        f"temperature\t{tas.temperature}",
    ]
    for t in tas.tiles:
        fields = [str(t.id), *(_check_field(g, "glue") for g in t.glues)]
        if t.name:
            fields.append(_check_field(t.name, "tile name"))
        out.append("tile\t" + "\t".join(fields))
    for key in sorted(doc.meta):
        out.append(f"meta\t{_check_field(key, 'metadata key')}\t{_check_field(str(doc.meta[key]), 'metadata value')}")
    return "\n".join(out) + "\n"
