import pytest
from hypothesis import given, settings

from atam.generators import comb, efficient_path
from atam.textformat import ParseError, TilesetDocument, parse_tileset, render_tileset

from strategies import documents

COMB2 = """atam-tileset\t1
seed\t0\t0\t0
temperature\t1
tile\t0\ttooth:0\tspine:0\t\t\tspine0
tile\t1\ttooth:0\t\t\tspine:0\tspine1
tile\t2\t\t\ttooth:0\t\ttooth1
meta\tA\t0,0
meta\tB\t1,1
meta\tbound\t0,0,1,1
meta\tfamily\tCOMB
meta\tn\t2
meta\ttiles\t3
"""


def test_comb2_golden():
    g = comb(2)
    assert render_tileset(TilesetDocument(g.tas, g.meta)) == COMB2


def test_round_trip_generated_families():
    for g in (comb(5), efficient_path(1)):
        doc = TilesetDocument(g.tas, g.meta)
        assert parse_tileset(render_tileset(doc)) == doc


@settings(max_examples=200, deadline=None)
@given(documents())
def test_parse_render_round_trip(doc):
    text = render_tileset(doc)
    assert parse_tileset(text) == doc
    assert render_tileset(parse_tileset(text)) == text


def test_comments_and_blank_lines_are_ignored():
    text = "# a comment\n\n" + COMB2.replace("temperature", "# note\ntemperature")
    assert render_tileset(parse_tileset(text)) == COMB2


def test_crlf_is_accepted():
    assert render_tileset(parse_tileset(COMB2.replace("\n", "\r\n"))) == COMB2


def test_render_accepts_a_bare_system():
    assert render_tileset(comb(2).tas).startswith("atam-tileset\t1\n")


def test_missing_seed_names_the_field():
    text = COMB2.replace("seed\t0\t0\t0\n", "")
    with pytest.raises(ParseError, match="seed"):
        parse_tileset(text)


@pytest.mark.parametrize(
    "text,needle",
    [
        ("", "header"),
        ("tile\t0\t\t\t\t\n", "header"),
        (COMB2.replace("temperature\t1\n", ""), "temperature"),
        (COMB2.replace("temperature\t1", "temperature\t2"), "temperature 1"),
        (COMB2.replace("tile\t1", "tile\t0"), "duplicate tile id"),
        (COMB2.replace("tile\t2", "tile\t7"), "missing 2"),
        (COMB2.replace("seed\t0\t0\t0", "seed\t9\t0\t0"), "seed tile 9"),
        (COMB2.replace("seed\t0\t0\t0", "seed\tx\t0\t0"), "integer"),
        (COMB2 + "bogus\t1\n", "unknown record"),
        (COMB2 + "meta\tn\t3\n", "duplicate metadata"),
        (COMB2.replace("atam-tileset\t1", "atam-tileset\t2"), "version"),
    ],
)
def test_parse_errors(text, needle):
    with pytest.raises(ParseError, match=needle):
        parse_tileset(text)


def test_parse_error_positions():
    with pytest.raises(ParseError) as err:
        parse_tileset(COMB2.replace("seed\t0\t0\t0", "seed\t0\tx\t0"))
    assert err.value.line == 2 and err.value.column == 8


def test_render_rejects_tabs_in_labels():
    from atam.model import TAS, TileSet, TileType

    with pytest.raises(ValueError):
        render_tileset(TAS(TileSet([TileType(0, north="a\tb")])))
