import pytest

from tugx.coalition import make_partition
from tugx.comm import Graph
from tugx.errors import ParseError
from tugx.games import Game
from tugx.io import (
    game_payload,
    load_game_file,
    parse_game_text,
    render_game_text,
    significant,
)


def test_round_trip_plain(duo):
    text = render_game_text(duo)
    parsed = parse_game_text(text)
    assert parsed.game == duo
    assert parsed.graph is None and parsed.partition is None
    assert render_game_text(parsed.game) == text


def test_round_trip_with_structures(trio):
    g = Graph.from_pairs(trio.players, [(1, 2)])
    P = make_partition([[1, 2], [3]], trio.players)
    text = render_game_text(trio, graph=g, partition=P)
    parsed = parse_game_text(text)
    assert parsed.game == trio
    assert parsed.graph == g
    assert parsed.partition == P


def test_zero_worths_are_omitted(trio):
    payload = game_payload(trio)
    coalitions = [entry["coalition"] for entry in payload["worths"]]
    assert coalitions == [[1, 2], [1, 2, 3]]


def test_significant_rounding():
    assert significant(1 / 3) == 0.333333333333
    assert significant(6.0) == 6.0
    assert significant(-2.890625) == -2.890625


@pytest.mark.parametrize(
    "text",
    [
        "[1, 2]",
        "{",
        '{"players": [1, 2]}',
        '{"players": [1, 2], "worths": [], "bogus": 1}',
        '{"players": [1, "a"], "worths": []}',
        '{"players": [1, 2], "worths": [{"coalition": [1]}]}',
        '{"players": [1, 2], "worths": [{"coalition": [1], "value": true}]}',
        '{"players": [1, 2], "worths": [{"coalition": [3], "value": 1.0}]}',
        '{"players": [1, 2], "worths": [{"coalition": [1], "value": 1.0},'
        ' {"coalition": [1], "value": 2.0}]}',
        '{"players": [1, 2], "worths": [], "graph": [[1, 1]]}',
        '{"players": [1, 2], "worths": [], "partition": [[1]]}',
    ],
)
def test_parse_rejections(text):
    with pytest.raises(ParseError):
        parse_game_text(text)


def test_load_game_file_reports_path(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{")
    with pytest.raises(ParseError) as err:
        load_game_file(str(path))
    assert "broken.json" in str(err.value)


def test_load_game_file(tmp_path, duo):
    path = tmp_path / "duo.json"
    path.write_text(render_game_text(duo))
    assert load_game_file(str(path)).game == duo
