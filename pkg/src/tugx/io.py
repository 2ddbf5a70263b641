"""Game files: a small JSON format plus canonical rendering.

A file holds players, a sparse worth table, and optionally a graph and a
partition.  Rendering is canonical (sorted keys, mask-ordered worths, values
at 12 significant digits, trailing newline) so that equal inputs produce
byte-equal files.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

from .coalition import Partition, make_partition
from .comm import Graph
from .errors import ParseError
from .games import Game


@dataclass(frozen=True)
class GameFile:
    game: Game
    graph: Graph | None = None
    partition: Partition | None = None


def significant(x: float) -> float:
    """Round to 12 significant digits; identity for short decimals."""
    return float(format(float(x), ".12g"))


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise ParseError(msg)


def _int_list(obj: Any, what: str) -> list[int]:
    _require(isinstance(obj, list), f"{what} must be a list")
    for x in obj:
        _require(
            isinstance(x, int) and not isinstance(x, bool),
            f"{what} must contain only integers",
        )
    return obj


def parse_game_payload(obj: Any) -> GameFile:
    _require(isinstance(obj, dict), "game file must be a JSON object")
    unknown = set(obj) - {"players", "worths", "graph", "partition"}
    _require(not unknown, f"unknown keys: {sorted(unknown)}")
    _require("players" in obj, "missing key 'players'")
    players = _int_list(obj["players"], "'players'")
    _require("worths" in obj, "missing key 'worths'")
    _require(isinstance(obj["worths"], list), "'worths' must be a list")
    table: dict[tuple[int, ...], float] = {}
    for k, entry in enumerate(obj["worths"]):
        _require(isinstance(entry, dict), f"worth entry {k} must be an object")
        _require(
            set(entry) == {"coalition", "value"},
            f"worth entry {k} needs exactly 'coalition' and 'value'",
        )
        coalition = tuple(_int_list(entry["coalition"], f"worth entry {k} coalition"))
        value = entry["value"]
        _require(
            isinstance(value, (int, float)) and not isinstance(value, bool),
            f"worth entry {k} value must be a number",
        )
        key = tuple(sorted(coalition))
        _require(key not in table, f"worth entry {k} repeats coalition {list(key)}")
        table[key] = float(value)
    try:
        game = Game.from_table(players, table)
    except ValueError as e:
        raise ParseError(str(e)) from None
    graph = None
    if "graph" in obj:
        _require(isinstance(obj["graph"], list), "'graph' must be a list of pairs")
        pairs = []
        for k, pair in enumerate(obj["graph"]):
            link = _int_list(pair, f"graph link {k}")
            _require(len(link) == 2, f"graph link {k} must have two players")
            pairs.append((link[0], link[1]))
        try:
            graph = Graph.from_pairs(game.players, pairs)
        except ValueError as e:
            raise ParseError(str(e)) from None
    partition = None
    if "partition" in obj:
        _require(isinstance(obj["partition"], list), "'partition' must be a list")
        blocks = [
            _int_list(b, f"partition block {k}") for k, b in enumerate(obj["partition"])
        ]
        try:
            partition = make_partition(blocks, game.players)
        except ValueError as e:
            raise ParseError(str(e)) from None
    return GameFile(game, graph, partition)


def parse_game_text(text: str) -> GameFile:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"not valid JSON: {e}") from None
    return parse_game_payload(obj)


def load_game_file(path: str) -> GameFile:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        return parse_game_text(text)
    except ParseError as e:
        raise ParseError(f"{path}: {e}") from None


def game_payload(
    v: Game, graph: Graph | None = None, partition: Partition | None = None
) -> dict[str, Any]:
    """Canonical JSON-ready form; zero worths are omitted."""
    payload: dict[str, Any] = {
        "players": list(v.players),
        "worths": [
            {"coalition": list(members), "value": significant(x)}
            for members, x in v.nonzero_table()
        ],
    }
    if graph is not None:
        payload["graph"] = [list(link) for link in graph.sorted_links()]
    if partition is not None:
        payload["partition"] = [sorted(b) for b in partition]
    return payload


def render_game_text(
    v: Game, graph: Graph | None = None, partition: Partition | None = None
) -> str:
    return json.dumps(game_payload(v, graph, partition), indent=2, sort_keys=True) + "\n"
