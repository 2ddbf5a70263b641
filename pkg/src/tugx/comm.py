"""Games restricted by a communication graph.

Players can only cooperate along links: a coalition is worth the sum of its
connected parts.  Solutions here take a game together with a graph on the
same players.  The induction solver reconstructs the equal-surplus extension
of a benchmark from link-removal equations alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable, Iterator

from .errors import DomainViolation, InconsistentSystem, UnknownName
from .games import DEFAULT_TOL, Game, Tolerance
from .solutions import Allocation, shapley

Link = tuple[int, int]


@dataclass(frozen=True)
class Graph:
    """Undirected graph on a fixed player set; links stored as (low, high)."""

    players: tuple[int, ...]
    links: frozenset[Link]

    def __post_init__(self) -> None:
        if tuple(sorted(set(self.players))) != self.players or not self.players:
            raise ValueError("players must be nonempty, strictly increasing")
        ps = set(self.players)
        for link in self.links:
            a, b = link
            if a >= b:
                raise ValueError(f"link {link} must be ordered (low, high)")
            if a not in ps or b not in ps:
                raise ValueError(f"link {link} mentions a non-player")

    @classmethod
    def from_pairs(
        cls, players: Iterable[int], pairs: Iterable[tuple[int, int]]
    ) -> "Graph":
        links = set()
        for a, b in pairs:
            if a == b:
                raise ValueError(f"self-link at player {a}")
            links.add((a, b) if a < b else (b, a))
        return cls(tuple(sorted(players)), frozenset(links))

    def without(self, link: tuple[int, int]) -> "Graph":
        a, b = link
        key = (a, b) if a < b else (b, a)
        if key not in self.links:
            raise ValueError(f"link {key} is not in the graph")
        return Graph(self.players, self.links - {key})

    def sorted_links(self) -> tuple[Link, ...]:
        return tuple(sorted(self.links))


def empty_graph(players: Iterable[int]) -> Graph:
    return Graph(tuple(sorted(players)), frozenset())


def complete_graph(players: Iterable[int]) -> Graph:
    ps = tuple(sorted(players))
    return Graph(ps, frozenset(combinations(ps, 2)))


def all_graphs(players: Iterable[int]) -> Iterator[Graph]:
    """Every graph on the player set, from empty to complete."""
    ps = tuple(sorted(players))
    pairs = list(combinations(ps, 2))
    for mask in range(1 << len(pairs)):
        yield Graph(
            ps, frozenset(p for k, p in enumerate(pairs) if mask >> k & 1)
        )


def _adjacency(g: Graph) -> list[int]:
    pos = {p: k for k, p in enumerate(g.players)}
    adj = [0] * len(g.players)
    for a, b in g.links:
        adj[pos[a]] |= 1 << pos[b]
        adj[pos[b]] |= 1 << pos[a]
    return adj


def _components_of_mask(adj: list[int], mask: int) -> list[int]:
    """Connected parts of the masked players, lowest bit first."""
    comps = []
    remaining = mask
    while remaining:
        comp = remaining & -remaining
        frontier = comp
        while frontier:
            grown = 0
            f = frontier
            while f:
                b = f & -f
                f ^= b
                grown |= adj[b.bit_length() - 1]
            frontier = grown & mask & ~comp
            comp |= frontier
        comps.append(comp)
        remaining &= ~comp
    return comps


def components(g: Graph, coalition: Iterable[int] | None = None) -> tuple[frozenset[int], ...]:
    """Connected parts of the coalition (all players by default)."""
    pos = {p: k for k, p in enumerate(g.players)}
    if coalition is None:
        mask = (1 << len(g.players)) - 1
    else:
        mask = 0
        for p in coalition:
            if p not in pos:
                raise ValueError(f"player {p} is not in the graph")
            mask |= 1 << pos[p]
    adj = _adjacency(g)
    out = []
    for comp in _components_of_mask(adj, mask):
        out.append(
            frozenset(p for k, p in enumerate(g.players) if comp >> k & 1)
        )
    return tuple(out)


def restricted_game(v: Game, g: Graph) -> Game:
    """Each coalition earns the sum of its connected parts' worths."""
    if g.players != v.players:
        raise ValueError("graph and game must share the player set")
    adj = _adjacency(g)
    worth = [0.0]
    for mask in range(1, 1 << v.n):
        worth.append(
            math.fsum(v.worth[c] for c in _components_of_mask(adj, mask))
        )
    return Game(v.players, tuple(worth))


def myerson(v: Game, g: Graph) -> Allocation:
    """Shapley payoffs of the link-restricted game."""
    return shapley(restricted_game(v, g))


GraphBenchmark = Callable[[Game, Graph], Allocation]


@dataclass(frozen=True, eq=False)
class GraphSolution:
    """Named payoff rule for (game, graph) pairs; identity goes by name."""

    name: str
    kind: str
    func: GraphBenchmark = field(repr=False)

    def __call__(self, v: Game, g: Graph) -> Allocation:
        if g.players != v.players:
            raise ValueError("graph and game must share the player set")
        out = self.func(v, g)
        if out.players != v.players:
            raise ValueError(f"graph solution {self.name!r} misaligned its payoffs")
        return out

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GraphSolution) and other.name == self.name

    def __hash__(self) -> int:
        return hash(self.name)


def apply_graph_ess_operator(F: GraphBenchmark, v: Game, g: Graph) -> Allocation:
    """Benchmark payoffs plus an equal share of the leftover surplus."""
    out = F(v, g)
    share = (v.grand - math.fsum(out.values)) / v.n
    return Allocation(v.players, tuple(x + share for x in out.values))


def ee_myerson(v: Game, g: Graph) -> Allocation:
    return apply_graph_ess_operator(myerson, v, g)


MYERSON_SOLUTION = GraphSolution("myerson", "restricted-shapley", myerson)
EE_MYERSON = GraphSolution("ee-myerson", "ess-extension", ee_myerson)
ZERO_GRAPH = GraphSolution(
    "zero", "zero", lambda v, g: Allocation(v.players, (0.0,) * v.n)
)


def graph_ess_solution(F: GraphSolution) -> GraphSolution:
    """The equal-surplus extension of a named benchmark, as a solution."""
    return GraphSolution(
        f"graph-ess[{F.name}]",
        "ess-extension",
        lambda v, g: apply_graph_ess_operator(F, v, g),
    )


@dataclass(frozen=True, eq=False)
class GraphOperator:
    """Named map from a graph benchmark and a (game, graph) pair to payoffs."""

    name: str
    func: Callable[[GraphBenchmark, Game, Graph], Allocation] = field(repr=False)

    def __call__(self, F: GraphBenchmark, v: Game, g: Graph) -> Allocation:
        return self.func(F, v, g)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GraphOperator) and other.name == self.name

    def __hash__(self) -> int:
        return hash(self.name)


GRAPH_ESS_OPERATOR = GraphOperator("graph-ess", apply_graph_ess_operator)


def component_surplus_share(
    F: GraphBenchmark, v: Game, g: Graph, block: Iterable[int]
) -> float:
    """Benchmark total of a component plus its head-count surplus share."""
    blk = frozenset(block)
    if blk not in components(g):
        raise DomainViolation(f"{tuple(sorted(blk))} is not a component")
    out = F(v, g)
    surplus = v.grand - math.fsum(out.values)
    return math.fsum(out[i] for i in sorted(blk)) + len(blk) * surplus / v.n


def solve_by_fairness_induction(
    F: GraphBenchmark,
    v: Game,
    g: Graph,
    tol: Tolerance = DEFAULT_TOL,
    cache: dict[frozenset[Link], Allocation] | None = None,
) -> Allocation:
    """Reconstruct the equal-surplus extension of F from two constraints.

    Per graph level: each component's payoff total equals its benchmark
    total plus a head-count share of the surplus, and removing any link
    changes both endpoints' payoffs equally (which fixes payoff gaps from
    the already-solved smaller graph).  A gap equation that the solved
    payoffs fail to satisfy means the constraints are inconsistent for this
    benchmark.  Recursion visits every link subset once; capped at 12 links.

    Pass a dict as ``cache`` to share solved levels across calls with the
    same benchmark and game.
    """
    if g.players != v.players:
        raise ValueError("graph and game must share the player set")
    if len(g.links) > 12:
        raise ValueError("fairness induction is limited to 12 links")
    memo = cache if cache is not None else {}

    def solve(links: frozenset[Link]) -> Allocation:
        hit = memo.get(links)
        if hit is not None:
            return hit
        level = Graph(v.players, links)
        gaps: dict[Link, float] = {}
        for link in links:
            sub = solve(links - {link})
            gaps[link] = sub[link[0]] - sub[link[1]]
        bench = F(v, level)
        surplus = v.grand - math.fsum(bench.values)
        payoffs: dict[int, float] = {}
        for comp in components(level):
            block_total = (
                math.fsum(bench[i] for i in sorted(comp))
                + len(comp) * surplus / v.n
            )
            members = sorted(comp)
            rel = {members[0]: 0.0}
            frontier = [members[0]]
            while frontier:
                a = frontier.pop()
                for link in links:
                    if a not in link:
                        continue
                    b = link[1] if link[0] == a else link[0]
                    if b in rel:
                        continue
                    # gaps[link] is payoff(low) - payoff(high)
                    rel[b] = rel[a] - gaps[link] if a == link[0] else rel[a] + gaps[link]
                    frontier.append(b)
            shift = (block_total - math.fsum(rel[i] for i in members)) / len(comp)
            for i in members:
                payoffs[i] = rel[i] + shift
        scale = max(
            [1.0]
            + [abs(x) for x in payoffs.values()]
            + [abs(x) for x in gaps.values()]
        )
        slack = 1000.0 * (tol.abs_eps + tol.rel_eps * scale)
        for link, gap in gaps.items():
            if abs((payoffs[link[0]] - payoffs[link[1]]) - gap) > slack:
                raise InconsistentSystem(
                    f"link {link}: gap equations disagree beyond {slack:g}"
                )
        out = Allocation.from_mapping(payoffs)
        memo[links] = out
        return out

    return solve(g.links)


def freeze_graph_solution(F: GraphSolution, v0: Game, g0: Graph) -> GraphSolution:
    """Restrict F to inputs sharing the given game or the given graph."""

    def func(v: Game, g: Graph) -> Allocation:
        if v != v0 and g != g0:
            raise DomainViolation("input is outside the frozen cross domain")
        return F(v, g)

    return GraphSolution(f"frozen[{F.name}]", "frozen", func)


def graph_table_solution(
    name: str, entries: dict[tuple[Game, Graph], Allocation]
) -> GraphSolution:
    """Finite lookup; off-table pairs are a domain violation."""
    frozen = dict(entries)

    def func(v: Game, g: Graph) -> Allocation:
        try:
            return frozen[(v, g)]
        except KeyError:
            raise DomainViolation(f"{name!r} has no entry for this input") from None

    return GraphSolution(name, "table", func)


_BASE: dict[str, GraphSolution] = {
    s.name: s for s in (MYERSON_SOLUTION, EE_MYERSON, ZERO_GRAPH)
}


def named_graph_solution(name: str) -> GraphSolution:
    if name in _BASE:
        return _BASE[name]
    if name.startswith("graph-ess[") and name.endswith("]"):
        return graph_ess_solution(named_graph_solution(name[len("graph-ess[") : -1]))
    raise UnknownName(f"unknown graph solution {name!r}")
