"""Exact routing times on tiny graphs by breadth-first search over configurations.

Ground truth for the routers: exact_rt finds the length of a shortest
matching sequence by BFS where each non-empty matching is one move, and
exact_routing_number takes the maximum over all permutations with a single
backward BFS from the identity configuration (each move is its own inverse,
so distances are symmetric).  Visited sets index configurations by their
Lehmer-code rank, which keeps them dense and allocation free.
"""

from __future__ import annotations

from math import factorial

from .engine import RouteProblem
from .errors import ResourceLimitError
from .topology import Graph

MATCHING_VERTEX_CAP = 10
RT_VERTEX_CAP = 8
ROUTING_NUMBER_VERTEX_CAP = 7


def all_matchings(graph: Graph, max_vertices: int = MATCHING_VERTEX_CAP):
    """Every non-empty matching of the graph, in lexicographic edge-index order."""
    if graph.n > max_vertices:
        raise ResourceLimitError(
            f"matching enumeration capped at {max_vertices} vertices, graph has {graph.n}")
    edges = graph.edges
    out: list[tuple[tuple[int, int], ...]] = []

    def extend(start: int, used: set[int], chosen: list[tuple[int, int]]) -> None:
        for idx in range(start, len(edges)):
            u, v = edges[idx]
            if u in used or v in used:
                continue
            chosen.append((u, v))
            used.update((u, v))
            out.append(tuple(chosen))
            extend(idx + 1, used, chosen)
            chosen.pop()
            used.difference_update((u, v))

    extend(0, set(), [])
    return out


def _rank(p) -> int:
    """Lehmer-code rank of a permutation within its symmetric group."""
    n = len(p)
    r = 0
    for i in range(n):
        smaller = 0
        for j in range(i + 1, n):
            if p[j] < p[i]:
                smaller += 1
        r = r * (n - i) + smaller
    return r


def _moves(graph: Graph, max_vertices: int):
    matchings = all_matchings(graph, max_vertices=max_vertices)
    return [tuple(pair for pair in m) for m in matchings]


def exact_rt(problem: RouteProblem, max_vertices: int = RT_VERTEX_CAP) -> int:
    """Minimum number of matching steps routing the problem, by forward BFS."""
    graph = problem.graph
    if graph.n > max_vertices:
        raise ResourceLimitError(
            f"exact search capped at {max_vertices} vertices, graph has {graph.n}")
    start = tuple(problem.pi)
    goal = tuple(range(graph.n))
    if start == goal:
        return 0
    moves = _moves(graph, max_vertices)
    visited = bytearray(factorial(graph.n))
    visited[_rank(start)] = 1
    frontier = [start]
    depth = 0
    while frontier:
        depth += 1
        nxt = []
        for config in frontier:
            for move in moves:
                new = list(config)
                for u, v in move:
                    new[u], new[v] = new[v], new[u]
                new_t = tuple(new)
                if new_t == goal:
                    return depth
                r = _rank(new_t)
                if not visited[r]:
                    visited[r] = 1
                    nxt.append(new_t)
        frontier = nxt
    raise ValueError("goal configuration is unreachable; is the graph connected?")


def exact_routing_number(graph: Graph,
                         max_vertices: int = ROUTING_NUMBER_VERTEX_CAP) -> int:
    """Maximum exact_rt over all permutations, via one BFS from the identity."""
    if graph.n > max_vertices:
        raise ResourceLimitError(
            f"routing-number search capped at {max_vertices} vertices, graph has {graph.n}")
    n = graph.n
    moves = _moves(graph, max_vertices)
    total = factorial(n)
    visited = bytearray(total)
    start = tuple(range(n))
    visited[_rank(start)] = 1
    frontier = [start]
    seen = 1
    depth = 0
    while frontier:
        nxt = []
        for config in frontier:
            for move in moves:
                new = list(config)
                for u, v in move:
                    new[u], new[v] = new[v], new[u]
                r = _rank(new)
                if not visited[r]:
                    visited[r] = 1
                    seen += 1
                    nxt.append(tuple(new))
        if nxt:
            depth += 1
        frontier = nxt
    if seen != total:
        raise ValueError("not every permutation is routable; is the graph connected?")
    return depth
