"""Bounded-step routers for paths and d-dimensional meshes.

route_path realizes any permutation on an n-path within n steps by odd-even
transposition: pass t compare-exchanges the edges (i, i+1) with i of parity
t mod 2, swapping only pairs that are out of destination order.

route_mesh routes a side^d mesh within (2d-1)*side steps by product
recursion: split the mesh into lines along the last axis crossed with
(d-1)-dimensional slices, edge-color the line-to-line demand multigraph
with `side` colors, route each pebble to its color's slice within its line,
recurse inside the slices to fix the remaining coordinates, then finish
within lines.  Each color class of the demand coloring is a perfect
matching, which is exactly what makes the middle phase a permutation of
every slice.

distance_swap_trace exchanges two pebbles on a path and provably restores
every pebble in between, which is what the pyramid router runs along its
vertical paths.
"""

from __future__ import annotations

from collections import Counter
from typing import Sequence

from .engine import Trace, concat_traces, merge_parallel, relabel_trace
from .errors import InternalInvariantError
from .permutation import _as_permutation, identity


def route_path(n: int, pi: Sequence[int]) -> Trace:
    """Route pi on the n-vertex path by odd-even transposition; at most n steps."""
    place = list(_as_permutation(pi))
    if len(place) != n:
        raise ValueError(f"permutation length {len(place)} != {n}")
    home = list(range(n))
    steps = []
    for t in range(n):
        if place == home:
            break
        swaps = []
        for i in range(t % 2, n - 1, 2):
            if place[i] > place[i + 1]:
                place[i], place[i + 1] = place[i + 1], place[i]
                swaps.append((i, i + 1))
        if swaps:
            steps.append(tuple(swaps))
    if place != home:
        raise InternalInvariantError("odd-even transposition did not converge in n passes")
    return Trace(steps=tuple(steps))


def distance_swap_trace(path_length: int, a: int, b: int) -> Trace:
    """Exchange the pebbles at positions a and b of a path with path_length
    edges while returning every pebble in between to its start position.

    Walks the first pebble down with adjacent swaps and unwinds all but the
    last swap: 2(b-a)-1 steps for a < b, none for a == b.
    """
    if not 0 <= a <= b <= path_length:
        raise ValueError(f"need 0 <= a <= b <= {path_length}, got a={a}, b={b}")
    forward = [((i, i + 1),) for i in range(a, b)]
    backward = [((i, i + 1),) for i in range(b - 2, a - 1, -1)]
    return Trace(steps=tuple(forward + backward))


def _euler_split(n_nodes: int, edge_pairs: list[tuple[int, int]]) -> list[int]:
    """Assign each edge of an all-even-degree multigraph a side in {0, 1}.

    Walks closed circuits; every visit to a node pairs one incoming with one
    outgoing edge, and alternating sides along the circuit puts the two in
    different halves, so every node's degree splits exactly in half.
    Circuits in a bipartite multigraph have even length, so the alternation
    is consistent around each circuit.
    """
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n_nodes)]
    for eid, (u, v) in enumerate(edge_pairs):
        adj[u].append((eid, v))
        adj[v].append((eid, u))
    used = [False] * len(edge_pairs)
    ptr = [0] * n_nodes
    side = [0] * len(edge_pairs)
    for start in range(n_nodes):
        while True:
            lst = adj[start]
            p = ptr[start]
            while p < len(lst) and used[lst[p][0]]:
                p += 1
            ptr[start] = p
            if p == len(lst):
                break
            cur = start
            parity = 0
            while True:
                lst = adj[cur]
                p = ptr[cur]
                while p < len(lst) and used[lst[p][0]]:
                    p += 1
                ptr[cur] = p
                if p == len(lst):
                    break  # closed back at `start`: all degrees are even
                eid, nxt = lst[p]
                used[eid] = True
                side[eid] = parity
                parity ^= 1
                cur = nxt
            if cur != start:
                raise InternalInvariantError("euler walk ended away from its start")
    return side


def color_regular_bipartite(demands: Sequence[tuple[int, int]], degree: int) -> list[int]:
    """Properly edge-color a degree-regular bipartite multigraph.

    demands: one (left, right) entry per edge, duplicates allowed.  Returns
    a color in [0, degree) per entry such that no two entries sharing an
    endpoint share a color.  Splits the multigraph into halves along
    Eulerian circuits and recurses, so the degree must be a power of two.
    """
    demands = list(demands)
    if degree < 1:
        raise ValueError(f"degree must be >= 1, got {degree}")
    lefts = sorted({l for l, _ in demands})
    rights = sorted({r for _, r in demands})
    left_index = {v: i for i, v in enumerate(lefts)}
    right_index = {v: len(lefts) + i for i, v in enumerate(rights)}
    left_deg = Counter(l for l, _ in demands)
    right_deg = Counter(r for _, r in demands)
    for node, deg in list(left_deg.items()) + list(right_deg.items()):
        if deg != degree:
            raise ValueError(f"multigraph is not {degree}-regular: node {node} has degree {deg}")
    if len(demands) != degree * len(lefts) or len(lefts) != len(rights):
        raise ValueError("multigraph is not degree-regular")

    pairs = [(left_index[l], right_index[r]) for l, r in demands]
    n_nodes = len(lefts) + len(rights)
    colors = [0] * len(demands)

    def color_block(indices: list[int], deg: int, base: int) -> None:
        if deg == 1:
            for idx in indices:
                colors[idx] = base
            return
        if deg % 2:
            raise ValueError(f"unsupported degree {deg}: regular degree must be a power of two")
        sides = _euler_split(n_nodes, [pairs[i] for i in indices])
        half_a = [i for i, s in zip(indices, sides) if s == 0]
        half_b = [i for i, s in zip(indices, sides) if s == 1]
        color_block(half_a, deg // 2, base)
        color_block(half_b, deg // 2, base + deg // 2)

    color_block(list(range(len(demands))), degree, 0)
    return colors


def mesh_bound(side: int, d: int) -> int:
    return (2 * d - 1) * side


def route_mesh_phases(side: int, d: int, pi: Sequence[int]) -> list[Trace]:
    """The three phases of route_mesh as separate traces (phases may be empty)."""
    if side < 1 or side & (side - 1):
        raise ValueError(f"side must be a power of two, got {side}")
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    pi = _as_permutation(pi)
    n = side ** d
    if len(pi) != n:
        raise ValueError(f"permutation length {len(pi)} != {n}")
    if pi == identity(n):
        return [Trace(), Trace(), Trace()]
    if d == 1:
        return [route_path(side, pi), Trace(), Trace()]

    lines = side ** (d - 1)
    colors = color_regular_bipartite([(v // side, pi[v] // side) for v in range(n)], side)

    # phase 1: inside each line, send the pebble colored k to position k
    phase1 = []
    for r in range(lines):
        line_pi = [colors[r * side + x] for x in range(side)]
        trace = route_path(side, line_pi)
        if trace.steps:
            phase1.append(relabel_trace(trace, range(r * side, (r + 1) * side)))

    # phase 2: inside each slice, send every pebble to its destination line
    slice_pi: list[list[int]] = [[0] * lines for _ in range(side)]
    for v in range(n):
        slice_pi[colors[v]][v // side] = pi[v] // side
    phase2 = []
    for x in range(side):
        trace = route_mesh(side, d - 1, slice_pi[x])
        if trace.steps:
            phase2.append(relabel_trace(trace, [r * side + x for r in range(lines)]))

    # phase 3: inside each line, send every pebble to its final position
    line3: list[list[int]] = [[0] * side for _ in range(lines)]
    for v in range(n):
        line3[pi[v] // side][colors[v]] = pi[v] % side
    phase3 = []
    for r in range(lines):
        trace = route_path(side, line3[r])
        if trace.steps:
            phase3.append(relabel_trace(trace, range(r * side, (r + 1) * side)))

    return [merge_parallel(phase1), merge_parallel(phase2), merge_parallel(phase3)]


def route_mesh(side: int, d: int, pi: Sequence[int]) -> Trace:
    """Route pi on the side^d mesh in at most (2d-1)*side steps."""
    trace = concat_traces(route_mesh_phases(side, d, pi))
    if len(trace) > mesh_bound(side, d):
        raise InternalInvariantError(
            f"mesh trace of {len(trace)} steps exceeds bound {mesh_bound(side, d)}")
    return trace
