"""Five-round permutation routing on the multi-grid.

An arbitrary permutation factors into two involutions, and each involution
is routed in five rounds: odd rounds route inside the levels (in parallel
across levels), even rounds swap pebble pairs along disjoint vertical paths
(in parallel across paths).

For one involution, every 2-cycle whose endpoints sit on levels i < j is
assigned a vertical path that starts at level i.  Round 1 stages the two
pebbles of each round-2 pair onto their path's level-i and level-j
vertices; round 2 exchanges them with a distance swap that leaves all
intermediate pebbles where they started.  There are at most
2 * phi(m-1-i) pairs lifting a pebble to level i, and exactly phi(m-1-i)
paths starting there, so one overflow round (3 staging, 4 swapping)
suffices.  Round 5 routes every level internally: pairs that never left
their level, pebbles displaced by staging, and the swapped pebbles all
reach their exact targets there.

Both involution passes run back to back (ten rounds total), and the final
trace is valid on the full pyramid as well because the multi-grid is a
spanning subgraph.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Sequence

from .engine import RouteProblem, Trace, concat_traces, merge_parallel, relabel_trace
from .errors import InternalInvariantError
from .mesh_router import distance_swap_trace, route_mesh
from .permutation import decompose_involutions, is_involution
from .topology import (
    PyramidSpec,
    VerticalPathSet,
    build_multigrid,
    parse_label,
    vertical_paths,
)

Pair = tuple[int, int]


@dataclass
class PairPlan:
    """Routing plan for one involution: pair classes, path assignment, staging.

    pairs_by_levels[(i, j)] lists the 2-cycles with endpoints on levels
    i <= j; mu holds their counts.  path_assignment maps each inter-level
    pair to (index into paths, even round 2 or 4).  staging[(level, round)]
    is the permutation of that level's vertices routed in odd round
    1, 3, or 5.
    """

    spec: PyramidSpec
    sigma: tuple[int, ...]
    pairs_by_levels: dict[tuple[int, int], list[Pair]]
    mu: dict[tuple[int, int], int]
    paths: tuple[tuple[int, ...], ...] = ()
    path_assignment: dict[Pair, tuple[int, int]] = field(default_factory=dict)
    staging: dict[tuple[int, int], tuple[int, ...]] = field(default_factory=dict)

    def pairs_lifting_to(self, level: int) -> list[Pair]:
        """Pairs that move one pebble up to `level` from strictly below."""
        out = []
        for j in range(level + 1, self.spec.m):
            out.extend(self.pairs_by_levels.get((level, j), ()))
        out.sort(key=lambda pair: pair[0])
        return out


def classify_pairs(sigma: Sequence[int], spec: PyramidSpec) -> PairPlan:
    """Group the 2-cycles of an involution by the levels of their endpoints."""
    sigma = tuple(sigma)
    if len(sigma) != spec.vertex_count or not is_involution(sigma):
        raise ValueError("sigma must be an involution over the multi-grid's vertices")
    pairs: dict[tuple[int, int], list[Pair]] = defaultdict(list)
    for x in range(len(sigma)):
        y = sigma[x]
        if y <= x:
            continue  # fixed point, or the 2-cycle was already recorded
        pairs[(spec.level_of(x), spec.level_of(y))].append((x, y))
    pairs = dict(pairs)
    return PairPlan(spec=spec, sigma=sigma, pairs_by_levels=pairs,
                    mu={key: len(val) for key, val in pairs.items()})


def assign_paths(plan: PairPlan, paths: VerticalPathSet) -> PairPlan:
    """Assign each inter-level pair a vertical path and an even round.

    Per level i, pairs sorted by their level-i vertex fill the paths
    starting at level i (sorted by start vertex) once for round 2, then
    once more for round 4.  The capacity invariant |P_i| <= 2*phi(m-1-i)
    makes two even rounds always suffice.
    """
    spec = plan.spec
    plan.paths = paths.paths
    plan.path_assignment = {}
    starts_by_level: dict[int, list[int]] = defaultdict(list)
    for idx, path in enumerate(paths.paths):
        starts_by_level[spec.level_of(path[0])].append(idx)
    for i in range(spec.m - 1):
        lifting = plan.pairs_lifting_to(i)
        if not lifting:
            continue
        starts = starts_by_level.get(i, [])
        if len(lifting) > 2 * len(starts):
            raise InternalInvariantError(
                f"level {i} needs {len(lifting)} vertical paths but only "
                f"{2 * len(starts)} pair slots exist")
        for t, pair in enumerate(lifting):
            if t < len(starts):
                plan.path_assignment[pair] = (starts[t], 2)
            else:
                plan.path_assignment[pair] = (starts[t - len(starts)], 4)
    return plan


def _extend_to_level_permutation(spec: PyramidSpec, level: int,
                                 partial: dict[int, int]) -> tuple[int, ...]:
    """Extend a partial vertex->vertex map on one level to a full permutation.

    Unmoved vertices keep their pebbles when nobody is staged onto them;
    pebbles displaced from a staging target go to the vacated source
    vertices, both sides taken in ascending id order.
    """
    off = spec.level_offset(level)
    g = list(range(spec.level_size(level)))
    targets = set(partial.values())
    for src, dst in partial.items():
        g[src - off] = dst - off
    displaced = sorted(v for v in targets if v not in partial)
    vacated = sorted(v for v in partial if v not in targets)
    for dv, tv in zip(displaced, vacated):
        g[dv - off] = tv - off
    return tuple(g)


def plan_staging(plan: PairPlan) -> PairPlan:
    """Fill in the three odd-round level permutations by simulating the rounds.

    Round 1 stages round-2 pairs from their start vertices; round 3 stages
    round-4 pairs from wherever their pebbles sit after rounds 1-2, which
    also clears already-swapped pebbles off any path endpoint that is about
    to be reused (they land on vacated staging sources).  Round 5 sends
    every pebble to its exact target inside its level.
    """
    spec = plan.spec
    if not plan.paths and plan.path_assignment is not None and any(
            plan.pairs_lifting_to(i) for i in range(spec.m - 1)):
        raise ValueError("assign_paths must run before plan_staging")
    n = spec.vertex_count
    occupant = list(range(n))  # occupant[v] = start vertex of the pebble on v
    location = list(range(n))  # inverse of occupant
    by_round: dict[int, list[tuple[Pair, int]]] = {2: [], 4: []}
    for pair, (path_idx, rnd) in plan.path_assignment.items():
        by_round[rnd].append((pair, path_idx))
    for rnd in by_round:
        by_round[rnd].sort(key=lambda item: item[1])

    def apply_staging(round_key: int) -> None:
        for level in range(spec.m):
            g = plan.staging[(level, round_key)]
            off = spec.level_offset(level)
            moves = [(off + x, off + g[x]) for x in range(len(g)) if g[x] != x]
            pebbles = [occupant[src] for src, _ in moves]
            for (src, dst), pebble in zip(moves, pebbles):
                occupant[dst] = pebble
                location[pebble] = dst

    def apply_swaps(assigned: list[tuple[Pair, int]]) -> None:
        for (u, w), path_idx in assigned:
            path = plan.paths[path_idx]
            span = spec.level_of(w) - spec.level_of(u)
            a, b = path[0], path[span]
            pa, pb = occupant[a], occupant[b]
            occupant[a], occupant[b] = pb, pa
            location[pa], location[pb] = b, a

    plan.staging = {}

    # round 1: stage the round-2 pairs onto their paths
    partial: dict[int, dict[int, int]] = defaultdict(dict)
    for (u, w), path_idx in by_round[2]:
        path = plan.paths[path_idx]
        i, j = spec.level_of(u), spec.level_of(w)
        partial[i][u] = path[0]
        partial[j][w] = path[j - i]
    for level in range(spec.m):
        plan.staging[(level, 1)] = _extend_to_level_permutation(
            spec, level, partial.get(level, {}))
    apply_staging(1)
    apply_swaps(by_round[2])

    # round 3: stage the round-4 pairs from their current vertices
    partial = defaultdict(dict)
    for (u, w), path_idx in by_round[4]:
        path = plan.paths[path_idx]
        i, j = spec.level_of(u), spec.level_of(w)
        cu, cw = location[u], location[w]
        if spec.level_of(cu) != i or spec.level_of(cw) != j:
            raise InternalInvariantError("a staged pebble left its level before round 3")
        partial[i][cu] = path[0]
        partial[j][cw] = path[j - i]
    for level in range(spec.m):
        plan.staging[(level, 3)] = _extend_to_level_permutation(
            spec, level, partial.get(level, {}))
    apply_staging(3)
    apply_swaps(by_round[4])

    # round 5: all pebbles are on their destination levels; finish locally
    for level in range(spec.m):
        off = spec.level_offset(level)
        size = spec.level_size(level)
        g = [0] * size
        for x in range(size):
            target = plan.sigma[occupant[off + x]]
            if not off <= target < off + size:
                raise InternalInvariantError(
                    f"pebble on vertex {off + x} is not on its destination level "
                    f"after round 4")
            g[x] = target - off
        plan.staging[(level, 5)] = tuple(g)
    apply_staging(5)

    if occupant != list(plan.sigma):
        raise InternalInvariantError("staging plan does not realize the involution")
    return plan


@dataclass(frozen=True)
class InvolutionRoute:
    """One involution pass: its plan and the five round traces in order."""

    plan: PairPlan
    rounds: tuple[Trace, ...]

    @property
    def trace(self) -> Trace:
        return concat_traces(self.rounds)


def route_involution(sigma: Sequence[int], spec: PyramidSpec) -> InvolutionRoute:
    """Route one involution on the multi-grid with the five-round schedule."""
    plan = plan_staging(assign_paths(classify_pairs(sigma, spec), vertical_paths(spec)))
    by_round: dict[int, list[tuple[Pair, int]]] = {2: [], 4: []}
    for pair, (path_idx, rnd) in plan.path_assignment.items():
        by_round[rnd].append((pair, path_idx))
    for rnd in by_round:
        by_round[rnd].sort(key=lambda item: item[1])

    def odd_round(round_key: int) -> Trace:
        traces = []
        for level in range(spec.m):
            g = plan.staging[(level, round_key)]
            if all(g[x] == x for x in range(len(g))):
                continue
            off = spec.level_offset(level)
            trace = route_mesh(spec.side(level), spec.d, g)
            traces.append(relabel_trace(trace, range(off, off + len(g))))
        return merge_parallel(traces) if traces else Trace()

    def even_round(assigned: list[tuple[Pair, int]]) -> Trace:
        traces = []
        for (u, w), path_idx in assigned:
            path = plan.paths[path_idx]
            span = spec.level_of(w) - spec.level_of(u)
            traces.append(relabel_trace(distance_swap_trace(len(path) - 1, 0, span), path))
        return merge_parallel(traces) if traces else Trace()

    rounds = (odd_round(1), even_round(by_round[2]),
              odd_round(3), even_round(by_round[4]),
              odd_round(5))
    return InvolutionRoute(plan=plan, rounds=rounds)


def step_bound(spec: PyramidSpec) -> int:
    """Deterministic worst case of this construction.

    Two involution passes, each with three odd rounds bounded by the
    bottom-level mesh router and two even rounds bounded by the longest
    distance swap over a vertical path.
    """
    if spec.m == 1:
        return 0
    odd = 3 * (2 * spec.d - 1) * spec.side(spec.m - 1)
    even = 2 * max(2 * (spec.m - 1) - 1, 0)
    return 2 * (odd + even)


def route_pyramid(problem: RouteProblem) -> Trace:
    """Route a permutation on a multi-grid; the trace is also valid on the pyramid."""
    try:
        kind, params = parse_label(problem.graph.label)
        spec = PyramidSpec(params["m"], params["d"]) if kind == "multigrid" else None
    except (ValueError, KeyError):
        spec = None
    if spec is None:
        raise ValueError("route_pyramid needs a graph built by build_multigrid")
    expected = build_multigrid(spec)
    if problem.graph.n != expected.n or problem.graph.edges != expected.edges:
        raise ValueError("graph does not match the multi-grid of its label")
    sigma1, sigma2 = decompose_involutions(problem.pi)
    steps = (route_involution(sigma1, spec).trace.steps
             + route_involution(sigma2, spec).trace.steps)
    if len(steps) > step_bound(spec):
        raise InternalInvariantError(
            f"trace of {len(steps)} steps exceeds step_bound {step_bound(spec)}")
    return Trace(steps=steps, graph=problem.graph.label, perm=problem.pi, algo="pyramid")
