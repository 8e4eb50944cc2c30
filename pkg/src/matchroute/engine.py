"""Pebble configurations, matching steps, and trace validation.

The model: every vertex holds one pebble; one step picks a matching of the
graph and swaps the pebbles on each matched edge.  A problem (graph, pi)
starts with placement[v] = pi[v] and is routed when placement[v] = v for
every v, i.e. each pebble's label is its destination vertex.  A Trace is
the ordered list of matchings some router produced; replaying it is the
universal proof that a routing is correct, and its length is the step
count reported everywhere.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import (
    InvalidMatchingError,
    NotRoutedError,
    ParallelConflictError,
    TraceInvalidError,
)
from .permutation import is_permutation
from .topology import Graph

Step = tuple[tuple[int, int], ...]


def make_step(pairs: Iterable[tuple[int, int]]) -> Step:
    """Canonicalize a set of swaps: (min, max) pairs in sorted order."""
    return tuple(sorted((u, v) if u < v else (v, u) for u, v in pairs))


@dataclass(frozen=True)
class Trace:
    """An ordered sequence of matchings plus optional provenance metadata."""

    steps: tuple[Step, ...] = ()
    graph: str = ""
    perm: tuple[int, ...] = ()
    algo: str = ""

    def __len__(self) -> int:
        return len(self.steps)


@dataclass(frozen=True)
class RouteProblem:
    graph: Graph
    pi: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "pi", tuple(self.pi))
        if len(self.pi) != self.graph.n or not is_permutation(self.pi):
            raise ValueError(f"pi must be a permutation of the {self.graph.n} vertices")


def initial_configuration(problem: RouteProblem) -> list[int]:
    """placement[v] = pi(v): the pebble on v is labeled with its destination."""
    return list(problem.pi)


def apply_matching(config: Sequence[int], step: Iterable[tuple[int, int]],
                   graph: Graph) -> list[int]:
    """Swap pebbles across each matched edge; the input is left untouched."""
    out = list(config)
    seen: set[int] = set()
    for u, v in step:
        if not graph.has_edge(u, v):
            raise InvalidMatchingError("invalid-edge", f"({u},{v}) is not an edge")
        if u in seen or v in seen:
            reused = u if u in seen else v
            raise InvalidMatchingError("not-a-matching", f"vertex {reused} reused")
        seen.add(u)
        seen.add(v)
        out[u], out[v] = out[v], out[u]
    return out


def validate_trace(problem: RouteProblem, trace: Trace) -> int:
    """Replay a trace and return its step count.

    Raises TraceInvalidError on the earliest bad step (non-edge, overlap, or
    stored empty matching) and NotRoutedError, naming the first misplaced
    pebble, if the final configuration is not the identity.
    """
    config = initial_configuration(problem)
    for index, step in enumerate(trace.steps):
        if not step:
            raise TraceInvalidError(index, "trace-invalid", "empty matchings may not be stored")
        try:
            config = apply_matching(config, step, problem.graph)
        except InvalidMatchingError as exc:
            raise TraceInvalidError(index, exc.kind, exc.detail) from exc
    for v, pebble in enumerate(config):
        if pebble != v:
            raise NotRoutedError(v, pebble)
    return len(trace.steps)


def trace_vertices(trace: Trace) -> set[int]:
    return {w for step in trace.steps for edge in step for w in edge}


def merge_parallel(traces: Sequence[Trace], graph: Graph | None = None) -> Trace:
    """Overlay traces that touch pairwise disjoint vertex sets.

    Step t of the result is the union of step t of every input (shorter
    inputs contribute nothing); the result has max input length.
    """
    touched: set[int] = set()
    for trace in traces:
        verts = trace_vertices(trace)
        if graph is not None and any(v >= graph.n for v in verts):
            raise ValueError("trace touches vertices outside the graph")
        overlap = touched & verts
        if overlap:
            raise ParallelConflictError(min(overlap))
        touched |= verts
    length = max((len(t) for t in traces), default=0)
    steps = []
    for t in range(length):
        merged: list[tuple[int, int]] = []
        for trace in traces:
            if t < len(trace.steps):
                merged.extend(trace.steps[t])
        steps.append(make_step(merged))
    return Trace(steps=tuple(steps))


def concat_traces(traces: Iterable[Trace]) -> Trace:
    steps: list[Step] = []
    for trace in traces:
        steps.extend(trace.steps)
    return Trace(steps=tuple(steps))


def relabel_trace(trace: Trace, mapping: Sequence[int]) -> Trace:
    """Map every vertex id through `mapping` (an injective id table)."""
    steps = tuple(make_step((mapping[u], mapping[v]) for u, v in step)
                  for step in trace.steps)
    return Trace(steps=steps)


def trace_to_dict(trace: Trace) -> dict:
    return {
        "graph": trace.graph,
        "perm": list(trace.perm),
        "algo": trace.algo,
        "steps": [[list(edge) for edge in step] for step in trace.steps],
    }


def trace_from_dict(data: dict) -> Trace:
    if not isinstance(data, dict):
        raise ValueError("trace file must contain a JSON object")
    for key in ("graph", "perm", "steps"):
        if key not in data:
            raise ValueError(f"trace file is missing {key!r}")
    perm = data["perm"]
    steps_raw = data["steps"]
    if not isinstance(perm, list) or not all(isinstance(v, int) for v in perm):
        raise ValueError("perm must be a list of integers")
    if not isinstance(steps_raw, list):
        raise ValueError("steps must be a list")
    steps = []
    for step in steps_raw:
        if not isinstance(step, list):
            raise ValueError("each step must be a list of vertex pairs")
        pairs = []
        for edge in step:
            if not (isinstance(edge, list) and len(edge) == 2
                    and all(isinstance(w, int) for w in edge)):
                raise ValueError(f"bad edge entry {edge!r}")
            pairs.append((edge[0], edge[1]))
        steps.append(make_step(pairs))
    return Trace(steps=tuple(steps), graph=str(data["graph"]),
                 perm=tuple(perm), algo=str(data.get("algo", "")))


def save_trace(path: str, trace: Trace) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(trace_to_dict(trace), fh)
        fh.write("\n")


def load_trace(path: str) -> Trace:
    with open(path, "r", encoding="utf-8") as fh:
        return trace_from_dict(json.load(fh))
