"""Graph builders and addressing for pyramids, multi-grids, meshes, and paths.

A d-dimensional pyramid with m levels stacks d-dimensional meshes of side
2^l for l = 0..m-1; every level-l vertex is adjacent to its 2^d children on
level l+1.  The multi-grid is the spanning subgraph that keeps, per vertex,
only the vertical edge to its all-even child, so the surviving vertical
edges form disjoint maximal paths (the orbits of coordinate doubling).

Vertex ids are level-major, then row-major within a level (first coordinate
slowest).  All builders are pure and produce deterministic edge orders.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .errors import ResourceLimitError

DEFAULT_VERTEX_CAP = 1 << 22


class LevelCoord(NamedTuple):
    level: int
    coords: tuple[int, ...]


@dataclass(frozen=True)
class PyramidSpec:
    """Shape parameters of an m-level, d-dimensional pyramid."""

    m: int
    d: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"level count must be >= 1, got {self.m}")
        if self.d < 1:
            raise ValueError(f"dimension must be >= 1, got {self.d}")

    @property
    def vertex_count(self) -> int:
        # geometric sum of the level sizes: (2^(md) - 1) / (2^d - 1)
        return (2 ** (self.m * self.d) - 1) // (2 ** self.d - 1)

    def side(self, level: int) -> int:
        return 2 ** level

    def level_size(self, level: int) -> int:
        self._check_level(level)
        return 2 ** (self.d * level)

    def level_offset(self, level: int) -> int:
        """Number of vertices strictly above `level` (also the first id of the level)."""
        return (2 ** (self.d * level) - 1) // (2 ** self.d - 1)

    def level_of(self, v: int) -> int:
        if not 0 <= v < self.vertex_count:
            raise ValueError(f"vertex {v} out of range")
        level = 0
        while self.level_offset(level + 1) <= v:
            level += 1
        return level

    def vertex_id(self, level: int, coords: Iterable[int]) -> int:
        coords = tuple(coords)
        self._check_level(level)
        side = self.side(level)
        if len(coords) != self.d or any(not 0 <= c < side for c in coords):
            raise ValueError(f"coordinates {coords} invalid for level {level}")
        j = 0
        for c in coords:
            j = j * side + c
        return self.level_offset(level) + j

    def coords_of(self, v: int) -> LevelCoord:
        level = self.level_of(v)
        j = v - self.level_offset(level)
        side = self.side(level)
        rev = []
        for _ in range(self.d):
            rev.append(j % side)
            j //= side
        return LevelCoord(level, tuple(reversed(rev)))

    def _check_level(self, level: int) -> None:
        if not 0 <= level < self.m:
            raise ValueError(f"level {level} out of range [0, {self.m - 1}]")


class Graph:
    """Undirected graph on vertices 0..n-1 with canonical (min, max) edges.

    Immutable after construction; edges and adjacency lists are sorted so
    every iteration over the graph is deterministic.
    """

    __slots__ = ("n", "edges", "adj", "label", "_edge_set")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]], label: str = ""):
        canonical = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for {n} vertices")
            canonical.add((u, v) if u < v else (v, u))
        self.n = n
        self.edges: tuple[tuple[int, int], ...] = tuple(sorted(canonical))
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(ns)) for ns in adj)
        self.label = label
        self._edge_set = frozenset(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self._edge_set

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        name = self.label or "graph"
        return f"Graph({name}, n={self.n}, edges={len(self.edges)})"


@dataclass(frozen=True)
class VerticalPathSet:
    """The maximal vertical paths of a multi-grid, top to bottom.

    `length_histogram[k]` counts paths with k edges; single bottom-level
    vertices without a retained upward edge are not paths.
    """

    paths: tuple[tuple[int, ...], ...]
    length_histogram: dict[int, int]


def _check_cap(n: int, cap: int) -> None:
    if n > cap:
        raise ResourceLimitError(f"requested graph has {n} vertices, cap is {cap}")


def _mesh_edges(n: int, side: int, d: int, offset: int = 0):
    """Edges of a side^d row-major mesh, each vertex id shifted by `offset`."""
    for axis in range(d):
        stride = side ** (d - 1 - axis)
        for v in range(n):
            if (v // stride) % side < side - 1:
                yield offset + v, offset + v + stride


def build_path(n: int, max_vertices: int = DEFAULT_VERTEX_CAP) -> Graph:
    """Path graph with n vertices labeled 0..n-1 along the path."""
    if n < 1:
        raise ValueError(f"path needs at least one vertex, got {n}")
    _check_cap(n, max_vertices)
    return Graph(n, ((i, i + 1) for i in range(n - 1)), label=f"path:n={n}")


def build_mesh(side: int, d: int, max_vertices: int = DEFAULT_VERTEX_CAP) -> Graph:
    """d-dimensional mesh of side `side`, vertices in row-major order."""
    if side < 1 or d < 1:
        raise ValueError(f"mesh needs side >= 1 and d >= 1, got side={side}, d={d}")
    n = side ** d
    _check_cap(n, max_vertices)
    return Graph(n, _mesh_edges(n, side, d), label=f"mesh:side={side},d={d}")


def _level_edges(spec: PyramidSpec, all_children: bool):
    for level in range(spec.m):
        side = spec.side(level)
        size = spec.level_size(level)
        off = spec.level_offset(level)
        yield from _mesh_edges(size, side, spec.d, off)
        if level + 1 >= spec.m:
            continue
        off_below = spec.level_offset(level + 1)
        side_below = spec.side(level + 1)
        for j in range(size):
            coords = _decode(j, side, spec.d)
            if all_children:
                options = [(2 * c, 2 * c + 1) for c in coords]
                for child in itertools.product(*options):
                    yield off + j, off_below + _encode(child, side_below)
            else:
                child = tuple(2 * c for c in coords)
                yield off + j, off_below + _encode(child, side_below)


def _decode(j: int, side: int, d: int) -> tuple[int, ...]:
    rev = []
    for _ in range(d):
        rev.append(j % side)
        j //= side
    return tuple(reversed(rev))


def _encode(coords: tuple[int, ...], side: int) -> int:
    j = 0
    for c in coords:
        j = j * side + c
    return j


def build_pyramid(spec: PyramidSpec, max_vertices: int = DEFAULT_VERTEX_CAP) -> Graph:
    """Full pyramid: level meshes plus all 2^d parent-child edges."""
    _check_cap(spec.vertex_count, max_vertices)
    return Graph(spec.vertex_count, _level_edges(spec, all_children=True),
                 label=f"pyramid:m={spec.m},d={spec.d}")


def build_multigrid(spec: PyramidSpec, max_vertices: int = DEFAULT_VERTEX_CAP) -> Graph:
    """Multi-grid: the pyramid with only the all-even-child vertical edges kept."""
    _check_cap(spec.vertex_count, max_vertices)
    return Graph(spec.vertex_count, _level_edges(spec, all_children=False),
                 label=f"multigrid:m={spec.m},d={spec.d}")


def vertical_paths(spec: PyramidSpec) -> VerticalPathSet:
    """All maximal vertical paths of the multi-grid, sorted by start vertex id.

    A path starts at the apex or at any vertex with an odd coordinate, and
    follows coordinate doubling down to the bottom level; a path starting at
    level i therefore has m-1-i edges and its level-j vertex sits at
    2^(j-i) times the start coordinates.
    """
    paths = []
    for level in range(spec.m - 1):
        side = spec.side(level)
        off = spec.level_offset(level)
        for j in range(spec.level_size(level)):
            coords = _decode(j, side, spec.d)
            if level > 0 and not any(c % 2 for c in coords):
                continue
            chain = [off + j]
            cur = coords
            for below in range(level + 1, spec.m):
                cur = tuple(2 * c for c in cur)
                chain.append(spec.level_offset(below) + _encode(cur, spec.side(below)))
            paths.append(tuple(chain))
    histogram = Counter(len(p) - 1 for p in paths)
    return VerticalPathSet(tuple(paths), dict(histogram))


def phi(spec: PyramidSpec, k: int) -> int:
    """Number of maximal vertical paths with exactly k edges."""
    if not 1 <= k <= spec.m - 1:
        raise ValueError(f"k must be in [1, {spec.m - 1}], got {k}")
    if k == spec.m - 1:
        return 1
    return spec.level_size(spec.m - k - 1) - spec.level_size(spec.m - k - 2)


def parse_label(text: str) -> tuple[str, dict[str, int]]:
    """Split a graph spec string like 'mesh:side=4,d=2' into kind and parameters."""
    kind, _, rest = text.strip().partition(":")
    kind = kind.strip()
    params: dict[str, int] = {}
    if rest:
        for part in rest.split(","):
            part = part.strip()
            if not part:
                continue
            if "=" in part:
                key, _, value = part.partition("=")
            elif kind == "path":
                key, value = "n", part  # accept the short form path:<n>
            else:
                raise ValueError(f"cannot parse graph parameter {part!r}")
            try:
                params[key.strip()] = int(value)
            except ValueError:
                raise ValueError(f"graph parameter {part!r} is not an integer") from None
    return kind, params


def parse_graph_spec(text: str, max_vertices: int = DEFAULT_VERTEX_CAP) -> Graph:
    """Build a graph from a spec string.

    Formats: pyramid:m=<int>,d=<int> | multigrid:m=<int>,d=<int> |
    mesh:side=<int>,d=<int> | path:n=<int> (path:<int> also accepted).
    """
    kind, params = parse_label(text)

    def need(*keys):
        for key in keys:
            if key not in params:
                raise ValueError(f"graph spec {text!r} is missing {key}=<int>")
        return [params[key] for key in keys]

    if kind in ("pyramid", "multigrid"):
        m, d = need("m", "d")
        spec = PyramidSpec(m, d)
        builder = build_pyramid if kind == "pyramid" else build_multigrid
        return builder(spec, max_vertices)
    if kind == "mesh":
        side, d = need("side", "d")
        return build_mesh(side, d, max_vertices)
    if kind == "path":
        (n,) = need("n")
        return build_path(n, max_vertices)
    raise ValueError(f"unknown graph kind {kind!r}")
