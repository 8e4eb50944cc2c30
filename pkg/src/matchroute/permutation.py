"""Permutation algebra: cycles, composition, involution factorization, seeded generation.

Permutations are tuples `p` with `p[i]` the image of `i`.  Composition is
"apply the right argument first": compose(f, g)(x) = f(g(x)).

Reproducible randomness uses splitmix64 (state += 0x9E3779B97F4A7C15 per
draw, output scrambled with the 0xBF58476D1CE4E5B9 / 0x94D049BB133111EB
multiply-xorshift finalizer) feeding a Fisher-Yates shuffle with rejection
sampling, so identical (n, seed) gives identical output on every platform.
These constants are part of the benchmark reproducibility contract.
"""

from __future__ import annotations

import json
import re
from typing import Sequence

MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def _mix64(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


class SplitMix64:
    """Deterministic 64-bit generator; tiny state, platform independent."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + _GOLDEN) & MASK64
        return _mix64(self.state)

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound); rejection keeps it exactly uniform."""
        if bound <= 0:
            raise ValueError(f"bound must be positive, got {bound}")
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            r = self.next_u64()
            if r < limit:
                return r % bound


def derive_seed(seed: int, *parts: int) -> int:
    """Fold integer salts into a fresh 64-bit seed; order sensitive, deterministic."""
    x = seed & MASK64
    for p in parts:
        x = _mix64((x + _GOLDEN + (p & MASK64)) & MASK64)
    return x


def is_permutation(p: Sequence[int]) -> bool:
    n = len(p)
    seen = [False] * n
    for v in p:
        if not isinstance(v, int) or not 0 <= v < n or seen[v]:
            return False
        seen[v] = True
    return True


def _as_permutation(p: Sequence[int]) -> tuple[int, ...]:
    t = tuple(p)
    if not is_permutation(t):
        raise ValueError(f"not a permutation of [0, {len(t) - 1}]: {t}")
    return t


def identity(n: int) -> tuple[int, ...]:
    return tuple(range(n))


def compose(f: Sequence[int], g: Sequence[int]) -> tuple[int, ...]:
    """compose(f, g)(x) = f(g(x))."""
    if len(f) != len(g):
        raise ValueError(f"length mismatch: {len(f)} vs {len(g)}")
    return tuple(f[g[x]] for x in range(len(g)))


def invert(f: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(f)
    for x, y in enumerate(f):
        out[y] = x
    return tuple(out)


def cycles(f: Sequence[int]) -> list[tuple[int, ...]]:
    """Disjoint cycles (fixed points included), each starting at its minimum
    element, sorted by that element."""
    f = _as_permutation(f)
    seen = [False] * len(f)
    out = []
    for start in range(len(f)):
        if seen[start]:
            continue
        cyc = [start]
        seen[start] = True
        x = f[start]
        while x != start:
            cyc.append(x)
            seen[x] = True
            x = f[x]
        out.append(tuple(cyc))
    return out


def is_involution(f: Sequence[int]) -> bool:
    return is_permutation(f) and all(f[f[x]] == x for x in range(len(f)))


def decompose_involutions(pi: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Factor pi = s2 . s1 with both factors involutions.

    Per cycle (c_0 c_1 ... c_{k-1}), s1 maps c_i to c_{-i mod k} and s2 maps
    c_i to c_{1-i mod k}; both reverse the cycle around an axis, so they
    square to the identity, and s2(s1(c_i)) = c_{i+1} reproduces pi.
    """
    pi = _as_permutation(pi)
    s1 = list(range(len(pi)))
    s2 = list(range(len(pi)))
    for cyc in cycles(pi):
        k = len(cyc)
        for i, c in enumerate(cyc):
            s1[c] = cyc[(-i) % k]
            s2[c] = cyc[(1 - i) % k]
    return tuple(s1), tuple(s2)


def random_permutation(n: int, seed: int) -> tuple[int, ...]:
    """Uniform permutation of [0, n-1] from the documented splitmix64 shuffle."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    rng = SplitMix64(seed)
    a = list(range(n))
    for i in range(n - 1, 0, -1):
        j = rng.below(i + 1)
        a[i], a[j] = a[j], a[i]
    return tuple(a)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_perm(desc: str, n: int) -> tuple[int, ...]:
    """Parse a permutation descriptor for a graph with n vertices.

    Forms: id | rev | seed:<u64> | cycles:(a b c)(d e) | array:[2,0,1]
    """
    desc = desc.strip()
    if desc == "id":
        return identity(n)
    if desc == "rev":
        return tuple(range(n - 1, -1, -1))
    if desc.startswith("seed:"):
        try:
            seed = int(desc[5:], 0)
        except ValueError:
            raise ValueError(f"bad seed in {desc!r}") from None
        return random_permutation(n, seed)
    if desc.startswith("array:"):
        try:
            arr = json.loads(desc[6:])
        except json.JSONDecodeError:
            raise ValueError(f"bad array in {desc!r}") from None
        if not isinstance(arr, list) or len(arr) != n:
            raise ValueError(f"array descriptor must list all {n} images")
        return _as_permutation(arr)
    if desc.startswith("cycles:"):
        body = desc[7:].strip()
        groups = _CYCLE_RE.findall(body)
        if "".join(f"({g})" for g in groups).replace(" ", "") != body.replace(" ", ""):
            raise ValueError(f"bad cycles descriptor {desc!r}")
        out = list(range(n))
        used = set()
        for g in groups:
            elems = [int(tok) for tok in re.split(r"[,\s]+", g.strip()) if tok]
            if not elems:
                continue
            if any(not 0 <= e < n for e in elems) or used.intersection(elems):
                raise ValueError(f"bad cycle ({g}) for n={n}")
            used.update(elems)
            for a, b in zip(elems, elems[1:] + elems[:1]):
                out[a] = b
        return tuple(out)
    raise ValueError(f"unknown permutation descriptor {desc!r}")
