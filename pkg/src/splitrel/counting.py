"""Exact counting machinery: exhaustive edge-subset classification (split and
connected coefficient vectors), spanning-tree counts via integer-exact
Laplacian determinants, the two-disjoint-trees count through an independent
vertex-bipartition formula, and a seed-stable Monte Carlo estimator.

Everything on the exact side is integer/rational arithmetic only; the subset
sweep has a pure-Python route and a numpy-vectorized route (same exhaustive
classification, cross-checked in tests).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .graphs import Edge, GuardError, SimpleGraph, TwoTerminalGraph

DEFAULT_GUARD_BITS = 28
_NUMPY_MIN_BITS = 11  # below this the pure loop wins on constant factors
_CHUNK_BITS = 20


@dataclass(frozen=True)
class CoefficientVector:
    """counts[i] = number of qualifying spanning subgraphs with i surviving edges."""

    m: int
    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.counts) != self.m + 1:
            raise ValueError("counts must have length m+1")

    def to_json_dict(self) -> dict:
        return {"m": self.m, "counts": [str(c) for c in self.counts]}

    @classmethod
    def from_json_dict(cls, doc: dict) -> "CoefficientVector":
        return cls(int(doc["m"]), tuple(int(c) for c in doc["counts"]))


@dataclass(frozen=True)
class SubsetClassification:
    """Per-graph tally of all 2^m edge subsets.

    `connected[i]` counts subsets of size i whose spanning subgraph is
    connected.  `split_sides[S][i]` counts subsets of size i with exactly two
    components where S is the vertex bitmask of the component containing
    vertex 0.
    """

    n: int
    m: int
    connected: tuple[int, ...]
    split_sides: dict[int, tuple[int, ...]]

    def split_counts(self, s: int, t: int) -> tuple[int, ...]:
        """Split-subgraph counts for the terminal pair {s, t}."""
        out = [0] * (self.m + 1)
        for side, counts in self.split_sides.items():
            if ((side >> s) & 1) != ((side >> t) & 1):
                for i, c in enumerate(counts):
                    out[i] += c
        return tuple(out)


def _classify_pure(n: int, edges: Sequence[Edge]) -> SubsetClassification:
    m = len(edges)
    conn = [0] * (m + 1)
    sides: dict[int, list[int]] = {}
    edge_list = list(edges)
    for mask in range(1 << m):
        parent = list(range(n))
        merges = 0
        mm = mask
        while mm:
            low = mm & -mm
            mm ^= low
            u, v = edge_list[low.bit_length() - 1]
            while parent[u] != u:
                parent[u] = parent[parent[u]]
                u = parent[u]
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            if u != v:
                if u < v:
                    parent[v] = u
                else:
                    parent[u] = v
                merges += 1
        ncomp = n - merges
        if ncomp > 2:
            continue
        pop = mask.bit_count()
        if ncomp == 1:
            conn[pop] += 1
        else:
            side = 0
            r0 = 0
            while parent[r0] != r0:
                r0 = parent[r0]
            for v in range(n):
                r = v
                while parent[r] != r:
                    r = parent[r]
                if r == r0:
                    side |= 1 << v
            bucket = sides.get(side)
            if bucket is None:
                bucket = [0] * (m + 1)
                sides[side] = bucket
            bucket[pop] += 1
    return SubsetClassification(
        n, m, tuple(conn), {k: tuple(v) for k, v in sides.items()}
    )


def _propagate_labels(masks: np.ndarray, n: int, edges: Sequence[Edge]) -> np.ndarray:
    """Component label per vertex for every mask, by min-label flooding.

    n-1 full edge passes suffice: the minimum label advances at least one
    vertex along any path per pass.
    """
    labels = np.tile(np.arange(n, dtype=np.int8), (len(masks), 1))
    for _ in range(n - 1):
        for j, (u, v) in enumerate(edges):
            sel = ((masks >> j) & 1).astype(bool)
            lu = labels[sel, u]
            lv = labels[sel, v]
            mn = np.minimum(lu, lv)
            labels[sel, u] = mn
            labels[sel, v] = mn
    return labels


def _classify_numpy(n: int, edges: Sequence[Edge]) -> SubsetClassification:
    m = len(edges)
    total = 1 << m
    conn = np.zeros(m + 1, dtype=np.int64)
    side_flat = np.zeros((1 << n) * (m + 1), dtype=np.int64)
    vidx = np.arange(n, dtype=np.int8)
    weights = (1 << np.arange(n, dtype=np.int64))
    step = 1 << min(_CHUNK_BITS, m)
    for lo in range(0, total, step):
        masks = np.arange(lo, min(lo + step, total), dtype=np.int64)
        labels = _propagate_labels(masks, n, edges)
        ncomp = (labels == vidx).sum(axis=1)
        pops = np.bitwise_count(masks).astype(np.int64)
        sel1 = ncomp == 1
        if sel1.any():
            conn += np.bincount(pops[sel1], minlength=m + 1)
        sel2 = ncomp == 2
        if sel2.any():
            lab2 = labels[sel2]
            eq0 = lab2 == lab2[:, 0:1]
            side = (eq0 * weights).sum(axis=1)
            keys = side * (m + 1) + pops[sel2]
            side_flat += np.bincount(keys, minlength=len(side_flat))
    sides: dict[int, tuple[int, ...]] = {}
    nz = np.nonzero(side_flat)[0]
    for S in sorted(set(int(k) // (m + 1) for k in nz)):
        row = side_flat[S * (m + 1) : (S + 1) * (m + 1)]
        sides[S] = tuple(int(x) for x in row)
    return SubsetClassification(
        n, m, tuple(int(x) for x in conn), sides
    )


def classify_subsets(
    g: SimpleGraph,
    guard_bits: int = DEFAULT_GUARD_BITS,
    force_pure: bool = False,
) -> SubsetClassification:
    """Classify every edge subset of g by component structure (exhaustive sweep)."""
    if g.m > guard_bits:
        raise GuardError(
            f"2^{g.m} subset sweep exceeds guard of 2^{guard_bits}; "
            "raise the guard explicitly to proceed"
        )
    if g.n > 16:
        raise GuardError("subset classification is meant for desk-scale graphs (n <= 16)")
    if force_pure or g.m < _NUMPY_MIN_BITS:
        return _classify_pure(g.n, g.edges)
    return _classify_numpy(g.n, g.edges)


def split_coefficients(
    g: TwoTerminalGraph, guard_bits: int = DEFAULT_GUARD_BITS
) -> CoefficientVector:
    """N_i(g): split subgraphs with i surviving edges, by exhaustive classification.

    Precondition: g valid and connected.
    """
    cls = classify_subsets(g.graph, guard_bits)
    return CoefficientVector(g.graph.m, cls.split_counts(g.s, g.t))


def connected_coefficients(
    g: SimpleGraph, guard_bits: int = DEFAULT_GUARD_BITS
) -> CoefficientVector:
    """Connected spanning subgraph counts by surviving-edge count."""
    cls = classify_subsets(g, guard_bits)
    return CoefficientVector(g.m, cls.connected)


# ---------------------------------------------------------------------------
# spanning trees

def _bareiss_det(mat: list[list[int]]) -> int:
    """Exact determinant of an integer matrix (fraction-free elimination)."""
    size = len(mat)
    if size == 0:
        return 1
    m = [row[:] for row in mat]
    sign = 1
    prev = 1
    for k in range(size - 1):
        if m[k][k] == 0:
            for r in range(k + 1, size):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, size):
            row_i = m[i]
            row_k = m[k]
            lead = row_i[k]
            for j in range(k + 1, size):
                row_i[j] = (row_i[j] * pivot - lead * row_k[j]) // prev
        prev = pivot
    return sign * m[size - 1][size - 1]


def _tree_count_weighted(n: int, weight: dict[tuple[int, int], int]) -> int:
    """Spanning trees of a multigraph given by edge multiplicities."""
    if n <= 1:
        return 1
    lap = [[0] * n for _ in range(n)]
    for (u, v), w in weight.items():
        lap[u][u] += w
        lap[v][v] += w
        lap[u][v] -= w
        lap[v][u] -= w
    minor = [row[1:] for row in lap[1:]]
    return _bareiss_det(minor)


def spanning_tree_count(g: SimpleGraph) -> int:
    """t(G) via an integer-exact cofactor of the Laplacian.

    Returns 0 for disconnected graphs and 1 for the single vertex.
    """
    weight: dict[tuple[int, int], int] = {}
    for u, v in g.edges:
        weight[(u, v)] = weight.get((u, v), 0) + 1
    return _tree_count_weighted(g.n, weight)


def _induced_tree_count(g: SimpleGraph, verts: Sequence[int]) -> int:
    idx = {v: i for i, v in enumerate(verts)}
    weight: dict[tuple[int, int], int] = {}
    for u, v in g.edges:
        if u in idx and v in idx:
            key = (idx[u], idx[v])
            weight[key] = weight.get(key, 0) + 1
    return _tree_count_weighted(len(verts), weight)


def two_tree_count(g: TwoTerminalGraph) -> int:
    """Split subgraphs consisting of two disjoint trees, via the bipartition sum
    of induced spanning-tree products (independent of the subset sweep).

    Equals split_coefficients(g).counts[n-2].
    """
    n = g.graph.n
    others = [v for v in range(n) if v not in (g.s, g.t)]
    total = 0
    for bits in range(1 << len(others)):
        side_s = [g.s]
        side_t = [g.t]
        for i, v in enumerate(others):
            (side_s if (bits >> i) & 1 else side_t).append(v)
        ts = _induced_tree_count(g.graph, side_s)
        if ts == 0:
            continue
        total += ts * _induced_tree_count(g.graph, side_t)
    return total


def deletion_contraction_check(g: SimpleGraph, e: int) -> bool:
    """Check t(G) = t(G-e) + t(G*e) with spanning trees counted exactly.

    The contraction here keeps parallel edges (multigraph count, multiplicities
    in the Laplacian); the simple-quotient contraction would not satisfy the
    identity.  Precondition: g connected, e not a bridge.
    """
    if not 0 <= e < g.m:
        raise IndexError(f"edge index {e} out of range")
    a, b = g.edges[e]
    deleted = SimpleGraph(g.n, tuple(p for i, p in enumerate(g.edges) if i != e))
    # contract: b folds into a, vertices above b shift down, multiplicities kept
    weight: dict[tuple[int, int], int] = {}
    for i, (u, v) in enumerate(g.edges):
        if i == e:
            continue
        x = a if u == b else u
        y = a if v == b else v
        x = x - 1 if x > b else x
        y = y - 1 if y > b else y
        if x == y:
            continue
        key = (min(x, y), max(x, y))
        weight[key] = weight.get(key, 0) + 1
    t_contracted = _tree_count_weighted(g.n - 1, weight)
    return spanning_tree_count(g) == spanning_tree_count(deleted) + t_contracted


# ---------------------------------------------------------------------------
# Monte Carlo estimator

_MC_BLOCK = 65536


@dataclass(frozen=True)
class RandomSource:
    """Deterministic pseudorandom stream for the estimator.

    Backed by Python's Mersenne Twister (`random.Random`), whose seeded
    getrandbits stream is stable across releases.  Bernoulli draws with exact
    rational probability a/b use rejection on getrandbits, so no floating
    point enters the sampling.  Trials are consumed in fixed blocks of 65536;
    block k is seeded with (seed << 64) | k, which makes the estimate
    independent of how blocks are scheduled across workers.
    """

    seed: int

    def block_seed(self, block: int) -> int:
        return (int(self.seed) << 64) | block


def _sample_block(
    n: int,
    edges: tuple[Edge, ...],
    s: int,
    t: int,
    num: int,
    den: int,
    block_seed: int,
    trials: int,
) -> int:
    rng = random.Random(block_seed)
    getrandbits = rng.getrandbits
    k = (den - 1).bit_length() if den > 1 else 1
    hits = 0
    for _ in range(trials):
        parent = list(range(n))
        merges = 0
        for u, v in edges:
            x = getrandbits(k)
            while x >= den:
                x = getrandbits(k)
            if x >= num:
                continue
            while parent[u] != u:
                parent[u] = parent[parent[u]]
                u = parent[u]
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            if u != v:
                if u < v:
                    parent[v] = u
                else:
                    parent[u] = v
                merges += 1
        if n - merges != 2:
            continue
        rs = s
        while parent[rs] != rs:
            rs = parent[rs]
        rt = t
        while parent[rt] != rt:
            rt = parent[rt]
        if rs != rt:
            hits += 1
    return hits


def monte_carlo_sr(
    g: TwoTerminalGraph,
    p: Fraction | int | str,
    trials: int,
    rng: RandomSource,
    jobs: int = 1,
) -> tuple[float, float]:
    """Bernoulli estimate of the split reliability at survival probability p.

    Returns (estimate, standard error).  Deterministic given the seed, for any
    jobs value.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    prob = Fraction(p)
    if not 0 <= prob <= 1:
        raise ValueError("p must lie in [0, 1]")
    num, den = prob.numerator, prob.denominator
    blocks = []
    start = 0
    b = 0
    while start < trials:
        count = min(_MC_BLOCK, trials - start)
        blocks.append((rng.block_seed(b), count))
        start += count
        b += 1
    args = [
        (g.graph.n, g.graph.edges, g.s, g.t, num, den, seed, count)
        for seed, count in blocks
    ]
    if jobs > 1 and len(args) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            hits = sum(pool.map(_sample_block_star, args))
    else:
        hits = sum(_sample_block(*a) for a in args)
    est = hits / trials
    stderr = math.sqrt(est * (1.0 - est) / trials)
    return est, stderr


def _sample_block_star(args: tuple) -> int:
    return _sample_block(*args)
