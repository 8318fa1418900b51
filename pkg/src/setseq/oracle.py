"""Exhaustive enumerators used as independent oracles.

Nothing here touches generating functions: every count is obtained by
listing objects and testing the defining property directly.  Each enumerator
refuses to start when the search space exceeds its budget, so a returned count
is never partial.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations, permutations, product
from math import comb, factorial
from typing import Iterator

from .errors import BudgetExceededError, EvaluationDomainError

__all__ = [
    "UnionFind",
    "EnumResult",
    "count_connected_graphs",
    "count_irreducible_tournaments",
    "count_indecomposable_permutations",
    "count_indecomposable_multipermutations",
    "count_indecomposable_matchings",
    "count_transitive_tuples",
    "count_connected_maps",
    "count_connected_ogems",
    "count_irreducible_linear_orders",
    "count_irreducible_linear_matchings",
    "perfect_matchings",
    "DEFAULT_BUDGET",
]

DEFAULT_BUDGET = 10**8


class UnionFind:
    """Disjoint sets over ``0..size-1`` with path compression."""

    def __init__(self, size):
        self.parent = list(range(size))
        self.components = size

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra
            self.components -= 1


@dataclass(frozen=True)
class EnumResult:
    n: int
    total: int
    connected_or_irreducible: int
    elapsed: float

    @property
    def count(self) -> int:
        return self.connected_or_irreducible


def _guard(space, budget, what):
    if space > budget:
        raise BudgetExceededError(f"{what}: {space} objects exceeds budget {budget}")


def _connected(n, edges) -> bool:
    if n <= 1:
        return True
    uf = UnionFind(n)
    for a, b in edges:
        uf.union(a, b)
    return uf.components == 1


def _is_transitive(n, perms) -> bool:
    if n <= 1:
        return True
    uf = UnionFind(n)
    for sigma in perms:
        for i in range(n):
            uf.union(i, sigma[i])
    return uf.components == 1


def count_connected_graphs(n: int, d: int = 1, budget: int = DEFAULT_BUDGET) -> EnumResult:
    """Connected ``d``-multigraphs on ``n`` labeled vertices.

    Assignments of edge multiplicities are grouped by their support (the set of
    pairs with multiplicity >= 1), which is all connectivity depends on; a
    support ``S`` stands for exactly ``d**|S|`` assignments.
    """
    if n < 0 or d < 1:
        raise ValueError("need n >= 0 and d >= 1")
    pairs = list(combinations(range(n), 2))
    _guard((d + 1) ** len(pairs), budget, "count_connected_graphs")
    start = time.perf_counter()
    total = connected = 0
    for mask in range(1 << len(pairs)):
        edges = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
        weight = d ** len(edges)
        total += weight
        if _connected(n, edges):
            connected += weight
    if n == 0:
        connected = 0
    return EnumResult(n, total, connected, time.perf_counter() - start)


def count_irreducible_tournaments(k: int, d: int = 1, budget: int = DEFAULT_BUDGET) -> EnumResult:
    """Irreducible ``d``-multitournaments on ``k`` vertices.

    A multitournament is reducible when some nonempty proper vertex set ``A``
    sends all ``d`` edges of every pair ``(a, b)``, ``a in A``, ``b`` outside
    ``A``, from ``a`` to ``b``.
    """
    if k < 1 or d < 1:
        raise ValueError("need k >= 1 and d >= 1")
    pairs = list(combinations(range(k), 2))
    _guard((d + 1) ** len(pairs) * 2**k, budget, "count_irreducible_tournaments")
    start = time.perf_counter()
    full = (1 << k) - 1
    subsets = range(1, full)
    total = irreducible = 0
    for split in product(range(d + 1), repeat=len(pairs)):
        # dom[v]: vertices w such that all d edges go v -> w
        dom = [0] * k
        for (i, j), forward in zip(pairs, split):
            if forward == d:
                dom[i] |= 1 << j
            elif forward == 0:
                dom[j] |= 1 << i
        total += 1
        reducible = False
        for a in subsets:
            rest = full ^ a
            if all(dom[v] & rest == rest for v in range(k) if a >> v & 1):
                reducible = True
                break
        if not reducible:
            irreducible += 1
    return EnumResult(k, total, irreducible, time.perf_counter() - start)


def _fixes_proper_prefix(perms, n) -> bool:
    for j in range(1, n):
        if all(max(sigma[:j]) == j - 1 for sigma in perms):
            return True
    return False


def count_indecomposable_multipermutations(k: int, d: int = 1, budget: int = DEFAULT_BUDGET) -> EnumResult:
    """``d``-tuples of permutations of ``[k]`` with no common invariant prefix ``[j]``, ``j < k``."""
    if k < 1 or d < 1:
        raise ValueError("need k >= 1 and d >= 1")
    _guard(factorial(k) ** d, budget, "count_indecomposable_multipermutations")
    start = time.perf_counter()
    perms = list(permutations(range(k)))
    total = good = 0
    for tup in product(perms, repeat=d):
        total += 1
        if not _fixes_proper_prefix(tup, k):
            good += 1
    return EnumResult(k, total, good, time.perf_counter() - start)


def count_indecomposable_permutations(k: int, budget: int = DEFAULT_BUDGET) -> EnumResult:
    if k > 9:
        raise BudgetExceededError("count_indecomposable_permutations supports k <= 9")
    return count_indecomposable_multipermutations(k, 1, budget)


def perfect_matchings(points) -> Iterator[list[tuple[int, int]]]:
    points = list(points)
    if not points:
        yield []
        return
    first = points[0]
    for i in range(1, len(points)):
        rest = points[1:i] + points[i + 1 :]
        for m in perfect_matchings(rest):
            yield [(first, points[i])] + m


def _matching_decomposable(pairs, size) -> bool:
    partner = [0] * size
    for a, b in pairs:
        partner[a], partner[b] = b, a
    for j in range(2, size, 2):
        if all(partner[i] < j for i in range(j)):
            return True
    return False


def count_indecomposable_matchings(k_pairs: int, budget: int = 10**7) -> EnumResult:
    """Perfect matchings of ``[2k]`` with no proper prefix ``[2j]`` closed under the matching."""
    if k_pairs < 1:
        raise ValueError("k_pairs must be >= 1")
    size = 2 * k_pairs
    _guard(factorial(size) // (2**k_pairs * factorial(k_pairs)), budget, "count_indecomposable_matchings")
    start = time.perf_counter()
    total = good = 0
    for m in perfect_matchings(range(size)):
        total += 1
        if not _matching_decomposable(m, size):
            good += 1
    return EnumResult(k_pairs, total, good, time.perf_counter() - start)


def count_transitive_tuples(n: int, d: int, budget: int = DEFAULT_BUDGET) -> EnumResult:
    """``d``-tuples of permutations of ``[n]`` generating a transitive group."""
    if n < 1 or d < 1:
        raise ValueError("need n >= 1 and d >= 1")
    _guard(factorial(n) ** d, budget, "count_transitive_tuples")
    start = time.perf_counter()
    perms = list(permutations(range(n)))
    total = good = 0
    for tup in product(perms, repeat=d):
        total += 1
        if _is_transitive(n, tup):
            good += 1
    return EnumResult(n, total, good, time.perf_counter() - start)


def _involutions(n):
    for m in perfect_matchings(range(n)):
        alpha = [0] * n
        for a, b in m:
            alpha[a], alpha[b] = b, a
        yield tuple(alpha)


def count_connected_maps(n_darts: int, budget: int = DEFAULT_BUDGET) -> EnumResult:
    """Pairs ``(sigma, alpha)`` on ``n_darts`` darts, ``alpha`` fixed-point free, acting transitively."""
    if n_darts % 2:
        raise EvaluationDomainError(f"no combinatorial map has an odd number of darts ({n_darts})")
    if n_darts < 2:
        raise ValueError("n_darts must be >= 2")
    matchings = factorial(n_darts) // (2 ** (n_darts // 2) * factorial(n_darts // 2))
    _guard(factorial(n_darts) * matchings, budget, "count_connected_maps")
    start = time.perf_counter()
    alphas = list(_involutions(n_darts))
    total = good = 0
    for sigma in permutations(range(n_darts)):
        for alpha in alphas:
            total += 1
            if _is_transitive(n_darts, (sigma, alpha)):
                good += 1
    return EnumResult(n_darts, total, good, time.perf_counter() - start)


def count_connected_ogems(n: int, D: int, budget: int = 10**7) -> EnumResult:
    """Connected bipartite ``(D+1)``-edge-colored graphs on ``n`` vertices with a chosen side.

    An object is a vertex set ``A`` of size ``n/2`` (the chosen side) and, for
    each color, a bijection from ``A`` to its complement.
    """
    if n % 2:
        raise EvaluationDomainError(f"orientable GEMs have an even number of simplices, got {n}")
    if D < 2 or n < 2:
        raise ValueError("need D >= 2 and n >= 2")
    m = n // 2
    _guard(comb(n, m) * factorial(m) ** (D + 1), budget, "count_connected_ogems")
    start = time.perf_counter()
    total = good = 0
    for side in combinations(range(n), m):
        other = [v for v in range(n) if v not in side]
        images = list(permutations(other))
        for colors in product(images, repeat=D + 1):
            total += 1
            edges = [(a, b) for img in colors for a, b in zip(side, img)]
            if _connected(n, edges):
                good += 1
    return EnumResult(n, total, good, time.perf_counter() - start)


def _common_initial_segment(orders, n) -> bool:
    # orders are tuples listing elements from smallest to largest
    for j in range(1, n):
        head = set(orders[0][:j])
        if all(set(o[:j]) == head for o in orders[1:]):
            return True
    return False


def count_irreducible_linear_orders(k: int, d: int, budget: int = DEFAULT_BUDGET) -> EnumResult:
    """``d``-tuples of linear orders of ``[k]`` with no common proper initial segment."""
    if k < 1 or d < 1:
        raise ValueError("need k >= 1 and d >= 1")
    _guard(factorial(k) ** d, budget, "count_irreducible_linear_orders")
    start = time.perf_counter()
    orders = list(permutations(range(k)))
    total = good = 0
    for tup in product(orders, repeat=d):
        total += 1
        if not _common_initial_segment(tup, k):
            good += 1
    return EnumResult(k, total, good, time.perf_counter() - start)


def count_irreducible_linear_matchings(n: int, budget: int = DEFAULT_BUDGET) -> EnumResult:
    """Irreducible linear matchings of size ``n``.

    A linear matching is a pair of linear orders ``(<1, <2)`` such that swapping
    them amounts to relabeling by a fixed-point-free involution ``iota``; it is
    listed as ``<1`` together with ``iota``, and ``<2`` is ``<1`` read through
    ``iota``.
    """
    if n % 2 or n < 2:
        raise EvaluationDomainError(f"linear matchings need a positive even size, got {n}")
    matchings = factorial(n) // (2 ** (n // 2) * factorial(n // 2))
    _guard(factorial(n) * matchings, budget, "count_irreducible_linear_matchings")
    start = time.perf_counter()
    iotas = list(_involutions(n))
    total = good = 0
    for first in permutations(range(n)):
        for iota in iotas:
            second = tuple(iota[x] for x in first)
            total += 1
            if not _common_initial_segment((first, second), n):
                good += 1
    return EnumResult(n, total, good, time.perf_counter() - start)
