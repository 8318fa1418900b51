"""Pair each builtin model with its brute-force oracles and compare."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import oracle
from .decomp import derivative_coeffs
from .errors import BudgetExceededError
from .models import ModelSpec

__all__ = ["Check", "oracle_plan", "verify_model", "VERIFY_BUDGET"]

# enumerations above this many objects are skipped by verify_model
VERIFY_BUDGET = 2 * 10**6


@dataclass(frozen=True)
class Check:
    quantity: str
    n: int
    expected: int | None
    computed: Fraction
    status: str  # "match", "mismatch" or "skipped"

    @property
    def ok(self) -> bool:
        return self.status != "mismatch"


@dataclass(frozen=True)
class _Quantity:
    name: str
    # which decomp value to compare: "connected", "d" (n! delta_n) or "delta"
    source: str
    enumerate: Callable[[int, int], oracle.EnumResult]
    # maps a size n to the enumerator argument, or None when n is off-lattice
    argument: Callable[[int], int | None]


def _identity(n):
    return n


def _half(n):
    return n // 2 if n % 2 == 0 else None


def _even(n):
    return n if n % 2 == 0 else None


def oracle_plan(model: ModelSpec) -> list[_Quantity]:
    """Oracle-backed quantities for ``model`` (empty when it has no oracle)."""
    p = model.param_map
    oid = model.oracle_id
    if oid == "multigraph":
        d = p.get("d", {"graph": 1, "oriented_graph": 2, "digraph": 3}.get(model.id))
        return [
            _Quantity("connected", "connected",
                      lambda n, b: oracle.count_connected_graphs(n, d, b), _identity),
            _Quantity("irreducible multitournaments", "d",
                      lambda n, b: oracle.count_irreducible_tournaments(n, d, b), _identity),
        ]
    if oid in ("origami", "multilinear", "constellation"):
        # number of independent permutations in the ambient class
        width = {"origami": 2, "multilinear": p.get("d"), "constellation": p.get("d", 0) - 1}[oid]
        return [
            _Quantity("connected (transitive tuples)", "connected",
                      lambda n, b: oracle.count_transitive_tuples(n, width, b), _identity),
            _Quantity("indecomposable multipermutations", "delta",
                      lambda n, b: oracle.count_indecomposable_multipermutations(n, width - 1, b), _identity),
            _Quantity("irreducible multiple linear orders", "d",
                      lambda n, b: oracle.count_irreducible_linear_orders(n, width, b), _identity),
        ]
    if oid == "comb_map":
        return [
            _Quantity("connected maps", "connected",
                      lambda n, b: oracle.count_connected_maps(n, b), _even),
            _Quantity("indecomposable perfect matchings", "delta",
                      lambda k, b: oracle.count_indecomposable_matchings(k, b), _half),
            _Quantity("irreducible linear matchings", "d",
                      lambda n, b: oracle.count_irreducible_linear_matchings(n, b), _even),
        ]
    if oid == "ogem":
        D = p["D"]
        return [
            _Quantity("connected orientable GEMs", "connected",
                      lambda n, b: oracle.count_connected_ogems(n, D, b), _even),
            _Quantity("indecomposable multipermutations", "delta",
                      lambda k, b: oracle.count_indecomposable_multipermutations(k, D - 1, b), _half),
        ]
    return []


def verify_model(model: ModelSpec, max_n: int, budget: int = VERIFY_BUDGET) -> list[Check]:
    """Compare decomp output with every applicable oracle for sizes ``1..max_n``.

    Enumerations beyond ``budget`` are reported as skipped, never truncated.
    """
    plan = oracle_plan(model)
    if not plan:
        return []
    derived = derivative_coeffs(model, max_n)
    values = {
        "connected": [Fraction(c) for c in derived.connected.terms],
        "d": list(derived.d_rational),
        "delta": list(derived.delta),
    }
    checks = []
    for q in plan:
        for n in range(1, max_n + 1):
            arg = q.argument(n)
            if arg is None or arg < 1:
                continue
            computed = values[q.source][n]
            try:
                result = q.enumerate(arg, budget)
            except BudgetExceededError:
                checks.append(Check(q.name, n, None, computed, "skipped"))
                continue
            status = "match" if result.count == computed else "mismatch"
            checks.append(Check(q.name, n, result.count, computed, status))
    return checks


