"""SET/SEQ calculus on counting sequences.

For a class ``A = SET(C) = SEQ(D)`` the generating functions satisfy
``C = log A`` and ``D = 1 - 1/A``.  Connected counts come from the series
logarithm; derivative coefficients come either from the series reciprocal or
from inclusion-exclusion over integer partitions.  The two derivative routes
share no code beyond the connected counts and must agree exactly.

Periodic models are processed on the compressed lattice ``x = z**p`` and
re-expanded on output.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterator, Sequence

from .errors import InsufficientDataError, SeriesDomainError
from .models import ModelSpec
from .series import CountingSequence, Egf, log1p, reciprocal, substitute_power

__all__ = [
    "Partition",
    "DerivedSequences",
    "BenderReport",
    "lattice_egf",
    "connected_counts",
    "derivative_coeffs",
    "derivative_coeffs_by_partitions",
    "partitions",
    "bender_compose_check",
]


@dataclass(frozen=True)
class Partition:
    """Partition of ``k`` stored as multiplicities: ``mult[i-1]`` parts equal to ``i``."""

    mult: tuple[int, ...]

    @property
    def size(self) -> int:
        return sum(i * p for i, p in enumerate(self.mult, 1))

    @property
    def length(self) -> int:
        return sum(self.mult)

    @property
    def parts(self) -> tuple[int, ...]:
        out = []
        for i in range(len(self.mult), 0, -1):
            out.extend([i] * self.mult[i - 1])
        return tuple(out)


def partitions(k: int) -> Iterator[Partition]:
    """Multiplicity vectors ``(p_1, ..., p_k)`` with ``sum i*p_i = k``, lexicographically."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if k == 0:
        yield Partition(())
        return
    vec = [0] * k

    def rec(i, remaining):
        if remaining == 0:
            yield Partition(tuple(vec))
            return
        if i > remaining:
            return
        for p in range(remaining // i + 1):
            vec[i - 1] = p
            yield from rec(i + 1, remaining - p * i)
        vec[i - 1] = 0

    yield from rec(1, k)


def _lattice_order(model: ModelSpec, order: int) -> int:
    if order < 0:
        raise ValueError("order must be non-negative")
    if model.max_n is not None and order > model.max_n:
        raise InsufficientDataError(order + 1, model.max_n + 1)
    return order // model.period


@lru_cache(maxsize=256)
def lattice_egf(model: ModelSpec, lattice_order: int) -> Egf:
    """``sum_m a_{pm}/(pm)! x**m`` truncated at ``x**lattice_order``."""
    p = model.period
    return Egf(
        tuple(Fraction(model.count_fn(p * m), factorial(p * m)) for m in range(lattice_order + 1))
    )


@lru_cache(maxsize=256)
def _lattice_log(model, lattice_order):
    a = lattice_egf(model, lattice_order)
    if a[0] != 1:
        raise SeriesDomainError(f"{model.key}: a_0 must be 1 for a SET decomposition")
    return log1p(a - 1)


@lru_cache(maxsize=256)
def _lattice_derivative(model, lattice_order):
    a = lattice_egf(model, lattice_order)
    return 1 - reciprocal(a)


def _expand(model, lattice_series, order):
    return substitute_power(lattice_series, model.period).coeffs[: order + 1] + (Fraction(0),) * (
        order + 1 - (lattice_series.order * model.period + 1)
    )


def connected_counts(model: ModelSpec, order: int) -> CountingSequence:
    """``c_n = n! [z^n] log A(z)`` for ``n <= order``."""
    log_a = _lattice_log(model, _lattice_order(model, order))
    coeffs = _expand(model, log_a, order)
    terms = []
    for n, c in enumerate(coeffs):
        value = c * factorial(n)
        if value.denominator != 1 or value < 0:
            raise SeriesDomainError(f"{model.key}: c_{n} = {value} is not a non-negative integer")
        terms.append(value.numerator)
    return CountingSequence(tuple(terms), model.period, f"connected {model.key}")


@dataclass(frozen=True)
class DerivedSequences:
    """Every sequence derived from one model, up to a size order.

    ``delta[n] = [z^n](1 - 1/A)``; ``derivative[n] = n! * delta[n]`` when all are
    integers, else ``None``.  ``interpretation`` is False for models where no
    combinatorial meaning of the derivative coefficients is claimed.
    """

    base: CountingSequence
    connected: CountingSequence
    delta: tuple[Fraction, ...]
    derivative: tuple[int, ...] | None
    interpretation: bool

    @property
    def d_rational(self) -> tuple[Fraction, ...]:
        return tuple(c * factorial(n) for n, c in enumerate(self.delta))

    def lattice_delta(self) -> tuple[Fraction, ...]:
        """``delta`` restricted to sizes ``p, 2p, ...`` (index 0 is the constant term)."""
        return self.delta[:: self.base.period]


def derivative_coeffs(model: ModelSpec, order: int) -> DerivedSequences:
    m = _lattice_order(model, order)
    delta = _expand(model, _lattice_derivative(model, m), order)
    d = [c * factorial(n) for n, c in enumerate(delta)]
    integral = all(x.denominator == 1 for x in d)
    if model.seq_class_known and not (integral and all(x >= 0 for x in d)):
        raise SeriesDomainError(f"{model.key}: derivative sequence is not a non-negative integer sequence")
    return DerivedSequences(
        base=model.counting_sequence(order),
        connected=connected_counts(model, order),
        delta=tuple(delta),
        derivative=tuple(x.numerator for x in d) if integral else None,
        interpretation=model.seq_class_known,
    )


def derivative_coeffs_by_partitions(
    model: ModelSpec, k: int, connected: Sequence[int] | None = None
) -> Fraction:
    """``d_k`` by inclusion-exclusion over partitions of ``k``.

    Sums ``(-1)**(l-1) * k!/prod (i!)**p_i * prod c_i**p_i / p_i!`` over all
    multiplicity vectors, with ``c_i`` the connected counts (computed from the
    model unless given).
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    c = list(connected) if connected is not None else list(connected_counts(model, k).terms)
    if len(c) <= k:
        raise InsufficientDataError(k + 1, len(c))
    total = Fraction(0)
    kf = factorial(k)
    for part in partitions(k):
        num, den = kf, 1
        for i, p in enumerate(part.mult, 1):
            if p:
                if c[i] == 0:
                    num = 0
                    break
                num *= c[i] ** p
                den *= factorial(i) ** p * factorial(p)
        if num:
            sign = 1 if part.length % 2 else -1
            total += sign * Fraction(num, den)
    return total


@dataclass(frozen=True)
class BenderReport:
    """Residuals ``v_n - sum_{k<=r} w_k u_{n-k}`` relative to ``u_{n-r}``.

    ``relative[r]`` lists ``(n, residual/u_{n-r})``; ``next_term[r]`` lists
    ``(n, residual/(w_{r+1} u_{n-r-1}))`` when ``w_{r+1} != 0``.
    """

    window: tuple[int, int]
    relative: dict
    next_term: dict
    passed: bool


def bender_compose_check(u: Egf, r_max: int = 2, window: tuple[int, int] | None = None) -> BenderReport:
    """Finite-window check of the composition rule for ``F = log(1 + y)``.

    Passes when, for every ``r <= r_max``, ``|residual_r(n) / u_{n-r}|`` is
    non-increasing across the window.  This is evidence, not proof.
    """
    if u[0] != 0:
        raise SeriesDomainError("bender_compose_check needs u(0) = 0")
    lo, hi = window if window is not None else (max(r_max + 2, u.order // 2), u.order)
    if hi > u.order:
        raise InsufficientDataError(hi + 1, u.order + 1)
    v = log1p(u)
    w = reciprocal(1 + u)
    relative, next_term = {}, {}
    passed = True
    for r in range(1, r_max + 1):
        rows, nxt = [], []
        for n in range(max(lo, r + 1), hi + 1):
            residual = v[n] - sum(w[k] * u[n - k] for k in range(r + 1))
            if u[n - r] != 0:
                rows.append((n, residual / u[n - r]))
            if r + 1 <= u.order and w[r + 1] != 0 and u[n - r - 1] != 0:
                nxt.append((n, residual / (w[r + 1] * u[n - r - 1])))
        mags = [abs(x) for _, x in rows]
        if any(b > a for a, b in zip(mags, mags[1:])):
            passed = False
        relative[r] = rows
        next_term[r] = nxt
    return BenderReport((lo, hi), relative, next_term, passed)
