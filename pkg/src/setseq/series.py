"""Truncated exponential generating functions with exact rational coefficients.

An :class:`Egf` of order ``N`` stores the coefficients ``q_0, ..., q_N`` of
``sum q_n z**n``; for a counting sequence ``a_n`` these are ``a_n / n!``.
Binary operations on series of different orders truncate to the shorter one.

Only the three compositions needed for SET/SEQ calculus are provided:
``log(1 + u)``, ``exp(u)`` and ``1 / f``.  ``log1p`` and ``exp`` each have a
coefficient recurrence and a Newton iteration; the two are kept independent so
that one can serve as an oracle for the other.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Iterable, Sequence

from .errors import InsufficientDataError, SeriesDomainError

__all__ = [
    "CountingSequence",
    "Egf",
    "egf_from_counts",
    "counts_from_egf",
    "mul",
    "log1p",
    "exp",
    "reciprocal",
    "substitute_power",
    "extract_stride",
]


@dataclass(frozen=True)
class CountingSequence:
    """Integer counts ``a_0..a_N`` of a labeled class.

    ``period`` is the lattice step: ``a_n`` vanishes unless ``period`` divides ``n``.
    """

    terms: tuple[int, ...]
    period: int = 1
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(int(t) for t in self.terms))
        if self.period < 1:
            raise ValueError("period must be a positive integer")
        if not self.is_periodic():
            raise ValueError(f"terms off the period-{self.period} lattice must vanish")

    def __len__(self):
        return len(self.terms)

    def __getitem__(self, n):
        return self.terms[n]

    @property
    def order(self) -> int:
        return len(self.terms) - 1

    def is_periodic(self) -> bool:
        return all(t == 0 for n, t in enumerate(self.terms) if n % self.period)

    def lattice(self) -> tuple[int, ...]:
        """Terms at sizes ``0, p, 2p, ...``."""
        return self.terms[:: self.period]


@dataclass(frozen=True)
class Egf:
    coeffs: tuple[Fraction, ...] = field(default=(Fraction(1),))

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("an Egf needs at least one coefficient")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @classmethod
    def one(cls, order: int) -> "Egf":
        return cls((Fraction(1),) + (Fraction(0),) * order)

    @classmethod
    def zero(cls, order: int) -> "Egf":
        return cls((Fraction(0),) * (order + 1))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, n):
        return self.coeffs[n]

    def __iter__(self):
        return iter(self.coeffs)

    def truncate(self, order: int) -> "Egf":
        if order > self.order:
            raise InsufficientDataError(order + 1, len(self.coeffs))
        return Egf(self.coeffs[: order + 1])

    def __add__(self, other):
        if not isinstance(other, Egf):
            other = _constant(other, self.order)
        n = min(self.order, other.order)
        return Egf(tuple(self.coeffs[i] + other.coeffs[i] for i in range(n + 1)))

    __radd__ = __add__

    def __neg__(self):
        return Egf(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        if not isinstance(other, Egf):
            other = _constant(other, self.order)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Egf):
            return mul(self, other)
        return Egf(tuple(c * other for c in self.coeffs))

    __rmul__ = __mul__

    def counts(self) -> list[Fraction]:
        """``n! * q_n`` for every retained coefficient."""
        return [c * factorial(n) for n, c in enumerate(self.coeffs)]

    def __repr__(self):
        body = ", ".join(str(c) for c in self.coeffs)
        return f"Egf([{body}])"


def _constant(value, order):
    return Egf((Fraction(value),) + (Fraction(0),) * order)


def egf_from_counts(seq: CountingSequence | Sequence[int], order: int) -> Egf:
    terms = seq.terms if isinstance(seq, CountingSequence) else tuple(seq)
    if order < 0:
        raise ValueError("order must be non-negative")
    if order > len(terms) - 1:
        raise InsufficientDataError(order + 1, len(terms))
    return Egf(tuple(Fraction(terms[n], factorial(n)) for n in range(order + 1)))


def counts_from_egf(f: Egf) -> list[int]:
    """Inverse of :func:`egf_from_counts`; raises if some ``n! q_n`` is not integral."""
    out = []
    for n, c in enumerate(f.counts()):
        if c.denominator != 1:
            raise SeriesDomainError(f"coefficient {n} is not integral: {c}")
        out.append(c.numerator)
    return out


def mul(f: Egf, g: Egf) -> Egf:
    n = min(f.order, g.order)
    a, b = f.coeffs, g.coeffs
    return Egf(tuple(sum(a[i] * b[k - i] for i in range(k + 1)) for k in range(n + 1)))


def _require_zero_constant(u: Egf, what: str):
    if u.coeffs[0] != 0:
        raise SeriesDomainError(f"{what} needs a series with zero constant term, got {u.coeffs[0]}")


def _log1p_recurrence(u: Egf) -> Egf:
    # n l_n = n a_n - sum_{k<n} k l_k a_{n-k}  with  a = 1 + u
    a = (Fraction(1),) + u.coeffs[1:]
    logs = [Fraction(0)]
    for n in range(1, u.order + 1):
        acc = n * a[n]
        for k in range(1, n):
            if logs[k] and a[n - k]:
                acc -= k * logs[k] * a[n - k]
        logs.append(acc / n)
    return Egf(tuple(logs))


def _exp_recurrence(u: Egf) -> Egf:
    # n b_n = sum_{k=1}^n k u_k b_{n-k}
    out = [Fraction(1)]
    c = u.coeffs
    for n in range(1, u.order + 1):
        acc = Fraction(0)
        for k in range(1, n + 1):
            if c[k] and out[n - k]:
                acc += k * c[k] * out[n - k]
        out.append(acc / n)
    return Egf(tuple(out))


def _newton_schedule(order):
    precs = []
    p = order
    while p > 0:
        precs.append(p)
        p //= 2
    return reversed(precs)


def _exp_newton(u: Egf) -> Egf:
    # y <- y (1 + u - log y), doubling the correct prefix each round
    y = Egf.one(0)
    for prec in _newton_schedule(u.order):
        y = Egf(y.coeffs + (Fraction(0),) * (prec - y.order))
        uu = u.truncate(prec)
        y = y * (1 + uu - _log1p_recurrence(y - 1))
    return y if u.order > 0 else Egf.one(0)


def _log1p_newton(u: Egf) -> Egf:
    # solve exp(y) = 1 + u via  y <- y + (1 + u) exp(-y) - 1
    y = Egf.zero(0)
    for prec in _newton_schedule(u.order):
        y = Egf(y.coeffs + (Fraction(0),) * (prec - y.order))
        a = 1 + u.truncate(prec)
        y = y + a * _exp_recurrence(-y) - 1
    return y if u.order > 0 else Egf.zero(0)


def log1p(u: Egf, method: str = "recurrence") -> Egf:
    """Series ``log(1 + u)``; ``u`` must have zero constant term."""
    _require_zero_constant(u, "log1p")
    if method == "recurrence":
        return _log1p_recurrence(u)
    if method == "newton":
        return _log1p_newton(u)
    raise ValueError(f"unknown method {method!r}")


def exp(u: Egf, method: str = "recurrence") -> Egf:
    """Series ``exp(u)`` (constant term 1); ``u`` must have zero constant term."""
    _require_zero_constant(u, "exp")
    if method == "recurrence":
        return _exp_recurrence(u)
    if method == "newton":
        return _exp_newton(u)
    raise ValueError(f"unknown method {method!r}")


def reciprocal(f: Egf) -> Egf:
    c = f.coeffs
    if c[0] == 0:
        raise SeriesDomainError("reciprocal of a series with zero constant term")
    inv0 = 1 / c[0]
    out = [inv0]
    for n in range(1, f.order + 1):
        acc = Fraction(0)
        for k in range(1, n + 1):
            if c[k] and out[n - k]:
                acc += c[k] * out[n - k]
        out.append(-acc * inv0)
    return Egf(tuple(out))


def substitute_power(f: Egf, p: int) -> Egf:
    """Return ``f(z**p)``, of order ``p * f.order``."""
    if p < 1:
        raise ValueError("p must be >= 1")
    if p == 1:
        return f
    out = [Fraction(0)] * (p * f.order + 1)
    for n, c in enumerate(f.coeffs):
        out[p * n] = c
    return Egf(tuple(out))


def extract_stride(f: Egf, p: int) -> Egf:
    """Coefficients at ``0, p, 2p, ...``; inverse of :func:`substitute_power`."""
    if p < 1:
        raise ValueError("p must be >= 1")
    return Egf(f.coeffs[::p])


def from_iterable(values: Iterable) -> Egf:
    return Egf(tuple(values))
