"""Asymptotic expansion of the probability that a random object is connected.

For a gargantuan class with ``A = SET(C) = SEQ(D)``::

    c_n / a_n  ~  1 - sum_k d_k * C(n, k) * a_{n-k} / a_n

and for a ``p``-periodic class the same holds on the lattice ``n = p*m`` with
``d_{pk} * C(pm, pk) * a_{p(m-k)} / a_{pm}``.

Every term is kept symbolically.  For factorial-type models the term is
``delta_k * prod (alpha*m + beta)**e`` with ``delta_k = d_{pk} / (pk)!``, which
expands into a power series in ``1/m``; for multigraph-type models it is
``d_k * C(n, k) * b**(k(k+1)/2 - k*n)``.  The series variable is always the
lattice index ``m = size / p``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .decomp import connected_counts, derivative_coeffs
from .errors import ClassificationError, EvaluationDomainError, InsufficientDataError
from .models import FactorialForm, GeometricForm, ModelSpec, RatioKind
from .series import Egf, mul

__all__ = [
    "RationalFactor",
    "ExponentialFactor",
    "TabulatedFactor",
    "ExpansionTerm",
    "ExpansionTermList",
    "InvNSeries",
    "term_list",
    "evaluate_at",
    "exact_probability",
    "inv_n_series",
    "leading_term_report",
    "series_to_json",
    "term_list_to_json",
]


def _fmt_linear(slope, offset):
    lead = "n" if slope == 1 else f"{slope}n"
    if offset == 0:
        return lead
    return f"{lead}{offset:+d}"


@dataclass(frozen=True)
class RationalFactor:
    """``prod (slope*m + offset)**power`` with equal linear factors merged."""

    factors: tuple[tuple[int, int, int], ...]

    @classmethod
    def build(cls, raw):
        merged = Counter()
        for slope, offset, power in raw:
            merged[(slope, offset)] += power
        return cls(tuple(sorted((s, o, e) for (s, o), e in merged.items() if e)))

    @property
    def decay(self) -> int:
        """``g`` such that the factor is of exact order ``m**-g``."""
        return -sum(e for _, _, e in self.factors)

    def evaluate(self, m) -> Fraction:
        out = Fraction(1)
        for s, o, e in self.factors:
            out *= Fraction(s * m + o) ** e
        return out

    def inv_m_series(self, order: int) -> tuple[Fraction, Egf]:
        """``(scale, S)`` with factor = ``scale * m**-decay * S(1/m)``, ``S`` to ``order``."""
        scale = Fraction(1)
        s_series = Egf.one(order)
        for s, o, e in self.factors:
            scale *= Fraction(s) ** e
            x = Fraction(o, s)
            # generalized binomial series of (1 + x t)**e
            coeffs, c = [], Fraction(1)
            for i in range(order + 1):
                coeffs.append(c * x**i)
                c = c * (e - i) / (i + 1)
            s_series = mul(s_series, Egf(tuple(coeffs)))
        return scale, s_series

    def describe(self) -> str:
        num = [(s, o, e) for s, o, e in self.factors if e > 0]
        den = [(s, o, -e) for s, o, e in self.factors if e < 0]

        def side(items):
            parts = []
            for s, o, e in items:
                body = _fmt_linear(s, o) if o == 0 and (s == 1 or e == 1) else f"({_fmt_linear(s, o)})"
                parts.append(body if e == 1 else f"{body}^{e}")
            return "*".join(parts)

        top = side(num) or "1"
        if not den:
            return top
        bottom = side(den)
        return f"{top}/{bottom}" if len(den) == 1 else f"{top}/({bottom})"


@dataclass(frozen=True)
class ExponentialFactor:
    """``C(n, k) * base**(k(k+1)/2 - k*n)``."""

    k: int
    base: int

    @property
    def exponent_constant(self) -> int:
        return self.k * (self.k + 1) // 2

    def evaluate(self, n) -> Fraction:
        return comb(n, self.k) * Fraction(self.base) ** (self.exponent_constant - self.k * n)

    def describe(self) -> str:
        c, k = self.exponent_constant, self.k
        slope = "n" if k == 1 else f"{k}n"
        head = "n" if k == 1 else f"C(n,{k})"
        return f"{head}*{self.base}^({c}-{slope})"


@dataclass(frozen=True)
class TabulatedFactor:
    """``C(pm, pk) * a_{p(m-k)} / a_{pm}`` read from a finite table."""

    k: int
    period: int
    values: tuple[int, ...]

    def evaluate(self, m) -> Fraction:
        if m >= len(self.values):
            raise InsufficientDataError(m + 1, len(self.values))
        p = self.period
        return comb(p * m, p * self.k) * Fraction(self.values[m - self.k], self.values[m])

    def describe(self) -> str:
        if self.period == 1:
            return f"C(n,{self.k})*a[n-{self.k}]/a[n]"
        p = self.period
        return f"C({p}n,{p * self.k})*a[{p}(n-{self.k})]/a[{p}n]"


@dataclass(frozen=True)
class ExpansionTerm:
    """One correction term ``coefficient * factor(m)``.

    ``coefficient`` is ``delta`` for factorial-type models and ``d`` otherwise.
    """

    k: int
    d: Fraction
    delta: Fraction
    factor: RationalFactor | ExponentialFactor | TabulatedFactor

    @property
    def coefficient(self) -> Fraction:
        return self.delta if isinstance(self.factor, RationalFactor) else self.d

    def value(self, m) -> Fraction:
        c = self.coefficient
        return Fraction(0) if c == 0 else c * self.factor.evaluate(m)

    def describe(self) -> str:
        return f"{self.coefficient} * {self.factor.describe()}"


@dataclass(frozen=True)
class ExpansionTermList:
    model: str
    r: int
    period: int
    terms: tuple[ExpansionTerm, ...]
    convention: str

    @property
    def coefficients(self) -> list[Fraction]:
        return [t.coefficient for t in self.terms]

    def correction(self, m) -> Fraction:
        return sum((t.value(m) for t in self.terms), Fraction(0))

    def check_dominance(self, window) -> bool:
        """Each nonzero term exceeds the next nonzero one at every lattice index in ``window``."""
        live = [t for t in self.terms if t.coefficient != 0]
        for m in window:
            vals = [abs(t.value(m)) for t in live]
            if any(b >= a for a, b in zip(vals, vals[1:])):
                return False
        return True


def _convention(model):
    if model.period == 1:
        return "n = size"
    return f"n = size/{model.period} (lattice index)"


def _factor_for(model: ModelSpec, k: int):
    form, p = model.form, model.period
    if isinstance(form, GeometricForm):
        return ExponentialFactor(k, form.base)
    if isinstance(form, FactorialForm):
        raw = [(p, -j, 1) for j in range(p * k)]  # falling factorial (pm)_{pk}
        for block in form.blocks:
            raw.extend(block.ratio_factors(k))
        return RationalFactor.build(raw)
    return TabulatedFactor(k, p, form.values)


def term_list(model: ModelSpec, r: int) -> ExpansionTermList:
    if r < 0:
        raise ValueError("r must be non-negative")
    p = model.period
    terms = []
    if r:
        derived = derivative_coeffs(model, p * r)
        d = derived.d_rational
        for k in range(1, r + 1):
            terms.append(ExpansionTerm(k, d[p * k], derived.delta[p * k], _factor_for(model, k)))
    return ExpansionTermList(model.key, r, p, tuple(terms), _convention(model))


def evaluate_at(terms: ExpansionTermList, n: int) -> Fraction:
    """Truncated expansion ``1 - sum_{k<=r} term_k`` at size ``n``.

    This is a truncation, not an identity: summing all ``k`` at a fixed ``n``
    does not give the probability.
    """
    p = terms.period
    if terms.r == 0:
        return Fraction(1)
    if n % p:
        raise EvaluationDomainError(f"size {n} is not a multiple of the period {p}")
    if n <= terms.r * p:
        raise EvaluationDomainError(f"size {n} too small for r={terms.r}; need n > {terms.r * p}")
    return 1 - terms.correction(n // p)


def exact_probability(model: ModelSpec, n: int) -> Fraction:
    """``c_n / a_n`` in lowest terms."""
    a_n = model.count_fn(n)
    if a_n == 0:
        raise EvaluationDomainError(f"{model.key}: no objects of size {n}")
    return Fraction(connected_counts(model, n).terms[n], a_n)


@dataclass(frozen=True)
class InvNSeries:
    """``P ~ 1 - sum_j coefficients[j-1] / n**j``."""

    model: str
    coefficients: tuple[Fraction, ...]
    convention: str

    @property
    def r(self) -> int:
        return len(self.coefficients)

    def truncated(self, r: int) -> "InvNSeries":
        return InvNSeries(self.model, self.coefficients[:r], self.convention)

    def evaluate(self, n, r: int | None = None) -> Fraction:
        r = self.r if r is None else r
        n = Fraction(n)
        return 1 - sum((e / n**j for j, e in enumerate(self.coefficients[:r], 1)), Fraction(0))


def inv_n_series(model: ModelSpec, r: int) -> InvNSeries:
    """Coefficients ``e_1..e_r`` of the expansion in inverse powers of the lattice index."""
    if model.ratio_kind is not RatioKind.RATIONAL_IN_N or not isinstance(model.form, FactorialForm):
        raise ClassificationError(
            f"{model.key} decays exponentially; no 1/n series exists, use term_list instead"
        )
    if r < 1:
        raise ValueError("r must be >= 1")
    factors = []
    k = 1
    while True:
        f = _factor_for(model, k)
        if f.decay < 1 or (factors and f.decay < factors[-1].decay):
            raise AssertionError(f"{model.key}: term decay orders are not increasing")
        if f.decay > r:
            break
        factors.append(f)
        k += 1
    # every k beyond here has decay >= f.decay > r
    terms = term_list(model, len(factors)).terms if factors else ()
    out = [Fraction(0)] * (r + 1)
    for term, f in zip(terms, factors):
        if term.delta == 0:
            continue
        scale, s = f.inv_m_series(r - f.decay)
        for i, c in enumerate(s.coeffs):
            out[f.decay + i] += term.delta * scale * c
    return InvNSeries(model.key, tuple(out[1:]), _convention(model))


def leading_term_report(model: ModelSpec, max_order: int = 12) -> dict:
    """First nonzero correction term.

    For factorial-type models both the lattice-variable form ``e/m**j`` and the
    size-variable form ``e*p**j/n**j`` are given.
    """
    if model.ratio_kind is RatioKind.RATIONAL_IN_N and isinstance(model.form, FactorialForm):
        for r in range(1, max_order + 1):
            series = inv_n_series(model, r)
            e = series.coefficients[-1]
            if e != 0:
                p = model.period
                return {
                    "model": model.key,
                    "kind": "rational",
                    "order": r,
                    "lattice_coefficient": e,
                    "size_coefficient": e * p**r,
                    "convention": series.convention,
                    "text": _power_text(e, r),
                }
        return {"model": model.key, "kind": "rational", "order": None}
    for k in range(1, max_order + 1):
        terms = term_list(model, k)
        term = terms.terms[-1]
        if term.coefficient != 0:
            return {
                "model": model.key,
                "kind": "exponential",
                "k": k,
                "coefficient": term.coefficient,
                "factor": term.factor.describe(),
                "convention": terms.convention,
                "text": term.describe(),
            }
    return {"model": model.key, "kind": "exponential", "k": None}


def _power_text(e: Fraction, r: int) -> str:
    head = str(e) if e.denominator == 1 else f"({e})"
    return f"{head}/n" if r == 1 else f"{head}/n^{r}"


def _rat(x: Fraction) -> dict:
    x = Fraction(x)
    return {"numerator": str(x.numerator), "denominator": str(x.denominator)}


def series_to_json(series: InvNSeries) -> dict:
    return {
        "model": series.model,
        "r": series.r,
        "convention": series.convention,
        "coefficients": [{"order": j, **_rat(e)} for j, e in enumerate(series.coefficients, 1)],
    }


def term_list_to_json(terms: ExpansionTermList, at: int | None = None) -> dict:
    doc = {
        "model": terms.model,
        "r": terms.r,
        "period": terms.period,
        "convention": terms.convention,
        "terms": [
            {
                "k": t.k,
                "d": _rat(t.d),
                "delta": _rat(t.delta),
                "coefficient": _rat(t.coefficient),
                "factor": t.factor.describe(),
            }
            for t in terms.terms
        ],
    }
    if at is not None:
        doc["at"] = at
        doc["value"] = _rat(evaluate_at(terms, at))
    return doc


