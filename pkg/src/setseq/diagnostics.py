"""Finite-window sanity checks of the gargantuan growth conditions.

A sequence ``b`` is gargantuan when ``b_{n-1}/b_n -> 0`` and, for every
fixed ``r``, ``sum_{k=r}^{n-r} |b_k b_{n-k}| = O(b_{n-r})``.  Neither
condition can be decided from finitely many terms, so a report only says
whether a window is CONSISTENT with them.

Verdict rules (heuristic):

* condition (i): the ratio ``b_{n-1}/b_n`` must strictly decrease over the
  top half of the window;
* condition (ii): for each ``r``, the normalized sum may not grow by more
  than a factor 2 between the window midpoint and any later point.

The quantities of the sufficient conditions (``n b_{n-1}/b_n`` bounded and
``|b_k b_{n-k}|`` decreasing for ``k < n/2``) are reported but do not enter
the verdict, since failing a sufficient condition proves nothing.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import factorial
from typing import Sequence

from .errors import DiagnosticError, InsufficientDataError, LatticeMismatchError
from .series import CountingSequence

__all__ = ["Verdict", "GargantuanReport", "gargantuan_check", "product_check", "normalized_lattice"]

GROWTH_BOUND = 2


class Verdict(str, Enum):
    CONSISTENT = "CONSISTENT"
    INCONSISTENT = "INCONSISTENT"


@dataclass(frozen=True)
class GargantuanReport:
    window: tuple[int, int]
    condition_i: tuple[tuple[int, Fraction], ...]
    condition_ii: dict
    lemma_i_prime: tuple[tuple[int, Fraction], ...]
    lemma_ii_prime: tuple[tuple[int, bool], ...]
    verdict: Verdict
    reasons: tuple[str, ...] = ()

    def to_json(self) -> dict:
        def rows(items):
            return [{"n": n, "value": str(v)} for n, v in items]

        return {
            "window": list(self.window),
            "condition_i": rows(self.condition_i),
            "condition_ii": {str(r): rows(v) for r, v in sorted(self.condition_ii.items())},
            "lemma_i_prime": rows(self.lemma_i_prime),
            "lemma_ii_prime": [{"n": n, "decreasing": ok} for n, ok in self.lemma_ii_prime],
            "verdict": self.verdict.value,
            "reasons": list(self.reasons),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def normalized_lattice(seq: CountingSequence) -> list[Fraction]:
    """``a_{pm} / (pm)!`` for every lattice index ``m``."""
    p = seq.period
    return [Fraction(a, factorial(p * m)) for m, a in enumerate(seq.terms[::p])]


def _values(seq, normalize):
    if isinstance(seq, CountingSequence):
        return normalized_lattice(seq) if normalize else [Fraction(a) for a in seq.lattice()]
    values = [Fraction(v) for v in seq]
    if normalize:
        values = [v / factorial(n) for n, v in enumerate(values)]
    return values


def _check(b: Sequence[Fraction], window, r_max) -> GargantuanReport:
    lo, hi = window
    if hi - lo + 1 < 4:
        raise DiagnosticError(f"window {lo}..{hi} has fewer than 4 points")
    if lo < max(1, r_max):
        raise DiagnosticError(f"window must start at n >= {max(1, r_max)} for r_max={r_max}")
    if hi >= len(b):
        raise InsufficientDataError(hi + 1, len(b))
    if any(b[n] == 0 for n in range(max(0, lo - r_max), hi + 1)):
        raise DiagnosticError("sequence vanishes inside the window")
    mid = (lo + hi) // 2
    reasons = []

    cond_i = tuple((n, b[n - 1] / b[n]) for n in range(lo, hi + 1))
    top = [v for n, v in cond_i if n >= mid]
    if any(later >= earlier for earlier, later in zip(top, top[1:])):
        reasons.append("ratio b_{n-1}/b_n does not decrease over the top half of the window")

    cond_ii = {}
    for r in range(1, r_max + 1):
        rows = tuple(
            (n, sum(abs(b[k] * b[n - k]) for k in range(r, n - r + 1)) / abs(b[n - r]))
            for n in range(lo, hi + 1)
        )
        cond_ii[r] = rows
        at_mid = dict(rows)[mid]
        if any(v > GROWTH_BOUND * at_mid for n, v in rows if n > mid):
            reasons.append(f"normalized sum for r={r} grows by more than {GROWTH_BOUND}x")

    lemma_i = tuple((n, n * b[n - 1] / b[n]) for n in range(lo, hi + 1))
    lemma_ii = []
    for n in range(lo, hi + 1):
        x = [abs(b[k] * b[n - k]) for k in range((n + 1) // 2)]
        lemma_ii.append((n, all(x[k + 1] <= x[k] for k in range(len(x) - 1))))

    verdict = Verdict.INCONSISTENT if reasons else Verdict.CONSISTENT
    return GargantuanReport((lo, hi), cond_i, cond_ii, lemma_i, tuple(lemma_ii), verdict, tuple(reasons))


def gargantuan_check(seq, window: tuple[int, int], r_max: int = 3, normalize: bool = True) -> GargantuanReport:
    """Check a window of a sequence against both gargantuan conditions.

    A :class:`CountingSequence` is by default normalized to ``a_{pm}/(pm)!`` on
    its lattice first; pass ``normalize=False`` to test the values as given.
    ``window`` is a closed range of lattice indices.
    """
    return _check(_values(seq, normalize), window, r_max)


def product_check(a, b, window: tuple[int, int], r_max: int = 3) -> GargantuanReport:
    """Check the pointwise product of two (already normalized) sequences."""
    pa = a.period if isinstance(a, CountingSequence) else 1
    pb = b.period if isinstance(b, CountingSequence) else 1
    if pa != pb:
        raise LatticeMismatchError(f"periods differ: {pa} vs {pb}")
    va, vb = _values(a, False), _values(b, False)
    n = min(len(va), len(vb))
    return _check([va[i] * vb[i] for i in range(n)], window, r_max)
