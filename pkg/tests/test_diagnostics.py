import json
from fractions import Fraction as F
from math import factorial

import pytest

from setseq.diagnostics import Verdict, gargantuan_check, normalized_lattice, product_check
from setseq.errors import DiagnosticError, InsufficientDataError, LatticeMismatchError
from setseq.models import BUILTIN_IDS, DEFAULT_PARAMS, builtin
from setseq.series import CountingSequence

ALL = [builtin(i, DEFAULT_PARAMS.get(i)) for i in BUILTIN_IDS]


def dfact(n):
    out = 1
    while n > 1:
        out, n = out * n, n - 2
    return out


factorials = [factorial(n) for n in range(30)]


@pytest.mark.parametrize("model", ALL, ids=lambda m: m.key)
def test_builtins_consistent(model):
    seq = model.counting_sequence(24 * model.period)
    assert gargantuan_check(seq, (5, 24), r_max=3).verdict is Verdict.CONSISTENT


def test_graph_ratio_decreases():
    report = gargantuan_check(builtin("graph").counting_sequence(20), (5, 20), r_max=3)
    assert report.verdict is Verdict.CONSISTENT
    ratios = [v for _, v in report.condition_i]
    assert ratios == sorted(ratios, reverse=True)
    # b_n = 2^binom(n,2)/n!, so b_{n-1}/b_n = n/2^(n-1)
    assert dict(report.condition_i)[10] == F(10, 2**9)


def test_factorial_sequence():
    assert gargantuan_check(factorials, (5, 20), normalize=False).verdict is Verdict.CONSISTENT


@pytest.mark.parametrize("values", [[1] * 30, [2**n for n in range(30)]], ids=["constant", "geometric"])
def test_non_gargantuan(values):
    report = gargantuan_check(values, (5, 24), r_max=3, normalize=False)
    assert report.verdict is Verdict.INCONSISTENT
    assert report.reasons


def test_normalized_lattice():
    seq = builtin("comb_map").counting_sequence(6)
    assert normalized_lattice(seq) == [1, 1, 3, 15]


def test_errors():
    with pytest.raises(DiagnosticError):
        gargantuan_check(factorials, (5, 7), normalize=False)
    with pytest.raises(InsufficientDataError):
        gargantuan_check(factorials, (5, 40), normalize=False)
    with pytest.raises(DiagnosticError):
        gargantuan_check([1, 1, 0, 1, 1, 1, 1, 1, 1], (3, 8), r_max=1, normalize=False)


def test_report_is_exact_and_reproducible():
    seq = builtin("origami").counting_sequence(24)
    a = gargantuan_check(seq, (5, 24))
    b = gargantuan_check(seq, (5, 24))
    assert a.dumps() == b.dumps()
    assert all(isinstance(v, F) for _, v in a.condition_i)
    doc = json.loads(a.dumps())
    assert doc["verdict"] == "CONSISTENT"
    assert all(isinstance(row["value"], str) for row in doc["condition_i"])
    assert sorted(doc["condition_ii"]) == ["1", "2", "3"]


def test_lemma_quantities_reported():
    report = gargantuan_check(factorials, (5, 20), normalize=False)
    # n * b_{n-1}/b_n = 1 for b = n!
    assert all(v == 1 for _, v in report.lemma_i_prime)
    assert len(report.lemma_ii_prime) == 16


class TestProduct:
    def test_factorial_squared(self):
        assert product_check(factorials, factorials, (5, 15)).verdict is Verdict.CONSISTENT

    def test_times_ones(self):
        alone = gargantuan_check(factorials, (5, 20), normalize=False)
        both = product_check(factorials, [1] * 30, (5, 20))
        assert both.verdict is alone.verdict
        assert both.condition_i == alone.condition_i

    def test_double_factorial_squared(self):
        odd = [dfact(2 * n - 1) for n in range(30)]
        assert product_check(odd, odd, (5, 24)).verdict is Verdict.CONSISTENT

    def test_lattice_mismatch(self):
        a = CountingSequence(tuple(factorials[:10]))
        b = CountingSequence((1, 0, 2, 0, 24, 0, 720, 0, 40320, 0), period=2)
        with pytest.raises(LatticeMismatchError):
            product_check(a, b, (2, 6))
