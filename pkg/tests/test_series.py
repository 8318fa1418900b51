from fractions import Fraction as F
from itertools import combinations
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from setseq.errors import InsufficientDataError, SeriesDomainError
from setseq.models import builtin
from setseq.oracle import UnionFind
from setseq.series import (
    CountingSequence,
    Egf,
    egf_from_counts,
    exp,
    extract_stride,
    log1p,
    mul,
    reciprocal,
    substitute_power,
)

small_int = st.integers(min_value=-6, max_value=6)
fractions = st.builds(F, small_int, st.integers(min_value=1, max_value=5))


def series(min_order=0, max_order=12, constant=None):
    def build(cs):
        cs = list(cs)
        if constant is not None:
            cs[0] = F(constant)
        return Egf(tuple(cs))

    return st.lists(fractions, min_size=min_order + 1, max_size=max_order + 1).map(build)


graphs = CountingSequence(tuple(2 ** (n * (n - 1) // 2) for n in range(13)), label="graphs")


class TestEgfFromCounts:
    def test_graphs(self):
        assert egf_from_counts(graphs, 3).coeffs == (1, 1, 1, F(4, 3))

    def test_unit(self):
        seq = CountingSequence((1, 0, 0, 0, 0))
        assert egf_from_counts(seq, 4) == Egf.one(4)

    def test_origami(self):
        seq = CountingSequence(tuple(factorial(n) ** 2 for n in range(3)))
        assert egf_from_counts(seq, 2).coeffs == (1, 1, 2)

    def test_too_short_names_length(self):
        with pytest.raises(InsufficientDataError) as info:
            egf_from_counts(CountingSequence((1, 1, 2)), 5)
        assert info.value.required == 6
        assert "6" in str(info.value)

    def test_counting_sequence_rejects_off_lattice_terms(self):
        with pytest.raises(ValueError):
            CountingSequence((1, 3, 2), period=2)


class TestMul:
    def test_binomial(self):
        assert mul(Egf((F(1), F(1))), Egf((F(1), F(1)))).coeffs == (1, 2)

    def test_identity(self):
        f = Egf((F(3), F(-1, 2), F(7)))
        assert mul(f, Egf.one(2)) == f

    def test_exp_squared(self):
        z = Egf((F(0), F(1)) + (F(0),) * 7)
        assert exp(z) * exp(z) == exp(2 * z)

    def test_mixed_order_truncates(self):
        f = Egf((F(1), F(2), F(3)))
        g = Egf((F(1), F(1)))
        assert (f * g).order == 1
        assert (f + g).order == 1


class TestLogExp:
    def test_zero(self):
        assert log1p(Egf.zero(5)) == Egf.zero(5)
        assert exp(Egf.zero(5)) == Egf.one(5)

    def test_connected_graphs(self):
        a = egf_from_counts(graphs, 4)
        c = log1p(a - 1)
        assert [c[n] * factorial(n) for n in range(1, 5)] == [1, 1, 4, 38]

    def test_round_trip_graphs(self):
        a = egf_from_counts(graphs, 8)
        assert exp(log1p(a - 1)) == a

    def test_domain(self):
        with pytest.raises(SeriesDomainError):
            log1p(Egf.one(3))
        with pytest.raises(SeriesDomainError):
            exp(Egf.one(3))

    def test_unknown_method(self):
        with pytest.raises(ValueError):
            exp(Egf.zero(3), method="taylor")

    def test_forests_from_trees(self):
        # labeled trees n^(n-2), forests by brute force over edge subsets
        order = 4
        trees = Egf(tuple([F(0)] + [F(n) ** (n - 2) / factorial(n) for n in range(1, order + 1)]))
        forests = exp(trees)
        for n in range(order + 1):
            assert forests[n] * factorial(n) == _count_forests(n)

    def test_large_order_integrality(self):
        big = CountingSequence(tuple(2 ** (n * (n - 1) // 2) for n in range(51)))
        c = log1p(egf_from_counts(big, 50) - 1)
        assert all((c[n] * factorial(n)).denominator == 1 for n in range(51))

    @settings(max_examples=40, deadline=None)
    @given(series(constant=0))
    def test_round_trips(self, u):
        assert log1p(exp(u) - 1) == u
        assert exp(log1p(u)) - 1 == u

    @settings(max_examples=25, deadline=None)
    @given(series(min_order=12, max_order=16, constant=0))
    def test_newton_matches_recurrence(self, u):
        assert exp(u, method="newton") == exp(u, method="recurrence")
        assert log1p(u, method="newton") == log1p(u, method="recurrence")


def _count_forests(n):
    pairs = list(combinations(range(n), 2))
    count = 0
    for mask in range(1 << len(pairs)):
        uf = UnionFind(n)
        acyclic = True
        for i, (a, b) in enumerate(pairs):
            if mask >> i & 1:
                if uf.find(a) == uf.find(b):
                    acyclic = False
                    break
                uf.union(a, b)
        count += acyclic
    return count


class TestReciprocal:
    def test_unit(self):
        assert reciprocal(Egf.one(6)) == Egf.one(6)

    def test_indecomposable_permutations(self):
        # ordinary series sum n! z^n stored as an Egf of the same coefficients
        a = Egf(tuple(F(factorial(n)) for n in range(7)))
        d = 1 - reciprocal(a)
        assert list(d.coeffs[1:]) == [1, 1, 3, 13, 71, 461]

    def test_domain(self):
        with pytest.raises(SeriesDomainError):
            reciprocal(Egf.zero(3))

    @settings(max_examples=60, deadline=None)
    @given(series(min_order=10, max_order=10), st.integers(min_value=1, max_value=9))
    def test_inverse(self, f, c0):
        f = Egf((F(c0),) + f.coeffs[1:])
        assert mul(f, reciprocal(f)) == Egf.one(10)


class TestStride:
    def test_identity(self):
        f = Egf((F(1), F(2), F(3)))
        assert substitute_power(f, 1) == f

    @given(series(max_order=6), st.integers(min_value=1, max_value=4))
    def test_round_trip(self, f, p):
        assert extract_stride(substitute_power(f, p), p) == f

    def test_maps(self):
        # lattice counts (2m)!(2m-1)!! re-expanded on even sizes
        def dfact(k):
            return 1 if k <= 0 else k * dfact(k - 2)

        lattice = Egf(tuple(F(dfact(2 * m - 1)) for m in range(5)))
        full = substitute_power(lattice, 2)
        maps = builtin("comb_map")
        for n in range(9):
            assert full[n] * factorial(n) == maps.count_fn(n)


class TestTruncation:
    @settings(max_examples=40, deadline=None)
    @given(series(min_order=8, max_order=12, constant=0), st.integers(min_value=0, max_value=8))
    def test_consistency(self, u, m):
        assert log1p(u).truncate(m) == log1p(u.truncate(m))
        assert exp(u).truncate(m) == exp(u.truncate(m))
        assert reciprocal(1 + u).truncate(m) == reciprocal((1 + u).truncate(m))

    def test_coefficients_stay_exact(self):
        u = Egf((F(0), F(1, 3), F(2, 7)))
        assert all(isinstance(c, F) for c in exp(u).coeffs)
