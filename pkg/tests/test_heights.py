import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zetalab.errors import ContractViolation, DomainError
from zetalab.heights import (
    REALS,
    Cmp,
    HeightSample,
    bogomolov_number_empirical,
    check_order_axioms,
    compare_product,
    dobrowolski_combiner,
    lehmer_analysis,
    lehmer_transform,
    northcott_growth,
    pi_combiner,
    product_order,
    sublevel_set,
    successive_infima_reals,
)

R2 = [REALS, REALS]


class TestProductOrder:
    def test_less(self):
        assert compare_product((1, 2), (2, 3), R2) is Cmp.LESS

    def test_incomparable(self):
        assert compare_product((1, 2), (2, 1), R2) is Cmp.INCOMPARABLE

    def test_equal(self):
        assert compare_product((3, 3), (3, 3), R2) is Cmp.EQUAL

    def test_greater_with_tie(self):
        assert compare_product((3, 4), (3, 3), R2) is Cmp.GREATER

    def test_arity_mismatch(self):
        with pytest.raises(ContractViolation):
            compare_product((1, 2, 3), (1, 2), R2)

    @settings(max_examples=1000, deadline=None)
    @given(
        st.lists(st.integers(-3, 3), min_size=3, max_size=3),
        st.lists(st.integers(-3, 3), min_size=3, max_size=3),
    )
    def test_agrees_with_coordinate_scan(self, a, b):
        le = all(x <= y for x, y in zip(a, b))
        ge = all(x >= y for x, y in zip(a, b))
        expected = Cmp.EQUAL if le and ge else Cmp.LESS if le else Cmp.GREATER if ge else Cmp.INCOMPARABLE
        assert compare_product(a, b, [REALS] * 3) is expected

    def test_axioms_hold_on_grid(self):
        order = product_order(R2)
        vals = [(i, j) for i in range(3) for j in range(3)]
        assert check_order_axioms(order, vals) == []


class TestSublevel:
    sample = HeightSample.from_mapping({"a": 1, "b": 2, "c": 3})

    def test_basic(self):
        assert sublevel_set(self.sample, 2) == ["a", "b"]

    def test_below_all(self):
        assert sublevel_set(self.sample, 0) == []

    def test_product_sample(self):
        s = HeightSample.from_mapping({"a": (1, 1), "b": (2, 0)}, product_order(R2))
        assert sublevel_set(s, (1, 1)) == ["a"]

    def test_duplicate_ids_rejected(self):
        with pytest.raises(ContractViolation):
            HeightSample((("a", 1), ("a", 2)))

    def test_mixed_arity_rejected(self):
        with pytest.raises(ContractViolation):
            HeightSample.from_mapping({"a": (1, 1), "b": (1,)}, product_order(R2))

    @given(st.dictionaries(st.integers(0, 50), st.floats(-10, 10), max_size=30), st.floats(-10, 10), st.floats(0, 5))
    def test_monotone(self, mapping, g, dg):
        s = HeightSample.from_mapping(mapping)
        assert set(sublevel_set(s, g)) <= set(sublevel_set(s, g + dg))


class TestNorthcottGrowth:
    def test_counts(self):
        s = HeightSample.from_mapping({"a": 1, "b": 2, "c": 3})
        assert northcott_growth(s, [1, 2, 3]) == [(1, 1), (2, 2), (3, 3)]

    def test_empty(self):
        assert northcott_growth(HeightSample(()), [1, 2]) == [(1, 0), (2, 0)]

    def test_non_ascending(self):
        with pytest.raises(ContractViolation):
            northcott_growth(HeightSample(()), [2, 1])

    def test_weil_rationals(self):
        # h(p/q) = log max(|p|, |q|) for reduced p/q
        vals = {}
        for p in range(-3, 4):
            for q in range(1, 4):
                if p and math.gcd(p, q) == 1:
                    vals[Fraction(p, q)] = math.log(max(abs(p), q))
        s = HeightSample.from_mapping(vals)
        grid = [math.log(1), math.log(2), math.log(3)]
        brute = [sum(1 for v in vals.values() if v <= g + 1e-15) for g in grid]
        assert [c for _, c in northcott_growth(s, grid)] == brute == [2, 6, 14]


class TestSuccessiveInfima:
    def test_two_intervals(self):
        grid = np.concatenate([np.arange(0.0, 1.0, 0.01), np.arange(2.0, 3.0, 0.01)])
        rep = successive_infima_reals(grid, tau=0.05, k_max=2)
        assert rep.kind == "infima"
        assert len(rep.levels) == 2
        assert rep.minima[0] == pytest.approx(0.0, abs=0.01)
        assert rep.minima[1] == pytest.approx(2.0, abs=0.01)

    def test_singleton(self):
        rep = successive_infima_reals([5], 0)
        assert rep.kind == "minima"
        assert rep.levels == (frozenset([5.0]),)
        assert rep.stabilized

    def test_reciprocals_plus_two(self):
        # gaps: 1/2 -> 1 is 0.5 > tau, 1 -> 2 is 1 > tau, so three components
        vals = [1 / n for n in range(1, 101)] + [2]
        rep = successive_infima_reals(vals, tau=0.2, k_max=5)
        assert rep.minima == pytest.approx([0.01, 1.0, 2.0])
        assert max(rep.components[0]) == pytest.approx(0.5)

    def test_k_max_cut(self):
        rep = successive_infima_reals([1, 2, 3], 0, k_max=2)
        assert rep.stop_reason == "k_max" and not rep.stabilized

    def test_empty(self):
        with pytest.raises(DomainError):
            successive_infima_reals([], 0)

    def test_negative_tau(self):
        with pytest.raises(DomainError):
            successive_infima_reals([1.0], -1)

    @given(st.lists(st.floats(-100, 100), min_size=1, max_size=60), st.floats(0, 3))
    def test_chain_and_disjointness(self, vals, tau):
        rep = successive_infima_reals(vals, tau, k_max=100)
        mins = rep.minima
        assert mins == sorted(mins)
        assert len(set(mins)) == len(mins)
        for a, b in zip(rep.components, rep.components[1:]):
            assert max(a) < min(b)
            assert min(b) - max(a) > tau or tau == 0


class TestBogomolov:
    def test_constant(self):
        rep = bogomolov_number_empirical([0, 0, 0])
        assert rep.count == 1 and rep.attained and rep.isolated and rep.bogomolov

    def test_two_clusters(self):
        vals = [0.0, 0.01, 0.02, 2.0, 2.01]
        assert bogomolov_number_empirical(vals, tau=0.05).count == 2

    def test_log2_over_n(self):
        vals = [math.log(2) / n for n in range(1, 51)]
        rep = bogomolov_number_empirical(vals, 0, k_max=100, isolation=1e-3)
        assert rep.levels[0] == frozenset([math.log(2) / 50])
        # log2/49 - log2/50 ~ 2.8e-4 is below the threshold
        assert not rep.isolated and rep.weak_bogomolov and not rep.bogomolov
        assert bogomolov_number_empirical(vals, 0, 100, isolation=1e-6).isolated


class TestLehmer:
    ids = list(range(1, 51))
    h = HeightSample(tuple((n, math.log(2) / n) for n in ids))
    deg = HeightSample(tuple((n, n) for n in ids))

    def test_pi_constant(self):
        out = lehmer_transform([self.h, self.deg], pi_combiner)
        assert all(v == pytest.approx(math.log(2), rel=1e-15) for _, v in out.elements)
        rep = lehmer_analysis([self.h, self.deg], pi_combiner, tau=1e-12)
        assert rep.count == 1

    def test_projection_identity(self):
        out = lehmer_transform([self.h, self.deg], lambda x, d: x)
        assert out == self.h

    def test_dobrowolski(self):
        out = lehmer_transform([self.h, self.deg], dobrowolski_combiner)
        assert all(v >= math.log(2) for _, v in out.elements)

    def test_id_mismatch(self):
        other = HeightSample(((0, 1.0),))
        with pytest.raises(ContractViolation):
            lehmer_transform([self.h, other], pi_combiner)
