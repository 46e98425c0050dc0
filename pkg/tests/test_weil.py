import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import cyclotomic_sympy, heights_bruteforce
from zetalab.errors import ContractViolation, DomainError
from zetalab.nfdata import build_quadratic, fundamental_discriminants
from zetalab.polynomial import is_reciprocal
from zetalab.weil import (
    AlgebraicNumber,
    akhtari_vaaler_check,
    enumerate_heights,
    is_irreducible,
    smyth_theta0,
    smyth_violations,
    weil_height,
)

A = AlgebraicNumber.parse


class TestHeight:
    def test_two(self):
        assert weil_height(A("x - 2")).value == pytest.approx(math.log(2), abs=1e-15)

    @pytest.mark.parametrize("d", [1, 2, 3, 5, 7, 12])
    def test_roots_of_unity(self, d):
        hv = weil_height(AlgebraicNumber(cyclotomic_sympy(d)))
        assert abs(hv.value) <= hv.err_bound + 1e-15

    def test_golden_ratio(self):
        assert weil_height(A("x^2 - x - 1")).value == pytest.approx(math.log((1 + math.sqrt(5)) / 2) / 2, abs=1e-14)
        assert weil_height(A("x^2 - x - 1")).value == pytest.approx(0.240606, abs=1e-6)

    def test_rational(self):
        # h(p/q) = log max(|p|, |q|)
        assert weil_height(A("3*x - 7")).value == pytest.approx(math.log(7), abs=1e-14)

    @settings(max_examples=80, deadline=None)
    @given(st.lists(st.integers(-9, 9), min_size=3, max_size=5))
    def test_inverse_invariance(self, c):
        if c[0] == 0 or c[-1] == 0:
            return
        try:
            a = AlgebraicNumber.from_poly(c)
        except ContractViolation:
            return
        inv = AlgebraicNumber.from_poly(list(reversed(c)))
        ha, hi = weil_height(a), weil_height(inv)
        assert abs(ha.value - hi.value) <= ha.err_bound + hi.err_bound + 1e-14

    @given(st.integers(-50, 50).filter(lambda a: a not in (0,)), st.integers(1, 8))
    def test_power_of_integer(self, a, n):
        h1 = weil_height(AlgebraicNumber.from_poly([-a, 1])).value
        hn = weil_height(AlgebraicNumber.from_poly([-(a**n), 1])).value
        assert hn == pytest.approx(n * h1, abs=1e-12)

    def test_galois_invariance(self):
        # both roots of x^2 - 2 share the normalized minimal polynomial
        assert A("x^2 - 2") == A("-x^2 + 2") == AlgebraicNumber.from_poly([-4, 0, 2])


class TestValidation:
    def test_reducible(self):
        with pytest.raises(ContractViolation, match="reducible"):
            A("x^2 - 1")
        with pytest.raises(ContractViolation):
            A("x^4 + 4")  # (x^2 + 2x + 2)(x^2 - 2x + 2)

    def test_not_primitive(self):
        with pytest.raises(ContractViolation):
            AlgebraicNumber((2, 4))

    def test_multivariate(self):
        with pytest.raises(DomainError):
            A("x + y")

    def test_irreducibility_vs_sympy(self):
        import itertools

        import sympy

        x = sympy.Symbol("x")
        for c in itertools.product(range(-2, 3), repeat=5):
            if c[-1] <= 0 or c[0] == 0:
                continue
            want = sympy.Poly(list(reversed(c)), x).is_irreducible
            assert is_irreducible(c) == want, c


class TestEnumeration:
    def test_kronecker_set(self):
        got = {a.min_poly for a in enumerate_heights(0, 2)}
        assert got == {(-1, 1), (1, 1), (1, 0, 1), (1, 1, 1), (1, -1, 1)}

    def test_log2_degree_one(self):
        got = {a.min_poly for a in enumerate_heights(math.log(2), 1)}
        assert got == {(-1, 1), (1, 1), (-2, 1), (2, 1), (-1, 2), (1, 2)}

    def test_log2_degree_two_vs_bruteforce(self, frozen):
        got = {a.min_poly for a in enumerate_heights(math.log(2), 2)}
        assert got == {tuple(t) for t in frozen["heights_log2_deg2"]}

    def test_bruteforce_small(self):
        got = {a.min_poly for a in enumerate_heights(0.2, 2)}
        assert got == heights_bruteforce(0.2, 2)

    def test_counts_nondecreasing(self):
        counts = [len(enumerate_heights(h, 2)) for h in (0, 0.1, 0.3, 0.5, math.log(2))]
        assert counts == sorted(counts)

    def test_cap(self):
        with pytest.raises(DomainError, match="cap"):
            enumerate_heights(2.0, 4, cap=10_000)

    def test_bad_args(self):
        with pytest.raises(DomainError):
            enumerate_heights(1.0, 0)
        with pytest.raises(DomainError):
            enumerate_heights(-1.0, 2)


class TestSmyth:
    def test_theta0(self, frozen):
        assert math.log(smyth_theta0()) == pytest.approx(frozen["theta0_log"], abs=1e-15)
        assert smyth_theta0() == pytest.approx(1.3247, abs=1e-4)

    def test_degree_three(self):
        nums = enumerate_heights(0.3, 3)
        assert smyth_violations(nums) == []
        assert any(not is_reciprocal(list(a.min_poly)) for a in nums)

    def test_boundary_polynomial(self):
        # x^3 - x - 1 attains the bound, so it is not a violation
        assert smyth_violations([A("x^3 - x - 1")]) == []


class TestSandwich:
    def test_sqrt5(self):
        rep = akhtari_vaaler_check(build_quadratic(5))
        assert rep.ok and rep.zeta0 == pytest.approx(0.240605912, abs=1e-9)
        assert abs(rep.lower - rep.zeta0) <= 1e-12 and abs(rep.upper - rep.zeta0) <= 1e-12

    def test_sqrt2(self):
        F = build_quadratic(8)
        assert F.reg == pytest.approx(math.log(1 + math.sqrt(2)), abs=1e-14)
        rep = akhtari_vaaler_check(F)
        assert rep.ok and rep.unit_height == pytest.approx(F.reg / 2, abs=1e-14)

    def test_sweep(self):
        discs = fundamental_discriminants(2, 500)[:50]
        assert len(discs) == 50
        assert all(akhtari_vaaler_check(build_quadratic(D)).ok for D in discs)

    def test_not_real_quadratic(self):
        with pytest.raises(DomainError):
            akhtari_vaaler_check(build_quadratic(-4))
