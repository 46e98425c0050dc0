import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import class_number_forms_naive, class_number_real_cycles, fundamental_unit_bruteforce, kronecker_naive
from zetalab.errors import ContractViolation, DomainError
from zetalab.nfdata import (
    NumberFieldRecord,
    build_database,
    build_quadratic,
    character_table,
    class_number_imaginary,
    fundamental_discriminants,
    fundamental_unit,
    is_fundamental,
    kronecker_symbol,
    l_one_digamma,
    l_one_log_sine,
    load_csv,
    resolve_field,
    write_csv,
)

HEADER = "label,degree,r1,r2,disc,h,reg,w\n"


def _criterion(D):
    def sqfree(m):
        m = abs(m)
        return m > 0 and all(m % (p * p) for p in range(2, math.isqrt(m) + 1))

    if D in (0, 1):
        return False
    if D % 4 == 1:
        return sqfree(D)
    return D % 4 == 0 and (D // 4) % 4 in (2, 3) and sqfree(D // 4)


class TestDiscriminants:
    def test_negative_examples(self):
        assert fundamental_discriminants(-10, -1) == [-8, -7, -4, -3]

    def test_positive_examples(self):
        assert fundamental_discriminants(2, 13) == [5, 8, 12, 13]

    def test_one_excluded(self):
        assert fundamental_discriminants(1, 1) == []

    def test_closed_under_criterion(self):
        got = set(fundamental_discriminants(-2000, 2000))
        assert got == {D for D in range(-2000, 2001) if _criterion(D)}

    def test_count_small_negative_range(self):
        # direct scan of [-50, -3]
        assert len(fundamental_discriminants(-50, -3)) == 16


class TestKronecker:
    def test_examples(self):
        assert kronecker_symbol(-4, 3) == -1
        assert kronecker_symbol(5, 2) == -1
        assert kronecker_symbol(-4, 2) == 0

    def test_non_fundamental(self):
        with pytest.raises(ContractViolation):
            kronecker_symbol(12 * 4, 5)

    @given(st.sampled_from(fundamental_discriminants(-300, 300)), st.integers(1, 2000))
    def test_matches_naive(self, D, n):
        assert kronecker_symbol(D, n) == kronecker_naive(D, n)

    @given(st.sampled_from(fundamental_discriminants(-300, 300)), st.integers(1, 60), st.integers(1, 60))
    def test_completely_multiplicative(self, D, a, b):
        assert kronecker_symbol(D, a * b) == kronecker_symbol(D, a) * kronecker_symbol(D, b)

    @pytest.mark.parametrize("D", [-3, -4, -23, 5, 8, 229, -9999 + 4, 1996])
    def test_table(self, D):
        if not is_fundamental(D):
            return
        chi = character_table(D)
        assert list(chi) == [kronecker_naive(D, a) if a else 0 for a in range(abs(D))]


class TestBuildQuadratic:
    def test_minus_three(self):
        F = build_quadratic(-3)
        assert (F.r1, F.r2, F.w, F.h, F.reg) == (0, 1, 6, 1, 1.0)

    def test_minus_four(self):
        assert build_quadratic(-4).w == 4

    def test_minus_twenty_three(self):
        assert build_quadratic(-23).h == 3

    def test_five(self):
        F = build_quadratic(5)
        assert (F.r1, F.r2, F.w, F.h) == (2, 0, 2, 1)
        assert F.reg == pytest.approx(math.log((1 + math.sqrt(5)) / 2), abs=1e-12)
        assert F.reg == pytest.approx(0.481211825, abs=1e-9)

    def test_non_fundamental(self):
        with pytest.raises(ContractViolation):
            build_quadratic(9)

    def test_class_numbers_vs_forms_oracle(self):
        for D in fundamental_discriminants(-5000, -3):
            assert class_number_imaginary(D) == class_number_forms_naive(D), D

    def test_class_numbers_frozen(self, frozen):
        for D, h in frozen["class_numbers_negative"].items():
            assert build_quadratic(int(D)).h == h

    def test_units_have_norm_one(self):
        for D in fundamental_discriminants(2, 500):
            u = fundamental_unit(D)
            assert abs(u.X * u.X - D * u.Y * u.Y) == 4
            assert abs(u.norm) == 1

    def test_units_vs_bruteforce(self, frozen):
        for D, (X, Y) in frozen["units"].items():
            u = fundamental_unit(int(D))
            assert (u.X, u.Y) == (X, Y)
        assert fundamental_unit_bruteforce(21) == (5, 1)

    def test_real_class_numbers_vs_cycles_oracle(self):
        for D in fundamental_discriminants(2, 3000):
            assert build_quadratic(D).h == class_number_real_cycles(D), D

    def test_l_one_routes_agree(self):
        for D in fundamental_discriminants(2, 3000)[::7]:
            assert l_one_log_sine(D) == pytest.approx(l_one_digamma(D), abs=1e-9)

    def test_records_validate(self):
        db = build_database(-3000, 3000, include_rational=True)
        assert all(r.problems() == [] for r in db)


class TestRecords:
    def test_signature_mismatch(self):
        rec = NumberFieldRecord("bad", 3, 1, 0, 1, 1, 1.0, 2)
        assert "signature mismatch" in rec.problems()

    def test_sign_mismatch(self):
        rec = NumberFieldRecord("bad", 2, 0, 1, 5, 1, 1.0, 2)
        assert "discriminant sign mismatch" in rec.problems()

    def test_torsion_bound(self):
        rec = NumberFieldRecord("bad", 1, 1, 0, 1, 1, 1.0, 6)
        assert "torsion exceeds 4 d^2" in rec.problems()

    def test_resolve(self):
        assert resolve_field("Q").label == "Q"
        assert resolve_field("quad:-4").w == 4
        with pytest.raises(DomainError):
            resolve_field("quad:9")
        with pytest.raises(DomainError):
            resolve_field("nowhere")


class TestCsv:
    def test_rational_row(self, tmp_path):
        p = tmp_path / "t.csv"
        p.write_text(HEADER + "Q,1,1,0,1,1,1.0,2\n")
        db = load_csv(p)
        assert len(db) == 1 and db.records[0].label == "Q" and db.provenance == "ingested"

    def test_signature_row_rejected(self, tmp_path):
        p = tmp_path / "t.csv"
        p.write_text(HEADER + "bad,3,1,0,1,1,1.0,2\n")
        db = load_csv(p)
        assert len(db) == 0
        assert db.rejected[0][0] == 2 and "signature mismatch" in db.rejected[0][1]

    def test_gaussian_row(self, tmp_path):
        p = tmp_path / "t.csv"
        p.write_text(HEADER + "Qi,2,0,1,-4,1,1.0,4\n")
        assert load_csv(p).records[0].w == 4

    def test_missing_column(self, tmp_path):
        p = tmp_path / "t.csv"
        p.write_text("label,degree\nQ,1\n")
        with pytest.raises(ContractViolation, match="missing column"):
            load_csv(p)

    def test_non_integer_and_duplicate(self, tmp_path):
        p = tmp_path / "t.csv"
        p.write_text(HEADER + "Q,1,1,0,1,1,1.0,2\nQ,1,1,0,1,1,1.0,2\nx,one,1,0,1,1,1.0,2\n")
        db = load_csv(p)
        assert len(db) == 1
        reasons = [r for _, r in db.rejected]
        assert "duplicate" in reasons[0] and "not an integer" in reasons[1]

    def test_round_trip(self, tmp_path):
        db = build_database(-200, 200)
        p = tmp_path / "db.csv"
        write_csv(db, p)
        back = load_csv(p)
        assert [r.label for r in back] == [r.label for r in db]
        for a, b in zip(db, back):
            assert (a.h, a.w, a.disc) == (b.h, b.w, b.disc)
            assert b.reg == pytest.approx(a.reg, rel=1e-14)

    def test_ordering_and_parallel(self):
        a = build_database(-500, 500)
        b = build_database(-500, 500, jobs=2)
        assert a.records == b.records
        keys = [(r.abs_disc, r.disc > 0) for r in a]
        assert keys == sorted(keys)
        assert np.all(np.diff([r.abs_disc for r in a]) >= 0)
