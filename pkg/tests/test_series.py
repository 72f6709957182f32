import random
from fractions import Fraction

import pytest

from stratavol.series import (
    TruncatedSeries,
    UPoly,
    lagrange_invert,
    series_exp,
    series_inverse,
    series_log,
    series_pow_u,
    sine_quotient,
)


def random_series(rng, order, constant, u_free=True):
    coeffs = [UPoly.const(constant)]
    for _ in range(order):
        if u_free:
            coeffs.append(UPoly.const(Fraction(rng.randint(-9, 9), rng.randint(1, 9))))
        else:
            coeffs.append(
                UPoly([Fraction(rng.randint(-5, 5), rng.randint(1, 5)) for _ in range(3)])
            )
    return TruncatedSeries(order, coeffs)


class TestUPoly:
    def test_degree_sentinel(self):
        assert UPoly.zero().degree == float("-inf")
        assert UPoly((1, 2)).degree == 1

    def test_trailing_zeros_trimmed(self):
        assert UPoly((1, 0, 0)) == UPoly((1,))

    def test_arithmetic(self):
        u = UPoly.u()
        assert (u + u) * u == UPoly((0, 0, 2))
        assert u - u == UPoly.zero()


class TestSeriesBasics:
    def test_mixed_order_truncates_to_min(self):
        a = TruncatedSeries.one(5)
        b = TruncatedSeries.t(3)
        assert (a + b).order == 3
        assert (a * b).order == 3

    def test_coefficient_past_order_raises(self):
        with pytest.raises(IndexError):
            TruncatedSeries.one(2).coefficient(3)


class TestExpLog:
    def test_exp_of_zero(self):
        assert series_exp(TruncatedSeries.zero(4)) == TruncatedSeries.one(4)

    def test_exp_of_t(self):
        e = series_exp(TruncatedSeries.t(3))
        assert [c.constant() for c in e.coeffs] == [1, 1, Fraction(1, 2), Fraction(1, 6)]

    def test_log_of_one_plus_t(self):
        l = series_log(TruncatedSeries.one(3) + TruncatedSeries.t(3))
        assert [c.constant() for c in l.coeffs] == [0, 1, Fraction(-1, 2), Fraction(1, 3)]

    def test_constant_term_violations(self):
        with pytest.raises(ValueError):
            series_exp(TruncatedSeries.one(3))
        with pytest.raises(ValueError):
            series_log(TruncatedSeries.t(3))

    def test_round_trips_random_order_12(self):
        rng = random.Random(20240229)
        one = TruncatedSeries.one(12)
        for _ in range(5):
            f = random_series(rng, 12, constant=0)
            assert series_log(series_exp(f)) == f
            assert series_exp(series_log(one + f)) == one + f


class TestPowU:
    def test_power_of_one(self):
        assert series_pow_u(TruncatedSeries.one(4)) == TruncatedSeries.one(4)

    def test_binomial_first_term(self):
        f = TruncatedSeries.from_dict(4, {0: 1, 2: 1})
        assert series_pow_u(f).coefficient(2) == UPoly.u()

    def test_sine_quotient_t4(self):
        powu = series_pow_u(sine_quotient(6))
        assert powu.coefficient(4) == UPoly((0, Fraction(1, 2880), Fraction(1, 1152)))

    def test_rejects_u_dependent_coefficients(self):
        f = TruncatedSeries.from_dict(3, {0: UPoly.const(1), 2: UPoly.u()})
        with pytest.raises(ValueError):
            series_pow_u(f)


class TestSineQuotient:
    def test_low_coefficients(self):
        sq = sine_quotient(6)
        assert sq.coefficient(0) == UPoly.const(1)
        assert sq.coefficient(1).is_zero()
        assert sq.coefficient(2) == UPoly.const(Fraction(1, 24))

    def test_odd_coefficients_vanish(self):
        sq = sine_quotient(13)
        for k in range(1, 14, 2):
            assert sq.coefficient(k).is_zero()

    def test_inverse_contract(self):
        sq = sine_quotient(8)
        assert sq * series_inverse(sq) == TruncatedSeries.one(8)


class TestLagrangeInvert:
    def test_identity_fixed_point(self):
        t = TruncatedSeries.t(5)
        assert lagrange_invert(t) == t

    def test_catalan_like_example(self):
        q = TruncatedSeries.from_dict(4, {1: 1, 2: 1})
        r = lagrange_invert(q)
        assert [c.constant() for c in r.coeffs] == [0, 1, -1, 2, -5]

    def test_defining_contract_random(self):
        rng = random.Random(7)
        for _ in range(4):
            coeffs = [UPoly.zero(), UPoly.const(1)] + [
                UPoly.const(Fraction(rng.randint(-6, 6), rng.randint(1, 6)))
                for _ in range(11)
            ]
            q = TruncatedSeries(12, coeffs)
            r = lagrange_invert(q)
            assert q.compose(r) == TruncatedSeries.t(12)
            assert lagrange_invert(r) == q  # involution

    def test_preconditions(self):
        with pytest.raises(ValueError):
            lagrange_invert(TruncatedSeries.one(4))
        with pytest.raises(ValueError):
            lagrange_invert(TruncatedSeries.from_dict(4, {1: 2}))
