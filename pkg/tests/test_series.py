import random
from fractions import Fraction

import pytest

from conngerm.series import TruncationExhausted, TruncLaurent

rng = random.Random(404)


def rand_series(trunc=8, vmin=-3):
    coeffs = {
        k: Fraction(rng.randint(-5, 5), rng.randint(1, 4))
        for k in range(vmin, trunc)
        if rng.random() < 0.6
    }
    return TruncLaurent("z", coeffs, trunc)


def test_construction_normalizes():
    s = TruncLaurent("z", {0: Fraction(0), 2: 3, 9: 1}, trunc=5)
    assert s.coeffs == {2: Fraction(3)}
    assert s.trunc == 5


def test_valuation():
    assert TruncLaurent("z", {-2: 1, 1: 4}, 6).valuation() == -2
    assert TruncLaurent("z", {}, 6).valuation() == 6
    assert TruncLaurent.zero("z").valuation() is None


def test_coeff_access_and_exhaustion():
    s = TruncLaurent("z", {-1: 2}, trunc=3)
    assert s.coeff(-1) == 2
    assert s.coeff(2) == 0
    with pytest.raises(TruncationExhausted):
        s.coeff(3)
    exact = TruncLaurent.const("z", 7)
    assert exact.coeff(10**6) == 0


def test_geometric_series_oracle():
    # (1 - z) * (1 + z + z^2 + ...) == 1 through the window
    n = 20
    geo = TruncLaurent("z", {k: 1 for k in range(n)}, n)
    one_minus_z = TruncLaurent("z", {0: 1, 1: -1}, None)
    prod = one_minus_z * geo
    assert prod.trunc == n
    assert prod.coeffs == {0: Fraction(1)}


def test_mul_truncation_bookkeeping():
    a = TruncLaurent("z", {-2: 1}, trunc=4)   # known through z^3
    b = TruncLaurent("z", {3: 1}, trunc=9)    # known through z^8
    p = a * b
    # a's window shifted by val(b)=3 gives 7; b's shifted by val(a)=-2 gives 7
    assert p.trunc == 7
    assert p.coeff(1) == 1


def test_mul_exact_zero_annihilates():
    z0 = TruncLaurent.zero("z")
    s = rand_series()
    assert (z0 * s).trunc is None
    assert not (z0 * s).coeffs


def test_shown_zero_poisons_reliability():
    shown = TruncLaurent("z", {}, trunc=2)  # zero as far as we can see
    s = TruncLaurent("z", {0: 1}, trunc=50)
    assert (shown * s).trunc == 2


def test_add_window_is_min():
    a = rand_series(trunc=5)
    b = rand_series(trunc=9)
    assert (a + b).trunc == 5
    exact = TruncLaurent.const("z", 1)
    assert (a + exact).trunc == 5
    assert (exact + exact).trunc is None


def test_arithmetic_matches_termwise_oracle():
    for _ in range(300):
        a, b = rand_series(), rand_series()
        s, p = a + b, a * b
        for k in range(-6, s.trunc):
            assert s.coeff(k) == a.coeff(k) + b.coeff(k)
        for k in range(-6, p.trunc):
            conv = sum(
                (a.coeffs.get(i, Fraction(0)) * b.coeffs.get(k - i, Fraction(0))
                 for i in range(-6, k + 7)),
                Fraction(0),
            )
            assert p.coeff(k) == conv


def test_diff_costs_one_order():
    s = TruncLaurent("z", {-2: 1, 3: Fraction(1, 2)}, trunc=7)
    d = s.diff()
    assert d.trunc == 6
    assert d.coeff(-3) == -2
    assert d.coeff(2) == Fraction(3, 2)
    exact = TruncLaurent("z", {-1: 5}, None)
    assert exact.diff().trunc is None
    assert exact.diff().coeff(-2) == -5


def test_diff_product_rule():
    for _ in range(100):
        a, b = rand_series(), rand_series()
        lhs = (a * b).diff()
        rhs = a.diff() * b + a * b.diff()
        bound = min(lhs.trunc, rhs.trunc)
        assert lhs.agrees_through(rhs, bound - 1)


def test_pow_and_scale():
    z = TruncLaurent.monomial("z", 1, trunc=10)
    s = (TruncLaurent.const("z", 1) + z) ** 3
    assert s.coeff(0) == 1 and s.coeff(1) == 3 and s.coeff(2) == 3 and s.coeff(3) == 1
    assert s.scale(Fraction(1, 3)).coeff(1) == 1


def test_truncate_and_shift():
    s = TruncLaurent("z", {-1: 1, 4: 2}, trunc=8)
    t = s.truncate(3)
    assert t.trunc == 3 and 4 not in t.coeffs
    sh = s.shift(2)
    assert sh.coeff(1) == 1 and sh.trunc == 10
    # widening is a clamp, not a grant: the window can only shrink
    assert s.truncate(9).trunc == 8
    assert TruncLaurent.const("z", 1).truncate(4).trunc == 4


def test_agrees_through_raises_beyond_window():
    a = TruncLaurent("z", {0: 1}, trunc=3)
    b = TruncLaurent("z", {0: 1}, trunc=5)
    # comparison is strict-below, so bound == trunc is the last legal call
    assert a.agrees_through(b, 3)
    with pytest.raises(TruncationExhausted):
        a.agrees_through(b, 4)


def test_truncation_stability_under_arithmetic():
    """Truncating inputs first never changes coefficients inside the
    reliable window of the full computation."""
    for _ in range(200):
        a, b = rand_series(trunc=10), rand_series(trunc=10)
        full = a * b + a
        cut = a.truncate(7) * b.truncate(7) + a.truncate(7)
        assert full.agrees_through(cut, cut.trunc - 1)


def test_str_shows_window():
    s = TruncLaurent("z", {-2: 1, 1: Fraction(-1, 3)}, trunc=4)
    assert str(s) == "z^-2 - 1/3*z + O(z^4)"
    assert str(TruncLaurent.const("z", 0)) == "0"
