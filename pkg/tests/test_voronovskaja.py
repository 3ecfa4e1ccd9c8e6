import cmath
from fractions import Fraction as F

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from qdurrmeyer.durrmeyer import moment_table
from qdurrmeyer.errors import DomainError, HypothesisError
from qdurrmeyer.numeric import EXACT, FLOAT64, RationalComplex
from qdurrmeyer.poly import ComplexPoly
from qdurrmeyer.qcore import QContext, q_integer
from qdurrmeyer.series import DiskSpec, builtin_series
from qdurrmeyer.voronovskaja import (
    LqCoefficients,
    l1_eval,
    lq,
    lq_coefficient,
    lq_coefficient_deviation,
    lq_continuity_scan,
    lq_direct,
    lq_polynomial,
    lq_series,
)

ONE = F(1)


def c_oracle(m, q):
    # c_m straight from its sums of q-integers and 1/q-integers
    q = F(q)
    qi = lambda i, b: sum(b**j for j in range(i))  # noqa: E731
    return q * sum(qi(i, q) for i in range(1, m)) + sum(qi(i, 1 / q) for i in range(1, m))


@pytest.mark.parametrize("q", [F(3, 2), F(2), F(11, 10)])
def test_coefficients(q):
    c = QContext(q)
    assert lq_coefficient(2, c) == 1 + q
    vals = LqCoefficients(c, 10).values
    assert vals[0] == vals[1] == 0
    for m in range(2, 11):
        assert vals[m] == c_oracle(m, q) > 0
        assert lq_coefficient_deviation(m, c) == vals[m] - m * (m - 1)
        assert vals[m] <= m * (m - 1) * q ** (m - 1)


def test_coefficient_limit_at_one():
    c = QContext(1.0 + 1e-9, FLOAT64)
    for m in range(2, 12):
        assert lq_coefficient(m, c) == pytest.approx(m * (m - 1), rel=1e-7)
    assert LqCoefficients(QContext(F(1)), 5).values[3] == 6


def test_deviation_free_of_cancellation():
    q = 1 + 1e-12
    c = QContext(q, FLOAT64)
    with mpmath.workdps(50):
        qq = mpmath.mpf(q)
        exact = qq * sum(sum(qq**j for j in range(i)) for i in range(1, 6)) + sum(sum(qq**-j for j in range(i)) for i in range(1, 6)) - 30
    assert lq_coefficient_deviation(6, c) == pytest.approx(float(exact), rel=1e-9)


def test_lq_series_examples():
    for q in (F(3, 2), F(2)):
        c = QContext(q)
        z = RationalComplex(F(1, 3), F(1, 4))
        assert lq_series(builtin_series("poly:2,-7", mode=EXACT), c, z) == 0
        assert lq_series(builtin_series("monomial:2", mode=EXACT), c, z) == (1 + q) * z * (1 - z)
    c3 = QContext(1 + 1e-10, FLOAT64)
    assert lq_coefficient(3, c3) == pytest.approx(6, rel=1e-8)


def test_lq_series_rejects_bad_inputs():
    with pytest.raises(DomainError):
        lq_series(builtin_series("exp"), QContext(F(1, 2)), F(1, 3))
    with pytest.raises(DomainError):
        lq_series(builtin_series("geometric:2"), QContext(1.5, FLOAT64), 2.5)


def test_lq_direct_examples():
    c = QContext(F(3, 2))
    z = RationalComplex(F(-1, 2), F(1, 3))
    e2 = builtin_series("monomial:2", mode=EXACT)
    assert lq_direct(e2, c, z) == (1 + c.q) * z * (1 - z)
    assert lq_direct(builtin_series("poly:5", mode=EXACT), c, z) == 0
    cf = QContext(1.2, FLOAT64)
    f = builtin_series("exp", 60)
    assert lq_direct(f, cf, 0.5) == pytest.approx(lq_series(f, cf, 0.5), rel=1e-12)


def test_lq_direct_hypotheses():
    g = builtin_series("geometric:2")
    with pytest.raises(HypothesisError):
        lq_direct(g, QContext(1.5, FLOAT64), 1.5)
    with pytest.raises(DomainError):
        lq_direct(g, QContext(1.0, FLOAT64), 0.5)
    assert lq_direct(g, QContext(1.5, FLOAT64), 0) == 0


def test_l1_examples():
    z = RationalComplex(F(2, 3), F(-1, 3))
    e2 = builtin_series("monomial:2", mode=EXACT)
    assert l1_eval(e2, z) == 2 * z * (1 - z)
    assert l1_eval(builtin_series("poly:1,1", mode=EXACT), z) == 0
    assert l1_eval(builtin_series("monomial:3", mode=EXACT), RationalComplex(F(1, 2))) == F(3, 4)
    f = builtin_series("exp", 30)
    assert lq(f, QContext(0.5, FLOAT64), 0.3) == pytest.approx(0.3 * 0.7 * cmath.exp(0.3).real)


@pytest.mark.parametrize("q", [F(3, 2), F(2), F(5, 4)])
def test_dual_path_exact_for_polynomials(q):
    c = QContext(q)
    zs = [RationalComplex(F(1, 3), F(1, 4)), RationalComplex(F(-7, 8)), RationalComplex(0, F(1, 2))]
    for deg in range(9):
        coeffs = ",".join(f"{(-1) ** j * (j + 2)}/{j + 3}" for j in range(deg + 1))
        f = builtin_series("poly:" + coeffs, mode=EXACT)
        for z in zs:
            assert lq_series(f, c, z) == lq_direct(f, c, z)


@pytest.mark.parametrize("q", [1.2, 1.5, 2.0])
@pytest.mark.parametrize("spec", ["exp", "geometric:5"])
def test_dual_path_float(q, spec):
    c = QContext(q, FLOAT64)
    f = builtin_series(spec, 80)
    for k in range(16):
        z = 0.8 * cmath.exp(2j * cmath.pi * (k + 0.5) / 16)
        a, b = lq_series(f, c, z), lq_direct(f, c, z)
        assert abs(a - b) <= 1e-10 * abs(a)


def test_lq_series_error_bound():
    c = QContext(1.5, FLOAT64)
    f = builtin_series("exp", 12)
    big = builtin_series("exp", 80)
    z = 0.9 - 0.3j
    val, err = lq_series(f, c, z, with_error=True)
    assert abs(val - lq_series(big, c, z)) <= err


def test_lq_kills_exactly_linear_polys():
    c = QContext(F(3, 2))
    one = ONE
    for deg in range(9):
        for lead in range(deg + 1):
            coeffs = [F(0)] * (deg + 1)
            coeffs[lead] = one
            f = builtin_series("poly:" + ",".join(map(str, coeffs)), mode=EXACT)
            assert lq_polynomial(f, c).is_zero() == (lead <= 1)


@pytest.mark.parametrize("q", [F(3, 2), F(2), F(1)])
def test_voronovskaja_exact_at_m2(q):
    c = QContext(q)
    e2 = builtin_series("monomial:2", mode=EXACT)
    lq2 = lq_polynomial(e2, c)
    for n in range(1, 11):
        diff = moment_table(n, c, 2).row(2) - ComplexPoly.monomial(2, ONE)
        assert diff == lq2 / q_integer(n + 1, c)


def test_continuity_scan_examples():
    disk = DiskSpec(1, 256)
    qs = [1 + 10**-k for k in range(3, 7)]
    lin = lq_continuity_scan(builtin_series("poly:4,-1"), disk, qs)
    assert all(e.sup_distance == 0 and e.valid for e in lin)
    sq = lq_continuity_scan(builtin_series("monomial:2"), disk, qs)
    for e in sq:
        assert e.sup_distance == pytest.approx(2 * (e.q - 1), abs=1e-12)


def test_continuity_scan_exp_rate():
    qs = [1 + 10**-k for k in range(3, 7)]
    vals = [e.sup_distance for e in lq_continuity_scan(builtin_series("exp"), DiskSpec(1, 256), qs)]
    ratios = [a / b for a, b in zip(vals, vals[1:])]
    assert all(5 <= r <= 20 for r in ratios)


def test_continuity_scan_flags_bad_q():
    out = lq_continuity_scan(builtin_series("geometric:2"), DiskSpec(1.5, 64), [0.9, 1.2, 1.4])
    assert [e.valid for e in out] == [False, True, False]
    assert out[0].sup_distance is None


def test_continuity_scan_exact():
    disk = DiskSpec(1, 64)
    out = lq_continuity_scan(builtin_series("monomial:2", mode=EXACT), disk, [F(11, 10), F(101, 100)], EXACT)
    assert [e.sup_distance for e in out] == [F(1, 5), F(1, 50)]


@given(st.fractions(F(101, 100), F(3), max_denominator=100), st.integers(2, 12))
@settings(max_examples=50, deadline=None)
def test_coefficients_monotone_in_m(q, m):
    c = QContext(q)
    assert lq_coefficient(m + 1, c) > lq_coefficient(m, c)
