from fractions import Fraction as F
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from qdurrmeyer.errors import ConvergenceError, DomainError
from qdurrmeyer.numeric import FLOAT64, NumericMode
from qdurrmeyer.poly import ComplexPoly
from qdurrmeyer.qcore import (
    QContext,
    jackson_integral,
    q_beta,
    q_binomial,
    q_derivative,
    q_factorial,
    q_integer,
    q_pochhammer_one_minus,
    q_stirling,
    stirling_table,
)

QS = [F(1, 2), F(2, 3), F(1), F(3, 2), F(2)]
rational_q = st.fractions(min_value=F(1, 10), max_value=F(5), max_denominator=12).filter(lambda q: q > 0)


def ctx(q):
    return QContext(F(q))


def test_q_integer_examples():
    assert q_integer(0, ctx(2)) == 0
    assert q_integer(4, ctx(2)) == 15
    assert q_integer(5, ctx(1)) == 5


def test_q_factorial_examples():
    assert q_factorial(0, ctx(7)) == 1
    assert q_factorial(4, ctx(2)) == 315
    assert q_factorial(3, ctx(F(1, 2))) == F(21, 8)


def test_q_binomial_examples():
    assert q_binomial(4, 2, ctx(2)) == 35
    assert q_binomial(4, 2, ctx(1)) == 6
    assert q_binomial(9, 0, ctx(F(5, 3))) == 1


@pytest.mark.parametrize("k", [-1, 5])
def test_q_binomial_out_of_range(k):
    with pytest.raises(DomainError):
        q_binomial(4, k, ctx(2))


def _subset_count(n, k, q):
    # Gaussian binomial as the inversion generating function over k-subsets
    total = F(0)
    for sub in combinations(range(n), k):
        inv = sum(1 for s in sub for t in range(s) if t not in sub)
        total += q**inv
    return total


@pytest.mark.parametrize("q", QS)
def test_q_binomial_matches_subset_generating_function(q):
    for n in range(7):
        for k in range(n + 1):
            assert q_binomial(n, k, ctx(q)) == _subset_count(n, k, q)


@pytest.mark.parametrize("q", QS)
def test_q_binomial_factorial_consistency(q):
    c = ctx(q)
    for n in range(13):
        for k in range(n + 1):
            assert q_binomial(n, k, c) == q_factorial(n, c) / (q_factorial(k, c) * q_factorial(n - k, c))


def test_pochhammer_examples():
    c = ctx(2)
    assert q_pochhammer_one_minus(F(3, 7), 0, c) == 1
    assert q_pochhammer_one_minus(F(1), 2, c) == 0
    assert q_pochhammer_one_minus(F(1, 4), 2, c) == F(3, 8)


def test_q_derivative_examples():
    c = ctx(F(3, 2))
    e2 = ComplexPoly.monomial(2, F(1))
    z = F(2, 5)
    assert q_derivative(e2, z, c) == q_integer(2, c) * z
    assert q_derivative(lambda t: F(7), z, c) == 0
    assert q_derivative(e2, 0, c, fprime0=F(0)) == 0


def test_q_derivative_at_zero_uses_series_derivative():
    from qdurrmeyer.series import builtin_series

    f = builtin_series("exp", 20, FLOAT64)
    assert q_derivative(f, 0, QContext(1.5, FLOAT64)) == 1.0


def test_q_derivative_rejects_q_one():
    with pytest.raises(DomainError):
        q_derivative(lambda t: t, F(1, 2), ctx(1))


def test_q_derivative_at_zero_needs_derivative():
    with pytest.raises(DomainError):
        q_derivative(lambda t: t, 0, ctx(2))


@pytest.mark.parametrize("q", [F(1, 2), F(3, 2), F(2)])
def test_q_derivative_monomials_exact(q):
    c = ctx(q)
    z = F(-5, 9)
    for m in range(1, 11):
        assert q_derivative(ComplexPoly.monomial(m, F(1)), z, c) == q_integer(m, c) * z ** (m - 1)


def test_jackson_examples():
    c = ctx(F(1, 2))
    tol = c.jackson_tol
    assert abs(jackson_integral(lambda t: F(1), F(1, 2), c) - 1) <= tol
    assert abs(jackson_integral(lambda t: t, F(1, 2), c) - F(2, 3)) <= tol
    assert abs(jackson_integral(lambda t: t * t, F(1, 2), c) - F(4, 7)) <= tol


@pytest.mark.parametrize("p", [F(1, 3), F(1, 2), F(2, 3)])
def test_jackson_monomials(p):
    c = ctx(p)
    for m in range(11):
        assert abs(jackson_integral(lambda t: t**m, p, c) - 1 / q_integer(m + 1, c)) <= c.jackson_tol


def test_jackson_float_and_bound():
    c = QContext(0.5, FLOAT64)
    assert jackson_integral(lambda t: t, 0.5, c) == pytest.approx(2 / 3, rel=1e-13)
    assert jackson_integral(lambda t: t, 0.5, c, bound=1.0) == pytest.approx(2 / 3, rel=1e-13)
    assert jackson_integral(lambda t: t, 0.5, c, bound=lambda t: t) == pytest.approx(2 / 3, rel=1e-13)


def test_jackson_vanishing_integral_terminates():
    # no relative stop is possible when every partial sum is zero
    c = QContext(0.5, FLOAT64)
    val = jackson_integral(lambda t: 0.0, 0.5, c, bound=1.0)
    assert val == 0.0


@pytest.mark.parametrize("p", [F(0), F(1), F(3, 2), F(-1, 2)])
def test_jackson_rejects_bad_base(p):
    with pytest.raises(DomainError):
        jackson_integral(lambda t: t, p, ctx(2))


def test_jackson_convergence_error():
    c = QContext(F(1, 2), jackson_max_terms=5)
    with pytest.raises(ConvergenceError):
        jackson_integral(lambda t: t, F(1, 2), c, min_terms=1)


def test_q_beta_examples():
    c = ctx(F(1, 2))
    assert q_beta(2, 2, F(1, 2), c) == F(8, 21)
    brute = F(2, 3) - F(1, 2) * F(4, 7)
    assert brute == F(8, 21)
    # classical Beta at integer arguments
    assert q_beta(3, 4, 1, c) == F(2 * 6, 720)


@pytest.mark.parametrize("p", [F(1, 3), F(1, 2), F(2, 3)])
def test_q_beta_matches_jackson(p):
    c = ctx(p)
    for m in range(1, 7):
        for n in range(1, 7):
            def g(t):
                return t ** (m - 1) * q_pochhammer_one_minus(p * t, n - 1, c)
            exact = q_beta(m, n, p, c)
            assert abs(jackson_integral(g, p, c) - exact) <= c.jackson_tol * exact


def test_q_beta_domain():
    with pytest.raises(DomainError):
        q_beta(0, 2, F(1, 2), ctx(2))
    with pytest.raises(DomainError):
        q_beta(2, 2, F(3, 2), ctx(2))


def test_stirling_examples():
    for q in QS:
        c = ctx(q)
        assert q_stirling(2, 3, c) == 0
        assert q_stirling(2, 1, c) == 1
        assert q_stirling(2, 2, c) == q
        assert q_stirling(1, 1, c) == 1
        assert q_stirling(0, 0, c) == 1
        assert q_stirling(3, 0, c) == 0


@pytest.mark.parametrize("q", QS)
def test_stirling_defining_product(q):
    c = ctx(q)
    for m in range(9):
        for k in range(9):
            qk = q_integer(k, c)
            prod = F(1)
            for s in range(m):
                prod *= q**s * qk + q_integer(s, c)
            assert prod == sum(q_stirling(m, s, c) * qk**s for s in range(m + 1))


@given(rational_q, st.integers(1, 9))
def test_stirling_positive(q, m):
    row = stirling_table(m, ctx(q))[m]
    assert all(row[s] > 0 for s in range(1, m + 1))


@given(rational_q, st.integers(1, 14), st.data())
@settings(max_examples=60)
def test_q_binomial_pascal(q, n, data):
    k = data.draw(st.integers(1, n))
    c = ctx(q)
    assert q_binomial(n + 1, k, c) == q_binomial(n, k - 1, c) + q**k * q_binomial(n, k, c)


@given(rational_q, st.integers(0, 30))
def test_q_integer_closed_form(q, n):
    expected = F(n) if q == 1 else (q**n - 1) / (q - 1)
    assert q_integer(n, ctx(q)) == expected


def test_context_validation():
    with pytest.raises(DomainError):
        QContext(0)
    with pytest.raises(DomainError):
        QContext(1.5)  # float q in exact mode
    with pytest.raises(DomainError):
        QContext(F(2), jackson_tol=F(2))
    assert QContext("3/2").q == F(3, 2)
    assert QContext(1.5, FLOAT64).q == 1.5
    hi = QContext("3/2", NumericMode.float(120))
    assert hi.mode.precision_bits == 120
    assert QContext(F(2)).inverse().q == F(1, 2)
    assert QContext(F(1)).is_classical
    moved = QContext(F(3, 2)).with_mode(FLOAT64)
    assert moved.q == 1.5 and moved.mode == FLOAT64
