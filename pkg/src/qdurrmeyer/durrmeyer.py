"""The genuine q-Bernstein-Durrmeyer operator ``U_{n,q}``.

The operator is determined by its monomial images ``U_{n,q}(e_m)``, which are
polynomials of degree at most ``min(m, n)``. They are produced here three
independent ways (two-term recurrence, expansion in the basis ``p_{n,k}``,
and the q-Stirling expansion in q-Bernstein images), and the operator acts on
a power series coefficient by coefficient. ``DirectOperator`` instead
evaluates the defining formula with Jackson integrals.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field

from .errors import DomainError
from .numeric import Accumulator, NumericMode
from .poly import ComplexPoly
from .qcore import (
    QContext,
    jackson_integral,
    q_binomial,
    q_factorial,
    q_integer,
    q_pochhammer_one_minus,
    q_stirling,
)
from .series import PowerSeries, coefficient_abs_sum
from .voronovskaja import lq_coefficient

__all__ = [
    "ComplexPoly",
    "basis",
    "basis_poly",
    "moment_ratio",
    "MomentTable",
    "moment_table",
    "u_monomial_recurrence",
    "u_monomial_direct",
    "u_monomial_stirling",
    "bernstein_monomial",
    "operator_image",
    "u_apply_series",
    "DirectOperator",
    "u_apply_direct",
    "theta",
    "remainder_rnm",
    "remainder_rnm_alt",
    "recurrence_step",
    "idd1_rhs",
    "idd2_rhs",
]


def _one_minus_z(mode: NumericMode) -> ComplexPoly:
    return ComplexPoly([mode.one, -mode.one])


def _z(mode: NumericMode) -> ComplexPoly:
    return ComplexPoly([mode.zero, mode.one])


def _check_basis(n: int, k: int):
    if n < 0 or k < 0 or k > n:
        raise DomainError(f"basis index needs 0 <= k <= n, got n={n}, k={k}")


def basis(n: int, k: int, ctx: QContext, z):
    """``p_{n,k}(q; z) = [n choose k]_q z^k (1 - z)_q^(n-k)``."""
    _check_basis(n, k)
    return q_binomial(n, k, ctx) * z**k * q_pochhammer_one_minus(z, n - k, ctx)


def basis_poly(n: int, k: int, ctx: QContext) -> ComplexPoly:
    _check_basis(n, k)
    mode = ctx.mode
    poly = ComplexPoly([q_binomial(n, k, ctx)]).shift(k)
    power = mode.one
    for _ in range(n - k):
        poly = poly * ComplexPoly([mode.one, -power])
        power *= ctx.q
    return poly


def moment_ratio(n: int, k: int, m: int, ctx: QContext):
    """``prod_{j<m} [k+j]_q / [n+j]_q``: the normalised m-th moment of the k-th kernel."""
    if m < 0:
        raise DomainError("moment order must be >= 0")
    if n < 1 or k < 0 or k > n:
        raise DomainError(f"moment_ratio needs 0 <= k <= n and n >= 1, got n={n}, k={k}")
    result = ctx.mode.one
    for j in range(m):
        result = result * q_integer(k + j, ctx) / q_integer(n + j, ctx)
    return result


# -- recurrence path -------------------------------------------------------


def recurrence_step(n: int, m: int, ctx: QContext, u_m: ComplexPoly) -> ComplexPoly:
    """``U(e_{m+1})`` from ``U(e_m)``.

    ``(q^m z(1-z) D_q U(e_m) + (q^m [n]_q z + [m]_q) U(e_m)) / [n+m]_q``.
    """
    mode = ctx.mode
    qm = ctx.q**m
    z = _z(mode)
    zz = z * _one_minus_z(mode)
    lin = ComplexPoly([q_integer(m, ctx), qm * q_integer(n, ctx)])
    step = (zz * u_m.q_derivative(ctx.q) * qm + lin * u_m) / q_integer(n + m, ctx)
    return step


class MomentTable:
    """Rows ``U_{n,q}(e_m)`` for ``m = 0..M`` built by the two-term recurrence.

    Rows are computed once and never modified; ``extend`` only appends.
    """

    def __init__(self, n: int, ctx: QContext):
        if n < 1:
            raise DomainError("operator degree n must be >= 1")
        self.n = n
        self.ctx = ctx
        self._rows = [ComplexPoly([ctx.mode.one])]
        self._lock = threading.Lock()

    @property
    def M(self) -> int:
        return len(self._rows) - 1

    def extend(self, M: int) -> "MomentTable":
        if M <= self.M:
            return self
        with self._lock:
            rows = self._rows
            while len(rows) <= M:
                m = len(rows) - 1
                nxt = recurrence_step(self.n, m, self.ctx, rows[m])
                # leading terms above degree n cancel identically
                rows.append(nxt.truncated(min(m + 1, self.n)))
        return self

    def row(self, m: int) -> ComplexPoly:
        self.extend(m)
        return self._rows[m]

    @property
    def polys(self) -> tuple:
        return tuple(self._rows)

    def __getitem__(self, m: int) -> ComplexPoly:
        return self.row(m)


_TABLES: dict = {}
_TABLES_LOCK = threading.Lock()


def moment_table(n: int, ctx: QContext, M: int = 0) -> MomentTable:
    """Shared, lazily grown moment table for ``(n, q, mode)``."""
    key = (n, ctx.q, ctx.mode)
    with _TABLES_LOCK:
        table = _TABLES.get(key)
        if table is None:
            table = _TABLES[key] = MomentTable(n, QContext(ctx.q, ctx.mode))
    return table.extend(M)


def u_monomial_recurrence(n: int, M: int, ctx: QContext) -> MomentTable:
    if M < 0:
        raise DomainError("M must be >= 0")
    return moment_table(n, ctx, M)


# -- direct basis expansion -------------------------------------------------


def _sum_polys(terms, mode: NumericMode) -> ComplexPoly:
    terms = list(terms)
    width = max((len(t.coeffs) for t in terms), default=0)
    out = []
    for j in range(width):
        acc = Accumulator(mode)
        for t in terms:
            if j < len(t.coeffs):
                acc.add(t.coeffs[j])
        out.append(acc.value)
    return ComplexPoly(out)


def u_monomial_direct(n: int, m: int, ctx: QContext) -> ComplexPoly:
    """``e_m(0) p_{n,0} + p_{n,n} + sum_{0<k<n} p_{n,k} I_{k,m}`` expanded in monomials."""
    if n < 1:
        raise DomainError("operator degree n must be >= 1")
    if m < 0:
        raise DomainError("m must be >= 0")
    mode = ctx.mode
    terms = [basis_poly(n, n, ctx)]
    if m == 0:
        terms.append(basis_poly(n, 0, ctx))
    for k in range(1, n):
        terms.append(basis_poly(n, k, ctx) * moment_ratio(n, k, m, ctx))
    return _sum_polys(terms, mode)


# -- q-Stirling path ----------------------------------------------------------


def bernstein_monomial(n: int, s: int, ctx: QContext) -> ComplexPoly:
    """q-Bernstein image ``B_{n,q}(e_s) = sum_k ([k]_q/[n]_q)^s p_{n,k}``."""
    if n < 1 or s < 0:
        raise DomainError("bernstein_monomial needs n >= 1 and s >= 0")
    qn = q_integer(n, ctx)
    terms = []
    for k in range(n + 1):
        node = q_integer(k, ctx) / qn
        weight = node**s if s else ctx.mode.one
        if weight != 0:
            terms.append(basis_poly(n, k, ctx) * weight)
    return _sum_polys(terms, ctx.mode)


def u_monomial_stirling(n: int, m: int, ctx: QContext, stirling=q_stirling) -> ComplexPoly:
    """``[n-1]_q!/[n+m-1]_q! * sum_s S_q(m,s) [n]_q^s B_{n,q}(e_s)``.

    ``stirling`` can be replaced to inject corrupted coefficients in checks.
    """
    if n < 1 or m < 0:
        raise DomainError("u_monomial_stirling needs n >= 1 and m >= 0")
    if m == 0:
        return ComplexPoly([ctx.mode.one])
    scale = q_factorial(n - 1, ctx) / q_factorial(n + m - 1, ctx)
    qn = q_integer(n, ctx)
    terms = [bernstein_monomial(n, s, ctx) * (stirling(m, s, ctx) * qn**s * scale) for s in range(1, m + 1)]
    return _sum_polys(terms, ctx.mode)


# -- action on power series ---------------------------------------------------


def operator_image(n: int, ctx: QContext, f: PowerSeries) -> ComplexPoly:
    """``sum_{m<=N} a_m U_{n,q}(e_m)``: the polynomial ``U_{n,q}(f_N)``."""
    f = f.converted(ctx.mode)
    table = moment_table(n, ctx, f.N)
    rows = [table.row(m) * a for m, a in enumerate(f.coeffs) if a != 0]
    return _sum_polys(rows, ctx.mode)


def u_apply_series(n: int, ctx: QContext, f: PowerSeries, z, with_error: bool = False):
    """``U_{n,q}(f; z)`` by linearity over the Taylor coefficients.

    The discarded tail is bounded by ``sum_{m>N} |a_m| r^m`` with
    ``r = max(1, |z|)``, since ``|U_{n,q}(e_m; z)| <= r^m`` there.
    """
    f = f.converted(ctx.mode)
    z = ctx.mode.to_complex(z)
    value = operator_image(n, ctx, f)(z)
    if not with_error:
        return value
    r = abs(z)
    r = r if r > 1 else 1
    if not f.in_domain(r):
        return value, math.inf
    return value, f.tail_bound(f.N, r)


# -- defining formula with Jackson integrals ------------------------------------


def _kernel_bound_log2(n: int, q: float, rho: float) -> float:
    """log2 of ``sum_k |[n,k]_q| rho^k prod_s (1 + q^s rho)``, a bound for ``sum_k |p_{n,k}(q;z)|``."""
    logs = []
    for k in range(n + 1):
        lb = 0.0
        for i in range(min(k, n - k)):
            lb += math.log2(sum(q**j for j in range(n - i))) - math.log2(sum(q**j for j in range(i + 1)))
        lp = sum(math.log2(1 + q**s * rho) for s in range(n - k))
        logs.append(lb + k * math.log2(rho) + lp if rho > 0 else lb + lp)
    top = max(logs)
    return top + math.log2(sum(2 ** (x - top) for x in logs))


@dataclass
class DirectOperator:
    """``U_{n,q}(f; .)`` straight from its definition with Jackson q-integrals.

    ``q > 1`` uses base ``1/q`` integrals of ``f(q^(k-n) t)``; ``0 < q < 1`` uses
    base ``q`` integrals of ``f(t)``. At ``q = 1`` the ordinary integrals of a
    power series are taken from the classical Beta moments ``prod (k+j)/(n+j)``.

    In float modes the basis sum suffers cancellation (q-binomials grow like
    ``q^(k(n-k))`` while the result stays bounded), so integrals and the final
    sum run at extra working precision chosen from an a priori bound on
    ``sum_k |p_{n,k}(q; z)|``, and the Jackson tolerance is tightened to match.
    """

    n: int
    ctx: QContext
    f: object
    radius: float = 1.0
    f_bound: object = None
    _cache: dict = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self):
        if self.n < 1:
            raise DomainError("operator degree n must be >= 1")
        if self.ctx.q == 1 and not isinstance(self.f, PowerSeries):
            raise DomainError("at q = 1 the direct operator needs f as a PowerSeries")

    def _work_mode(self, rho: float) -> NumericMode:
        mode = self.ctx.mode
        if mode.is_exact:
            return mode
        guard = _kernel_bound_log2(self.n, float(self.ctx.q), max(rho, 1.0)) + 40
        bits = mode.precision_bits + int(math.ceil(max(guard, 0.0)))
        return NumericMode.float(bits)

    def _integrals(self, work: NumericMode):
        key = work.precision_bits if not work.is_exact else 0
        if key in self._cache:
            return self._cache[key]
        ctx = self.ctx
        n = self.n
        if work.is_exact:
            wctx = ctx
        else:
            wctx = QContext(
                work.scalar(ctx.q),
                work,
                jackson_tol=work.scalar(2) ** (8 - work.precision_bits),
                series_tol=float(ctx.series_tol),
                jackson_max_terms=ctx.jackson_max_terms,
            )
        f = self.f.converted(work) if isinstance(self.f, PowerSeries) else self.f
        if self.f_bound is not None:
            fb = work.scalar(self.f_bound)
        elif isinstance(f, PowerSeries):
            fb = coefficient_abs_sum(f)
        else:
            fb = None
        q = wctx.q
        integrals = []
        if q == 1:
            for k in range(1, n):
                acc = Accumulator(work)
                for m, a in enumerate(f.coeffs):
                    acc.add(a * moment_ratio(n, k, m, wctx))
                integrals.append(acc.value)
        elif q > 1:
            inv = wctx.inverse()
            p = inv.q
            scale = q_integer(n - 1, inv)
            for k in range(1, n):
                binom = q_binomial(n - 2, k - 1, inv)
                shift = q ** (k - n)

                def integrand(t, k=k, binom=binom, shift=shift):
                    x = p * t
                    return binom * x ** (k - 1) * q_pochhammer_one_minus(x, n - k - 1, inv) * f(shift * t)

                bound = None
                if fb is not None:
                    bound = (lambda node, c=binom * p ** (k - 1) * fb, k=k: c * node ** (k - 1))
                integrals.append(scale * q ** (k - 1) * jackson_integral(integrand, p, wctx, bound=bound))
        else:
            scale = q_integer(n - 1, wctx)
            for k in range(1, n):
                binom = q_binomial(n - 2, k - 1, wctx)

                def integrand(t, k=k, binom=binom):
                    x = q * t
                    return binom * x ** (k - 1) * q_pochhammer_one_minus(x, n - k - 1, wctx) * f(t)

                bound = None
                if fb is not None:
                    bound = (lambda node, c=binom * q ** (k - 1) * fb, k=k: c * node ** (k - 1))
                integrals.append(scale * q ** (1 - k) * jackson_integral(integrand, q, wctx, bound=bound))
        data = (wctx, f, integrals)
        self._cache[key] = data
        return data

    def __call__(self, z):
        mode = self.ctx.mode
        zc = mode.to_complex(z)
        work = self._work_mode(max(float(abs(zc)), float(self.radius)))
        wctx, f, integrals = self._integrals(work)
        zw = work.to_complex(zc)
        n = self.n
        acc = Accumulator(work)
        acc.add(f(work.zero) * basis(n, 0, wctx, zw))
        acc.add(f(work.one) * basis(n, n, wctx, zw))
        for k, jk in enumerate(integrals, start=1):
            acc.add(jk * basis(n, k, wctx, zw))
        return mode.to_complex(acc.value)


def u_apply_direct(n: int, ctx: QContext, f, z, f_bound=None):
    """One-shot evaluation of the defining formula; see :class:`DirectOperator`."""
    return DirectOperator(n, ctx, f, radius=1.0, f_bound=f_bound)(z)


# -- Voronovskaja remainders ------------------------------------------------------


def theta(n: int, m: int, ctx: QContext) -> ComplexPoly:
    """``U(e_m) - z^m - c_m/[n+1]_q z^(m-1)(1-z)``: the part beyond first order."""
    mode = ctx.mode
    u = moment_table(n, ctx, m).row(m)
    out = u - ComplexPoly.monomial(m, mode.one)
    if m >= 2:
        corr = ComplexPoly.monomial(m - 1, mode.one) * _one_minus_z(mode)
        out = out - corr * (lq_coefficient(m, ctx) / q_integer(n + 1, ctx))
    return out


def remainder_rnm(n: int, m: int, ctx: QContext) -> ComplexPoly:
    """Inhomogeneous term of the first-order recurrence for ``theta``.

    ``[m-1]_q/([n+m-1]_q [n+1]_q) * ((1 + q^(m-1) - c_m) z + c_{m-1}) z^(m-2) (1-z)``;
    zero for ``m < 2``.
    """
    mode = ctx.mode
    if m < 2:
        return ComplexPoly()
    lead = q_integer(m - 1, ctx) / (q_integer(n + m - 1, ctx) * q_integer(n + 1, ctx))
    c_m = lq_coefficient(m, ctx)
    c_prev = lq_coefficient(m - 1, ctx)
    bracket = ComplexPoly([c_prev, 1 + ctx.q ** (m - 1) - c_m])
    return bracket * ComplexPoly.monomial(m - 2, mode.one) * _one_minus_z(mode) * lead


def remainder_rnm_alt(n: int, m: int, ctx: QContext) -> ComplexPoly:
    """The bracket ``(1 + q^(m-1)) + c_{m-1}(z + 1)`` in place of the one above.

    Diagnostic only: this form does not close the ``theta`` recurrence
    (already at ``m = 2`` it is nonzero while ``theta_{n,2} = 0``).
    """
    mode = ctx.mode
    if m < 2:
        return ComplexPoly()
    lead = q_integer(m - 1, ctx) / (q_integer(n + m - 1, ctx) * q_integer(n + 1, ctx))
    c_prev = lq_coefficient(m - 1, ctx)
    bracket = ComplexPoly([1 + ctx.q ** (m - 1) + c_prev, c_prev])
    return bracket * ComplexPoly.monomial(m - 2, mode.one) * _one_minus_z(mode) * lead


def idd1_rhs(n: int, m: int, ctx: QContext, u_prev: ComplexPoly) -> ComplexPoly:
    """Right side of the recurrence for ``U(e_m) - z^m`` given ``U(e_{m-1})``."""
    mode = ctx.mode
    qm1 = ctx.q ** (m - 1)
    den = q_integer(n + m - 1, ctx)
    zz = _z(mode) * _one_minus_z(mode)
    lin = ComplexPoly([q_integer(m - 1, ctx), qm1 * q_integer(n, ctx)])
    e_prev = ComplexPoly.monomial(m - 1, mode.one)
    return (
        zz * u_prev.q_derivative(ctx.q) * (qm1 / den)
        + lin * (u_prev - e_prev) / den
        + _one_minus_z(mode) * e_prev * (q_integer(m - 1, ctx) / den)
    )


def idd2_rhs(n: int, m: int, ctx: QContext, u_prev: ComplexPoly, theta_prev: ComplexPoly, remainder=remainder_rnm) -> ComplexPoly:
    """Right side of the recurrence for ``theta_{n,m}`` given the ``m-1`` data."""
    mode = ctx.mode
    qm1 = ctx.q ** (m - 1)
    den = q_integer(n + m - 1, ctx)
    zz = _z(mode) * _one_minus_z(mode)
    lin = ComplexPoly([q_integer(m - 1, ctx), qm1 * q_integer(n, ctx)])
    e_prev = ComplexPoly.monomial(m - 1, mode.one)
    return zz * (u_prev - e_prev).q_derivative(ctx.q) * (qm1 / den) + lin * theta_prev / den + remainder(n, m, ctx)
