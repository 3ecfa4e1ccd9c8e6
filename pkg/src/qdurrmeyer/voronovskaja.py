"""The Voronovskaja limit ``L_q(f; z)`` and its classical counterpart ``L_1``.

For ``q > 1`` the limit of ``[n+1]_q (U_{n,q} f - f)`` is

    L_q(f; z) = sum_{m>=2} a_m c_m z^(m-1) (1 - z),
    c_m = q * sum_{i<m} [i]_q + sum_{i<m} [i]_{1/q},

which equals ``(1 - z) q (D_q f(z) - D_{1/q} f(z)) / (q - 1)``. At ``q = 1``
the coefficients become ``m(m-1)`` and ``L_1(f; z) = z (1 - z) f''(z)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .errors import DomainError, HypothesisError
from .numeric import FLOAT64, NumericMode
from .poly import ComplexPoly
from .qcore import QContext, q_integer
from .series import DiskSpec, PowerSeries, second_derivative_eval, sup_norm_on_circle

__all__ = [
    "LqCoefficients",
    "lq_coefficient",
    "lq_coefficient_deviation",
    "lq_series",
    "lq_direct",
    "lq_polynomial",
    "l1_eval",
    "lq",
    "ScanEntry",
    "lq_continuity_scan",
]


@lru_cache(maxsize=128)
def _coefficients(q, mode: NumericMode, size: int) -> tuple:
    ctx = QContext(q, mode)
    inv = ctx.inverse()
    out = [mode.zero, mode.zero]
    sum_q = mode.zero
    sum_inv = mode.zero
    for m in range(2, size):
        sum_q += q_integer(m - 1, ctx)
        sum_inv += q_integer(m - 1, inv)
        out.append(ctx.q * sum_q + sum_inv)
    return tuple(out[:size])


@lru_cache(maxsize=128)
def _deviations(q, mode: NumericMode, size: int) -> tuple:
    # c_m - m(m-1) via [i]_q - i = (q-1) sum_{j<i} [j]_q, free of cancellation near q = 1
    ctx = QContext(q, mode)
    inv = ctx.inverse()
    qm1 = ctx.q - 1
    one_minus_inv = 1 - inv.q
    out = [mode.zero, mode.zero]
    nested_q = mode.zero  # sum_{i<m} sum_{j<i} [j]_q
    nested_inv = mode.zero
    inner_q = mode.zero  # sum_{j<i} [j]_q
    inner_inv = mode.zero
    for m in range(2, size):
        i = m - 1
        inner_q += q_integer(i - 1, ctx)
        inner_inv += q_integer(i - 1, inv)
        nested_q += inner_q
        nested_inv += inner_inv
        half = mode.scalar(m * (m - 1) // 2)
        out.append(qm1 * (ctx.q * nested_q + half) - one_minus_inv * nested_inv)
    return tuple(out[:size])


@dataclass(frozen=True)
class LqCoefficients:
    """``c_m`` for ``m = 0..N`` (``c_0 = c_1 = 0``)."""

    ctx: QContext
    N: int

    @property
    def values(self) -> tuple:
        return _coefficients(self.ctx.q, self.ctx.mode, self.N + 1)

    @property
    def deviations(self) -> tuple:
        """``c_m - m(m-1)``, computed without subtracting nearly equal numbers."""
        return _deviations(self.ctx.q, self.ctx.mode, self.N + 1)

    def __getitem__(self, m: int):
        return self.values[m]


def lq_coefficient(m: int, ctx: QContext):
    if m < 0:
        raise DomainError("m must be >= 0")
    return _coefficients(ctx.q, ctx.mode, m + 1)[m]


def lq_coefficient_deviation(m: int, ctx: QContext):
    if m < 0:
        raise DomainError("m must be >= 0")
    return _deviations(ctx.q, ctx.mode, m + 1)[m]


def _require_q_above_one(ctx: QContext):
    if not ctx.q > 1:
        raise DomainError("this form of L_q needs q > 1; for 0 < q <= 1 use l1_eval")


def _horner_shifted(weights: Sequence, z):
    """``sum_{m>=2} weights[m] z^(m-1)`` by Horner."""
    acc = z * 0
    for w in reversed(weights[2:]):
        acc = (acc + w) * z
    return acc


def lq_series(f: PowerSeries, ctx: QContext, z, with_error: bool = False):
    """``L_q(f; z)`` from the coefficient representation (``q > 1``)."""
    _require_q_above_one(ctx)
    f = f.converted(ctx.mode)
    f._check(z)
    c = LqCoefficients(ctx, f.N).values
    weights = [a * cm for a, cm in zip(f.coeffs, c)]
    value = _horner_shifted(weights, z) * (1 - z)
    if not with_error:
        return value
    # c_m <= m(m-1) q^(m-1) because [i]_q <= i q^(i-1) and [i]_{1/q} <= i
    r = abs(z)
    if r == 0:
        return value, ctx.mode.zero
    rho = ctx.q * r
    err = abs(1 - z) * f.weighted_abs_sum(f.N + 1, lambda m: m * (m - 1), rho) / rho if f.in_domain(rho) else math.inf
    return value, err


def lq_direct(f, ctx: QContext, z):
    """``L_q(f; z) = (1 - z) q (D_q f(z) - D_{1/q} f(z)) / (q - 1)`` evaluated pointwise."""
    _require_q_above_one(ctx)
    q = ctx.q
    if isinstance(f, PowerSeries):
        f = f.converted(ctx.mode)
        if not f.in_domain(q * abs(z)):
            raise HypothesisError("requires q*|z| < R: the q-difference quotient samples f at q*z")
    if z == 0:
        return z * 0
    fz = f(z)
    dq = (f(q * z) - fz) / ((q - 1) * z)
    inv = 1 / q
    dinv = (f(inv * z) - fz) / ((inv - 1) * z)
    return (1 - z) * q * (dq - dinv) / (q - 1)


def lq_polynomial(f: PowerSeries, ctx: QContext) -> ComplexPoly:
    """``L_q(f)`` as a polynomial for polynomial ``f`` (any ``q > 0``; ``q <= 1`` gives ``L_1``)."""
    f = f.converted(ctx.mode)
    if ctx.q > 1:
        c = LqCoefficients(ctx, f.N).values
    else:
        c = [ctx.mode.scalar(m * (m - 1)) for m in range(f.N + 1)]
    inner = ComplexPoly([ctx.mode.zero] + [a * cm for a, cm in zip(f.coeffs[2:], c[2:])])
    return inner * ComplexPoly([ctx.mode.one, -ctx.mode.one])


def l1_eval(f: PowerSeries, z):
    """``L_1(f; z) = z (1 - z) f''(z)``."""
    return z * (1 - z) * second_derivative_eval(f, z)


def lq(f: PowerSeries, ctx: QContext, z):
    """``L_q`` for every ``q > 0``: the series form above 1, ``L_1`` otherwise."""
    if ctx.q > 1:
        return lq_series(f, ctx, z)
    return l1_eval(f.converted(ctx.mode), ctx.mode.to_complex(z))


@dataclass(frozen=True)
class ScanEntry:
    q: object
    sup_distance: object
    valid: bool
    note: str = ""


def lq_continuity_scan(
    f: PowerSeries,
    disk: DiskSpec,
    q_list: Sequence,
    mode: NumericMode = FLOAT64,
) -> list[ScanEntry]:
    """``max |L_q(f) - L_1(f)|`` on the circle ``|z| = r`` for each ``q`` in ``q_list``.

    Entries whose ``q`` falls outside ``(1, R/r)`` are flagged rather than raised.
    """
    f = f.converted(mode)
    r = mode.scalar(disk.r)
    out = []
    for qv in q_list:
        ctx = QContext(qv, mode)
        if not ctx.q > 1 or (f.radius != math.inf and not ctx.q * r < f.radius):
            out.append(ScanEntry(ctx.q, None, False, "requires 1 < q < R/r"))
            continue
        dev = LqCoefficients(ctx, f.N).deviations
        weights = [a * d for a, d in zip(f.coeffs, dev)]

        def gap(z, weights=weights):
            return _horner_shifted(weights, z) * (1 - z)

        out.append(ScanEntry(ctx.q, sup_norm_on_circle(gap, disk, mode), True))
    return out
