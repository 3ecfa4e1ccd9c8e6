"""q-arithmetic: q-integers, q-factorials, q-binomials, q-derivatives and Jackson integrals."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from .errors import ConvergenceError, DomainError
from .numeric import EXACT, Accumulator, NumericMode

__all__ = [
    "QContext",
    "q_integer",
    "q_factorial",
    "q_binomial",
    "q_pochhammer_one_minus",
    "q_derivative",
    "jackson_integral",
    "q_beta",
    "q_stirling",
    "stirling_table",
]

JACKSON_MAX_TERMS = 10**6


@dataclass(frozen=True)
class QContext:
    """The deformation parameter ``q`` together with arithmetic mode and tolerances.

    ``q`` is converted to the mode's scalar type on construction; in exact
    mode it must be an int, a Fraction or a fraction string such as ``"3/2"``.
    """

    q: object
    mode: NumericMode = EXACT
    jackson_tol: object = Fraction(1, 10**14)
    series_tol: object = Fraction(1, 10**15)
    jackson_max_terms: int = JACKSON_MAX_TERMS

    def __post_init__(self):
        if self.mode.is_exact and isinstance(self.q, float):
            raise DomainError("exact mode requires q as a ratio of integers")
        q = self.mode.scalar(self.q)
        if not q > 0:
            raise DomainError(f"q must be positive, got {self.q!r}")
        object.__setattr__(self, "q", q)
        for name in ("jackson_tol", "series_tol"):
            raw = getattr(self, name)
            tol = self.mode.scalar(Fraction(raw) if self.mode.is_exact else raw)
            if not 0 < tol < 1:
                raise DomainError(f"{name} must lie in (0, 1)")
            object.__setattr__(self, name, tol)

    @classmethod
    def exact(cls, q, **kw) -> "QContext":
        return cls(q, EXACT, **kw)

    @classmethod
    def floating(cls, q, bits: int = 53, **kw) -> "QContext":
        return cls(q, NumericMode.float(bits), **kw)

    def with_q(self, q) -> "QContext":
        """Same mode and tolerances, different base."""
        return dataclasses.replace(self, q=q)

    def inverse(self) -> "QContext":
        return self.with_q(1 / self.q)

    def with_mode(self, mode: NumericMode) -> "QContext":
        """Move to another numeric mode; tolerances are carried over as floats."""
        if mode.is_exact:
            return QContext(self.q, mode, Fraction(float(self.jackson_tol)),
                            Fraction(float(self.series_tol)), self.jackson_max_terms)
        return QContext(self.q, mode, float(self.jackson_tol), float(self.series_tol),
                        self.jackson_max_terms)

    @property
    def is_classical(self) -> bool:
        return self.q == 1

    def scalar(self, x):
        return self.mode.scalar(x)


def q_integer(n: int, ctx: QContext):
    """``[n]_q = 1 + q + ... + q^(n-1)``, with ``[0]_q = 0``."""
    if n < 0:
        raise DomainError("q_integer needs n >= 0")
    q = ctx.q
    total = ctx.mode.zero
    power = ctx.mode.one
    for _ in range(n):
        total += power
        power *= q
    return total


def q_factorial(n: int, ctx: QContext):
    if n < 0:
        raise DomainError("q_factorial needs n >= 0")
    result = ctx.mode.one
    for j in range(1, n + 1):
        result *= q_integer(j, ctx)
    return result


def q_binomial(n: int, k: int, ctx: QContext):
    """Gaussian binomial coefficient, built as a product of q-integer ratios."""
    if k < 0 or k > n:
        raise DomainError(f"q_binomial needs 0 <= k <= n, got n={n}, k={k}")
    k = min(k, n - k)
    result = ctx.mode.one
    for i in range(k):
        result = result * q_integer(n - i, ctx) / q_integer(i + 1, ctx)
    return result


def q_pochhammer_one_minus(z, n: int, ctx: QContext):
    """``(1 - z)_q^n = prod_{s<n} (1 - q^s z)``; the empty product is 1."""
    if n < 0:
        raise DomainError("q_pochhammer_one_minus needs n >= 0")
    result = ctx.mode.one
    power = ctx.mode.one
    for _ in range(n):
        result = result * (1 - power * z)
        power *= ctx.q
    return result


def q_derivative(f: Callable, z, ctx: QContext, fprime0=None):
    """Jackson q-derivative ``(f(qz) - f(z)) / ((q - 1) z)``, ``f'(0)`` at the origin.

    At ``z = 0`` the value ``f'(0)`` comes from ``fprime0`` or from
    ``f.derivative_at_zero()`` (power series provide it).
    """
    q = ctx.q
    if q == 1:
        raise DomainError("q_derivative is undefined at q = 1; use the classical derivative")
    if z == 0:
        if fprime0 is not None:
            return fprime0
        if hasattr(f, "derivative_at_zero"):
            return f.derivative_at_zero()
        raise DomainError("q_derivative at z = 0 needs f'(0)")
    return (f(q * z) - f(z)) / ((q - 1) * z)


def jackson_integral(
    f: Callable,
    p,
    ctx: QContext,
    bound=None,
    min_terms: int = 16,
):
    """Jackson integral ``(1 - p) * sum_j f(p^j) p^j`` over ``[0, 1]`` for ``0 < p < 1``.

    The sum stops once the geometric tail majorant ``B * p^(j+1)`` drops below
    ``ctx.jackson_tol`` times the magnitude of the partial integral. ``B`` is
    ``bound`` when supplied (a bound for ``|f|`` on the grid, which makes the
    stop rigorous); otherwise the largest ``|f(p^i)|`` seen so far.
    """
    mode = ctx.mode
    p = mode.scalar(p)
    if not 0 < p < 1:
        raise DomainError(f"Jackson integral needs 0 < p < 1, got {p!r}")
    tol = ctx.jackson_tol
    one_minus_p = 1 - p
    if bound is not None and not callable(bound):
        bound = mode.scalar(bound)
    seen = mode.zero
    total_acc = Accumulator(mode)
    node = mode.one
    for j in range(ctx.jackson_max_terms):
        value = f(node)
        total_acc.add(value * node)
        if bound is None:
            mag = abs(value)
            if mag > seen:
                seen = mag
            big = seen
        node = node * p
        if bound is not None:
            big = bound(node) if callable(bound) else bound
        if j == 0:
            # absolute floor so that integrals that vanish still terminate
            floor = big * tol
        mag = abs(total_acc.value)
        if j + 1 >= min_terms and big * node <= tol * one_minus_p * (mag if mag > floor else floor):
            return one_minus_p * total_acc.value
    raise ConvergenceError(
        f"Jackson sum did not reach tolerance {tol} within {ctx.jackson_max_terms} terms"
    )


def q_beta(m: int, n: int, p, ctx: QContext):
    """q-Beta function at integer arguments via its factorial closed form.

    ``p = 1`` gives the classical Beta value ``(m-1)!(n-1)!/(m+n-1)!``.
    """
    if m < 1 or n < 1:
        raise DomainError("q_beta needs m, n >= 1")
    p = ctx.mode.scalar(p)
    if not 0 < p <= 1:
        raise DomainError("q_beta needs 0 < p <= 1")
    c = ctx.with_q(p)
    return q_factorial(m - 1, c) * q_factorial(n - 1, c) / q_factorial(m + n - 1, c)


@lru_cache(maxsize=256)
def _stirling_rows(q, mode: NumericMode, size: int) -> tuple:
    ctx = QContext(q, mode)
    rows = [[mode.one]]  # S(0, 0) = 1
    for m in range(size - 1):
        prev = rows[m]
        qm = ctx.q**m
        bracket = q_integer(m, ctx)
        row = [mode.zero] * (m + 2)
        for s in range(1, m + 2):
            left = prev[s] if s <= m else mode.zero
            row[s] = bracket * left + qm * prev[s - 1]
        rows.append(row)
    return tuple(tuple(r) for r in rows)


def stirling_table(m_max: int, ctx: QContext) -> tuple:
    """Rows ``S_q(m, 0..m)`` for ``m = 0..m_max`` from the two-term recurrence."""
    return _stirling_rows(ctx.q, ctx.mode, m_max + 1)


def q_stirling(m: int, s: int, ctx: QContext):
    """Coefficient of ``[k]_q^s`` in ``[k]_q [k+1]_q ... [k+m-1]_q``."""
    if m < 0 or s < 0:
        raise DomainError("q_stirling needs m, s >= 0")
    if s > m:
        return ctx.mode.zero
    return stirling_table(m, ctx)[m][s]
