"""Analytic functions on disks as truncated power series with rigorous tail bounds.

Also home of the circle sup-norm and of the explicit majorants of the
convergence and Voronovskaja estimates, which are weighted sums of
``|a_m|`` over the Taylor coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .errors import ConvergenceError, DomainError, HypothesisError
from .numeric import FLOAT64, NumericMode, RationalComplex, exact_sqrt
from .qcore import QContext, q_integer

__all__ = [
    "PowerSeries",
    "DiskSpec",
    "builtin_series",
    "parse_series_spec",
    "evaluate",
    "second_derivative_eval",
    "sup_norm_on_circle",
    "convergence_majorant",
    "theorem1_bound",
    "theorem2_bound",
]

ENTIRE_FACTORIAL = "entire-factorial"
GEOMETRIC = "geometric"
POLYNOMIAL = "polynomial"

DEFAULT_TRUNCATION = 64
DEFAULT_SAMPLES = 256
_TAIL_REL_TOL = Fraction(1, 2**64)
_TAIL_MAX_TERMS = 100_000


@dataclass(frozen=True)
class PowerSeries:
    """``f(z) = sum a_m z^m`` stored as ``a_0 .. a_N`` plus a rule for the rest.

    ``coefficient(m)`` is available for every ``m``: stored values for
    ``m <= N`` and ``generator(m)`` beyond (zero for polynomials). The tail
    majorants assume the term ratios ``|a_{m+1}| w(m+1) rho / (|a_m| w(m))``
    are eventually nonincreasing, which holds for the factorial and geometric
    families with polynomial weights ``w``.
    """

    coeffs: tuple
    radius: object
    tail_kind: str
    name: str
    mode: NumericMode = FLOAT64
    generator: Callable[[int], object] | None = field(default=None, compare=False, repr=False)
    spec: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.tail_kind not in (ENTIRE_FACTORIAL, GEOMETRIC, POLYNOMIAL):
            raise DomainError(f"unknown tail kind {self.tail_kind!r}")
        if self.tail_kind != POLYNOMIAL and self.generator is None:
            raise DomainError("non-polynomial series need a coefficient generator")

    @property
    def N(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, m: int):
        if m < 0:
            raise DomainError("negative coefficient index")
        if m <= self.N:
            return self.coeffs[m]
        if self.tail_kind == POLYNOMIAL:
            return self.mode.zero
        return self.generator(m)

    def is_linear(self) -> bool:
        return self.tail_kind == POLYNOMIAL and all(c == 0 for c in self.coeffs[2:])

    def in_domain(self, z) -> bool:
        return self.radius == math.inf or abs(z) < self.radius

    def _check(self, z):
        if not self.in_domain(z):
            raise DomainError(f"|z| = {float(abs(z)):.6g} is outside the disk of radius {self.radius}")

    def __call__(self, z):
        """Horner evaluation of the stored partial sum."""
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * z + c
        return acc

    def evaluate(self, z):
        """``(value, uncertainty)`` with the uncertainty bounding the discarded tail."""
        self._check(z)
        return self(z), self.tail_bound(self.N, abs(z))

    def derivative_at_zero(self):
        return self.coefficient(1)

    def tail_bound(self, m: int, r):
        """Upper bound of ``sum_{j>m} |a_j| r^j``."""
        return self.weighted_abs_sum(m + 1, lambda j: 1, r)

    def abs_coefficient(self, j: int):
        return self.mode.abs_upper(self.coefficient(j))

    def weighted_abs_sum(self, start: int, weight: Callable[[int], int], rho):
        """Upper bound of ``sum_{j>=start} |a_j| weight(j) rho^j``.

        Stored terms are summed explicitly; past them terms are generated until
        the ratio test certifies a geometric majorant for the remainder (valid
        when the term ratios are eventually nonincreasing, as for every builtin
        family). Float results are padded for the rounding of the summation.
        """
        mode = self.mode
        rho = _upper_scalar(mode, rho)
        if self.radius != math.inf and not rho < self.radius:
            raise DomainError("weighted sum diverges: rho is not inside the radius of convergence")
        total, count = self._weighted_abs_sum(start, weight, rho)
        if mode.is_exact:
            return total
        return total * (1 + 4 * (count + 2) * mode.eps())

    def _weighted_abs_sum(self, start, weight, rho):
        mode = self.mode
        a = self.abs_coefficient
        total = mode.zero
        last_stored = self.N
        count = 0
        for j in range(start, last_stored + 1):
            total += a(j) * weight(j) * rho**j
            count += 1
        if self.tail_kind == POLYNOMIAL or rho == 0:
            return total, count
        j = max(start, last_stored + 1)
        term = a(j) * weight(j) * rho**j
        for _ in range(_TAIL_MAX_TERMS):
            nxt = a(j + 1) * weight(j + 1) * rho ** (j + 1)
            count += 1
            if term == 0 and nxt == 0 and not mode.is_exact:
                # generated coefficients have underflowed the float range
                return total, count
            if term > 0 and nxt < term:
                kappa = nxt / term
                majorant = nxt / (1 - kappa)
                if majorant <= _TAIL_REL_TOL * (total + term) or (total + term == 0 and nxt == 0):
                    return total + term + majorant, count
            total += term
            term = nxt
            j += 1
        raise ConvergenceError(f"tail of {self.name} did not settle within {_TAIL_MAX_TERMS} terms")

    def converted(self, mode: NumericMode) -> "PowerSeries":
        """The same function with coefficients in another numeric mode."""
        if mode == self.mode:
            return self
        if self.spec is not None:
            return builtin_series(self.spec, self.N, mode)
        coeffs = tuple(mode.to_complex(c) if _is_complex(c) else mode.scalar(c) for c in self.coeffs)
        gen = None
        if self.generator is not None:
            gen = lambda m, g=self.generator: mode.scalar(g(m))  # noqa: E731
        return PowerSeries(coeffs, self.radius, self.tail_kind, self.name, mode, gen)

    def derivative_coeffs(self, order: int = 1) -> tuple:
        out = list(self.coeffs)
        for _ in range(order):
            out = [c * j for j, c in enumerate(out)][1:] or [self.mode.zero]
        return tuple(out)


def _upper_scalar(mode: NumericMode, x):
    """``x`` as a mode scalar, rounded upward when exact mode receives a float."""
    if mode.is_exact and isinstance(x, float):
        return Fraction(x) * (1 + Fraction(1, 2**50))
    return mode.scalar(x)


def _is_complex(c) -> bool:
    return isinstance(c, (complex, RationalComplex)) or type(c).__name__ == "mpc"


@dataclass(frozen=True)
class DiskSpec:
    """Closed disk ``|z| <= r`` with ``r >= 1`` probed at ``samples`` boundary points."""

    r: object = 1
    samples: int = DEFAULT_SAMPLES

    def __post_init__(self):
        if not self.r >= 1:
            raise DomainError("disk radius r must satisfy r >= 1")
        if self.samples < 16:
            raise DomainError("at least 16 circle samples are required")


def _factorial_generator(mode: NumericMode):
    def gen(m: int):
        return mode.scalar(Fraction(1, math.factorial(m)))

    return gen


def parse_series_spec(text: str) -> tuple[str, list[str]]:
    """Split ``"geometric:2"`` into ``("geometric", ["2"])``."""
    head, _, rest = text.strip().partition(":")
    args = [a for a in rest.split(",") if a.strip()] if rest else []
    return head.strip().lower(), args


def builtin_series(name: str, N: int = DEFAULT_TRUNCATION, mode: NumericMode = FLOAT64) -> PowerSeries:
    """Test-function catalogue.

    ``name`` is ``exp``, ``monomial:M``, ``geometric:A`` (the function
    ``1/(A - z)``, needs ``|A| > 1``) or ``poly:C0,C1,...``. ``N`` is the
    number of stored coefficients minus one for the non-polynomial families.
    """
    head, params = parse_series_spec(name)
    spec = head + (":" + ",".join(params) if params else "")
    if head == "exp":
        gen = _factorial_generator(mode)
        coeffs = tuple(gen(m) for m in range(N + 1))
        return PowerSeries(coeffs, math.inf, ENTIRE_FACTORIAL, "exp", mode, gen, spec)
    if head == "monomial":
        if len(params) != 1:
            raise DomainError("monomial needs its degree, e.g. monomial:3")
        m = int(params[0])
        if m < 0:
            raise DomainError("monomial degree must be >= 0")
        coeffs = tuple(mode.one if j == m else mode.zero for j in range(m + 1))
        return PowerSeries(coeffs, math.inf, POLYNOMIAL, f"e_{m}", mode, None, spec)
    if head == "geometric":
        if len(params) != 1:
            raise DomainError("geometric needs its pole, e.g. geometric:2")
        a = mode.scalar(params[0])
        if not abs(a) > 1:
            raise DomainError("geometric(a) needs |a| > 1")
        inv = 1 / a

        def gen(m: int, inv=inv):
            return inv ** (m + 1)

        coeffs = tuple(gen(m) for m in range(N + 1))
        return PowerSeries(coeffs, abs(a), GEOMETRIC, f"1/({params[0]}-z)", mode, gen, spec)
    if head == "poly":
        if not params:
            raise DomainError("poly needs coefficients, e.g. poly:3,-2")
        coeffs = tuple(mode.scalar(p) for p in params)
        return PowerSeries(coeffs, math.inf, POLYNOMIAL, "poly(" + ",".join(params) + ")", mode, None, spec)
    raise DomainError(f"unknown series {name!r}; expected exp, monomial:M, geometric:A or poly:C0,C1,...")


def evaluate(f: PowerSeries, z):
    """Value of ``f`` at ``z`` and a bound on the truncation error."""
    return f.evaluate(z)


def second_derivative_eval(f: PowerSeries, z, with_error: bool = False):
    """``f''(z)`` from the stored coefficients."""
    f._check(z)
    d2 = f.derivative_coeffs(2)
    acc = d2[-1]
    for c in reversed(d2[:-1]):
        acc = acc * z + c
    if not with_error:
        return acc
    r = abs(z)
    if r == 0:
        err = f.mode.zero
    else:
        err = f.weighted_abs_sum(f.N + 1, lambda j: j * (j - 1), r) / (r * r)
    return acc, err


def sup_norm_on_circle(g: Callable, disk: DiskSpec, mode: NumericMode = FLOAT64):
    """Largest ``|g(z)|`` over the sample points of the circle ``|z| = disk.r``.

    By the maximum modulus principle this probes the disk sup-norm of an
    analytic ``g`` from below; it increases with the sample count.
    """
    pts = mode.circle_points(disk.r, disk.samples)
    if mode.is_exact:
        best = Fraction(0)
        for z in pts:
            v = g(z)
            a2 = v.abs2() if isinstance(v, RationalComplex) else Fraction(v) ** 2
            if a2 > best:
                best = a2
        return exact_sqrt(best)
    return max(abs(g(z)) for z in pts)


def _check_radius(f: PowerSeries, rho, what: str):
    if f.radius != math.inf and not rho < f.radius:
        raise HypothesisError(f"requires {what} < R (hypothesis of the estimate); got {float(rho):.6g} >= {float(f.radius):.6g}")


def theorem1_bound(f: PowerSeries, ctx: QContext, n: int, disk: DiskSpec):
    """Majorant ``r(1+r)/[n+1]_q * sum_{m>=2} |a_m| m(m-1) (q r)^(m-2)`` of ``||U_n f - f||_r``."""
    f = f.converted(ctx.mode)
    r = ctx.scalar(disk.r)
    rho = ctx.q * r
    _check_radius(f, rho, "q*r")
    s = f.weighted_abs_sum(2, lambda m: m * (m - 1), rho) / (rho * rho)
    return r * (1 + r) / q_integer(n + 1, ctx) * s


def convergence_majorant(f: PowerSeries, ctx: QContext, n: int, disk: DiskSpec):
    """``q`` times :func:`theorem1_bound`.

    The stepwise estimate ``|U(e_m) - e_m| <= 2q(m-1) r(1+r)(qr)^(m-2)/[n+1]_q + r|U(e_{m-1}) - e_{m-1}|``
    sums to ``q m(m-1) (qr)^(m-2) r(1+r)/[n+1]_q``.  Without the extra ``q`` the bound
    fails already for ``e_2``, whose error is ``(1+q) z(1-z)/[n+1]_q``.
    """
    return ctx.q * theorem1_bound(f, ctx, n, disk)


def theorem2_bound(f: PowerSeries, ctx: QContext, n: int, disk: DiskSpec):
    """Majorant ``4r^2(1+r)^2/[n+1]_q^2 * sum_{m>=3} |a_m| (m-1)^2 (m-2)^2 (q^2 r)^(m-2)``."""
    f = f.converted(ctx.mode)
    r = ctx.scalar(disk.r)
    rho = ctx.q * ctx.q * r
    _check_radius(f, rho, "q^2*r")
    s = f.weighted_abs_sum(3, lambda m: (m - 1) ** 2 * (m - 2) ** 2, rho) / (rho * rho)
    qn1 = q_integer(n + 1, ctx)
    return 4 * r * r * (1 + r) ** 2 / (qn1 * qn1) * s


def coefficient_abs_sum(f: PowerSeries):
    """``sum |a_m|``: a bound for ``|f|`` on the closed unit disk."""
    return f.weighted_abs_sum(0, lambda m: 1, f.mode.one)
