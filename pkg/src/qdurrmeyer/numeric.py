"""Numeric modes: exact rationals or binary floating point of chosen precision.

Every algorithm in the package is written against plain arithmetic operators,
so the same code runs on :class:`fractions.Fraction` (exact mode), Python
``float``/``complex`` (53-bit mode) or :mod:`mpmath` numbers bound to a
private context (any other precision).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from mpmath.ctx_mp import MPContext
from mpmath.ctx_mp_python import _mpc

from .errors import DomainError

__all__ = [
    "RationalComplex",
    "NumericMode",
    "EXACT",
    "FLOAT64",
    "exact_sqrt",
    "parse_mode",
]


def exact_sqrt(x: Fraction):
    """Square root of a non-negative rational; a Fraction when it is a perfect square."""
    x = Fraction(x)
    if x < 0:
        raise DomainError("square root of a negative number")
    rn, rd = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if rn * rn == x.numerator and rd * rd == x.denominator:
        return Fraction(rn, rd)
    return math.sqrt(x)


class RationalComplex:
    """Complex number with exact rational parts (an element of Q(i))."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def _coerce(other):
        if isinstance(other, RationalComplex):
            return other
        if isinstance(other, (int, Fraction)):
            return RationalComplex(other, 0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalComplex(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalComplex(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalComplex(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalComplex(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = o.abs2()
        if d == 0:
            raise ZeroDivisionError("RationalComplex division by zero")
        return RationalComplex(
            (self.re * o.re + self.im * o.im) / d, (self.im * o.re - self.re * o.im) / d
        )

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return RationalComplex(1) / (self ** (-k))
        result, base = RationalComplex(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __neg__(self):
        return RationalComplex(-self.re, -self.im)

    def __pos__(self):
        return self

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __abs__(self):
        if self.im == 0:
            return abs(self.re)
        if self.re == 0:
            return abs(self.im)
        return exact_sqrt(self.abs2())

    def conjugate(self):
        return RationalComplex(self.re, -self.im)

    @property
    def real(self):
        return self.re

    @property
    def imag(self):
        return self.im

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"RationalComplex({self.re!s}, {self.im!s})"

    def __str__(self):
        return f"{self.re},{self.im}"


@lru_cache(maxsize=None)
def _mp_context(bits: int) -> MPContext:
    ctx = MPContext()
    ctx.prec = bits
    return ctx


@dataclass(frozen=True)
class NumericMode:
    """Arithmetic flavour used by a computation.

    ``kind`` is ``"exact"`` (rationals, results are exact) or ``"float"``
    with ``precision_bits`` of binary mantissa. 53 bits maps onto Python floats,
    anything larger onto an mpmath context of that precision.
    """

    kind: str = "float"
    precision_bits: int = 53

    def __post_init__(self):
        if self.kind not in ("exact", "float"):
            raise DomainError(f"unknown numeric kind {self.kind!r}")
        if self.kind == "float" and self.precision_bits < 53:
            raise DomainError("float precision_bits must be >= 53")

    @classmethod
    def exact(cls) -> "NumericMode":
        return cls("exact", 0)

    @classmethod
    def float(cls, bits: int = 53) -> "NumericMode":
        return cls("float", bits)

    @property
    def is_exact(self) -> bool:
        return self.kind == "exact"

    @property
    def mp(self) -> MPContext | None:
        if self.kind == "float" and self.precision_bits > 53:
            return _mp_context(self.precision_bits)
        return None

    @property
    def label(self) -> str:
        if self.is_exact:
            return "rational"
        if self.precision_bits == 53:
            return "float"
        return f"float:{self.precision_bits}"

    # conversions -------------------------------------------------------

    def scalar(self, x):
        """Convert a real number (int, Fraction, float, str, mpf) to this mode."""
        if isinstance(x, RationalComplex) or isinstance(x, complex):
            if x.imag != 0:
                raise DomainError(f"expected a real number, got {x!r}")
            x = x.real
        if isinstance(x, str):
            x = x.strip()
            if self.is_exact:
                return Fraction(x)
            if "/" in x:
                x = Fraction(x)
            elif self.mp is not None:
                return self.mp.mpf(x)
            else:
                return float(x)
        if self.is_exact:
            if isinstance(x, (int, Fraction)):
                return Fraction(x)
            raise DomainError(f"exact mode needs a rational value, got {x!r}")
        ctx = self.mp
        if ctx is None:
            return float(x)
        if isinstance(x, Fraction):
            return ctx.mpf(x.numerator) / x.denominator
        return ctx.mpf(x)

    def complex(self, re, im=0):
        if self.is_exact:
            return RationalComplex(self.scalar(re), self.scalar(im))
        ctx = self.mp
        if ctx is None:
            return complex(float(self.scalar(re)), float(self.scalar(im)))
        return ctx.mpc(self.scalar(re), self.scalar(im))

    def to_complex(self, z):
        """Convert any real or complex number to this mode's complex type."""
        if isinstance(z, RationalComplex):
            return self.complex(z.re, z.im)
        if isinstance(z, (int, Fraction, str)):
            return self.complex(z, 0)
        if isinstance(z, float):
            return self.complex(z, 0)
        if isinstance(z, complex):
            return self.complex(z.real, z.imag)
        if hasattr(z, "imag") and hasattr(z, "real"):
            return self.complex(z.real, z.imag)
        raise DomainError(f"cannot interpret {z!r} as a complex number")

    def to_float(self, x) -> float:
        if isinstance(x, RationalComplex):
            return float(abs(x)) if x.im else float(x.re)
        return float(x)

    @property
    def zero(self):
        return self.scalar(0)

    @property
    def one(self):
        return self.scalar(1)

    def abs_upper(self, x):
        """An upper bound of ``|x|`` in this mode (exact value when representable)."""
        if isinstance(x, RationalComplex):
            v = abs(x)
            if isinstance(v, Fraction):
                return v
            return abs(x.re) + abs(x.im)
        return abs(x)

    def eps(self):
        """Unit roundoff of the mode (zero for exact arithmetic)."""
        if self.is_exact:
            return Fraction(0)
        return self.scalar(2) ** (-self.precision_bits)

    # circle sampling ---------------------------------------------------

    def circle_points(self, r, samples: int) -> list:
        """``samples`` points on the circle ``|z| = r``, nested under doubling.

        Angles are ``2*pi*k/samples`` with the fraction ``k/samples`` reduced
        first, so the points for ``2S`` contain the points for ``S`` bit for
        bit. In exact mode each point is a rational point of the circle
        (rational tangent half-angle parametrisation), so ``|z| = r`` holds
        exactly and the directions are within 1e-9 of equispaced.
        """
        if samples <= 0:
            raise DomainError("samples must be positive")
        r = self.scalar(r)
        pts = []
        for k in range(samples):
            frac = Fraction(k, samples)
            if self.is_exact:
                pts.append(_rational_circle_point(r, frac))
            elif self.mp is not None:
                ctx = self.mp
                theta = 2 * ctx.pi * frac.numerator / frac.denominator
                pts.append(ctx.mpc(r * ctx.cos(theta), r * ctx.sin(theta)))
            else:
                theta = math.tau * frac.numerator / frac.denominator
                pts.append(complex(r * math.cos(theta), r * math.sin(theta)))
        return pts

    # summation ---------------------------------------------------------

    def fsum(self, values: Iterable):
        """Sum with compensation in float modes, plain exact sum otherwise."""
        acc = Accumulator(self)
        for v in values:
            acc.add(v)
        return acc.value


def _rational_circle_point(r: Fraction, frac: Fraction) -> RationalComplex:
    # exact axis points first; they carry the extremes of most test functions
    quarter = {Fraction(0): (1, 0), Fraction(1, 4): (0, 1), Fraction(1, 2): (-1, 0), Fraction(3, 4): (0, -1)}
    if frac in quarter:
        c, s = quarter[frac]
        return RationalComplex(r * c, r * s)
    half = math.pi * frac
    # rational points of the circle are dense; use t = tan(theta/2)
    t = Fraction(math.tan(half)).limit_denominator(10**9)
    d = 1 + t * t
    return RationalComplex(r * (1 - t * t) / d, r * 2 * t / d)


class Accumulator:
    """Neumaier-compensated running sum; complex values are split into parts."""

    def __init__(self, mode: NumericMode):
        self.mode = mode
        self._exact = mode.is_exact
        self._re = self._re_c = mode.zero
        self._im = self._im_c = mode.zero
        self._total = mode.zero
        self._complex = False

    @staticmethod
    def _two_sum(s, c, x):
        t = s + x
        if abs(s) >= abs(x):
            c = c + ((s - t) + x)
        else:
            c = c + ((x - t) + s)
        return t, c

    def add(self, x) -> None:
        if self._exact:
            self._total = self._total + x
            return
        if isinstance(x, (complex, _mpc)):
            self._complex = True
            self._re, self._re_c = self._two_sum(self._re, self._re_c, x.real)
            self._im, self._im_c = self._two_sum(self._im, self._im_c, x.imag)
        else:
            self._re, self._re_c = self._two_sum(self._re, self._re_c, x)

    @property
    def value(self):
        if self._exact:
            return self._total
        re = self._re + self._re_c
        if not self._complex:
            return re
        im = self._im + self._im_c
        ctx = self.mode.mp
        return complex(re, im) if ctx is None else ctx.mpc(re, im)


EXACT = NumericMode.exact()
FLOAT64 = NumericMode.float(53)


def parse_mode(text: str) -> NumericMode:
    """Parse ``rational``, ``exact``, ``float`` or ``float:BITS``."""
    text = text.strip().lower()
    if text in ("rational", "exact"):
        return EXACT
    if text == "float":
        return FLOAT64
    if text.startswith("float:"):
        try:
            bits = int(text.split(":", 1)[1])
        except ValueError:
            raise DomainError(f"bad precision in mode {text!r}") from None
        return NumericMode.float(bits)
    raise DomainError(f"unknown mode {text!r}; expected rational or float[:BITS]")
