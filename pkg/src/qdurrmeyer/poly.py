"""Dense univariate polynomials over whatever scalar type the numeric mode supplies."""

from __future__ import annotations

from typing import Iterable

__all__ = ["ComplexPoly"]


class ComplexPoly:
    """Polynomial ``sum c_j z^j`` with trailing zero coefficients trimmed.

    Equality is coefficient-wise, which is exact in rational mode. The zero
    polynomial has no coefficients and degree ``-1``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def monomial(cls, m: int, one=1) -> "ComplexPoly":
        return cls([one * 0] * m + [one])

    @classmethod
    def constant(cls, c) -> "ComplexPoly":
        return cls([c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, j: int):
        return self.coeffs[j] if 0 <= j < len(self.coeffs) else 0

    def __call__(self, z):
        if not self.coeffs:
            return z * 0
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * z + c
        return acc

    def __add__(self, other):
        if not isinstance(other, ComplexPoly):
            other = ComplexPoly([other])
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for j, c in enumerate(b):
            out[j] = out[j] + c
        return ComplexPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return ComplexPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, ComplexPoly):
            other = ComplexPoly([other])
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, ComplexPoly):
            if not self.coeffs or not other.coeffs:
                return ComplexPoly()
            out = [self.coeffs[0] * 0] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if a == 0:
                    continue
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
            return ComplexPoly(out)
        return ComplexPoly([c * other for c in self.coeffs])

    def __rmul__(self, other):
        return ComplexPoly([other * c for c in self.coeffs])

    def __truediv__(self, scalar):
        return ComplexPoly([c / scalar for c in self.coeffs])

    def __eq__(self, other):
        if not isinstance(other, ComplexPoly):
            other = ComplexPoly([other])
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def shift(self, k: int) -> "ComplexPoly":
        """Multiply by ``z^k``."""
        if not self.coeffs:
            return self
        return ComplexPoly([self.coeffs[0] * 0] * k + list(self.coeffs))

    def truncated(self, degree: int) -> "ComplexPoly":
        return ComplexPoly(self.coeffs[: degree + 1])

    def q_derivative(self, q) -> "ComplexPoly":
        """Exact q-derivative: ``z^j -> [j]_q z^(j-1)``; the ordinary derivative at ``q = 1``."""
        out = []
        bracket = q * 0  # [0]_q
        power = q**0
        for j, c in enumerate(self.coeffs):
            if j:
                out.append(c * bracket)
            bracket = bracket + power
            power = power * q
        return ComplexPoly(out)

    def max_abs_coefficient(self):
        return max((abs(c) for c in self.coeffs), default=0)

    def __repr__(self):
        return f"ComplexPoly({list(self.coeffs)!r})"

    def __str__(self):
        return ", ".join(str(c) for c in self.coeffs) if self.coeffs else "0"
