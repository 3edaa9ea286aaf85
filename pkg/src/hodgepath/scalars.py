"""Exact scalars: rationals and quadratic imaginary extensions Q(sqrt d), d < 0.

A Scalar is a + b*sqrt(d) with a, b reduced Fractions.  Conjugation flips the
sign of b and fixes exactly the rational sub-line, which is what the Hodge
purity checks need (floating point cannot certify F^p ∩ conj(F^q) = 0).
"""

from __future__ import annotations

from fractions import Fraction


class ScalarError(ValueError):
    pass


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise ScalarError(f"cannot read rational from {x!r}")


class Scalar:
    """Element a + b*sqrt(d) of Q(sqrt d); b = 0 is a plain rational."""

    __slots__ = ("re", "im", "d")

    def __init__(self, re=0, im=0, d: int = -1):
        self.re = _frac(re)
        self.im = _frac(im)
        if d >= 0:
            raise ScalarError(f"quadratic extension needs d < 0, got {d}")
        self.d = d

    # -- helpers -----------------------------------------------------------

    def _join(self, other) -> "Scalar":
        if not isinstance(other, Scalar):
            return Scalar(other, 0, self.d)
        if other.im and self.im and other.d != self.d:
            raise ScalarError(f"mixing Q(sqrt {self.d}) with Q(sqrt {other.d})")
        return other

    def _d_with(self, other: "Scalar") -> int:
        return self.d if self.im else other.d

    @property
    def is_rational(self) -> bool:
        return self.im == 0

    @property
    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        o = self._join(other)
        return Scalar(self.re + o.re, self.im + o.im, self._d_with(o))

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.re, -self.im, self.d)

    def __sub__(self, other):
        return self + (-self._join(other))

    def __rsub__(self, other):
        return (-self) + self._join(other)

    def __mul__(self, other):
        o = self._join(other)
        d = self._d_with(o)
        return Scalar(self.re * o.re + self.im * o.im * d,
                      self.re * o.im + self.im * o.re, d)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        # 1/(a+b√d) = (a−b√d)/(a²−b²d); the norm is positive unless zero.
        n = self.re * self.re - self.im * self.im * self.d
        if n == 0:
            raise ZeroDivisionError("scalar division by zero")
        return Scalar(self.re / n, -self.im / n, self.d)

    def __truediv__(self, other):
        return self * self._join(other).inverse()

    def __rtruediv__(self, other):
        return self._join(other) * self.inverse()

    def conjugate(self) -> "Scalar":
        return Scalar(self.re, -self.im, self.d)

    # -- comparison / hashing ------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        if not isinstance(other, Scalar):
            return NotImplemented
        if self.re != other.re or self.im != other.im:
            return False
        return self.im == 0 or self.d == other.d

    def __hash__(self):
        return hash((self.re, self.im, self.d if self.im else None))

    def __bool__(self):
        return not self.is_zero

    def __repr__(self):
        return f"Scalar({self})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        root = "i" if self.d == -1 else f"sqrt({self.d})"
        if self.re == 0:
            return f"{self.im}*{root}"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}*{root}"


class Field:
    """Scalar field of an algebra: QQ, or the quadratic extension Q(sqrt d)."""

    __slots__ = ("d",)

    def __init__(self, d: int | None = None):
        if d is not None and d >= 0:
            raise ScalarError(f"quadratic extension needs d < 0, got {d}")
        self.d = d

    @property
    def is_rational(self) -> bool:
        return self.d is None

    def scalar(self, re=0, im=0) -> Scalar:
        if self.d is None:
            if _frac(im) != 0:
                raise ScalarError("imaginary part over QQ")
            return Scalar(re, 0, -1)
        return Scalar(re, im, self.d)

    def zero(self) -> Scalar:
        return self.scalar(0)

    def one(self) -> Scalar:
        return self.scalar(1)

    def sqrt_d(self) -> Scalar:
        if self.d is None:
            raise ScalarError("QQ has no adjoined square root")
        return Scalar(0, 1, self.d)

    def contains(self, c: Scalar) -> bool:
        return c.is_rational or (self.d is not None and c.d == self.d)

    def __eq__(self, other):
        return isinstance(other, Field) and self.d == other.d

    def __hash__(self):
        return hash(("Field", self.d))

    def __repr__(self):
        return "QQ" if self.d is None else f"QQ(sqrt {self.d})"

    def describe(self):
        return "Q" if self.d is None else {"sqrt": self.d}


QQ = Field(None)


def field_from_doc(spec) -> Field:
    if spec is None or spec == "Q":
        return QQ
    if isinstance(spec, dict) and set(spec) == {"sqrt"}:
        return Field(int(spec["sqrt"]))
    raise ScalarError(f"unknown field description {spec!r}")
