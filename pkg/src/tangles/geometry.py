"""Exact arithmetic over Q[sqrt 3] and the pi-linear area type.

Everything geometric in the package bottoms out here: coordinates are
``a + b*sqrt(3)`` with rational ``a, b`` and areas are ``alg + pi_coeff*pi``
with both parts in Q[sqrt 3].  Python integers are unbounded, so coefficient
growth never overflows.
"""
from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple, Union

import mpmath

Rational = Fraction
Scalar = Union["QSqrt3", Fraction, int]


def _sign(x) -> int:
    return (x > 0) - (x < 0)


class QSqrt3:
    """The number ``a + b*sqrt(3)`` with ``a, b`` rational."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = Fraction(a)
        self.b = Fraction(b)

    @classmethod
    def coerce(cls, x: Scalar) -> "QSqrt3":
        if isinstance(x, QSqrt3):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x, 0)
        raise TypeError(f"cannot interpret {x!r} as an element of Q[sqrt 3]")

    def __add__(self, other):
        try:
            o = QSqrt3.coerce(other)
        except TypeError:
            return NotImplemented
        return QSqrt3(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            o = QSqrt3.coerce(other)
        except TypeError:
            return NotImplemented
        return QSqrt3(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return QSqrt3.coerce(other) - self

    def __mul__(self, other):
        try:
            o = QSqrt3.coerce(other)
        except TypeError:
            return NotImplemented
        return QSqrt3(self.a * o.a + 3 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def __neg__(self):
        return QSqrt3(-self.a, -self.b)

    def __pos__(self):
        return self

    def conjugate(self) -> "QSqrt3":
        return QSqrt3(self.a, -self.b)

    def norm(self) -> Fraction:
        """Field norm ``a^2 - 3 b^2``; zero only for zero."""
        return self.a * self.a - 3 * self.b * self.b

    def __truediv__(self, other):
        o = QSqrt3.coerce(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q[sqrt 3]")
        num = self * o.conjugate()
        return QSqrt3(num.a / n, num.b / n)

    def sign(self) -> int:
        sa, sb = _sign(self.a), _sign(self.b)
        if sa == 0 or sb == 0 or sa == sb:
            return sa or sb
        # mixed signs: compare a^2 against 3 b^2
        return sb * _sign(3 * self.b * self.b - self.a * self.a)

    def __eq__(self, other):
        try:
            o = QSqrt3.coerce(other)
        except TypeError:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __float__(self):
        return float(self.a) + float(self.b) * 3 ** 0.5

    def __repr__(self):
        return f"QSqrt3({self.a}, {self.b})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}√3"
        op = "+" if self.b > 0 else "-"
        return f"{self.a} {op} {abs(self.b)}√3"

    def to_json(self) -> list[str]:
        return [str(self.a), str(self.b)]

    @classmethod
    def from_json(cls, obj) -> "QSqrt3":
        if not isinstance(obj, (list, tuple)) or len(obj) != 2:
            raise ValueError(f"expected [a, b] rational pair, got {obj!r}")
        return cls(Fraction(obj[0]), Fraction(obj[1]))


def qs3_arith(op: str, lhs: QSqrt3, rhs: QSqrt3 | None = None) -> QSqrt3:
    if op == "add":
        return lhs + rhs
    if op == "sub":
        return lhs - rhs
    if op == "mul":
        return lhs * rhs
    if op == "neg":
        return -lhs
    raise ValueError(f"unknown operation {op!r}")


def qs3_sign(x: QSqrt3) -> int:
    return x.sign()


ZERO = QSqrt3(0, 0)
ONE = QSqrt3(1, 0)
SQRT3 = QSqrt3(0, 1)


class ExactPoint(NamedTuple):
    x: QSqrt3
    y: QSqrt3

    def __add__(self, other):  # type: ignore[override]
        return ExactPoint(self.x + other.x, self.y + other.y)

    def __sub__(self, other):
        return ExactPoint(self.x - other.x, self.y - other.y)

    def scale(self, k: Scalar) -> "ExactPoint":
        return ExactPoint(self.x * k, self.y * k)

    def key(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.x.a, self.x.b, self.y.a, self.y.b)

    def to_float(self) -> tuple[float, float]:
        return float(self.x), float(self.y)

    def to_json(self):
        return [self.x.to_json(), self.y.to_json()]

    @classmethod
    def from_json(cls, obj) -> "ExactPoint":
        if not isinstance(obj, (list, tuple)) or len(obj) != 2:
            raise ValueError(f"expected [x, y] point, got {obj!r}")
        return cls(QSqrt3.from_json(obj[0]), QSqrt3.from_json(obj[1]))


def point(x: Scalar, y: Scalar) -> ExactPoint:
    return ExactPoint(QSqrt3.coerce(x), QSqrt3.coerce(y))


def midpoint(p: ExactPoint, q: ExactPoint) -> ExactPoint:
    half = Fraction(1, 2)
    return ExactPoint((p.x + q.x) * half, (p.y + q.y) * half)


def dot(p: ExactPoint, q: ExactPoint) -> QSqrt3:
    return p.x * q.x + p.y * q.y


def cross(p: ExactPoint, q: ExactPoint) -> QSqrt3:
    return p.x * q.y - p.y * q.x


def dist_squared(p: ExactPoint, q: ExactPoint) -> QSqrt3:
    d = p - q
    return dot(d, d)


def point_ops(kind: str, p: ExactPoint, q: ExactPoint):
    if kind == "midpoint":
        return midpoint(p, q)
    if kind == "dist_squared":
        return dist_squared(p, q)
    if kind == "sub":
        return p - q
    if kind == "dot":
        return dot(p, q)
    if kind == "cross":
        return cross(p, q)
    raise ValueError(f"unknown point operation {kind!r}")


class AreaValue(NamedTuple):
    """``alg + pi_coeff * pi`` in units of r^2."""

    alg: QSqrt3
    pi_coeff: QSqrt3

    @classmethod
    def of(cls, a=0, b=0, pa=0, pb=0) -> "AreaValue":
        return cls(QSqrt3(a, b), QSqrt3(pa, pb))

    def __add__(self, other):  # type: ignore[override]
        return AreaValue(self.alg + other.alg, self.pi_coeff + other.pi_coeff)

    def scale(self, k: Scalar) -> "AreaValue":
        return AreaValue(self.alg * k, self.pi_coeff * k)

    def approx(self, digits: int = 15) -> str:
        with mpmath.workdps(digits + 10):
            s3 = mpmath.sqrt(3)
            val = (mpmath.mpf(self.alg.a.numerator) / self.alg.a.denominator
                   + mpmath.mpf(self.alg.b.numerator) / self.alg.b.denominator * s3
                   + (mpmath.mpf(self.pi_coeff.a.numerator) / self.pi_coeff.a.denominator
                      + mpmath.mpf(self.pi_coeff.b.numerator) / self.pi_coeff.b.denominator * s3)
                   * mpmath.pi)
            return mpmath.nstr(val, digits)

    def __str__(self):
        alg = self.alg
        op = "+" if alg.b >= 0 else "-"
        s = f"{alg.a} {op} {abs(alg.b)}√3"
        pc = self.pi_coeff
        op = "+" if pc.a >= 0 else "-"
        s += f" {op} {abs(pc.a)}π"
        if pc.b != 0:
            op = "+" if pc.b > 0 else "-"
            s += f" {op} {abs(pc.b)}√3π"
        return s

    def to_json(self):
        return {"alg": self.alg.to_json(), "pi": self.pi_coeff.to_json()}

    @classmethod
    def from_json(cls, obj) -> "AreaValue":
        return cls(QSqrt3.from_json(obj["alg"]), QSqrt3.from_json(obj["pi"]))


def area_value_ops(kind: str, lhs: AreaValue, rhs=None):
    if kind == "add":
        return lhs + rhs
    if kind == "scale":
        return lhs.scale(rhs)
    if kind == "eq":
        return lhs == rhs
    if kind == "approx":
        return lhs.approx(6 if rhs is None else rhs)
    raise ValueError(f"unknown area operation {kind!r}")
