"""Exact arithmetic in the Eisenstein integers Z[w], w a primitive cube root of unity.

Elements are stored in the basis {1, w} with w**2 = -1 - w. Python integers
never overflow, so every operation here is exact at any size.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from enum import Enum

SQRT3_2 = math.sqrt(3.0) / 2.0


class Reality(str, Enum):
    ZERO = "zero"
    REAL = "real"
    PURELY_IMAGINARY = "purely_imaginary"
    GENERIC = "generic"


@dataclass(frozen=True, order=True)
class EisensteinInt:
    """The number ``a + b*w``."""

    a: int = 0
    b: int = 0

    @classmethod
    def coerce(cls, x: EisensteinInt | int) -> EisensteinInt:
        if isinstance(x, EisensteinInt):
            return x
        if isinstance(x, int):
            return cls(x, 0)
        raise TypeError(f"cannot coerce {type(x).__name__} to EisensteinInt")

    def __add__(self, other: EisensteinInt | int) -> EisensteinInt:
        o = EisensteinInt.coerce(other)
        return EisensteinInt(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other: EisensteinInt | int) -> EisensteinInt:
        o = EisensteinInt.coerce(other)
        return EisensteinInt(self.a - o.a, self.b - o.b)

    def __rsub__(self, other: EisensteinInt | int) -> EisensteinInt:
        return EisensteinInt.coerce(other) - self

    def __neg__(self) -> EisensteinInt:
        return EisensteinInt(-self.a, -self.b)

    def __mul__(self, other: EisensteinInt | int) -> EisensteinInt:
        o = EisensteinInt.coerce(other)
        # (a + bw)(c + dw) = ac + (ad + bc)w + bd w^2,  w^2 = -1 - w
        bd = self.b * o.b
        return EisensteinInt(self.a * o.a - bd, self.a * o.b + self.b * o.a - bd)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> EisensteinInt:
        if e < 0:
            raise ValueError("negative powers are not Eisenstein integers in general")
        result, base = ONE, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __bool__(self) -> bool:
        return bool(self.a or self.b)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self.b == 0 and self.a == other
        if isinstance(other, EisensteinInt):
            return self.a == other.a and self.b == other.b
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.a, self.b))

    def conj(self) -> EisensteinInt:
        # conj(w) = w^2 = -1 - w
        return EisensteinInt(self.a - self.b, -self.b)

    def norm(self) -> int:
        """x * conj(x), always a nonnegative rational integer."""
        return self.a * self.a - self.a * self.b + self.b * self.b

    def exact_div(self, other: EisensteinInt | int) -> EisensteinInt:
        """Divide in Z[w]; raises ArithmeticError when the quotient is not integral."""
        o = EisensteinInt.coerce(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Z[w]")
        num = self * o.conj()
        if num.a % n or num.b % n:
            raise ArithmeticError(f"{self} is not divisible by {o} in Z[w]")
        return EisensteinInt(num.a // n, num.b // n)

    def reality_class(self) -> Reality:
        if not self:
            return Reality.ZERO
        if self.b == 0:
            return Reality.REAL
        # real part of a + bw is a - b/2
        if 2 * self.a == self.b:
            return Reality.PURELY_IMAGINARY
        return Reality.GENERIC

    def is_real(self) -> bool:
        return self.b == 0

    def to_complex(self) -> tuple[float, float]:
        """Approximate (re, im) pair; for diagnostics only, never exact decisions."""
        return (self.a - self.b / 2.0, self.b * SQRT3_2)

    def __complex__(self) -> complex:
        re_, im_ = self.to_complex()
        return complex(re_, im_)

    def __str__(self) -> str:
        return f"{self.a}{self.b:+d}w"

    def __repr__(self) -> str:
        return f"EisensteinInt({self.a}, {self.b})"

    def to_json(self) -> dict:
        return {"a": self.a, "b": self.b}


_TEXT_RE = re.compile(r"^\s*([+-]?\d+)\s*([+-])\s*(\d+)\s*w\s*$")


def parse(text: str) -> EisensteinInt:
    """Inverse of ``str``: accepts ``"a+bw"`` / ``"a-bw"``, e.g. ``"-1-1w"``."""
    m = _TEXT_RE.match(text)
    if m is None:
        raise ValueError(f"not an Eisenstein integer literal: {text!r}")
    b = int(m.group(3))
    return EisensteinInt(int(m.group(1)), -b if m.group(2) == "-" else b)


def from_json(obj: dict) -> EisensteinInt:
    return EisensteinInt(int(obj["a"]), int(obj["b"]))


ZERO = EisensteinInt(0, 0)
ONE = EisensteinInt(1, 0)
OMEGA = EisensteinInt(0, 1)
OMEGA2 = EisensteinInt(-1, -1)
_ROOTS = (ONE, OMEGA, OMEGA2)


def unit_root(j: int) -> EisensteinInt:
    """w**(j mod 3)."""
    return _ROOTS[j % 3]


def reality_class(x: EisensteinInt) -> Reality:
    return x.reality_class()


def conj(x: EisensteinInt) -> EisensteinInt:
    return x.conj()


def embed_complex(x: EisensteinInt) -> tuple[float, float]:
    return x.to_complex()
