# golden_arith.py
"""
Exact arithmetic in the golden-ratio ring Z[tau] and its fraction field Q(tau).

tau = (1 + sqrt(5)) / 2 satisfies tau^2 = tau + 1. Every root coordinate of the
H and GH systems lives in Z[tau]; Gram entries such as tau/2 live in Q(tau).
No floating point is used anywhere, signs are decided with integer arithmetic.
"""

from __future__ import annotations

import re
from functools import total_ordering
from math import gcd
from typing import Optional, Union

IntLike = Union[int, "GoldenInt"]


def _int_sign(x: int) -> int:
    return (x > 0) - (x < 0)


@total_ordering
class GoldenInt:
    """An element a + b*tau of Z[tau]. Immutable and hashable."""

    __slots__ = ("_a", "_b")

    def __init__(self, a: int = 0, b: int = 0) -> None:
        self._a = int(a)
        self._b = int(b)

    @property
    def a(self) -> int:
        return self._a

    @property
    def b(self) -> int:
        return self._b

    @classmethod
    def from_int(cls, x: int) -> GoldenInt:
        return cls(x, 0)

    @classmethod
    def coerce(cls, x: IntLike) -> GoldenInt:
        if isinstance(x, GoldenInt):
            return x
        if isinstance(x, int):
            return cls(x, 0)
        raise TypeError(f"Cannot interpret {x!r} as an element of Z[tau]")

    def __repr__(self) -> str:
        return f"GoldenInt({self._a}, {self._b})"

    def __str__(self) -> str:
        return self.format()

    def format(self, symbol: str = "tau", square: str = "tau^2") -> str:
        """
        Render as "b tau + a" the way the fiber tables print coordinates.

        Args:
            symbol: Spelling of tau ("tau" for machine formats, "τ" for Markdown)
            square: Spelling used for the unit tau + 1

        Returns:
            Strings like "0", "tau", "tau^2", "2tau+1", "tau-1"
        """
        a, b = self._a, self._b
        if b == 0:
            return str(a)
        if a == 1 and b == 1:
            return square
        if b == 1:
            head = symbol
        elif b == -1:
            head = f"-{symbol}"
        else:
            head = f"{b}{symbol}"
        if a == 0:
            return head
        return f"{head}{a:+d}"

    def to_markdown(self) -> str:
        return self.format(symbol="τ", square="τ²")

    # --- ring structure ------------------------------------------------
    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self._b == 0 and self._a == other
        if isinstance(other, GoldenInt):
            return self._a == other._a and self._b == other._b
        return NotImplemented

    def __hash__(self) -> int:
        if self._b == 0:
            return hash(self._a)
        return hash((self._a, self._b))

    def __lt__(self, other: IntLike) -> bool:
        if not isinstance(other, (int, GoldenInt)):
            return NotImplemented
        return (self - other).sign() < 0

    def __bool__(self) -> bool:
        return bool(self._a or self._b)

    def __add__(self, other: IntLike) -> GoldenInt:
        if isinstance(other, int):
            return GoldenInt(self._a + other, self._b)
        if isinstance(other, GoldenInt):
            return GoldenInt(self._a + other._a, self._b + other._b)
        return NotImplemented

    def __radd__(self, other: IntLike) -> GoldenInt:
        return self + other

    def __neg__(self) -> GoldenInt:
        return GoldenInt(-self._a, -self._b)

    def __sub__(self, other: IntLike) -> GoldenInt:
        if isinstance(other, int):
            return GoldenInt(self._a - other, self._b)
        if isinstance(other, GoldenInt):
            return GoldenInt(self._a - other._a, self._b - other._b)
        return NotImplemented

    def __rsub__(self, other: IntLike) -> GoldenInt:
        return (-self) + other

    def __mul__(self, other: IntLike) -> GoldenInt:
        if isinstance(other, int):
            return GoldenInt(self._a * other, self._b * other)
        if isinstance(other, GoldenInt):
            # (a + b tau)(c + d tau) = (ac + bd) + (ad + bc + bd) tau
            a, b, c, d = self._a, self._b, other._a, other._b
            bd = b * d
            return GoldenInt(a * c + bd, a * d + b * c + bd)
        return NotImplemented

    def __rmul__(self, other: IntLike) -> GoldenInt:
        return self * other

    def __pow__(self, n: int) -> GoldenInt:
        if n < 0:
            return self.inverse() ** (-n)
        result = GoldenInt(1, 0)
        base = self
        while n > 0:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, other: IntLike) -> GoldenRat:
        return GoldenRat(self) / GoldenRat(GoldenInt.coerce(other))

    # --- number theory -------------------------------------------------
    def sign(self) -> int:
        """
        Exact sign of the real number a + b*tau.

        With s = 2a + b and t = b the value equals (s + t*sqrt(5)) / 2.
        """
        s = 2 * self._a + self._b
        t = self._b
        ss, st = _int_sign(s), _int_sign(t)
        if ss == st or st == 0:
            return ss
        if ss == 0:
            return st
        return ss if s * s > 5 * t * t else st

    def conj(self) -> GoldenInt:
        """Galois conjugate, tau -> 1 - tau."""
        return GoldenInt(self._a + self._b, -self._b)

    def norm(self) -> int:
        """x * conj(x) = a^2 + ab - b^2, a multiplicative integer."""
        a, b = self._a, self._b
        return a * a + a * b - b * b

    def is_unit(self) -> bool:
        return self.norm() in (1, -1)

    def inverse(self) -> GoldenInt:
        n = self.norm()
        if n == 1:
            return self.conj()
        if n == -1:
            return -self.conj()
        raise ValueError(f"{self} is not a unit of Z[tau] (norm {n})")

    def divide_exact(self, other: IntLike) -> Optional[GoldenInt]:
        """Return self / other if the quotient lies in Z[tau], else None."""
        other = GoldenInt.coerce(other)
        n = other.norm()
        if n == 0:
            raise ValueError("Division by zero in Z[tau]")
        q = self * other.conj()
        if q._a % n or q._b % n:
            return None
        return GoldenInt(q._a // n, q._b // n)

    def __abs__(self) -> GoldenInt:
        return -self if self.sign() < 0 else self

    def approx(self) -> float:
        """Float value, for display and sanity checks only."""
        return self._a + self._b * (1 + 5 ** 0.5) / 2


ZERO = GoldenInt(0, 0)
ONE = GoldenInt(1, 0)
TAU = GoldenInt(0, 1)
TAU_INV = GoldenInt(-1, 1)  # tau - 1

_TERM = re.compile(r"[+-]?[^+-]+")
_TAU_TERM = re.compile(r"^(\d*)\*?tau(\^2)?$")


def parse_golden(text: str) -> GoldenInt:
    """
    Parse strings such as "2tau+1", "tau^2", "1+tau", "-tau", "τ" or "3".

    Raises:
        ValueError: if the text is not a Z-linear combination of 1, tau, tau^2
    """
    if text is None:
        raise ValueError("Cannot parse an empty golden integer")
    s = str(text).strip().replace(" ", "").replace("τ²", "tau^2").replace("τ", "tau")
    if not s:
        raise ValueError("Cannot parse an empty golden integer")
    total = ZERO
    consumed = 0
    for match in _TERM.finditer(s):
        term = match.group(0)
        consumed += len(term)
        negative = term.startswith("-")
        body = term.lstrip("+-")
        if body.isdigit():
            value = GoldenInt(int(body), 0)
        else:
            m = _TAU_TERM.match(body)
            if not m:
                raise ValueError(f"Unrecognised term '{term}' in '{text}'")
            k = int(m.group(1)) if m.group(1) else 1
            value = GoldenInt(k, k) if m.group(2) else GoldenInt(0, k)
        total = total - value if negative else total + value
    if consumed != len(s):
        raise ValueError(f"Could not parse '{text}' as an element of Z[tau]")
    return total


@total_ordering
class GoldenRat:
    """
    An element num/den of Q(tau) with num in Z[tau] and den a positive integer.

    The representation is canonical: den is minimal and positive, zero is 0/1.
    """

    __slots__ = ("_num", "_den")

    def __init__(self, num: IntLike, den: int = 1) -> None:
        num = GoldenInt.coerce(num)
        if den == 0:
            raise ValueError("GoldenRat denominator must be nonzero")
        if den < 0:
            num, den = -num, -den
        g = gcd(gcd(num.a, num.b), den)
        if g > 1:
            num = GoldenInt(num.a // g, num.b // g)
            den //= g
        if not num:
            den = 1
        self._num = num
        self._den = den

    @property
    def num(self) -> GoldenInt:
        return self._num

    @property
    def den(self) -> int:
        return self._den

    @classmethod
    def coerce(cls, x: Union[int, GoldenInt, "GoldenRat"]) -> GoldenRat:
        if isinstance(x, GoldenRat):
            return x
        return cls(GoldenInt.coerce(x), 1)

    def __repr__(self) -> str:
        return f"GoldenRat({self._num!r}, {self._den})"

    def __str__(self) -> str:
        if self._den == 1:
            return str(self._num)
        return f"({self._num})/{self._den}"

    def is_integral(self) -> bool:
        return self._den == 1

    def to_golden_int(self) -> GoldenInt:
        if self._den != 1:
            raise ValueError(f"{self} is not in Z[tau]")
        return self._num

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, GoldenInt)):
            return self._den == 1 and self._num == other
        if isinstance(other, GoldenRat):
            return self._num == other._num and self._den == other._den
        return NotImplemented

    def __hash__(self) -> int:
        if self._den == 1:
            return hash(self._num)
        return hash((self._num, self._den))

    def __lt__(self, other) -> bool:
        return (self - GoldenRat.coerce(other)).sign() < 0

    def __bool__(self) -> bool:
        return bool(self._num)

    def sign(self) -> int:
        return self._num.sign()

    def __add__(self, other) -> GoldenRat:
        other = GoldenRat.coerce(other)
        return GoldenRat(self._num * other._den + other._num * self._den, self._den * other._den)

    def __radd__(self, other) -> GoldenRat:
        return self + other

    def __neg__(self) -> GoldenRat:
        return GoldenRat(-self._num, self._den)

    def __sub__(self, other) -> GoldenRat:
        return self + (-GoldenRat.coerce(other))

    def __rsub__(self, other) -> GoldenRat:
        return GoldenRat.coerce(other) - self

    def __mul__(self, other) -> GoldenRat:
        other = GoldenRat.coerce(other)
        return GoldenRat(self._num * other._num, self._den * other._den)

    def __rmul__(self, other) -> GoldenRat:
        return self * other

    def __truediv__(self, other) -> GoldenRat:
        other = GoldenRat.coerce(other)
        if not other:
            raise ValueError("Division by zero in Q(tau)")
        n = other._num.norm()
        num = self._num * other._num.conj() * other._den
        return GoldenRat(num, self._den * n)

    def __rtruediv__(self, other) -> GoldenRat:
        return GoldenRat.coerce(other) / self
