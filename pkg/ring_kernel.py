# ring_kernel.py
"""
Commutative rings used by the matrix models and the blueprint computation.

Every ring is a RingSpec wrapping a sympy domain: the integers, the integers
modulo n, and sparse multivariate polynomial rings (graded lexicographic
order) over either of them. PairElem is an element (r, s) of R x R with the
twisting involution star(r, s) = (-r, s) and the action of {+1,-1}^2.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

import sympy
from sympy.polys.domains import GF, ZZ
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, ring


class RingSpec:
    """Interface shared by all rings: conversion, units and rendering."""

    name = "ring"
    domain: Any = None

    def __call__(self, x: int) -> Any:
        raise NotImplementedError

    @property
    def zero(self) -> Any:
        return self(0)

    @property
    def one(self) -> Any:
        return self(1)

    def is_unit(self, x: Any) -> bool:
        raise NotImplementedError

    def inverse(self, x: Any) -> Any:
        """
        Multiplicative inverse.

        Raises:
            ValueError: if x is not a unit of the ring
        """
        raise NotImplementedError

    def eq(self, x: Any, y: Any) -> bool:
        return x == y

    def is_zero(self, x: Any) -> bool:
        return not x

    def render(self, x: Any) -> str:
        return str(x)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name})"


class IntegerRing(RingSpec):
    name = "z"
    domain = ZZ

    def __call__(self, x: int) -> int:
        return int(x)

    def is_unit(self, x: int) -> bool:
        return x in (1, -1)

    def inverse(self, x: int) -> int:
        if not self.is_unit(x):
            raise ValueError(f"{x} is not a unit of Z")
        return x


class ModularRing(RingSpec):
    """Z/nZ through sympy's finite-field domain (n need not be prime)."""

    def __init__(self, n: int):
        if n < 2:
            raise ValueError(f"Modulus must be at least 2, got {n}")
        self.n = n
        self.name = f"z{n}"
        self.domain = GF(n)

    def __call__(self, x: Any) -> Any:
        return self.domain(int(x))

    def is_unit(self, x: Any) -> bool:
        return gcd(int(x) % self.n, self.n) == 1

    def inverse(self, x: Any) -> Any:
        if not self.is_unit(x):
            raise ValueError(f"{int(x) % self.n} is not a unit of Z/{self.n}")
        return self(x) ** -1

    def units(self) -> List[Any]:
        return [self(k) for k in range(self.n) if gcd(k, self.n) == 1]

    def elements(self) -> List[Any]:
        return [self(k) for k in range(self.n)]

    def render(self, x: Any) -> str:
        return str(int(x) % self.n)


class PolynomialRing(RingSpec):
    """Sparse polynomials in named variables over Z or Z/n."""

    def __init__(self, names: Sequence[str], base: Optional[RingSpec] = None):
        names = list(names)
        if len(set(names)) != len(names):
            raise ValueError(f"Variable names must be distinct: {names}")
        if not names:
            raise ValueError("A polynomial ring needs at least one variable")
        self.base = base or IntegerRing()
        self.names = names
        self.ring, *gens = ring(",".join(names), self.base.domain, grlex)
        self.gens: Dict[str, PolyElement] = dict(zip(names, gens))
        self.name = f"poly[{len(names)}]/{self.base.name}"
        self.domain = self.ring

    def __call__(self, x: Any) -> PolyElement:
        return self.ring(int(x))

    def var(self, name: str) -> PolyElement:
        if name not in self.gens:
            raise ValueError(f"Unknown variable '{name}'. Available: {self.names}")
        return self.gens[name]

    def vars(self, *names: str) -> Tuple[PolyElement, ...]:
        return tuple(self.var(n) for n in names)

    def is_unit(self, x: PolyElement) -> bool:
        return x.is_ground and self.base.is_unit(self.base(int(x.LC)))

    def inverse(self, x: PolyElement) -> PolyElement:
        if not self.is_unit(x):
            raise ValueError(f"{x} is not a unit of {self.name}")
        return self.ring(int(self.base.inverse(self.base(int(x.LC)))))

    def parse(self, text: str) -> PolyElement:
        """Read a formula such as '-b*c*d' over this ring's variables."""
        expr = sympy.sympify(str(text), locals={n: sympy.Symbol(n) for n in self.names})
        unknown = {str(s) for s in expr.free_symbols} - set(self.names)
        if unknown:
            raise ValueError(f"Unknown variables {sorted(unknown)} in '{text}'")
        return self.ring.from_expr(expr) if expr.free_symbols else self.ring(int(expr))

    def eval_hom(self, assignment: Dict[str, Any], target: Optional[RingSpec] = None) -> Callable[[PolyElement], Any]:
        """
        The ring homomorphism sending each variable to its assigned value.

        Args:
            assignment: variable name -> element of target
            target: ring of the values (defaults to this ring)

        Returns:
            A function evaluating polynomials of this ring

        Raises:
            ValueError: for names outside this ring, or (on evaluation) for
                monomials using an unassigned variable
        """
        target = target or self
        unknown = set(assignment) - set(self.names)
        if unknown:
            raise ValueError(f"Unknown variables {sorted(unknown)}. Available: {self.names}")
        values = [assignment.get(n) for n in self.names]

        def hom(p: PolyElement) -> Any:
            total = target.zero
            for monom, coeff in p.terms():
                term = target(int(coeff))
                for k, e in enumerate(monom):
                    if e:
                        if values[k] is None:
                            raise ValueError(f"No value assigned to variable '{self.names[k]}'")
                        term = term * values[k] ** e
                total = total + term
            return total

        return hom

    def render(self, x: PolyElement) -> str:
        return str(x)


def make_ring(selector: str, names: Sequence[str] = ("a", "b", "c", "d")) -> RingSpec:
    """'z', 'zN' or 'poly' (over Z in the given variables)."""
    selector = selector.strip().lower()
    if selector == "z":
        return IntegerRing()
    if selector == "poly":
        return PolynomialRing(names)
    if selector.startswith("z") and selector[1:].isdigit():
        return ModularRing(int(selector[1:]))
    raise ValueError(f"Unknown ring selector '{selector}'. Use z, zN or poly")


Signs = Union[Tuple[int, int], Any]


@dataclass(frozen=True)
class PairElem:
    """An element (left, right) of R x R with componentwise operations."""

    left: Any
    right: Any

    def __add__(self, other: "PairElem") -> "PairElem":
        return PairElem(self.left + other.left, self.right + other.right)

    def __sub__(self, other: "PairElem") -> "PairElem":
        return PairElem(self.left - other.left, self.right - other.right)

    def __neg__(self) -> "PairElem":
        return PairElem(-self.left, -self.right)

    def __mul__(self, other: Union["PairElem", int]) -> "PairElem":
        if isinstance(other, PairElem):
            return PairElem(self.left * other.left, self.right * other.right)
        return PairElem(self.left * other, self.right * other)

    __rmul__ = __mul__

    def star(self) -> "PairElem":
        return PairElem(-self.left, self.right)

    def act(self, signs: Signs) -> "PairElem":
        eps, eps_bar = (signs.eps, signs.eps_bar) if hasattr(signs, "eps") else signs
        return PairElem(self.left * eps, self.right * eps_bar)

    def is_zero(self) -> bool:
        return not self.left and not self.right

    def __iter__(self):
        yield self.left
        yield self.right

    def __str__(self) -> str:
        return f"({self.left}, {self.right})"

    @classmethod
    def of(cls, ring_spec: RingSpec, left: int, right: int) -> "PairElem":
        return cls(ring_spec(left), ring_spec(right))


def pair_mul(x: PairElem, y: PairElem) -> PairElem:
    return x * y


def pair_star(x: PairElem) -> PairElem:
    return x.star()


def pair_act(signs: Signs, x: PairElem) -> PairElem:
    return x.act(signs)
