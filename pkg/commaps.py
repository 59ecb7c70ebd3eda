# commaps.py
"""
Commutation maps of the standard coordinatisation.

The embedded figure lists psi_{zeta,xi}^rho on the base pairs (rho0, rho1),
(rho1, rho2) and inside the H2-quintuple (alpha, beta, gamma, delta, epsilon)
spanned by (rho2, rho3). Formulas are polynomials in the coordinates
((a, b), (c, d)) of the two arguments. Maps for every other pair are obtained
by conjugating with standard Weyl elements and correcting by the parity map.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import sympy

from figure_store import figure_store
from ring_kernel import PairElem, PolynomialRing, RingSpec
from root_systems import (ParityTable, ParityValue, RootSystem, build_system, parity_extend,
                          weyl_group)

GREEK = ("alpha", "beta", "gamma", "delta", "epsilon")
FORMULA_VARS = ("a", "b", "c", "d")

PairMap = Callable[[PairElem, PairElem], PairElem]


@lru_cache(maxsize=None)
def formula_ring() -> PolynomialRing:
    return PolynomialRing(FORMULA_VARS)


def root_names(system: RootSystem) -> Dict[str, int]:
    """Base names plus the greek names of the quintuple of (rho2, rho3)."""
    names = {n: system.base_index[k] for k, n in enumerate(system.base_names)}
    quint = system.quintuple(names["rho2"], names["rho3"])
    names.update(zip(GREEK, quint))
    return names


def resolve_name(system: RootSystem, name: str) -> int:
    """'gamma', '-delta', 'rho1' or any label accepted by parse_root."""
    name = name.strip()
    if name.startswith("-"):
        return system.neg(resolve_name(system, name[1:]))
    names = root_names(system)
    if name in names:
        return names[name]
    return system.parse_root(name)


@dataclass(frozen=True)
class CommapRow:
    zeta: str
    xi: str
    rho: Optional[str]
    first: str
    second: str
    systems: Tuple[str, ...]

    @property
    def key(self) -> Tuple[str, str, Optional[str]]:
        return (self.zeta, self.xi, self.rho)

    def label(self) -> str:
        return f"psi[{self.zeta},{self.xi}]" + (f"^{self.rho}" if self.rho else "")


def figure_rows(system: Optional[str] = None) -> List[CommapRow]:
    """Rows of the embedded commutation-map figure, in figure order."""
    df = figure_store.read_table("commaps")
    rows = []
    for rec in df.to_dict(orient="records"):
        row = CommapRow(zeta=rec["zeta"], xi=rec["xi"], rho=rec["rho"] or None,
                        first=rec["first"], second=rec["second"],
                        systems=tuple(rec["systems"].split()))
        if system is None or system.lower() in row.systems:
            rows.append(row)
    return rows


def row_parts(system: RootSystem, row: CommapRow) -> Tuple[int, int, int]:
    """(zeta, xi, rho) as root indices; rho defaults to the single root of the interval."""
    zeta, xi = resolve_name(system, row.zeta), resolve_name(system, row.xi)
    if row.rho:
        return zeta, xi, resolve_name(system, row.rho)
    interval = system.open_interval(zeta, xi)
    if len(interval) != 1:
        raise ValueError(f"Row {row.label()} has no explicit rho but the interval has {len(interval)} roots")
    return zeta, xi, interval[0]


def row_formula(row: CommapRow) -> PairElem:
    ring = formula_ring()
    return PairElem(ring.parse(row.first), ring.parse(row.second))


# --- providers -----------------------------------------------------------
Terms = List[Tuple[int, Tuple[int, ...]]]


def _compile(poly) -> Terms:
    return [(int(coeff), monom) for monom, coeff in poly.terms()]


class CommutationMaps:
    """Provider interface: psi(zeta, xi, rho) returns a map R x R, R x R -> R x R."""

    def psi(self, zeta: str, xi: str, rho: Optional[str] = None) -> PairMap:
        raise NotImplementedError

    # the four maps the ring structure is built from
    @property
    def f(self) -> PairMap:
        return self.psi("alpha", "gamma")

    @property
    def g(self) -> PairMap:
        return self.psi("alpha", "delta", "beta")

    @property
    def h1(self) -> PairMap:
        return self.psi("alpha", "epsilon", "beta")

    @property
    def h2(self) -> PairMap:
        return self.psi("alpha", "epsilon", "gamma")


class StandardMaps(CommutationMaps):
    """The figure formulas evaluated in R x R for a concrete ring R."""

    def __init__(self, ring: RingSpec, rows: Optional[Sequence[CommapRow]] = None):
        self.ring = ring
        rows = list(rows) if rows is not None else figure_rows()
        self._formulas: Dict[Tuple[str, str, Optional[str]], Tuple[Terms, Terms]] = {}
        for row in rows:
            formula = row_formula(row)
            self._formulas[row.key] = (_compile(formula.left), _compile(formula.right))

    def keys(self) -> List[Tuple[str, str, Optional[str]]]:
        return list(self._formulas)

    def _evaluate(self, terms: Terms, values: Sequence) -> object:
        total = self.ring.zero
        for coeff, monom in terms:
            term = self.ring(coeff)
            for v, e in zip(values, monom):
                if e:
                    term = term * v ** e
            total = total + term
        return total

    def psi(self, zeta: str, xi: str, rho: Optional[str] = None) -> PairMap:
        key = (zeta, xi, rho)
        if key not in self._formulas:
            raise ValueError(f"No commutation map {key}. Available: {self.keys()}")
        first, second = self._formulas[key]

        def apply(x: PairElem, y: PairElem) -> PairElem:
            values = (x.left, x.right, y.left, y.right)
            return PairElem(self._evaluate(first, values), self._evaluate(second, values))

        return apply

    def sabotaged(self, key: Tuple[str, str, Optional[str]], component: int = 0) -> "StandardMaps":
        """A copy with one component of one map negated."""
        clone = StandardMaps.__new__(StandardMaps)
        clone.ring = self.ring
        clone._formulas = dict(self._formulas)
        parts = list(clone._formulas[key])
        parts[component] = [(-c, m) for c, m in parts[component]]
        clone._formulas[key] = tuple(parts)
        return clone


def map_symbol(zeta: str, xi: str, rho: Optional[str], component: int) -> sympy.Function:
    tail = f"^{rho}" if rho else ""
    return sympy.Function(f"psi[{zeta},{xi}{tail}]_{component}")


def parse_map_symbol(name: str) -> Tuple[Tuple[str, str, Optional[str]], int]:
    head, component = name.rsplit("_", 1)
    inner = head[len("psi["):-1]
    pair, _, rho = inner.partition("^")
    zeta, xi = pair.split(",")
    return (zeta, xi, rho or None), int(component) - 1


class SymbolicMaps(CommutationMaps):
    """Uninterpreted function symbols over sympy expressions (the term algebra)."""

    def psi(self, zeta: str, xi: str, rho: Optional[str] = None) -> PairMap:
        f1, f2 = map_symbol(zeta, xi, rho, 1), map_symbol(zeta, xi, rho, 2)

        def apply(x: PairElem, y: PairElem) -> PairElem:
            args = (x.left, x.right, y.left, y.right)
            return PairElem(f1(*args), f2(*args))

        return apply


class TermInterpreter:
    """Evaluates term-algebra expressions in R x R with memoisation on subterms."""

    def __init__(self, maps: StandardMaps, values: Dict[str, object]):
        self.maps = maps
        self.ring = maps.ring
        self.values = values
        self._memo: Dict[sympy.Basic, object] = {}

    def __call__(self, expr) -> object:
        expr = sympy.sympify(expr)
        if expr in self._memo:
            return self._memo[expr]
        if expr.is_Integer:
            out = self.ring(int(expr))
        elif expr.is_Symbol:
            if expr.name not in self.values:
                raise ValueError(f"No value for symbol '{expr.name}'")
            out = self.values[expr.name]
        elif expr.is_Add:
            out = self.ring.zero
            for arg in expr.args:
                out = out + self(arg)
        elif expr.is_Mul:
            out = self.ring.one
            for arg in expr.args:
                out = out * self(arg)
        elif expr.is_Pow and expr.exp.is_Integer and expr.exp >= 0:
            out = self(expr.base) ** int(expr.exp)
        elif isinstance(expr, sympy.core.function.AppliedUndef):
            key, component = parse_map_symbol(expr.func.__name__)
            a, b, c, d = (self(arg) for arg in expr.args)
            image = self.maps.psi(*key)(PairElem(a, b), PairElem(c, d))
            out = image.left if component == 0 else image.right
        else:
            raise ValueError(f"Cannot interpret term {expr}")
        self._memo[expr] = out
        return out


# --- transport -----------------------------------------------------------
def parity_table_from_figure(system_name: str) -> ParityTable:
    """The embedded parity table of H3 or H4."""
    system = build_system(system_name)
    df = figure_store.read_table(f"parity_{system_name.lower()}")
    columns = list(system.base_names)
    rows = {}
    for rec in df.to_dict(orient="records"):
        beta = system.parse_root(rec["beta"])
        rows[beta] = [ParityValue.parse(rec[c]) for c in columns]
    return ParityTable.from_positive(system, rows)


@dataclass(frozen=True)
class TransportedMap:
    zeta: int
    xi: int
    parts: Tuple[Tuple[int, PairElem], ...]
    base: Tuple[int, int]
    word: Tuple[int, ...]

    def as_dict(self) -> Dict[int, PairElem]:
        return dict(self.parts)


class Transporter:
    """Moves the figure maps to arbitrary pairs with Weyl words and parities."""

    def __init__(self, system_name: str, table: Optional[ParityTable] = None,
                 rows: Optional[Sequence[CommapRow]] = None):
        self.system = build_system(system_name)
        self.table = table or parity_table_from_figure(system_name)
        self.group = weyl_group(system_name)
        rows = rows if rows is not None else figure_rows(system_name)
        self.base: Dict[Tuple[int, int], List[Tuple[int, PairElem]]] = {}
        for row in rows:
            zeta, xi, rho = row_parts(self.system, row)
            self.base.setdefault((zeta, xi), []).append((rho, row_formula(row)))
        self._targets: Dict[Tuple[int, int], List[Tuple[int, Tuple[int, int]]]] = {}
        for k, perm in enumerate(self.group.elements):
            for z0, x0 in self.base:
                self._targets.setdefault((perm[z0], perm[x0]), []).append((k, (z0, x0)))

    def _transport(self, k: int, base: Tuple[int, int]) -> TransportedMap:
        perm = self.group.elements[k]
        word = self.group.words[perm]
        z0, x0 = base
        ez = parity_extend(self.table, z0, word)
        ex = parity_extend(self.table, x0, word)
        ring = formula_ring()
        a, b, c, d = ring.vars(*FORMULA_VARS)
        hom = ring.eval_hom({"a": ez.eps * a, "b": ez.eps_bar * b, "c": ex.eps * c, "d": ex.eps_bar * d})
        zeta, xi = perm[z0], perm[x0]
        order = self.system.open_interval(zeta, xi)
        parts = {}
        for rho0, formula in self.base[base]:
            er = parity_extend(self.table, rho0, word)
            parts[perm[rho0]] = PairElem(er.eps * hom(formula.left), er.eps_bar * hom(formula.right))
        return TransportedMap(zeta, xi, tuple((r, parts[r]) for r in order if r in parts), base, word)

    def transports(self, zeta: int, xi: int, limit: Optional[int] = None) -> List[TransportedMap]:
        found = self._targets.get((zeta, xi), [])
        if limit is not None:
            found = found[:limit]
        return [self._transport(k, base) for k, base in found]

    def standard_commutation_map(self, zeta: int, xi: int) -> List[Tuple[int, PairElem]]:
        """
        psi_{zeta,xi}^rho for every rho of the interval, in interval order.

        Raises:
            ValueError: if the pair is not a Weyl conjugate of a figure pair and
                its interval is not empty
        """
        if not self.system.open_interval(zeta, xi):
            return []
        options = self.transports(zeta, xi, limit=1)
        if not options:
            raise ValueError(f"({self.system.label(zeta)}, {self.system.label(xi)}) is not conjugate to a figure pair")
        return list(options[0].parts)

    def word_dependence(self, zeta: int, xi: int, limit: Optional[int] = None) -> Optional[str]:
        """None if every transporting Weyl element gives the same formula, else a witness."""
        options = self.transports(zeta, xi, limit=limit)
        if not options:
            return None
        first = options[0].parts
        for other in options[1:]:
            if other.parts != first:
                return (f"words {''.join(map(str, options[0].word))} and {''.join(map(str, other.word))} "
                        f"disagree on ({self.system.label(zeta)}, {self.system.label(xi)})")
        return None


@lru_cache(maxsize=None)
def transporter(system_name: str) -> Transporter:
    return Transporter(system_name.upper())
