# chevalley.py
"""
Matrix models of the Chevalley groups of types A4 (5x5), D6 (12x12) and E8
(248x248 adjoint) over any RingSpec, and their foldings onto H2, H3 and H4.

A root element is x_xi(r) = I + t r E_xi + r^2 E2_xi where E2 = E^2 / 2 (zero
for the classical models) and t = -1 exactly when +-xi lies in the twist set.
Conventions: g^h = h^-1 g h and [g, h] = g^-1 h^-1 g h.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from commaps import CommapRow, figure_rows, formula_ring, parity_table_from_figure, row_formula, row_parts
from e8_algebra import e8_algebra
from folding import FoldingMap, folding_map
from ring_kernel import IntegerRing, PairElem, RingSpec
from root_systems import ParityTable, ParityValue, RootSystem, build_system

Entries = Dict[Tuple[int, int], int]


class FactorisationError(ValueError):
    """A matrix did not factor along the expected sequence of root groups."""

    def __init__(self, message: str, witness: Optional[str] = None):
        super().__init__(message)
        self.witness = witness


class SparseMatrix:
    """Square matrix over a RingSpec stored as row -> {col: value}; zeros are never stored."""

    __slots__ = ("dim", "ring", "rows")

    def __init__(self, dim: int, ring: RingSpec, rows: Optional[Dict[int, Dict[int, Any]]] = None):
        self.dim = dim
        self.ring = ring
        self.rows = rows or {}

    @classmethod
    def identity(cls, dim: int, ring: RingSpec) -> "SparseMatrix":
        one = ring.one
        return cls(dim, ring, {i: {i: one} for i in range(dim)})

    @classmethod
    def from_entries(cls, dim: int, ring: RingSpec, entries: Entries) -> "SparseMatrix":
        rows: Dict[int, Dict[int, Any]] = {}
        for (i, j), v in entries.items():
            if v:
                rows.setdefault(i, {})[j] = ring(v)
        return cls(dim, ring, rows)

    def entry(self, i: int, j: int) -> Any:
        return self.rows.get(i, {}).get(j, self.ring.zero)

    def items(self) -> Iterable[Tuple[int, int, Any]]:
        for i in sorted(self.rows):
            for j in sorted(self.rows[i]):
                yield i, j, self.rows[i][j]

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self.rows.values())

    def __mul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.dim != other.dim:
            raise ValueError(f"Dimension mismatch: {self.dim} vs {other.dim}")
        out: Dict[int, Dict[int, Any]] = {}
        orows = other.rows
        for i, row in self.rows.items():
            acc: Dict[int, Any] = {}
            for k, a in row.items():
                brow = orows.get(k)
                if not brow:
                    continue
                for j, b in brow.items():
                    if j in acc:
                        acc[j] = acc[j] + a * b
                    else:
                        acc[j] = a * b
            acc = {j: v for j, v in acc.items() if v}
            if acc:
                out[i] = acc
        return SparseMatrix(self.dim, self.ring, out)

    def scaled(self, c: Any) -> "SparseMatrix":
        rows = {}
        for i, row in self.rows.items():
            new = {j: v * c for j, v in row.items() if v * c}
            if new:
                rows[i] = new
        return SparseMatrix(self.dim, self.ring, rows)

    def __neg__(self) -> "SparseMatrix":
        return self.scaled(-1)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.dim == other.dim and self.rows == other.rows

    __hash__ = None

    def key(self) -> Tuple:
        """Hashable canonical form."""
        return tuple((i, j, self.ring.render(v)) for i, j, v in self.items())

    def is_identity(self) -> bool:
        return self == SparseMatrix.identity(self.dim, self.ring)

    def first_difference(self, other: "SparseMatrix") -> Optional[str]:
        for i in range(self.dim):
            mine, theirs = self.rows.get(i, {}), other.rows.get(i, {})
            for j in sorted(set(mine) | set(theirs)):
                a, b = mine.get(j, self.ring.zero), theirs.get(j, self.ring.zero)
                if a != b:
                    return f"entry ({i},{j}): {self.ring.render(a)} != {self.ring.render(b)}"
        return None


def unipotent(dim: int, ring: RingSpec, e: Entries, e2: Entries, r: Any) -> SparseMatrix:
    """I + r E + r^2 E2 for integer matrices E, E2 (E2 may be empty)."""
    rows: Dict[int, Dict[int, Any]] = {i: {i: ring.one} for i in range(dim)}
    if not r:
        return SparseMatrix(dim, ring, rows)
    for (i, j), v in e.items():
        row = rows.setdefault(i, {})
        row[j] = row.get(j, ring.zero) + r * v
    if e2:
        r2 = r * r
        for (i, j), v in e2.items():
            row = rows.setdefault(i, {})
            row[j] = row.get(j, ring.zero) + r2 * v
    rows = {i: {j: v for j, v in row.items() if v} for i, row in rows.items()}
    return SparseMatrix(dim, ring, {i: row for i, row in rows.items() if row})


# --- representations -----------------------------------------------------
class MatrixRep:
    """Integer matrices E_xi (and E2_xi) for every root of one source system."""

    kind = ""
    dim = 0

    def __init__(self):
        self.system: RootSystem = build_system(self.kind)

    def e(self, root: int) -> Entries:
        raise NotImplementedError

    def e2(self, root: int) -> Entries:
        return {}


class LinearRep(MatrixRep):
    """SL5 on Z^5: E_{ei-ej} is the matrix unit e_ij."""

    kind = "A4"
    dim = 5

    def e(self, root: int) -> Entries:
        ev = self.system.e_vector(self.system.roots[root])
        return {(ev.index(1), ev.index(-1)): 1}


class OrthogonalRep(MatrixRep):
    """Spin-free SO12 model for the form with Gram matrix [[0, I], [I, 0]]."""

    kind = "D6"
    dim = 12

    def e(self, root: int) -> Entries:
        ev = self.system.e_vector(self.system.roots[root])
        plus = [k for k, c in enumerate(ev) if c == 1]
        minus = [k for k, c in enumerate(ev) if c == -1]
        if len(plus) == 1 and len(minus) == 1:
            i, j = plus[0], minus[0]
            return {(i, j): 1, (6 + j, 6 + i): -1}
        if len(plus) == 2:
            i, j = plus
            return {(i, 6 + j): 1, (j, 6 + i): -1}
        i, j = minus
        return {(6 + j, i): 1, (6 + i, j): -1}


class AdjointRep(MatrixRep):
    """The adjoint module of E8 on its Chevalley lattice."""

    kind = "E8"
    dim = 248

    def __init__(self):
        super().__init__()
        self.algebra = e8_algebra()

    def e(self, root: int) -> Entries:
        return self.algebra.ad(root)

    def e2(self, root: int) -> Entries:
        return self.algebra.ad_square_half(root)


_REPS = {"A4": LinearRep, "D6": OrthogonalRep, "E8": AdjointRep}


@lru_cache(maxsize=None)
def matrix_rep(kind: str) -> MatrixRep:
    kind = kind.upper()
    if kind not in _REPS:
        raise ValueError(f"No matrix model for '{kind}'. Available: {list(_REPS)}")
    return _REPS[kind]()


# --- Chevalley groups ----------------------------------------------------
class ChevalleyModel:
    """Root elements and Weyl elements of one twisted Chevalley model."""

    def __init__(self, kind: str, ring: Optional[RingSpec] = None, twist: Iterable[int] = ()):
        self.rep = matrix_rep(kind)
        self.kind = self.rep.kind
        self.system = self.rep.system
        self.dim = self.rep.dim
        self.ring = ring or IntegerRing()
        self.twist: FrozenSet[int] = frozenset(self._positive(i) for i in twist)
        self._markers: Dict[int, Tuple[int, int, int]] = {}
        self._e: Dict[int, SparseMatrix] = {}
        self._e2: Dict[int, SparseMatrix] = {}
        self._signs: Dict[Tuple[int, int], int] = {}

    def _positive(self, i: int) -> int:
        return i if self.system.is_positive(i) else self.system.neg(i)

    def with_ring(self, ring: RingSpec) -> "ChevalleyModel":
        return ChevalleyModel(self.kind, ring, self.twist)

    def with_twist(self, twist: Iterable[int]) -> "ChevalleyModel":
        return ChevalleyModel(self.kind, self.ring, twist)

    def twist_sign(self, root: int) -> int:
        return -1 if self._positive(root) in self.twist else 1

    def _coerce(self, r: Any) -> Any:
        return self.ring(r) if isinstance(r, int) else r

    # --- elements ------------------------------------------------------
    def identity(self) -> SparseMatrix:
        return SparseMatrix.identity(self.dim, self.ring)

    def root_elem(self, xi: int, r: Any) -> SparseMatrix:
        r = self._coerce(r) * self.twist_sign(xi)
        return unipotent(self.dim, self.ring, self.rep.e(xi), self.rep.e2(xi), r)

    def root_elem_inv(self, xi: int, r: Any) -> SparseMatrix:
        return self.root_elem(xi, -self._coerce(r))

    def weyl_elem(self, xi: int, r: Any) -> SparseMatrix:
        """
        w_xi(r) = x_-xi(-r^-1) x_xi(r) x_-xi(-r^-1).

        Raises:
            ValueError: if r is not a unit of the base ring
        """
        r = self._coerce(r)
        if not self.ring.is_unit(r):
            raise ValueError(f"Weyl element parameter {self.ring.render(r)} is not a unit of {self.ring.name}")
        outer = self.root_elem(self.system.neg(xi), -self.ring.inverse(r))
        return outer * self.root_elem(xi, r) * outer

    def weyl_elem_inv(self, xi: int, r: Any) -> SparseMatrix:
        return self.weyl_elem(xi, -self._coerce(r))

    @staticmethod
    def commutator(g: SparseMatrix, g_inv: SparseMatrix, h: SparseMatrix, h_inv: SparseMatrix) -> SparseMatrix:
        return g_inv * h_inv * g * h

    # --- Lie algebra data ---------------------------------------------
    def e_matrix(self, root: int) -> SparseMatrix:
        if root not in self._e:
            self._e[root] = SparseMatrix.from_entries(self.dim, self.ring, self.rep.e(root))
        return self._e[root]

    def e2_matrix(self, root: int) -> SparseMatrix:
        if root not in self._e2:
            self._e2[root] = SparseMatrix.from_entries(self.dim, self.ring, self.rep.e2(root))
        return self._e2[root]

    def marker(self, root: int) -> Tuple[int, int, int]:
        """An entry (i, j) of E_root with value +-1."""
        if root not in self._markers:
            entries = self.rep.e(root)
            self._markers[root] = next((i, j, v) for (i, j), v in sorted(entries.items()) if v in (1, -1))
        return self._markers[root]

    def read_param(self, m: SparseMatrix, root: int) -> Any:
        """The coefficient r of x_root(r) visible at the marker entry of m."""
        i, j, v = self.marker(root)
        return m.entry(i, j) * (v * self.twist_sign(root))

    def conjugation_scalar(self, root: int, w: SparseMatrix, w_inv: SparseMatrix, image: int) -> Optional[Any]:
        """The unit u with w^-1 E_root w = u E_image and w^-1 E2_root w = u^2 E2_image, or None."""
        conj = w_inv * self.e_matrix(root) * w
        i, j, v = self.marker(image)
        u = conj.entry(i, j) * v
        if not self.ring.is_unit(u) or conj != self.e_matrix(image).scaled(u):
            return None
        if self.rep.e2(root) and w_inv * self.e2_matrix(root) * w != self.e2_matrix(image).scaled(u * u):
            return None
        return u

    def conjugation_sign(self, root: int, w: SparseMatrix, w_inv: SparseMatrix, image: int) -> Optional[int]:
        """c = +-1 with w^-1 E_root w = c E_image and w^-1 E2_root w = E2_image, or None."""
        u = self.conjugation_scalar(root, w, w_inv, image)
        if u is None:
            return None
        if u == self.ring.one:
            return 1
        if u == -self.ring.one:
            return -1
        return None

    def weyl_violations(self, w: SparseMatrix, w_inv: SparseMatrix, perm: Sequence[int]) -> List[int]:
        """Roots gamma with U_gamma^w != U_(perm gamma); the conjugate may rescale by any unit."""
        return [g for g in range(len(self.system.roots)) if self.conjugation_scalar(g, w, w_inv, perm[g]) is None]

    def is_weyl(self, g: SparseMatrix, g_inv: SparseMatrix, xi: int) -> bool:
        return not self.weyl_violations(g, g_inv, self.system.reflection_perm(xi))

    def root_sum(self, xi: int, zeta: int) -> Optional[int]:
        return self.system.index.get(self.system.roots[xi] + self.system.roots[zeta])

    def structure_sign(self, xi: int, zeta: int) -> int:
        """
        c with [x_xi(r), x_zeta(s)] = x_(xi+zeta)(c r s).

        Raises:
            ValueError: if xi + zeta is not a root
        """
        if (xi, zeta) in self._signs:
            return self._signs[(xi, zeta)]
        target = self.root_sum(xi, zeta)
        if target is None:
            raise ValueError(f"{self.system.label(xi)} + {self.system.label(zeta)} is not a root")
        model = self if isinstance(self.ring, IntegerRing) else self.with_ring(IntegerRing())
        m = model.commutator(model.root_elem(xi, 1), model.root_elem(xi, -1),
                             model.root_elem(zeta, 1), model.root_elem(zeta, -1))
        self._signs[(xi, zeta)] = int(model.read_param(m, target))
        return self._signs[(xi, zeta)]


# --- folded models -------------------------------------------------------
class FoldedModel:
    """The H-indexed root groups U_beta = x_alpha1(R) x_alpha2(R) of a folded Chevalley model."""

    def __init__(self, model: ChevalleyModel):
        self.model = model
        self.folding: FoldingMap = folding_map(model.kind)
        self.system: RootSystem = self.folding.target
        self.ring = model.ring
        self._weyl: Dict[int, Tuple[SparseMatrix, SparseMatrix]] = {}
        self._perms: Dict[int, Tuple[int, ...]] = {}

    @classmethod
    def standard(cls, kind: str, ring: Optional[RingSpec] = None) -> "FoldedModel":
        """The model with the resolved twist, so its maps match the figure."""
        return cls(ChevalleyModel(kind, ring, resolve_twist(kind).twist))

    def over(self, ring: RingSpec) -> "FoldedModel":
        return FoldedModel(self.model.with_ring(ring))

    def fiber(self, beta: int) -> Tuple[int, int]:
        return self.folding.fiber(beta)

    # --- elements ------------------------------------------------------
    def folded_elem(self, beta: int, r: Any, s: Any) -> SparseMatrix:
        """theta_beta(r, s) = x_alpha1(r) x_alpha2(s)."""
        a1, a2 = self.fiber(beta)
        return self.model.root_elem(a1, r) * self.model.root_elem(a2, s)

    def folded_elem_inv(self, beta: int, r: Any, s: Any) -> SparseMatrix:
        return self.folded_elem(beta, -self.model._coerce(r), -self.model._coerce(s))

    def theta(self, beta: int, x: PairElem) -> SparseMatrix:
        return self.folded_elem(beta, x.left, x.right)

    def theta_inv(self, beta: int, x: PairElem) -> SparseMatrix:
        return self.folded_elem(beta, -x.left, -x.right)

    def folded_weyl(self, beta: int, r: Any, s: Any) -> SparseMatrix:
        """w_beta(r, s) = w_alpha1(r) w_alpha2(s); raises ValueError for non-units."""
        a1, a2 = self.fiber(beta)
        return self.model.weyl_elem(a1, r) * self.model.weyl_elem(a2, s)

    def folded_weyl_inv(self, beta: int, r: Any, s: Any) -> SparseMatrix:
        return self.folded_weyl(beta, -self.model._coerce(r), -self.model._coerce(s))

    def standard_weyl(self, d: int) -> Tuple[SparseMatrix, SparseMatrix]:
        """(w, w^-1) for w = w_delta(1, 1), delta the base root at position d."""
        if d not in self._weyl:
            beta = self.system.base_index[d]
            self._weyl[d] = (self.folded_weyl(beta, 1, 1), self.folded_weyl_inv(beta, 1, 1))
        return self._weyl[d]

    def letter_perm(self, d: int) -> Tuple[int, ...]:
        """u(s_d) as a permutation of the source roots."""
        if d not in self._perms:
            self._perms[d] = self.folding.embed_reflection(self.system.base_index[d])
        return self._perms[d]

    def is_weyl(self, g: SparseMatrix, g_inv: SparseMatrix, beta: int) -> bool:
        return not self.model.weyl_violations(g, g_inv, self.folding.embed_reflection(beta))

    # --- factorisation -------------------------------------------------
    def read_pair(self, m: SparseMatrix, beta: int) -> PairElem:
        a1, a2 = self.fiber(beta)
        return PairElem(self.model.read_param(m, a1), self.model.read_param(m, a2))

    def peel(self, m: SparseMatrix, roots: Sequence[int]) -> List[Tuple[int, PairElem]]:
        """
        Factor m as theta_rho1(x1) theta_rho2(x2) ... along the given roots.

        Raises:
            FactorisationError: if a non-identity residue is left
        """
        parts = []
        for beta in roots:
            x = self.read_pair(m, beta)
            m = self.theta_inv(beta, x) * m
            parts.append((beta, x))
        if not m.is_identity():
            residue = m.first_difference(SparseMatrix.identity(m.dim, m.ring))
            labels = ", ".join(self.system.label(r) for r in roots)
            raise FactorisationError(f"Matrix does not factor along ({labels}): {residue}", witness=residue)
        return parts

    def commutator_parts(self, g: SparseMatrix, g_inv: SparseMatrix, h: SparseMatrix, h_inv: SparseMatrix,
                         zeta: int, xi: int) -> List[Tuple[int, PairElem]]:
        m = ChevalleyModel.commutator(g, g_inv, h, h_inv)
        return self.peel(m, self.system.open_interval(zeta, xi))

    def extract_commutation_map(self, zeta: int, xi: int) -> List[Tuple[int, PairElem]]:
        """psi_{zeta,xi}^rho over Z[a,b,c,d] for every rho of ]zeta, xi[, in interval order."""
        ring = formula_ring()
        fm = self if self.ring is ring else self.over(ring)
        a, b, c, d = ring.vars("a", "b", "c", "d")
        return fm.commutator_parts(fm.folded_elem(zeta, a, b), fm.folded_elem(zeta, -a, -b),
                                   fm.folded_elem(xi, c, d), fm.folded_elem(xi, -c, -d), zeta, xi)

    # --- parity --------------------------------------------------------
    def parity(self, beta: int, d: int) -> ParityValue:
        """
        (eps, eps_bar) with theta_beta(r, s)^{w_d} = theta_{beta^{s_d}}(eps r, eps_bar s).

        Raises:
            ValueError: if no sign pair fits
        """
        w, w_inv = self.standard_weyl(d)
        perm = self.letter_perm(d)
        image = self.system.simple_perms[d][beta]
        signs = []
        for member, target in zip(self.fiber(beta), self.fiber(image)):
            if perm[member] != target:
                raise ValueError(f"u(s_{self.system.base_names[d]}) does not map the fiber of "
                                 f"{self.system.label(beta)} in order")
            c = self.model.conjugation_sign(member, w, w_inv, target)
            if c is None:
                raise ValueError(f"No sign pair fits the conjugate of U_{self.system.label(beta)} "
                                 f"by w_{self.system.base_names[d]}")
            signs.append(c * self.model.twist_sign(member) * self.model.twist_sign(target))
        return ParityValue(*signs)

    def parity_table(self) -> ParityTable:
        bits = {}
        for beta in range(len(self.system.roots)):
            for d in range(self.system.rank):
                bits[(beta, d)] = self.parity(beta, d).bits
        return ParityTable(self.system, bits)

    # --- squares of Weyl elements -------------------------------------
    def square_action(self, xi: int, zeta: int, r: Any, s: Any) -> Optional[str]:
        """
        How w_zeta(r, s)^2 acts on U_xi: a key of SQUARE_ACTIONS, or None.

        The model's ring must be a polynomial ring containing variables a and b.
        """
        a, b = self.ring.vars("a", "b")
        w, w_inv = self.folded_weyl(zeta, r, s), self.folded_weyl_inv(zeta, r, s)
        m = w_inv * w_inv * self.folded_elem(xi, a, b) * w * w
        x = self.read_pair(m, xi)
        if m != self.theta(xi, x):
            return None
        for label, (u, v) in SQUARE_ACTIONS.items():
            if x == PairElem(a * u, b * v):
                return label
        return None


SQUARE_ACTIONS = {"identity": (1, 1), "inversion": (-1, -1), "star": (-1, 1), "star-then-inversion": (1, -1)}


def expected_square_action(system: RootSystem, xi: int, zeta: int) -> str:
    """The action of w_zeta^2 on U_xi predicted by the span type and position of (xi, zeta)."""
    if system.proportional(xi, zeta):
        return "identity"
    span = system.classify_span(xi, zeta)
    if span == "A1xA1":
        return "identity"
    if span == "A2":
        return "inversion"
    position = system.position_of(xi, zeta)
    if position == "involution":
        return "star"
    if position == "inverted-involution":
        return "star-then-inversion"
    raise ValueError(f"Unexpected position of ({system.label(xi)}, {system.label(zeta)})")


# --- twist resolution ----------------------------------------------------
@dataclass(frozen=True)
class TwistResolution:
    kind: str
    twist: FrozenSet[int]
    method: str
    candidates: int
    message: str

    def labels(self) -> List[str]:
        system = build_system(self.kind)
        return [system.label(i) for i in sorted(self.twist)]


Equation = Tuple[int, int]


def solve_gf2(equations: Sequence[Equation]) -> Optional[int]:
    """
    Solve a linear system over GF(2) given as (mask, rhs) rows.

    Returns:
        A solution bitmask with all free variables zero, or None if inconsistent
    """
    pivots: Dict[int, Equation] = {}
    for mask, rhs in equations:
        while mask:
            top = mask.bit_length() - 1
            if top not in pivots:
                pivots[top] = (mask, rhs)
                break
            pm, pr = pivots[top]
            mask ^= pm
            rhs ^= pr
        if not mask and rhs:
            return None
    solution = 0
    for top in sorted(pivots):
        mask, rhs = pivots[top]
        rest = mask & ~(1 << top) & solution
        if rhs ^ (bin(rest).count("1") & 1):
            solution |= 1 << top
    return solution


def _bit(system: RootSystem, root: int) -> int:
    return 1 << (root if system.is_positive(root) else system.neg(root))


def _sign_bit(value: Any) -> int:
    return 1 if int(value) < 0 else 0


def twist_equations(kind: str) -> Tuple[List[Equation], List[str]]:
    """
    Linear conditions over GF(2) (one unknown per positive source root) for the
    twisted model to reproduce the embedded parity table and commutation maps.

    Returns:
        (equations, problems); problems lists rows no twist can repair
    """
    base = ChevalleyModel(kind)
    folded = FoldedModel(base)
    src, tgt = base.system, folded.system
    equations: List[Equation] = []
    problems: List[str] = []

    # conjugation signs of E under w_delta(1) and w_delta(1)^-1 for every source base root
    cplus: Dict[Tuple[int, int], int] = {}
    cminus: Dict[Tuple[int, int], int] = {}
    for k, delta in enumerate(src.base_index):
        w, w_inv = base.weyl_elem(delta, 1), base.weyl_elem_inv(delta, 1)
        perm = src.simple_perms[k]
        for alpha in range(len(src.roots)):
            plus = base.conjugation_sign(alpha, w, w_inv, perm[alpha])
            minus = base.conjugation_sign(alpha, w_inv, w, perm[alpha])
            if plus is None or minus is None:
                problems.append(f"w_{src.base_names[k]} is not a Weyl element at {src.label(alpha)}")
                continue
            cplus[(alpha, k)] = 1 if plus < 0 else 0
            cminus[(alpha, k)] = 1 if minus < 0 else 0

    if tgt.kind in ("H3", "H4"):
        table = parity_table_from_figure(tgt.kind)
        for beta in range(len(tgt.roots)):
            for d in range(tgt.rank):
                i, j = folded.folding.base_pair(d)
                di, dj = src.base_index[i], src.base_index[j]
                value = table.value(beta, d)
                for alpha, expected in zip(folded.fiber(beta), (value.eps, value.eps_bar)):
                    a1 = src.simple_perms[i][alpha]
                    a2 = src.simple_perms[j][a1]
                    if (alpha, i) not in cplus or (a1, j) not in cplus:
                        continue
                    mask = _bit(src, alpha) ^ _bit(src, a2)
                    if cplus[(alpha, i)] != cminus[(alpha, i)]:
                        mask ^= _bit(src, di)
                    if cplus[(a1, j)] != cminus[(a1, j)]:
                        mask ^= _bit(src, dj)
                    rhs = (1 if expected < 0 else 0) ^ cplus[(alpha, i)] ^ cplus[(a1, j)]
                    equations.append((mask, rhs))

    for row in _rows_for(tgt):
        zeta, xi, rho = row_parts(tgt, row)
        try:
            parts = dict(folded.extract_commutation_map(zeta, xi))
        except FactorisationError as exc:
            problems.append(f"{row.label()}: {exc}")
            continue
        expected = row_formula(row)
        got = parts.get(rho)
        if got is None:
            problems.append(f"{row.label()}: {tgt.label(rho)} is not in the interval")
            continue
        z1, z2 = folded.fiber(zeta)
        x1, x2 = folded.fiber(xi)
        for component, target in enumerate(folded.fiber(rho)):
            want = dict(expected.left.terms() if component == 0 else expected.right.terms())
            have = dict(got.left.terms() if component == 0 else got.right.terms())
            if set(want) != set(have) or any(abs(int(want[m])) != abs(int(have[m])) for m in want):
                problems.append(f"{row.label()} component {component + 1}: {have} cannot match {want} by signs")
                continue
            for monom in want:
                i, j, k, l = (e % 2 for e in monom)
                mask = _bit(src, target)
                for flag, root in ((i, z1), (j, z2), (k, x1), (l, x2)):
                    if flag:
                        mask ^= _bit(src, root)
                equations.append((mask, _sign_bit(want[monom]) ^ _sign_bit(have[monom])))
    return equations, problems


def _rows_for(target: RootSystem) -> List[CommapRow]:
    if target.kind in ("H3", "H4"):
        return figure_rows(target.kind)
    rows = []
    for row in figure_rows("h3"):
        try:
            row_parts(target, row)
        except ValueError:
            continue
        rows.append(row)
    return rows


def _satisfies(equations: Sequence[Equation], assignment: int) -> bool:
    return all((bin(mask & assignment).count("1") & 1) == rhs for mask, rhs in equations)


@lru_cache(maxsize=None)
def resolve_twist(kind: str) -> TwistResolution:
    """
    The twist set of the standard model of a source kind.

    Subsets of the simple roots are tried first (smallest first); if none fits,
    the full system over all positive roots is solved. If that is inconsistent
    too the untwisted model is used and the failure is reported.
    """
    kind = kind.upper()
    system = build_system(kind)
    equations, problems = twist_equations(kind)
    simple = list(system.base_index)
    fits = []
    for size in range(len(simple) + 1):
        for mask in range(1 << len(simple)):
            if bin(mask).count("1") != size:
                continue
            assignment = 0
            for k, root in enumerate(simple):
                if mask >> k & 1:
                    assignment |= 1 << root
            if _satisfies(equations, assignment):
                fits.append(assignment)
    if problems:
        print(f"Warning: twist search for {kind} found {len(problems)} unrepairable rows: {problems[0]}")
    if fits:
        twist = frozenset(i for i in range(len(system.roots)) if fits[0] >> i & 1)
        return TwistResolution(kind, twist, "simple-subset", len(fits),
                               f"{len(fits)} subsets of the simple roots fit; using the smallest")
    solution = solve_gf2(equations)
    if solution is not None:
        twist = frozenset(i for i in range(len(system.roots)) if solution >> i & 1)
        return TwistResolution(kind, twist, "linear-system", 0,
                               f"no subset of simple roots fits; solved over {len(system.positive)} positive roots")
    print(f"Warning: no twist of the {kind} model reproduces the embedded tables; using the untwisted model")
    return TwistResolution(kind, frozenset(), "fallback", 0, "no twist fits; structural checks only")


@lru_cache(maxsize=None)
def standard_model(kind: str, ring_name: str = "z") -> FoldedModel:
    """Cached standard folded model over Z (or Z[a,b,c,d] with ring_name='poly')."""
    ring = formula_ring() if ring_name == "poly" else IntegerRing()
    return FoldedModel.standard(kind, ring)
