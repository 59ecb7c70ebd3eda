# e8_algebra.py
"""
The Lie algebra of type E8 over Z with a Chevalley basis.

Structure constants come from the Frenkel-Kac sign cocycle on the root lattice,
eps(a, b) = (-1)^(sum a_i b_i + sum_{edges i<j} a_i b_j), so no table has to
be typed in. The basis of the 248-dimensional adjoint module is e_root for
every root (index = root index in build_system("E8")) followed by the coroots
h_1..h_8 (indices 240..247).
"""

from __future__ import annotations

from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Tuple

from api.models import CheckResult, check
from root_systems import RootSystem, build_system

Vector = Dict[int, int]
Entries = Dict[Tuple[int, int], int]

DIM = 248


class E8Algebra:
    """Chevalley basis e_a = s_a E_a with s_a the sign of a, so [e_a, e_-a] = h_a."""

    def __init__(self):
        self.system: RootSystem = build_system("E8")
        self.rank = self.system.rank
        self.n_roots = len(self.system.roots)
        self.coords: List[Tuple[int, ...]] = [tuple(c.a for c in v.coords) for v in self.system.roots]
        self._by_coords: Dict[Tuple[int, ...], int] = {c: i for i, c in enumerate(self.coords)}
        self._sign = [1 if self.system.is_positive(i) else -1 for i in range(self.n_roots)]
        # (alpha_i | root) for every base position i
        self._cartan = [[self.system.gram[bi][r].a for r in range(self.n_roots)] for bi in self.system.base_index]
        self._ad: Dict[int, Entries] = {}
        self._ad2: Dict[int, Entries] = {}

    # --- lattice data --------------------------------------------------
    def cocycle(self, a: int, b: int) -> int:
        x, y = self.coords[a], self.coords[b]
        total = sum(p * q for p, q in zip(x, y))
        for i, j in self.system.edges:
            total += x[i] * y[j]
        return -1 if total % 2 else 1

    def root_sum(self, a: int, b: int) -> Optional[int]:
        s = tuple(p + q for p, q in zip(self.coords[a], self.coords[b]))
        return self._by_coords.get(s)

    def structure_constant(self, a: int, b: int) -> int:
        """N with [e_a, e_b] = N e_(a+b); zero when a + b is not a root."""
        c = self.root_sum(a, b)
        if c is None:
            return 0
        return self._sign[a] * self._sign[b] * self._sign[c] * self.cocycle(a, b)

    def basis_label(self, k: int) -> str:
        if k < self.n_roots:
            return f"e{self.system.label(k)}"
        return f"h{k - self.n_roots + 1}"

    # --- bracket -------------------------------------------------------
    def bracket_basis(self, i: int, j: int) -> Vector:
        n = self.n_roots
        if i >= n and j >= n:
            return {}
        if i >= n:
            return {j: self._cartan[i - n][j]} if self._cartan[i - n][j] else {}
        if j >= n:
            value = -self._cartan[j - n][i]
            return {i: value} if value else {}
        if self.system.neg(i) == j:
            return {n + k: c for k, c in enumerate(self.coords[i]) if c}
        c = self.root_sum(i, j)
        if c is None:
            return {}
        return {c: self.structure_constant(i, j)}

    def bracket(self, x: Vector, y: Vector) -> Vector:
        out: Vector = {}
        for i, a in x.items():
            for j, b in y.items():
                for k, c in self.bracket_basis(i, j).items():
                    out[k] = out.get(k, 0) + a * b * c
        return {k: v for k, v in out.items() if v}

    # --- adjoint action ------------------------------------------------
    def ad(self, a: int) -> Entries:
        """ad e_a as entries M[target, source]."""
        if a not in self._ad:
            entries: Entries = {}
            for src in range(DIM):
                for tgt, value in self.bracket_basis(a, src).items():
                    entries[(tgt, src)] = value
            self._ad[a] = entries
        return self._ad[a]

    def ad_square_half(self, a: int) -> Entries:
        """(ad e_a)^2 / 2, exact over Z."""
        if a not in self._ad2:
            ad = self.ad(a)
            by_row: Dict[int, List[Tuple[int, int]]] = {}
            for (tgt, src), value in ad.items():
                by_row.setdefault(src, []).append((tgt, value))
            square: Entries = {}
            for (mid, src), v1 in ad.items():
                for tgt, v2 in by_row.get(mid, ()):
                    square[(tgt, src)] = square.get((tgt, src), 0) + v1 * v2
            half: Entries = {}
            for key, value in square.items():
                if value % 2:
                    raise ValueError(f"(ad e_{self.basis_label(a)})^2 has odd entry {value} at {key}")
                if value:
                    half[key] = value // 2
            self._ad2[a] = half
        return self._ad2[a]

    # --- checks --------------------------------------------------------
    def jacobi_violation(self, i: int, j: int, k: int) -> Vector:
        x, y, z = {i: 1}, {j: 1}, {k: 1}
        total: Vector = {}
        for term in (self.bracket(x, self.bracket(y, z)),
                     self.bracket(y, self.bracket(z, x)),
                     self.bracket(z, self.bracket(x, y))):
            for key, value in term.items():
                total[key] = total.get(key, 0) + value
        return {key: value for key, value in total.items() if value}

    def generators(self) -> List[int]:
        """e_delta and e_-delta for the simple roots delta."""
        return list(self.system.base_index) + [self.system.neg(i) for i in self.system.base_index]

    def jacobi_triples(self, gens: Optional[Iterable[int]] = None) -> Iterable[Tuple[int, int, int]]:
        """
        (g, x, y) for every generator g and every basis pair x < y.

        The Jacobiator is alternating, so these triples say that ad g is a
        derivation for each generator. Elements whose ad is a derivation form a
        subalgebra, so once the generators generate, the identity holds on all
        triples of basis vectors.
        """
        for g in (self.generators() if gens is None else gens):
            for x in range(DIM):
                for y in range(x + 1, DIM):
                    yield (g, x, y)

    def generation_gaps(self) -> List[int]:
        """Basis vectors not reached by bracketing generators with lower vectors."""
        reached = set(self.generators())
        system = self.system
        for k, delta in enumerate(system.base_index):
            if self.bracket_basis(delta, system.neg(delta)) == {self.n_roots + k: 1}:
                reached.add(self.n_roots + k)
        # roots sorted by height, positive and negative halves in the same order
        half = self.n_roots // 2
        for offset in (0, half):
            for a in range(offset, offset + half):
                if a in reached:
                    continue
                for g in self.generators():
                    rest = self.root_sum(a, system.neg(g))
                    if rest is not None and rest in reached and self.structure_constant(g, rest):
                        reached.add(a)
                        break
        return [k for k in range(DIM) if k not in reached]


@lru_cache(maxsize=None)
def e8_algebra() -> E8Algebra:
    return E8Algebra()


def e8_checks() -> List[CheckResult]:
    """Antisymmetry and unit size of N, generation, the Jacobi identity and exactness of the divided square."""
    alg = e8_algebra()
    n = alg.n_roots
    bad_n = []
    for a in range(n):
        for b in range(n):
            nab = alg.structure_constant(a, b)
            if nab and (abs(nab) != 1 or nab != -alg.structure_constant(b, a)):
                bad_n.append((a, b))
    results = [check("e8-structure-constants", "N(a,b) = -N(b,a) and |N(a,b)| = 1 whenever a + b is a root",
                     not bad_n, "; ".join(f"({alg.basis_label(a)},{alg.basis_label(b)})" for a, b in bad_n[:5]))]

    skew = []
    for i in range(DIM):
        for j in range(i, DIM):
            ij, ji = alg.bracket_basis(i, j), alg.bracket_basis(j, i)
            if ij != {k: -v for k, v in ji.items()}:
                skew.append((i, j))
    results.append(check("e8-antisymmetric", "[x, y] = -[y, x] on all pairs of basis vectors",
                         not skew, "; ".join(f"({alg.basis_label(i)},{alg.basis_label(j)})" for i, j in skew[:5])))

    gaps = alg.generation_gaps()
    results.append(check("e8-generated", "e_delta and e_-delta for simple delta generate the algebra",
                         not gaps, ", ".join(alg.basis_label(k) for k in gaps[:5])))

    bad_j = [triple for triple in alg.jacobi_triples() if alg.jacobi_violation(*triple)]
    results.append(check("e8-jacobi", "the Jacobi identity holds on all triples of basis vectors "
                                      "(ad of every generator is a derivation)",
                         not bad_j, "; ".join("(" + ",".join(alg.basis_label(t) for t in tr) + ")" for tr in bad_j[:5])))

    odd = []
    for a in alg.system.base_index:
        try:
            alg.ad_square_half(a)
        except ValueError as exc:
            odd.append(str(exc))
    results.append(check("e8-divided-power", "(ad e_a)^2 / 2 preserves the Z-form", not odd, "; ".join(odd[:3])))
    return results
