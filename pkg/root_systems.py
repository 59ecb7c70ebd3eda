# root_systems.py
"""
Root systems A4, D6, E8, H2, H3, H4 and the golden versions GH2, GH3, GH4.

Roots are stored in coordinates with respect to a fixed ordered base, together
with the symmetric pairing B on base vectors. B is normalised so that every
short root has B(a, a) = 2: for A/D/E this is the Cartan matrix, for H it is
twice the Gram matrix of unit vectors. The angle between neighbouring H base
roots is obtuse, so B(rho2, rho3) = -tau.

Most queries take either a RootVec or a root index into RootSystem.roots.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cmp_to_key, lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple, Union

from api.models import CheckResult, check
from golden_arith import ONE, TAU, ZERO, GoldenInt, parse_golden

KINDS = ("A4", "D6", "E8", "H2", "H3", "H4", "GH2", "GH3", "GH4")

# base names, edges (i, j, B_ij) on base positions
_DIAGRAMS = {
    "A4": (("delta2", "delta3", "delta4", "delta5"),
           ((0, 1, -1), (1, 2, -1), (2, 3, -1))),
    "D6": (("delta1", "delta2", "delta3", "delta4", "delta5", "delta6"),
           ((0, 1, -1), (1, 2, -1), (2, 3, -1), (3, 4, -1), (3, 5, -1))),
    "E8": (("delta1", "delta2", "delta3", "delta4", "delta5", "delta6", "delta7", "delta8"),
           ((6, 0, -1), (0, 1, -1), (1, 2, -1), (2, 3, -1), (3, 5, -1), (5, 7, -1), (3, 4, -1))),
    "H2": (("rho2", "rho3"), ((0, 1, -TAU),)),
    "H3": (("rho1", "rho2", "rho3"), ((0, 1, -1), (1, 2, -TAU))),
    "H4": (("rho0", "rho1", "rho2", "rho3"), ((0, 1, -1), (1, 2, -1), (2, 3, -TAU))),
}

SPAN_TYPES = {2: "A1", 4: "A1xA1", 6: "A2", 10: "H2"}

RootLike = Union["RootVec", int]


@dataclass(frozen=True)
class RootVec:
    """A vector in base coordinates. Vectors of different bases never compare equal."""

    coords: Tuple[GoldenInt, ...]
    basis: str

    def _check(self, other: "RootVec") -> None:
        if self.basis != other.basis:
            raise ValueError(f"Cannot combine vectors of bases {self.basis} and {other.basis}")

    def __add__(self, other: "RootVec") -> "RootVec":
        self._check(other)
        return RootVec(tuple(x + y for x, y in zip(self.coords, other.coords)), self.basis)

    def __sub__(self, other: "RootVec") -> "RootVec":
        self._check(other)
        return RootVec(tuple(x - y for x, y in zip(self.coords, other.coords)), self.basis)

    def __neg__(self) -> "RootVec":
        return RootVec(tuple(-x for x in self.coords), self.basis)

    def __rmul__(self, scalar) -> "RootVec":
        return RootVec(tuple(scalar * x for x in self.coords), self.basis)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def support(self) -> Tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.coords) if c)

    def __str__(self) -> str:
        return "<" + ",".join(str(c) for c in self.coords) + ">"

    def to_markdown(self) -> str:
        return "⟨" + ",".join(c.to_markdown() for c in self.coords) + "⟩"


def braid_word(m: int, s, t) -> Tuple:
    """Alternating word s t s t ... of length m."""
    if m < 0:
        raise ValueError(f"Braid word length must be non-negative, got {m}")
    return tuple(s if k % 2 == 0 else t for k in range(m))


class RootSystem:
    """
    A finite root system with a fixed ordered base.

    Roots are sorted positive first (by height, then coordinates) followed by
    their negatives in the same order, so root i and root i + N/2 are opposite.
    """

    def __init__(self, kind: str):
        if kind not in KINDS:
            raise ValueError(f"Unknown root system '{kind}'. Available: {list(KINDS)}")
        self.kind = kind
        self.golden = kind.startswith("G")
        self.basis = kind[1:] if self.golden else kind
        self.crystallographic = self.basis in ("A4", "D6", "E8")
        names, edges = _DIAGRAMS[self.basis]
        self.base_names: Tuple[str, ...] = names
        self.rank = len(names)
        pairing = [[ZERO] * self.rank for _ in range(self.rank)]
        for i in range(self.rank):
            pairing[i][i] = GoldenInt(2)
        for i, j, value in edges:
            value = GoldenInt.coerce(value)
            pairing[i][j] = value
            pairing[j][i] = value
        self.pairing: Tuple[Tuple[GoldenInt, ...], ...] = tuple(tuple(row) for row in pairing)
        self.edges = tuple((min(i, j), max(i, j)) for i, j, _ in edges)
        self.base: Tuple[RootVec, ...] = tuple(
            RootVec(tuple(ONE if k == i else ZERO for k in range(self.rank)), self.basis)
            for i in range(self.rank)
        )
        self.roots: Tuple[RootVec, ...] = self._close()
        self.index: Dict[RootVec, int] = {v: i for i, v in enumerate(self.roots)}
        self.base_index: Tuple[int, ...] = tuple(self.index[v] for v in self.base)
        half = len(self.roots) // 2
        self.positive: Tuple[int, ...] = tuple(range(half))
        self._bv = [self._times_pairing(v) for v in self.roots]
        self.gram: List[List[GoldenInt]] = [
            [self._dot(self._bv[i], w) for w in self.roots] for i in range(len(self.roots))
        ]
        self.simple_perms: Tuple[Tuple[int, ...], ...] = tuple(
            tuple(self.index[self.reflect(v, d)] for v in self.roots) for d in self.base
        )
        self._labels: Optional[Dict[str, int]] = None
        self._intervals: Dict[Tuple[int, int], Tuple[int, ...]] = {}

    # --- construction --------------------------------------------------
    def _times_pairing(self, v: RootVec) -> Tuple[GoldenInt, ...]:
        return tuple(
            sum((v.coords[i] * self.pairing[i][j] for i in range(self.rank) if v.coords[i]), ZERO)
            for j in range(self.rank)
        )

    @staticmethod
    def _dot(bv: Sequence[GoldenInt], w: RootVec) -> GoldenInt:
        total = ZERO
        for x, y in zip(bv, w.coords):
            if x and y:
                total = total + x * y
        return total

    def _close(self) -> Tuple[RootVec, ...]:
        found = set(self.base)
        queue = deque(self.base)
        while queue:
            v = queue.popleft()
            for d in self.base:
                w = self._reflect_simple(v, d)
                if w not in found:
                    found.add(w)
                    queue.append(w)
        if self.golden:
            found |= {TAU * v for v in found}
        positives = [v for v in found if all(c.sign() >= 0 for c in v.coords)]
        positives.sort(key=lambda v: (sum(v.coords, ZERO), v.coords))
        return tuple(positives) + tuple(-v for v in positives)

    def _reflect_simple(self, v: RootVec, d: RootVec) -> RootVec:
        i = d.support()[0]
        coef = sum((v.coords[j] * self.pairing[i][j] for j in range(self.rank)), ZERO)
        return v - coef * d

    # --- basic queries -------------------------------------------------
    def idx(self, x: RootLike) -> int:
        if isinstance(x, int):
            return x
        try:
            return self.index[x]
        except KeyError:
            raise ValueError(f"{x} is not a root of {self.kind}") from None

    def root(self, x: RootLike) -> RootVec:
        return self.roots[x] if isinstance(x, int) else x

    def __len__(self) -> int:
        return len(self.roots)

    def __contains__(self, v: RootVec) -> bool:
        return v in self.index

    def neg(self, i: int) -> int:
        half = len(self.roots) // 2
        return i + half if i < half else i - half

    def is_positive(self, x: RootLike) -> bool:
        return self.idx(x) < len(self.roots) // 2

    def pair(self, u: RootLike, v: RootLike) -> GoldenInt:
        """B(u, v); uses the precomputed table when both arguments are roots."""
        if isinstance(u, RootVec) and u not in self.index or isinstance(v, RootVec) and v not in self.index:
            return self._dot(self._times_pairing(self.root(u)), self.root(v))
        return self.gram[self.idx(u)][self.idx(v)]

    def vector(self, coords: Iterable) -> RootVec:
        return RootVec(tuple(GoldenInt.coerce(c) for c in coords), self.basis)

    def reflect(self, v: RootVec, alpha: RootVec) -> RootVec:
        """
        Reflect v along the hyperplane orthogonal to alpha.

        Raises:
            ValueError: if alpha is zero or the reflection leaves the Z[tau]-lattice
        """
        if v.basis != alpha.basis:
            raise ValueError(f"Cannot reflect a {v.basis} vector along a {alpha.basis} vector")
        if alpha.is_zero():
            raise ValueError("Cannot reflect along the zero vector")
        ba = self._times_pairing(alpha)
        norm = self._dot(ba, alpha)
        coef = (self._dot(ba, v) * 2).divide_exact(norm)
        if coef is None:
            raise ValueError(f"Reflection of {v} along {alpha} is not integral over Z[tau]")
        return v - coef * alpha

    def reflection_perm(self, x: RootLike) -> Tuple[int, ...]:
        alpha = self.root(x)
        return tuple(self.index[self.reflect(v, alpha)] for v in self.roots)

    def coxeter_m(self, i: int, j: int) -> int:
        """Order of s_i s_j for base positions i, j."""
        if i == j:
            return 1
        b = self.pairing[i][j]
        if b == 0:
            return 2
        if b == -1:
            return 3
        if b == -TAU:
            return 5
        raise ValueError(f"Unexpected pairing {b} between base roots {i} and {j}")

    # --- labels --------------------------------------------------------
    def e_vector(self, v: RootVec) -> List[int]:
        a = [c.a for c in v.coords]
        if self.basis == "D6":
            e = [0] * 6
            for i in range(5):
                e[i] += a[i]
                e[i + 1] -= a[i]
            e[4] += a[5]
            e[5] += a[5]
            return e
        e = [0] * 5
        for i in range(4):
            e[i] += a[i]
            e[i + 1] -= a[i]
        return e

    def label(self, x: RootLike) -> str:
        """e_i +- e_j notation for A4/D6, base coordinates <...> otherwise."""
        v = self.root(x)
        if self.basis not in ("A4", "D6"):
            return str(v)
        parts = []
        for k, c in enumerate(self.e_vector(v)):
            if c:
                sign = "-" if c < 0 else ("+" if parts else "")
                parts.append(f"{sign}e{k + 1}")
        return "".join(parts)

    def label_md(self, x: RootLike) -> str:
        v = self.root(x)
        return self.label(v) if self.basis in ("A4", "D6") else v.to_markdown()

    def parse_root(self, text: str) -> int:
        """Inverse of label(); also accepts base names such as 'rho2' or 'delta3'."""
        text = text.strip()
        if text in self.base_names:
            return self.base_index[self.base_names.index(text)]
        if text.startswith(("<", "⟨")):
            inner = text.strip("<>⟨⟩")
            coords = [parse_golden(p) for p in inner.split(",")]
            if len(coords) != self.rank:
                raise ValueError(f"Expected {self.rank} coordinates in '{text}'")
            return self.idx(self.vector(coords))
        if self._labels is None:
            self._labels = {self.label(i): i for i in range(len(self.roots))}
        if text not in self._labels:
            raise ValueError(f"'{text}' is not a root label of {self.kind}")
        return self._labels[text]

    # --- rank two combinatorics ---------------------------------------
    def _plane_coeffs(self, a: int, b: int, r: int) -> Tuple[GoldenInt, GoldenInt, GoldenInt, bool]:
        g = self.gram
        baa, bbb, bab = g[a][a], g[b][b], g[a][b]
        bra, brb = g[r][a], g[r][b]
        det = baa * bbb - bab * bab
        a_num = bra * bbb - brb * bab
        b_num = brb * baa - bra * bab
        in_plane = a_num * bra + b_num * brb == g[r][r] * det
        return a_num, b_num, det, in_plane

    def proportional(self, a: RootLike, b: RootLike) -> bool:
        a, b = self.idx(a), self.idx(b)
        g = self.gram
        return g[a][a] * g[b][b] - g[a][b] * g[a][b] == 0

    def in_open_cone(self, a: int, b: int, r: int) -> bool:
        """True if root r is a positive combination of roots a and b."""
        a_num, b_num, _, in_plane = self._plane_coeffs(a, b, r)
        return in_plane and a_num.sign() > 0 and b_num.sign() > 0

    def in_cry_cone(self, a: int, b: int, r: int) -> bool:
        """True if root r = i*a + j*b with i, j positive rational integers."""
        a_num, b_num, det, in_plane = self._plane_coeffs(a, b, r)
        if not (in_plane and a_num.sign() > 0 and b_num.sign() > 0):
            return False
        i, j = a_num.divide_exact(det), b_num.divide_exact(det)
        return i is not None and j is not None and i.b == 0 and j.b == 0

    def open_interval(self, alpha: RootLike, beta: RootLike) -> List[int]:
        """
        Roots strictly between alpha and beta, ordered by angle starting at alpha.

        Proportional roots (golden systems only) are ordered shorter first.

        Raises:
            ValueError: if alpha and beta are proportional
        """
        a, b = self.idx(alpha), self.idx(beta)
        cached = self._intervals.get((a, b))
        if cached is not None:
            return list(cached)
        if self.proportional(a, b):
            raise ValueError(f"Interval of proportional roots {self.label(a)}, {self.label(b)} is undefined")
        if self.crystallographic:
            if self.gram[a][b] == -1:
                return [self.index[self.roots[a] + self.roots[b]]]
            return []
        found = []
        for r in range(len(self.roots)):
            a_num, b_num, _, in_plane = self._plane_coeffs(a, b, r)
            if in_plane and a_num.sign() > 0 and b_num.sign() > 0:
                found.append((r, a_num, b_num))

        def _cmp(x, y) -> int:
            s = (x[2] * y[1] - y[2] * x[1]).sign()
            if s:
                return s
            return (self.gram[x[0]][x[0]] - self.gram[y[0]][y[0]]).sign()

        found.sort(key=cmp_to_key(_cmp))
        ordered = tuple(r for r, _, _ in found)
        self._intervals[(a, b)] = ordered
        return list(ordered)

    def cry_interval(self, alpha: RootLike, beta: RootLike) -> List[int]:
        a, b = self.idx(alpha), self.idx(beta)
        return [r for r in self.open_interval(a, b) if self.in_cry_cone(a, b, r)]

    def plane_roots(self, alpha: RootLike, beta: RootLike) -> frozenset:
        a, b = self.idx(alpha), self.idx(beta)
        if self.proportional(a, b):
            return frozenset(r for r in range(len(self.roots)) if self.proportional(a, r))
        return frozenset(r for r in range(len(self.roots)) if self._plane_coeffs(a, b, r)[3])

    def classify_span(self, alpha: RootLike, beta: RootLike) -> str:
        n = len(self.plane_roots(alpha, beta))
        if self.golden:
            n //= 2
        if n not in SPAN_TYPES:
            raise ValueError(f"Unexpected rank two subsystem with {n} roots")
        return SPAN_TYPES[n]

    def count_subsystems(self, alpha: RootLike, span_type: str) -> int:
        """Number of rank two subsystems of the given type that contain alpha."""
        a = self.idx(alpha)
        planes = {self.plane_roots(a, b) for b in range(len(self.roots)) if not self.proportional(a, b)}
        size = {v: k for k, v in SPAN_TYPES.items()}[span_type]
        if self.golden:
            size *= 2
        return sum(1 for p in planes if len(p) == size)

    def position_of(self, xi: RootLike, zeta: RootLike) -> str:
        """'involution', 'inverted-involution' or 'not-H2'."""
        x, z = self.idx(xi), self.idx(zeta)
        if self.proportional(x, z) or self.classify_span(x, z) != "H2":
            return "not-H2"
        p = abs(self.gram[x][z])
        if p == TAU:
            return "involution"
        if p == TAU - 1:
            return "inverted-involution"
        return "not-H2"

    def e2_plus(self) -> List[int]:
        """Positive roots lying in the plane of two base roots."""
        return [i for i in self.positive if len(self.roots[i].support()) <= 2]

    def quintuple(self, alpha: RootLike, epsilon: RootLike) -> Tuple[int, ...]:
        """The H2-quintuple (alpha, tau alpha + eps, tau alpha + tau eps, alpha + tau eps, eps)."""
        a, e = self.root(alpha), self.root(epsilon)
        vecs = (a, TAU * a + e, TAU * a + TAU * e, a + TAU * e, e)
        return tuple(self.idx(v) for v in vecs)

    def a2_triple(self, alpha: RootLike, gamma: RootLike) -> Tuple[int, ...]:
        a, c = self.root(alpha), self.root(gamma)
        return (self.idx(a), self.idx(a + c), self.idx(c))

    # --- words ---------------------------------------------------------
    def apply_word(self, x: RootLike, word: Sequence[int]) -> int:
        """alpha^(s_w1 s_w2 ...), letters are base positions."""
        i = self.idx(x)
        for letter in word:
            i = self.simple_perms[letter][i]
        return i

    def word_permutation(self, word: Sequence[int]) -> Tuple[int, ...]:
        return tuple(self.apply_word(i, word) for i in range(len(self.roots)))

    def word_length(self, perm: Sequence[int]) -> int:
        """Number of positive roots sent to negative roots."""
        half = len(self.roots) // 2
        return sum(1 for i in range(half) if perm[i] >= half)

    def reflection_word(self, beta: RootLike) -> Tuple[int, Tuple[int, ...]]:
        """A base position d and a word v with base[d]^v = beta (shortest such v)."""
        target = self.idx(beta)
        seen = {}
        queue = deque()
        for d, i in enumerate(self.base_index):
            seen[i] = (d, ())
            queue.append(i)
        while queue:
            i = queue.popleft()
            if i == target:
                return seen[i]
            d, word = seen[i]
            for s, perm in enumerate(self.simple_perms):
                j = perm[i]
                if j not in seen:
                    seen[j] = (d, word + (s,))
                    queue.append(j)
        raise ValueError(f"{self.label(target)} is not in the orbit of the base")


def build_system(kind: str) -> RootSystem:
    """Cached constructor; root systems are immutable."""
    return _build_system(kind.upper())


@lru_cache(maxsize=None)
def _build_system(kind: str) -> RootSystem:
    return RootSystem(kind)


class WeylGroup:
    """
    Full enumeration of a Weyl group as permutations of the roots.

    Elements are tuples p with p[i] the index of root_i^w. Words are retained
    from the breadth-first search, so each stored word is reduced.
    """

    def __init__(self, system: RootSystem):
        if system.basis == "E8":
            raise ValueError("Refusing to enumerate W(E8); apply generator words on demand instead")
        self.system = system
        n = len(system.roots)
        identity = tuple(range(n))
        self.elements: List[Tuple[int, ...]] = [identity]
        self.words: Dict[Tuple[int, ...], Tuple[int, ...]] = {identity: ()}
        self.parents: List[Tuple[int, int]] = [(-1, -1)]
        self._position: Dict[Tuple[int, ...], int] = {identity: 0}
        k = 0
        while k < len(self.elements):
            perm = self.elements[k]
            word = self.words[perm]
            for s, gen in enumerate(system.simple_perms):
                new = tuple(gen[perm[i]] for i in range(n))
                if new not in self._position:
                    self._position[new] = len(self.elements)
                    self.elements.append(new)
                    self.words[new] = word + (s,)
                    self.parents.append((k, s))
            k += 1

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def position(self, perm: Tuple[int, ...]) -> int:
        return self._position[perm]

    @staticmethod
    def inverse(perm: Sequence[int]) -> Tuple[int, ...]:
        inv = [0] * len(perm)
        for i, j in enumerate(perm):
            inv[j] = i
        return tuple(inv)

    def length(self, perm: Sequence[int]) -> int:
        return self.system.word_length(perm)

    def longest_element(self) -> Tuple[int, ...]:
        return max(self.elements, key=self.length)

    def orbit(self, x: RootLike) -> frozenset:
        i = self.system.idx(x)
        return frozenset(p[i] for p in self.elements)


def weyl_group(kind: str) -> WeylGroup:
    return _weyl_group(kind.upper())


@lru_cache(maxsize=None)
def _weyl_group(kind: str) -> WeylGroup:
    return WeylGroup(build_system(kind))


def longest_element(kind: str) -> Tuple[int, ...]:
    return weyl_group(kind).longest_element()


# --- parity maps -------------------------------------------------------
@dataclass(frozen=True)
class ParityValue:
    """An element (eps, eps_bar) of {+1,-1}^2."""

    eps: int = 1
    eps_bar: int = 1

    def __post_init__(self):
        if self.eps not in (1, -1) or self.eps_bar not in (1, -1):
            raise ValueError(f"Parity components must be +1 or -1, got ({self.eps},{self.eps_bar})")

    @classmethod
    def from_bits(cls, bits: int) -> "ParityValue":
        return cls(-1 if bits & 1 else 1, -1 if bits & 2 else 1)

    @classmethod
    def parse(cls, text: str) -> "ParityValue":
        left, right = text.strip().strip("()").split(",")
        return cls(int(left), int(right))

    @property
    def bits(self) -> int:
        return (self.eps == -1) | ((self.eps_bar == -1) << 1)

    def __mul__(self, other: "ParityValue") -> "ParityValue":
        return ParityValue(self.eps * other.eps, self.eps_bar * other.eps_bar)

    def __str__(self) -> str:
        return f"({self.eps},{self.eps_bar})"


Letter = Union[int, Tuple[int, int]]


def _letters(word: Iterable[Letter]) -> Iterable[Tuple[int, int]]:
    for letter in word:
        if isinstance(letter, tuple):
            yield letter
        else:
            yield (letter, 1)


class ParityTable:
    """
    The map (root, base root) -> {+1,-1}^2 of an H3 or H4 system.

    Values are stored as 2-bit masks: bit 0 for eps = -1, bit 1 for eps_bar = -1.
    """

    def __init__(self, system: RootSystem, bits: Dict[Tuple[int, int], int]):
        self.system = system
        self._bits = dict(bits)
        missing = [(i, d) for i in range(len(system.roots)) for d in range(system.rank)
                   if (i, d) not in self._bits]
        if missing:
            i, d = missing[0]
            raise ValueError(f"Parity table for {system.kind} has no value at "
                             f"({system.label(i)}, {system.base_names[d]})")

    @classmethod
    def from_positive(cls, system: RootSystem, rows: Dict[int, Sequence[ParityValue]]) -> "ParityTable":
        """Extend values given on positive roots by eta(-a, d) = eta(a, d)."""
        bits = {}
        for i, values in rows.items():
            for d, value in enumerate(values):
                bits[(i, d)] = value.bits
                bits[(system.neg(i), d)] = value.bits
        return cls(system, bits)

    def bits(self, i: int, d: int) -> int:
        return self._bits[(i, d)]

    def value(self, root: RootLike, d: int) -> ParityValue:
        return ParityValue.from_bits(self._bits[(self.system.idx(root), d)])

    def with_flip(self, root: RootLike, d: int, mask: int) -> "ParityTable":
        bits = dict(self._bits)
        key = (self.system.idx(root), d)
        bits[key] ^= mask
        return ParityTable(self.system, bits)

    def rows(self) -> List[Tuple[int, List[ParityValue]]]:
        return [(i, [self.value(i, d) for d in range(self.system.rank)]) for i in self.system.positive]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ParityTable):
            return NotImplemented
        return self.system.kind == other.system.kind and self._bits == other._bits

    def differences(self, other: "ParityTable") -> List[Tuple[int, int]]:
        return sorted(k for k in self._bits if self._bits[k] != other._bits.get(k))


def parity_extend(table: ParityTable, alpha: RootLike, word: Iterable[Letter]) -> ParityValue:
    """
    eta_{alpha, w} for a signed word w over the base.

    Letters are base positions (positive) or (position, sign) pairs; a negative
    letter contributes eta(alpha^{s_d}, d), the inverse of which is itself.
    """
    system = table.system
    cur = system.idx(alpha)
    acc = 0
    for d, sign in _letters(word):
        refl = system.simple_perms[d]
        acc ^= table.bits(cur if sign > 0 else refl[cur], d)
        cur = refl[cur]
    return ParityValue.from_bits(acc)


def braid_violations(table: ParityTable) -> List[Tuple[int, int, int]]:
    """(root, i, j) such that the two braid words of (i, j) give different parities."""
    system = table.system
    found = []
    for i in range(system.rank):
        for j in range(i + 1, system.rank):
            m = system.coxeter_m(i, j)
            left, right = braid_word(m, i, j), braid_word(m, j, i)
            for a in range(len(system.roots)):
                if parity_extend(table, a, left) != parity_extend(table, a, right):
                    found.append((a, i, j))
    return found


def _prefix_parities(table: ParityTable, group: WeylGroup) -> List[Tuple[int, ...]]:
    """P[k][x] = eta_{x, word(element k)} for every Weyl element, built along the BFS tree."""
    n = len(table.system.roots)
    prefix: List[Tuple[int, ...]] = [tuple([0] * n)]
    for k in range(1, len(group.elements)):
        parent, s = group.parents[k]
        pperm = group.elements[parent]
        pbits = prefix[parent]
        prefix.append(tuple(pbits[x] ^ table.bits(pperm[x], s) for x in range(n)))
    return prefix


def check_parity_properties(table: ParityTable) -> List[CheckResult]:
    """Negation invariance, braid invariance, adjacency triviality and completeness."""
    system = table.system
    n = len(system.roots)
    results = []

    bad = [(i, d) for i in range(n) for d in range(system.rank)
           if table.bits(i, d) != table.bits(system.neg(i), d)]
    results.append(check("parity-negation", "eta(-a, d) = eta(a, d) for every root and base root",
                         not bad, _witness(system, bad, lambda x: f"{system.label(x[0])},{system.base_names[x[1]]}")))

    braid = braid_violations(table)
    results.append(check("parity-braid", "parities of the two braid words agree for all roots and base pairs",
                         not braid, _witness(system, braid, lambda x: f"{system.label(x[0])} at "
                                                                         f"({system.base_names[x[1]]},{system.base_names[x[2]]})")))

    group = weyl_group(system.kind)
    prefix = _prefix_parities(table, group)
    orth = [[a for a in range(n) if system.gram[a][b] == 0] for b in range(n)]
    adjacency = []
    for k, perm in enumerate(group.elements):
        inv = group.inverse(perm)
        pk = prefix[k]
        for d, di in enumerate(system.base_index):
            beta = perm[di]
            refl = system.simple_perms[d]
            for a in orth[beta]:
                g = inv[a]
                if pk[g] ^ table.bits(g, d) ^ pk[refl[g]]:
                    adjacency.append((a, beta))
    results.append(check("parity-adjacency", "eta is trivial along Delta-expressions of roots orthogonal to the argument",
                         not adjacency, _witness(system, adjacency, lambda x: f"{system.label(x[0])} vs {system.label(x[1])}")))

    d2 = system.base_names.index("rho2") if "rho2" in system.base_names else 0
    span = stabiliser_parities(table, system.base_index[d2])
    results.append(check("parity-completeness", "stabilising words generate the full sign group {+1,-1}^2",
                         len(span) == 4, f"generated subgroup has order {len(span)}"))
    return results


def stabiliser_parities(table: ParityTable, alpha: RootLike) -> Set[int]:
    """
    Bits of eta_{alpha, w} over all words w (reduced or not) with alpha^w = alpha.

    Walks the finite graph of states (root, accumulated bits); the states over
    alpha are exactly the parities of stabilising words, and they form a subgroup.
    """
    system = table.system
    start = (system.idx(alpha), 0)
    seen = {start}
    queue = deque([start])
    while queue:
        cur, acc = queue.popleft()
        for d, refl in enumerate(system.simple_perms):
            state = (refl[cur], acc ^ table.bits(cur, d))
            if state not in seen:
                seen.add(state)
                queue.append(state)
    return {acc for root, acc in seen if root == start[0]}


def _witness(system: RootSystem, items: Sequence, render) -> str:
    shown = ", ".join(render(x) for x in items[:5])
    return f"{len(items)} violations: {shown}" if items else ""


# --- suite -------------------------------------------------------------
def rootsys_checks() -> List[CheckResult]:
    """Cardinalities, Weyl orders, transitivity, rank two subsystem counts and interval orderings."""
    results = []
    expected = {"H2": 10, "H3": 30, "H4": 120, "GH2": 20, "GH3": 60, "GH4": 240,
                "A4": 20, "D6": 60, "E8": 240}
    for kind, size in expected.items():
        got = len(build_system(kind).roots)
        results.append(check(f"rootsys-card-{kind.lower()}", f"|{kind}| = {size}", got == size, f"found {got}"))

    for kind, order in (("H2", 10), ("H3", 120), ("H4", 14400)):
        group = weyl_group(kind)
        results.append(check(f"rootsys-weyl-{kind.lower()}", f"|W({kind})| = {order}", group.order == order,
                             f"found {group.order}"))
        orbit = group.orbit(0)
        results.append(check(f"rootsys-transitive-{kind.lower()}", f"W({kind}) acts transitively on its roots",
                             len(orbit) == len(build_system(kind).roots), f"orbit of size {len(orbit)}"))

    h3 = build_system("H3")
    bad_counts = []
    for a in range(len(h3.roots)):
        for span_type in ("H2", "A2", "A1xA1"):
            c = h3.count_subsystems(a, span_type)
            if c != 2:
                bad_counts.append(f"{h3.label(a)} lies in {c} of type {span_type}")
    results.append(check("rootsys-subsystem-counts",
                         "every H3 root lies in exactly two subsystems of each type H2, A2, A1xA1",
                         not bad_counts, "; ".join(bad_counts[:5])))

    types = {h3.classify_span(a, b) for a in range(30) for b in range(30) if not h3.proportional(a, b)}
    results.append(check("rootsys-rank2-types", "every rank two subsystem of H3 is of type A1xA1, A2 or H2",
                         types <= {"A1xA1", "A2", "H2"}, f"types found: {sorted(types)}"))

    results.append(_check_interval_nesting(h3))
    results.append(_check_reflection_conjugation(h3))
    return results


def _check_interval_nesting(system: RootSystem) -> CheckResult:
    bad = []
    n = len(system.roots)
    for a in range(n):
        for b in range(n):
            if system.proportional(a, b):
                continue
            chain = [a] + system.open_interval(a, b) + [b]
            for i in range(len(chain)):
                for j in range(i + 1, len(chain)):
                    if system.open_interval(chain[i], chain[j]) != chain[i + 1:j]:
                        bad.append((chain[i], chain[j]))
    return check("rootsys-interval-nesting",
                 "interval orderings are nested: the interval between two members is the segment between them",
                 not bad, _witness(system, bad, lambda x: f"({system.label(x[0])},{system.label(x[1])})"))


def _check_reflection_conjugation(system: RootSystem) -> CheckResult:
    group = weyl_group(system.kind)
    refl = [system.reflection_perm(i) for i in range(len(system.roots))]
    bad = []
    for perm in group.elements:
        inv = group.inverse(perm)
        for v in system.positive:
            lhs = refl[perm[v]]
            if any(lhs[x] != perm[refl[v][inv[x]]] for x in range(len(system.roots))):
                bad.append(v)
                break
    return check("rootsys-reflection-conjugation", "s_(v^w) = (s_v)^w for every root v and Weyl element w",
                 not bad, _witness(system, bad, system.label))
