# folding.py
"""
The foldings E8 -> H4, D6 -> H3 and A4 -> H2.

The linear map goldfold sends the source base onto the golden target GH
(each source base root goes to a target base root or tau times one), and
fold rescales the image to the short representative of its ray. Each H root
has exactly two preimages: alpha1 with short golden image and alpha2 with
golden image tau times that of alpha1.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from api.models import CheckResult, check, note
from golden_arith import ONE, TAU, TAU_INV, ZERO
from root_systems import RootLike, RootSystem, RootVec, build_system

# source base name -> (target base name, scale)
_IMAGES = {
    "E8": {"delta1": ("rho1", ONE), "delta2": ("rho2", ONE), "delta3": ("rho3", TAU),
           "delta4": ("rho2", TAU), "delta5": ("rho3", ONE), "delta6": ("rho1", TAU),
           "delta7": ("rho0", ONE), "delta8": ("rho0", TAU)},
    "D6": {"delta1": ("rho1", ONE), "delta2": ("rho2", ONE), "delta3": ("rho3", TAU),
           "delta4": ("rho2", TAU), "delta5": ("rho3", ONE), "delta6": ("rho1", TAU)},
    "A4": {"delta2": ("rho2", ONE), "delta3": ("rho3", TAU), "delta4": ("rho2", TAU),
           "delta5": ("rho3", ONE)},
}
TARGETS = {"E8": "H4", "D6": "H3", "A4": "H2"}


class FoldingMap:
    """goldfold, fold, fibers and the Weyl embedding u for one source kind."""

    def __init__(self, source_kind: str):
        source_kind = source_kind.upper()
        if source_kind not in _IMAGES:
            raise ValueError(f"No folding for '{source_kind}'. Available: {list(_IMAGES)}")
        self.source: RootSystem = build_system(source_kind)
        self.target: RootSystem = build_system(TARGETS[source_kind])
        self.golden: RootSystem = build_system("G" + TARGETS[source_kind])
        t = self.target
        self._matrix = []
        for name in self.source.base_names:
            tname, scale = _IMAGES[source_kind][name]
            k = t.base_names.index(tname)
            self._matrix.append(tuple(scale if j == k else ZERO for j in range(t.rank)))

        n = len(self.source.roots)
        self._gold: List[int] = [self.golden.idx(self._apply(self.source.roots[i])) for i in range(n)]
        self._fold: List[int] = []
        self._short: List[bool] = []
        for i in range(n):
            v = self.golden.roots[self._gold[i]]
            if v in t:
                self._fold.append(t.idx(v))
                self._short.append(True)
            else:
                self._fold.append(t.idx(TAU_INV * v))
                self._short.append(False)
        fibers: Dict[int, List[int]] = {}
        for i in range(n):
            fibers.setdefault(self._fold[i], [None, None])[0 if self._short[i] else 1] = i
        self._fibers: Dict[int, Tuple[int, int]] = {b: (p[0], p[1]) for b, p in fibers.items()}

    def _apply(self, v: RootVec) -> RootVec:
        coords = [ZERO] * self.target.rank
        for a, image in zip(v.coords, self._matrix):
            if a:
                for j, c in enumerate(image):
                    if c:
                        coords[j] = coords[j] + a * c
        return RootVec(tuple(coords), self.target.basis)

    # --- the maps ------------------------------------------------------
    def goldfold(self, alpha: RootLike) -> int:
        """Index in the golden target system."""
        return self._gold[self.source.idx(alpha)]

    def fold(self, alpha: RootLike) -> int:
        """Index in the H target system."""
        return self._fold[self.source.idx(alpha)]

    def is_short(self, alpha: RootLike) -> bool:
        return self._short[self.source.idx(alpha)]

    def linear(self, v: RootVec) -> RootVec:
        """goldfold extended linearly to arbitrary source vectors."""
        return self._apply(v)

    def fiber(self, beta: RootLike) -> Tuple[int, int]:
        """(alpha1, alpha2) source indices, short golden image first."""
        return self._fibers[self.target.idx(beta)]

    def fiber_rows(self) -> List[Tuple[int, int, int]]:
        """(beta, alpha1, alpha2) for every positive target root."""
        return [(b, *self._fibers[b]) for b in self.target.positive]

    # --- Weyl embedding ------------------------------------------------
    def base_pair(self, d: int) -> Tuple[int, int]:
        """Source base positions of the fiber of the target base root d."""
        a1, a2 = self.fiber(self.target.base_index[d])
        bi = self.source.base_index
        return bi.index(a1), bi.index(a2)

    def embed_weyl(self, word: Sequence[int]) -> Tuple[int, ...]:
        """u(w) as a source word: each letter rho becomes s_delta_i s_delta_j."""
        out: List[int] = []
        for d in word:
            out.extend(self.base_pair(d))
        return tuple(out)

    def embed_reflection(self, beta: RootLike) -> Tuple[int, ...]:
        """u(s_beta) = s_alpha1 s_alpha2 as a permutation of the source roots."""
        a1, a2 = self.fiber(beta)
        p1 = self.source.reflection_perm(a1)
        p2 = self.source.reflection_perm(a2)
        return tuple(p2[p1[i]] for i in range(len(self.source.roots)))


@lru_cache(maxsize=None)
def folding_map(source_kind: str) -> FoldingMap:
    return FoldingMap(source_kind)


# --- checks --------------------------------------------------------------
def check_bijection(fm: FoldingMap) -> List[CheckResult]:
    src, gold, tgt = fm.source, fm.golden, fm.target
    images = {fm.goldfold(i) for i in range(len(src.roots))}
    results = [check(f"fold-{src.kind.lower()}-bijective", f"goldfold maps {src.kind} bijectively onto {gold.kind}",
                     len(images) == len(src.roots) == len(gold.roots),
                     f"{len(images)} images for {len(src.roots)} roots, |{gold.kind}| = {len(gold.roots)}")]
    bad = []
    for b in range(len(tgt.roots)):
        a1, a2 = fm.fiber(b)
        if a1 is None or a2 is None:
            bad.append(f"{tgt.label(b)} has an incomplete fiber")
            continue
        if src.pair(a1, a2) != 0:
            bad.append(f"fiber of {tgt.label(b)} is not orthogonal")
        if gold.roots[fm.goldfold(a2)] != TAU * gold.roots[fm.goldfold(a1)]:
            bad.append(f"long preimage of {tgt.label(b)} is not tau times the short one")
    results.append(check(f"fold-{src.kind.lower()}-fibers",
                         "every fiber consists of two orthogonal roots with golden images x and tau x",
                         not bad, "; ".join(bad[:5])))
    return results


def check_equivariance(fm: FoldingMap) -> CheckResult:
    """goldfold(a^{u(s)}) = goldfold(a)^s and fibers move in order under every generator."""
    src, gold, tgt = fm.source, fm.golden, fm.target
    bad = []
    for d in range(tgt.rank):
        u = src.word_permutation(fm.embed_weyl((d,)))
        refl_gold = gold.simple_perms[d]
        refl_tgt = tgt.simple_perms[d]
        for a in range(len(src.roots)):
            if fm.goldfold(u[a]) != refl_gold[fm.goldfold(a)]:
                bad.append(f"{src.label(a)} under {tgt.base_names[d]}")
        for b in range(len(tgt.roots)):
            a1, a2 = fm.fiber(b)
            if fm.fiber(refl_tgt[b]) != (u[a1], u[a2]):
                bad.append(f"fiber of {tgt.label(b)} under {tgt.base_names[d]}")
    return check(f"fold-{src.kind.lower()}-equivariant",
                 "goldfold intertwines u(w) with w and preserves the short/long order of fibers",
                 not bad, "; ".join(bad[:5]))


def check_interval_compatibility(fm: FoldingMap) -> List[CheckResult]:
    """
    Pairwise root-interval compatibility of fold and goldfold.

    The source is simply laced, so ]a, b[ is {a + b} when B(a, b) = -1 and empty
    otherwise; only those pairs can violate containment. For sets of roots the
    condition follows from the pairwise one because goldfold is linear and the
    rescaling to short representatives is by positive factors.
    """
    src, gold, tgt = fm.source, fm.golden, fm.target
    n = len(src.roots)
    fold_bad, gold_bad, cry_violations = [], [], 0
    for a in range(n):
        for b in range(n):
            if a == b or src.gram[a][b] != -1:
                continue
            c = src.index[src.roots[a] + src.roots[b]]
            fa, fb, fc = fm.fold(a), fm.fold(b), fm.fold(c)
            if tgt.proportional(fa, fb):
                fold_bad.append((a, b))
                continue
            if not tgt.in_open_cone(fa, fb, fc):
                fold_bad.append((a, b))
            elif not tgt.in_cry_cone(fa, fb, fc):
                cry_violations += 1
            ga, gb, gc = fm.goldfold(a), fm.goldfold(b), fm.goldfold(c)
            if not gold.in_cry_cone(ga, gb, gc):
                gold_bad.append((a, b))

    def _render(pairs):
        return "; ".join(f"({src.label(a)},{src.label(b)})" for a, b in pairs[:5])

    tag = src.kind.lower()
    results = [
        check(f"fold-{tag}-interval-fold", "fold maps ]a,b[ into ]fold(a),fold(b)[ for all non-proportional pairs",
              not fold_bad, _render(fold_bad)),
        check(f"fold-{tag}-interval-goldfold",
              "goldfold maps ]a,b[ into the crystallographic interval of the images",
              not gold_bad, _render(gold_bad)),
        note(f"fold-{tag}-interval-fold-cry",
             "fold does not satisfy the crystallographic version of interval compatibility",
             f"{cry_violations} pairs leave the crystallographic interval"),
    ]
    results.append(_positive_system_certificate(fm))
    return results


def _positive_system_certificate(fm: FoldingMap) -> CheckResult:
    """
    For every non-proportional target pair (x, y) the functional B(goldfold(.), x + y)
    is strictly positive on the preimages of x, y and ]x, y[, so they lie in one
    positive system for both fold and goldfold.
    """
    src, gold, tgt = fm.source, fm.golden, fm.target
    bad = []
    n = len(tgt.roots)
    for x in range(n):
        for y in range(x + 1, n):
            if tgt.proportional(x, y):
                continue
            centre = tgt.roots[x] + tgt.roots[y]
            targets = [x, y] + tgt.open_interval(x, y)
            for r in targets:
                for a in fm.fiber(r):
                    if gold.pair(gold.roots[fm.goldfold(a)], centre).sign() <= 0:
                        bad.append((x, y))
                        break
    return check(f"fold-{src.kind.lower()}-positive-system",
                 "preimages of x, y and ]x,y[ lie in a common positive system",
                 not bad, "; ".join(f"({tgt.label(x)},{tgt.label(y)})" for x, y in bad[:5]))


def folding_checks(kinds: Sequence[str] = ("A4", "D6", "E8")) -> List[CheckResult]:
    results: List[CheckResult] = []
    for kind in kinds:
        fm = folding_map(kind)
        results.extend(check_bijection(fm))
        results.append(check_equivariance(fm))
        results.extend(check_interval_compatibility(fm))
    return results
