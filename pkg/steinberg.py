# steinberg.py
"""
The Steinberg presentation of type H3 / H4 and the unfolding of a folded model.

A Steinberg relation is either additivity of one root homomorphism or the
commutator formula of an ordered non-proportional pair, with the standard
commutation maps transported from the figure rows. Both are checked as matrix
identities in the folded D6 and E8 models.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

from api.models import CheckResult, check, note
from chevalley import ChevalleyModel, FoldedModel, SparseMatrix, standard_model
from commaps import FORMULA_VARS, figure_rows, formula_ring, root_names, row_formula, transporter, Transporter
from ring_kernel import IntegerRing, ModularRing, RingSpec, make_ring
from root_systems import RootSystem, build_system

SOURCE_OF = {"H3": "D6", "H4": "E8"}

Elem = Tuple[SparseMatrix, SparseMatrix]


@dataclass(frozen=True)
class SteinbergRelation:
    """One defining relation of the Steinberg group, by root indices of the H system."""

    kind: str  # "additive" or "commutator"
    zeta: int
    xi: Optional[int] = None

    def label(self, system: RootSystem) -> str:
        if self.kind == "additive":
            return f"add({system.label(self.zeta)})"
        return f"comm({system.label(self.zeta)},{system.label(self.xi)})"


def steinberg_relations(system_name: str) -> List[SteinbergRelation]:
    """Additivity for every root and one commutator relation per ordered non-proportional pair."""
    system = build_system(system_name)
    n = len(system.roots)
    relations = [SteinbergRelation("additive", beta) for beta in range(n)]
    relations.extend(SteinbergRelation("commutator", z, x) for z in range(n) for x in range(n)
                     if not system.proportional(z, x))
    return relations


def _values(ring: RingSpec, seed: int) -> Dict[str, Any]:
    """Symbolic a, b, c, d over a polynomial ring; seeded samples otherwise."""
    if hasattr(ring, "names"):
        return dict(zip(FORMULA_VARS, ring.vars(*FORMULA_VARS)))
    rng = random.Random(seed)
    if isinstance(ring, ModularRing):
        return {v: ring(rng.randrange(ring.n)) for v in FORMULA_VARS}
    return {v: ring(rng.randint(-3, 3)) for v in FORMULA_VARS}


def relation_holds(relation: SteinbergRelation, folded: FoldedModel, trans: Transporter,
                   values: Dict[str, Any]) -> Optional[str]:
    """None if the image of the relation is a matrix identity, else a witness."""
    system = folded.system
    a, b, c, d = (values[v] for v in FORMULA_VARS)
    if relation.kind == "additive":
        beta = relation.zeta
        lhs = folded.folded_elem(beta, a, b) * folded.folded_elem(beta, c, d)
        rhs = folded.folded_elem(beta, a + c, b + d)
        return lhs.first_difference(rhs)

    zeta, xi = relation.zeta, relation.xi
    m = ChevalleyModel.commutator(folded.folded_elem(zeta, a, b), folded.folded_elem_inv(zeta, a, b),
                                  folded.folded_elem(xi, c, d), folded.folded_elem_inv(xi, c, d))
    expected = folded.model.identity()
    hom = formula_ring().eval_hom(values, target=folded.ring)
    for rho, x in trans.standard_commutation_map(zeta, xi):
        expected = expected * folded.folded_elem(rho, hom(x.left), hom(x.right))
    witness = m.first_difference(expected)
    return None if witness is None else f"{relation.label(system)}: {witness}"


def verify_in_model(relations: Sequence[SteinbergRelation], folded: FoldedModel,
                    seed: int = 0) -> CheckResult:
    """Every listed relation maps to a matrix identity under x^St -> theta."""
    trans = transporter(folded.system.kind)
    values = _values(folded.ring, seed)
    bad = []
    for rel in relations:
        witness = relation_holds(rel, folded, trans, values)
        if witness is not None:
            bad.append(witness)
    tag = folded.model.kind.lower()
    ring_tag = "poly" if hasattr(folded.ring, "names") else folded.ring.name
    return check(f"steinberg-{tag}-{ring_tag}-relations",
                 f"the Steinberg relations of {folded.system.kind} hold in the folded {folded.model.kind} model "
                 f"over {ring_tag} ({len(relations)} relations)",
                 not bad, f"{len(bad)} failures: " + "; ".join(bad[:3]))


# --- Weyl elements over finite rings -------------------------------------
def weyl_param_injectivity(folded: FoldedModel, beta: int, n: int = 5) -> List[CheckResult]:
    """
    (r, s) -> w_beta(r, s) over the units of Z/n: injective, inverse w_beta(-r, -s),
    every image a beta-Weyl element; non-units rejected.
    """
    ring = ModularRing(n)
    fm = folded.over(ring)
    label = fm.system.label(beta)
    units = ring.units()
    images: Dict[Tuple, Tuple[int, int]] = {}
    not_inverse, not_weyl = [], []
    for r, s in itertools.product(units, repeat=2):
        w = fm.folded_weyl(beta, r, s)
        w_inv = fm.folded_weyl(beta, -r, -s)
        images.setdefault(w.key(), (int(r), int(s)))
        if not (w * w_inv).is_identity():
            not_inverse.append(f"({r},{s})")
        if not fm.is_weyl(w, w_inv, beta):
            not_weyl.append(f"({r},{s})")

    rejected = []
    for r, s in ((0, 1), (1, 0)):
        try:
            fm.folded_weyl(beta, r, s)
        except ValueError:
            rejected.append((r, s))

    tag = f"steinberg-weyl-{folded.model.kind.lower()}-z{n}"
    expected = len(units) ** 2
    return [
        check(f"{tag}-injective", f"w_{label}(r,s) is injective on units of Z/{n} ({expected} elements)",
              len(images) == expected, f"{len(images)} distinct matrices"),
        check(f"{tag}-inverse", f"w_{label}(r,s)^-1 = w_{label}(-r,-s)", not not_inverse, ", ".join(not_inverse)),
        check(f"{tag}-membership", f"w_{label}(r,s) is a {label}-Weyl element", not not_weyl, ", ".join(not_weyl)),
        check(f"{tag}-non-units", "parameters that are not units are rejected", len(rejected) == 2,
              f"accepted {[(r, s) for r, s in ((0, 1), (1, 0)) if (r, s) not in rejected]}"),
    ]


def weyl_surjectivity(folded: FoldedModel, beta: int, n: int = 5) -> CheckResult:
    """
    Every beta-Weyl element of the form u theta_beta(r, s) u' with u, u' in U_-beta
    over Z/n is some w_beta(r, s).
    """
    ring = ModularRing(n)
    fm = folded.over(ring)
    minus = fm.system.neg(beta)
    elements = list(itertools.product(ring.elements(), repeat=2))
    params = {}
    for r, s in itertools.product(ring.units(), repeat=2):
        params[fm.folded_weyl(beta, r, s).key()] = (int(r), int(s))

    # w maps the fiber of beta onto the fiber of -beta; filter on that before the full test
    perm = fm.folding.embed_reflection(beta)
    fiber = fm.fiber(beta)
    found, stray = set(), []
    for p, q in elements:
        u, u_inv = fm.folded_elem(minus, p, q), fm.folded_elem_inv(minus, p, q)
        for r, s in elements:
            mid, mid_inv = fm.folded_elem(beta, r, s), fm.folded_elem_inv(beta, r, s)
            for p2, q2 in elements:
                v, v_inv = fm.folded_elem(minus, p2, q2), fm.folded_elem_inv(minus, p2, q2)
                w, w_inv = u * mid * v, v_inv * mid_inv * u_inv
                if any(fm.model.conjugation_scalar(a, w, w_inv, perm[a]) is None for a in fiber):
                    continue
                if not fm.is_weyl(w, w_inv, beta):
                    continue
                found.add(w.key())
                if w.key() not in params:
                    stray.append(f"u=({p},{q}) t=({r},{s}) u'=({p2},{q2})")
    label = fm.system.label(beta)
    return check(f"steinberg-weyl-{folded.model.kind.lower()}-z{n}-surjective",
                 f"every {label}-Weyl element u theta u' over Z/{n} is some w_{label}(r,s)",
                 len(found) == len(params) and not stray,
                 f"{len(found)} Weyl elements found, {len(params)} parametrised; " + "; ".join(stray[:3]))


# --- transported commutation maps ----------------------------------------
def word_independence_checks(system_name: str, sample: Optional[int] = None, seed: int = 0,
                             limit: Optional[int] = None) -> List[CheckResult]:
    """Every transporting Weyl element gives the same formula."""
    trans = transporter(system_name)
    system = trans.system
    pairs = [(z, x) for z in range(len(system.roots)) for x in range(len(system.roots))
             if not system.proportional(z, x) and system.open_interval(z, x)]
    if sample is not None and sample < len(pairs):
        pairs = sorted(random.Random(seed).sample(pairs, sample))
    dependent, multi = [], 0
    for z, x in pairs:
        options = trans.transports(z, x, limit=limit)
        if len(options) > 1:
            multi += 1
        witness = trans.word_dependence(z, x, limit=limit)
        if witness:
            dependent.append(witness)
    tag = system_name.lower()
    return [check(f"steinberg-{tag}-word-independent",
                  f"transported commutation maps do not depend on the Weyl word ({len(pairs)} pairs, "
                  f"{multi} with alternatives)", not dependent, "; ".join(dependent[:3]))]


def h4_relation_from_transport() -> CheckResult:
    """psi[rho0,rho1] obtained by transporting only the (rho1, rho2) row equals the embedded row."""
    rows = [r for r in figure_rows("H4") if (r.zeta, r.xi) == ("rho1", "rho2")]
    trans = Transporter("H4", rows=rows)
    system = trans.system
    names = root_names(system)
    derived = trans.standard_commutation_map(names["rho0"], names["rho1"])
    embedded = [row_formula(r) for r in figure_rows("H4") if (r.zeta, r.xi) == ("rho0", "rho1")]
    ok = len(derived) == 1 and len(embedded) == 1 and derived[0][1] == embedded[0]
    return check("steinberg-h4-rho0-rho1", "psi[rho0,rho1](x, y) = (x1 y1, x2 y2) follows by transport",
                 ok, f"derived {[str(x) for _, x in derived]}")


# --- unfolding -----------------------------------------------------------
class UnfoldedGrading:
    """The family x'_xi(r) indexed by the source roots of a folded model."""

    def __init__(self, folded: FoldedModel):
        self.folded = folded
        self.model = folded.model
        self.folding = folded.folding
        self.source = folded.model.system

    def elem(self, xi: int, r: Any) -> SparseMatrix:
        beta = self.folding.fold(xi)
        zero = self.folded.ring.zero
        if self.folding.is_short(xi):
            return self.folded.folded_elem(beta, r, zero)
        return self.folded.folded_elem(beta, zero, r)

    def pair(self, xi: int, r: Any) -> Elem:
        return self.elem(xi, r), self.elem(xi, -r)


def _conj(g: Elem, h: Elem) -> Elem:
    """g^h = h^-1 g h."""
    return h[1] * g[0] * h[0], h[1] * g[1] * h[0]


def _comm(g: Elem, h: Elem) -> Elem:
    """[g, h] = g^-1 h^-1 g h."""
    m = g[1] * h[1] * g[0] * h[0]
    return m, h[1] * g[1] * h[0] * g[0]


def _inv(g: Elem) -> Elem:
    return g[1], g[0]


def hall_witt(x: Elem, y: Elem, z: Elem) -> SparseMatrix:
    """[[x, y^-1], z]^y [[y, z^-1], x]^z [[z, x^-1], y]^x, which is always 1."""
    t1 = _conj(_comm(_comm(x, _inv(y)), z), y)
    t2 = _conj(_comm(_comm(y, _inv(z)), x), z)
    t3 = _conj(_comm(_comm(z, _inv(x)), y), x)
    return t1[0] * t2[0] * t3[0]


def unfold_and_verify(kind: str, sample: Optional[int] = None, seed: int = 0) -> List[CheckResult]:
    """
    Commutator signs, opposite R1/R2 parts, Weyl compatibility and refolding of
    the unfolded family of the standard folded model of the given kind.
    """
    kind = kind.upper()
    folded = standard_model(kind).over(formula_ring())
    model, system = folded.model, folded.system
    src = model.system
    un = UnfoldedGrading(folded)
    a, b, c, d = folded.ring.vars(*FORMULA_VARS)
    tag = f"unfold-{kind.lower()}"
    rng = random.Random(seed)

    pairs = [(x, z) for x in range(len(src.roots)) for z in range(len(src.roots)) if x != z and z != src.neg(x)]
    if sample is not None and sample < len(pairs):
        pairs = sorted(rng.sample(pairs, sample))
    bad_signs = []
    for x, z in pairs:
        m, _ = _comm(un.pair(x, a), un.pair(z, b))
        target = model.root_sum(x, z)
        if target is None:
            if not m.is_identity():
                bad_signs.append(f"({src.label(x)},{src.label(z)}) not trivial")
            continue
        expected = un.elem(target, model.structure_sign(x, z) * a * b)
        if m != expected:
            bad_signs.append(f"({src.label(x)},{src.label(z)})")

    betas = list(range(len(system.roots)))
    bad_opposite = []
    for beta in betas:
        zero = folded.ring.zero
        for (r1, s1), (r2, s2) in (((a, zero), (zero, b)), ((zero, a), (b, zero))):
            g = (folded.folded_elem(beta, r1, s1), folded.folded_elem_inv(beta, r1, s1))
            h = (folded.folded_elem(system.neg(beta), r2, s2), folded.folded_elem_inv(system.neg(beta), r2, s2))
            if not _comm(g, h)[0].is_identity():
                bad_opposite.append(system.label(beta))

    bad_weyl = []
    for dpos in range(system.rank):
        w, w_inv = folded.standard_weyl(dpos)
        violations = model.weyl_violations(w, w_inv, folded.letter_perm(dpos))
        bad_weyl.extend(f"{system.base_names[dpos]}: {src.label(v)}" for v in violations[:3])

    bad_refold = [system.label(beta) for beta in betas
                  if un.elem(folded.fiber(beta)[0], c) * un.elem(folded.fiber(beta)[1], d)
                  != folded.folded_elem(beta, c, d)]

    hw_roots = rng.sample(betas, min(len(betas), 6))
    bad_hw = []
    for beta in hw_roots:
        other = next(g for g in betas if not system.proportional(g, beta))
        zero = folded.ring.zero
        x = (folded.folded_elem(beta, a, zero), folded.folded_elem_inv(beta, a, zero))
        y = (folded.folded_elem(system.neg(beta), zero, b), folded.folded_elem_inv(system.neg(beta), zero, b))
        z = (folded.folded_elem(other, c, d), folded.folded_elem_inv(other, c, d))
        if not hall_witt(x, y, z).is_identity():
            bad_hw.append(system.label(beta))

    def witness(items):
        return f"{len(items)} failures: " + "; ".join(items[:5])

    return [
        check(f"{tag}-commutator-signs", "the unfolded family has the commutator signs c of the Chevalley model",
              not bad_signs, witness(bad_signs)),
        check(f"{tag}-opposite-parts", "[x'(R1 part of U_zeta), x'(R2 part of U_-zeta)] = 1 for every zeta",
              not bad_opposite, witness(bad_opposite)),
        check(f"{tag}-weyl-compatible", "(U'_xi)^{w_rho} = U'_{xi^{u(s_rho)}} for every base root rho",
              not bad_weyl, witness(bad_weyl)),
        check(f"{tag}-refold", "U'_alpha1 U'_alpha2 = U_beta for every fiber", not bad_refold, witness(bad_refold)),
        check(f"{tag}-hall-witt", "Hall-Witt instances on opposite root elements are the identity",
              not bad_hw, witness(bad_hw)),
    ]


# --- suite ---------------------------------------------------------------
def steinberg_checks(ring_name: str = "poly", e8_sample: int = 40, seed: int = 0,
                     full: bool = False) -> List[CheckResult]:
    """
    Steinberg relations in both folded models, Weyl parametrisation over small
    rings and word independence of the transported maps.

    With full=True every H4 relation is checked in the E8 model instead of a
    seeded sample of e8_sample relations.
    """
    ring = formula_ring() if ring_name == "poly" else make_ring(ring_name)
    results = []
    for system_name, sample in (("H3", None), ("H4", None if full else e8_sample)):
        relations = steinberg_relations(system_name)
        if sample is not None and sample < len(relations):
            relations = random.Random(seed).sample(relations, sample)
        folded = standard_model(SOURCE_OF[system_name]).over(ring)
        results.append(verify_in_model(relations, folded, seed=seed))

    d6 = standard_model("D6")
    for beta in d6.system.base_index:
        results.extend(weyl_param_injectivity(d6, beta))
    results.append(weyl_surjectivity(d6, d6.system.base_index[0]))

    results.extend(word_independence_checks("H3"))
    results.extend(word_independence_checks("H4", sample=None if full else e8_sample, seed=seed, limit=4))
    results.append(h4_relation_from_transport())
    if isinstance(ring, IntegerRing):
        results.append(note("steinberg-ring", "integer instances use seeded values in [-3, 3]"))
    return results
