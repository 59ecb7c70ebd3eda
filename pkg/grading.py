# grading.py
"""
Verification of the root grading carried by a folded Chevalley model: root
homomorphisms, Chevalley commutator formulas, Weyl elements, H-commutator
containment, injectivity of positive-system products, the golden
crystallographic relations, parity maps and squares of Weyl elements.
"""

from __future__ import annotations

import functools
import random
from typing import List, Optional, Sequence, Tuple

from api.models import CheckResult, check, note
from chevalley import (ChevalleyModel, FactorisationError, FoldedModel, expected_square_action,
                       resolve_twist, standard_model)
from commaps import formula_ring, parity_table_from_figure, root_names
from e8_algebra import e8_checks
from golden_arith import ZERO
from ring_kernel import ModularRing, PairElem, PolynomialRing
from root_systems import (ParityValue, RootSystem, braid_word, build_system, check_parity_properties,
                          parity_extend)

SOURCE_OF = {"H2": "A4", "H3": "D6", "H4": "E8"}


def _sample(items: Sequence, size: Optional[int], seed: int) -> List:
    items = list(items)
    if size is None or size >= len(items):
        return items
    return sorted(random.Random(seed).sample(items, size))


def _witness(items: Sequence[str]) -> str:
    return f"{len(items)} failures: " + "; ".join(items[:5]) if items else ""


# --- source model --------------------------------------------------------
def check_root_homomorphisms(model: ChevalleyModel, roots: Sequence[int]) -> CheckResult:
    """x_xi(a) x_xi(b) = x_xi(a + b) over Z[a, b]."""
    pm = model.with_ring(formula_ring())
    a, b = pm.ring.vars("a", "b")
    bad = [pm.system.label(xi) for xi in roots
           if pm.root_elem(xi, a) * pm.root_elem(xi, b) != pm.root_elem(xi, a + b)]
    return check(f"chevalley-{model.kind.lower()}-additive", "each x_xi is an additive homomorphism",
                 not bad, _witness(bad))


def check_chevalley_formula(model: ChevalleyModel, pairs: Sequence[Tuple[int, int]]) -> CheckResult:
    """[x_xi(a), x_zeta(b)] = x_(xi+zeta)(c a b) with c = +-1, and trivial when xi + zeta is not a root."""
    pm = model.with_ring(formula_ring())
    a, b = pm.ring.vars("a", "b")
    bad = []
    for xi, zeta in pairs:
        m = pm.commutator(pm.root_elem(xi, a), pm.root_elem(xi, -a), pm.root_elem(zeta, b), pm.root_elem(zeta, -b))
        target = pm.root_sum(xi, zeta)
        if target is None:
            ok = m.is_identity()
        else:
            c = pm.read_param(m, target)
            ok = c in (a * b, -(a * b)) and m == pm.root_elem(target, c)
        if not ok:
            bad.append(f"({pm.system.label(xi)},{pm.system.label(zeta)})")
    return check(f"chevalley-{model.kind.lower()}-commutator-formula",
                 "[x_xi(r), x_zeta(s)] = x_(xi+zeta)(c rs) with c = +-1",
                 not bad, _witness(bad))


def check_weyl_inverse(model: ChevalleyModel, roots: Sequence[int]) -> CheckResult:
    bad = [model.system.label(xi) for xi in roots
           if not (model.weyl_elem(xi, 1) * model.weyl_elem(xi, -1)).is_identity()]
    return check(f"chevalley-{model.kind.lower()}-weyl-inverse", "w_xi(r)^-1 = w_xi(-r)", not bad, _witness(bad))


# --- folded model --------------------------------------------------------
def check_weyl_elements(folded: FoldedModel) -> CheckResult:
    """w_beta(1, 1) conjugates U_gamma onto U_(gamma^s_beta) for every H root beta."""
    system = folded.system
    bad = []
    for beta in system.positive:
        w, w_inv = folded.folded_weyl(beta, 1, 1), folded.folded_weyl_inv(beta, 1, 1)
        if not folded.is_weyl(w, w_inv, beta):
            bad.append(system.label(beta))
    return check(f"grading-{system.kind.lower()}-weyl", "w_beta(1,1) is a beta-Weyl element for every root",
                 not bad, _witness(bad))


def check_braid_relations(folded: FoldedModel) -> CheckResult:
    system = folded.system
    bad = []
    for i in range(system.rank):
        for j in range(i + 1, system.rank):
            m = system.coxeter_m(i, j)
            left = right = folded.model.identity()
            for letter in braid_word(m, i, j):
                left = left * folded.standard_weyl(letter)[0]
            for letter in braid_word(m, j, i):
                right = right * folded.standard_weyl(letter)[0]
            if left != right:
                bad.append(f"({system.base_names[i]},{system.base_names[j]})")
    return check(f"grading-{system.kind.lower()}-braid", "standard Weyl elements satisfy the braid relations",
                 not bad, _witness(bad))


def check_containment(folded: FoldedModel, pairs: Sequence[Tuple[int, int]]) -> CheckResult:
    """[U_zeta, U_xi] lies in the interval-ordered product of the U_rho, rho in ]zeta, xi[."""
    system = folded.system
    bad = []
    for zeta, xi in pairs:
        try:
            folded.extract_commutation_map(zeta, xi)
        except FactorisationError as exc:
            bad.append(f"({system.label(zeta)},{system.label(xi)}): {exc.witness}")
    return check(f"grading-{system.kind.lower()}-containment", "[U_zeta, U_xi] is contained in U_]zeta,xi[",
                 not bad, _witness(bad))


def height_order(system: RootSystem) -> List[int]:
    """Positive roots by increasing height (the sum of the coordinates, compared in Z[tau])."""
    heights = {i: sum(system.roots[i].coords, ZERO) for i in system.positive}
    return sorted(system.positive, key=functools.cmp_to_key(lambda x, y: (heights[x] - heights[y]).sign() or x - y))


def check_product_injectivity(folded: FoldedModel) -> CheckResult:
    """The product map over the positive roots, ordered by height, is injective on symbolic coordinates."""
    system = folded.system
    order = height_order(system)
    names = [f"{p}{k}" for k in range(len(order)) for p in ("r", "s")]
    ring = PolynomialRing(names)
    fm = folded.over(ring)
    m = fm.model.identity()
    expected = []
    for k, beta in enumerate(order):
        x = PairElem(ring.var(f"r{k}"), ring.var(f"s{k}"))
        expected.append((beta, x))
        m = m * fm.theta(beta, x)
    try:
        recovered = fm.peel(m, order)
        ok, witness = recovered == expected, "recovered coordinates differ"
    except FactorisationError as exc:
        ok, witness = False, str(exc)
    return check(f"grading-{system.kind.lower()}-positive-product",
                 "the product map over a positive system is injective", ok, witness)


def check_gh_relations(folded: FoldedModel, pairs: Sequence[Tuple[int, int]]) -> CheckResult:
    """[U_ga, U_gb] lies in U over the crystallographic interval of the golden images."""
    model, fm = folded.model, folded.folding
    gold, src = fm.golden, model.system
    bad = []
    for a, b in pairs:
        ga, gb = fm.goldfold(a), fm.goldfold(b)
        if gold.proportional(ga, gb):
            continue
        target = model.root_sum(a, b)
        if target is not None and fm.goldfold(target) not in gold.cry_interval(ga, gb):
            bad.append(f"({src.label(a)},{src.label(b)})")
    return check(f"grading-{folded.system.kind.lower()}-gh-crystallographic",
                 "the golden family has crystallographic commutator relations", not bad, _witness(bad))


def check_refinement(folded: FoldedModel) -> CheckResult:
    """[U_alpha, U_delta] lies in U_(tau gamma) U_(tau beta): only long components occur."""
    system = folded.system
    names = root_names(system)
    parts = folded.extract_commutation_map(names["alpha"], names["delta"])
    short = [system.label(rho) for rho, x in parts if x.left]
    return check(f"grading-{system.kind.lower()}-refinement", "[U_alpha, U_delta] lies in U_tau_gamma U_tau_beta",
                 not short, f"short components at {', '.join(short)}")


def quintuple_lemma_checks(folded: FoldedModel) -> List[CheckResult]:
    """
    Weyl action inside the quintuple of (rho2, rho3), with w_alpha = a b a,
    a = theta_-alpha(-1,-1) and b = theta_alpha(1,1):
    x_eps^w = [b, x_eps^-1]_beta, x_eps^(w^-1) = [b^-1, x_eps^-1]_beta,
    x_eps = [a^-1, [b, x_eps]_beta]_eps, and x -> [b, x]_beta is bijective U_eps -> U_beta.
    """
    ring = formula_ring()
    fm = folded if folded.ring is ring else folded.over(ring)
    system = fm.system
    names = root_names(system)
    alpha, beta, eps = names["alpha"], names["beta"], names["epsilon"]
    neg_alpha = system.neg(alpha)
    va, vb = ring.vars("a", "b")
    x = PairElem(va, vb)
    w, w_inv = fm.folded_weyl(alpha, 1, 1), fm.folded_weyl_inv(alpha, 1, 1)
    b, b_inv = fm.folded_elem(alpha, 1, 1), fm.folded_elem(alpha, -1, -1)
    a, a_inv = fm.folded_elem(neg_alpha, -1, -1), fm.folded_elem(neg_alpha, 1, 1)
    tag = system.kind.lower()

    def part(g, g_inv, h, h_inv, zeta, xi, rho):
        return dict(fm.commutator_parts(g, g_inv, h, h_inv, zeta, xi))[rho]

    results = []
    lhs = w_inv * fm.theta(eps, x) * w
    rhs = part(b, b_inv, fm.theta_inv(eps, x), fm.theta(eps, x), alpha, eps, beta)
    results.append(check(f"grading-{tag}-weyl-action", "x_eps^(w_alpha) = [b_alpha, x_eps^-1]_beta",
                         lhs == fm.theta(beta, rhs), lhs.first_difference(fm.theta(beta, rhs))))

    lhs = w * fm.theta(eps, x) * w_inv
    rhs = part(b_inv, b, fm.theta_inv(eps, x), fm.theta(eps, x), alpha, eps, beta)
    results.append(check(f"grading-{tag}-weyl-action-inverse", "x_eps^(w_alpha^-1) = [b_alpha^-1, x_eps^-1]_beta",
                         lhs == fm.theta(beta, rhs), lhs.first_difference(fm.theta(beta, rhs))))

    y = part(b, b_inv, fm.theta(eps, x), fm.theta_inv(eps, x), alpha, eps, beta)
    back = part(a_inv, a, fm.theta(beta, y), fm.theta_inv(beta, y), neg_alpha, beta, eps)
    results.append(check(f"grading-{tag}-weyl-action-cancel", "x_eps = [a_-alpha^-1, [b_alpha, x_eps]_beta]_eps",
                         back == x, f"recovered {back}"))

    coeffs = []
    for comp in (y.left, y.right):
        terms = dict(comp.terms())
        linear = all(sum(m) == 1 for m in terms)
        coeffs.append((linear, int(terms.get((1, 0, 0, 0), 0)), int(terms.get((0, 1, 0, 0), 0))))
    det = coeffs[0][1] * coeffs[1][2] - coeffs[0][2] * coeffs[1][1]
    results.append(check(f"grading-{tag}-eps-beta-bijection", "x -> [b_alpha, x]_beta is a bijection U_eps -> U_beta",
                         all(c[0] for c in coeffs) and det in (1, -1), f"image {y}, determinant {det}"))
    return results


# --- parity --------------------------------------------------------------
def parity_suite(system_name: str) -> List[CheckResult]:
    """Embedded table properties, the table computed from the model, and the Weyl normal-form facts."""
    system_name = system_name.upper()
    tag = system_name.lower()
    system = build_system(system_name)
    embedded = parity_table_from_figure(system_name)
    results = [r.model_copy(update={"id": f"{r.id}-{tag}-embedded"}) for r in check_parity_properties(embedded)]

    folded = standard_model(SOURCE_OF[system_name])
    resolution = resolve_twist(folded.model.kind)
    try:
        computed = folded.parity_table()
    except ValueError as exc:
        results.append(check(f"parity-{tag}-computed", "the model has a parity map", False, str(exc)))
        return results
    diff = computed.differences(embedded)
    witness = ", ".join(f"({system.label(i)},{system.base_names[d]})" for i, d in diff[:5])
    if not diff:
        results.append(check(f"parity-{tag}-matches-figure", "the computed parity map equals the embedded table", True))
    elif resolution.method == "fallback":
        results.append(note(f"parity-{tag}-matches-figure",
                            "the computed parity map differs from the embedded table; no twist aligns the bases",
                            f"{len(diff)} values differ: {witness}"))
        results.extend(r.model_copy(update={"id": f"{r.id}-{tag}-computed"}) for r in check_parity_properties(computed))
    else:
        results.append(check(f"parity-{tag}-matches-figure", "the computed parity map equals the embedded table",
                             False, f"{len(diff)} values differ: {witness}"))

    d1, d2 = system.base_names.index("rho1"), system.base_names.index("rho2")
    d3 = system.base_names.index("rho3")
    rho2 = system.base_index[d2]
    bad = []
    for root in (rho2, system.neg(rho2)):
        for word in ((d1, d2), (d3, d2, d3, d2)):
            if parity_extend(embedded, root, word) != ParityValue(1, 1):
                bad.append(f"{system.label(root)} along {[system.base_names[k] for k in word]}")
    results.append(check(f"parity-{tag}-normal-form", "eta(+-rho2, (rho1,rho2)) = eta(+-rho2, (rho3,rho2,rho3,rho2)) = (1,1)",
                         not bad, _witness(bad)))
    return results


def parity_restriction_check() -> CheckResult:
    """The H3 table computed from D6 is the restriction of the H4 table computed from E8."""
    h3, h4 = build_system("H3"), build_system("H4")
    t3 = standard_model("D6").parity_table()
    t4 = standard_model("E8").parity_table()
    bad = []
    for i in range(len(h3.roots)):
        j = h4.index[h4.vector((ZERO,) + h3.roots[i].coords)]
        for d in range(h3.rank):
            if t3.bits(i, d) != t4.bits(j, d + 1):
                bad.append(f"({h3.label(i)},{h3.base_names[d]})")
    return check("parity-h3-restricts-h4", "the H3 parity map is the restriction of the H4 parity map",
                 not bad, _witness(bad))


# --- squares of Weyl elements --------------------------------------------
def square_action_checks(seed: int = 0) -> List[CheckResult]:
    """For all pairs of H3 roots and all unit pairs of Z/5, w_zeta(r,s)^2 acts on U_xi as its position predicts."""
    base = ModularRing(5)
    ring = PolynomialRing(("a", "b"), base)
    folded = standard_model("D6").over(ring)
    system = folded.system
    units = [int(u) for u in base.units()]
    mismatched, dependent = [], []
    for xi in range(len(system.roots)):
        for zeta in range(len(system.roots)):
            expected = expected_square_action(system, xi, zeta)
            labels = {folded.square_action(xi, zeta, r, s) for r in units for s in units}
            if len(labels) > 1:
                dependent.append(f"({system.label(xi)},{system.label(zeta)})")
            elif labels != {expected}:
                mismatched.append(f"({system.label(xi)},{system.label(zeta)}): {labels.pop()} != {expected}")
    return [
        check("square-action-classification", "w_zeta^2 acts on U_xi by identity, inversion, star or star-then-inversion "
                                                "according to the span and position of (xi, zeta)",
              not mismatched, _witness(mismatched)),
        check("square-action-choice-independent", "the action of w_zeta(r,s)^2 does not depend on the units r, s",
              not dependent, _witness(dependent)),
    ]


# --- suite ---------------------------------------------------------------
def verify_grading(kind: str, seed: int = 20240601, sample: Optional[int] = None) -> List[CheckResult]:
    """
    The grading suite of one source kind.

    Args:
        kind: A4, D6 or E8
        seed: seed for sampled pairs
        sample: number of sampled pairs (None checks all pairs)
    """
    kind = kind.upper()
    folded = standard_model(kind)
    model, system = folded.model, folded.system
    src = model.system
    resolution = resolve_twist(kind)
    tag = kind.lower()
    results = [note(f"chevalley-{tag}-twist", f"twist of the {kind} model ({resolution.method})",
                    f"T = {{{', '.join(resolution.labels())}}}; {resolution.message}")]

    roots = _sample(range(len(src.roots)), sample, seed)
    source_pairs = _sample([(x, z) for x in range(len(src.roots)) for z in range(len(src.roots))
                            if x != z and z != src.neg(x)], sample, seed)
    target_pairs = _sample([(z, x) for z in range(len(system.roots)) for x in range(len(system.roots))
                            if not system.proportional(z, x)], sample, seed)

    results.append(check_root_homomorphisms(model, roots))
    results.append(check_chevalley_formula(model, source_pairs))
    results.append(check_weyl_inverse(model, roots))
    results.append(check_weyl_elements(folded))
    results.append(check_braid_relations(folded))
    results.append(check_containment(folded, target_pairs))
    results.append(check_gh_relations(folded, source_pairs))
    if kind != "E8":
        results.append(check_product_injectivity(folded))
    if system.kind in ("H3", "H4"):
        results.append(check_refinement(folded))
        results.extend(quintuple_lemma_checks(folded))
    if kind == "E8":
        results.extend(e8_checks())
    return results
