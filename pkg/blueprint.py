# blueprint.py
"""
The blueprint computation for H3.

Words over the base are strings of the letters 1, 2, 3 (rho1, rho2, rho3).
A state is a word together with one R x R coordinate per letter, standing for
the tuple (theta_{f_1}(y_1), ..., theta_{f_m}(y_m)). Elementary rewriting
rules replace one braid block; running them around the homotopy cycle of the
longest word from both ends yields the blueprint identities.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import sympy

from api.models import CheckResult, check
from chevalley import FoldedModel, standard_model
from commaps import CommutationMaps, StandardMaps, SymbolicMaps, TermInterpreter
from figure_store import figure_store
from ring_kernel import PairElem, PolynomialRing
from root_systems import braid_word, build_system, longest_element

LONGEST_WORD = "323231232312321"
Values = List[PairElem]


@dataclass
class HomotopyCycle:
    words: List[str]
    marks: List[Optional[Tuple[int, int]]]

    def __len__(self) -> int:
        return len(self.words)


def parse_cycle(lines: Sequence[str]) -> HomotopyCycle:
    """Words with the moved block in brackets, e.g. '2323[212]32312321'."""
    words, marks = [], []
    for line in lines:
        line = line.strip()
        if not line:
            continue
        if "[" in line:
            # inclusive block bounds in the unbracketed word
            start = line.index("[")
            end = line.index("]") - 2
            marks.append((start, end))
        else:
            marks.append(None)
        words.append(line.replace("[", "").replace("]", ""))
    return HomotopyCycle(words, marks)


def load_cycle() -> HomotopyCycle:
    return parse_cycle(figure_store.read_lines("homotopy_cycle"))


def word_letters(word: str) -> List[int]:
    """Base positions (0-based) of the letters of a word."""
    return [int(ch) - 1 for ch in word]


def locate_move(before: str, after: str) -> Tuple[int, str, str]:
    """
    The elementary braid move turning before into after.

    Returns:
        (position, old block, new block)

    Raises:
        ValueError: if the words do not differ by one braid block
    """
    if len(before) != len(after):
        raise ValueError(f"{before} and {after} have different lengths")
    diff = [k for k in range(len(before)) if before[k] != after[k]]
    if not diff:
        raise ValueError(f"{before} and {after} are equal")
    start, end = diff[0], diff[-1] + 1
    old, new = before[start:end], after[start:end]
    system = build_system("H3")
    s, t = int(old[0]), int(old[1]) if len(old) > 1 else None
    if t is None or s == t:
        raise ValueError(f"{before} -> {after} is not a braid move at position {start}")
    m = system.coxeter_m(s - 1, t - 1)
    if old != "".join(map(str, braid_word(m, s, t))) or new != "".join(map(str, braid_word(m, t, s))):
        raise ValueError(f"{before} -> {after} is not a braid move at position {start}")
    return start, old, new


def validate_cycle(cycle: HomotopyCycle) -> List[CheckResult]:
    """Closedness, reducedness of every word and elementary braid moves between neighbours."""
    system = build_system("H3")
    w0 = longest_element("H3")
    results = []
    ends = cycle.words[0] == cycle.words[-1] == LONGEST_WORD
    results.append(check("blueprint-cycle-closed", f"f1 = f63 = {LONGEST_WORD}", ends and len(cycle) == 63,
                         f"{len(cycle)} words, f1 = {cycle.words[0]}, last = {cycle.words[-1]}"))

    not_reduced = [str(k + 1) for k, word in enumerate(cycle.words)
                   if len(word) != len(system.positive) or system.word_permutation(word_letters(word)) != w0]
    results.append(check("blueprint-cycle-reduced", "every word of the cycle is a reduced word for w0",
                         not not_reduced, "words " + ", ".join(not_reduced[:5])))

    bad_moves = []
    for k in range(len(cycle) - 1):
        try:
            start, old, _ = locate_move(cycle.words[k], cycle.words[k + 1])
        except ValueError as exc:
            bad_moves.append(f"{k + 1}: {exc}")
            continue
        mark = cycle.marks[k]
        if mark is not None and mark != (start, start + len(old) - 1):
            bad_moves.append(f"{k + 1}: marked block {mark} but the move is at {start}")
    results.append(check("blueprint-cycle-moves", "consecutive words differ by one elementary braid move",
                         not bad_moves, "; ".join(bad_moves[:5])))
    return results


# --- rewriting rules -----------------------------------------------------
RULES = {"121": "r12", "212": "r21", "13": "r13", "31": "r31", "23232": "r23", "32323": "r32"}
TARGETS = {"121": "212", "212": "121", "13": "31", "31": "13", "23232": "32323", "32323": "23232"}


def _r12(v: Values, maps: CommutationMaps) -> Values:
    a, b, c = v
    return [c, -b - c * a, a]


def _r21(v: Values, maps: CommutationMaps) -> Values:
    a, b, c = v
    return [c, -b - a * c, a]


def _swap(v: Values, maps: CommutationMaps) -> Values:
    a, b = v
    return [b, a]


def _r23(v: Values, maps: CommutationMaps) -> Values:
    a, b, c, d, e = v
    psi = maps.psi
    d_a_b = psi("delta", "alpha", "beta")(-b, e)
    e_a_b = psi("epsilon", "alpha", "beta")(a, e)
    g_a = psi("gamma", "alpha")(c, e)
    e_a_g = psi("epsilon", "alpha", "gamma")(a, e)
    e_a_d = psi("epsilon", "alpha", "delta")(a, e)
    p = e_a_b + g_a - d
    e_b_g = psi("epsilon", "beta", "gamma")(a, p)
    big_b = -(d_a_b + e_a_b + g_a - d).star()
    big_c = -(psi("delta", "alpha", "gamma")(-b, e) + psi("delta", "beta")(-b, d_a_b) + e_a_g + e_b_g
              + psi("delta", "beta")(-b + e_a_d, p) + c)
    big_d = -(-b + e_a_d + psi("epsilon", "beta", "delta")(a, p)
              + psi("epsilon", "gamma")(a, e_b_g + e_a_g + c)).star()
    return [e, big_b, big_c, big_d, a]


def _r32(v: Values, maps: CommutationMaps) -> Values:
    a, b, c, d, e = v
    psi = maps.psi
    bs, ds = b.star(), d.star()
    b_e_d = psi("beta", "epsilon", "delta")(-bs, e)
    a_e_d = psi("alpha", "epsilon", "delta")(a, e)
    g_e = psi("gamma", "epsilon")(-c, e)
    a_e_b = psi("alpha", "epsilon", "beta")(a, e)
    a_e_g = psi("alpha", "epsilon", "gamma")(a, e)
    q = a_e_d + g_e - ds
    a_d_g = psi("alpha", "delta", "gamma")(a, q)
    big_b = -(b_e_d + a_e_d + g_e - ds)
    big_c = (psi("beta", "epsilon", "gamma")(-bs, e) + psi("beta", "delta")(-bs, b_e_d)
             + psi("beta", "delta")(-bs + a_e_b, q) + a_d_g + a_e_g - c)
    big_d = -(-bs + a_e_b + psi("alpha", "delta", "beta")(a, q) + psi("alpha", "gamma")(a, a_d_g + a_e_g - c))
    return [e, big_b, big_c, big_d, a]


_FORMULAS: Dict[str, Callable[[Values, CommutationMaps], Values]] = {
    "r12": _r12, "r21": _r21, "r13": _swap, "r31": _swap, "r23": _r23, "r32": _r32,
}


@dataclass(frozen=True)
class RewriteRule:
    rule_id: str
    source: str
    target: str

    def __call__(self, values: Values, maps: CommutationMaps) -> Values:
        if len(values) != len(self.source):
            raise ValueError(f"Rule {self.rule_id} expects {len(self.source)} values, got {len(values)}")
        return _FORMULAS[self.rule_id](list(values), maps)


def rule_for(pattern: str) -> RewriteRule:
    if pattern not in RULES:
        raise ValueError(f"No rewriting rule for block '{pattern}'. Available: {list(RULES)}")
    return RewriteRule(RULES[pattern], pattern, TARGETS[pattern])


def get_rule(rule_id: str) -> RewriteRule:
    for pattern, rid in RULES.items():
        if rid == rule_id:
            return rule_for(pattern)
    raise ValueError(f"Unknown rule '{rule_id}'. Available: {list(RULES.values())}")


@dataclass
class BlueprintState:
    word: str
    values: Values = field(default_factory=list)

    def __post_init__(self):
        if len(self.values) != len(self.word):
            raise ValueError(f"State has {len(self.values)} values for a word of length {len(self.word)}")


def apply_rule(rule: RewriteRule, state: BlueprintState, position: int, maps: CommutationMaps) -> BlueprintState:
    """
    Apply a rule to the block starting at position.

    Raises:
        ValueError: if the block does not match the rule's source pattern
    """
    block = state.word[position:position + len(rule.source)]
    if block != rule.source:
        raise ValueError(f"Block '{block}' at {position} of {state.word} does not match {rule.rule_id} ({rule.source})")
    new_values = rule(state.values[position:position + len(rule.source)], maps)
    word = state.word[:position] + rule.target + state.word[position + len(rule.source):]
    values = state.values[:position] + new_values + state.values[position + len(rule.source):]
    return BlueprintState(word, values)


def step(state: BlueprintState, target_word: str, maps: CommutationMaps) -> BlueprintState:
    position, old, _ = locate_move(state.word, target_word)
    out = apply_rule(rule_for(old), state, position, maps)
    if out.word != target_word:
        raise ValueError(f"Move produced {out.word}, expected {target_word}")
    return out


# --- blueprint run -------------------------------------------------------
@dataclass
class IdentityRecord:
    label: str
    left: Any
    right: Any
    status: str = "verified"
    witness: Optional[str] = None

    def to_check(self, prefix: str, anchor: str) -> CheckResult:
        return check(f"{prefix}-{self.label}", anchor, self.status == "verified", self.witness)


def blueprint_ring() -> PolynomialRing:
    names = [f"a{k}" for k in range(1, 16)] + [f"b{k}" for k in range(1, 16)]
    return PolynomialRing(names)


def initial_values(ring: PolynomialRing) -> Values:
    return [PairElem(ring.var(f"a{k}"), ring.var(f"b{k}")) for k in range(1, 16)]


def _pair_difference(x: PairElem, y: PairElem) -> Optional[str]:
    diff = x - y
    for comp, name in ((diff.left, "first"), (diff.right, "second")):
        if comp:
            lead = comp.leading_term() if hasattr(comp, "leading_term") else comp
            return f"{name} component differs, leading term {lead}"
    return None


def run_passes(maps: CommutationMaps, values: Values, cycle: Optional[HomotopyCycle] = None) -> Tuple[BlueprintState, BlueprintState]:
    """(x32, x32') from the forward pass over f1..f32 and the backward pass over f63..f32."""
    cycle = cycle or load_cycle()
    words = cycle.words
    middle = len(words) // 2
    forward = BlueprintState(words[0], list(values))
    for k in range(1, middle + 1):
        forward = step(forward, words[k], maps)
    backward = BlueprintState(words[-1], list(values))
    for k in range(len(words) - 2, middle - 1, -1):
        backward = step(backward, words[k], maps)
    return forward, backward


def run_blueprint(maps: Optional[CommutationMaps] = None, ring: Optional[PolynomialRing] = None) -> List[IdentityRecord]:
    """
    The 15 blueprint identities x32 = x32' in verify mode.

    Args:
        maps: commutation maps over ring (defaults to the standard maps)
        ring: polynomial ring in a1..a15, b1..b15
    """
    ring = ring or blueprint_ring()
    maps = maps or StandardMaps(ring)
    forward, backward = run_passes(maps, initial_values(ring))
    records = []
    for k, (x, y) in enumerate(zip(forward.values, backward.values), start=1):
        witness = _pair_difference(x, y)
        records.append(IdentityRecord(f"raw-{k}", x, y, "verified" if witness is None else "failed", witness))
    return records


def emit_terms(ring: Optional[PolynomialRing] = None) -> List[IdentityRecord]:
    """
    The 15 identities as sympy terms over uninterpreted commutation maps, each
    re-evaluated with the standard maps and compared with the verify-mode run.
    """
    ring = ring or blueprint_ring()
    symbols = [PairElem(sympy.Symbol(f"a{k}"), sympy.Symbol(f"b{k}")) for k in range(1, 16)]
    forward, backward = run_passes(SymbolicMaps(), symbols)
    numeric = run_blueprint(StandardMaps(ring), ring)
    values = {name: ring.var(name) for name in ring.names}
    interpret = TermInterpreter(StandardMaps(ring), values)
    records = []
    for k, (x, y, ref) in enumerate(zip(forward.values, backward.values, numeric), start=1):
        left = PairElem(interpret(x.left), interpret(x.right))
        right = PairElem(interpret(y.left), interpret(y.right))
        witness = None
        if left != ref.left or right != ref.right:
            witness = "terms do not evaluate to the verify-mode coordinates"
        else:
            witness = _pair_difference(left, right)
        records.append(IdentityRecord(f"raw-{k}", x, y, "verified" if witness is None else "failed", witness))
    return records


# --- rules in the matrix model -------------------------------------------
def blueprint_invariant(folded: FoldedModel, word: str, values: Values):
    """gamma_f(g_1, ..., g_m) = w_f1 g_1 w_f2 g_2 ... w_fm g_m."""
    system = folded.system
    m = folded.model.identity()
    for letter, x in zip(word_letters(word), values):
        m = m * folded.standard_weyl(letter)[0] * folded.theta(system.base_index[letter], x)
    return m


def validate_rule_in_model(rule: RewriteRule, folded: Optional[FoldedModel] = None) -> CheckResult:
    """gamma_target(rule(x)) = gamma_source(x) in the D6 model over a ring with two variables per letter."""
    n = len(rule.source)
    ring = PolynomialRing([f"{p}{k}" for k in range(1, n + 1) for p in ("a", "b")])
    fm = (folded or standard_model("D6")).over(ring)
    values = [PairElem(ring.var(f"a{k}"), ring.var(f"b{k}")) for k in range(1, n + 1)]
    image = rule(values, StandardMaps(ring))
    lhs = blueprint_invariant(fm, rule.target, image)
    rhs = blueprint_invariant(fm, rule.source, values)
    return check(f"blueprint-rule-{rule.rule_id}", f"{rule.rule_id} is a blueprint rewriting rule of type "
                                                   f"({rule.source}, {rule.target})",
                 lhs == rhs, lhs.first_difference(rhs))


def check_rule_inverses() -> List[CheckResult]:
    """r21 after r12, r31 after r13 and r32 after r23 are the identity (and conversely)."""
    results = []
    for first, second in (("r12", "r21"), ("r13", "r31"), ("r23", "r32")):
        for a, b in ((first, second), (second, first)):
            rule_a, rule_b = get_rule(a), get_rule(b)
            n = len(rule_a.source)
            ring = PolynomialRing([f"{p}{k}" for k in range(1, n + 1) for p in ("a", "b")])
            maps = StandardMaps(ring)
            values = [PairElem(ring.var(f"a{k}"), ring.var(f"b{k}")) for k in range(1, n + 1)]
            back = rule_b(rule_a(values, maps), maps)
            results.append(check(f"blueprint-inverse-{b}-{a}", f"{b} after {a} is the identity",
                                 back == values, f"got {[str(v) for v in back]}"))
    return results


def blueprint_checks() -> List[CheckResult]:
    """Cycle validation, the six elementary rules in the model, rule inverses and the 15 identities."""
    results = validate_cycle(load_cycle())
    for pattern in RULES:
        results.append(validate_rule_in_model(rule_for(pattern)))
    results.extend(check_rule_inverses())
    for record in run_blueprint():
        results.append(record.to_check("blueprint-identity", f"blueprint identity {record.label} reduces to 0 = 0"))
    return results
