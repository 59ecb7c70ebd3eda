# test_blueprint.py
import pytest

from blueprint import (
    LONGEST_WORD,
    RULES,
    BlueprintState,
    apply_rule,
    check_rule_inverses,
    emit_terms,
    get_rule,
    load_cycle,
    locate_move,
    parse_cycle,
    rule_for,
    run_blueprint,
    step,
    validate_cycle,
    validate_rule_in_model,
)
from commaps import StandardMaps
from ring_kernel import IntegerRing, PairElem


class TestHomotopyCycle:
    """Test parsing and validation of the homotopy cycle."""

    def test_parse_marks(self):
        cycle = parse_cycle(["[32323]1232312321", "2323[212]32312321", "", "323231232312321"])
        assert len(cycle) == 3
        assert cycle.words[0] == LONGEST_WORD
        assert cycle.marks == [(0, 4), (4, 6), None]

    def test_embedded_cycle_is_valid(self):
        cycle = load_cycle()
        assert len(cycle) == 63
        results = validate_cycle(cycle)
        assert [r.id for r in results] == ["blueprint-cycle-closed", "blueprint-cycle-reduced",
                                           "blueprint-cycle-moves"]
        assert all(r.passed for r in results), [r.witness for r in results if not r.passed]

    def test_broken_cycle_is_reported(self):
        cycle = load_cycle()
        cycle.words[6] = cycle.words[5]
        moves = {r.id: r for r in validate_cycle(cycle)}["blueprint-cycle-moves"]
        assert not moves.passed

    def test_locate_move(self):
        assert locate_move(LONGEST_WORD, "232321232312321") == (0, "32323", "23232")
        with pytest.raises(ValueError, match="different lengths"):
            locate_move("12", "121")
        with pytest.raises(ValueError, match="are equal"):
            locate_move("13", "13")
        with pytest.raises(ValueError, match="not a braid move"):
            locate_move("12", "21")


class TestRules:
    """Test the elementary rewriting rules."""

    def test_lookup(self):
        assert set(RULES.values()) == {"r12", "r21", "r13", "r31", "r23", "r32"}
        rule = rule_for("23232")
        assert (rule.rule_id, rule.target) == ("r23", "32323")
        assert get_rule("r31").source == "31"
        with pytest.raises(ValueError, match="No rewriting rule"):
            rule_for("11")
        with pytest.raises(ValueError, match="Unknown rule"):
            get_rule("r99")

    def test_swap_rule(self):
        maps = StandardMaps(IntegerRing())
        state = BlueprintState("213", [PairElem(1, 2), PairElem(3, 4), PairElem(5, 6)])
        out = apply_rule(get_rule("r13"), state, 1, maps)
        assert out.word == "231"
        assert out.values == [PairElem(1, 2), PairElem(5, 6), PairElem(3, 4)]

    def test_r12_values(self):
        maps = StandardMaps(IntegerRing())
        a, b, c = PairElem(1, 2), PairElem(3, 4), PairElem(5, 6)
        assert get_rule("r12")([a, b, c], maps) == [c, PairElem(-8, -16), a]

    def test_block_mismatch(self):
        maps = StandardMaps(IntegerRing())
        state = BlueprintState("121", [PairElem(0, 0)] * 3)
        with pytest.raises(ValueError, match="does not match"):
            apply_rule(get_rule("r13"), state, 0, maps)
        with pytest.raises(ValueError, match="expects 3 values"):
            get_rule("r12")([PairElem(0, 0)], maps)

    def test_state_length_mismatch(self):
        with pytest.raises(ValueError, match="2 values"):
            BlueprintState("121", [PairElem(0, 0)] * 2)

    def test_step_follows_cycle(self):
        maps = StandardMaps(IntegerRing())
        cycle = load_cycle()
        state = BlueprintState(cycle.words[0], [PairElem(k, k + 1) for k in range(15)])
        out = step(state, cycle.words[1], maps)
        assert out.word == cycle.words[1]
        assert out.values[5:] == state.values[5:]

    @pytest.mark.parametrize("pattern", ["121", "212", "13", "31"])
    def test_short_rules_in_model(self, pattern):
        result = validate_rule_in_model(rule_for(pattern))
        assert result.passed, result.witness

    @pytest.mark.slow
    @pytest.mark.parametrize("pattern", ["23232", "32323"])
    def test_long_rules_in_model(self, pattern):
        result = validate_rule_in_model(rule_for(pattern))
        assert result.passed, result.witness

    def test_rule_inverses(self):
        results = check_rule_inverses()
        assert len(results) == 6
        assert "blueprint-inverse-r21-r12" in {r.id for r in results}
        assert all(r.passed for r in results)


@pytest.mark.slow
class TestBlueprintRun:
    """Test the full blueprint computation."""

    def test_identities_hold_for_standard_maps(self):
        records = run_blueprint()
        assert [r.label for r in records] == [f"raw-{k}" for k in range(1, 16)]
        assert all(r.status == "verified" for r in records), [r.witness for r in records]

    def test_emitted_terms_agree(self):
        records = emit_terms()
        assert len(records) == 15
        assert all(r.status == "verified" for r in records), [r.witness for r in records]
