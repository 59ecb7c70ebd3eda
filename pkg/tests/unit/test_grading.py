# test_grading.py
import pytest

from chevalley import ChevalleyModel, standard_model
from grading import (
    _sample,
    check_braid_relations,
    check_chevalley_formula,
    check_root_homomorphisms,
    height_order,
    parity_restriction_check,
    parity_suite,
    quintuple_lemma_checks,
    square_action_checks,
    verify_grading,
)
from root_systems import build_system


def _failed(results):
    return [r for r in results if not r.passed]


class TestHelpers:
    """Test sampling and the height order."""

    def test_sample_is_deterministic(self):
        items = list(range(100))
        assert _sample(items, 10, 3) == _sample(items, 10, 3)
        assert _sample(items, None, 3) == items
        assert _sample(items, 500, 3) == items

    def test_height_order(self):
        h3 = build_system("H3")
        order = height_order(h3)
        assert sorted(order) == list(h3.positive)
        assert set(order[:3]) == set(h3.base_index)


class TestSourceChecks:
    """Test the checks on the unfolded Chevalley models."""

    def test_d6_root_homomorphisms(self):
        model = ChevalleyModel("D6")
        assert check_root_homomorphisms(model, range(60)).passed

    def test_d6_commutator_formula(self):
        model = ChevalleyModel("D6")
        pairs = [(x, z) for x in range(0, 60, 3) for z in range(0, 60, 4) if x != z and z != model.system.neg(x)]
        assert check_chevalley_formula(model, pairs).passed

    def test_braid_relations(self):
        assert check_braid_relations(standard_model("D6")).passed


class TestGradingSuites:
    """Test the grading suites of the A4 and D6 models."""

    def test_a4_suite(self):
        results = verify_grading("A4", seed=1)
        assert results[0].status == "note"
        assert not _failed(results)

    def test_d6_suite_sampled(self):
        results = verify_grading("d6", seed=5, sample=25)
        ids = {r.id for r in results}
        assert "grading-h3-positive-product" in ids
        assert "grading-h3-refinement" in ids
        assert not _failed(results)

    def test_quintuple_lemmas(self):
        results = quintuple_lemma_checks(standard_model("D6"))
        assert len(results) == 4
        assert not _failed(results)

    @pytest.mark.slow
    def test_e8_suite_sampled(self):
        assert not _failed(verify_grading("E8", seed=2, sample=10))


class TestParity:
    """Test the parity suite and the square-action classification."""

    def test_h3_parity_suite(self):
        results = {r.id: r for r in parity_suite("h3")}
        assert results["parity-h3-matches-figure"].status == "pass"
        assert results["parity-braid-h3-embedded"].passed
        assert results["parity-h3-normal-form"].passed
        assert not _failed(results.values())

    @pytest.mark.slow
    def test_h4_parity_suite(self):
        assert not _failed(parity_suite("H4"))

    @pytest.mark.slow
    def test_restriction(self):
        assert parity_restriction_check().passed

    @pytest.mark.slow
    def test_square_actions(self):
        assert not _failed(square_action_checks())
