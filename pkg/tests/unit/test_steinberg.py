# test_steinberg.py
import random
from types import SimpleNamespace

import pytest

import steinberg
from api.models import check
from chevalley import standard_model
from commaps import formula_ring
from ring_kernel import ModularRing
from steinberg import (
    SteinbergRelation,
    UnfoldedGrading,
    h4_relation_from_transport,
    hall_witt,
    steinberg_relations,
    unfold_and_verify,
    verify_in_model,
    weyl_param_injectivity,
    weyl_surjectivity,
    word_independence_checks,
)


def _sampled(system_name, k, seed=0):
    return random.Random(seed).sample(steinberg_relations(system_name), k)


class _StubFolded:
    """Stands in for a folded model: only the target system kind is read."""

    def __init__(self, kind):
        target = {"D6": "H3", "E8": "H4"}[kind]
        self.system = SimpleNamespace(kind=target, base_index=(0,))

    def over(self, ring):
        return self


class TestRelations:
    """Test the relation list and its image in the folded models."""

    def test_relation_count(self):
        relations = steinberg_relations("H3")
        additive = [r for r in relations if r.kind == "additive"]
        assert len(additive) == 30
        assert len(relations) == 30 + 30 * 28

    def test_labels(self):
        d6 = standard_model("D6")
        h3 = d6.system
        r1 = h3.base_index[0]
        assert SteinbergRelation("additive", r1).label(h3).startswith("add(")
        assert SteinbergRelation("commutator", r1, h3.base_index[1]).label(h3).startswith("comm(")

    def test_sampled_relations_over_polynomials(self):
        folded = standard_model("D6").over(formula_ring())
        result = verify_in_model(_sampled("H3", 60), folded)
        assert result.id == "steinberg-d6-poly-relations"
        assert result.passed, result.witness

    def test_sampled_relations_over_z5(self):
        folded = standard_model("D6").over(ModularRing(5))
        result = verify_in_model(_sampled("H3", 60, seed=3), folded, seed=3)
        assert result.id == "steinberg-d6-z5-relations"
        assert result.passed, result.witness

    @pytest.mark.slow
    def test_all_h3_relations(self):
        folded = standard_model("D6").over(formula_ring())
        assert verify_in_model(steinberg_relations("H3"), folded).passed

    @pytest.mark.slow
    def test_sampled_h4_relations(self):
        folded = standard_model("E8").over(formula_ring())
        assert verify_in_model(_sampled("H4", 30), folded).passed

    @pytest.mark.slow
    def test_all_h4_relations_over_z5(self):
        folded = standard_model("E8").over(ModularRing(5))
        result = verify_in_model(steinberg_relations("H4"), folded, seed=2)
        assert result.passed, result.witness

    def test_full_flag_checks_every_h4_relation(self, monkeypatch):
        seen = {}

        def fake_verify(relations, folded, seed=0):
            seen[folded.system.kind] = len(relations)
            return check(f"fake-{folded.system.kind}", "stub", True)

        monkeypatch.setattr(steinberg, "standard_model", lambda kind: _StubFolded(kind))
        monkeypatch.setattr(steinberg, "verify_in_model", fake_verify)
        monkeypatch.setattr(steinberg, "weyl_param_injectivity", lambda *a, **k: [])
        monkeypatch.setattr(steinberg, "weyl_surjectivity", lambda *a, **k: check("s", "stub", True))
        monkeypatch.setattr(steinberg, "word_independence_checks", lambda *a, **k: [])
        monkeypatch.setattr(steinberg, "h4_relation_from_transport", lambda: check("t", "stub", True))

        steinberg.steinberg_checks("z5", e8_sample=40)
        assert seen == {"H3": 30 + 30 * 28, "H4": 40}
        steinberg.steinberg_checks("z5", e8_sample=40, full=True)
        assert seen["H4"] == 120 + 120 * 118


class TestWeylElements:
    """Test the parametrised Weyl elements over finite rings."""

    def test_injective_over_z5(self):
        d6 = standard_model("D6")
        results = weyl_param_injectivity(d6, d6.system.base_index[1])
        assert len(results) == 4
        assert all(r.id.startswith("steinberg-weyl-d6-z5-") for r in results)
        assert all(r.passed for r in results), [r.witness for r in results if not r.passed]

    @pytest.mark.slow
    def test_surjective_over_z5(self):
        d6 = standard_model("D6")
        result = weyl_surjectivity(d6, d6.system.base_index[0])
        assert result.id == "steinberg-weyl-d6-z5-surjective"
        assert result.passed, result.witness


class TestTransport:
    """Test word independence of the transported maps."""

    def test_h3_word_independence(self):
        results = word_independence_checks("H3")
        assert results[0].id == "steinberg-h3-word-independent"
        assert results[0].passed, results[0].witness

    def test_h4_row_follows_from_h3_row(self):
        assert h4_relation_from_transport().passed


class TestUnfolding:
    """Test the unfolded family of the folded D6 model."""

    def test_refold(self):
        folded = standard_model("D6").over(formula_ring())
        un = UnfoldedGrading(folded)
        c, d = folded.ring.vars("c", "d")
        beta = folded.system.base_index[2]
        first, second = folded.fiber(beta)
        assert un.elem(first, c) * un.elem(second, d) == folded.folded_elem(beta, c, d)

    def test_hall_witt_is_trivial(self):
        folded = standard_model("D6").over(formula_ring())
        a, b, c, d = folded.ring.vars("a", "b", "c", "d")
        r1, r2, r3 = folded.system.base_index
        x = (folded.folded_elem(r1, a, b), folded.folded_elem_inv(r1, a, b))
        y = (folded.folded_elem(r2, c, d), folded.folded_elem_inv(r2, c, d))
        z = (folded.folded_elem(r3, a, d), folded.folded_elem_inv(r3, a, d))
        assert hall_witt(x, y, z).is_identity()

    def test_unfold_d6(self):
        results = unfold_and_verify("d6", sample=200, seed=1)
        assert [r.id for r in results] == ["unfold-d6-commutator-signs", "unfold-d6-opposite-parts",
                                           "unfold-d6-weyl-compatible", "unfold-d6-refold", "unfold-d6-hall-witt"]
        assert all(r.passed for r in results), [r.witness for r in results if not r.passed]
