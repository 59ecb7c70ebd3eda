# test_folding.py
import pytest

from folding import folding_checks, folding_map
from golden_arith import TAU


class TestFoldingMap:
    """Test the D6 -> H3 and A4 -> H2 foldings."""

    def test_unknown_source(self):
        with pytest.raises(ValueError, match="No folding"):
            folding_map("B3")

    def test_base_fibers_d6(self):
        fm = folding_map("D6")
        src, tgt = fm.source, fm.target
        fibers = [tuple(src.label(a) for a in fm.fiber(b)) for b in tgt.base_index]
        assert fibers == [("e1-e2", "e5+e6"), ("e2-e3", "e4-e5"), ("e5-e6", "e3-e4")]

    def test_every_root_has_two_orthogonal_preimages(self):
        fm = folding_map("D6")
        src, gold = fm.source, fm.golden
        for b in range(len(fm.target.roots)):
            a1, a2 = fm.fiber(b)
            assert fm.fold(a1) == fm.fold(a2) == b
            assert src.pair(a1, a2) == 0
            assert fm.is_short(a1) and not fm.is_short(a2)
            assert gold.roots[fm.goldfold(a2)] == TAU * gold.roots[fm.goldfold(a1)]

    def test_fiber_rows_cover_positive_roots(self):
        fm = folding_map("D6")
        rows = fm.fiber_rows()
        assert len(rows) == 15
        assert {a for _, a1, a2 in rows for a in (a1, a2)} <= set(fm.source.positive)

    def test_a4_to_h2(self):
        fm = folding_map("A4")
        assert fm.target.kind == "H2"
        assert len(fm.fiber_rows()) == 5
        assert fm.base_pair(0) == (0, 2)

    def test_weyl_embedding(self):
        fm = folding_map("D6")
        assert fm.base_pair(0) == (0, 5)
        assert fm.embed_weyl((0, 1)) == (0, 5, 1, 3)

    def test_embedded_reflection_folds_to_reflection(self):
        fm = folding_map("D6")
        src, tgt = fm.source, fm.target
        for beta in tgt.positive:
            u = fm.embed_reflection(beta)
            s = tgt.reflection_perm(beta)
            assert all(fm.fold(u[a]) == s[fm.fold(a)] for a in range(len(src.roots)))


class TestFoldingChecks:
    """Test the folding suite."""

    def test_small_kinds_pass(self):
        results = folding_checks(("A4", "D6"))
        assert all(r.passed for r in results), [r for r in results if not r.passed]

    def test_crystallographic_interval_violation_is_a_note(self):
        results = {r.id: r for r in folding_checks(("D6",))}
        assert results["fold-d6-interval-fold-cry"].status == "note"

    @pytest.mark.slow
    def test_e8_passes(self):
        results = folding_checks(("E8",))
        assert all(r.passed for r in results), [r for r in results if not r.passed]
