# test_tables.py
import json

import pytest

from tables import (
    TABLES,
    build_table,
    compare_tables,
    compare_with_figure,
    cycle_table,
    fiber_table,
    figure_frame,
    render_table,
)


class TestBuildTables:
    """Test the recomputed reference tables."""

    def test_fibers_h3(self):
        df = fiber_table("h3")
        assert list(df.columns) == ["beta", "alpha1", "alpha2"]
        assert len(df) == 15
        first = df[df["beta"] == "<1,0,0>"].iloc[0]
        assert (first["alpha1"], first["alpha2"]) == ("e1-e2", "e5+e6")

    def test_parity_h3_columns(self):
        df = build_table("parity", "H3")
        assert list(df.columns) == ["beta", "rho1", "rho2", "rho3"]
        assert len(df) == 15

    def test_commaps_h3(self):
        df = build_table("commaps", "h3")
        assert len(df) == 22
        assert list(df.columns) == ["zeta", "xi", "rho", "first", "second"]

    def test_cycle(self):
        df = cycle_table()
        assert len(df) == 63
        assert df.iloc[0]["word"] == "[32323]1232312321"
        with pytest.raises(ValueError, match="only available for h3"):
            cycle_table("h4")

    def test_unknown_inputs(self):
        with pytest.raises(ValueError, match="Unknown table"):
            build_table("weights", "h3")
        with pytest.raises(ValueError, match="Unknown system"):
            build_table("fibers", "h5")
        assert set(TABLES) == {"fibers", "parity", "commaps", "cycle"}


class TestRendering:
    """Test CSV, JSON and Markdown output."""

    def test_csv(self):
        text = render_table(fiber_table("h3"), "csv")
        assert text.splitlines()[0] == "beta,alpha1,alpha2"

    def test_json(self):
        records = json.loads(render_table(fiber_table("h3"), "json"))
        assert len(records) == 15
        assert set(records[0]) == {"beta", "alpha1", "alpha2"}

    def test_markdown_uses_tau_symbol(self):
        text = render_table(build_table("parity", "h3"), "md")
        lines = text.splitlines()
        assert lines[0] == "| beta | rho1 | rho2 | rho3 |"
        assert lines[1] == "| --- | --- | --- | --- |"
        assert "τ" in text and "tau" not in "\n".join(lines[2:])

    def test_unknown_format(self):
        with pytest.raises(ValueError, match="Unknown format"):
            render_table(fiber_table("h3"), "xml")


class TestFigureAgreement:
    """Test that recomputed tables match the embedded figures."""

    @pytest.mark.parametrize("name", ["fibers", "parity", "commaps"])
    def test_h3(self, name):
        result = compare_with_figure(name, "h3")
        assert result.id == f"table-{name}-h3"
        assert result.passed, result.witness

    @pytest.mark.slow
    @pytest.mark.parametrize("name", ["fibers", "parity", "commaps"])
    def test_h4(self, name):
        assert compare_with_figure(name, "h4").passed

    def test_rows_follow_figure_order(self):
        df = fiber_table("h3")
        assert list(df["beta"]) == list(figure_frame("fibers", "h3")["beta"])

    def test_swapped_rows_fail(self):
        df = fiber_table("h3")
        swapped = df.iloc[[1, 0, *range(2, len(df))]].reset_index(drop=True)
        result = compare_tables("fibers", "h3", swapped, figure_frame("fibers", "h3"))
        assert not result.passed
        assert result.witness.startswith("row 0:")

    def test_swapped_commap_rows_fail(self):
        df = build_table("commaps", "h3")
        swapped = df.iloc[[1, 0, *range(2, len(df))]].reset_index(drop=True)
        assert compare_tables("commaps", "h3", df, figure_frame("commaps", "h3")).passed
        assert not compare_tables("commaps", "h3", swapped, figure_frame("commaps", "h3")).passed

    def test_missing_row_fails(self):
        df = fiber_table("h3").iloc[:-1]
        result = compare_tables("fibers", "h3", df, figure_frame("fibers", "h3"))
        assert not result.passed
        assert "14 rows != 15 rows" in result.witness
