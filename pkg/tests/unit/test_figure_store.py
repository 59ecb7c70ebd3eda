# test_figure_store.py
import os

import pytest

from figure_store import FigureStore, figure_store


class TestFigureStore:
    """Test loading of the embedded figures."""

    def test_available_figures(self):
        names = figure_store.get_available_figures()
        for name in ("commaps", "fibers_h3", "fibers_h4", "homotopy_cycle", "parity_h3", "parity_h4"):
            assert name in names

    def test_read_table_keeps_strings(self):
        df = figure_store.read_table("commaps")
        assert len(df) == 24
        assert df.iloc[0]["rho"] == ""
        assert df["first"].map(type).eq(str).all()

    def test_read_lines(self):
        lines = figure_store.read_lines("homotopy_cycle")
        assert len(lines) == 63

    def test_missing_figure(self):
        with pytest.raises(ValueError, match="Available"):
            figure_store.get_figure("weights")

    def test_custom_directory(self, tmp_path):
        (tmp_path / "small.csv").write_text("beta,rho1\n<1>,\"(1,1)\"\n", encoding="utf-8")
        (tmp_path / "notes.md").write_text("ignored", encoding="utf-8")
        store = FigureStore(str(tmp_path))
        assert store.get_available_figures() == ["small"]
        assert store.read_table("small").iloc[0]["rho1"] == "(1,1)"

        (tmp_path / "extra.txt").write_text("121\n\n212\n", encoding="utf-8")
        store.reload_figures()
        assert store.read_lines("extra") == ["121", "212"]

    def test_missing_directory(self, tmp_path, capsys):
        store = FigureStore(os.path.join(str(tmp_path), "absent"))
        assert store.get_available_figures() == []
        assert "Warning" in capsys.readouterr().out

    def test_directory_from_environment(self, tmp_path, monkeypatch):
        (tmp_path / "only.txt").write_text("x", encoding="utf-8")
        monkeypatch.setenv("HFOLD_FIGURES_DIR", str(tmp_path))
        assert FigureStore().get_available_figures() == ["only"]
