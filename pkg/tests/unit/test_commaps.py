# test_commaps.py
import pytest
import sympy

from commaps import (
    CommapRow,
    StandardMaps,
    SymbolicMaps,
    TermInterpreter,
    figure_rows,
    formula_ring,
    map_symbol,
    parity_table_from_figure,
    parse_map_symbol,
    resolve_name,
    root_names,
    row_formula,
    row_parts,
    transporter,
)
from ring_kernel import IntegerRing, ModularRing, PairElem
from root_systems import ParityValue, build_system


class TestFigureRows:
    """Test loading of the embedded commutation-map figure."""

    def test_row_counts(self):
        assert len(figure_rows()) == 24
        assert len(figure_rows("h3")) == 22
        assert len(figure_rows("H4")) == 24

    def test_first_row(self):
        row = figure_rows()[0]
        assert row.key == ("rho0", "rho1", None)
        assert row.label() == "psi[rho0,rho1]"
        a, b, c, d = formula_ring().vars("a", "b", "c", "d")
        assert row_formula(row) == PairElem(a * c, b * d)

    def test_row_with_rho(self):
        row = next(r for r in figure_rows("h3") if r.key == ("alpha", "epsilon", "beta"))
        assert row.label() == "psi[alpha,epsilon]^beta"
        h3 = build_system("H3")
        names = root_names(h3)
        assert row_parts(h3, row) == (names["alpha"], names["epsilon"], names["beta"])

    def test_missing_rho_on_long_interval(self):
        h3 = build_system("H3")
        row = CommapRow("alpha", "epsilon", None, "0", "0", ("h3",))
        with pytest.raises(ValueError, match="no explicit rho"):
            row_parts(h3, row)


class TestRootNames:
    """Test the greek names of the quintuple and name resolution."""

    def test_names(self):
        h3 = build_system("H3")
        names = root_names(h3)
        assert set(names) == {"rho1", "rho2", "rho3", "alpha", "beta", "gamma", "delta", "epsilon"}
        assert names["alpha"] == names["rho2"]
        assert names["epsilon"] == names["rho3"]

    def test_resolve(self):
        h3 = build_system("H3")
        assert resolve_name(h3, "-delta") == h3.neg(root_names(h3)["delta"])
        assert resolve_name(h3, "<1,0,0>") == h3.base_index[0]
        with pytest.raises(ValueError):
            resolve_name(h3, "omega")


class TestStandardMaps:
    """Test the figure formulas evaluated in a concrete ring."""

    def test_ring_structure_maps(self):
        maps = StandardMaps(IntegerRing())
        x, y = PairElem(2, 3), PairElem(5, 7)
        assert maps.f(x, y) == PairElem(0, 10)
        assert maps.g(x, y) == PairElem(0, -15)
        assert maps.h1(x, y) == PairElem(15, 42)
        assert maps.h2(x, y) == PairElem(-21, 210)

    def test_modular_values(self):
        F = ModularRing(5)
        maps = StandardMaps(F)
        image = maps.psi("rho1", "rho2")(PairElem.of(F, 2, 3), PairElem.of(F, 4, 4))
        assert image == PairElem.of(F, 3, 2)

    def test_unknown_map(self):
        with pytest.raises(ValueError, match="No commutation map"):
            StandardMaps(IntegerRing()).psi("rho3", "rho1")

    def test_sabotaged(self):
        maps = StandardMaps(IntegerRing())
        broken = maps.sabotaged(("alpha", "gamma", None), component=1)
        x, y = PairElem(2, 3), PairElem(5, 7)
        assert broken.f(x, y) == PairElem(0, -10)
        assert maps.f(x, y) == PairElem(0, 10)


class TestTermAlgebra:
    """Test uninterpreted map symbols and their interpretation."""

    def test_symbol_round_trip(self):
        f = map_symbol("alpha", "epsilon", "beta", 2)
        assert parse_map_symbol(f.__name__) == (("alpha", "epsilon", "beta"), 1)
        g = map_symbol("rho1", "rho2", None, 1)
        assert parse_map_symbol(g.__name__) == (("rho1", "rho2", None), 0)

    def test_interpreter_matches_direct_evaluation(self):
        ring = formula_ring()
        a, b, c, d = sympy.symbols("a b c d")
        term = SymbolicMaps().h1(PairElem(a, b), PairElem(c, d))
        values = {name: ring.var(name) for name in ring.names}
        interpret = TermInterpreter(StandardMaps(ring), values)
        pa, pb, pc, pd = ring.vars("a", "b", "c", "d")
        assert interpret(term.left) == pb * pc
        assert interpret(term.right) == pa * pb * pd
        assert interpret(term.left + 2 * term.right) == pb * pc + 2 * pa * pb * pd

    def test_interpreter_unknown_symbol(self):
        interpret = TermInterpreter(StandardMaps(IntegerRing()), {})
        with pytest.raises(ValueError, match="No value"):
            interpret(sympy.Symbol("z"))


class TestTransport:
    """Test the parity table and the Weyl transport of figure maps."""

    def test_parity_table_from_figure(self):
        h3 = build_system("H3")
        table = parity_table_from_figure("H3")
        rho3 = h3.base_index[2]
        assert table.value(rho3, 0) == ParityValue(1, 1)
        assert table.value(rho3, 1) == ParityValue(-1, -1)
        assert table.value(h3.neg(rho3), 1) == ParityValue(-1, -1)

    def test_figure_pair_is_reproduced(self):
        trans = transporter("H3")
        h3 = trans.system
        r1, r2, _ = h3.base_index
        a, b, c, d = formula_ring().vars("a", "b", "c", "d")
        assert trans.standard_commutation_map(r1, r2) == [(h3.index[h3.roots[r1] + h3.roots[r2]],
                                                            PairElem(a * c, b * d))]

    def test_orthogonal_pair_is_empty(self):
        trans = transporter("H3")
        r1, _, r3 = trans.system.base_index
        assert trans.standard_commutation_map(r1, r3) == []

    def test_every_pair_with_an_interval_is_reached(self):
        trans = transporter("H3")
        h3 = trans.system
        for z in range(len(h3.roots)):
            for x in range(len(h3.roots)):
                if not h3.proportional(z, x) and h3.open_interval(z, x):
                    assert trans.transports(z, x, limit=1)
