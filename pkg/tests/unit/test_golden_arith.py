# test_golden_arith.py
import pytest
from hypothesis import given, settings, strategies as st

from golden_arith import ONE, TAU, TAU_INV, ZERO, GoldenInt, GoldenRat, parse_golden

small = st.integers(min_value=-10**6, max_value=10**6)
golden = st.builds(GoldenInt, small, small)


class TestGoldenIntArithmetic:
    """Test multiplication, conjugation and norms in Z[tau]."""

    def test_tau_squared(self):
        """tau * tau reduces to 1 + tau."""
        assert TAU * TAU == GoldenInt(1, 1)

    def test_unit_product(self):
        """(1 + tau)(2 - tau) = 1."""
        assert GoldenInt(1, 1) * GoldenInt(2, -1) == ONE

    def test_identity(self):
        assert GoldenInt(1, 2) * ONE == GoldenInt(1, 2)

    def test_conjugate_and_norm(self):
        assert TAU.conj() == GoldenInt(1, -1)
        assert TAU.norm() == -1
        assert GoldenInt(1, 1).is_unit()
        assert not GoldenInt(2, 0).is_unit()

    def test_inverse_of_units(self):
        for u in (TAU, TAU_INV, GoldenInt(1, 1), GoldenInt(-2, 1)):
            assert u * u.inverse() == ONE

    def test_inverse_of_non_unit_raises(self):
        with pytest.raises(ValueError):
            GoldenInt(2, 0).inverse()

    def test_powers(self):
        assert TAU ** 2 == GoldenInt(1, 1)
        assert TAU ** 3 == GoldenInt(1, 2)
        assert TAU ** -1 == TAU_INV
        assert TAU ** 0 == ONE

    def test_divide_exact(self):
        assert GoldenInt(1, 2).divide_exact(TAU) == GoldenInt(1, 1)
        assert GoldenInt(1, 0).divide_exact(2) is None
        with pytest.raises(ValueError):
            TAU.divide_exact(0)

    @settings(max_examples=200)
    @given(golden, golden, golden)
    def test_ring_axioms(self, x, y, z):
        """Associativity, commutativity and distributivity hold exactly."""
        assert (x * y) * z == x * (y * z)
        assert x * y == y * x
        assert x * (y + z) == x * y + x * z
        assert (x + y) - y == x

    @given(golden, golden)
    def test_norm_multiplicative(self, x, y):
        assert (x * y).norm() == x.norm() * y.norm()
        assert x * x.conj() == GoldenInt(x.norm(), 0)


class TestGoldenSign:
    """Test the exact sign and the order it induces."""

    def test_examples(self):
        assert GoldenInt(1, -1).sign() == -1
        assert ZERO.sign() == 0
        assert GoldenInt(5, -3).sign() == 1
        assert GoldenInt(-2, 1).sign() == -1

    @settings(max_examples=300)
    @given(golden)
    def test_agrees_with_float(self, x):
        value = x.approx()
        if abs(value) > 1e-6:
            assert x.sign() == (1 if value > 0 else -1)

    @given(golden, golden)
    def test_total_order(self, x, y):
        """Exactly one of x < y, x == y, y < x holds."""
        assert [x < y, x == y, y < x].count(True) == 1

    def test_abs(self):
        assert abs(GoldenInt(1, -1)) == GoldenInt(-1, 1)


class TestGoldenFormatting:
    """Test rendering and parsing of golden integers."""

    @pytest.mark.parametrize("value,text", [
        (GoldenInt(0, 0), "0"),
        (GoldenInt(3, 0), "3"),
        (TAU, "tau"),
        (GoldenInt(1, 1), "tau^2"),
        (GoldenInt(1, 2), "2tau+1"),
        (TAU_INV, "tau-1"),
        (GoldenInt(0, -1), "-tau"),
    ])
    def test_format(self, value, text):
        assert str(value) == text

    def test_markdown(self):
        assert GoldenInt(1, 1).to_markdown() == "τ²"
        assert GoldenInt(1, 2).to_markdown() == "2τ+1"

    @pytest.mark.parametrize("text,value", [
        ("2tau+1", GoldenInt(1, 2)),
        ("tau^2", GoldenInt(1, 1)),
        ("1+tau", GoldenInt(1, 1)),
        ("-tau", GoldenInt(0, -1)),
        ("τ", TAU),
        ("τ²", GoldenInt(1, 1)),
        ("-3", GoldenInt(-3, 0)),
    ])
    def test_parse(self, text, value):
        assert parse_golden(text) == value

    @pytest.mark.parametrize("text", ["", "x", "tau^3", None])
    def test_parse_rejects(self, text):
        with pytest.raises(ValueError):
            parse_golden(text)

    @given(golden)
    def test_format_parses_back(self, x):
        assert parse_golden(str(x)) == x


class TestGoldenRat:
    """Test the canonical fractions of Q(tau)."""

    def test_canonical_form(self):
        assert GoldenRat(GoldenInt(2, 4), 4) == GoldenRat(GoldenInt(1, 2), 2)
        assert GoldenRat(GoldenInt(1, 0), -2).den == 2
        assert GoldenRat(ZERO, 7).den == 1

    def test_zero_denominator(self):
        with pytest.raises(ValueError):
            GoldenRat(ONE, 0)

    def test_division(self):
        half_tau = TAU / 2
        assert half_tau * 2 == TAU
        assert (ONE / TAU) == GoldenRat(TAU_INV)
        with pytest.raises(ValueError):
            GoldenRat(ONE) / 0

    def test_integral(self):
        assert (GoldenInt(2, 2) / 2).is_integral()
        assert (GoldenInt(2, 2) / 2).to_golden_int() == GoldenInt(1, 1)
        with pytest.raises(ValueError):
            (TAU / 2).to_golden_int()

    def test_sign_and_order(self):
        assert (TAU / 2).sign() == 1
        assert GoldenRat(ONE, 2) < TAU / 2
        assert -(TAU / 2) < 0
