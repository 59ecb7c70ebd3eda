# test_e8_algebra.py
import pytest

from e8_algebra import DIM, e8_algebra, e8_checks


class TestE8Algebra:
    """Test the Chevalley basis of E8."""

    def test_dimensions(self):
        alg = e8_algebra()
        assert alg.n_roots == 240
        assert DIM == alg.n_roots + alg.rank

    def test_simple_brackets(self):
        alg = e8_algebra()
        system = alg.system
        for k, a in enumerate(system.base_index):
            assert alg.bracket_basis(a, system.neg(a)) == {alg.n_roots + k: 1}
            assert alg.bracket_basis(alg.n_roots + k, a) == {a: 2}
            assert alg.bracket_basis(a, alg.n_roots + k) == {a: -2}

    def test_structure_constants_are_antisymmetric(self):
        alg = e8_algebra()
        for a in range(0, 240, 7):
            for b in range(0, 240, 5):
                n = alg.structure_constant(a, b)
                if alg.root_sum(a, b) is None:
                    assert n == 0
                else:
                    assert n in (1, -1)
                    assert alg.structure_constant(b, a) == -n

    def test_generators_are_derivations_on_a_slice(self):
        alg = e8_algebra()
        g = alg.generators()[0]
        triples = [t for t in alg.jacobi_triples(gens=[g]) if t[1] % 11 == 0 and t[2] % 13 == 0]
        assert triples
        assert not [t for t in triples if alg.jacobi_violation(*t)]

    def test_jacobi_triples_cover_generator_pairs(self):
        alg = e8_algebra()
        triples = list(alg.jacobi_triples(gens=[alg.generators()[0]]))
        assert len(triples) == DIM * (DIM - 1) // 2

    def test_simple_vectors_generate(self):
        alg = e8_algebra()
        assert len(alg.generators()) == 16
        assert alg.generation_gaps() == []

    def test_labels(self):
        alg = e8_algebra()
        assert alg.basis_label(DIM - 1) == "h8"
        assert alg.basis_label(0).startswith("e<")

    def test_divided_square_is_integral(self):
        alg = e8_algebra()
        a = alg.system.base_index[0]
        half = alg.ad_square_half(a)
        # e_-a -> -h_a -> 2 e_a, halved
        assert half[(a, alg.system.neg(a))] == -1


@pytest.mark.slow
def test_e8_suite_passes():
    results = e8_checks()
    assert all(r.passed for r in results), [r for r in results if not r.passed]
