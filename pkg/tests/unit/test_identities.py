# test_identities.py
import pytest

from blueprint import blueprint_ring
from commaps import StandardMaps
from identities import (
    EVALUATED_IDENTITIES,
    RingStructure,
    evaluate_identity,
    get_identity,
    identity_checks,
    identity_env,
    verify_ring_structure,
)
from ring_kernel import IntegerRing, PairElem


class TestEvaluatedIdentities:
    """Test the evaluated identities under the standard maps."""

    def test_catalogue(self):
        assert [i.number for i in EVALUATED_IDENTITIES] == list(range(1, 36))
        assert get_identity(22).label == "(22)"
        with pytest.raises(ValueError, match="Unknown identity"):
            get_identity(36)

    def test_environment(self):
        ring = blueprint_ring()
        env = identity_env(get_identity(33), ring)
        assert env[5] == PairElem(ring.zero, ring.var("b5"))
        assert env[10] == PairElem(ring.var("a10"), ring.var("b10"))
        assert env[1].is_zero()
        env = identity_env(get_identity(4), ring)
        assert env[12] == PairElem(ring.one, ring.one)

    def test_all_identities_hold(self):
        results = identity_checks()
        assert len(results) == 35
        assert [r.id for r in results] == [f"identity-{n:02d}" for n in range(1, 36)]
        assert all(r.passed for r in results), [r.id for r in results if not r.passed]

    def test_sabotaged_map_breaks_an_identity(self):
        maps = StandardMaps(blueprint_ring()).sabotaged(("alpha", "gamma", None), component=1)
        record = evaluate_identity(get_identity(3), maps)
        assert record.status == "failed"
        assert record.witness


class TestRingStructure:
    """Test the ring structure on S = R x R."""

    def test_all_checks_pass(self):
        results = verify_ring_structure()
        ids = {r.id for r in results}
        assert {"ring-commutative", "ring-involution", "ring-formula-h2", "ring-formula-h4"} <= ids
        assert len([i for i in ids if i.startswith("ring-maps-")]) == 15
        assert all(r.passed for r in results), [r.id for r in results if not r.passed]

    def test_projections_over_integers(self):
        Z = IntegerRing()
        rs = RingStructure(StandardMaps(Z), PairElem(1, 1))
        x = PairElem(4, 9)
        assert rs.p1(x) == PairElem(4, 0)
        assert rs.p2(x) == PairElem(0, 9)
        assert rs.in_s1(rs.p1(x)) and rs.in_s2(rs.p2(x))
        assert rs.coord(PairElem(2, 0), PairElem(3, 0)) == PairElem(2, 3)
