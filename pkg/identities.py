# identities.py
"""
Evaluated blueprint identities and the ring structure they force on S = R x R.

Each identity comes from one raw blueprint identity by setting every variable
outside a small set to zero (or one). Here the identities are checked as
polynomial pair identities under the standard commutation maps, with
y_k = (a_k, b_k) generic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

from api.models import CheckResult, check
from blueprint import IdentityRecord, blueprint_ring
from commaps import CommutationMaps, StandardMaps
from ring_kernel import PairElem, PolynomialRing

Env = Dict[int, PairElem]
Side = Callable[[Env, CommutationMaps, PairElem], PairElem]


@dataclass(frozen=True)
class EvaluatedIdentity:
    number: int
    blueprint: int
    variables: Tuple[int, ...]
    lhs: Side
    rhs: Side
    ones: Tuple[int, ...] = ()
    in_s2: Tuple[int, ...] = ()
    text: str = ""

    @property
    def label(self) -> str:
        return f"({self.number})"


def _p(m: CommutationMaps, zeta: str, xi: str, rho: Optional[str] = None):
    return m.psi(zeta, xi, rho)


def _zero(y: Env, m: CommutationMaps, one: PairElem) -> PairElem:
    return one - one


EVALUATED_IDENTITIES: Tuple[EvaluatedIdentity, ...] = (
    EvaluatedIdentity(1, 12, (4,), lambda y, m, one: (-y[4]).star(), lambda y, m, one: -y[4].star(),
                      text="(-y4)* = -y4*"),
    EvaluatedIdentity(2, 5, (2, 15), lambda y, m, one: y[15] * y[2].star(), lambda y, m, one: (y[15] * y[2]).star(),
                      text="y15 y2* = (y15 y2)*"),
    EvaluatedIdentity(3, 9, (5, 8), lambda y, m, one: _p(m, "epsilon", "gamma")(y[5], y[8]),
                      lambda y, m, one: -_p(m, "alpha", "gamma")(y[5], y[8]),
                      text="psi[eps,gamma](y5,y8) = -psi[alpha,gamma](y5,y8)"),
    EvaluatedIdentity(4, 9, (4, 5), lambda y, m, one: m.f(y[4], y[5]), lambda y, m, one: m.f(y[5], y[4]),
                      ones=(12,), text="f(y4,y5) = f(y5,y4)"),
    EvaluatedIdentity(5, 14, (1, 3), lambda y, m, one: m.f(y[1], y[3]).star(), lambda y, m, one: m.f(y[1], y[3]),
                      text="f(y1,y3)* = f(y1,y3)"),
    EvaluatedIdentity(6, 5, (1, 12), lambda y, m, one: m.f(y[1], y[12].star()), lambda y, m, one: -m.f(y[1], y[12]),
                      text="f(y1,y12*) = -f(y1,y12)"),
    EvaluatedIdentity(7, 7, (10, 12), lambda y, m, one: _p(m, "beta", "delta")(y[10], y[12]),
                      lambda y, m, one: _p(m, "epsilon", "gamma")(y[10], y[12]), ones=(4,),
                      text="psi[beta,delta](y10,y12) = psi[eps,gamma](y10,y12)"),
    EvaluatedIdentity(8, 7, (4, 10, 12), lambda y, m, one: m.f(y[4] * y[10], y[12]),
                      lambda y, m, one: m.f(y[4] * y[12], y[10]), text="f(y4 y10, y12) = f(y4 y12, y10)"),
    EvaluatedIdentity(9, 13, (1, 4), lambda y, m, one: _p(m, "epsilon", "beta", "gamma")(y[1], y[4]),
                      lambda y, m, one: -_p(m, "alpha", "delta", "gamma")(y[1], y[4].star()),
                      text="psi[eps,beta^gamma](y1,y4) = -psi[alpha,delta^gamma](y1,y4*)"),
    EvaluatedIdentity(10, 3, (7, 15), lambda y, m, one: _p(m, "beta", "epsilon", "delta")(y[7], y[15]),
                      lambda y, m, one: -_p(m, "delta", "alpha", "beta")(y[7], y[15]),
                      text="psi[beta,eps^delta](y7,y15) = -psi[delta,alpha^beta](y7,y15)"),
    EvaluatedIdentity(11, 3, (10, 14), lambda y, m, one: _p(m, "beta", "epsilon", "delta")(y[10].star(), y[14]),
                      lambda y, m, one: _p(m, "beta", "epsilon", "delta")(y[10], -y[14]),
                      text="psi[beta,eps^delta](y10*,y14) = psi[beta,eps^delta](y10,-y14)"),
    EvaluatedIdentity(12, 12, (2, 5), lambda y, m, one: _p(m, "beta", "epsilon", "delta")(y[2], y[5]).star(),
                      lambda y, m, one: -_p(m, "beta", "epsilon", "delta")(y[2], -y[5]),
                      text="psi[beta,eps^delta](y2,y5)* = -psi[beta,eps^delta](y2,-y5)"),
    EvaluatedIdentity(13, 7, (7, 10), lambda y, m, one: _p(m, "beta", "epsilon", "delta")(y[7], y[10].star()),
                      lambda y, m, one: _p(m, "beta", "epsilon", "delta")(y[7], y[10]),
                      text="psi[beta,eps^delta](y7,y10*) = psi[beta,eps^delta](y7,y10)"),
    EvaluatedIdentity(14, 11, (1, 3, 8), lambda y, m, one: m.f(m.f(y[1], y[3]), y[8]), _zero,
                      text="f(f(y1,y3),y8) = 0"),
    EvaluatedIdentity(15, 11, (1, 4, 9),
                      lambda y, m, one: m.f(_p(m, "alpha", "delta", "gamma")(y[1], y[4]), y[9]), _zero,
                      text="f(psi[alpha,delta^gamma](y1,y4),y9) = 0"),
    EvaluatedIdentity(16, 6, (3, 5, 13),
                      lambda y, m, one: _p(m, "alpha", "delta", "gamma")(m.f(y[3], y[5]), y[13]), _zero,
                      text="psi[alpha,delta^gamma](f(y3,y5),y13) = 0"),
    EvaluatedIdentity(17, 7, (1, 4, 12),
                      lambda y, m, one: _p(m, "alpha", "delta", "gamma")(
                          _p(m, "alpha", "delta", "gamma")(y[1], y[4]), y[12]), _zero,
                      text="psi[alpha,delta^gamma](psi[alpha,delta^gamma](y1,y4),y12) = 0"),
    EvaluatedIdentity(18, 8, (4, 6, 15), lambda y, m, one: m.f(y[6], m.h2(y[15], y[4])),
                      lambda y, m, one: y[4] * _p(m, "beta", "epsilon", "delta")(y[6], y[15]),
                      text="f(y6,h2(y15,y4)) = y4 psi[beta,eps^delta](y6,y15)"),
    EvaluatedIdentity(19, 6, (7, 10, 14),
                      lambda y, m, one: m.f(_p(m, "beta", "epsilon", "delta")(y[10], y[14]), y[7]), _zero,
                      text="f(psi[beta,eps^delta](y10,y14),y7) = 0"),
    EvaluatedIdentity(20, 9, (2, 5), lambda y, m, one: _p(m, "beta", "epsilon", "delta")(y[5], y[2]),
                      lambda y, m, one: -_p(m, "epsilon", "beta", "gamma")(y[5], -y[2]), ones=(14,),
                      text="psi[beta,eps^delta](y5,y2) = -psi[eps,beta^gamma](y5,-y2)"),
    EvaluatedIdentity(21, 3, (1, 14), lambda y, m, one: _p(m, "epsilon", "alpha", "beta")(y[1], y[14]),
                      lambda y, m, one: _p(m, "alpha", "epsilon", "delta")(y[1], -y[14]),
                      text="psi[eps,alpha^beta](y1,y14) = psi[alpha,eps^delta](y1,-y14)"),
    EvaluatedIdentity(22, 3, (4, 15), lambda y, m, one: m.h1(-y[15], y[4]),
                      lambda y, m, one: m.h1(y[15], y[4].star()), text="h1(-y15,y4) = h1(y15,y4*)"),
    EvaluatedIdentity(23, 12, (1, 5), lambda y, m, one: m.h1(-y[5], y[1]),
                      lambda y, m, one: m.h1(y[5], y[1]).star(), text="h1(-y5,y1) = h1(y5,y1)*"),
    EvaluatedIdentity(24, 11, (1, 5, 8), lambda y, m, one: m.f(m.h1(y[1], y[5]), y[8]),
                      lambda y, m, one: m.f(y[5], y[8]) * y[1], text="f(h1(y1,y5),y8) = f(y5,y8) y1"),
    EvaluatedIdentity(25, 4, (4, 10, 15), lambda y, m, one: m.f(y[4], y[10]) * y[15],
                      lambda y, m, one: -m.g(y[15], y[4] * y[10]), text="f(y4,y10) y15 = -g(y15, y4 y10)"),
    EvaluatedIdentity(26, 5, (1, 4, 15), lambda y, m, one: m.g(y[1], m.h1(y[15], y[4])),
                      lambda y, m, one: m.g(y[1], y[4]) * y[15], text="g(y1,h1(y15,y4)) = g(y1,y4) y15"),
    EvaluatedIdentity(27, 3, (5, 10, 15), lambda y, m, one: m.g(y[5] * y[15], y[10]),
                      lambda y, m, one: m.g(y[15], y[10]) * y[5], text="g(y5 y15, y10) = g(y15,y10) y5"),
    EvaluatedIdentity(28, 13, (1, 5), lambda y, m, one: m.h2(y[1], y[5]), lambda y, m, one: m.h2(y[5], y[1]),
                      text="h2(y1,y5) = h2(y5,y1)"),
    EvaluatedIdentity(29, 7, (1, 5, 12), lambda y, m, one: y[1] * (y[5] * y[12]),
                      lambda y, m, one: -m.h1(-m.f(y[1], y[12]), y[5]) + m.g(y[12], m.h2(y[1], y[5])),
                      text="y1 (y5 y12) = -h1(-f(y1,y12),y5) + g(y12,h2(y1,y5))"),
    EvaluatedIdentity(30, 3, (3, 5, 15), lambda y, m, one: m.f(m.h1(y[15], y[3]), y[15] * y[5]),
                      lambda y, m, one: m.h1(y[15], m.f(y[3], y[5])),
                      text="f(h1(y15,y3), y15 y5) = h1(y15, f(y3,y5))"),
    EvaluatedIdentity(31, 3, (1, 5, 15), lambda y, m, one: m.h1(y[15], m.h1(y[5], y[1])),
                      lambda y, m, one: m.h1(y[15] * y[5], y[1]), text="h1(y15,h1(y5,y1)) = h1(y15 y5, y1)"),
    EvaluatedIdentity(32, 4, (1, 7, 15), lambda y, m, one: m.g(m.g(y[15], y[7]), y[1]),
                      lambda y, m, one: -m.g(y[15], y[1] * y[7]), text="g(g(y15,y7),y1) = -g(y15, y1 y7)"),
    EvaluatedIdentity(33, 6, (5, 10, 15), lambda y, m, one: m.g(m.h1(y[5], y[10]), y[15]), _zero,
                      in_s2=(5,), text="g(h1(y5,y10),y15) = 0 for y5 in S2"),
    EvaluatedIdentity(34, 11, (1, 5), lambda y, m, one: m.g(m.h2(y[1], y[5]), one),
                      lambda y, m, one: m.g((m.f(y[1], y[5]) * y[5]) * y[1], one), ones=(12,),
                      text="g(h2(y1,y5),1) = g((f(y1,y5) y5) y1, 1)"),
    EvaluatedIdentity(35, 6, (1, 4, 14), lambda y, m, one: m.g(m.h1(y[14], y[1]), y[4]),
                      lambda y, m, one: m.h1(-y[14], m.g(y[1], y[4])),
                      text="g(h1(y14,y1),y4) = h1(-y14, g(y1,y4))"),
)


def get_identity(number: int) -> EvaluatedIdentity:
    for ident in EVALUATED_IDENTITIES:
        if ident.number == number:
            return ident
    raise ValueError(f"Unknown identity ({number}). Available: 1..{len(EVALUATED_IDENTITIES)}")


def identity_env(ident: EvaluatedIdentity, ring: PolynomialRing) -> Env:
    """y_k = (a_k, b_k) for the listed variables, (1, 1) for the ones, (0, b_k) inside S2, zero elsewhere."""
    env = {k: PairElem(ring.zero, ring.zero) for k in range(1, 16)}
    for k in ident.variables:
        a, b = ring.var(f"a{k}"), ring.var(f"b{k}")
        env[k] = PairElem(ring.zero, b) if k in ident.in_s2 else PairElem(a, b)
    for k in ident.ones:
        env[k] = PairElem(ring.one, ring.one)
    return env


def evaluate_identity(ident: EvaluatedIdentity, maps: Optional[CommutationMaps] = None,
                      ring: Optional[PolynomialRing] = None) -> IdentityRecord:
    ring = ring or blueprint_ring()
    maps = maps or StandardMaps(ring)
    env = identity_env(ident, ring)
    one = PairElem(ring.one, ring.one)
    left, right = ident.lhs(env, maps, one), ident.rhs(env, maps, one)
    if left == right:
        return IdentityRecord(ident.label, left, right)
    return IdentityRecord(ident.label, left, right, "failed", f"{left} != {right}")


def check_identities(maps: Optional[CommutationMaps] = None, ring: Optional[PolynomialRing] = None) -> List[IdentityRecord]:
    """All 35 evaluated identities, in order."""
    ring = ring or blueprint_ring()
    maps = maps or StandardMaps(ring)
    return [evaluate_identity(ident, maps, ring) for ident in EVALUATED_IDENTITIES]


def identity_checks(maps: Optional[CommutationMaps] = None) -> List[CheckResult]:
    results = []
    for ident, record in zip(EVALUATED_IDENTITIES, check_identities(maps)):
        anchor = f"evaluated identity {ident.label} from blueprint identity {ident.blueprint}: {ident.text}"
        results.append(check(f"identity-{ident.number:02d}", anchor, record.status == "verified", record.witness))
    return results


# --- ring structure ------------------------------------------------------
@dataclass
class RingStructure:
    """The maps derived from f, g, h1 on S = R x R."""

    maps: CommutationMaps
    one: PairElem

    def p1(self, x: PairElem) -> PairElem:
        return -self.maps.h1(-self.maps.f(x, self.one), self.one)

    def p2(self, x: PairElem) -> PairElem:
        return -self.maps.g(x, self.one)

    def phi(self, x: PairElem) -> PairElem:
        return self.maps.f(self.one, x)

    def phi_inv(self, x: PairElem) -> PairElem:
        return self.maps.h1(x, self.one)

    def coord(self, x1: PairElem, x2: PairElem) -> PairElem:
        """<x1, x2> = x1 + phi(x2) for x1, x2 in S1."""
        return x1 + self.phi(x2)

    def in_s1(self, x: PairElem) -> bool:
        return self.maps.g(x, self.one).is_zero()

    def in_s2(self, x: PairElem) -> bool:
        return self.maps.g(self.one, x).is_zero()


def _ring_check(check_id: str, anchor: str, left: PairElem, right: PairElem) -> CheckResult:
    return check(check_id, anchor, left == right, None if left == right else f"{left} != {right}")


def verify_ring_structure(maps: Optional[CommutationMaps] = None) -> List[CheckResult]:
    """
    Commutativity, associativity, S = S1 + S2, phi: S1 -> S2, the involution and
    the explicit formulas for f, g, h1, h2 in <.,.>-coordinates.
    """
    ring = PolynomialRing(["a", "b", "c", "d", "e", "k", "p", "q", "r", "s"])
    maps = maps or StandardMaps(ring)
    one = PairElem(ring.one, ring.one)
    zero = one - one
    a, b, c, d, e, k = ring.vars("a", "b", "c", "d", "e", "k")
    x, y, z = PairElem(a, b), PairElem(c, d), PairElem(e, k)
    rs = RingStructure(maps, one)
    results = [
        _ring_check("ring-commutative", "the multiplication on S is commutative", x * y, y * x),
        _ring_check("ring-associative", "the multiplication on S is associative", (x * y) * z, x * (y * z)),
        _ring_check("ring-unit", "1 = (1, 1) is the identity of S", one * x, x),
        _ring_check("ring-g1-additive", "g(1, x + y) = g(1, x) + g(1, y)",
                    maps.g(one, x + y), maps.g(one, x) + maps.g(one, y)),
        _ring_check("ring-g1-multiplicative", "g(1, xy) = -g(1, x) g(1, y)",
                    maps.g(one, x * y), -(maps.g(one, x) * maps.g(one, y))),
        _ring_check("ring-g2-multiplicative", "g(xy, 1) = -g(x, 1) g(y, 1)",
                    maps.g(x * y, one), -(maps.g(x, one) * maps.g(y, one))),
        _ring_check("ring-g11", "g(x, y) g(1, 1) = -g(x, y)", maps.g(x, y) * maps.g(one, one), -maps.g(x, y)),
        _ring_check("ring-f-is-g", "f(1, x) = -g(1, x)", maps.f(one, x), -maps.g(one, x)),
        _ring_check("ring-projections-sum", "x = p1(x) + p2(x)", rs.p1(x) + rs.p2(x), x),
        _ring_check("ring-p1", "p1(x) = -h1(-f(x,1), 1) = (a, 0)", rs.p1(x), PairElem(a, ring.zero)),
        _ring_check("ring-p2", "p2(x) = -g(x, 1) = (0, b)", rs.p2(x), PairElem(ring.zero, b)),
        check("ring-p1-in-s1", "p1(x) lies in S1 = ker g(., 1)", rs.in_s1(rs.p1(x)), str(rs.p1(x))),
        check("ring-p2-in-s2", "p2(x) lies in S2 = ker g(1, .)", rs.in_s2(rs.p2(x)), str(rs.p2(x))),
        _ring_check("ring-p2-kills-s1", "p2 vanishes on S1", rs.p2(rs.p1(x)), zero),
        _ring_check("ring-p1-kills-s2", "p1 vanishes on S2", rs.p1(rs.p2(x)), zero),
        _ring_check("ring-involution", "x* = -p1(x) + p2(x)", x.star(), -rs.p1(x) + rs.p2(x)),
    ]

    # phi on S1 and its inverse on S2
    u, v = rs.p1(x), rs.p1(y)
    w2 = rs.p2(y)
    results.extend([
        check("ring-phi-image", "phi(S1) lies in S2", rs.in_s2(rs.phi(u)), str(rs.phi(u))),
        _ring_check("ring-phi-additive", "phi(u + v) = phi(u) + phi(v)", rs.phi(u + v), rs.phi(u) + rs.phi(v)),
        _ring_check("ring-phi-multiplicative", "phi(uv) = phi(u) phi(v)", rs.phi(u * v), rs.phi(u) * rs.phi(v)),
        _ring_check("ring-phi-unit", "phi(p1(1)) = p2(1)", rs.phi(rs.p1(one)), rs.p2(one)),
        _ring_check("ring-phi-inverse-left", "h1(phi(u), 1) = u on S1", rs.phi_inv(rs.phi(u)), u),
        _ring_check("ring-phi-inverse-right", "phi(h1(w, 1)) = w on S2", rs.phi(rs.phi_inv(w2)), w2),
    ])

    # f, g, h1, h2 in coordinates
    p, q, r, s = ring.vars("p", "q", "r", "s")
    o = ring.zero
    x1, x2, y1, y2 = PairElem(p, o), PairElem(q, o), PairElem(r, o), PairElem(s, o)
    xc, yc = rs.coord(x1, x2), rs.coord(y1, y2)
    s1_zero = PairElem(o, o)
    results.extend([
        _ring_check("ring-formula-f", "f(<x1,x2>, <y1,y2>) = <0, x1 y1>",
                    maps.f(xc, yc), rs.coord(s1_zero, x1 * y1)),
        _ring_check("ring-formula-g", "g(<x1,x2>, <y1,y2>) = <0, -y1 x2>",
                    maps.g(xc, yc), rs.coord(s1_zero, -(y1 * x2))),
        _ring_check("ring-formula-h1", "h1(<x1,x2>, <y1,y2>) = <x2 y1, x1 x2 y2>",
                    maps.h1(xc, yc), rs.coord(x2 * y1, x1 * x2 * y2)),
        _ring_check("ring-formula-h2", "h2(<x1,x2>, <y1,y2>) = <-x2 y2, x1 x2 y1 y2>",
                    maps.h2(xc, yc), rs.coord(-(x2 * y2), x1 * x2 * y1 * y2)),
    ])

    # H4: psi[rho0, rho1](x, y) = (x1 y1, x2 y2)
    try:
        rho = maps.psi("rho0", "rho1")(x, y)
        results.append(_ring_check("ring-formula-h4", "psi[rho0,rho1](x, y) = (x1 y1, x2 y2)", rho, x * y))
    except ValueError as e:
        results.append(check("ring-formula-h4", "psi[rho0,rho1](x, y) = (x1 y1, x2 y2)", False, str(e)))

    results.extend(map_relations(maps, x, y))
    return results


def map_relations(maps: CommutationMaps, x: PairElem, y: PairElem) -> List[CheckResult]:
    """Every commutation map inside the quintuple expressed through f, g and h1."""
    p = maps.psi
    f, g, h1 = maps.f(x, y), maps.g(x, y), maps.h1(x, y)
    pairs = {
        "f-gamma-epsilon": (p("gamma", "epsilon")(x, y), f),
        "f-beta-delta": (-p("beta", "delta")(x, y), f),
        "f-gamma-alpha": (-p("gamma", "alpha")(x, y), f),
        "f-epsilon-gamma": (-p("epsilon", "gamma")(x, y), f),
        "f-delta-beta": (p("delta", "beta")(x, y), f),
        "g-epsilon-beta-delta": (-p("epsilon", "beta", "delta")(x, y), g),
        "g-beta-epsilon-gamma": (-p("beta", "epsilon", "gamma")(x, y), g),
        "g-delta-alpha-gamma": (p("delta", "alpha", "gamma")(x, y), g),
        "g-delta-alpha-beta-swapped": (-p("delta", "alpha", "beta")(y, x), g),
        "g-beta-epsilon-delta-swapped": (p("beta", "epsilon", "delta")(y, x), g),
        "g-epsilon-beta-gamma-swapped": (p("epsilon", "beta", "gamma")(y, x), g),
        "g-alpha-delta-gamma-swapped": (-p("alpha", "delta", "gamma")(y, x), g),
        "h1-alpha-epsilon-delta": (-p("alpha", "epsilon", "delta")(y, -x), h1),
        "h1-epsilon-alpha-beta": (-p("epsilon", "alpha", "beta")(y, x), h1),
        "h1-epsilon-alpha-delta": (p("epsilon", "alpha", "delta")(-x, y), h1),
    }
    return [_ring_check(f"ring-maps-{name}", f"{name.split('-')[0]} relation via psi[{','.join(name.split('-')[1:3])}]",
                        left, right)
            for name, (left, right) in pairs.items()]
