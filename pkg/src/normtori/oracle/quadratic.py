"""Solution sets of the three equation systems for triples (u, v, w).

u = u1 + u2 sqrt(a), v = v1 + v2 sqrt(b), w = w1 + w2 sqrt(ab) live in the
algebras F_q[t]/(t^2 - a), F_q[t]/(t^2 - b), F_q[t]/(t^2 - ab), all inside
the four-dimensional algebra A = F_q[sqrt a, sqrt b] with basis
{1, sqrt a, sqrt b, sqrt ab}.

    star   u v w = 1 in A  and  N(u) N(v) N(w) = 1
    star2  1 = u1 v1 w1,  0 = u2 v2 w2,  0 = b u1 v2 w2 + u2 v1 w1,
           0 = u1 v2 w1 + a u2 v1 w2,  0 = u1 v1 w2 + u2 v2 w1
    star3  1 = u1 v1 w1,  u2 = v2 = w2 = 0

Each solver enumerates the free coordinates and solves for the rest; the
result is the full solution set, not a count.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import NamedTuple

from .fields import FqField, make_field

__all__ = ["QuadTriple", "solutions_quad", "equivalence_report", "EquivalenceReport", "SYSTEMS"]

SYSTEMS = ("star", "star2", "star3")


class QuadTriple(NamedTuple):
    u1: int
    u2: int
    v1: int
    v2: int
    w1: int
    w2: int


def _check(q: int, a: int, b: int) -> FqField:
    F = make_field(q)
    if q % 2 == 0:
        raise ValueError(f"q={q} is even: t^2 - a is inseparable")
    if not (0 < a < q and 0 < b < q):
        raise ValueError(f"a and b must be nonzero elements of F_{q}, got a={a}, b={b}")
    return F


def _star(F: FqField, a: int, b: int) -> set[QuadTriple]:
    add, mul, neg = F.add, F.mul, F.neg
    ab = mul(a, b)
    E = F.elements()
    out = set()
    for u1, u2, v1, v2 in product(E, repeat=4):
        # P = u v in A
        P1, Pa, Pb, Pab = mul(u1, v1), mul(u2, v1), mul(u1, v2), mul(u2, v2)
        # P w = (P1 w1 + ab Pab w2, Pa w1 + b Pb w2, Pb w1 + a Pa w2, Pab w1 + P1 w2)
        det = add(mul(P1, P1), neg(mul(ab, mul(Pab, Pab))))
        if det:
            di = F.inv(det)
            cands = [(mul(P1, di), mul(neg(Pab), di))]
        else:
            cands = product(E, repeat=2)
        for w1, w2 in cands:
            if add(mul(P1, w1), mul(ab, mul(Pab, w2))) != 1:
                continue
            if add(mul(Pa, w1), mul(b, mul(Pb, w2))) != 0:
                continue
            if add(mul(Pb, w1), mul(a, mul(Pa, w2))) != 0:
                continue
            if add(mul(Pab, w1), mul(P1, w2)) != 0:
                continue
            nu = add(mul(u1, u1), neg(mul(a, mul(u2, u2))))
            nv = add(mul(v1, v1), neg(mul(b, mul(v2, v2))))
            nw = add(mul(w1, w1), neg(mul(ab, mul(w2, w2))))
            if mul(nu, mul(nv, nw)) == 1:
                out.add(QuadTriple(u1, u2, v1, v2, w1, w2))
    return out


def _star2(F: FqField, a: int, b: int) -> set[QuadTriple]:
    add, mul, neg = F.add, F.mul, F.neg
    out = set()
    for u1, u2, v1, v2 in product(F.elements(), repeat=4):
        uv = mul(u1, v1)
        if uv == 0:
            continue  # first equation fails
        w1 = F.inv(uv)
        # last equation: u1 v1 w2 = -u2 v2 w1
        w2 = mul(neg(mul(mul(u2, v2), w1)), F.inv(uv))
        eqs = (
            mul(mul(u1, v1), w1) == 1,
            mul(mul(u2, v2), w2) == 0,
            add(mul(b, mul(mul(u1, v2), w2)), mul(mul(u2, v1), w1)) == 0,
            add(mul(mul(u1, v2), w1), mul(a, mul(mul(u2, v1), w2))) == 0,
            add(mul(mul(u1, v1), w2), mul(mul(u2, v2), w1)) == 0,
        )
        if all(eqs):
            out.add(QuadTriple(u1, u2, v1, v2, w1, w2))
    return out


def _star3(F: FqField) -> set[QuadTriple]:
    return {QuadTriple(u1, 0, v1, 0, F.inv(F.mul(u1, v1)), 0)
            for u1 in F.units() for v1 in F.units()}


def solutions_quad(q: int, a: int, b: int, system: str = "star") -> set[QuadTriple]:
    F = _check(q, a, b)
    if system == "star":
        return _star(F, a, b)
    if system == "star2":
        return _star2(F, a, b)
    if system == "star3":
        return _star3(F)
    raise ValueError(f"system must be one of {SYSTEMS}, got {system!r}")


@dataclass
class EquivalenceReport:
    q: int
    counts: dict[tuple[int, int], tuple[int, int, int]] = field(default_factory=dict)
    mismatches: list[tuple[int, int]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        expected = (self.q - 1) ** 2
        return not self.mismatches and all(c == (expected,) * 3 for c in self.counts.values())

    @property
    def pairs(self) -> int:
        return len(self.counts)

    @property
    def common_count(self) -> int | None:
        vals = {c for cs in self.counts.values() for c in cs}
        return vals.pop() if len(vals) == 1 else None


def equivalence_report(q: int) -> EquivalenceReport:
    """Compare the three solution sets for every (a, b) in (F_q^*)^2."""
    F = _check(q, 1, 1)
    rep = EquivalenceReport(q)
    for a in F.units():
        for b in F.units():
            s1, s2, s3 = (solutions_quad(q, a, b, s) for s in SYSTEMS)
            rep.counts[(a, b)] = (len(s1), len(s2), len(s3))
            if not (s1 == s2 == s3):
                rep.mismatches.append((a, b))
    return rep
