from itertools import product

import pytest

from normtori.gmod import ElemAbelianGroup
from normtori.oracle.counting import (
    BUDGET_ENV,
    BudgetExceeded,
    candidate_count,
    count_split,
)
from normtori.oracle.fields import SUPPORTED_Q, UnsupportedField, make_field
from normtori.oracle.quadratic import QuadTriple, equivalence_report, solutions_quad

# -- fields -----------------------------------------------------------------------


def test_prime_field():
    F = make_field(5)
    assert F.q == 5 and F.degree == 1
    assert len(F.units()) == 4


def test_f4():
    F = make_field(4)
    assert F.modulus == (1, 1, 1)
    # the unit group is cyclic of order 3
    t = 2
    assert F.pow(t, 3) == 1 and F.mul(t, t) != 1


def test_unsupported():
    with pytest.raises(UnsupportedField):
        make_field(6)
    with pytest.raises(UnsupportedField):
        make_field(49)


@pytest.mark.parametrize("q", sorted(q for q in SUPPORTED_Q if q <= 9))
def test_axioms_small(q):
    assert make_field(q).check_axioms()


@pytest.mark.parametrize("q", sorted(SUPPORTED_Q))
def test_cyclic_unit_group(q):
    F = make_field(q)
    assert len(F.log) == q - 1
    assert F.pow(F.generator, q - 1) == 1
    for a in F.units():
        assert F.mul(a, F.inv(a)) == 1
    # Frobenius is additive
    l = F.char
    for a in range(q):
        for b in range(q):
            assert F.pow(F.add(a, b), l) == F.add(F.pow(a, l), F.pow(b, l))


# -- split counts -----------------------------------------------------------------


def naive_count(p, q, which):
    """Enumerate every tuple of units, no back-substitution."""
    F = make_field(q)
    G = ElemAbelianGroup(p)
    n = p * p
    proj = [[G.quotient(i, g) for g in range(n)] for i in range(p + 1)]
    units = F.units()
    count = 0
    if which == "T":
        return sum(1 for f in product(units, repeat=n) if F.prod(f) == 1)
    for vals in product(units, repeat=p * (p + 1)):
        if F.prod(vals) != 1:
            continue
        if which == "S0":
            u = [vals[i * p:(i + 1) * p] for i in range(p + 1)]
            if any(F.prod(u[i][proj[i][g]] for i in range(p + 1)) != 1 for g in range(n)):
                continue
        count += 1
    return count


@pytest.mark.parametrize("q", [3, 5, 7])
@pytest.mark.parametrize("which", ["T", "S", "S0"])
def test_back_substitution_matches_naive(q, which):
    assert count_split(2, q, which) == naive_count(2, q, which)


def test_torus_dimensions():
    assert count_split(2, 5, "T") == 64
    assert count_split(2, 5, "S") == 4 ** 5
    assert count_split(3, 4, "T") == 3 ** 8
    assert count_split(3, 4, "S") == 3 ** 11


def test_s0_p2():
    assert count_split(2, 5, "S0") == 16
    assert count_split(2, 7, "S0") == 36


@pytest.mark.parametrize("p,q", [(2, 3), (2, 5), (3, 4), (3, 5)])
def test_two_methods_agree(p, q):
    assert count_split(p, q, "S0", "two-factor") == count_split(p, q, "S0", "last-factor")


def test_s0_p3_q4():
    assert count_split(3, 4, "S0") == 243


def test_partitioned_count_is_deterministic():
    assert count_split(3, 4, "S0", jobs=2) == count_split(3, 4, "S0", jobs=1)


def test_budget(monkeypatch):
    assert candidate_count(3, 4, "S0") == 3 ** 7
    with pytest.raises(BudgetExceeded):
        count_split(3, 4, "S0", limit=100)
    monkeypatch.setenv(BUDGET_ENV, "10")
    with pytest.raises(BudgetExceeded):
        count_split(2, 5, "S0")
    monkeypatch.setenv(BUDGET_ENV, "many")
    with pytest.raises(ValueError):
        count_split(2, 5, "S0")


def test_count_errors():
    with pytest.raises(ValueError):
        count_split(4, 5, "S0")
    with pytest.raises(ValueError):
        count_split(3, 9, "S0")
    with pytest.raises(ValueError):
        count_split(2, 5, "X")


# -- the three systems ------------------------------------------------------------


def brute_star(q, a, b):
    F = make_field(q)
    m, ad, ng = F.mul, F.add, F.neg
    ab = m(a, b)
    out = set()
    for u1, u2, v1, v2, w1, w2 in product(range(q), repeat=6):
        P1, Pa, Pb, Pab = m(u1, v1), m(u2, v1), m(u1, v2), m(u2, v2)
        uvw = (ad(m(P1, w1), m(ab, m(Pab, w2))), ad(m(Pa, w1), m(b, m(Pb, w2))),
               ad(m(Pb, w1), m(a, m(Pa, w2))), ad(m(Pab, w1), m(P1, w2)))
        nu = ad(m(u1, u1), ng(m(a, m(u2, u2))))
        nv = ad(m(v1, v1), ng(m(b, m(v2, v2))))
        nw = ad(m(w1, w1), ng(m(ab, m(w2, w2))))
        if uvw == (1, 0, 0, 0) and m(nu, m(nv, nw)) == 1:
            out.add(QuadTriple(u1, u2, v1, v2, w1, w2))
    return out


@pytest.mark.parametrize("a,b", [(1, 1), (2, 3), (4, 2)])
def test_star_matches_brute_force(a, b):
    assert solutions_quad(5, a, b, "star") == brute_star(5, a, b)


def test_star3_q3():
    assert len(solutions_quad(3, 1, 1, "star3")) == 4


def test_systems_agree_q5():
    sets = [solutions_quad(5, 2, 3, s) for s in ("star", "star2", "star3")]
    assert sets[0] == sets[1] == sets[2]


def test_star_count_q7():
    assert len(solutions_quad(7, 3, 5, "star")) == 36


@pytest.mark.parametrize("q,count", [(3, 4), (5, 16)])
def test_equivalence_report(q, count):
    rep = equivalence_report(q)
    assert rep.passed
    assert rep.pairs == (q - 1) ** 2
    assert rep.common_count == count


def test_star_closed_under_scaling():
    # (u, v, w) -> (s u, t v, (s t)^-1 w) for units s, t of F_q preserves both constraints
    q, a, b = 5, 2, 3
    F = make_field(q)
    sols = solutions_quad(q, a, b, "star")
    for s in F.units():
        for t in F.units():
            r = F.inv(F.mul(s, t))
            for x in sols:
                y = QuadTriple(F.mul(s, x.u1), F.mul(s, x.u2), F.mul(t, x.v1), F.mul(t, x.v2),
                               F.mul(r, x.w1), F.mul(r, x.w2))
                assert y in sols


def test_quad_errors():
    with pytest.raises(ValueError):
        solutions_quad(4, 1, 1)
    with pytest.raises(ValueError):
        solutions_quad(5, 0, 1)
    with pytest.raises(ValueError):
        solutions_quad(5, 1, 1, "star4")
