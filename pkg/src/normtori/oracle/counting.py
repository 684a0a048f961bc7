"""Brute-force point counts on split models of T, S and S0.

In the split model E = F_q^G with pointwise multiplication, the subfield
attached to H_i is the algebra of functions on G that factor through the
i-th quotient G -> H_i, and every norm is a product over an index set. So

    T  = {f : G -> F_q^*,  prod_g f(g) = 1}
    S  = {(u_0, ..., u_p) : u_i : H_i -> F_q^*,  prod_i prod_s u_i(s) = 1}
    S0 = {u in S : prod_i u_i(pi_i(g)) = 1 for every g in G}

Counts are exact enumerations; the number of candidate tuples is checked
against a budget before any loop starts.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from itertools import product

from ..gmod import ElemAbelianGroup, _check_prime
from .fields import FqField, make_field

__all__ = [
    "BudgetExceeded",
    "DEFAULT_BUDGET",
    "BUDGET_ENV",
    "budget",
    "candidate_count",
    "count_split",
]

DEFAULT_BUDGET = 10 ** 7
BUDGET_ENV = "NORMTORI_BUDGET"
WHICH = ("T", "S", "S0")
METHODS = ("two-factor", "last-factor")


class BudgetExceeded(RuntimeError):
    pass


def budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return DEFAULT_BUDGET
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{BUDGET_ENV} must be an integer, got {raw!r}") from None


def _free_vars(p: int, which: str, method: str) -> int:
    n = p * p
    if which == "T":
        return n - 1
    if which == "S":
        return p * (p + 1) - 1
    if method == "two-factor":
        # p - 1 factors free, plus one scalar for the rank-one split
        return p * (p - 1) + 1
    return p * p


def candidate_count(p: int, q: int, which: str, method: str = "two-factor") -> int:
    return (q - 1) ** _free_vars(p, which, method)


def _validate(p: int, q: int, which: str, method: str) -> FqField:
    _check_prime(p)
    if which not in WHICH:
        raise ValueError(f"which must be one of {WHICH}, got {which!r}")
    if method not in METHODS:
        raise ValueError(f"method must be one of {METHODS}, got {method!r}")
    F = make_field(q)
    if q % p == 0:
        raise ValueError(f"q={q} must be prime to p={p}")
    return F


def count_split(p: int, q: int, which: str = "S0", method: str = "two-factor",
                limit: int | None = None, jobs: int = 1) -> int:
    """Number of F_q-points of the split model of T, S or S0.

    ``method`` only matters for S0: "two-factor" enumerates p - 1 factors and
    solves the last two from the rank-one pullback condition; "last-factor"
    enumerates p factors and reads off the last one (slower, used as a
    cross-check on small cases).
    """
    F = _validate(p, q, which, method)
    cap = budget() if limit is None else limit
    need = candidate_count(p, q, which, method)
    if need > cap:
        raise BudgetExceeded(
            f"{which} over F_{q} with p={p} needs {need} candidates, budget is {cap}")
    firsts = F.units()
    if jobs <= 1:
        return sum(_count_part(p, q, which, method, u) for u in firsts)
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        parts = ex.map(_count_part, *zip(*[(p, q, which, method, u) for u in firsts]))
        return sum(parts)


def _count_part(p: int, q: int, which: str, method: str, first: int) -> int:
    """Count with the first enumerated coordinate fixed to ``first``."""
    F = make_field(q)
    if which == "T":
        return _count_T(p, F, first)
    if which == "S":
        return _count_S(p, F, first)
    if method == "two-factor":
        return _count_S0_two(p, F, first)
    return _count_S0_last(p, F, first)


def _tuples(F: FqField, first: int, length: int):
    """All unit tuples of the given length whose first entry is ``first``."""
    if length == 0:
        yield ()
        return
    for rest in product(F.units(), repeat=length - 1):
        yield (first,) + rest


def _count_T(p: int, F: FqField, first: int) -> int:
    n = p * p
    count = 0
    for vals in _tuples(F, first, n - 1):
        last = F.inv(F.prod(vals))
        if F.mul(F.prod(vals), last) == 1:
            count += 1
    return count


def _count_S(p: int, F: FqField, first: int) -> int:
    m = p * (p + 1)
    count = 0
    for vals in _tuples(F, first, m - 1):
        last = F.inv(F.prod(vals))
        if F.mul(F.prod(vals), last) == 1:
            count += 1
    return count


def _projections(p: int) -> list[list[int]]:
    G = ElemAbelianGroup(p)
    return [[G.quotient(i, g) for g in range(G.order)] for i in range(p + 1)]


def _pullback_product(F: FqField, proj: list[list[int]], factors) -> list[int]:
    M = F.mul_table
    n = len(proj[0])
    c = [1] * n
    for u, pr in zip(factors, proj):
        for g in range(n):
            c[g] = M[c[g]][u[pr[g]]]
    return c


def _count_S0_two(p: int, F: FqField, first: int) -> int:
    proj = _projections(p)
    n = p * p
    M = F.mul_table
    inv = F.inv
    # g <-> (image in H_{p-1}, image in H_p) is a bijection
    pos = {(proj[p - 1][g], proj[p][g]): g for g in range(n)}
    count = 0
    for vals in _tuples(F, first, p * (p - 1)):
        factors = [vals[i * p:(i + 1) * p] for i in range(p - 1)]
        c = _pullback_product(F, proj[:p - 1], factors)
        # need u_{p-1}(s) u_p(t) = d[s][t]
        d = [[inv(c[pos[s, t]]) for t in range(p)] for s in range(p)]
        norm = F.prod(vals)
        for lam in F.units():
            ulast = [M[d[0][t]][inv(lam)] for t in range(p)]
            unext = [M[d[s][0]][inv(ulast[0])] for s in range(p)]
            if any(M[unext[s]][ulast[t]] != d[s][t] for s in range(p) for t in range(p)):
                continue
            if M[M[norm][F.prod(unext)]][F.prod(ulast)] == 1:
                count += 1
    return count


def _count_S0_last(p: int, F: FqField, first: int) -> int:
    proj = _projections(p)
    n = p * p
    M = F.mul_table
    pr = proj[p]
    count = 0
    for vals in _tuples(F, first, p * p):
        factors = [vals[i * p:(i + 1) * p] for i in range(p)]
        c = _pullback_product(F, proj[:p], factors)
        ulast = [0] * p
        ok = True
        for g in range(n):
            want = F.inv(c[g])
            t = pr[g]
            if ulast[t] == 0:
                ulast[t] = want
            elif ulast[t] != want:
                ok = False
                break
        if ok and M[F.prod(vals)][F.prod(ulast)] == 1:
            count += 1
    return count
