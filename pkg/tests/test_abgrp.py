import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from normtori.abgrp import (
    AbGroup,
    CompositionError,
    GroupInvariants,
    IllDefinedMap,
    cokernel,
    compose,
    connecting_hom,
    cyclic_group,
    direct_sum,
    free_group,
    identity_hom,
    image,
    is_exact_at,
    is_injective,
    is_isomorphic,
    is_surjective,
    kernel,
    lift,
    make_hom,
    square_commutes,
    trivial_group,
    zero_hom,
)
from normtori.gmod import alpha_hat, coset_module, rho_hat
from normtori.intlin import IntMatrix, snf


def M(rows):
    return IntMatrix.from_rows(rows)


def scalar(m):
    return IntMatrix(1, 1, [m])


# -- invariants -------------------------------------------------------------------


def test_invariants_z6():
    G = AbGroup(2, M([[2, 0], [0, 3]]))
    assert G.invariants == GroupInvariants(0, (6,))
    assert G.invariants.order == 6


def test_invariants_free():
    assert free_group(3).invariants == GroupInvariants(3, ())
    assert AbGroup(1, M([[0]])).invariants == GroupInvariants(1, ())


def test_invariants_str_and_dict():
    G = AbGroup(3, M([[2, 0], [0, 4], [0, 0]]))
    assert G.invariants.to_dict() == {"free_rank": 1, "torsion": [2, 4]}
    assert str(G.invariants)


def test_ambient_mismatch():
    with pytest.raises(ValueError):
        AbGroup(2, M([[1]]))


# -- make_hom ---------------------------------------------------------------------


def test_times_p_valid():
    make_hom(free_group(1), free_group(1), scalar(5))


def test_ill_defined_reports_column():
    with pytest.raises(IllDefinedMap) as err:
        make_hom(cyclic_group(2), cyclic_group(4), scalar(1))
    assert err.value.column == 0


def test_zero_matrix_always_valid():
    G = AbGroup(2, M([[3, 0], [0, 0]]))
    make_hom(G, cyclic_group(7), IntMatrix.zeros(1, 2))


def test_shape_mismatch():
    with pytest.raises(ValueError):
        make_hom(free_group(2), free_group(1), IntMatrix.identity(2))


def test_z2_to_z4_by_two_is_fine():
    h = make_hom(cyclic_group(2), cyclic_group(4), scalar(2))
    assert is_injective(h)
    assert not is_surjective(h)


# -- kernel, cokernel, image ------------------------------------------------------


def test_kernel_times_p_on_z():
    K, _ = kernel(make_hom(free_group(1), free_group(1), scalar(3)))
    assert K.invariants.is_trivial()


def test_kernel_times_p_on_zp2():
    p = 3
    G = cyclic_group(p * p)
    K, incl = kernel(make_hom(G, G, scalar(p)))
    assert K.invariants == GroupInvariants(0, (p,))
    assert incl.matrix.column(0)[0] % p == 0


def test_kernel_zero_map():
    K, _ = kernel(zero_hom(free_group(1), free_group(1)))
    assert K.invariants == GroupInvariants(1, ())


def test_cokernel_examples():
    C, _ = cokernel(make_hom(free_group(1), free_group(1), scalar(5)))
    assert C.invariants == GroupInvariants(0, (5,))
    C, _ = cokernel(identity_hom(free_group(2)))
    assert C.invariants.is_trivial()
    C, _ = cokernel(make_hom(free_group(2), free_group(2), M([[2, 0], [0, 3]])))
    assert is_isomorphic(C, cyclic_group(6))


def test_image_examples():
    assert image(make_hom(free_group(1), free_group(1), scalar(2))).invariants == GroupInvariants(1, ())
    assert image(zero_hom(free_group(3), cyclic_group(5))).invariants.is_trivial()
    assert image(rho_hat(2).hom).invariants == GroupInvariants(4, ())


def test_image_with_torsion():
    # Z -> Z/6, 1 -> 2 has image Z/3
    h = make_hom(free_group(1), cyclic_group(6), scalar(2))
    assert image(h).invariants == GroupInvariants(0, (3,))


# -- exactness --------------------------------------------------------------------


def test_exact_examples():
    Z = free_group(1)
    assert is_exact_at(zero_hom(trivial_group(), Z), identity_hom(Z))
    p = 5
    proj = make_hom(Z, cyclic_group(p), scalar(1))
    assert is_exact_at(make_hom(Z, Z, scalar(p)), proj)
    assert not is_exact_at(make_hom(Z, Z, scalar(p * p)), proj)


def test_exact_requires_zero_composite():
    Z = free_group(1)
    assert not is_exact_at(identity_hom(Z), identity_hom(Z))


def test_exact_composition_mismatch():
    with pytest.raises(CompositionError):
        is_exact_at(identity_hom(free_group(1)), identity_hom(free_group(2)))


def test_exact_invariant_under_presentation_change():
    rng = random.Random(3)
    p = 3
    # Z --p--> Z^1 -> Z/p, then re-present the middle through a unimodular change
    for _ in range(10):
        a, b = rng.randint(-4, 4), rng.randint(-4, 4)
        U = M([[1, a], [0, 1]]) @ M([[1, 0], [b, 1]])
        Uinv = M([[1, 0], [-b, 1]]) @ M([[1, -a], [0, 1]])
        mid = AbGroup(2, U @ M([[0], [1]]))  # Z^2 / <U e2> is Z
        h1 = make_hom(free_group(1), mid, U @ M([[p], [0]]))
        h2 = make_hom(mid, cyclic_group(p), M([[1, 0]]) @ Uinv)
        assert is_exact_at(h1, h2)


# -- isomorphism and sums ---------------------------------------------------------


def test_isomorphic_examples():
    Z2, Z3 = cyclic_group(2), cyclic_group(3)
    assert is_isomorphic(direct_sum([Z2, Z3]).group, cyclic_group(6))
    assert not is_isomorphic(cyclic_group(4), direct_sum([Z2, Z2]).group)
    C, _ = cokernel(alpha_hat(2).hom)
    assert is_isomorphic(C, free_group(2))


def test_direct_sum_examples():
    S = direct_sum([free_group(1), cyclic_group(2)])
    assert S.group.invariants == GroupInvariants(1, (2,))
    assert direct_sum([]).group.invariants.is_trivial()
    three = direct_sum([coset_module(2, i).underlying for i in range(3)])
    assert three.group.invariants == GroupInvariants(6, ())
    for inj, proj in zip(three.injections, three.projections):
        assert compose(proj, inj).matrix == IntMatrix.identity(2)


# -- squares and snakes -----------------------------------------------------------


def test_square_identity():
    I = identity_hom(free_group(2))
    assert square_commutes(I, I, I, I)


def test_square_sign_flip():
    Z = free_group(1)
    two = make_hom(Z, Z, scalar(2))
    neg = make_hom(Z, Z, scalar(-2))
    I = identity_hom(Z)
    assert square_commutes(two, two, I, I)
    assert not square_commutes(two, neg, I, I)


def test_connecting_map_multiplication():
    # 0 -> Z -p-> Z -> Z/p -> 0 mapped to itself by multiplication by p:
    # the connecting map ker(p on Z/p) = Z/p -> coker(p on Z) = Z/p is an isomorphism
    p = 3
    Z, Zp = free_group(1), cyclic_group(p)
    mp = make_hom(Z, Z, scalar(p))
    top_right = make_hom(Z, Zp, scalar(1))
    K, incl, delta = connecting_hom(top_right, mp, mp, make_hom(Zp, Zp, scalar(p)), mp)
    assert K.invariants == GroupInvariants(0, (p,))
    assert is_injective(delta) and is_surjective(delta)


def test_lift():
    h = make_hom(free_group(1), cyclic_group(6), scalar(2))
    x = lift(h, (4,))
    assert x is not None and (2 * x[0] - 4) % 6 == 0
    assert lift(h, (1,)) is None


# -- fuzz -------------------------------------------------------------------------


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_first_isomorphism_fuzz(n, m, data):
    entries = data.draw(st.lists(st.integers(-4, 4), min_size=m * n, max_size=m * n))
    A = IntMatrix(m, n, entries)
    h = make_hom(free_group(n), free_group(m), A)
    K, incl = kernel(h)
    Q, _ = cokernel(incl)
    assert Q.invariants == image(h).invariants
    # the image is a subgroup of a free group, so free of rank rank(A)
    assert image(h).invariants == GroupInvariants(snf(A).rank, ())


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3), st.data())
def test_kernel_cokernel_fuzz_with_torsion(n, data):
    rel = IntMatrix.diag(data.draw(st.lists(st.integers(0, 6), min_size=n, max_size=n)))
    G = AbGroup(n, rel)
    entries = data.draw(st.lists(st.integers(-3, 3), min_size=n * n, max_size=n * n))
    try:
        h = make_hom(G, G, IntMatrix(n, n, entries))
    except IllDefinedMap:
        return
    K, incl = kernel(h)
    C, proj = cokernel(h)
    assert is_injective(incl)
    assert is_exact_at(incl, h)
    assert is_exact_at(h, proj)
    assert is_surjective(proj)
