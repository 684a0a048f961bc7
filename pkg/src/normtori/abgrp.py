"""Finitely generated abelian groups given by relation matrices.

A group is ``Z^n / colspan(R)``; a homomorphism is an integer matrix on the
ambient lattices that sends relations into relations. Subgroups are carried
as generator matrices in the ambient coordinates of their parent.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .intlin import (
    HermiteForm,
    IntMatrix,
    hnf,
    kernel_basis,
    lattice_contains,
    lattice_solve,
    smith_diagonal,
)

__all__ = [
    "AbGroup",
    "AbHom",
    "GroupInvariants",
    "DirectSum",
    "IllDefinedMap",
    "CompositionError",
    "trivial_group",
    "free_group",
    "cyclic_group",
    "invariants",
    "make_hom",
    "identity_hom",
    "zero_hom",
    "compose",
    "kernel",
    "cokernel",
    "image",
    "is_exact_at",
    "is_injective",
    "is_surjective",
    "is_isomorphic",
    "direct_sum",
    "square_commutes",
    "homs_equal",
    "induced_on_quotient",
    "lift",
    "lift_all",
    "connecting_hom",
]


class IllDefinedMap(ValueError):
    """A matrix does not descend to the quotient groups."""

    def __init__(self, column: int, message: str | None = None):
        self.column = column
        super().__init__(message or f"relation column {column} does not map into the codomain relations")


class CompositionError(ValueError):
    """Maps whose domains and codomains do not line up."""


@dataclass(frozen=True, order=True)
class GroupInvariants:
    free_rank: int
    torsion: tuple[int, ...] = ()

    def __str__(self) -> str:
        parts = [f"Z/{d}" for d in self.torsion]
        if self.free_rank:
            parts.insert(0, "Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "0"

    @property
    def order(self) -> int | None:
        """Group order, or None for infinite groups."""
        if self.free_rank:
            return None
        n = 1
        for d in self.torsion:
            n *= d
        return n

    @property
    def torsion_order(self) -> int:
        n = 1
        for d in self.torsion:
            n *= d
        return n

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def to_dict(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}


@dataclass(frozen=True, eq=False)
class AbGroup:
    ambient_rank: int
    relations: IntMatrix

    def __post_init__(self):
        if self.relations.rows != self.ambient_rank:
            raise ValueError(
                f"relation matrix has {self.relations.rows} rows, ambient rank is {self.ambient_rank}"
            )

    @cached_property
    def relation_form(self) -> HermiteForm:
        return hnf(self.relations)

    @cached_property
    def invariants(self) -> GroupInvariants:
        diag = smith_diagonal(self.relations)
        r = sum(1 for d in diag if d)
        return GroupInvariants(self.ambient_rank - r, tuple(d for d in diag if d > 1))

    def contains_relation(self, v: Sequence[int]) -> bool:
        """True iff v is zero in the group."""
        return lattice_contains(self.relations, v, self.relation_form)

    def same_as(self, other: "AbGroup") -> bool:
        """Same ambient lattice and same relation lattice."""
        if self is other:
            return True
        return (
            self.ambient_rank == other.ambient_rank
            and self.relation_form.basis == other.relation_form.basis
        )

    def basis_vector(self, k: int) -> tuple[int, ...]:
        return tuple(int(i == k) for i in range(self.ambient_rank))

    def to_text(self) -> str:
        return f"{self.ambient_rank}\n" + self.relations.to_text()

    def __repr__(self) -> str:
        return f"AbGroup(ambient_rank={self.ambient_rank}, invariants={self.invariants})"


def trivial_group() -> AbGroup:
    return AbGroup(0, IntMatrix.zeros(0, 0))


def free_group(n: int) -> AbGroup:
    return AbGroup(n, IntMatrix.zeros(n, 0))


def cyclic_group(m: int) -> AbGroup:
    """Z/m (Z when m == 0)."""
    return AbGroup(1, IntMatrix(1, 1, [m]))


def invariants(G: AbGroup) -> GroupInvariants:
    return G.invariants


@dataclass(frozen=True, eq=False)
class AbHom:
    domain: AbGroup
    codomain: AbGroup
    matrix: IntMatrix

    def __call__(self, v: Sequence[int]) -> tuple[int, ...]:
        return self.matrix.apply(v)

    def __repr__(self) -> str:
        return f"AbHom({self.domain!r} -> {self.codomain!r})"


def make_hom(dom: AbGroup, cod: AbGroup, M: IntMatrix) -> AbHom:
    """Certified homomorphism ``dom -> cod`` given on ambient lattices by M."""
    if M.shape != (cod.ambient_rank, dom.ambient_rank):
        raise ValueError(
            f"matrix shape {M.shape} does not match {cod.ambient_rank}x{dom.ambient_rank}"
        )
    images = M @ dom.relations
    for k in range(images.cols):
        if not cod.contains_relation(images.column(k)):
            raise IllDefinedMap(k)
    return AbHom(dom, cod, M)


def identity_hom(G: AbGroup) -> AbHom:
    return AbHom(G, G, IntMatrix.identity(G.ambient_rank))


def zero_hom(dom: AbGroup, cod: AbGroup) -> AbHom:
    return AbHom(dom, cod, IntMatrix.zeros(cod.ambient_rank, dom.ambient_rank))


def compose(g: AbHom, f: AbHom) -> AbHom:
    """``g o f``."""
    if not f.codomain.same_as(g.domain):
        raise CompositionError("codomain of the first map is not the domain of the second")
    return AbHom(f.domain, g.codomain, g.matrix @ f.matrix)


def homs_equal(f: AbHom, g: AbHom) -> bool:
    """Equal as maps between the quotient groups."""
    if not (f.domain.same_as(g.domain) and f.codomain.same_as(g.codomain)):
        raise CompositionError("maps have different domains or codomains")
    diff = f.matrix - g.matrix
    return all(f.codomain.contains_relation(diff.column(k)) for k in range(diff.cols))


def is_zero_hom(h: AbHom) -> bool:
    return all(h.codomain.contains_relation(h.matrix.column(k)) for k in range(h.matrix.cols))


def _preimage_lattice(h: AbHom) -> IntMatrix:
    """Generators of ``{x in Z^n : M x in rel(cod)}`` (contains rel(dom))."""
    n = h.domain.ambient_rank
    joint = IntMatrix.hstack([h.matrix, h.codomain.relations])
    K = kernel_basis(joint)
    top = K.submatrix(slice(0, n), slice(None))
    # the projection can be rank-deficient, so rebase through Hermite form
    return hnf(top).basis


def kernel(h: AbHom) -> tuple[AbGroup, AbHom]:
    """Kernel group and its inclusion into the domain."""
    B = _preimage_lattice(h)
    form = hnf(B)
    coords = [lattice_solve(B, h.domain.relations.column(k), form)
              for k in range(h.domain.relations.cols)]
    if any(c is None for c in coords):
        raise AssertionError("domain relations escape the preimage lattice")
    rel = IntMatrix.from_columns(coords, rows=B.cols) if coords else IntMatrix.zeros(B.cols, 0)
    K = AbGroup(B.cols, rel)
    return K, AbHom(K, h.domain, B)


def cokernel(h: AbHom) -> tuple[AbGroup, AbHom]:
    """Cokernel on the codomain's ambient lattice and the projection onto it."""
    rel = IntMatrix.hstack([h.codomain.relations, h.matrix])
    C = AbGroup(h.codomain.ambient_rank, rel)
    return C, AbHom(h.codomain, C, IntMatrix.identity(C.ambient_rank))


def image(h: AbHom) -> AbGroup:
    """The image, presented as ``domain ambient / preimage of codomain relations``."""
    B = _preimage_lattice(h)
    return AbGroup(h.domain.ambient_rank, B)


def image_generators(h: AbHom) -> IntMatrix:
    """Generators of the image in codomain ambient coordinates."""
    return h.matrix


def is_injective(h: AbHom) -> bool:
    return kernel(h)[0].invariants.is_trivial()


def is_surjective(h: AbHom) -> bool:
    return cokernel(h)[0].invariants.is_trivial()


def _subgroup_contains(parent: AbGroup, gens: IntMatrix, vectors: IntMatrix) -> bool:
    lattice = IntMatrix.hstack([gens, parent.relations])
    form = hnf(lattice)
    return all(lattice_contains(lattice, vectors.column(k), form) for k in range(vectors.cols))


def is_exact_at(h1: AbHom, h2: AbHom) -> bool:
    """``im(h1) == ker(h2)`` inside the middle group."""
    if not h1.codomain.same_as(h2.domain):
        raise CompositionError("codomain of h1 is not the domain of h2")
    middle = h1.codomain
    if not is_zero_hom(AbHom(h1.domain, h2.codomain, h2.matrix @ h1.matrix)):
        return False
    ker_gens = _preimage_lattice(h2)
    return _subgroup_contains(middle, h1.matrix, ker_gens)


def is_isomorphic(G1: AbGroup, G2: AbGroup) -> bool:
    return G1.invariants == G2.invariants


def is_isomorphism(h: AbHom) -> bool:
    return is_injective(h) and is_surjective(h)


@dataclass(frozen=True, eq=False)
class DirectSum:
    group: AbGroup
    summands: tuple[AbGroup, ...]
    injections: tuple[AbHom, ...] = field(repr=False)
    projections: tuple[AbHom, ...] = field(repr=False)

    @property
    def offsets(self) -> list[int]:
        out, k = [], 0
        for g in self.summands:
            out.append(k)
            k += g.ambient_rank
        return out


def direct_sum(Gs: Sequence[AbGroup]) -> DirectSum:
    Gs = tuple(Gs)
    total = sum(g.ambient_rank for g in Gs)
    rel = IntMatrix.block_diag([g.relations for g in Gs]) if Gs else IntMatrix.zeros(0, 0)
    S = AbGroup(total, rel)
    inj, proj = [], []
    off = 0
    for g in Gs:
        n = g.ambient_rank
        incl = IntMatrix.vstack([
            IntMatrix.zeros(off, n), IntMatrix.identity(n), IntMatrix.zeros(total - off - n, n)
        ])
        inj.append(make_hom(g, S, incl))
        proj.append(make_hom(S, g, incl.T))
        off += n
    return DirectSum(S, Gs, tuple(inj), tuple(proj))


def hom_sum(dom: AbGroup, cod: AbGroup, parts: Sequence[AbHom]) -> AbHom:
    total = parts[0].matrix
    for h in parts[1:]:
        total = total + h.matrix
    return make_hom(dom, cod, total)


def square_commutes(top: AbHom, bottom: AbHom, left: AbHom, right: AbHom) -> bool:
    """``right o top == bottom o left`` for the square

    ::

        A --top--> B
        |left      |right
        C --bottom-> D
    """
    if not (top.domain.same_as(left.domain) and top.codomain.same_as(right.domain)
            and left.codomain.same_as(bottom.domain) and right.codomain.same_as(bottom.codomain)):
        raise CompositionError("square edges do not compose")
    return homs_equal(compose(right, top), compose(bottom, left))


def induced_on_quotient(h: AbHom, dom_quotient: AbGroup, cod_quotient: AbGroup) -> AbHom:
    """The map between quotients (same ambient lattices) induced by h."""
    return make_hom(dom_quotient, cod_quotient, h.matrix)


def lift(h: AbHom, v: Sequence[int]) -> tuple[int, ...] | None:
    """Some x with ``h(x) == v`` in the codomain, or None if v is not in the image."""
    return lift_all(h, [v])[0]


def lift_all(h: AbHom, vs: Sequence[Sequence[int]]) -> list[tuple[int, ...] | None]:
    """:func:`lift` for several vectors, sharing one Hermite reduction."""
    n = h.domain.ambient_rank
    joint = IntMatrix.hstack([h.matrix, h.codomain.relations])
    form = hnf(joint)
    out = []
    for v in vs:
        sol = lattice_solve(joint, v, form)
        out.append(None if sol is None else tuple(sol[:n]))
    return out


def element_in_subgroup(parent: AbGroup, gens: IntMatrix, v: Sequence[int]) -> bool:
    lattice = IntMatrix.hstack([gens, parent.relations])
    return lattice_contains(lattice, v)


def elements_equal(G: AbGroup, a: Sequence[int], b: Sequence[int]) -> bool:
    return G.contains_relation([x - y for x, y in zip(a, b)])


def connecting_hom(
    top_right: AbHom, bottom_left: AbHom, middle: AbHom, right: AbHom, left: AbHom,
) -> tuple[AbGroup, AbHom, AbHom]:
    """Snake-lemma connecting map ``ker(right) -> coker(left)``.

    For the commutative diagram with exact rows ::

        A --> B --top_right--> C --> 0
        |left |middle          |right
        0 --> A' --bottom_left--> B' --> C'

    returns ``(ker(right), inclusion, delta)``.
    """
    K, incl = kernel(right)
    coker, _ = cokernel(left)
    lifts = lift_all(top_right, incl.matrix.columns())
    if any(s is None for s in lifts):
        raise AssertionError("top row is not surjective onto C")
    cols = lift_all(bottom_left, [middle.matrix.apply(s) for s in lifts])
    if any(t is None for t in cols):
        raise AssertionError("middle image does not come from A'")
    M = IntMatrix.from_columns(cols, rows=coker.ambient_rank) if cols else \
        IntMatrix.zeros(coker.ambient_rank, 0)
    return K, incl, make_hom(K, coker, M)
