"""Group rings and Galois modules for G = (Z/p)^2.

Elements of G are written x^a y^b and indexed by ``a * p + b``. The p + 1
cyclic quotients H_i of G are fixed by

    i = 0:        x -> 1,   y -> z_0
    1 <= i <= p:  x -> z_i, y -> z_i^i        (so i = p sends y -> 1)

and G_i is defined as the kernel of the i-th quotient. With this
convention G_0 = <x> and G_p = <y>.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .abgrp import (
    AbGroup,
    AbHom,
    DirectSum,
    cokernel,
    compose,
    direct_sum,
    free_group,
    homs_equal,
    make_hom,
)
from .intlin import IntMatrix

__all__ = [
    "ElemAbelianGroup",
    "Subgroup",
    "GroupRingElement",
    "GMod",
    "EquivariantHom",
    "NotEquivariant",
    "NotAGModule",
    "subgroup_list",
    "v_element",
    "regular_module",
    "coset_module",
    "trivial_module",
    "quotient_module",
    "direct_sum_module",
    "diagonal_quotient",
    "rho_hat",
    "alpha_hat",
    "beta_hat_p2",
    "middle_vertical_p2",
    "ideal_quotient_module",
    "maps_h_f_g_j",
    "check_equivariant",
    "equivariant_hom",
]


def _check_prime(p: int) -> None:
    if p < 2 or any(p % k == 0 for k in range(2, int(p ** 0.5) + 1)):
        raise ValueError(f"p must be prime, got {p}")


@dataclass(frozen=True)
class Subgroup:
    index: int
    generator: tuple[int, int]
    elements: tuple[int, ...]


@dataclass(frozen=True)
class ElemAbelianGroup:
    p: int

    def __post_init__(self):
        _check_prime(self.p)

    @property
    def order(self) -> int:
        return self.p * self.p

    def index(self, a: int, b: int) -> int:
        p = self.p
        return (a % p) * p + (b % p)

    def exponents(self, idx: int) -> tuple[int, int]:
        return divmod(idx, self.p)

    def mul(self, g: int, h: int) -> int:
        a, b = self.exponents(g)
        c, d = self.exponents(h)
        return self.index(a + c, b + d)

    def quotient(self, i: int, g: int) -> int:
        """Exponent of z_i in the image of element g under G -> H_i."""
        p = self.p
        if not 0 <= i <= p:
            raise IndexError(f"quotient index must be in 0..{p}, got {i}")
        a, b = self.exponents(g)
        return b if i == 0 else (a + i * b) % p

    def subgroups(self) -> list[Subgroup]:
        out = []
        for i in range(self.p + 1):
            elems = tuple(g for g in range(self.order) if self.quotient(i, g) == 0)
            gen = next(self.exponents(g) for g in elems if g != 0)
            out.append(Subgroup(i, gen, elems))
        return out


def subgroup_list(G: ElemAbelianGroup | int) -> list[Subgroup]:
    """The p + 1 subgroups of order p, G_i = kernel of the i-th quotient."""
    if isinstance(G, int):
        G = ElemAbelianGroup(G)
    return G.subgroups()


class GroupRingElement:
    """Element of Z[G] as a coefficient vector over the indexed elements of G."""

    __slots__ = ("p", "coefficients")

    def __init__(self, p: int, coefficients: Sequence[int]):
        if len(coefficients) != p * p:
            raise ValueError(f"need {p * p} coefficients")
        self.p = p
        self.coefficients = tuple(int(c) for c in coefficients)

    @classmethod
    def monomial(cls, p: int, a: int, b: int, coeff: int = 1) -> "GroupRingElement":
        c = [0] * (p * p)
        c[(a % p) * p + (b % p)] = coeff
        return cls(p, c)

    @classmethod
    def one(cls, p: int) -> "GroupRingElement":
        return cls.monomial(p, 0, 0)

    @classmethod
    def x(cls, p: int) -> "GroupRingElement":
        return cls.monomial(p, 1, 0)

    @classmethod
    def y(cls, p: int) -> "GroupRingElement":
        return cls.monomial(p, 0, 1)

    @classmethod
    def scalar(cls, p: int, m: int) -> "GroupRingElement":
        return cls.monomial(p, 0, 0, m)

    def __add__(self, other: "GroupRingElement") -> "GroupRingElement":
        return GroupRingElement(self.p, [a + b for a, b in zip(self.coefficients, other.coefficients)])

    def __sub__(self, other: "GroupRingElement") -> "GroupRingElement":
        return GroupRingElement(self.p, [a - b for a, b in zip(self.coefficients, other.coefficients)])

    def __neg__(self) -> "GroupRingElement":
        return GroupRingElement(self.p, [-a for a in self.coefficients])

    def __mul__(self, other) -> "GroupRingElement":
        if isinstance(other, int):
            return GroupRingElement(self.p, [other * a for a in self.coefficients])
        p = self.p
        out = [0] * (p * p)
        for g, a in enumerate(self.coefficients):
            if not a:
                continue
            ga, gb = divmod(g, p)
            for h, b in enumerate(other.coefficients):
                if b:
                    ha, hb = divmod(h, p)
                    out[((ga + ha) % p) * p + (gb + hb) % p] += a * b
        return GroupRingElement(p, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "GroupRingElement":
        result = GroupRingElement.one(self.p)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return self.p == other.p and self.coefficients == other.coefficients

    def __hash__(self) -> int:
        return hash((self.p, self.coefficients))

    def __repr__(self) -> str:
        terms = []
        for g, c in enumerate(self.coefficients):
            if c:
                a, b = divmod(g, self.p)
                mono = "".join(
                    s for s in (f"x^{a}" if a > 1 else "x" if a else "",
                                f"y^{b}" if b > 1 else "y" if b else "")
                ) or "1"
                terms.append(f"{c}*{mono}" if c != 1 else mono)
        return " + ".join(terms) if terms else "0"

    def augmentation(self) -> int:
        return sum(self.coefficients)

    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def mult_matrix(self) -> IntMatrix:
        """Matrix of multiplication by this element on the regular basis."""
        p = self.p
        n = p * p
        cols = []
        for g in range(n):
            cols.append((self * GroupRingElement.monomial(p, *divmod(g, p))).coefficients)
        return IntMatrix.from_columns(cols, rows=n)


def v_element(var: str, p: int):
    """Norm element 1 + t + ... + t^(p-1).

    ``var`` is ``"x"`` or ``"y"`` (a GroupRingElement of Z[G]) or ``"z<i>"``
    (a coefficient tuple in the basis z_i^0, ..., z_i^(p-1) of Z[H_i]).
    """
    if var in ("x", "y"):
        t = GroupRingElement.x(p) if var == "x" else GroupRingElement.y(p)
        total = GroupRingElement(p, [0] * (p * p))
        for k in range(p):
            total = total + t ** k
        return total
    if var.startswith("z"):
        i = int(var[1:])
        if not 0 <= i <= p:
            raise IndexError(f"z index must be in 0..{p}")
        return (1,) * p
    raise ValueError(f"unknown variable {var!r}")


# -- modules -----------------------------------------------------------------


class NotAGModule(ValueError):
    pass


class NotEquivariant(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class GMod:
    """An abelian group with commuting actions of the generators x, y of G."""

    p: int
    underlying: AbGroup
    action_x: IntMatrix
    action_y: IntMatrix
    name: str = ""

    def __post_init__(self):
        G = self.underlying
        n = G.ambient_rank
        for label, A in (("x", self.action_x), ("y", self.action_y)):
            if A.shape != (n, n):
                raise NotAGModule(f"action of {label} has shape {A.shape}, expected {(n, n)}")
            try:
                make_hom(G, G, A)
            except ValueError as exc:
                raise NotAGModule(f"action of {label} is not well defined: {exc}") from None
            if not homs_equal(AbHom(G, G, A ** self.p), AbHom(G, G, IntMatrix.identity(n))):
                raise NotAGModule(f"action of {label} does not have order dividing p")
        xy = self.action_x @ self.action_y
        yx = self.action_y @ self.action_x
        if not homs_equal(AbHom(G, G, xy), AbHom(G, G, yx)):
            raise NotAGModule("actions of x and y do not commute")

    @property
    def ambient_rank(self) -> int:
        return self.underlying.ambient_rank

    @property
    def actions(self) -> tuple[IntMatrix, IntMatrix]:
        return (self.action_x, self.action_y)

    def __repr__(self) -> str:
        label = f"{self.name}: " if self.name else ""
        return f"GMod({label}p={self.p}, {self.underlying.invariants})"


@dataclass(frozen=True, eq=False)
class EquivariantHom:
    source: GMod
    target: GMod
    hom: AbHom
    name: str = ""

    @property
    def matrix(self) -> IntMatrix:
        return self.hom.matrix

    def __repr__(self) -> str:
        return f"EquivariantHom({self.name or '?'}: {self.source!r} -> {self.target!r})"


def check_equivariant(h: AbHom, dom_actions: Sequence[IntMatrix], cod_actions: Sequence[IntMatrix]) -> bool:
    """True iff ``h o t == t o h`` on the quotient groups for each generator t."""
    n, m = h.domain.ambient_rank, h.codomain.ambient_rank
    if len(dom_actions) != len(cod_actions):
        raise ValueError("action lists differ in length")
    for a, b in zip(dom_actions, cod_actions):
        if a.shape != (n, n) or b.shape != (m, m):
            raise ValueError("action matrix shape does not match the map")
        diff = h.matrix @ a - b @ h.matrix
        if not all(h.codomain.contains_relation(diff.column(k)) for k in range(diff.cols)):
            return False
    return True


def equivariant_hom(src: GMod, tgt: GMod, M: IntMatrix, name: str = "") -> EquivariantHom:
    h = make_hom(src.underlying, tgt.underlying, M)
    if not check_equivariant(h, src.actions, tgt.actions):
        raise NotEquivariant(f"map {name or '?'} does not commute with the G-action")
    return EquivariantHom(src, tgt, h, name)


def compose_equivariant(g: EquivariantHom, f: EquivariantHom, name: str = "") -> EquivariantHom:
    return EquivariantHom(f.source, g.target, compose(g.hom, f.hom), name)


def _perm_matrix(images: Sequence[int]) -> IntMatrix:
    n = len(images)
    data = [[0] * n for _ in range(n)]
    for j, i in enumerate(images):
        data[i][j] = 1
    return IntMatrix.from_rows(data, cols=n) if n else IntMatrix.zeros(0, 0)


def regular_module(p: int) -> GMod:
    """Z[G] with G acting by multiplication."""
    G = ElemAbelianGroup(p)
    n = G.order
    ax = _perm_matrix([G.mul(G.index(1, 0), g) for g in range(n)])
    ay = _perm_matrix([G.mul(G.index(0, 1), g) for g in range(n)])
    return GMod(p, free_group(n), ax, ay, "Z[G]")


def coset_module(p: int, i: int) -> GMod:
    """Z[H_i] = Z[z_i]/(z_i^p - 1) with basis z_i^0, ..., z_i^(p-1)."""
    G = ElemAbelianGroup(p)
    if not 0 <= i <= p:
        raise IndexError(f"coset index must be in 0..{p}, got {i}")
    ex = G.quotient(i, G.index(1, 0))
    ey = G.quotient(i, G.index(0, 1))
    ax = _perm_matrix([(k + ex) % p for k in range(p)])
    ay = _perm_matrix([(k + ey) % p for k in range(p)])
    return GMod(p, free_group(p), ax, ay, f"Z[H_{i}]")


def trivial_module(p: int, group: AbGroup | None = None, name: str = "Z") -> GMod:
    """A group with trivial G-action (Z by default)."""
    group = group if group is not None else free_group(1)
    I = IntMatrix.identity(group.ambient_rank)
    return GMod(p, group, I, I, name)


def quotient_module(M: GMod, extra: IntMatrix, name: str = "") -> tuple[GMod, EquivariantHom]:
    """``M / (G-stable subgroup generated by the columns of extra)`` and the projection."""
    rel = IntMatrix.hstack([M.underlying.relations, extra])
    Q = GMod(M.p, AbGroup(M.ambient_rank, rel), M.action_x, M.action_y, name)
    proj = equivariant_hom(M, Q, IntMatrix.identity(M.ambient_rank), f"proj:{name}")
    return Q, proj


def cokernel_module(h: EquivariantHom, name: str = "") -> tuple[GMod, EquivariantHom]:
    C, proj = cokernel(h.hom)
    Q = GMod(h.target.p, C, h.target.action_x, h.target.action_y, name)
    return Q, EquivariantHom(h.target, Q, AbHom(h.target.underlying, C, proj.matrix), f"proj:{name}")


@dataclass(frozen=True, eq=False)
class ModuleSum:
    module: GMod
    parts: DirectSum
    injections: tuple[EquivariantHom, ...]
    projections: tuple[EquivariantHom, ...]


def direct_sum_module(mods: Sequence[GMod], name: str = "") -> ModuleSum:
    p = mods[0].p
    ds = direct_sum([m.underlying for m in mods])
    ax = IntMatrix.block_diag([m.action_x for m in mods])
    ay = IntMatrix.block_diag([m.action_y for m in mods])
    S = GMod(p, ds.group, ax, ay, name)
    inj = tuple(equivariant_hom(m, S, ds.injections[k].matrix, f"in{k}") for k, m in enumerate(mods))
    proj = tuple(equivariant_hom(S, m, ds.projections[k].matrix, f"pr{k}") for k, m in enumerate(mods))
    return ModuleSum(S, ds, inj, proj)


@dataclass(frozen=True, eq=False)
class DiagonalQuotient:
    quotient: GMod
    projection: EquivariantHom
    embedding: EquivariantHom


def diagonal_quotient(M: GMod, name: str = "") -> DiagonalQuotient:
    """Quotient of a free permutation module by Z embedded as the sum of its basis."""
    Z = trivial_module(M.p)
    ones = IntMatrix(M.ambient_rank, 1, [1] * M.ambient_rank)
    emb = equivariant_hom(Z, M, ones, "diag")
    Q, proj = quotient_module(M, ones, name)
    return DiagonalQuotient(Q, proj, emb)


def rho_hat_matrix(p: int) -> IntMatrix:
    G = ElemAbelianGroup(p)
    cols = []
    for g in range(G.order):
        col = [0] * (p * (p + 1))
        for i in range(p + 1):
            col[i * p + G.quotient(i, g)] = 1
        cols.append(col)
    return IntMatrix.from_columns(cols, rows=p * (p + 1))


def coset_sum(p: int) -> ModuleSum:
    return direct_sum_module([coset_module(p, i) for i in range(p + 1)], "prod Z[H_i]")


def rho_hat(p: int) -> EquivariantHom:
    """Z[G] -> prod_i Z[H_i] induced by the p + 1 quotient maps."""
    return equivariant_hom(regular_module(p), coset_sum(p).module, rho_hat_matrix(p), "rho_hat")


def alpha_hat(p: int) -> EquivariantHom:
    """The map T^ = Z[G]/Z -> S^ = prod Z[H_i]/Z induced by rho_hat."""
    T = diagonal_quotient(regular_module(p), "T^").quotient
    S = diagonal_quotient(coset_sum(p).module, "S^").quotient
    return equivariant_hom(T, S, rho_hat_matrix(p), "alpha_hat")


# For p = 2 the classical coordinates are written on the bases
#   Z[G]:         (1, tau, sigma, tau*sigma)
#   prod Z[H_i]:  (1, sigma') (1, tau') (1, gamma)
# for the quotients by <tau>, <sigma>, <tau*sigma>. With sigma = x and
# tau = y these quotients are H_2, H_0, H_1 here, and the Z[G] basis
# (1, y, x, xy) is exactly our index order.
P2_BLOCK_ORDER = (2, 0, 1)
P2_NAMES = {"sigma": "x", "tau": "y", "G_a": "G_2 = <y>", "G_b": "G_0 = <x>", "G_ab": "G_1 = <xy>"}


def _p2_reorder() -> IntMatrix:
    """Permutation taking our prod Z[H_i] coordinates to the (a, b, ab) block order."""
    images = [0] * 6
    for pos, i in enumerate(P2_BLOCK_ORDER):
        for k in range(2):
            images[2 * i + k] = 2 * pos + k
    return _perm_matrix(images)


def middle_vertical_p2() -> AbHom:
    """(x1, x2, x3, x4) -> (x1+x2, x3+x4, x1+x3, x2+x4, x1+x4, x2+x3)."""
    M = IntMatrix.from_rows([
        [1, 1, 0, 0],
        [0, 0, 1, 1],
        [1, 0, 1, 0],
        [0, 1, 0, 1],
        [1, 0, 0, 1],
        [0, 1, 1, 0],
    ])
    return make_hom(free_group(4), free_group(6), M)


def p2_coset_sum_classical() -> GMod:
    """prod Z[H_i] for p = 2 written in the (a, b, ab) block order."""
    S = coset_sum(2).module
    P = _p2_reorder()
    Pinv = P.T
    return GMod(2, free_group(6), P @ S.action_x @ Pinv, P @ S.action_y @ Pinv, "prod Z[H] (a,b,ab)")


BETA_P2 = IntMatrix.from_rows([
    [1, 1, -1, -1, 0, 0],
    [1, 1, 0, 0, -1, -1],
])


def beta_hat_p2(p: int = 2) -> EquivariantHom:
    """S^ -> Z x Z, (y1..y6) -> (y1+y2-y3-y4, y1+y2-y5-y6), on (a, b, ab) coordinates.

    The G-action on Z x Z is the one induced through the surjection.
    """
    if p != 2:
        raise ValueError("beta_hat is only defined for p = 2")
    Sc = p2_coset_sum_classical()
    S = diagonal_quotient(Sc, "S^").quotient
    ZZ = free_group(2)
    h = make_hom(S.underlying, ZZ, BETA_P2)
    ax = induced_action(h, S.action_x)
    ay = induced_action(h, S.action_y)
    target = GMod(2, ZZ, ax, ay, "Z x Z")
    return equivariant_hom(S, target, BETA_P2, "beta_hat")


def induced_action(h: AbHom, action: IntMatrix) -> IntMatrix:
    """Action on the codomain of a surjection h making h equivariant."""
    from .abgrp import lift

    cols = []
    for k in range(h.codomain.ambient_rank):
        e = h.codomain.basis_vector(k)
        s = lift(h, e)
        if s is None:
            raise ValueError("map is not surjective; induced action undefined")
        cols.append(h.matrix.apply(action.apply(s)))
    return IntMatrix.from_columns(cols, rows=h.codomain.ambient_rank)


# -- quotient rings of Z[G] ----------------------------------------------------


def ideal_quotient_module(
    p: int,
    generators: Sequence[GroupRingElement],
    scalar: int | None = None,
    name: str = "",
) -> GMod:
    """Z[G] / (ideal generated by ``generators`` and the integer ``scalar``)."""
    n = p * p
    cols = []
    basis = [GroupRingElement.monomial(p, *divmod(g, p)) for g in range(n)]
    for e in generators:
        for g in basis:
            cols.append((g * e).coefficients)
    if scalar is not None:
        for g in range(n):
            cols.append(tuple(scalar * int(k == g) for k in range(n)))
    rel = IntMatrix.from_columns(cols, rows=n) if cols else IntMatrix.zeros(n, 0)
    R = regular_module(p)
    return GMod(p, AbGroup(n, rel), R.action_x, R.action_y, name)


@dataclass(frozen=True, eq=False)
class CosetMaps:
    """h_i, f_i = h_i o (Z[G] -> Z[H_i]), g_i = pr1 o f_i, j = pr2 o f_i."""

    i: int
    h: EquivariantHom
    f: EquivariantHom
    g: EquivariantHom
    j: EquivariantHom
    norm_quotient: GMod
    target: ModuleSum


def cyclotomic_module(p: int, i: int) -> GMod:
    """Z[z_i]/(v(z_i)) as a quotient of Z[H_i]."""
    C = coset_module(p, i)
    Q, _ = quotient_module(C, IntMatrix(p, 1, [1] * p), f"Z[z_{i}]/(v)")
    return Q


def maps_h_f_g_j(p: int, i: int) -> CosetMaps:
    if not 0 <= i <= p:
        raise IndexError(f"coset index must be in 0..{p}, got {i}")
    G = ElemAbelianGroup(p)
    C = coset_module(p, i)
    V = cyclotomic_module(p, i)
    Z = trivial_module(p)
    tgt = direct_sum_module([V, Z], f"Z[z_{i}]/(v) x Z")
    hm = IntMatrix.vstack([IntMatrix.identity(p), IntMatrix(1, p, [1] * p)])
    h = equivariant_hom(C, tgt.module, hm, f"h_{i}")
    qm = IntMatrix.from_columns(
        [[int(k == G.quotient(i, g)) for k in range(p)] for g in range(G.order)], rows=p)
    q = equivariant_hom(regular_module(p), C, qm, f"q_{i}")
    f = compose_equivariant(h, q, f"f_{i}")
    g = compose_equivariant(tgt.projections[0], f, f"g_{i}")
    j = compose_equivariant(tgt.projections[1], f, "j")
    return CosetMaps(i, h, f, g, j, V, tgt)
