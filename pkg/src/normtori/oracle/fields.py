"""Small finite fields F_q with table-driven arithmetic.

Elements are the integers 0..q-1; an element c_0 + c_1 t + ... + c_{k-1} t^{k-1}
of F_l[t]/(m(t)) is encoded as sum c_i l^i.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

__all__ = ["FqField", "make_field", "SUPPORTED_Q", "UnsupportedField"]

# q -> (l, k, monic modulus coefficients low to high, leading 1 omitted)
_MODULI: dict[int, tuple[int, int, tuple[int, ...]]] = {
    2: (2, 1, (0,)),
    3: (3, 1, (0,)),
    4: (2, 2, (1, 1)),        # t^2 + t + 1
    5: (5, 1, (0,)),
    7: (7, 1, (0,)),
    8: (2, 3, (1, 1, 0)),     # t^3 + t + 1
    9: (3, 2, (1, 0)),        # t^2 + 1
    11: (11, 1, (0,)),
    13: (13, 1, (0,)),
    16: (2, 4, (1, 1, 0, 0)),  # t^4 + t + 1
    25: (5, 2, (2, 0)),       # t^2 + 2
}
SUPPORTED_Q = frozenset(_MODULI)
MAX_Q = 32


class UnsupportedField(ValueError):
    pass


def _digits(n: int, l: int, k: int) -> list[int]:
    out = []
    for _ in range(k):
        n, r = divmod(n, l)
        out.append(r)
    return out


def _undigits(c: list[int], l: int) -> int:
    n = 0
    for d in reversed(c):
        n = n * l + d
    return n


@dataclass(frozen=True)
class FqField:
    char: int
    degree: int
    modulus: tuple[int, ...]
    add_table: list[list[int]] = field(repr=False, compare=False)
    mul_table: list[list[int]] = field(repr=False, compare=False)
    neg_table: list[int] = field(repr=False, compare=False)
    inv_table: list[int | None] = field(repr=False, compare=False)
    generator: int = 0
    log: dict[int, int] = field(repr=False, compare=False, default_factory=dict)

    @property
    def q(self) -> int:
        return self.char ** self.degree

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def elements(self) -> range:
        return range(self.q)

    def units(self) -> list[int]:
        return list(range(1, self.q))

    def add(self, a: int, b: int) -> int:
        return self.add_table[a][b]

    def sub(self, a: int, b: int) -> int:
        return self.add_table[a][self.neg_table[b]]

    def neg(self, a: int) -> int:
        return self.neg_table[a]

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def inv(self, a: int) -> int:
        r = self.inv_table[a]
        if r is None:
            raise ZeroDivisionError("inverse of zero")
        return r

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def from_int(self, n: int) -> int:
        """Image of the integer n under Z -> F_q."""
        return n % self.char

    def prod(self, xs) -> int:
        r = 1
        m = self.mul_table
        for x in xs:
            r = m[r][x]
        return r

    def is_square(self, a: int) -> bool:
        if a == 0:
            return True
        return self.log[a] % 2 == 0 or self.q % 2 == 0

    def check_axioms(self) -> bool:
        """Exhaustive field-axiom check; cubic in q."""
        E = self.elements()
        A, M = self.add_table, self.mul_table
        for a in E:
            if A[a][0] != a or M[a][1] != a or A[a][self.neg_table[a]] != 0:
                return False
            if a and M[a][self.inv(a)] != 1:
                return False
            for b in E:
                if A[a][b] != A[b][a] or M[a][b] != M[b][a]:
                    return False
                for c in E:
                    if A[A[a][b]][c] != A[a][A[b][c]]:
                        return False
                    if M[M[a][b]][c] != M[a][M[b][c]]:
                        return False
                    if M[a][A[b][c]] != A[M[a][b]][M[a][c]]:
                        return False
        return True


_CACHE: dict[int, FqField] = {}


def make_field(q: int) -> FqField:
    if q in _CACHE:
        return _CACHE[q]
    if q not in _MODULI or q > MAX_Q:
        raise UnsupportedField(f"unsupported q={q}; supported: {sorted(SUPPORTED_Q)}")
    l, k, low = _MODULI[q]
    # t^k = -(low) reduces products
    red = [(-c) % l for c in low]

    def polymul(a: list[int], b: list[int]) -> list[int]:
        c = [0] * (2 * k - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    c[i + j] = (c[i + j] + x * y) % l
        for d in range(2 * k - 2, k - 1, -1):
            t = c[d]
            if t:
                c[d] = 0
                for j in range(k):
                    c[d - k + j] = (c[d - k + j] + t * red[j]) % l
        return c[:k]

    digs = [_digits(n, l, k) for n in range(q)]
    add_t = [[_undigits([(x + y) % l for x, y in zip(digs[a], digs[b])], l) for b in range(q)]
             for a in range(q)]
    mul_t = [[_undigits(polymul(digs[a], digs[b]), l) for b in range(q)] for a in range(q)]
    neg_t = [_undigits([(-x) % l for x in digs[a]], l) for a in range(q)]
    inv_t: list[int | None] = [None] * q
    for a in range(1, q):
        for b in range(1, q):
            if mul_t[a][b] == 1:
                inv_t[a] = b
                break
        if inv_t[a] is None:
            raise UnsupportedField(f"modulus for q={q} is reducible")

    gen, log = 0, {}
    for g in range(1, q):
        seen, x = {}, 1
        for e in range(q - 1):
            if x in seen:
                break
            seen[x] = e
            x = mul_t[x][g]
        if len(seen) == q - 1:
            gen, log = g, seen
            break
    F = FqField(l, k, tuple(low) + (1,), add_t, mul_t, neg_t, inv_t, gen, log)
    _CACHE[q] = F
    return F
