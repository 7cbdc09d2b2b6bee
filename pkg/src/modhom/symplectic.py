"""Exact integer symplectic linear algebra.

Vectors live in Z^{2g} with the interleaved basis (e1, f1, ..., eg, fg) and the
form J = diag([[0, 1], [-1, 0]] * g).  Matrices act on column vectors and
``A * B`` is the composition ``A o B`` (B applied first).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

Rows = tuple[tuple[int, ...], ...]


class GenusMismatch(ValueError):
    pass


class NotSymplectic(ValueError):
    pass


def form_matrix(genus: int) -> Rows:
    n = 2 * genus
    rows = [[0] * n for _ in range(n)]
    for i in range(genus):
        rows[2 * i][2 * i + 1] = 1
        rows[2 * i + 1][2 * i] = -1
    return tuple(map(tuple, rows))


def _matmul(a: Rows, b: Rows) -> Rows:
    bt = tuple(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def _identity(n: int) -> Rows:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


@dataclass(frozen=True)
class HomClass:
    """Integer homology class of an oriented curve, coordinates in the interleaved basis."""

    genus: int
    coords: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))
        if self.genus < 1:
            raise ValueError("genus must be positive")
        if len(self.coords) != 2 * self.genus:
            raise ValueError(f"expected {2 * self.genus} coordinates, got {len(self.coords)}")

    @classmethod
    def e(cls, genus: int, i: int) -> "HomClass":
        """The class e_i (1-based)."""
        c = [0] * (2 * genus)
        c[2 * (i - 1)] = 1
        return cls(genus, tuple(c))

    @classmethod
    def f(cls, genus: int, i: int) -> "HomClass":
        """The class f_i (1-based)."""
        c = [0] * (2 * genus)
        c[2 * (i - 1) + 1] = 1
        return cls(genus, tuple(c))

    def __neg__(self) -> "HomClass":
        return HomClass(self.genus, tuple(-c for c in self.coords))

    def __add__(self, other: "HomClass") -> "HomClass":
        _check_genus(self.genus, other.genus)
        return HomClass(self.genus, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "HomClass") -> "HomClass":
        return self + (-other)

    def __rmul__(self, k: int) -> "HomClass":
        return HomClass(self.genus, tuple(k * c for c in self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_primitive(self) -> bool:
        from math import gcd

        g = 0
        for c in self.coords:
            g = gcd(g, c)
        return g == 1

    def same_up_to_sign(self, other: "HomClass") -> bool:
        return self == other or self == -other


def _check_genus(g1: int, g2: int) -> None:
    if g1 != g2:
        raise GenusMismatch(f"genus mismatch: {g1} != {g2}")


def pairing(u: HomClass, v: HomClass) -> int:
    """Algebraic intersection number u^T J v."""
    _check_genus(u.genus, v.genus)
    a, b = u.coords, v.coords
    return sum(a[2 * i] * b[2 * i + 1] - a[2 * i + 1] * b[2 * i] for i in range(u.genus))


@dataclass(frozen=True)
class SympMatrix:
    genus: int
    entries: Rows

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.entries)
        n = 2 * self.genus
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValueError(f"expected a {n}x{n} matrix")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def identity(cls, genus: int) -> "SympMatrix":
        return cls(genus, _identity(2 * genus))

    @classmethod
    def minus_identity(cls, genus: int) -> "SympMatrix":
        n = 2 * genus
        return cls(genus, tuple(tuple(-int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def checked(cls, genus: int, entries: Iterable[Sequence[int]]) -> "SympMatrix":
        m = cls(genus, tuple(map(tuple, entries)))
        if not m.is_symplectic():
            raise NotSymplectic("matrix does not preserve the symplectic form")
        return m

    def is_symplectic(self) -> bool:
        J = form_matrix(self.genus)
        mt = tuple(zip(*self.entries))
        return _matmul(_matmul(mt, J), self.entries) == J

    def is_identity(self) -> bool:
        return self.entries == _identity(2 * self.genus)

    def __mul__(self, other):
        if isinstance(other, SympMatrix):
            return mul(self, other)
        if isinstance(other, HomClass):
            return apply(self, other)
        return NotImplemented

    def __pow__(self, k: int) -> "SympMatrix":
        return power(self, k)

    def __neg__(self) -> "SympMatrix":
        return SympMatrix(self.genus, tuple(tuple(-x for x in row) for row in self.entries))

    def trace(self) -> int:
        return sum(self.entries[i][i] for i in range(2 * self.genus))

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]


def mul(a: SympMatrix, b: SympMatrix) -> SympMatrix:
    _check_genus(a.genus, b.genus)
    return SympMatrix(a.genus, _matmul(a.entries, b.entries))


def apply(a: SympMatrix, v: HomClass) -> HomClass:
    _check_genus(a.genus, v.genus)
    return HomClass(v.genus, tuple(sum(x * y for x, y in zip(row, v.coords)) for row in a.entries))


def inverse(a: SympMatrix) -> SympMatrix:
    # M^{-1} = -J M^T J for symplectic M
    J = form_matrix(a.genus)
    mt = tuple(zip(*a.entries))
    inv = _matmul(_matmul(J, mt), J)
    return SympMatrix(a.genus, tuple(tuple(-x for x in row) for row in inv))


def power(a: SympMatrix, k: int) -> SympMatrix:
    if k < 0:
        a, k = inverse(a), -k
    result = SympMatrix.identity(a.genus)
    base = a
    while k:
        if k & 1:
            result = mul(result, base)
        k >>= 1
        if k:
            base = mul(base, base)
    return result


def transvection(v: HomClass) -> SympMatrix:
    """Homology action x -> x + <x, v> v of the right Dehn twist about a curve in class v."""
    if v.is_zero():
        raise ValueError("transvection along the zero class")
    n = 2 * v.genus
    basis = [HomClass(v.genus, tuple(int(i == j) for i in range(n))) for j in range(n)]
    cols = []
    for x in basis:
        p = pairing(x, v)
        cols.append(tuple(a + p * b for a, b in zip(x.coords, v.coords)))
    return SympMatrix(v.genus, tuple(zip(*cols)))


def product(mats: Iterable[SympMatrix], genus: int) -> SympMatrix:
    """Left-to-right product, so the last factor acts first."""
    result = SympMatrix.identity(genus)
    for m in mats:
        result = mul(result, m)
    return result


class OrderExceedsCap(ArithmeticError):
    def __init__(self, cap: int):
        super().__init__(f"order exceeds cap {cap}")
        self.cap = cap


def order(a: SympMatrix, cap: int) -> int:
    """Least n <= cap with a^n = I.  Raises OrderExceedsCap otherwise."""
    if cap < 1:
        raise ValueError("cap must be >= 1")
    cur = a
    for n in range(1, cap + 1):
        if cur.is_identity():
            return n
        cur = mul(cur, a)
    raise OrderExceedsCap(cap)
