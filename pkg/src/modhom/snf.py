"""Smith normal form over Z with unimodular transforms, and integer rank."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

Matrix = list[list[int]]


@dataclass(frozen=True)
class SNFResult:
    D: tuple[tuple[int, ...], ...]
    U: tuple[tuple[int, ...], ...]
    V: tuple[tuple[int, ...], ...]

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        """Diagonal of D (length min(rows, cols)), zeros last."""
        k = min(len(self.D), len(self.D[0]) if self.D else 0)
        return tuple(self.D[i][i] for i in range(k))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.invariant_factors if d)


def _eye(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _freeze(m: Matrix):
    return tuple(tuple(r) for r in m)


def smith_normal_form(A: Sequence[Sequence[int]]) -> SNFResult:
    """Return D, U, V with U A V = D, D diagonal and d_i | d_{i+1}.

    Pivoting: the nonzero entry of smallest absolute value in the active
    block, ties broken by row-major position.
    """
    a = [list(map(int, row)) for row in A]
    nr = len(a)
    nc = len(a[0]) if nr else 0
    U = _eye(nr)
    V = _eye(nc)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row dst += q * row src
        if q:
            a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
            U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col dst += q * col src
        if q:
            for row in a:
                row[dst] += q * row[src]
            for row in V:
                row[dst] += q * row[src]

    def smallest(t):
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                x = a[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        return best

    for t in range(min(nr, nc)):
        while True:
            best = smallest(t)
            if best is None:
                break
            _, i, j = best
            swap_rows(t, i)
            swap_cols(t, j)
            p = a[t][t]
            for i in range(t + 1, nr):
                add_row(i, t, -(a[i][t] // p))
            for j in range(t + 1, nc):
                add_col(j, t, -(a[t][j] // p))
            if any(a[i][t] for i in range(t + 1, nr)) or any(a[t][j] for j in range(t + 1, nc)):
                continue
            bad = next(
                (i for i in range(t + 1, nr) for j in range(t + 1, nc) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] == 0:
            break  # active block is zero
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]
    return SNFResult(_freeze(a), _freeze(U), _freeze(V))


def invariant_factors(A: Sequence[Sequence[int]]) -> tuple[int, ...]:
    return smith_normal_form(A).invariant_factors


def integer_rank(mats: Sequence[Sequence[Sequence[int]]]) -> int:
    """Rank over Q of a family of equal-shape integer matrices, flattened to vectors."""
    if not mats:
        return 0
    rows = [[int(x) for row in m for x in row] for m in mats]
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ValueError("matrices must share a shape")
    return smith_normal_form(rows).rank
