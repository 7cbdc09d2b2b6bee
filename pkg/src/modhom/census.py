"""Which cyclic orders occur in Mod_g, decided by a search over branch data.

A cyclic group of order n acting on a genus-g surface with quotient genus h
and branch indices m_1..m_r exists iff the datum (n, h, m_1..m_r) passes
``admissible``: Riemann-Hurwitz plus the lcm / parity conditions of the
classical characterisation of cyclic actions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Iterator

# Torsion of Mod_1 = SL(2, Z): the finite cyclic subgroups have these orders.
MOD1_ORDERS = (1, 2, 3, 4, 6)


@dataclass(frozen=True)
class BranchDatum:
    n: int
    h: int
    branch_indices: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "branch_indices", tuple(sorted(self.branch_indices)))
        if self.n < 2 or self.h < 0:
            raise ValueError("need n >= 2 and h >= 0")
        if any(m < 2 for m in self.branch_indices):
            raise ValueError("branch indices must be >= 2")

    def riemann_hurwitz_genus(self) -> Fraction:
        """The genus g forced by 2g - 2 = n(2h - 2) + n * sum(1 - 1/m_i)."""
        chi = self.n * (2 * self.h - 2) + sum(self.n * (1 - Fraction(1, m)) for m in self.branch_indices)
        return (chi + 2) / 2

    def as_dict(self) -> dict:
        return {"n": self.n, "h": self.h, "branch_indices": list(self.branch_indices)}


def _lcm_all(xs) -> int:
    out = 1
    for x in xs:
        out = lcm(out, x)
    return out


def admissible(g: int, d: BranchDatum) -> bool:
    """Does the branch datum describe a Z/n action on the genus-g surface?"""
    ms = d.branch_indices
    r = len(ms)
    if any(d.n % m for m in ms):
        return False
    # (1) Riemann-Hurwitz, exactly
    if d.riemann_hurwitz_genus() != g:
        return False
    M = _lcm_all(ms)
    # (2) each index is redundant for the lcm
    if any(_lcm_all(ms[:i] + ms[i + 1 :]) != M for i in range(r)):
        return False
    # (3)
    if d.n % M or (d.h == 0 and M != d.n):
        return False
    # (4)
    if r == 1 or (d.h == 0 and r < 3):
        return False
    # (5) indices divisible by the full 2-part of M come in pairs
    if M % 2 == 0:
        two = M & -M
        if sum(1 for m in ms if m % two == 0) % 2:
            return False
    return True


def order_bound(g: int) -> int:
    """No cyclic (indeed no) action of order above 84(g - 1): the smallest
    positive value of 2h - 2 + sum(1 - 1/m_i) is 1/42."""
    return 84 * (g - 1)


def max_branch_points(g: int, n: int) -> int:
    """Largest r for which Riemann-Hurwitz can balance (h = 0, every m_i = 2)."""
    # n(-2) + r * n/2 <= 2g - 2
    return (2 * (2 * g - 2 + 2 * n)) // n


def _divisors(n: int) -> list[int]:
    return [d for d in range(2, n + 1) if n % d == 0]


def _multisets(ds: list[int], n: int, target: int, max_r: int) -> Iterator[tuple[int, ...]]:
    """Nondecreasing tuples of divisors with sum of n - n/m equal to target."""
    cost = [n - n // m for m in ds]
    out: list[int] = []

    def rec(start: int, remaining: int, left: int):
        if remaining == 0:
            yield tuple(out)
            return
        if left == 0 or cost[-1] * left < remaining:
            return
        for i in range(start, len(ds)):
            c = cost[i]
            if c > remaining:
                break
            out.append(ds[i])
            yield from rec(i, remaining - c, left - 1)
            out.pop()

    yield from rec(0, target, max_r)


def branch_data(g: int, n: int, max_h: int | None = None, max_r: int | None = None) -> Iterator[BranchDatum]:
    """Every admissible datum of order n in genus g within the (h, r) bounds."""
    if max_h is None:
        max_h = g
    if max_r is None:
        max_r = max_branch_points(g, n)
    ds = _divisors(n)
    for h in range(0, max_h + 1):
        target = 2 * g - 2 - n * (2 * h - 2)
        if target < 0:
            break
        for ms in _multisets(ds, n, target, max_r):
            d = BranchDatum(n, h, ms)
            if admissible(g, d):
                yield d


@lru_cache(maxsize=None)
def find_witness(g: int, n: int, max_h: int | None = None, max_r: int | None = None) -> BranchDatum | None:
    if g < 2:
        raise ValueError("branch-data search needs g >= 2")
    return next(branch_data(g, n, max_h, max_r), None)


def cyclic_order_exists(g: int, n: int, max_h: int | None = None, max_r: int | None = None) -> bool:
    """Does Mod_g contain an element of order exactly n?"""
    if n < 1:
        raise ValueError("order must be positive")
    if g == 0:
        return n == 1
    if n == 1:
        return True
    if g == 1:
        return n in MOD1_ORDERS
    return find_witness(g, n, max_h, max_r) is not None


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % p for p in range(2, int(n**0.5) + 1))


@dataclass(frozen=True)
class CensusReport:
    genus: int
    realizable_orders: tuple[int, ...]
    witness: dict[int, BranchDatum] = field(repr=False)
    search_limit: int = 0

    @property
    def max_order(self) -> int:
        return max(self.realizable_orders)

    @property
    def realizable_primes(self) -> tuple[int, ...]:
        return tuple(p for p in self.realizable_orders if _is_prime(p))

    def prime_rule_violations(self) -> list[int]:
        g = self.genus
        return [p for p in self.realizable_primes if not (p <= g + 1 or p == 2 * g + 1)]

    def as_dict(self) -> dict:
        return {
            "genus": self.genus,
            "search_limit": self.search_limit,
            "max_order": self.max_order,
            "realizable_orders": list(self.realizable_orders),
            "realizable_primes": list(self.realizable_primes),
            "witness": {str(n): d.as_dict() for n, d in sorted(self.witness.items())},
        }


@lru_cache(maxsize=None)
def census(g: int) -> CensusReport:
    """All orders 2..84(g-1) of cyclic mapping classes in genus g, with witnesses."""
    if g == 1:
        return CensusReport(1, MOD1_ORDERS[1:], {}, 6)
    if g < 2:
        raise ValueError("census needs g >= 1")
    limit = order_bound(g)
    orders, witness = [], {}
    for n in range(2, limit + 1):
        d = find_witness(g, n)
        if d is not None:
            orders.append(n)
            witness[n] = d
    return CensusReport(g, tuple(orders), witness, limit)


def prime_divisors(n: int) -> set[int]:
    out, p = set(), 2
    while p * p <= n:
        while n % p == 0:
            out.add(p)
            n //= p
        p += 1
    if n > 1:
        out.add(n)
    return out


__all__ = [
    "BranchDatum",
    "CensusReport",
    "MOD1_ORDERS",
    "admissible",
    "branch_data",
    "census",
    "cyclic_order_exists",
    "find_witness",
    "max_branch_points",
    "order_bound",
    "prime_divisors",
]
