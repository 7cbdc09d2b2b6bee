"""Named curve configurations on the closed genus-g surface, seen through homology.

The curves a_1, ..., a_{2g+1} form a cycle: a_i meets a_{i+1} once and
a_{2g+1} also meets a_1 once, so that delta = t_1 ... t_{2g} rotates them,
a_i -> a_{i+1} -> ... -> a_{2g+1} -> a_1^{-1}.  The extra curve a_0 meets a_4.
Classes are produced by a small backtracking solver instead of being typed in
per genus; anything satisfying the intersection pattern is as good as anything
else.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .snf import integer_rank
from .symplectic import (
    HomClass,
    OrderExceedsCap,
    SympMatrix,
    apply,
    form_matrix,
    order,
    pairing,
    power,
    product,
    transvection,
)

DEFAULT_BOX = 1


class PatternError(ValueError):
    pass


@dataclass(frozen=True)
class CurveSystem:
    genus: int
    names: tuple[str, ...]
    classes: tuple[HomClass, ...]
    expected_pattern: tuple[tuple[int, ...], ...]
    non_separating: bool = True

    def __post_init__(self):
        k = len(self.classes)
        if len(self.names) != k:
            raise ValueError("one name per class")
        if len(self.expected_pattern) != k or any(len(r) != k for r in self.expected_pattern):
            raise ValueError(f"pattern must be {k}x{k}")
        if any(c.genus != self.genus for c in self.classes):
            raise ValueError("class genus differs from system genus")

    def pattern(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(abs(pairing(u, v)) for v in self.classes) for u in self.classes)

    def violations(self) -> list[str]:
        out = []
        actual = self.pattern()
        for i, j in itertools.product(range(len(self.classes)), repeat=2):
            if actual[i][j] != self.expected_pattern[i][j]:
                out.append(
                    f"|<{self.names[i]},{self.names[j]}>| = {actual[i][j]}, "
                    f"expected {self.expected_pattern[i][j]}"
                )
        if self.non_separating:
            for name, c in zip(self.names, self.classes):
                if not c.is_primitive():
                    out.append(f"{name} is not a primitive nonzero class")
        return out

    def validate(self) -> "CurveSystem":
        bad = self.violations()
        if bad:
            raise PatternError("; ".join(bad))
        return self

    def dumps(self) -> str:
        lines = [f"genus {self.genus} count {len(self.classes)}"]
        for name, c in zip(self.names, self.classes):
            lines.append("  ".join([name, " ".join(map(str, c.coords))]))
        for row in self.expected_pattern:
            lines.append(" ".join(map(str, row)))
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> "CurveSystem":
        lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln]
        if not lines:
            raise ValueError("empty curve system")
        head = lines[0].split()
        if len(head) != 4 or head[0] != "genus" or head[2] != "count":
            raise ValueError(f"bad header {lines[0]!r}; expected 'genus g count k'")
        g, k = int(head[1]), int(head[3])
        if len(lines) != 1 + 2 * k:
            raise ValueError(f"expected {k} class lines and a {k}x{k} pattern")
        names, classes = [], []
        for ln in lines[1 : 1 + k]:
            tok = ln.split()
            if len(tok) != 1 + 2 * g:
                raise ValueError(f"class line {ln!r} needs a label and {2 * g} coordinates")
            names.append(tok[0])
            classes.append(HomClass(g, tuple(int(t) for t in tok[1:])))
        pattern = tuple(tuple(int(t) for t in ln.split()) for ln in lines[1 + k :])
        return cls(g, tuple(names), tuple(classes), pattern)


# -- chain -------------------------------------------------------------------


@dataclass(frozen=True)
class ChainData:
    genus: int
    classes: tuple[HomClass, ...]  # v_1 .. v_{2g+1}
    extra: HomClass | None  # v_0, absent in genus 1
    delta: SympMatrix = field(repr=False)

    def v(self, i: int) -> HomClass:
        if i == 0:
            if self.extra is None:
                raise IndexError("a_0 does not exist in genus 1")
            return self.extra
        return self.classes[i - 1]

    def twist(self, i: int) -> SympMatrix:
        return transvection(self.v(i))

    def humphries(self) -> list[HomClass]:
        """Classes whose twists generate the whole mapping class group."""
        if self.extra is None:
            return list(self.classes[:2])
        return [self.extra, *self.classes[: 2 * self.genus]]

    def as_curve_system(self) -> CurveSystem:
        idx = ([0] if self.extra is not None else []) + list(range(1, 2 * self.genus + 2))
        pat = tuple(tuple(chain_pattern_entry(self.genus, i, j) for j in idx) for i in idx)
        return CurveSystem(
            self.genus, tuple(f"a{i}" for i in idx), tuple(self.v(i) for i in idx), pat
        )


def chain_pattern_entry(g: int, i: int, j: int) -> int:
    """|algebraic intersection| of a_i and a_j."""
    last = 2 * g + 1
    if i == j:
        return 0
    if 0 in (i, j):
        # a_0 meets a_4; the closing curve a_{2g+1} is forced to meet it as well
        other = i + j
        return int(other == 4 or (g >= 2 and other == last))
    if abs(i - j) == 1 or {i, j} == {1, last}:
        return 1
    return 0


@lru_cache(maxsize=None)
def _candidate_batch(dim: int, box: int, norm: int) -> np.ndarray:
    # all vectors of one L1 norm; earlier coordinates and positive signs first
    batch = []
    for support in range(1, min(dim, norm) + 1):
        for pos in itertools.combinations(range(dim), support):
            for mags in itertools.product(range(1, box + 1), repeat=support):
                if sum(mags) != norm:
                    continue
                for signs in itertools.product((1, -1), repeat=support):
                    v = [0] * dim
                    for p, m, s in zip(pos, mags, signs):
                        v[p] = m * s
                    batch.append(tuple(v))
    batch.sort(key=lambda v: (tuple(-abs(x) for x in v), tuple(x < 0 for x in v)))
    return np.array(batch, dtype=np.int64).reshape(-1, dim)


def _candidates(dim: int, box: int) -> Iterator[np.ndarray]:
    """Candidate coordinate vectors in search order, one array per L1 norm."""
    for norm in range(1, dim * box + 1):
        yield _candidate_batch(dim, box, norm)


def chain(g: int, box: int = DEFAULT_BOX) -> ChainData:
    """Solve for chain classes v_1..v_{2g+1} (and v_0 when g >= 2).

    Constraints: <v_i, v_{i+1}> = +1, |<v_{2g+1}, v_1>| = 1, all other pairs
    within 1..2g+1 pair to 0, and v_1..v_{2g} are linearly independent.
    v_0 pairs +1 with v_4 and 0 with v_1..v_{2g} otherwise.
    """
    return _chain(g, box)


def _candidate_key(v: Sequence[int]):
    return (sum(map(abs, v)), tuple(-abs(x) for x in v), tuple(x < 0 for x in v))


def solve_pairings(basis: Sequence[HomClass], values: Sequence[int]) -> HomClass:
    """The unique x with <b_j, x> = values[j] for a basis b_1..b_{2g} of Z^{2g}."""
    g = basis[0].genus
    n = 2 * g
    rows = []
    for b, val in zip(basis, values):
        # <b, x> = sum_i b_{e_i} x_{f_i} - b_{f_i} x_{e_i}
        r = [Fraction(0)] * n
        for i in range(g):
            r[2 * i + 1] = Fraction(b.coords[2 * i])
            r[2 * i] = Fraction(-b.coords[2 * i + 1])
        rows.append(r + [Fraction(val)])
    for col in range(n):
        piv = next((r for r in range(col, n) if rows[r][col]), None)
        if piv is None:
            raise PatternError("pairing system is singular")
        rows[col], rows[piv] = rows[piv], rows[col]
        p = rows[col][col]
        rows[col] = [x / p for x in rows[col]]
        for r in range(n):
            if r != col and rows[r][col]:
                q = rows[r][col]
                rows[r] = [x - q * y for x, y in zip(rows[r], rows[col])]
    sol = [rows[i][n] for i in range(n)]
    if any(x.denominator != 1 for x in sol):
        raise PatternError("pairing system has no integral solution")
    return HomClass(g, tuple(int(x) for x in sol))


@lru_cache(maxsize=None)
def _chain(g: int, box: int) -> ChainData:
    if g < 1:
        raise ValueError("genus must be positive")
    dim = 2 * g
    picked: list[HomClass] = []

    J = np.array(form_matrix(g), dtype=np.int64)

    def ok(i: int, c: HomClass) -> bool:
        if integer_rank([[p.coords] for p in picked] + [[c.coords]]) != i + 1:
            return False
        return c.is_primitive()

    def extend(i: int) -> bool:
        if i == dim:
            return True
        want = np.zeros(len(picked), dtype=np.int64)
        if picked:
            want[-1] = 1
        P = np.array([p.coords for p in picked], dtype=np.int64).reshape(-1, dim) @ J
        for batch in _candidates(dim, box):
            hits = np.flatnonzero((batch @ P.T == want).all(axis=1))
            for row in hits:
                c = HomClass(g, tuple(int(x) for x in batch[row]))
                if ok(i, c):
                    picked.append(c)
                    if extend(i + 1):
                        return True
                    picked.pop()
        return False

    if not extend(0):
        raise PatternError(f"no chain found for genus {g} in coordinate box {box}")

    # v_1..v_{2g} is a basis, so the closing class and v_0 are pinned down by
    # their pairings; only the sign of <v_1, v_{2g+1}> is free.
    closing = []
    for s in (1, -1):
        vals = [0] * dim
        vals[0] = s
        vals[-1] = 1  # <v_{2g}, v_{2g+1}> = +1
        closing.append(solve_pairings(picked, vals))
    last = min(closing, key=lambda c: _candidate_key(c.coords))
    picked.append(last)

    extra = None
    if g >= 2:
        vals = [0] * dim
        vals[3] = -1  # <v_4, v_0> = -1
        extra = solve_pairings(picked[:dim], vals)
    delta = twist_product(picked[:dim])
    return ChainData(g, tuple(picked), extra, delta)


def twist_product(classes: Sequence[HomClass]) -> SympMatrix:
    """T(c_1) ... T(c_k), built column by column instead of by matrix products."""
    g = classes[0].genus
    n = 2 * g
    cols = [[int(i == j) for i in range(n)] for j in range(n)]
    for v in reversed(classes):
        vc = v.coords
        for x in cols:
            p = sum(x[2 * i] * vc[2 * i + 1] - x[2 * i + 1] * vc[2 * i] for i in range(g))
            if p:
                for i in range(n):
                    x[i] += p * vc[i]
    return SympMatrix(g, tuple(tuple(cols[j][i] for j in range(n)) for i in range(n)))


@lru_cache(maxsize=None)
def delta_order_check(g: int, box: int = DEFAULT_BOX) -> int:
    """Order of the chain product t_1 ... t_{2g} acting on homology (expected 4g + 2)."""
    return order(chain(g, box).delta, 4 * g + 3)


@dataclass(frozen=True)
class ChainActionReport:
    genus: int
    signs: tuple[int, ...]  # sign s_i with delta v_i = s_i v_{i+1}; last entry is delta v_{2g+1} vs v_1
    failures: tuple[int, ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def chain_action_check(g: int, box: int = DEFAULT_BOX) -> ChainActionReport:
    """Check delta v_i = +-v_{i+1} (1 <= i <= 2g) and delta v_{2g+1} = +-v_1."""
    ch = chain(g, box)
    signs, failures = [], []
    for i in range(1, 2 * g + 2):
        target = ch.v(i + 1) if i <= 2 * g else ch.v(1)
        image = apply(ch.delta, ch.v(i))
        if image == target:
            signs.append(1)
        elif image == -target:
            signs.append(-1)
        else:
            signs.append(0)
            failures.append(i)
    return ChainActionReport(g, tuple(signs), tuple(failures))


@lru_cache(maxsize=None)
def hyperelliptic_check(g: int, box: int = DEFAULT_BOX) -> bool:
    """delta^{2g+1} acts as -I on homology."""
    return power(chain(g, box).delta, 2 * g + 1) == SympMatrix.minus_identity(g)


# -- permutations of hyperbolic pairs ---------------------------------------


def perm_embedding(sigma: Sequence[int]) -> SympMatrix:
    """Block permutation sending the pair (e_i, f_i) to (e_sigma(i), f_sigma(i)).

    ``sigma`` lists images of 1..g (1-based).
    """
    g = len(sigma)
    if sorted(sigma) != list(range(1, g + 1)):
        raise ValueError(f"not a permutation of 1..{g}: {list(sigma)}")
    n = 2 * g
    rows = [[0] * n for _ in range(n)]
    for i, s in enumerate(sigma):
        rows[2 * (s - 1)][2 * i] = 1
        rows[2 * (s - 1) + 1][2 * i + 1] = 1
    return SympMatrix(g, tuple(map(tuple, rows)))


def cycle(g: int, length: int) -> tuple[int, ...]:
    """The permutation 1 -> 2 -> ... -> length -> 1 on g letters."""
    return tuple(list(range(2, length + 1)) + [1] + list(range(length + 1, g + 1)))


def is_even(sigma: Sequence[int]) -> bool:
    seen, parity = set(), 0
    for start in range(1, len(sigma) + 1):
        if start in seen:
            continue
        n, x = 0, start
        while x not in seen:
            seen.add(x)
            x = sigma[x - 1]
            n += 1
        parity += n - 1
    return parity % 2 == 0


def rotation_r1(g: int) -> SympMatrix:
    """Rotation by 2 pi / g: cycles all g handles."""
    if g < 3:
        raise ValueError("rotations are defined for g >= 3")
    return perm_embedding(cycle(g, g))


def rotation_r2(g: int) -> SympMatrix:
    """Rotation by 2 pi / (g-1): cycles g-1 handles and fixes the last."""
    if g < 3:
        raise ValueError("rotations are defined for g >= 3")
    return perm_embedding(cycle(g, g - 1))


def alternating_rotation(g: int) -> tuple[str, tuple[int, ...]]:
    """The rotation whose handle permutation is even: r1 for odd g, r2 for even g."""
    return ("r1", cycle(g, g)) if g % 2 else ("r2", cycle(g, g - 1))


# -- genus 4 element ----------------------------------------------------------


def gamma4(box: int = DEFAULT_BOX) -> SympMatrix:
    """t_1 t_2 t_3 t_4 in genus 4."""
    ch = chain(4, box)
    return product((ch.twist(i) for i in range(1, 5)), 4)


# -- pants-type systems -------------------------------------------------------


def pants_system(g: int) -> CurveSystem:
    """3g-3 pairwise disjoint, pairwise non-homologous classes in span(e_1..e_g).

    Windows e_i + ... + e_{i+w-1} of widths 1, 2, 3.
    """
    if g < 3:
        raise ValueError("pants systems are built for g >= 3")
    names, classes = [], []
    for width in (1, 2, 3):
        for start in range(1, g - width + 2):
            c = [0] * (2 * g)
            for i in range(start, start + width):
                c[2 * (i - 1)] = 1
            names.append("c" + "".join(map(str, range(start, start + width))) if width > 1 else f"c{start}")
            classes.append(HomClass(g, tuple(c)))
    k = len(classes)
    return CurveSystem(g, tuple(names), tuple(classes), tuple((0,) * k for _ in range(k)))


def commuting(sys: CurveSystem) -> bool:
    return all(pairing(u, v) == 0 for u, v in itertools.combinations(sys.classes, 2))


def twist_rank(sys: CurveSystem) -> int:
    """Rank of the abelian group generated by the twists' homology actions.

    With pairwise pairings zero, prod T(v_i)^{n_i} = x -> x + sum n_i <x,v_i> v_i,
    so the rank is that of the family of tensors v_i v_i^T.
    """
    if not commuting(sys):
        raise PatternError("twist rank needs pairwise disjoint (pairing 0) classes")
    tensors = [[[a * b for b in v.coords] for a in v.coords] for v in sys.classes]
    return integer_rank(tensors)


def multitwist(sys: CurveSystem, exponents: Sequence[int]) -> SympMatrix:
    """prod_i T(v_i)^{n_i}, computed by repeated matrix products."""
    if len(exponents) != len(sys.classes):
        raise ValueError("one exponent per class")
    return product((power(transvection(v), n) for v, n in zip(sys.classes, exponents)), sys.genus)


__all__ = [
    "ChainActionReport",
    "ChainData",
    "CurveSystem",
    "OrderExceedsCap",
    "PatternError",
    "alternating_rotation",
    "chain",
    "chain_action_check",
    "commuting",
    "cycle",
    "delta_order_check",
    "gamma4",
    "hyperelliptic_check",
    "is_even",
    "multitwist",
    "pants_system",
    "perm_embedding",
    "rotation_r1",
    "rotation_r2",
    "twist_rank",
]
