"""Finite quotients Sp(2g, Z/m): enumeration, normal closures, indices.

Group elements are kept only as canonical keys (sorted numpy arrays).  When
m^{(2g)^2} fits in 63 bits the key is the base-m integer of the entries; other
cases fall back to the little-endian byte string of the entries.  Membership is
a binary search in the sorted key array, so results and iteration order are
deterministic.

Products are formed for whole BFS frontiers at once as a single float64 BLAS
product, which is exact while n * (m-1)^2 < 2^53.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .symplectic import SympMatrix, form_matrix

log = logging.getLogger(__name__)

DEFAULT_CAP = 4_000_000
_CHUNK = 200_000


class GroupTooLarge(RuntimeError):
    def __init__(self, size: int, cap: int):
        super().__init__(f"enumeration exceeded cap {cap} (reached {size} elements)")
        self.size = size
        self.cap = cap


@dataclass(frozen=True)
class ModMatrix:
    genus: int
    modulus: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.modulus < 2:
            raise ValueError("modulus must be >= 2")
        m = self.modulus
        rows = tuple(tuple(int(x) % m for x in row) for row in self.entries)
        n = 2 * self.genus
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValueError(f"expected a {n}x{n} matrix")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def identity(cls, genus: int, modulus: int) -> "ModMatrix":
        n = 2 * genus
        return cls(genus, modulus, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def from_array(cls, genus: int, modulus: int, arr) -> "ModMatrix":
        return cls(genus, modulus, tuple(tuple(int(x) for x in row) for row in np.asarray(arr)))

    def array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64)

    def is_symplectic(self) -> bool:
        a = self.array()
        J = np.array(form_matrix(self.genus), dtype=np.int64)
        return bool(np.all((a.T @ J @ a - J) % self.modulus == 0))

    def is_identity(self) -> bool:
        return self == ModMatrix.identity(self.genus, self.modulus)

    def __mul__(self, other: "ModMatrix") -> "ModMatrix":
        _check_compatible([self, other])
        return ModMatrix.from_array(self.genus, self.modulus, (self.array() @ other.array()) % self.modulus)

    def inverse(self) -> "ModMatrix":
        J = np.array(form_matrix(self.genus), dtype=np.int64)
        return ModMatrix.from_array(self.genus, self.modulus, (-J @ self.array().T @ J) % self.modulus)

    def __pow__(self, k: int) -> "ModMatrix":
        base = self if k >= 0 else self.inverse()
        result = ModMatrix.identity(self.genus, self.modulus)
        for _ in range(abs(k)):
            result = result * base
        return result


def reduce_mod(M: SympMatrix, m: int) -> ModMatrix:
    if m < 2:
        raise ValueError("modulus must be >= 2")
    return ModMatrix(M.genus, m, M.entries)


def congruence_kernel_member(M: SympMatrix, m: int) -> bool:
    """True iff M lies in the level-m congruence subgroup."""
    return reduce_mod(M, m).is_identity()


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % p for p in range(2, int(n**0.5) + 1))


def sp_order(g: int, m: int) -> int:
    """|Sp(2g, F_q)| = q^{g^2} prod_{i=1}^{g} (q^{2i} - 1) for prime q."""
    if not _is_prime(m):
        raise ValueError(f"order formula needs a prime modulus, got {m}; enumerate instead")
    out = m ** (g * g)
    for i in range(1, g + 1):
        out *= m ** (2 * i) - 1
    return out


def _check_compatible(mats: Sequence[ModMatrix]) -> None:
    if len({(x.genus, x.modulus) for x in mats}) > 1:
        raise ValueError("matrices must share genus and modulus")


# -- canonical keys -----------------------------------------------------------


class _Keyer:
    def __init__(self, n: int, m: int):
        self.n, self.m = n, m
        self.packed = m ** (n * n) < 2**63
        if self.packed:
            self.weights = np.array([m**i for i in range(n * n)], dtype=np.int64)
        else:
            self.width = 1 if m <= 256 else 2 if m <= 65536 else 4 if m <= 2**32 else 8
            self.dtype = np.dtype(f"<u{self.width}")

    def encode(self, mats: np.ndarray) -> np.ndarray:
        flat = mats.reshape(len(mats), self.n * self.n).astype(np.int64)
        if self.packed:
            return flat @ self.weights
        raw = np.ascontiguousarray(flat.astype(self.dtype))
        return raw.view(f"S{self.n * self.n * self.width}").ravel()

    def decode(self, keys: np.ndarray) -> np.ndarray:
        n, m = self.n, self.m
        if self.packed:
            digits = (keys[:, None] // self.weights[None, :]) % m
        else:
            nn = n * n * self.width
            buf = np.frombuffer(np.ascontiguousarray(keys).tobytes(), dtype=np.uint8)
            buf = buf.reshape(len(keys), nn)
            digits = buf.view(self.dtype).astype(np.int64)
        return digits.reshape(len(keys), n, n)


def _contains(sorted_keys: np.ndarray, keys: np.ndarray) -> np.ndarray:
    if len(sorted_keys) == 0:
        return np.zeros(len(keys), dtype=bool)
    idx = np.searchsorted(sorted_keys, keys)
    idx[idx == len(sorted_keys)] = 0
    return sorted_keys[idx] == keys


@dataclass(frozen=True)
class GroupTable:
    genus: int
    modulus: int
    generators: tuple[ModMatrix, ...]
    keys: np.ndarray = field(repr=False)  # sorted canonical keys

    def __len__(self) -> int:
        return len(self.keys)

    @property
    def size(self) -> int:
        return len(self.keys)

    def _keyer(self) -> _Keyer:
        return _Keyer(2 * self.genus, self.modulus)

    def __contains__(self, x: ModMatrix) -> bool:
        k = self._keyer().encode(x.array()[None])
        return bool(_contains(self.keys, k)[0])

    def contains_many(self, mats: np.ndarray) -> np.ndarray:
        return _contains(self.keys, self._keyer().encode(mats))

    def element_arrays(self, start: int = 0, stop: int | None = None) -> np.ndarray:
        return self._keyer().decode(self.keys[start:stop])

    def elements(self) -> Iterable[ModMatrix]:
        for i in range(0, len(self.keys), _CHUNK):
            for a in self.element_arrays(i, i + _CHUNK):
                yield ModMatrix.from_array(self.genus, self.modulus, a)


def _left_multiply(gen_arrays: np.ndarray, frontier: np.ndarray, m: int) -> np.ndarray:
    """All products s @ x for s in gens, x in frontier (gens outer), reduced mod m."""
    k, n, _ = gen_arrays.shape
    N = len(frontier)
    # (k*n, n) @ (n, N*n) in one BLAS call
    right = frontier.transpose(1, 0, 2).reshape(n, N * n).astype(np.float64)
    left = gen_arrays.reshape(k * n, n).astype(np.float64)
    prod = np.rint(left @ right).astype(np.int64) % m
    return prod.reshape(k, n, N, n).transpose(0, 2, 1, 3).reshape(k * N, n, n)


def _with_inverses(gens: Sequence[ModMatrix]) -> list[ModMatrix]:
    out, seen = [], set()
    for s in gens:
        for x in (s, s.inverse()):
            if x.entries not in seen:
                seen.add(x.entries)
                out.append(x)
    return out


def enumerate_group(
    gens: Sequence[ModMatrix],
    size_cap: int = DEFAULT_CAP,
    start: GroupTable | None = None,
) -> GroupTable:
    """Breadth-first closure of {I} (or of ``start``) under left multiplication by gens and inverses."""
    if not gens:
        raise ValueError("need at least one generator")
    _check_compatible(gens)
    g, m = gens[0].genus, gens[0].modulus
    n = 2 * g
    keyer = _Keyer(n, m)
    mult = np.array([s.array() for s in _with_inverses(gens)], dtype=np.int64)

    if start is None:
        seen = keyer.encode(np.eye(n, dtype=np.int64)[None])
    else:
        if (start.genus, start.modulus) != (g, m):
            raise ValueError("start table has a different genus or modulus")
        seen = start.keys
    frontier_keys = seen

    while len(frontier_keys):
        fresh = []
        for i in range(0, len(frontier_keys), _CHUNK):
            block = keyer.decode(frontier_keys[i : i + _CHUNK])
            keys = np.unique(keyer.encode(_left_multiply(mult, block, m)))
            keys = keys[~_contains(seen, keys)]
            if len(fresh):
                keys = keys[~np.isin(keys, np.concatenate(fresh))]
            fresh.append(keys)
        frontier_keys = np.unique(np.concatenate(fresh))
        if len(frontier_keys):
            seen = np.sort(np.concatenate([seen, frontier_keys]), kind="stable")
            if len(seen) > size_cap:
                raise GroupTooLarge(len(seen), size_cap)
            log.debug("enumerate_group: %d elements", len(seen))
    return GroupTable(g, m, tuple(gens), seen)


_AMBIENT_CACHE: dict = {}


def ambient_table(gens: Sequence[ModMatrix], size_cap: int = DEFAULT_CAP) -> GroupTable:
    """enumerate_group with a per-process cache keyed on the generator list."""
    key = (gens[0].genus, gens[0].modulus, tuple(s.entries for s in gens))
    table = _AMBIENT_CACHE.get(key)
    if table is None or len(table) > size_cap:
        if table is not None:
            raise GroupTooLarge(len(table), size_cap)
        table = enumerate_group(gens, size_cap)
        _AMBIENT_CACHE[key] = table
    return table


@dataclass(frozen=True)
class ClosureResult:
    subgroup: GroupTable
    ambient_size: int
    index: int


def normal_closure(
    ambient_gens: Sequence[ModMatrix],
    seed: ModMatrix,
    size_cap: int = DEFAULT_CAP,
    ambient: GroupTable | None = None,
) -> ClosureResult:
    """Smallest subgroup containing ``seed`` and stable under conjugation by the ambient generators."""
    _check_compatible([*ambient_gens, seed])
    if ambient is None:
        ambient = ambient_table(ambient_gens, size_cap)
    sub_gens = [seed]
    H = enumerate_group(sub_gens, size_cap)
    inverses = [s.inverse() for s in ambient_gens]
    changed = True
    while changed and len(H) < len(ambient):
        changed = False
        for s, s_inv in zip(ambient_gens, inverses):
            for h in list(sub_gens):
                c = s * h * s_inv
                if c not in H:
                    sub_gens.append(c)
                    H = enumerate_group(sub_gens, size_cap, start=H)
                    changed = True
    if len(ambient) % len(H):
        raise ArithmeticError(f"closure size {len(H)} does not divide {len(ambient)}")
    return ClosureResult(H, len(ambient), len(ambient) // len(H))


# -- evidence reports ---------------------------------------------------------


@dataclass(frozen=True)
class ClosureRecord:
    genus: int
    modulus: int
    seed: str
    closure_size: int
    ambient_size: int
    index: int

    def as_dict(self) -> dict:
        return {
            "genus": self.genus,
            "modulus": self.modulus,
            "seed": self.seed,
            "closure_size": self.closure_size,
            "ambient_size": self.ambient_size,
            "index": self.index,
        }


def chain_generators(g: int, m: int, box: int | None = None) -> list[ModMatrix]:
    """Reduced homology twists about a_0, a_1, ..., a_{2g} (a_1, a_2 in genus 1)."""
    from .curves import DEFAULT_BOX, chain
    from .symplectic import transvection

    ch = chain(g, DEFAULT_BOX if box is None else box)
    return [reduce_mod(transvection(v), m) for v in ch.humphries()]


def seed_matrix(g: int, seed: str, box: int | None = None) -> SympMatrix:
    """Integer matrix for a named seed: 'delta^k', 'hyperelliptic' or 'lemma2'."""
    from .curves import DEFAULT_BOX, chain
    from .symplectic import inverse, mul, power, transvection

    ch = chain(g, DEFAULT_BOX if box is None else box)
    if seed == "hyperelliptic":
        return power(ch.delta, 2 * g + 1)
    if seed == "lemma2":
        return mul(inverse(transvection(ch.v(1))), transvection(ch.v(2)))
    if seed == "delta":
        return ch.delta
    if seed.startswith("delta^"):
        return power(ch.delta, int(seed.split("^", 1)[1]))
    raise ValueError(f"unknown seed {seed!r}; use delta^k, hyperelliptic or lemma2")


def closure_record(g: int, m: int, seed: str, size_cap: int = DEFAULT_CAP, box: int | None = None) -> ClosureRecord:
    gens = chain_generators(g, m, box)
    res = normal_closure(gens, reduce_mod(seed_matrix(g, seed, box), m), size_cap)
    return ClosureRecord(g, m, seed, len(res.subgroup), res.ambient_size, res.index)


def closure_evidence_suite(g: int, m: int, max_k: int | None = None, size_cap: int = DEFAULT_CAP) -> list[ClosureRecord]:
    """Closures of delta^k (k = 1..max_k), of delta^{2g+1} and of t_1^{-1} t_2 in Sp(2g, Z/m).

    Finite-quotient evidence only: indices here bound nothing in Mod_g itself.
    """
    if max_k is None:
        max_k = 2 * g
    seeds = [f"delta^{k}" for k in range(1, max_k + 1)] + ["hyperelliptic", "lemma2"]
    return [closure_record(g, m, s, size_cap) for s in seeds]
