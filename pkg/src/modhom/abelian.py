"""Abelianization of finitely presented groups via Smith normal form."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from math import gcd, prod
from pathlib import Path
from typing import Sequence

from .snf import smith_normal_form

log = logging.getLogger(__name__)

Word = tuple[int, ...]


class MalformedWord(ValueError):
    pass


@dataclass(frozen=True)
class Presentation:
    generator_count: int
    relators: tuple[Word, ...]

    def __post_init__(self):
        rels = []
        for w in self.relators:
            w = tuple(int(x) for x in w)
            check_word(w, self.generator_count)
            if not w:
                log.warning("dropping empty relator")
                continue
            rels.append(w)
        object.__setattr__(self, "relators", tuple(rels))

    @classmethod
    def loads(cls, text: str) -> "Presentation":
        lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln]
        if not lines:
            raise ValueError("empty presentation")
        head = lines[0].split()
        if len(head) != 2 or head[0] != "generators":
            raise ValueError(f"bad header {lines[0]!r}; expected 'generators n'")
        try:
            words = [tuple(int(t) for t in ln.split()) for ln in lines[1:]]
        except ValueError as exc:
            raise MalformedWord(str(exc)) from None
        return cls(int(head[1]), tuple(words))

    @classmethod
    def load(cls, path: str | Path) -> "Presentation":
        return cls.loads(Path(path).read_text())

    def dumps(self) -> str:
        return "\n".join([f"generators {self.generator_count}"] + [" ".join(map(str, w)) for w in self.relators]) + "\n"

    def relation_matrix(self) -> list[list[int]]:
        return [exponent_sums(w, self.generator_count) for w in self.relators]


def check_word(word: Sequence[int], n: int) -> None:
    for x in word:
        if x == 0 or abs(x) > n:
            raise MalformedWord(f"letter {x} out of range for {n} generators")


def exponent_sums(word: Sequence[int], n: int) -> list[int]:
    check_word(word, n)
    out = [0] * n
    for x in word:
        out[abs(x) - 1] += 1 if x > 0 else -1
    return out


@dataclass(frozen=True)
class AbelianInvariants:
    """Z^free_rank + sum Z/d_i, with 1 < d_1 | d_2 | ..."""

    torsion: tuple[int, ...]
    free_rank: int

    @property
    def order(self) -> int | None:
        return None if self.free_rank else prod(self.torsion)

    def __str__(self) -> str:
        parts = [f"Z/{d}" for d in self.torsion] + ["Z"] * self.free_rank
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class Abelianization:
    presentation: Presentation
    invariants: AbelianInvariants
    # columns of V that survive: (modulus, column index); modulus 0 = free
    _coords: tuple[tuple[int, int], ...]
    _V: tuple[tuple[int, ...], ...]

    def image(self, word: Sequence[int]) -> tuple[int, ...]:
        """Coordinates of the word's class, one per cyclic factor (torsion first, then free)."""
        x = exponent_sums(word, self.presentation.generator_count)
        out = []
        for d, j in self._coords:
            y = sum(x[i] * self._V[i][j] for i in range(len(x)))
            out.append(y % d if d else y)
        return tuple(out)

    def element_order(self, coords: Sequence[int]) -> int | None:
        """Order of an element given in ``image`` coordinates; None if infinite."""
        out = 1
        for (d, _), c in zip(self._coords, coords):
            if d == 0:
                if c:
                    return None
                continue
            out = out * (d // gcd(c, d)) // gcd(out, d // gcd(c, d))
        return out

    def quotient_order(self, word: Sequence[int]) -> int:
        """|H_1 / <image of word>| for finite H_1."""
        total = self.invariants.order
        if total is None:
            raise ValueError("abelianization is infinite")
        return total // self.element_order(self.image(word))


def abelianize_full(p: Presentation) -> Abelianization:
    rel = p.relation_matrix()
    n = p.generator_count
    if not rel:
        rel = [[0] * n]
    snf = smith_normal_form(rel)
    diag = list(snf.invariant_factors) + [0] * (n - len(snf.invariant_factors))
    coords = [(d, j) for j, d in enumerate(diag) if d != 1]
    coords.sort(key=lambda t: (t[0] == 0, t[1]))
    torsion = tuple(d for d, _ in coords if d)
    free = sum(1 for d, _ in coords if d == 0)
    return Abelianization(p, AbelianInvariants(torsion, free), tuple(coords), snf.V)


def abelianize(p: Presentation) -> AbelianInvariants:
    """Invariant factors of the cokernel of the relator exponent-sum matrix."""
    return abelianize_full(p).invariants


def image_in_abelianization(word: Sequence[int], p: Presentation) -> tuple[int, ...]:
    return abelianize_full(p).image(word)


@lru_cache(maxsize=None)
def shipped_presentation(genus: int) -> Presentation:
    """The bundled presentation of Mod_1 or Mod_2 on chain twists."""
    if genus not in (1, 2):
        raise ValueError("presentations ship for genus 1 and 2 only")
    text = resources.files("modhom").joinpath(f"data/mod{genus}.pres").read_text()
    return Presentation.loads(text)


def delta_word(genus: int, k: int = 1) -> Word:
    """(t_1 ... t_{2g})^k over the chain generators."""
    return tuple(range(1, 2 * genus + 1)) * k


def quotient_order_by_delta_power(genus: int, k: int) -> int:
    """Order of H_1(Mod_g) / <class of delta^k> for g in {1, 2}."""
    if genus not in (1, 2):
        raise ValueError("only g = 1, 2 have nontrivial abelianization")
    if not 1 <= k <= 2 * genus:
        raise ValueError(f"k must lie in 1..{2 * genus}")
    return abelianize_full(shipped_presentation(genus)).quotient_order(delta_word(genus, k))
