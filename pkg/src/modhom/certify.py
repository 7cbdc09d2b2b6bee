"""Replayable certificates for the vanishing of homomorphisms out of Mod_g.

A certificate is a list of steps.  ``computed`` steps are re-checked here by
the other modules of the package; ``cited-fact`` steps are external theorems
taken as axioms and are marked as such.  If any step fails the conclusion drops
to ``no-obstruction``, whatever the route would otherwise have proved.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import IntEnum
from functools import lru_cache
from math import factorial, lcm
from typing import Callable, Iterable

import numpy as np

from .abelian import abelianize, quotient_order_by_delta_power, shipped_presentation
from .census import MOD1_ORDERS, census, cyclic_order_exists
from .curves import (
    alternating_rotation,
    chain,
    cycle,
    delta_order_check,
    gamma4,
    hyperelliptic_check,
    is_even,
    multitwist,
    pants_system,
    perm_embedding,
    rotation_r1,
    rotation_r2,
    twist_rank,
)
from .symplectic import HomClass, form_matrix, SympMatrix, apply, mul, order, pairing, power, transvection


class Conclusion(IntEnum):
    TRIVIAL = 0
    ORDER_LE_2 = 1
    ORDER_LE_4 = 2
    FINITE_IMAGE = 3
    NO_OBSTRUCTION = 4

    @property
    def label(self) -> str:
        return ["trivial", "order<=2", "order<=4", "finite-image", "no-obstruction"][self]


# citations of external results, by name
POWELL = "Powell: H_1(Mod_g; Z) = 0 for g >= 3"
MUMFORD = "Mumford: H_1(Mod_2; Z) = Z/10, generated by a nonseparating twist"
JOHNSON = "Johnson: Torelli is the normal closure of a genus-1 bounding pair map"
MENNICKE = "Mennicke: a normal subgroup of Sp(2g,Z) other than 1 and {+-I} contains a congruence subgroup"
HURWITZ = "Hurwitz: a finite subgroup of Mod_h (h >= 2) has order at most 84(h-1)"
SL2Z = "finite subgroups of SL(2,Z) = Mod_1 are cyclic of order 1, 2, 3, 4 or 6"
ALT_SIMPLE = "A_n is simple for n > 5"
WIMAN = "cyclic subgroups of Mod_h have order at most 4h+2"
PRIME_RULE = "an element of prime order p in Mod_h has p <= h+1 or p = 2h+1"
NO_4H1 = "Mod_h has no element of order 4h+1"
TWIST_CLOSURE = "normal closure of t_a^{-1} t_b, for nonseparating a, b meeting once or disjoint with connected complement, is [Mod_g, Mod_g]"
CHAIN_BOUNDARY = "(t_1 t_2 t_3 t_4)^10 is the twist about the separating boundary of the 4-chain"
VAUTAW = "Vautaw: a multitwist on pairwise non-homologous disjoint nonseparating curves is in Torelli only if trivial"


@dataclass(frozen=True)
class Step:
    id: str
    claim: str
    citation: str
    fact: str
    kind: str  # "computed" | "cited-fact"
    status: str  # "verified" | "cited" | "failed"

    def as_dict(self) -> dict:
        return {
            "id": self.id,
            "claim": self.claim,
            "citation": self.citation,
            "fact": self.fact,
            "kind": self.kind,
            "status": self.status,
        }


@dataclass
class Certificate:
    target: str
    route: str
    claimed: Conclusion
    steps: list[Step] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def failed_steps(self) -> list[Step]:
        return [s for s in self.steps if s.status == "failed"]

    @property
    def conclusion(self) -> Conclusion:
        if self.failed_steps:
            return Conclusion.NO_OBSTRUCTION
        return self.claimed

    @property
    def ok(self) -> bool:
        return self.conclusion != Conclusion.NO_OBSTRUCTION

    def as_dict(self) -> dict:
        return {
            "target": self.target,
            "route": self.route,
            "conclusion": self.conclusion.label,
            "steps": [s.as_dict() for s in self.steps],
            "notes": list(self.notes),
        }


class _Builder:
    def __init__(self, faults: Iterable[str] = ()):
        self.steps: list[Step] = []
        self.faults = set(faults)

    def computed(self, sid: str, claim: str, citation: str, check: Callable[[], tuple[bool, str]]) -> bool:
        try:
            ok, fact = check()
        except Exception as exc:  # a crashing check is a failed leaf, not a crash of the certifier
            ok, fact = False, f"error: {exc}"
        if sid in self.faults:
            ok, fact = False, fact + " [fault injected]"
        self.steps.append(Step(sid, claim, citation, fact, "computed", "verified" if ok else "failed"))
        return ok

    def cited(self, sid: str, claim: str, citation: str) -> None:
        status = "failed" if sid in self.faults else "cited"
        self.steps.append(Step(sid, claim, citation, "consumed as an axiom", "cited-fact", status))


# -- leaf facts -----------------------------------------------------------------


def twist_pair_shape(u: HomClass, w: HomClass) -> bool:
    """Homology shadow of 'meet once, or disjoint with connected complement'.

    Two disjoint nonseparating curves have connected complement exactly when
    they are not homologous up to sign.
    """
    p = pairing(u, w)
    if abs(p) == 1:
        return True
    return p == 0 and not u.same_up_to_sign(w) and u.is_primitive() and w.is_primitive()


@lru_cache(maxsize=None)
def _delta_power(g: int, k: int) -> SympMatrix:
    return power(chain(g).delta, k)


def _delta_order(g: int):
    n = delta_order_check(g)
    return n == 4 * g + 2, f"order(delta) = {n} in Sp({2 * g},Z); 4g+2 = {4 * g + 2}"


def max_cyclic_order(h: int) -> int:
    if h == 0:
        return 1
    if h == 1:
        return max(MOD1_ORDERS)
    return census(h).max_order


def finite_subgroup_bound(h: int) -> int:
    if h == 0:
        return 1
    if h == 1:
        return 6
    return 84 * (h - 1)


def _delta_power_closures(g: int):
    ch = chain(g)
    shapes = []
    w = ch.v(1)
    for k in range(1, 2 * g + 1):
        w = apply(ch.delta, w)
        shapes.append(twist_pair_shape(ch.v(1), w) and w.same_up_to_sign(ch.v(k + 1)))
    return all(shapes), f"delta^k(a_1) = +-a_(k+1) meets a_1 once or is disjoint and non-homologous, k = 1..{2 * g}"


def _closure_full(b: _Builder, g: int) -> None:
    """Record that the normal closure of any delta^k, 1 <= k <= 2g, is Mod_g (g >= 3)."""
    b.computed(
        "closure-delta-k",
        "t_1^{-1} t_{k+1} lies in the normal closure of delta^k and satisfies the twist-closure hypothesis",
        TWIST_CLOSURE,
        lambda: _delta_power_closures(g),
    )
    b.cited("twist-closure", "the normal closure of delta^k contains [Mod_g, Mod_g]", TWIST_CLOSURE)
    b.cited("powell", "[Mod_g, Mod_g] = Mod_g", POWELL)


def _genus2_quotients(b: _Builder, ks: Iterable[int] = (1, 2, 3, 4)) -> None:
    ks = list(ks)
    b.computed(
        "h1-mod2",
        "the shipped genus-2 presentation abelianizes to Z/10",
        MUMFORD,
        lambda: (str(abelianize(shipped_presentation(2))) == "Z/10", f"H_1 = {abelianize(shipped_presentation(2))}"),
    )
    b.cited("mumford", "H_1(Mod_2) = Z/10", MUMFORD)
    b.computed(
        "quotient-delta-k",
        "Mod_2 / <<delta^k>> has order 2 for every admissible k",
        "abelianization of Mod_2",
        lambda: (
            all(quotient_order_by_delta_power(2, k) == 2 for k in ks),
            "orders " + ", ".join(f"k={k}: {quotient_order_by_delta_power(2, k)}" for k in ks),
        ),
    )
    b.cited("twist-closure", "Mod_2 / <<delta^k>> is abelian", TWIST_CLOSURE)


def _genus1_quotients(b: _Builder) -> None:
    b.computed(
        "h1-mod1",
        "the shipped genus-1 presentation abelianizes to Z/12",
        "H_1(SL(2,Z)) = Z/12",
        lambda: (str(abelianize(shipped_presentation(1))) == "Z/12", f"H_1 = {abelianize(shipped_presentation(1))}"),
    )
    b.computed(
        "quotient-delta-k",
        "Mod_1 / <<delta^k>> has order 2 (k=1) or 4 (k=2)",
        "abelianization of Mod_1",
        lambda: (
            (quotient_order_by_delta_power(1, 1), quotient_order_by_delta_power(1, 2)) == (2, 4),
            f"k=1: {quotient_order_by_delta_power(1, 1)}, k=2: {quotient_order_by_delta_power(1, 2)}",
        ),
    )
    b.cited("twist-closure", "Mod_1 / <<delta^k>> is abelian", TWIST_CLOSURE)


def _hyperelliptic(b: _Builder, g: int) -> None:
    b.computed(
        "hyperelliptic",
        "delta^{2g+1} acts as -I on H_1, so it is not in Torelli",
        "twist calculation",
        lambda: (hyperelliptic_check(g), f"delta^{2 * g + 1} = -I in Sp({2 * g},Z): {hyperelliptic_check(g)}"),
    )

    def torelli_pair():
        ch = chain(g)
        w = apply(_delta_power(g, 2 * g + 1), ch.v(0))
        return transvection(w) == transvection(ch.v(0)), "t_0^{-1} t_{delta^{2g+1}(a_0)} acts trivially on H_1"

    b.computed("torelli-element", "the bounding pair map t_0^{-1} t_{delta^{2g+1}(a_0)} lies in Torelli", JOHNSON, torelli_pair)
    b.cited("johnson", "Torelli lies in the normal closure of delta^{2g+1}; phi factors through Sp(2g,Z)", JOHNSON)


def _rotation_closure(rot: SympMatrix, g: int, period: int):
    d = HomClass.f(g, 1)
    good = []
    w = d
    for k in range(1, period):
        w = apply(rot, w)
        good.append(twist_pair_shape(d, w) and pairing(d, w) == 0)
    return all(good), f"r^k(d_1) disjoint from and non-homologous to d_1 for k = 1..{period - 1}"


def _alternating(b: _Builder, g: int, h_bound: int, bound_citation: str) -> None:
    name, sigma = alternating_rotation(g)
    rot = rotation_r1(g) if name == "r1" else rotation_r2(g)
    period = g if name == "r1" else g - 1
    b.computed(
        "rotation-even",
        f"eta({name}) is the block permutation of an even cycle, so it lies in A_g inside Sp(2g,Z)",
        "rotation of the handles",
        lambda: (perm_embedding(sigma) == rot and is_even(sigma), f"{name} = P({list(sigma)}), even: {is_even(sigma)}"),
    )

    def hom_check():
        s = (2, 1) + tuple(range(3, g + 1))
        t = cycle(g, g)
        st = tuple(s[t[i] - 1] for i in range(g))
        ok = perm_embedding(st) == mul(perm_embedding(s), perm_embedding(t))
        ok &= perm_embedding(s) != SympMatrix.identity(g) and perm_embedding(t) != SympMatrix.identity(g)
        return ok, "P((12) o (1..g)) = P((12)) P((1..g)); generator images nontrivial"

    b.computed("perm-embedding", "permutations of the hyperbolic pairs embed S_g in Sp(2g,Z)", "block permutations", hom_check)
    b.computed(
        "no-alternating",
        "g!/2 exceeds every finite subgroup order of the target",
        bound_citation,
        lambda: (factorial(g) // 2 > h_bound, f"g!/2 = {factorial(g) // 2} > {h_bound}"),
    )
    b.cited("alternating-simple", "A_g lies in ker(Phi)", ALT_SIMPLE)
    b.computed(
        "rotation-closure",
        f"t_d^{{-1}} t_{{{name}(d)}} lies in the normal closure of {name} and satisfies the twist-closure hypothesis",
        TWIST_CLOSURE,
        lambda: _rotation_closure(rot, g, period),
    )
    b.cited("twist-closure", f"the normal closure of {name} contains [Mod_g, Mod_g]", TWIST_CLOSURE)
    b.cited("powell", "[Mod_g, Mod_g] = Mod_g", POWELL)


def _gamma_closure():
    ch = chain(4)
    gam = gamma4()
    good = [twist_pair_shape(ch.v(1), apply(power(gam, k), ch.v(1))) for k in range(1, 5)]
    return all(good), "gamma^k(a_1) meets a_1 once or is disjoint and non-homologous, k = 1..4"


def _gamma(b: _Builder) -> None:
    b.computed(
        "gamma-order",
        "eta(gamma) has order 10 in Sp(8,Z)",
        "twist calculation",
        lambda: (order(gamma4(), 11) == 10, f"order(eta(t_1 t_2 t_3 t_4)) = {order(gamma4(), 11)}"),
    )
    b.computed(
        "gamma-torelli",
        "gamma^10 acts trivially on H_1",
        CHAIN_BOUNDARY,
        lambda: (power(gamma4(), 10).is_identity() and not power(gamma4(), 5).is_identity(), "eta(gamma)^10 = I, eta(gamma)^5 != I"),
    )
    b.cited("chain-boundary", "gamma^10 lies in Torelli", CHAIN_BOUNDARY)


# -- distinct genera ------------------------------------------------------------


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % p for p in range(2, int(n**0.5) + 1))


def certify_distinct_genera(g: int, h: int, faults: Iterable[str] = ()) -> Certificate:
    """Certificate that every homomorphism Mod_g -> Mod_h (g > h) is trivial (order <= 2 when g = 2)."""
    if not g > h >= 0:
        raise ValueError(f"need g > h >= 0, got g={g}, h={h}")
    b = _Builder(faults)
    target = f"Mod_{g} -> Mod_{h}"

    if h == 0:
        b.cited("mod0-trivial", "Mod_0 is trivial", "the mapping class group of the sphere is trivial")
        return Certificate(target, "trivial-target", Conclusion.TRIVIAL, b.steps)

    b.computed("delta-order", "delta has order 4g+2 in Mod_g", "chain twist product", lambda: _delta_order(g))
    b.computed(
        "target-torsion",
        "cyclic subgroups of Mod_h have order <= 4h+2 < 4g+2, so phi(delta^k) = 1 for some 1 <= k <= 2g+1",
        WIMAN,
        lambda: (
            max_cyclic_order(h) == 4 * h + 2 < 4 * g + 2,
            f"max cyclic order in Mod_{h} = {max_cyclic_order(h)}",
        ),
    )
    p = 2 * g + 1

    if _is_prime(p):
        route = "prime"
        b.computed(
            "prime-rule",
            f"{p} is prime, {p} > h+1 and {p} != 2h+1",
            PRIME_RULE,
            lambda: (_is_prime(p) and p > h + 1 and p != 2 * h + 1, f"p = {p}, h+1 = {h + 1}, 2h+1 = {2 * h + 1}"),
        )
        b.computed(
            "no-order-2g+1",
            f"Mod_{h} has no element of order {p}, so phi(delta^k) = 1 with k <= 2g",
            PRIME_RULE,
            lambda: (not cyclic_order_exists(h, p), f"order {p} realizable in Mod_{h}: {cyclic_order_exists(h, p)}"),
        )
        if g >= 3:
            _closure_full(b, g)
            claimed = Conclusion.TRIVIAL
        else:
            _genus2_quotients(b)
            claimed = Conclusion.ORDER_LE_2
    elif g == 4:
        route = "genus-4"
        if h in (1, 2):
            cite = WIMAN if h == 1 else NO_4H1
            b.computed(
                "no-order-2g+1",
                f"Mod_{h} has no element of order 9, so phi(delta^k) = 1 with k <= 8",
                cite,
                lambda: (not cyclic_order_exists(h, 9), f"order 9 realizable in Mod_{h}: {cyclic_order_exists(h, 9)}"),
            )
            _closure_full(b, g)
        else:
            _hyperelliptic(b, g)
            _gamma(b)
            b.computed(
                "no-order-5",
                "5 > h+1 and 5 != 2h+1, so Mod_3 has no element of order 5 and phi(gamma^k) = 1 for some k < 5",
                PRIME_RULE,
                lambda: (5 > h + 1 and 5 != 2 * h + 1 and not cyclic_order_exists(h, 5), f"order 5 realizable in Mod_{h}: {cyclic_order_exists(h, 5)}"),
            )
            b.computed(
                "closure-gamma-k",
                "t_1^{-1} t_{gamma^k(a_1)} lies in the normal closure of gamma^k and satisfies the twist-closure hypothesis",
                TWIST_CLOSURE,
                _gamma_closure,
            )
            b.cited("twist-closure", "the normal closure of gamma^k contains [Mod_4, Mod_4]", TWIST_CLOSURE)
            b.cited("powell", "[Mod_4, Mod_4] = Mod_4", POWELL)
        claimed = Conclusion.TRIVIAL
    elif g > 5:
        route = "alternating"
        _hyperelliptic(b, g)
        _alternating(b, g, finite_subgroup_bound(h), HURWITZ if h >= 2 else SL2Z)
        if h >= 2:
            b.cited("hurwitz", f"finite subgroups of Mod_{h} have order <= {84 * (h - 1)}", HURWITZ)
        else:
            b.cited("sl2z-finite", "finite subgroups of Mod_1 have order <= 6", SL2Z)
        claimed = Conclusion.TRIVIAL
    else:  # pragma: no cover - g in {2, 3, 5} has 2g+1 prime
        raise AssertionError(f"no route for g={g}")
    return Certificate(target, route, claimed, b.steps)


# -- general targets ------------------------------------------------------------


@dataclass(frozen=True)
class GroupProfile:
    """What is known to be missing from a target group H."""

    excluded_orders: frozenset[int] = frozenset()
    max_finite_subgroup: int | None = None
    max_abelian_rank: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "excluded_orders", frozenset(int(n) for n in self.excluded_orders))
        if any(n < 1 for n in self.excluded_orders):
            raise ValueError("excluded orders must be positive")
        if self.max_finite_subgroup is not None and self.max_finite_subgroup < 1:
            raise ValueError("max finite subgroup order must be positive")
        if self.max_abelian_rank is not None and self.max_abelian_rank < 0:
            raise ValueError("max abelian rank must be nonnegative")

    def excludes(self, n: int) -> bool:
        return n in self.excluded_orders


def mod_profile(h: int, upto: int) -> GroupProfile:
    """Profile of Mod_h: orders 2..upto missing from its census, Hurwitz and rank bounds."""
    excluded = {n for n in range(2, upto + 1) if not cyclic_order_exists(h, n)}
    rank = 0 if h == 0 else 1 if h == 1 else 3 * h - 3
    return GroupProfile(frozenset(excluded), finite_subgroup_bound(h), rank)


def _route_no_order_2g1(g: int, prof: GroupProfile, faults) -> Certificate | None:
    p = 2 * g + 1
    if not prof.excludes(p):
        return None
    b = _Builder(faults)
    b.computed("profile-2g+1", f"H has no element of order {p}", "profile", lambda: (prof.excludes(p), f"{p} excluded"))
    b.computed("delta-order", "delta has order 4g+2 in Mod_g", "chain twist product", lambda: _delta_order(g))

    def divisors():
        n = 4 * g + 2
        small = [d for d in range(1, n) if n % d == 0 and d != p]
        return max(small) <= 2 * g, f"divisors of {n} other than {p} and {n} are <= {2 * g}"

    b.computed("k-bound", "the order of phi(delta) is some k <= 2g", "divisors of 4g+2", divisors)
    if g >= 3:
        _closure_full(b, g)
        claimed = Conclusion.TRIVIAL
    elif g == 2:
        _genus2_quotients(b)
        claimed = Conclusion.ORDER_LE_2
    else:
        _genus1_quotients(b)
        claimed = Conclusion.ORDER_LE_4
    return Certificate("", "no-element-of-order-2g+1", claimed, b.steps)


@lru_cache(maxsize=None)
def _rotation_order(g: int, name: str) -> int:
    rot = rotation_r1(g) if name == "r1" else rotation_r2(g)
    return order(rot, g + 1)


def _route_rotation(g: int, prof: GroupProfile, faults) -> Certificate | None:
    if g < 3:
        return None
    if prof.excludes(g):
        name, rot, period = "r1", rotation_r1(g), g
    elif prof.excludes(g - 1):
        name, rot, period = "r2", rotation_r2(g), g - 1
    else:
        return None
    b = _Builder(faults)
    b.computed("profile-rotation", f"H has no element of order {period}", "profile", lambda: (prof.excludes(period), f"{period} excluded"))
    b.computed(
        "rotation-order",
        f"{name} has order {period}, so phi({name}^k) = 1 for some 1 <= k < {period}",
        "rotation of the handles",
        lambda: (_rotation_order(g, name) == period, f"order({name}) = {_rotation_order(g, name)}"),
    )
    b.computed(
        "rotation-closure",
        f"t_d^{{-1}} t_{{{name}^k(d)}} lies in the normal closure of {name}^k and satisfies the twist-closure hypothesis",
        TWIST_CLOSURE,
        lambda: _rotation_closure(rot, g, period),
    )
    b.cited("twist-closure", f"the normal closure of {name}^k contains [Mod_g, Mod_g]", TWIST_CLOSURE)
    b.cited("powell", "[Mod_g, Mod_g] = Mod_g", POWELL)
    cert = Certificate("", f"no-element-of-order-{period}", Conclusion.TRIVIAL, b.steps)
    cert.notes.append("either missing order (g or g-1) suffices")
    return cert


def _no_4g2_then_factor(b: _Builder, g: int, prof: GroupProfile) -> None:
    n = 4 * g + 2
    b.computed("profile-4g+2", f"H has no element of order {n}", "profile", lambda: (prof.excludes(n), f"{n} excluded"))
    b.computed("delta-order", "delta has order 4g+2; phi(delta^k) = 1 for some k <= 2g+1", "chain twist product", lambda: _delta_order(g))
    _closure_full(b, g)  # k <= 2g: trivial image
    _hyperelliptic(b, g)  # k = 2g+1: phi factors through Sp(2g,Z)


def _route_alternating(g: int, prof: GroupProfile, faults) -> Certificate | None:
    if g <= 5 or not prof.excludes(4 * g + 2) or prof.max_finite_subgroup is None:
        return None
    if not prof.max_finite_subgroup < factorial(g) // 2:
        return None
    b = _Builder(faults)
    _no_4g2_then_factor(b, g, prof)
    _alternating(b, g, prof.max_finite_subgroup, "profile")
    cert = Certificate("", "no-order-4g+2-no-alternating-subgroup", Conclusion.TRIVIAL, b.steps)
    cert.notes.append("finite subgroup bound checked against g!/2 (no copy of A_g)")
    return cert


def _route_genus4(g: int, prof: GroupProfile, faults) -> Certificate | None:
    if g != 4 or not (prof.excludes(18) and prof.excludes(5)):
        return None
    b = _Builder(faults)
    _no_4g2_then_factor(b, g, prof)
    _gamma(b)
    b.computed("profile-5", "H has no element of order 5, so phi(gamma^2) = 1", "profile", lambda: (prof.excludes(5), "5 excluded"))
    b.computed(
        "closure-gamma-k",
        "t_1^{-1} t_{gamma^k(a_1)} lies in the normal closure of gamma^k and satisfies the twist-closure hypothesis",
        TWIST_CLOSURE,
        _gamma_closure,
    )
    b.cited("twist-closure", "the normal closure of gamma^2 contains [Mod_4, Mod_4]", TWIST_CLOSURE)
    return Certificate("", "genus-4-gamma", Conclusion.TRIVIAL, b.steps)


def vautaw_shadow(g: int, samples: int = 1000, bound: int = 3, seed: int = 0) -> tuple[bool, str]:
    """Random nonzero multitwists on the pants system act nontrivially on H_1.

    For disjoint classes the multitwist acts as I - sum n_i v_i v_i^T J, so it is
    the identity iff sum n_i v_i v_i^T = 0.  A few samples are also cross-checked
    against the product of transvection powers.
    """
    sys = pants_system(g)
    k = len(sys.classes)
    rng = np.random.default_rng(seed)
    ex = rng.integers(-bound, bound + 1, size=(samples, k))
    while (zero := ~ex.any(axis=1)).any():
        ex[zero] = rng.integers(-bound, bound + 1, size=(int(zero.sum()), k))
    tensors = np.array([np.outer(v.coords, v.coords).ravel() for v in sys.classes], dtype=np.int64)
    sums = ex @ tensors
    J = np.array(form_matrix(g), dtype=np.int64)
    n = 2 * g
    for row in range(min(samples, 5)):
        direct = np.array(multitwist(sys, [int(x) for x in ex[row]]).entries, dtype=np.int64)
        if not np.array_equal(direct, np.eye(n, dtype=np.int64) - sums[row].reshape(n, n) @ J):
            return False, f"closed form disagrees with the twist product for {ex[row].tolist()}"
    trivial = np.flatnonzero(~sums.any(axis=1))
    if trivial.size:
        return False, f"multitwist {ex[trivial[0]].tolist()} acts trivially"
    return True, f"{samples} random nonzero multitwists with exponents in [-{bound},{bound}] act nontrivially"


@lru_cache(maxsize=None)
def _pants_rank(g: int) -> int:
    return twist_rank(pants_system(g))


def _route_finite(g: int, prof: GroupProfile, faults) -> Certificate | None:
    if g < 3 or not prof.excludes(4 * g + 2) or prof.max_abelian_rank is None:
        return None
    if not prof.max_abelian_rank < 3 * g - 3:
        return None
    b = _Builder(faults)
    _no_4g2_then_factor(b, g, prof)
    sys = pants_system(g)
    b.computed(
        "pants-system",
        "3g-3 disjoint, pairwise non-homologous nonseparating classes",
        "pants decomposition",
        lambda: (not sys.violations() and len(sys.classes) == 3 * g - 3
                 and all(twist_pair_shape(u, v) for u, v in itertools.combinations(sys.classes, 2)),
                 f"{len(sys.classes)} classes, pattern violations: {len(sys.violations())}"),
    )
    b.computed(
        "twist-rank",
        "the tensors v_i v_i^T are independent, so eta is injective on A = Z^{3g-3}",
        VAUTAW,
        lambda: (_pants_rank(g) == 3 * g - 3, f"twist_rank = {_pants_rank(g)}, 3g-3 = {3 * g - 3}"),
    )
    b.cited("vautaw", "A meets Torelli trivially", VAUTAW)

    def unipotent():
        # T(v)^n = I - n v v^T J; (v v^T J)(w w^T J) = <v, w> v w^T J
        zero = all(pairing(u, v) == 0 for u in sys.classes for v in sys.classes)
        return zero, "eta(A) = {I + N : N^2 = 0} since all pairings vanish: unipotent, never -I"

    b.computed("no-minus-identity", "eta(A) avoids the center {+-I}", "unipotence", unipotent)
    b.computed(
        "rank-excess",
        f"H has no free abelian subgroup of rank {3 * g - 3}, so ker(Phi) meets eta(A) nontrivially",
        "profile",
        lambda: (prof.max_abelian_rank < 3 * g - 3, f"max rank {prof.max_abelian_rank} < {3 * g - 3}"),
    )
    b.cited("mennicke", "ker(Phi) contains a congruence subgroup, so the image is finite", MENNICKE)
    return Certificate("", "rank-bound-finite-image", Conclusion.FINITE_IMAGE, b.steps)


ROUTES = (_route_no_order_2g1, _route_rotation, _route_alternating, _route_genus4, _route_finite)


def certify_general_target(g: int, profile: GroupProfile, faults: Iterable[str] = ()) -> Certificate:
    """Strongest conclusion about phi: Mod_g -> H that the profile of H supports."""
    if g < 1:
        raise ValueError("genus must be positive")
    faults = tuple(faults)
    found = [c for c in (route(g, profile, faults) for route in ROUTES) if c is not None]
    target = f"Mod_{g} -> H"
    if not found:
        return Certificate(target, "none", Conclusion.NO_OBSTRUCTION, notes=["no hypothesis of any route holds"])
    best = min(found, key=lambda c: c.claimed)
    best.target = target
    others = [c.route for c in found if c is not best]
    if others:
        best.notes.append("also applicable: " + ", ".join(others))
    return best


# -- index divisibility -----------------------------------------------------------


@dataclass(frozen=True)
class Divisibility:
    genus: int
    divisors: tuple[int, int, int]
    lcm: int
    witness_orders: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"genus": self.genus, "divisors": list(self.divisors), "lcm": self.lcm, "witness_orders": self.witness_orders}


def index_divisibility(g: int, witnesses: bool = False) -> Divisibility:
    """Divisors g-1, g, 2g+1 of the index of any proper finite-index normal subgroup of Mod_g.

    With ``witnesses`` the orders of r2, r1 and delta^2 on homology are computed
    as well; each must equal the matching divisor.
    """
    if g < 3:
        raise ValueError("the divisibility statement needs g >= 3")
    divs = (g - 1, g, 2 * g + 1)
    orders = {}
    if witnesses:
        orders = {
            "r2": _rotation_order(g, "r2"),
            "r1": _rotation_order(g, "r1"),
            "delta^2": order(_delta_power(g, 2), 2 * g + 2),
        }
    return Divisibility(g, divs, lcm(*divs), orders)


__all__ = [
    "Certificate",
    "Conclusion",
    "Divisibility",
    "GroupProfile",
    "Step",
    "certify_distinct_genera",
    "certify_general_target",
    "index_divisibility",
    "twist_pair_shape",
    "mod_profile",
    "vautaw_shadow",
]
