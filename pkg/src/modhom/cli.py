"""Command line front end: ``modhom <command> ...``.

Exit status is 0 when every check passes, 1 when a check fails and 2 on bad
usage.  ``--format machine`` prints one JSON document per invocation.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable

from . import __version__
from .abelian import MalformedWord, Presentation, abelianize
from .census import census, order_bound
from .certify import (
    GroupProfile,
    certify_distinct_genera,
    certify_general_target,
    index_divisibility,
)
from .curves import (
    CurveSystem,
    PatternError,
    alternating_rotation,
    chain,
    chain_action_check,
    delta_order_check,
    gamma4,
    hyperelliptic_check,
    pants_system,
    rotation_r1,
    rotation_r2,
    twist_rank,
)
from .finite import GroupTooLarge, closure_record
from .finite import DEFAULT_CAP
from .symplectic import OrderExceedsCap, order, power

SCHEMA_VERSION = 1


class UsageError(Exception):
    pass


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise UsageError(msg)


# each command returns (ok, result dict, text lines)
Outcome = tuple[bool, dict, list[str]]


def cmd_delta_order(a) -> Outcome:
    _need(a.g >= 1, "genus must be positive")
    n = delta_order_check(a.g, a.seed_box)
    ok = n == 4 * a.g + 2
    return ok, {"genus": a.g, "order": n, "expected": 4 * a.g + 2}, [f"genus: {a.g}", f"order(delta): {n}", f"4g+2: {4 * a.g + 2}"]


def cmd_chain_check(a) -> Outcome:
    _need(a.g >= 1, "genus must be positive")
    rep = chain_action_check(a.g, a.seed_box)
    ch = chain(a.g, a.seed_box)
    res = {
        "genus": a.g,
        "classes": {f"a{i + 1}": list(v.coords) for i, v in enumerate(ch.classes)},
        "a0": list(ch.extra.coords) if ch.extra is not None else None,
        "signs": list(rep.signs),
        "failures": list(rep.failures),
    }
    lines = [f"genus: {a.g}"]
    lines += [f"a{i + 1}: {' '.join(map(str, v.coords))}" for i, v in enumerate(ch.classes)]
    if ch.extra is not None:
        lines.append(f"a0: {' '.join(map(str, ch.extra.coords))}")
    lines.append("delta(a_i) signs: " + " ".join("+" if s > 0 else "-" for s in rep.signs))
    lines += [f"failure: {f}" for f in rep.failures]
    return rep.ok, res, lines


def cmd_hyperelliptic(a) -> Outcome:
    _need(a.g >= 1, "genus must be positive")
    minus = hyperelliptic_check(a.g, a.seed_box)
    n = delta_order_check(a.g, a.seed_box)
    ok = minus and n == 4 * a.g + 2
    res = {"genus": a.g, "delta_power": 2 * a.g + 1, "is_minus_identity": minus, "order": n}
    return ok, res, [f"genus: {a.g}", f"delta^{2 * a.g + 1} = -I: {minus}", f"order(delta): {n}"]


def cmd_rotations(a) -> Outcome:
    _need(a.g >= 3, "rotations need genus >= 3")
    o1 = order(rotation_r1(a.g), a.g + 1)
    o2 = order(rotation_r2(a.g), a.g + 1)
    name, sigma = alternating_rotation(a.g)
    ok = o1 == a.g and o2 == a.g - 1
    res = {"genus": a.g, "r1_order": o1, "r2_order": o2, "even_rotation": name, "even_cycle": list(sigma)}
    return ok, res, [f"genus: {a.g}", f"order(r1): {o1}", f"order(r2): {o2}", f"even rotation: {name}"]


def cmd_gamma4(a) -> Outcome:
    gam = gamma4(a.seed_box)
    n = order(gam, 11)
    tenth = power(gam, 10).is_identity()
    ok = n == 10 and tenth
    return ok, {"genus": 4, "order": n, "tenth_power_identity": tenth}, [f"order(eta(gamma)): {n}", f"gamma^10 = I: {tenth}"]


def cmd_quotient(a) -> Outcome:
    _need(a.g >= 1 and a.m >= 2, "need g >= 1 and m >= 2")
    rec = closure_record(a.g, a.m, a.seed, a.cap, a.seed_box)
    res = rec.as_dict()
    res["note"] = "finite-quotient evidence only"
    lines = [f"{k}: {v}" for k, v in res.items()]
    return True, res, lines


def cmd_census(a) -> Outcome:
    _need(a.g >= 1, "genus must be positive")
    rep = census(a.g)
    res = rep.as_dict()
    viol = rep.prime_rule_violations()
    ok = rep.max_order == 4 * a.g + 2 and (4 * a.g + 1) not in rep.realizable_orders and not viol
    res["prime_rule_violations"] = viol
    limit = order_bound(a.g) if a.g >= 2 else 6
    lines = [f"genus: {a.g}", f"search limit: {limit}", f"max order: {rep.max_order}", "order  witness (n, h; branch indices)"]
    for n in rep.realizable_orders:
        w = rep.witness.get(n)
        desc = f"h={w.h}; {','.join(map(str, w.branch_indices)) or '-'}" if w else "SL(2,Z) torsion"
        lines.append(f"{n:>5}  {desc}")
    if a.figure:
        from .plotting import census_figure

        res["figure"] = str(census_figure(rep, a.figure))
        lines.append(f"figure: {res['figure']}")
    return ok, res, lines


def cmd_abelianize(a) -> Outcome:
    try:
        p = Presentation.load(a.file)
    except OSError as exc:
        raise UsageError(str(exc)) from None
    inv = abelianize(p)
    res = {"generators": p.generator_count, "relators": len(p.relators), "torsion": list(inv.torsion), "free_rank": inv.free_rank, "group": str(inv)}
    return True, res, [f"H_1: {inv}"]


def cmd_rank(a) -> Outcome:
    if a.system:
        try:
            with open(a.system) as fh:
                sysm = CurveSystem.loads(fh.read())
        except OSError as exc:
            raise UsageError(str(exc)) from None
        viol = sysm.violations()
        if viol:
            return False, {"genus": sysm.genus, "violations": viol}, [f"violation: {v}" for v in viol]
        expected = None
    else:
        _need(a.g is not None and a.g >= 3, "give a genus >= 3 or --system FILE")
        sysm = pants_system(a.g)
        expected = 3 * a.g - 3
    r = twist_rank(sysm)
    ok = expected is None or r == expected
    res = {"genus": sysm.genus, "classes": len(sysm.classes), "twist_rank": r, "expected": expected}
    return ok, res, [f"genus: {sysm.genus}", f"classes: {len(sysm.classes)}", f"twist rank: {r}"]


def _certificate_lines(cert) -> list[str]:
    lines = [f"target: {cert.target}", f"route: {cert.route}", f"conclusion: {cert.conclusion.label}"]
    for s in cert.steps:
        lines.append(f"[{s.status}] {s.id}: {s.claim} ({s.fact}; {s.citation})")
    lines += [f"note: {n}" for n in cert.notes]
    return lines


def cmd_certify(a) -> Outcome:
    _need(a.g > a.h >= 0, "need g > h >= 0")
    cert = certify_distinct_genera(a.g, a.h, faults=a.inject_fault)
    return cert.ok, cert.as_dict(), _certificate_lines(cert)


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a list of integers: {text!r}") from None


def cmd_certify_profile(a) -> Outcome:
    _need(a.g >= 1, "genus must be positive")
    prof = GroupProfile(frozenset(a.exclude_orders), a.max_subgroup, a.max_rank)
    cert = certify_general_target(a.g, prof, faults=a.inject_fault)
    # no applicable route is an answer, not a failed check
    return not cert.failed_steps, cert.as_dict(), _certificate_lines(cert)


def cmd_divisibility(a) -> Outcome:
    _need(a.g >= 3, "divisibility needs g >= 3")
    d = index_divisibility(a.g, witnesses=a.witnesses)
    ok = not a.witnesses or d.witness_orders == {"r2": a.g - 1, "r1": a.g, "delta^2": 2 * a.g + 1}
    lines = [f"genus: {a.g}", "divisors: " + " ".join(map(str, d.divisors)), f"lcm: {d.lcm}"]
    lines += [f"order({k}): {v}" for k, v in d.witness_orders.items()]
    return ok, d.as_dict(), lines


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "machine"), default=argparse.SUPPRESS)
    common.add_argument("--seed-box", type=int, default=argparse.SUPPRESS, help="coordinate box for the chain solver")

    p = argparse.ArgumentParser(prog="modhom", description=__doc__.splitlines()[0], parents=[common])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name: str, fn: Callable, help: str):
        sp = sub.add_parser(name, help=help, parents=[common])
        sp.set_defaults(fn=fn)
        return sp

    add("delta-order", cmd_delta_order, "order of delta on homology").add_argument("g", type=int)
    add("chain-check", cmd_chain_check, "delta permutes the chain classes").add_argument("g", type=int)
    add("hyperelliptic", cmd_hyperelliptic, "delta^{2g+1} = -I").add_argument("g", type=int)
    add("rotations", cmd_rotations, "orders of the handle rotations").add_argument("g", type=int)
    add("gamma4", cmd_gamma4, "order of t1 t2 t3 t4 in genus 4")
    sp = add("quotient", cmd_quotient, "normal closure of a seed in Sp(2g, Z/m)")
    sp.add_argument("g", type=int)
    sp.add_argument("m", type=int)
    sp.add_argument("--seed", default="delta^1", help="delta^k, lemma2 or hyperelliptic")
    sp.add_argument("--cap", type=int, default=DEFAULT_CAP)
    sp = add("census", cmd_census, "cyclic orders realizable in Mod_g")
    sp.add_argument("g", type=int)
    sp.add_argument("--figure", metavar="PATH", help="also write a plot of the census")
    add("abelianize", cmd_abelianize, "abelianize a presentation file").add_argument("file")
    sp = add("rank", cmd_rank, "rank of the twist group of a disjoint system")
    sp.add_argument("g", type=int, nargs="?")
    sp.add_argument("--system", metavar="FILE")
    sp = add("certify", cmd_certify, "certificate for Mod_g -> Mod_h, g > h")
    sp.add_argument("g", type=int)
    sp.add_argument("h", type=int)
    sp.add_argument("--inject-fault", action="append", default=[], metavar="STEP", help="force a step to fail")
    sp = add("certify-profile", cmd_certify_profile, "certificate for Mod_g -> H from a profile of H")
    sp.add_argument("g", type=int)
    sp.add_argument("--exclude-orders", type=_int_list, default=[], metavar="LIST")
    sp.add_argument("--max-rank", type=int)
    sp.add_argument("--max-subgroup", type=int)
    sp.add_argument("--inject-fault", action="append", default=[], metavar="STEP")
    sp = add("divisibility", cmd_divisibility, "divisors of finite normal indices")
    sp.add_argument("g", type=int)
    sp.add_argument("--witnesses", action="store_true", help="also compute orders of r2, r1, delta^2")
    return p


def _emit(args, ok: bool, result: dict, lines: list[str], error: str | None = None) -> None:
    if args.format == "machine":
        doc = {"schema_version": SCHEMA_VERSION, "command": args.command, "ok": ok, "result": result}
        if error:
            doc["error"] = error
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        for ln in lines:
            print(ln)
        if error:
            print(f"error: {error}", file=sys.stderr)
        print("status: " + ("verified" if ok else "FAILED"))


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.format = getattr(args, "format", "text")
    args.seed_box = getattr(args, "seed_box", 1)
    if args.seed_box < 1:
        parser.error("--seed-box must be positive")
    try:
        ok, result, lines = args.fn(args)
    except UsageError as exc:
        parser.error(str(exc))
    except (GroupTooLarge, OrderExceedsCap, PatternError) as exc:
        _emit(args, False, {}, [], str(exc))
        return 1
    except (ValueError, MalformedWord) as exc:
        if args.format == "machine":
            _emit(args, False, {}, [], str(exc))
        else:
            print(f"modhom {args.command}: error: {exc}", file=sys.stderr)
        return 2
    _emit(args, ok, result, lines)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
