"""Command-line frontend.

Exit status: 0 for positive verdicts, 1 for negative ones (no finite
expansion, not integral, a failed merge condition), 2 for usage and parse
errors, 3 when a budget runs out or a verdict is inconclusive.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
from pathlib import Path

from . import __version__
from .cns import FEP, GENERATORS, INCONCLUSIVE, UNITS, WitnessReport, decide_fep, is_cns
from .crt_merge import NotIntegral, merge_digit_systems, psi, psi_inverse
from .gb_ideal import FiniteQuotient, NotCoprimeError, strong_gb
from .intpoly import IntPoly, PolyParseError, format_poly, parse_poly, resultant
from .quotient import BUDGET, FINITE, DigitSystem, backstep, default_budget, expand
from .simultaneous import (
    SearchSpaceError,
    SimSystem,
    clique_search,
    corsim_classify,
    sim_expand,
    sim_trajectory,
    verify_sim,
)

OK, NEGATIVE, USAGE, UNDECIDED = 0, 1, 2, 3


class InputError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    # let "-3,-4" and "-x+1" through as values rather than options
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self._negative_number_matcher = re.compile(r"^-[\d xX(\[]")


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        payload = {"version": __version__, "command": args.cmd, **payload}
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(text)


def _poly(text: str) -> IntPoly:
    return parse_poly(text)


def _split(text: str) -> list[str]:
    return [t.strip() for t in text.split(",") if t.strip()]


def _ints(text: str) -> list[int]:
    try:
        return [int(t) for t in _split(text)]
    except ValueError:
        raise InputError(f"expected a comma-separated list of integers, got {text!r}") from None


def _digit_text(d) -> str:
    s = str(d)
    return s if re.fullmatch(r"-?\d+", s) else f"({s})"


# -- digit system files ------------------------------------------------------


def load_digit_system(path) -> DigitSystem:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read digit system {path}: {exc}") from None
    if "modulus" not in data:
        raise InputError(f"{path}: missing 'modulus'")
    modulus = _poly(str(data["modulus"]))
    digits = data.get("digits")
    if digits is None:
        return DigitSystem.classical(modulus)
    return DigitSystem.create(modulus, [_poly(str(d)) for d in digits])


def dump_digit_system(ds: DigitSystem) -> dict:
    return {
        "version": __version__,
        "modulus": str(ds.modulus),
        "digits": [format_poly(d) for d in ds.digits],
    }


def _system(args) -> DigitSystem:
    modulus = _poly(args.modulus)
    if args.digits:
        return DigitSystem.create(modulus, [_poly(d) for d in _split(args.digits)])
    return DigitSystem.classical(modulus)


# -- commands ----------------------------------------------------------------


def cmd_expand(args) -> int:
    ds = _system(args)
    value = ds.ring.reduce(_poly(args.value))
    exp = expand(ds, value, args.budget)
    vals = [format_poly(ds.digits[i], "X") for i in exp.digits]
    shown = vals[::-1] if args.msb else vals
    lines = []
    if args.trace:
        state = value
        for i in exp.digits:
            _, nxt = backstep(ds, state)
            lines.append(f"{ds.ring.format(state)} --{_digit_text(format_poly(ds.digits[i], 'X'))}--> {ds.ring.format(nxt)}")
            state = nxt
    if exp.kind == FINITE:
        lines.append(" ".join(_digit_text(v) for v in shown) or "(empty)")
    elif exp.kind == BUDGET:
        lines.append(f"budget of {args.budget} steps exhausted")
    else:
        cyc = [format_poly(ds.digits[i], "X") for i in exp.cycle_digits]
        pre = vals[: len(vals) - len(cyc)]
        lines.append(
            f"periodic: preperiod {' '.join(map(_digit_text, pre)) or '(none)'}; "
            f"cycle {' '.join(map(_digit_text, cyc))}"
        )
    payload = {
        "kind": exp.kind,
        "digits": shown,
        "order": "msb" if args.msb else "lsb",
        "cycle_states": [ds.ring.format(s) for s in exp.cycle],
    }
    _emit(args, payload, "\n".join(lines))
    return {FINITE: OK, BUDGET: UNDECIDED}.get(exp.kind, NEGATIVE)


def _report_dict(rep: WitnessReport, ds: DigitSystem) -> dict:
    return {
        "verdict": rep.verdict,
        "witness_size": rep.witness_size,
        "start": rep.start,
        "L": rep.L,
        "expanding": rep.expanding,
        "reason": rep.reason,
        "cycles": [
            {"states": [ds.ring.format(s) for s in states], "digits": [format_poly(ds.digits[i], "X") for i in labels]}
            for states, labels in rep.cycles
        ],
    }


def cmd_check_cns(args) -> int:
    ds = _system(args)
    classical = not args.digits
    try:
        if classical and args.start == GENERATORS:
            rep = is_cns(ds.modulus, report=True)
        else:
            rep = decide_fep(ds, args.start, max_states=args.max_states)
    except RuntimeError as exc:
        rep = WitnessReport(INCONCLUSIVE, 0, args.start, reason=str(exc))
    lines = [f"{ds}: {rep.verdict}"]
    if rep.witness_size:
        lines.append(f"witness set size {rep.witness_size} ({rep.start})")
    if rep.L is not None:
        lines.append(f"shortest zero expansion L = {rep.L}")
    if rep.reason:
        lines.append(f"reason: {rep.reason}")
    for states, _ in rep.cycles[:5]:
        lines.append(f"cycle of length {len(states)} through {ds.ring.format(states[0])}")
    _emit(args, _report_dict(rep, ds), "\n".join(lines))
    return {FEP: OK, INCONCLUSIVE: UNDECIDED}.get(rep.verdict, NEGATIVE)


def cmd_gb(args) -> int:
    f1, f2 = _poly(args.f1), _poly(args.f2)
    try:
        gb = strong_gb(f1, f2)
    except NotCoprimeError as exc:
        _emit(args, {"error": str(exc)}, str(exc))
        return NEGATIVE
    fq = FiniteQuotient(gb)
    res = resultant(f1, f2)
    payload = {
        "basis": [str(h) for h in gb.gens],
        "minimal": [str(h) for h in gb.minimal],
        "leading": list(gb.leading),
        "multipliers": list(gb.multipliers),
        "cardinality": fq.cardinality,
        "resultant": res,
        "unit_ideal": gb.is_unit_ideal,
    }
    lines = [
        "basis: " + ", ".join(payload["basis"]),
        "minimal: " + ", ".join(payload["minimal"]),
        f"multipliers: {tuple(gb.multipliers)}",
        f"|Z[x]/({f1}, {f2})| = {fq.cardinality}",
        f"resultant = {res}",
    ]
    _emit(args, payload, "\n".join(lines))
    return OK


def cmd_resultant(args) -> int:
    r = resultant(_poly(args.p), _poly(args.q))
    _emit(args, {"resultant": r}, str(r))
    return OK


def cmd_crt(args) -> int:
    f1, f2 = _poly(args.f1), _poly(args.f2)
    if args.psi is not None:
        a1, a2 = psi(_poly(args.psi), f1, f2)
        text = f"({format_poly(a1)}, {format_poly(a2)})"
        _emit(args, {"components": [format_poly(a1), format_poly(a2)]}, text)
        return OK
    if args.a1 is None or args.a2 is None:
        raise InputError("crt needs two residues or --psi")
    try:
        a = psi_inverse(_poly(args.a1), _poly(args.a2), f1, f2)
    except NotIntegral as exc:
        _emit(args, {"integral": False, "reason": str(exc)}, f"NotIntegral: {exc}")
        return NEGATIVE
    _emit(args, {"integral": True, "value": str(a)}, str(a))
    return OK


def cmd_merge(args) -> int:
    ds1, ds2 = load_digit_system(args.ds1), load_digit_system(args.ds2)
    rep = merge_digit_systems(ds1, ds2)
    d = rep.to_dict()
    lines = [f"merging {ds1} and {ds2}"]
    for key in ("cond_i", "cond_ii", "cond_iii", "cond_iv"):
        c = d[key]
        lines.append(f"  ({key[5:]}) {c['holds']}: {c['evidence']}")
    if rep.merged is not None:
        lines.append(f"merged {rep.merged}")
        lines.append(f"{len(rep.merged.digits)} digits; FEP: {rep.fep}; L = {rep.L_merged}")
    if args.out and rep.merged is not None:
        Path(args.out).write_text(json.dumps(dump_digit_system(rep.merged), sort_keys=True, indent=2) + "\n")
    _emit(args, d, "\n".join(lines))
    return OK if rep.success else NEGATIVE


def _sim_system(args) -> SimSystem:
    if args.bases:
        return SimSystem.classical(_ints(args.bases))
    if args.moduli:
        try:
            data = json.loads(Path(args.moduli).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read moduli file {args.moduli}: {exc}") from None
        moduli = [_poly(str(f)) for f in data["moduli"]]
        digits = data.get("digits")
        if digits is None:
            digits = range(math.prod(abs(f[0]) for f in moduli))
        return SimSystem.create(moduli, [_poly(str(d)) for d in digits])
    raise InputError("need --bases or --moduli")


def cmd_simul_expand(args) -> int:
    sys_ = _sim_system(args)
    if args.state:
        start = sys_.state([_poly(t) for t in _split(args.state)])
    elif args.value is not None:
        start = sys_.diagonal(_poly(args.value))
    else:
        raise InputError("need --value or --state")
    exp = sim_expand(sys_, start, args.budget)
    vals = [str(sys_.digit_reps[i]) for i in exp.digits]
    shown = vals[::-1] if args.msb else vals
    lines = []
    if args.trace:
        for s, idx, nxt in sim_trajectory(sys_, start, len(exp.digits)):
            lines.append(f"{sys_.format_state(s)} --{_digit_text(sys_.format_digit(idx))}--> {sys_.format_state(nxt)}")
    if exp.kind == FINITE:
        lines.append(" ".join(_digit_text(v) for v in shown) or "(empty)")
    elif exp.kind == BUDGET:
        lines.append(f"budget of {args.budget} steps exhausted")
    else:
        lines.append("periodic: cycle " + " ".join(sys_.format_state(s) for s in exp.cycle))
    payload = {
        "kind": exp.kind,
        "digits": shown,
        "order": "msb" if args.msb else "lsb",
        "cycle_states": [sys_.format_state(s) for s in exp.cycle],
    }
    _emit(args, payload, "\n".join(lines))
    return {FINITE: OK, BUDGET: UNDECIDED}.get(exp.kind, NEGATIVE)


def cmd_simul_verify(args) -> int:
    rep = verify_sim(_sim_system(args))
    d = rep.to_dict()
    lines = [
        f"pair ({p['i']},{p['j']}): unit ideal {p['unit_ideal']}, |Res| = {p['abs_resultant']}" for p in d["pairwise"]
    ]
    lines.append(f"product {d['product_modulus']}: {d['product_fep']}")
    lines.append(f"integers only: {d['integers_only']}")
    lines.append(f"simultaneous number system: {rep.verified}")
    _emit(args, d, "\n".join(lines))
    if rep.verified:
        return OK
    return UNDECIDED if rep.inconclusive else NEGATIVE


def cmd_simul_classify(args) -> int:
    bases = _ints(args.bases)
    ok = corsim_classify(bases)
    _emit(args, {"bases": bases, "simultaneous": ok}, "yes" if ok else "no")
    return OK if ok else NEGATIVE


def cmd_clique(args) -> int:
    rep = clique_search(args.degree, args.box, args.target, args.cap)
    d = rep.to_dict()
    lines = [f"{rep.vertices} polynomials, {rep.edges} pairs with |Res| = 1", f"maximum clique size {rep.max_size}"]
    for k, polys in sorted(rep.witnesses.items()):
        lines.append(f"  {k}: " + ", ".join(map(str, polys)))
    if rep.positive_order:
        lines.append("ordered with all Res = +1: " + ", ".join(map(str, rep.positive_order)))
    if rep.target is not None:
        lines.append(f"{rep.target}-clique: {'found' if rep.target_found else 'none'}")
    _emit(args, d, "\n".join(lines))
    if rep.target is None:
        return OK
    return OK if rep.target_found else NEGATIVE


# -- parser ------------------------------------------------------------------


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", action="store_true", help="machine-readable output")


def _budget(p: argparse.ArgumentParser) -> None:
    p.add_argument("--budget", type=int, default=None, help="step budget (default: $POLYRADIX_BUDGET or 10^6)")


def _clique_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--box", type=int, required=True, help="coefficient bound B")
    p.add_argument("--target", type=int, default=None, help="clique size to look for")
    p.add_argument("--cap", type=int, default=10**5, help="maximum number of polynomials")
    p.set_defaults(func=cmd_clique)


def _sim_source(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--bases", help="integer bases, e.g. -3,-4")
    g.add_argument("--moduli", help='JSON file {"moduli": [...], "digits": [...]}')


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="polyradix", description="Polynomial digit systems, CNS tests and their products.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("expand", help="expand an element in Z[x]/(f)")
    p.add_argument("modulus")
    p.add_argument("value")
    p.add_argument("--digits", help="comma-separated digits (default 0..|f(0)|-1)")
    p.add_argument("--msb", action="store_true", help="most significant digit first")
    p.add_argument("--trace", action="store_true", help="print every division step")
    _budget(p)
    _common(p)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("check-cns", help="decide the finite expansion property")
    p.add_argument("modulus")
    p.add_argument("--digits", help="comma-separated digits (default 0..|f(0)|-1)")
    p.add_argument("--start", choices=[GENERATORS, UNITS], default=GENERATORS)
    p.add_argument("--max-states", type=int, default=5_000_000)
    _common(p)
    p.set_defaults(func=cmd_check_cns)

    p = sub.add_parser("gb", help="strong Groebner basis of (f1, f2)")
    p.add_argument("f1")
    p.add_argument("f2")
    _common(p)
    p.set_defaults(func=cmd_gb)

    p = sub.add_parser("resultant", help="Sylvester resultant")
    p.add_argument("p")
    p.add_argument("q")
    _common(p)
    p.set_defaults(func=cmd_resultant)

    p = sub.add_parser("crt", help="interpolate (a1, a2) modulo (f1, f2)")
    p.add_argument("f1")
    p.add_argument("f2")
    p.add_argument("a1", nargs="?")
    p.add_argument("a2", nargs="?")
    p.add_argument("--psi", help="split a value into its two residues instead")
    _common(p)
    p.set_defaults(func=cmd_crt)

    p = sub.add_parser("merge", help="merge two digit systems given as JSON files")
    p.add_argument("ds1")
    p.add_argument("ds2")
    p.add_argument("--out", help="write the merged system here")
    _common(p)
    p.set_defaults(func=cmd_merge)

    simul = sub.add_parser("simul", help="simultaneous digit systems")
    ssub = simul.add_subparsers(dest="simul_cmd", required=True)

    p = ssub.add_parser("expand")
    _sim_source(p)
    p.add_argument("--value", help="integer or polynomial, embedded diagonally")
    p.add_argument("--state", help="comma-separated components")
    p.add_argument("--msb", action="store_true")
    p.add_argument("--trace", action="store_true")
    _budget(p)
    _common(p)
    p.set_defaults(func=cmd_simul_expand)

    p = ssub.add_parser("verify")
    _sim_source(p)
    _common(p)
    p.set_defaults(func=cmd_simul_verify)

    p = ssub.add_parser("classify")
    p.add_argument("--bases", required=True)
    _common(p)
    p.set_defaults(func=cmd_simul_classify)

    p = ssub.add_parser("clique")
    _clique_args(p)
    _common(p)

    p = sub.add_parser("clique", help="search monic polynomials with pairwise unit resultants")
    _clique_args(p)
    _common(p)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "budget", 0) is None:
        args.budget = default_budget()
    try:
        return args.func(args)
    except PolyParseError as exc:
        print(f"polyradix: parse error: {exc}", file=sys.stderr)
        return USAGE
    except (InputError, SearchSpaceError, ValueError, KeyError) as exc:
        print(f"polyradix: {exc}", file=sys.stderr)
        return USAGE
