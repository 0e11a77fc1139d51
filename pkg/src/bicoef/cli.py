"""Command-line interface.

Subcommands: bound, invert, operator, member, falsify, extremal,
corollary-check.  Exit codes: 0 success, 1 violated invariant (a
falsification violation, a failed corollary identity, or a negative search
gap), 2 usage error.

An optional config file (``--config``) holds ``key = value`` lines mirroring
the long flag names; explicit flags win over config values.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .bounds import COROLLARY_IDS, bounds_alpha, bounds_beta, corollary_check
from .harness import VIOLATION_TOL, extremal_search, falsify
from .operators import (AlphaParams, BetaParams, MembershipGrid,
                        apply_operator, membership_alpha, membership_beta)
from .series import NormalizedFunction, inverse_coeffs_closed, revert

__all__ = ["main", "build_parser"]


def _complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}")


def _complex_list(text: str) -> list[complex]:
    toks = [t for t in text.split(",") if t.strip()]
    if not toks:
        raise argparse.ArgumentTypeError("empty coefficient list")
    return [_complex(t) for t in toks]


def _float_list(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a float list: {text!r}")


def _jsonable(value):
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    return value


def _emit(args, payload: dict, text_lines: list[str]) -> None:
    if args.json:
        out = json.dumps(_jsonable(payload), indent=2, sort_keys=True)
    else:
        out = "\n".join(text_lines)
    print(out)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out + "\n")


def _params_from_args(args):
    """Build the parameter set named by --family; argparse-style errors."""
    if args.family is None:
        raise ValueError("--family is required (flag or config)")
    if args.family == "alpha":
        if args.alpha is None:
            raise ValueError("--alpha is required for --family alpha")
        return AlphaParams(args.alpha, args.lam, args.mu)
    if args.beta is None:
        raise ValueError("--beta is required for --family beta")
    return BetaParams(args.beta, args.lam, args.mu)


# --------------------------------------------------------------------------
# subcommand handlers

def _cmd_bound(args) -> int:
    params = _params_from_args(args)
    rep = bounds_alpha(params) if args.family == "alpha" else bounds_beta(params)
    payload = {"family": args.family,
               "alpha": getattr(params, "alpha", None),
               "beta": getattr(params, "beta", None),
               "lambda": params.lam, "mu": params.mu,
               "a2_bound": rep.a2_bound, "a3_bound": rep.a3_bound,
               "a2_branch": rep.a2_branch, "a3_branch": rep.a3_branch}
    lines = [f"a2_bound = {rep.a2_bound!r}  [{rep.a2_branch}]",
             f"a3_bound = {rep.a3_bound!r}  [{rep.a3_branch}]"]
    _emit(args, payload, lines)
    return 0


def _cmd_invert(args) -> int:
    if args.coeffs is not None:
        f = NormalizedFunction.from_tail(args.coeffs, order=args.order)
        g = revert(f)
        tail = [g.coefficient(k) for k in range(2, g.order + 1)]
        payload = {"inverse_tail": tail, "order": g.order}
        lines = [f"b{k + 2} = {c}" for k, c in enumerate(tail)]
    else:
        b2, b3, b4 = inverse_coeffs_closed(args.a2, args.a3, args.a4)
        payload = {"b2": b2, "b3": b3, "b4": b4}
        lines = [f"b2 = {b2}", f"b3 = {b3}", f"b4 = {b4}"]
    _emit(args, payload, lines)
    return 0


def _cmd_operator(args) -> int:
    f = NormalizedFunction.from_tail(args.coeffs, order=args.order)
    series = apply_operator(f, args.lam, args.mu)
    coeffs = [series[k] for k in range(series.order + 1)]
    payload = {"coeffs": coeffs, "order": series.order,
               "lambda": args.lam, "mu": args.mu}
    lines = [f"c{k} = {c}" for k, c in enumerate(coeffs)]
    _emit(args, payload, lines)
    return 0


def _cmd_member(args) -> int:
    params = _params_from_args(args)
    f = NormalizedFunction.from_tail(args.coeffs, order=args.order)
    grid = MembershipGrid(radii=tuple(args.radii), n_angles=args.angles,
                          tol=args.tol)
    if args.family == "alpha":
        rep = membership_alpha(f, params, grid)
    else:
        rep = membership_beta(f, params, grid)
    payload = {"passed": rep.passed, "test": rep.test,
               "threshold": rep.threshold, "worst_value": rep.worst_value,
               "margin": rep.margin, "worst_point": rep.worst_point,
               "worst_side": rep.worst_side}
    lines = [f"{'PASS' if rep.passed else 'FAIL'} ({rep.test} test, "
             f"threshold {rep.threshold!r})",
             f"worst value {rep.worst_value!r} at z = {rep.worst_point} "
             f"on side {rep.worst_side}",
             f"margin {rep.margin!r}"]
    _emit(args, payload, lines)
    return 0


def _cmd_falsify(args) -> int:
    params = _params_from_args(args)
    summary = falsify(params, args.n, args.seed,
                      filter_mode=args.filter, atom_count=args.atoms)
    if args.out:
        summary.write_csv(args.out)
    payload = summary.to_json_dict()
    lines = [
        f"samples    {summary.n_samples}",
        f"admissible {summary.n_admissible} "
        f"(modulus fails {summary.n_fail_modulus}, "
        f"toeplitz fails {summary.n_fail_toeplitz})",
        f"max |a2|   {summary.max_a2_abs!r}  bound {summary.bounds.a2_bound!r}",
        f"max |a3|   {summary.max_a3_abs!r}  bound {summary.bounds.a3_bound!r}",
        f"violations {len(summary.violations)}",
    ]
    if args.json:
        print(json.dumps(_jsonable(payload), indent=2, sort_keys=True))
    else:
        print("\n".join(lines))
    return 1 if summary.violations else 0


def _cmd_extremal(args) -> int:
    params = _params_from_args(args)
    res = extremal_search(params, args.objective, args.budget, args.seed,
                          atom_count=args.atoms)
    payload = {"objective": res.objective, "achieved": res.achieved,
               "bound": res.bound, "gap": res.gap,
               "evaluations": res.evaluations,
               "best_tuple": {"p1": res.best_tuple.p1, "p2": res.best_tuple.p2,
                              "q1": res.best_tuple.q1, "q2": res.best_tuple.q2},
               "best_atoms": res.best_atoms}
    lines = [f"objective |{res.objective}|",
             f"achieved  {res.achieved!r}",
             f"bound     {res.bound!r}",
             f"gap       {res.gap!r}",
             f"evals     {res.evaluations}"]
    _emit(args, payload, lines)
    return 1 if res.gap < -VIOLATION_TOL else 0


def _cmd_corollary_check(args) -> int:
    which = COROLLARY_IDS if args.which == "all" else (args.which,)
    reports = [corollary_check(w) for w in which]
    payload = {"reports": [{
        "which": r.which, "passed": r.passed, "points": r.points,
        "max_deviation": r.max_deviation, "exact_identity": r.exact_identity,
        "crossover_expected": r.crossover_expected,
        "crossover_found": r.crossover_found,
        "crossover_error": r.crossover_error, "notes": list(r.notes)}
        for r in reports]}
    lines = []
    for r in reports:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"{r.which}: {status}  points={r.points} "
                     f"max_dev={r.max_deviation:.3e}")
        if r.crossover_found is not None:
            lines.append(f"  crossover at {r.crossover_found!r} "
                         f"(expected {r.crossover_expected!r})")
        for note in r.notes:
            lines.append(f"  note: {note}")
    _emit(args, payload, lines)
    return 0 if all(r.passed for r in reports) else 1


# --------------------------------------------------------------------------
# parser construction and config handling

def _add_common(sp) -> None:
    sp.add_argument("--json", action="store_true", help="emit JSON")
    sp.add_argument("--out", metavar="PATH",
                    help="also write the report (CSV for falsify) to PATH")
    sp.add_argument("--seed", type=int, default=0, help="RNG seed")
    sp.add_argument("--order", type=int, default=None,
                    help="series truncation order")
    sp.add_argument("--config", metavar="PATH",
                    help="key = value file mirroring long flags; flags win")


def _add_family(sp) -> None:
    # not required=True: a config file may supply it (checked in the handler)
    sp.add_argument("--family", choices=("alpha", "beta"), default=None)
    sp.add_argument("--alpha", type=float, default=None)
    sp.add_argument("--beta", type=float, default=None)
    sp.add_argument("--lambda", dest="lam", type=float, default=1.0)
    sp.add_argument("--mu", type=float, default=1.0)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="bicoef",
        description="Coefficient bounds and falsification harness for two "
                    "bi-univalent function classes")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    subparsers = {}

    sp = sub.add_parser("bound", help="evaluate the closed-form bounds")
    _add_family(sp)
    _add_common(sp)
    sp.set_defaults(func=_cmd_bound)
    subparsers["bound"] = sp

    sp = sub.add_parser("invert", help="inverse-function coefficients")
    sp.add_argument("--a2", type=_complex, default=0j)
    sp.add_argument("--a3", type=_complex, default=0j)
    sp.add_argument("--a4", type=_complex, default=0j)
    sp.add_argument("--coeffs", type=_complex_list, default=None,
                    metavar="A2,A3,...",
                    help="full reversion of z + a2 z^2 + ... instead of the "
                         "closed-form triple")
    _add_common(sp)
    sp.set_defaults(func=_cmd_invert)
    subparsers["invert"] = sp

    sp = sub.add_parser("operator", help="apply the class operator")
    sp.add_argument("--coeffs", type=_complex_list, required=True,
                    metavar="A2,A3,...")
    sp.add_argument("--lambda", dest="lam", type=float, default=1.0)
    sp.add_argument("--mu", type=float, default=1.0)
    _add_common(sp)
    sp.set_defaults(func=_cmd_operator)
    subparsers["operator"] = sp

    sp = sub.add_parser("member", help="grid membership check")
    _add_family(sp)
    sp.add_argument("--coeffs", type=_complex_list, required=True,
                    metavar="A2,A3,...")
    sp.add_argument("--radii", type=_float_list, default=[0.5, 0.8, 0.9, 0.95])
    sp.add_argument("--angles", type=int, default=256)
    sp.add_argument("--tol", type=float, default=1e-8)
    _add_common(sp)
    sp.set_defaults(func=_cmd_member)
    subparsers["member"] = sp

    sp = sub.add_parser("falsify", help="randomized falsification campaign")
    _add_family(sp)
    sp.add_argument("-n", "--samples", dest="n", type=int, default=100000)
    sp.add_argument("--filter", choices=("modulus", "toeplitz"),
                    default="toeplitz")
    sp.add_argument("--atoms", type=int, default=3)
    _add_common(sp)
    sp.set_defaults(func=_cmd_falsify)
    subparsers["falsify"] = sp

    sp = sub.add_parser("extremal", help="derivative-free extremal search")
    _add_family(sp)
    sp.add_argument("--objective", choices=("a2", "a3"), default="a2")
    sp.add_argument("--budget", type=int, default=10000)
    sp.add_argument("--atoms", type=int, default=3)
    _add_common(sp)
    sp.set_defaults(func=_cmd_extremal)
    subparsers["extremal"] = sp

    sp = sub.add_parser("corollary-check",
                        help="verify corollary reductions of the bounds")
    sp.add_argument("--which", choices=COROLLARY_IDS + ("all",),
                    default="all")
    _add_common(sp)
    sp.set_defaults(func=_cmd_corollary_check)
    subparsers["corollary-check"] = sp

    return parser, subparsers


def _load_config(path: str) -> dict[str, str]:
    cfg = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected 'key = value'")
            key, value = line.split("=", 1)
            cfg[key.strip()] = value.strip()
    return cfg


def _apply_config(subparsers: dict, cfg: dict[str, str]) -> None:
    for sp in subparsers.values():
        defaults = {}
        for action in sp._actions:
            for opt in action.option_strings:
                key = opt.lstrip("-")
                if key not in cfg or not opt.startswith("--"):
                    continue
                raw = cfg[key]
                if isinstance(action, argparse._StoreTrueAction):
                    defaults[action.dest] = raw.lower() in ("1", "true", "yes")
                elif action.type is not None:
                    defaults[action.dest] = action.type(raw)
                else:
                    defaults[action.dest] = raw
        sp.set_defaults(**defaults)


def main(argv=None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser, subparsers = build_parser()

    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config", default=None)
    ns, _ = pre.parse_known_args(argv)
    if ns.config:
        try:
            cfg = _load_config(ns.config)
        except (OSError, ValueError) as exc:
            print(f"bicoef: config error: {exc}", file=sys.stderr)
            return 2
        try:
            _apply_config(subparsers, cfg)
        except (ValueError, argparse.ArgumentTypeError) as exc:
            print(f"bicoef: config error: {exc}", file=sys.stderr)
            return 2

    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else int(exc.code)

    try:
        return args.func(args)
    except ValueError as exc:
        print(f"bicoef: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
