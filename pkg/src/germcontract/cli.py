"""Command-line frontend.

Subcommands: analyze (full report), keyforms, classify, dualgraph,
singlepair, sweep.  Inputs come from a plain key = value file
(series = "u^(3/5) + u^2", pairs = [(3,5),(23,2)], r = 8) or the
equivalent flags.  Exit codes: 0 for any computed verdict, 2 for input
that cannot be parsed, 3 for violated preconditions (for example a germ
of order >= 1 where a contraction is requested).  All verdicts come
straight from the library calls; the frontend only formats.
"""

from __future__ import annotations

import argparse
import ast
import json
import random
import sys
from dataclasses import dataclass
from fractions import Fraction

from .criteria import (
    Classification,
    SemigroupReport,
    is_algebraic,
    semigroup_conditions,
    single_pair_closed_form,
    single_pair_test,
)
from .dualgraph import build_dual_graph, export_graph
from .errors import PreconditionError, SeriesParseError
from .keyforms import essential_key_forms
from .puiseux import (
    CharacteristicData,
    Orientation,
    PuiseuxPoly,
    degreewise_to_local,
    format_puiseux,
    local_to_degreewise,
    parse_puiseux,
    puiseux_pairs,
)
from .semidegree import generic_dps_from_curve, parse_poly

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_PRECONDITION = 3

_SPEC_KEYS = ("series", "pairs", "r", "poly", "p", "q")


@dataclass
class CurveSpec:
    series: PuiseuxPoly | None
    pairs: CharacteristicData
    r: int | None


def load_spec_file(path: str) -> dict:
    spec: dict = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            key, eq, value = line.partition("=")
            key = key.strip()
            if not eq or key not in _SPEC_KEYS:
                raise SeriesParseError(
                    f"{path}:{lineno}: expected 'key = value' with key one of "
                    f"{', '.join(_SPEC_KEYS)}",
                    lineno,
                )
            try:
                spec[key] = ast.literal_eval(value.strip())
            except (ValueError, SyntaxError) as exc:
                raise SeriesParseError(
                    f"{path}:{lineno}: bad value for {key}: {exc}", lineno
                )
    return spec


def _parse_pairs_value(value) -> CharacteristicData:
    if isinstance(value, str):
        try:
            value = ast.literal_eval(value)
        except (ValueError, SyntaxError) as exc:
            raise SeriesParseError(f"bad pairs value: {exc}", 0)
    if (
        isinstance(value, tuple)
        and len(value) == 2
        and all(isinstance(v, int) for v in value)
    ):
        value = [value]
    if not isinstance(value, (list, tuple)):
        raise SeriesParseError("pairs must be a list of (q, p) tuples", 0)
    try:
        return CharacteristicData.from_pairs(value)
    except (PreconditionError, TypeError, ValueError) as exc:
        raise SeriesParseError(f"bad pairs value: {exc}", 0)


def resolve_spec(args, need_r: bool = True) -> CurveSpec:
    raw: dict = {}
    if getattr(args, "specfile", None):
        raw.update(load_spec_file(args.specfile))
    if getattr(args, "series", None) is not None:
        raw["series"] = args.series
    if getattr(args, "pairs", None) is not None:
        raw["pairs"] = args.pairs
    if getattr(args, "r", None) is not None:
        raw["r"] = args.r

    if ("series" in raw) == ("pairs" in raw):
        raise SeriesParseError(
            "give exactly one of series/--series or pairs/--pairs", 0
        )
    series = None
    if "series" in raw:
        if not isinstance(raw["series"], str):
            raise SeriesParseError("series must be a string", 0)
        series = parse_puiseux(raw["series"])
        if series.orientation is Orientation.DEGREEWISE:
            series = degreewise_to_local(series)
        pairs = puiseux_pairs(series)
        if not pairs.pairs:
            raise PreconditionError(
                "the series has no fractional exponent (no characteristic pair)"
            )
    else:
        pairs = _parse_pairs_value(raw["pairs"])
        if not pairs.pairs:
            raise SeriesParseError("pairs must contain at least one pair", 0)
    r = raw.get("r")
    if need_r:
        if r is None:
            raise SeriesParseError("r is required (file key r or --r)", 0)
        if not isinstance(r, int) or r < 0:
            raise SeriesParseError(f"r = {r!r} must be a non-negative integer", 0)
    return CurveSpec(series, pairs, r)


def _emit(doc: dict, out) -> None:
    print(json.dumps(doc, sort_keys=True, indent=2), file=out)


def _poles_doc(vp) -> dict:
    return {
        "alpha": vp.alpha,
        "p": vp.p,
        "tilde_omegas": list(vp.tilde_omegas),
        "omegas": list(vp.omegas),
        "generic_pole": vp.generic_pole,
        "l": vp.l,
    }


def _report_doc(rep: SemigroupReport) -> dict:
    return {
        "classification": rep.classification.value,
        "s1": list(rep.s1),
        "s2": [
            {"k": e.k, "holds": e.holds, "offender": e.offender} for e in rep.s2
        ],
        "poles": _poles_doc(rep.poles),
    }


def _print_report(rep: SemigroupReport, out) -> None:
    vp = rep.poles
    print(f"alpha = {vp.alpha}, p^2 = {vp.p ** 2}", file=out)
    print(
        "semigroup generators: " + ", ".join(str(w) for w in vp.tilde_omegas),
        file=out,
    )
    print(
        "virtual poles: "
        + ", ".join(str(w) for w in vp.omegas)
        + f"; generic pole = {vp.generic_pole}",
        file=out,
    )
    for i, ok in enumerate(rep.s1, 1):
        print(f"S1 k={i}: {'ok' if ok else 'FAIL'}", file=out)
    for e in rep.s2:
        tail = "ok" if e.holds else f"FAIL (largest gap element {e.offender})"
        print(f"S2 k={e.k}: {tail}", file=out)
    print(f"classification: {rep.classification.value}", file=out)


def _require_tangent(pairs: CharacteristicData) -> None:
    q1, p1 = pairs.pairs[0]
    if q1 >= p1:
        raise PreconditionError(
            "the germ has order >= 1: the line's strict transform cannot "
            "be part of a contractible configuration"
        )


def cmd_analyze(args, out=None) -> int:
    out = out if out is not None else sys.stdout
    spec = resolve_spec(args)
    _require_tangent(spec.pairs)
    rep = semigroup_conditions(spec.pairs, spec.r)
    contractible = rep.classification is not Classification.NOT_CONTRACTIBLE
    doc = _report_doc(rep)
    doc["contractible"] = contractible
    alg = None
    if spec.series is not None:
        alg = is_algebraic(spec.series, spec.r, force_keyforms=args.force_keyforms)
        doc["algebraic"] = alg.algebraic
        doc["key_forms"] = (
            [f.format() for f in alg.key_forms.forms] if alg.key_forms else None
        )
        doc["pole_orders"] = list(alg.key_forms.omegas) if alg.key_forms else None
        doc["witness_curve"] = (
            alg.witness_curve.format() if alg.witness_curve is not None else None
        )
        doc["wp_weights"] = list(alg.wp_weights) if alg.wp_weights else None
    if args.json:
        _emit(doc, out)
        return EXIT_OK
    if spec.series is not None:
        print(f"series: {format_puiseux(spec.series)}", file=out)
    print(
        "pairs: " + ", ".join(f"({q},{p})" for q, p in spec.pairs.pairs)
        + f"; r = {spec.r}",
        file=out,
    )
    _print_report(rep, out)
    print(f"contractible: {'yes' if contractible else 'no'}", file=out)
    if alg is not None:
        if alg.key_forms is not None:
            print("key forms: " + "; ".join(f.format() for f in alg.key_forms.forms), file=out)
            print(
                "pole orders: " + ", ".join(str(w) for w in alg.key_forms.omegas),
                file=out,
            )
        if alg.algebraic is None:
            print("algebraic: n/a (not contractible)", file=out)
        else:
            print(f"algebraic: {'yes' if alg.algebraic else 'no'}", file=out)
        if alg.witness_curve is not None:
            print(f"witness curve: {alg.witness_curve.format()} = 0", file=out)
            print(
                "weighted-projective weights: "
                + ", ".join(str(w) for w in alg.wp_weights),
                file=out,
            )
    return EXIT_OK


def cmd_keyforms(args, out=None) -> int:
    out = out if out is not None else sys.stdout
    spec = resolve_spec(args)
    if spec.series is None:
        raise PreconditionError(
            "key forms need the series itself (coefficients matter), not just pairs"
        )
    g = generic_dps_from_curve(local_to_degreewise(spec.series), spec.r)
    keys = essential_key_forms(g, want_all=args.all)
    if args.json:
        doc = {
            "forms": [f.format() for f in keys.forms],
            "lifts": [F.format() for F in keys.lifts],
            "omegas": list(keys.omegas),
            "alphas": list(keys.alphas),
        }
        if args.all:
            doc["all_forms"] = [f.format() for f in keys.all_forms]
        _emit(doc, out)
        return EXIT_OK
    for k, f in enumerate(keys.forms):
        print(f"f_{k} = {f.format()}", file=out)
    for k, F in enumerate(keys.lifts, 1):
        print(f"F_{k} = {F.format()}", file=out)
    print("pole orders: " + ", ".join(str(w) for w in keys.omegas), file=out)
    print("alphas: " + ", ".join(str(a) for a in keys.alphas), file=out)
    if args.all:
        print("full chain:", file=out)
        for f in keys.all_forms:
            print(f"  {f.format()}", file=out)
    return EXIT_OK


def cmd_classify(args, out=None) -> int:
    out = out if out is not None else sys.stdout
    spec = resolve_spec(args)
    rep = semigroup_conditions(spec.pairs, spec.r)
    if args.json:
        _emit(_report_doc(rep), out)
    else:
        _print_report(rep, out)
    return EXIT_OK


def cmd_dualgraph(args, out=None) -> int:
    out = out if out is not None else sys.stdout
    spec = resolve_spec(args)
    g = build_dual_graph(spec.pairs, spec.r)
    fmt = "json" if args.json and args.format == "dot" else args.format
    print(export_graph(g, fmt), file=out)
    return EXIT_OK


def cmd_singlepair(args, out=None) -> int:
    out = out if out is not None else sys.stdout
    raw: dict = {}
    if args.specfile:
        raw.update(load_spec_file(args.specfile))
    if args.poly is not None:
        raw["poly"] = args.poly
    if args.p is not None:
        raw["p"] = args.p
    if args.q is not None:
        raw["q"] = args.q
    if args.r is not None:
        raw["r"] = args.r
    missing = [k for k in ("poly", "p", "q", "r") if k not in raw]
    if missing:
        raise SeriesParseError(f"singlepair needs {', '.join(missing)}", 0)
    f = parse_poly(raw["poly"], xname="u", yname="v")
    p, q, r = raw["p"], raw["q"], raw["r"]
    algebraic = single_pair_test(f, p, q, r)
    closed = single_pair_closed_form(q, p, r)
    doc = {
        "algebraic": algebraic,
        "alpha": p * q + r,
        "contractible": closed["contractible"],
        "nonalgebraic_exists": closed["nonalgebraic_exists"],
    }
    if args.json:
        _emit(doc, out)
        return EXIT_OK
    print(f"alpha = {doc['alpha']}", file=out)
    print(f"contractible: {'yes' if closed['contractible'] else 'no'}", file=out)
    print(
        "non-algebraic contractions exist for some curve: "
        + ("yes" if closed["nonalgebraic_exists"] else "no"),
        file=out,
    )
    print(f"this curve's contraction algebraic: {'yes' if algebraic else 'no'}", file=out)
    return EXIT_OK


def _random_series(pairs: CharacteristicData, rng: random.Random) -> PuiseuxPoly:
    coeffs = {}
    for e in pairs.char_exponents():
        num = rng.choice([-3, -2, -1, 1, 2, 3])
        den = rng.choice([1, 2, 3])
        coeffs[e] = Fraction(num, den)
    return PuiseuxPoly(Orientation.LOCAL, coeffs)


def cmd_sweep(args, out=None) -> int:
    out = out if out is not None else sys.stdout
    spec = resolve_spec(args, need_r=False)
    if args.r_max < 0:
        raise SeriesParseError("--r-max must be >= 0", 0)
    rng = random.Random(args.seed) if args.seed is not None else None
    rows = []
    for r in range(args.r_max + 1):
        rep = semigroup_conditions(spec.pairs, r)
        row = {"r": r, "classification": rep.classification.value}
        if rng is not None and rep.classification is not Classification.NOT_CONTRACTIBLE:
            curve = spec.series or _random_series(spec.pairs, rng)
            verdict = is_algebraic(curve, r).algebraic
            row["random_curve_algebraic"] = verdict
            if rep.classification is Classification.ONLY_ALGEBRAIC:
                row["consistent"] = verdict is True
            elif rep.classification is Classification.ONLY_NONALGEBRAIC:
                row["consistent"] = verdict is False
            else:
                row["consistent"] = None
        rows.append(row)
    if args.json:
        _emit(
            {"pairs": [list(pr) for pr in spec.pairs.pairs], "sweep": rows}, out
        )
        return EXIT_OK
    for row in rows:
        line = f"r={row['r']}: {row['classification']}"
        if "random_curve_algebraic" in row:
            line += f" (sampled curve algebraic: {row['random_curve_algebraic']}"
            if row["consistent"] is not None:
                line += f", consistent: {row['consistent']}"
            line += ")"
        print(line, file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="germcontract",
        description="Contractibility and algebraicity of exceptional "
        "configurations attached to a plane curve germ plus r blow-ups.",
    )
    curve = argparse.ArgumentParser(add_help=False)
    curve.add_argument("specfile", nargs="?", help="key = value input file")
    curve.add_argument("--series", help='local series, e.g. "u^(3/5) + u^2"')
    curve.add_argument("--pairs", help="characteristic pairs, e.g. \"[(3,5),(23,2)]\"")
    curve.add_argument("--json", action="store_true", help="machine-readable output")
    withr = argparse.ArgumentParser(add_help=False)
    withr.add_argument("--r", type=int, help="number of extra blow-ups")

    sub = parser.add_subparsers(dest="command", required=True)
    p_an = sub.add_parser("analyze", parents=[curve, withr], help="full report")
    p_an.add_argument(
        "--force-keyforms",
        action="store_true",
        help="compute key forms even when not contractible",
    )
    p_an.set_defaults(func=cmd_analyze)
    p_kf = sub.add_parser("keyforms", parents=[curve, withr], help="essential key forms")
    p_kf.add_argument("--all", action="store_true", help="print the full chain")
    p_kf.set_defaults(func=cmd_keyforms)
    p_cl = sub.add_parser("classify", parents=[curve, withr], help="semigroup classification")
    p_cl.set_defaults(func=cmd_classify)
    p_dg = sub.add_parser("dualgraph", parents=[curve, withr], help="weighted dual graph")
    p_dg.add_argument("--format", choices=("dot", "json"), default="dot")
    p_dg.set_defaults(func=cmd_dualgraph)
    p_sp = sub.add_parser("singlepair", help="single-pair Weierstrass shortcut")
    p_sp.add_argument("specfile", nargs="?", help="key = value input file")
    p_sp.add_argument("--poly", help='polynomial in u, v, e.g. "v^5 - u^3"')
    p_sp.add_argument("--p", type=int, help="pair denominator p")
    p_sp.add_argument("--q", type=int, help="pair numerator q")
    p_sp.add_argument("--r", type=int, help="number of extra blow-ups")
    p_sp.add_argument("--json", action="store_true")
    p_sp.set_defaults(func=cmd_singlepair)
    p_sw = sub.add_parser("sweep", parents=[curve], help="classification for r = 0..r-max")
    p_sw.add_argument("--r-max", type=int, required=True)
    p_sw.add_argument("--seed", type=int, help="also test a sampled curve per r")
    p_sw.set_defaults(func=cmd_sweep)
    return parser


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SeriesParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
