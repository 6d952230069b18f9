"""Command-line front end: word calculus, growth tables, solvers, bounds, sweeps."""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction
from pathlib import Path

from . import bounds, entropy, growth, scenarios
from .factors import FactorError, LengthAssignment
from .words import (
    ContainsFreePair,
    FactorConjugate,
    FreeProduct,
    InfiniteCyclic,
    WordError,
)

DEFAULT_PRECISION = 1e-10


class CliError(ValueError):
    pass


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help()
        return 2
    try:
        args.handler(args)
    except (CliError, FactorError, WordError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="freeprod",
        description="Word calculus, growth and entropy of free products, "
        "systole/diastole/volume bound evaluators, and counterexample sweeps.",
    )
    parser.add_argument(
        "--precision",
        type=float,
        default=None,
        help=f"target relative tolerance for printing (default {DEFAULT_PRECISION:g})",
    )
    parser.add_argument(
        "--config",
        type=Path,
        default=None,
        help="JSON file with defaults for group/length_a/length_b/precision",
    )
    parser.set_defaults(command=None)
    sub = parser.add_subparsers(dest="command")

    _add_word_commands(sub)
    _add_growth_commands(sub)
    _add_entropy_commands(sub)
    _add_bounds_commands(sub)
    _add_scenario_commands(sub)
    return parser


# -- shared option plumbing ------------------------------------------------


def _group_opts(p: argparse.ArgumentParser, lengths: bool = False) -> None:
    p.add_argument("--group", help='factor specs, e.g. "Z * Z/5" or "table:g.txt * Z"')
    if lengths:
        p.add_argument("--length-a", help="generator length of the first factor")
        p.add_argument("--length-b", help="generator length of the second factor")
        p.add_argument("--lengths-a", help="comma list of element lengths (table factor)")
        p.add_argument("--lengths-b", help="comma list of element lengths (table factor)")


def _load_config(args) -> dict:
    if args.config is None:
        return {}
    return json.loads(args.config.read_text())


def _precision(args) -> float:
    if args.precision is not None:
        return args.precision
    return _load_config(args).get("precision", DEFAULT_PRECISION)


def _digits(args) -> int:
    return max(6, round(-math.log10(_precision(args))))


def _fmt(args, value: float) -> str:
    return f"{value:.{_digits(args)}g}"


def _parse_scalar(text: str):
    try:
        return Fraction(text)
    except ValueError:
        return float(text)


def _get_group(args) -> FreeProduct:
    spec = args.group or _load_config(args).get("group")
    if not spec:
        raise CliError("no --group given (and none in the config file)")
    return FreeProduct.parse_group(spec)


def _get_assignment(args, which: str) -> LengthAssignment:
    cfg = _load_config(args)
    single = getattr(args, f"length_{which}", None) or cfg.get(f"length_{which}")
    many = getattr(args, f"lengths_{which}", None) or cfg.get(f"lengths_{which}")
    if many:
        if isinstance(many, str):
            values = [_parse_scalar(v) for v in many.split(",")]
        else:
            values = [_parse_scalar(str(v)) for v in many]
        return LengthAssignment(element_lengths=(0, *values))
    if single is not None:
        return LengthAssignment(generator_length=_parse_scalar(str(single)))
    return LengthAssignment.unit()


def _get_gen_set(args) -> growth.WeightedGenSet:
    return growth.WeightedGenSet(
        _get_group(args), _get_assignment(args, "a"), _get_assignment(args, "b")
    )


def _open_csv(path: str | None):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", newline=""), True


# -- word ------------------------------------------------------------------


def _add_word_commands(sub) -> None:
    word = sub.add_parser("word", help="word calculus in A * B")
    wsub = word.add_subparsers(dest="subcommand", required=True)

    for name, helptext in [
        ("reduce", "normal form of a letter sequence"),
        ("inv", "inverse"),
        ("cyclic", "cyclic decomposition u d u^-1"),
        ("root", "primitive root and exponent"),
    ]:
        p = wsub.add_parser(name, help=helptext)
        _group_opts(p)
        p.add_argument("--word", required=True)
        p.set_defaults(handler={"reduce": _cmd_word_reduce, "inv": _cmd_word_inv,
                                "cyclic": _cmd_word_cyclic, "root": _cmd_word_root}[name])

    p = wsub.add_parser("mul", help="product of two words")
    _group_opts(p)
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.set_defaults(handler=_cmd_word_mul)

    p = wsub.add_parser("pow", help="integer power")
    _group_opts(p)
    p.add_argument("--word", required=True)
    p.add_argument("--exponent", type=int, required=True)
    p.set_defaults(handler=_cmd_word_pow)

    p = wsub.add_parser("classify", help="small-set subgroup trichotomy")
    _group_opts(p)
    p.add_argument("--words", required=True, help='semicolon-separated words, e.g. "a b; a^2"')
    p.set_defaults(handler=_cmd_word_classify)


def _cmd_word_reduce(args) -> None:
    fp = _get_group(args)
    print(fp.format_word(fp.parse_word(args.word)))


def _cmd_word_inv(args) -> None:
    fp = _get_group(args)
    print(fp.format_word(fp.inv(fp.parse_word(args.word))))


def _cmd_word_mul(args) -> None:
    fp = _get_group(args)
    print(fp.format_word(fp.mul(fp.parse_word(args.left), fp.parse_word(args.right))))


def _cmd_word_pow(args) -> None:
    fp = _get_group(args)
    print(fp.format_word(fp.pow(fp.parse_word(args.word), args.exponent)))


def _cmd_word_cyclic(args) -> None:
    fp = _get_group(args)
    dec = fp.cyclic_reduce(fp.parse_word(args.word))
    print(f"conjugator: {fp.format_word(dec.conjugator)}")
    print(f"core:       {fp.format_word(dec.core)}")


def _cmd_word_root(args) -> None:
    fp = _get_group(args)
    root, exponent = fp.primitive_root(fp.parse_word(args.word))
    print(f"root:     {fp.format_word(root)}")
    print(f"exponent: {exponent}")


def _cmd_word_classify(args) -> None:
    fp = _get_group(args)
    elems = [fp.parse_word(w) for w in args.words.split(";")]
    verdict = fp.classify_small_set(elems)
    if isinstance(verdict, FactorConjugate):
        print(f"factor-conjugate: factor {verdict.which}, "
              f"conjugator {fp.format_word(verdict.conjugator)}")
    elif isinstance(verdict, InfiniteCyclic):
        print(f"infinite-cyclic: root {fp.format_word(verdict.root)}")
    else:
        w1, w2 = verdict.witnesses
        print(f"contains-free-pair: {fp.format_word(w1)} ; {fp.format_word(w2)}")


# -- growth ----------------------------------------------------------------


def _add_growth_commands(sub) -> None:
    g = sub.add_parser("growth", help="exact counts, series, slope fits")
    gsub = g.add_subparsers(dest="subcommand", required=True)

    p = gsub.add_parser("spheres", help="unit sphere counts (finite factors)")
    _group_opts(p)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--csv", nargs="?", const="-", default=None)
    p.set_defaults(handler=_cmd_growth_spheres)

    p = gsub.add_parser("count", help="weighted counts by dynamic programming")
    _group_opts(p, lengths=True)
    p.add_argument("--r-max", required=True)
    p.add_argument("--csv", nargs="?", const="-", default=None)
    p.set_defaults(handler=_cmd_growth_count)

    p = gsub.add_parser("poincare", help="closed-form series value at decay rate c")
    _group_opts(p, lengths=True)
    p.add_argument("--c", type=float, required=True)
    p.set_defaults(handler=_cmd_growth_poincare)

    p = gsub.add_parser("fit", help="least-squares slope of log N(R)")
    _group_opts(p, lengths=True)
    p.add_argument("--r-max", required=True)
    p.add_argument(
        "--window",
        nargs=2,
        type=float,
        default=None,
        help="fit window [R1 R2]; defaults to the upper half of the table",
    )
    p.set_defaults(handler=_cmd_growth_fit)


def _print_table(table: growth.GrowthTable, csv_path: str | None) -> None:
    if csv_path is not None:
        stream, close = _open_csv(csv_path)
        try:
            table.write_csv(stream)
        finally:
            if close:
                stream.close()
    else:
        print("spheres:", " ".join(str(c) for c in table.counts))


def _cmd_growth_spheres(args) -> None:
    fp = _get_group(args)
    table = growth.sphere_counts(fp.factor_a, fp.factor_b, args.n_max)
    _print_table(table, args.csv)


def _cmd_growth_count(args) -> None:
    table = growth.weighted_counts(_get_gen_set(args), _parse_scalar(args.r_max))
    _print_table(table, args.csv)


def _cmd_growth_poincare(args) -> None:
    ev = growth.poincare_I(_get_gen_set(args), args.c)
    if ev.diverges:
        print(f"diverges (W_A*W_B = {_fmt(args, ev.w_a * ev.w_b)} >= 1)")
    else:
        print(_fmt(args, ev.value))


def _cmd_growth_fit(args) -> None:
    r_max = _parse_scalar(args.r_max)
    table = growth.weighted_counts(_get_gen_set(args), r_max)
    if args.window is None:
        window = (float(r_max) / 2.0, float(table.max_weight))
    else:
        window = (args.window[0], args.window[1])
    print(_fmt(args, growth.empirical_entropy(table, window)))


# -- entropy ---------------------------------------------------------------


def _add_entropy_commands(sub) -> None:
    e = sub.add_parser("entropy", help="closed-form growth-rate solvers")
    esub = e.add_subparsers(dest="subcommand", required=True)

    p = esub.add_parser("solve", help="rank-2 free group with lengths l1, l2")
    p.add_argument("--l1", type=float, required=True)
    p.add_argument("--l2", type=float, required=True)
    p.set_defaults(handler=_cmd_entropy_solve)

    p = esub.add_parser("critical", help="critical exponent of a weighted free product")
    _group_opts(p, lengths=True)
    p.set_defaults(handler=_cmd_entropy_critical)


def _cmd_entropy_solve(args) -> None:
    print(_fmt(args, entropy.solve_h_f2(args.l1, args.l2).h))


def _cmd_entropy_critical(args) -> None:
    sol = entropy.critical_exponent(_get_gen_set(args))
    if sol.zero_entropy:
        print("0 (zero entropy: linear growth)")
    else:
        print(_fmt(args, sol.h))


# -- bounds ----------------------------------------------------------------


def _add_bounds_commands(sub) -> None:
    b = sub.add_parser("bounds", help="closed-form bound evaluators")
    bsub = b.add_subparsers(dest="subcommand", required=True)

    specs = {
        "diastole": (["--H"], lambda a: bounds.diastole_lb(a.H)),
        "systole": (["--H", "--D"], lambda a: bounds.systole_lb(a.H, a.D)),
        "bcg": (["--delta", "--H"], lambda a: bounds.bcg_diastole_lb(a.delta, a.H)),
        "packing": (["--V", "--eps", "--Cn", "--n"],
                    lambda a: bounds.packing_count_ub(a.V, a.eps, a.Cn, int(a.n))),
        "volume": (["--n", "--H", "--D", "--Cn"],
                   lambda a: bounds.volume_lb(int(a.n), a.H, a.D, a.Cn)),
        "l0": (["--l", "--H", "--D"], lambda a: bounds.l0_combine(a.l, a.H, a.D)),
    }
    for name, (opts, fn) in specs.items():
        p = bsub.add_parser(name)
        for opt in opts:
            p.add_argument(opt, type=float, required=True)
        p.set_defaults(handler=_make_bound_handler(fn))

    p = bsub.add_parser("lse", help="pairwise length inequality, both readings")
    p.add_argument("--H", type=float, required=True)
    p.add_argument("--l2", type=float, required=True)
    p.set_defaults(handler=_cmd_bounds_lse)


def _make_bound_handler(fn):
    def handler(args) -> None:
        print(_fmt(args, fn(args)))

    return handler


def _cmd_bounds_lse(args) -> None:
    pair = bounds.pair_inequality_lse(args.H, args.l2)
    print(f"displayed: {_fmt(args, pair.displayed)}")
    print(f"sharp:     {_fmt(args, pair.sharp)}")


# -- scenarios -------------------------------------------------------------


def _add_scenario_commands(sub) -> None:
    s = sub.add_parser("scenario", help="counterexample parameter sweeps")
    ssub = s.add_subparsers(dest="subcommand", required=True)

    p = ssub.add_parser("sharpness", help="two-scale model: sharpness and diameter necessity")
    p.add_argument("--eps", type=float)
    p.add_argument("--eps-prime", type=float)
    p.add_argument("--sweep", type=Path, help="CSV of eps,eps_prime rows")
    p.add_argument("--diagonal", help="comma list of eps values, swept with eps' = eps")
    p.add_argument("--csv", nargs="?", const="-", default=None)
    p.set_defaults(handler=_cmd_scenario_sharpness)

    p = ssub.add_parser("torsion", help="torsion model: systole collapse at bounded entropy")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--eps", type=float)
    p.add_argument("--eps-sweep", help="comma list of eps values")
    p.add_argument("--b-length", type=float, default=1.0)
    p.add_argument("--csv", nargs="?", const="-", default=None)
    p.set_defaults(handler=_cmd_scenario_torsion)


def _emit_points(args, points) -> None:
    if args.csv is not None:
        stream, close = _open_csv(args.csv)
        try:
            scenarios.write_points_csv(points, stream)
        finally:
            if close:
                stream.close()
        return
    for pt in points:
        fields = ", ".join(f"{k}={_fmt(args, v) if isinstance(v, float) else v}"
                           for k, v in vars(pt).items())
        print(fields)


def _cmd_scenario_sharpness(args) -> None:
    if args.sweep is not None:
        rows = [ln.split(",") for ln in args.sweep.read_text().splitlines() if ln.strip()]
        if rows and not _is_number(rows[0][0]):
            rows = rows[1:]
        params = [(float(r[0]), float(r[1])) for r in rows]
        points = scenarios.sweep_sharpness(params)
    elif args.diagonal is not None:
        values = [float(v) for v in args.diagonal.split(",")]
        points = scenarios.sweep_sharpness([(v, v) for v in values])
    elif args.eps is not None and args.eps_prime is not None:
        points = [scenarios.run_sharpness(args.eps, args.eps_prime)]
    else:
        raise CliError("give --eps/--eps-prime, --diagonal, or --sweep")
    _emit_points(args, points)


def _cmd_scenario_torsion(args) -> None:
    if args.eps_sweep is not None:
        eps_values = [float(v) for v in args.eps_sweep.split(",")]
    elif args.eps is not None:
        eps_values = [args.eps]
    else:
        raise CliError("give --eps or --eps-sweep")
    points = scenarios.sweep_torsion_collapse(args.p, eps_values, args.b_length)
    _emit_points(args, points)


def _is_number(text: str) -> bool:
    try:
        float(text)
        return True
    except ValueError:
        return False


if __name__ == "__main__":
    sys.exit(main())
