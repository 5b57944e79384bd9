"""
Command-line front end.

    qplane normalize "x*y"
    qplane convert --to omega "y^2*x^2"
    qplane seminorm --family dosi_prime --r 1/2 2 --index 0 1 "x*y + y^2"
    qplane rep --what eta --param 1 2 "x*u"
    qplane verify --suite all --mode exact --trunc 32 --seed 7

Exit codes: 0 on success, 1 if a verification check fails, 2 on invalid
configuration or input.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from typing import Callable, Sequence

from .config import Mode, OutputFormat, RunConfig, log_level, parse_scalar
from .errors import ConfigError, QPlaneError
from .expression import normalize
from .omega import PairConvention, to_beta_gamma, to_omega, to_pairs
from .plane import format_monomial, join_terms
from .representations import (GROWTH_COLUMNS, RepFamily, RepSpec, first_column, first_row,
                              format_entry, growth_profile, pi_eval_family,
                              upper_triangular_truncation, write_growth_csv)
from .seminorms import SWEEP_COLUMNS, SWEEP_FAMILIES, WeightSpec, seminorm_sweep, write_sweep_csv
from .verification import SUITES, VerificationReport, run_verification

logger = logging.getLogger(__name__)


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", default="1/2",
                        help="the scalar q, e.g. 1/2, 3/4+1/5*i, or 0.3+0.4j in float mode (default: 1/2)")
    common.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.EXACT.value,
                        help="exact keeps q symbolic or rational, float evaluates at a complex q")
    common.add_argument("--trunc", type=int, default=32, help="truncation size N of matrices (default: 32)")
    common.add_argument("--seed", type=int, default=0, help="root seed of randomized suites (default: 0)")
    common.add_argument("--format", dest="output_format", choices=[f.value for f in OutputFormat],
                        default=OutputFormat.TEXT.value)
    common.add_argument("--out", default=None, help="write the report to this path instead of stdout")
    common.add_argument("--verbose", action="store_true", help="log at INFO level")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = argparse.ArgumentParser(prog="qplane", description="Quantum plane xy = qyx toolkit.")
    commands = parser.add_subparsers(dest="command", required=True)

    normalize_cmd = commands.add_parser("normalize", parents=[common],
                                        help="print the y^k x^l normal form of an expression")
    normalize_cmd.add_argument("expression")

    convert = commands.add_parser("convert", parents=[common],
                                  help="rewrite an expression in the omega, beta/gamma or pair basis")
    convert.add_argument("--to", choices=["omega", "betagamma", "pairs"], required=True)
    convert.add_argument("--convention", choices=[c.value for c in PairConvention],
                         default=PairConvention.OMEGA_PAIR.value)
    convert.add_argument("expression")

    seminorm = commands.add_parser("seminorm", parents=[common],
                                   help="evaluate a seminorm family over a grid of radii")
    seminorm.add_argument("--family", choices=SWEEP_FAMILIES, required=True)
    seminorm.add_argument("--r", nargs="+", default=["1"])
    seminorm.add_argument("--rho", nargs="+", default=["1"])
    seminorm.add_argument("--index", nargs="+", type=int, default=[0])
    seminorm.add_argument("--weight-s", default=None,
                          help="use the B_s weight s^(n^2) in the cw family (default: trivial weight)")
    seminorm.add_argument("expression")

    rep = commands.add_parser("rep", parents=[common],
                              help="dump truncated representation matrices, eta vectors or growth profiles")
    rep.add_argument("--what", choices=["matrices", "eta", "growth", "truncation"], default="matrices")
    rep.add_argument("--family", choices=[f.value for f in RepFamily], default=RepFamily.PI_LAMBDA.value)
    rep.add_argument("--param", nargs="+", default=["1"], help="lambda (or mu) values")
    rep.add_argument("--nmax", type=int, default=20, help="largest power of u in a growth profile")
    rep.add_argument("--order", type=int, default=4, help="order p of the upper triangular truncation")
    rep.add_argument("expression", nargs="?", default="u")

    verify = commands.add_parser("verify", parents=[common], help="run the verification suites")
    verify.add_argument("--suite", choices=["all", *SUITES], default="all")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(mode=Mode(args.mode), q=args.q, trunc=args.trunc, seed=args.seed,
                     output_format=OutputFormat(args.output_format), out=args.out)


def _csv_text(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    stream = io.StringIO()
    writer = csv.writer(stream)
    writer.writerow(header)
    writer.writerows(rows)
    return stream.getvalue()


def _render(config: RunConfig, text: Callable[[], str], data: Callable[[], object],
            table: Callable[[], str] | None = None) -> str:
    if config.output_format is OutputFormat.JSON:
        return json.dumps(data(), indent=2)
    if config.output_format is OutputFormat.CSV:
        if table is None:
            raise ConfigError("This command has no CSV output; use --format text or json.")
        return table()
    return text()


def _radius(text: str, config: RunConfig):
    value = parse_scalar(text, config.mode, "radius")
    if config.mode is Mode.EXACT:
        if not value.is_real() or value.re <= 0:
            raise ConfigError(f"Radii must be positive rationals, got {text!r}.")
        return value.re
    if value.imag or value.real <= 0:
        raise ConfigError(f"Radii must be positive reals, got {text!r}.")
    return value.real


def cmd_normalize(config: RunConfig, args: argparse.Namespace) -> str:
    element = normalize(args.expression)
    if config.mode is Mode.FLOAT:
        values = element.evaluate_q(config.q_value())
        text = join_terms([f"({format_entry(c)})*{format_monomial(k, l)}" if (k, l) != (0, 0)
                           else format_entry(c) for (k, l), c in values.items()])
        rows = [[k, l, format_entry(c)] for (k, l), c in values.items()]
        return _render(config, lambda: text,
                       lambda: {"terms": [{"k": k, "l": l, "coeff": c} for k, l, c in rows]},
                       lambda: _csv_text(("k", "l", "coefficient"), rows))
    return _render(config, lambda: str(element), element.to_json,
                   lambda: _csv_text(("k", "l", "coefficient"),
                                     [[k, l, str(c)] for (k, l), c in element]))


def cmd_convert(config: RunConfig, args: argparse.Namespace) -> str:
    omega = to_omega(normalize(args.expression))
    if args.to == "omega":
        return _render(config, lambda: str(omega), omega.to_json,
                       lambda: _csv_text(("basis", "i", "j", "coefficient"),
                                         [[letter or "u", i, j, str(c)]
                                          for letter, i, j, c in omega.basis_terms()]))
    if args.to == "betagamma":
        form = to_beta_gamma(omega)
        return _render(config, lambda: str(form), form.to_json)
    pairs = to_pairs(omega, PairConvention(args.convention))
    return _render(config, lambda: str(pairs), pairs.to_json)


def cmd_seminorm(config: RunConfig, args: argparse.Namespace) -> str:
    config.validate(needs_contraction=True)
    element = normalize(args.expression)
    rs = [_radius(r, config) for r in args.r]
    rhos = [float(_radius(rho, config)) for rho in args.rho]
    weight = None
    if args.weight_s is not None:
        try:
            weight = WeightSpec.bs(_radius(args.weight_s, config))
        except ValueError as e:
            raise ConfigError(f"--weight-s: {e}")
    rows = seminorm_sweep(args.family, element, config.q_value(), rs, rhos, args.index,
                          config.samples, weight)

    def text() -> str:
        return "\n".join(f"{row.norm_family} index={row.index} r={row.r!r}"
                         + ("" if row.rho is None else f" rho={row.rho!r}")
                         + f" value=[{row.lower!r}, {row.upper!r}]" for row in rows)

    def table() -> str:
        stream = io.StringIO()
        write_sweep_csv(rows, stream)
        return stream.getvalue()

    return _render(config, text,
                   lambda: [dict(zip(SWEEP_COLUMNS, (row.norm_family, row.index, row.r, row.rho,
                                                     row.lower, row.upper))) for row in rows],
                   table)


def cmd_rep(config: RunConfig, args: argparse.Namespace) -> str:
    config.validate()
    family = RepFamily(args.family)
    q = None if config.mode is Mode.EXACT else config.q_value()
    params = [parse_scalar(p, config.mode, "parameter") for p in args.param]
    element = normalize(args.expression)

    if args.what == "matrices":
        images = pi_eval_family(family, element, params, config.trunc, q)
        return _render(config,
                       lambda: "\n\n".join(f"{family.value}({p}):\n{op}" for p, op in images),
                       lambda: [{"parameter": str(p), **op.to_json()} for p, op in images])

    if args.what == "eta":
        extract = first_row if family is RepFamily.PI_LAMBDA else first_column
        vectors = [(p, [format_entry(v) for v in extract(op)])
                   for p, op in pi_eval_family(family, element, params, config.trunc, q)]
        return _render(config,
                       lambda: "\n".join(f"{p}: [" + ", ".join(v) + "]" for p, v in vectors),
                       lambda: [{"parameter": str(p), "entries": v} for p, v in vectors],
                       lambda: _csv_text(("parameter", "j", "entry"),
                                         [[str(p), j, e] for p, v in vectors for j, e in enumerate(v)]))

    if args.what == "truncation":
        config.validate(needs_q_not_one=True)
        if family is not RepFamily.PI_LAMBDA:
            raise ConfigError("Upper triangular truncations come from pi_lambda.")
        blocks = []
        for p in params:
            x_op, y_op = upper_triangular_truncation(RepSpec(family, p, config.trunc, q), args.order)
            blocks.append((p, x_op, y_op, x_op @ y_op))
        return _render(config,
                       lambda: "\n\n".join(f"lambda={p}\nX:\n{x}\nY:\n{y}\nXY:\n{xy}"
                                           for p, x, y, xy in blocks),
                       lambda: [{"parameter": str(p), "X": x.to_json(), "Y": y.to_json(),
                                 "XY": xy.to_json()} for p, x, y, xy in blocks])

    if config.mode is not Mode.FLOAT:
        raise ConfigError("Growth profiles need --mode float.")
    config.validate(needs_contraction=True)
    profiles = [(p, growth_profile(RepSpec(family, p, config.trunc, q), args.nmax)) for p in params]

    def table() -> str:
        stream = io.StringIO()
        for _, rows in profiles:
            write_growth_csv(rows, stream)
        return stream.getvalue()

    return _render(config,
                   lambda: "\n".join(f"{p}: n={row.n} estimate={row.estimate!r} reference={row.reference!r}"
                                     for p, rows in profiles for row in rows),
                   lambda: [{"parameter": str(p),
                             "rows": [dict(zip(GROWTH_COLUMNS, (r.n, r.estimate, r.reference)))
                                      for r in rows]} for p, rows in profiles],
                   table)


def _report_text(report: VerificationReport) -> str:
    lines = []
    for result in report.failed():
        lines.append(f"FAIL {result.name} lhs={result.lhs} rhs={result.rhs} seed={result.seed} {result.details}")
    for result in report.discrepancies():
        lines.append(f"DISCREPANCY_RECORDED {result.name} {result.details}")
    counts = report.counts()
    verdict = "FAIL" if report.failed() else "PASS"
    lines.append(f"{verdict} ({len(report)} checks: "
                 + ", ".join(f"{name}={count}" for name, count in counts.items()) + ")")
    return "\n".join(lines)


def cmd_verify(config: RunConfig, args: argparse.Namespace) -> tuple[str, int]:
    config.validate()
    report = run_verification(config, args.suite)
    rows = [[r.name, r.status.value, r.lhs, r.rhs, r.seed, repr(r.elapsed), r.details] for r in report]
    output = _render(config, lambda: _report_text(report), report.to_json,
                     lambda: _csv_text(("name", "status", "lhs", "rhs", "seed", "elapsed", "details"), rows))
    return output, report.exit_code()


COMMANDS: dict[str, Callable[[RunConfig, argparse.Namespace], str | tuple[str, int]]] = {
    "normalize": cmd_normalize,
    "convert": cmd_convert,
    "seminorm": cmd_seminorm,
    "rep": cmd_rep,
    "verify": cmd_verify,
}


def _write(config: RunConfig, output: str) -> None:
    if config.out:
        with open(config.out, "w", newline="") as f:
            f.write(output + "\n")
    else:
        print(output)


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        logging.basicConfig(level=logging.INFO if args.verbose else log_level(),
                            format="%(levelname)s %(name)s: %(message)s")
        config = config_from_args(args)
        result = COMMANDS[args.command](config, args)
    except QPlaneError as e:
        print(f"[error] {e}", file=sys.stderr)
        return 2
    output, code = result if isinstance(result, tuple) else (result, 0)
    _write(config, output)
    return code


if __name__ == "__main__":
    sys.exit(main())
