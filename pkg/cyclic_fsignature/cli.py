"""Command line surface: `fsig <command> --n N --a A [...]`."""

import argparse
import json
import logging
import os
import sys
from collections import Counter
from fractions import Fraction
from typing import Callable, Dict, List, Optional

from pydantic import ValidationError

from .config import DEFAULT_SEED, DEFAULT_TRIALS, ENUMERATION_GUARD, SEED_ENV_VAR
from .convergence import convergence_report
from .catalog import catalog
from .errors import (
    FSignatureError,
    GuardExceededError,
    InvariantViolation,
    NonSpecialModuleError,
    UsageError,
)
from .frobenius import decompose, decompose_all, frobenius_ratios
from .group import is_gorenstein, validate_characteristic, validate_group
from .models import (
    AnalyzeReport,
    ARQuiver,
    BEstimate,
    CertifyReport,
    CharacteristicParams,
    ConvergenceReport,
    FrobeniusReport,
    FrobeniusRow,
    GroupParams,
    RunConfig,
    SpecialModuleRow,
    TauComparison,
)
from .monomials import format_monomial, minimal_generators
from .oracle import estimate_b_e, verify_certificate
from .plotting import FigureRenderer
from .quiver import canonical_label, export_quiver
from .series import hj_expand, series_for
from .signature import (
    compare_with_tau,
    dual_fsig_special,
    label_index,
    schedule_surjections,
    special_label,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INVARIANT = 3

renderer = FigureRenderer()


def module_name(label: int) -> str:
    return "R" if label == 0 else f"M_{label}"


def approx(value: Fraction) -> str:
    """Exact value with a decimal hint, e.g. "3/7 ≈ 0.4286"."""
    return f"{value.numerator}/{value.denominator} ≈ {float(value):.4f}"


def _require(cfg: RunConfig, command: str, *names: str):
    missing = [f"--{name}" for name in names if getattr(cfg, name) is None]
    if missing:
        raise UsageError(f"{command} needs {', '.join(missing)}")


def _text_format(cfg: RunConfig, command: str):
    if cfg.format not in ("table", "json"):
        raise UsageError(f"{command} prints table or json, not {cfg.format}")


def _characteristic(cfg: RunConfig, g: GroupParams) -> CharacteristicParams:
    return validate_characteristic(cfg.p, cfg.e, g)


def _write_png(path: str, image: bytes):
    try:
        with open(path, "wb") as handle:
            handle.write(image)
    except OSError as e:
        raise UsageError(f"cannot write {path}: {e.strerror or e}") from e


def cmd_analyze(cfg: RunConfig) -> str:
    _text_format(cfg, "analyze")
    g = validate_group(cfg.n, cfg.a)
    s = series_for(g)
    rows = [
        SpecialModuleRow(
            index=t,
            label=special_label(t, g),
            mingens=minimal_generators(special_label(t, g), g).mingens,
            dual_fsignature=dual_fsig_special(t, g),
        )
        for t in range(s.r + 1)
    ]
    report = AnalyzeReport(
        group=g,
        expansion=hj_expand(g),
        series=s,
        specials=rows,
        canonical_label=canonical_label(g),
        gorenstein=is_gorenstein(g),
    )
    if cfg.format == "json":
        return report.model_dump_json(indent=2)

    lines = [
        g.describe(),
        f"HJ continued fraction: {report.expansion.alphas}",
        f"i-series: {', '.join(map(str, s.i_series))}",
        f"j-series: {', '.join(map(str, s.j_series))}",
        "special modules:",
    ]
    for row in rows:
        gens = ", ".join(format_monomial(gen) for gen in row.mingens)
        lines.append(
            f"  {module_name(row.label)}: gens {gens}; s = {approx(row.dual_fsignature)}"
        )
    lines.append(f"canonical module: {module_name(report.canonical_label)}")
    lines.append(f"Gorenstein: {'yes' if report.gorenstein else 'no'}")
    return "\n".join(lines)


def cmd_frobenius(cfg: RunConfig) -> str:
    _require(cfg, "frobenius", "p", "e")
    _text_format(cfg, "frobenius")
    g = validate_group(cfg.n, cfg.a)
    ch = _characteristic(cfg, g)
    vectors = decompose_all(g, ch) if cfg.t is None else [decompose(cfg.t, g, ch)]
    rows = [
        FrobeniusRow(label=dec.source_label, counts=dec.counts, ratios=frobenius_ratios(dec))
        for dec in vectors
    ]
    splitting = next((row.counts[0] for row in rows if row.label == 0), None)
    report = FrobeniusReport(group=g, char=ch, rows=rows, splitting_number=splitting)
    if cfg.format == "json":
        return report.model_dump_json(indent=2)

    lines = []
    for row in rows:
        lines.append(f"^{ch.e}{module_name(row.label)} over {g.describe()}, p = {ch.p}, q = {ch.q}")
        lines.append(f"counts = ({','.join(map(str, row.counts))})")
        for s, (count, ratio) in enumerate(zip(row.counts, row.ratios)):
            if count:
                lines.append(f"  {module_name(s)}: {count}  (c/q^2 = {approx(ratio)})")
    if splitting is not None:
        lines.append(f"a_e = {splitting}")
    return "\n".join(lines)


def cmd_quiver(cfg: RunConfig) -> str:
    g = validate_group(cfg.n, cfg.a)
    if cfg.format == "png":
        if cfg.output is None:
            raise UsageError("quiver --format png needs --output FILE")
        _write_png(cfg.output, renderer.render_quiver(g))
        return f"wrote {cfg.output}"
    fmt = "dot" if cfg.format == "table" else cfg.format
    return export_quiver(g, fmt).rstrip("\n")


def cmd_certify(cfg: RunConfig) -> str:
    _require(cfg, "certify", "p", "e", "t")
    _text_format(cfg, "certify")
    g = validate_group(cfg.n, cfg.a)
    ch = _characteristic(cfg, g)
    if ch.q**2 > ENUMERATION_GUARD and not cfg.unsafe_large:
        raise GuardExceededError(
            f"q^2 = {ch.q ** 2} exceeds the certificate guard {ENUMERATION_GUARD}; pass --unsafe-large"
        )
    label = special_label(cfg.t, g)

    b, cert = schedule_surjections(decompose(label, g, ch), cfg.t)
    passed = verify_certificate(cert, g, ch)
    report = CertifyReport(
        index=cfg.t,
        label=label,
        char=ch,
        b=b,
        ratio=Fraction(b, ch.q**2),
        formula_value=dual_fsig_special(cfg.t, g),
        passed=passed,
        witness_kinds=dict(sorted(Counter(w.kind for w in cert.witnesses).items())),
    )
    if cfg.format == "json":
        text = report.model_dump_json(indent=2)
    else:
        text = _certify_table(report, g, ch)
    if not passed:
        print(text)
        raise InvariantViolation(
            f"scheduler certificate for {module_name(label)} failed the rank check"
        )
    return text


def _certify_table(report: CertifyReport, g: GroupParams, ch: CharacteristicParams) -> str:
    label = report.label
    lines = [
        f"certify {module_name(label)} (t = {report.index}) over {g.describe()}, "
        f"p = {ch.p}, e = {ch.e}, q = {ch.q}",
        f"b = {report.b}" + (" = a_e" if report.index == 0 else ""),
        f"b/q^2 = {approx(report.ratio)}",
        f"s({module_name(label)}) = {approx(report.formula_value)}",
        "witnesses: "
        + ", ".join(f"{count} {kind}" for kind, count in report.witness_kinds.items()),
        "PASS" if report.passed else "FAIL",
    ]
    return "\n".join(lines)


def cmd_compare_tau(cfg: RunConfig) -> str:
    _require(cfg, "compare-tau", "p", "e", "t")
    _text_format(cfg, "compare-tau")
    g = validate_group(cfg.n, cfg.a)
    ch = _characteristic(cfg, g)
    record = compare_with_tau(
        cfg.t, g, ch, trials=cfg.trials, seed=cfg.seed, unsafe=cfg.unsafe_large
    )
    if cfg.format == "json":
        return record.model_dump_json(indent=2)

    name = module_name(record.label)
    lines = [
        f"{name} (t = {record.index}) over {g.describe()}, p = {ch.p}, e = {ch.e}, q = {ch.q}",
        f"s({name}) = {approx(record.s_formula)}",
    ]
    if record.gorenstein:
        lines.append("tau = self; equality (Gorenstein)")
        lines.append(f"b_self = b_tau = {record.b_self}")
    else:
        lines.append(f"tau = {module_name(record.tau_label)}")
        lines.append(
            f"b_self = {record.b_self} (scheduler), b_tau = {record.b_tau} "
            f"(oracle, seed {cfg.seed}, {cfg.trials} trials)"
        )
        lines.append(f"b_self <= b_tau: {'holds' if record.holds else 'VIOLATED'}")
    return "\n".join(lines)


def _convergence_table(report: ConvergenceReport) -> List[str]:
    g = report.group
    lines = [
        f"{g.describe()}, p = {report.p}: a_e/q^2 -> {report.limit} (bound 1/q)",
        "  e      q     a_e  a_e/q^2                  ok",
    ]
    for row in report.splitting:
        lines.append(
            f"  {row.e:<3} {row.q:>6} {row.splitting_number:>7}  {approx(row.ratio):<24} "
            f"{'yes' if row.within_bound else 'NO'}"
        )
    labels = sorted({row.label for row in report.schedules})
    for label in labels:
        rows = [row for row in report.schedules if row.label == label]
        lines.append(
            f"{module_name(label)}: b_e/q^2 -> {rows[0].formula_value} (bound 2n/q)"
        )
        for row in rows:
            lines.append(
                f"  {row.e:<3} {row.q:>6} {row.b:>7}  {approx(row.ratio):<24} "
                f"{'yes' if row.within_bound else 'NO'}"
            )
    return lines


def cmd_convergence(cfg: RunConfig) -> str:
    _require(cfg, "convergence", "p", "e")
    _text_format(cfg, "convergence")
    g = validate_group(cfg.n, cfg.a)
    # max_e = e; check p against the group once up front
    validate_characteristic(cfg.p, 0, g)
    report = convergence_report(g, cfg.p, cfg.e, cfg.t)

    if cfg.output is not None:
        _write_png(cfg.output, renderer.render_convergence(report))
        logger.info(f"Convergence plot written to {cfg.output}")
    if cfg.format == "json":
        return report.model_dump_json(indent=2)
    return "\n".join(_convergence_table(report))


def cmd_estimate(cfg: RunConfig) -> str:
    _require(cfg, "estimate", "p", "e", "t")
    _text_format(cfg, "estimate")
    g = validate_group(cfg.n, cfg.a)
    ch = _characteristic(cfg, g)
    result = estimate_b_e(
        cfg.t, g, ch, trials=cfg.trials, seed=cfg.seed, unsafe=cfg.unsafe_large
    )
    if cfg.format == "json":
        return result.model_dump_json(indent=2)
    lines = [
        f"b_e({module_name(cfg.t)}) over {g.describe()}, p = {ch.p}, e = {ch.e}, q = {ch.q}",
        f"estimate = {result.estimate}" + (" (exact)" if result.exact else " (lower bound)"),
        f"upper bounds: generators {result.mu_ceiling}, Hall {result.hall_bound}, "
        f"rank {result.rank_bound}",
        f"field size {result.field_size}, {result.trials} trials, seed {result.seed}",
    ]
    try:
        index = label_index(cfg.t, g)
    except NonSpecialModuleError:
        lines.append(f"{module_name(cfg.t)} is not special; no closed formula")
    else:
        formula = dual_fsig_special(index, g)
        lines.append(
            f"{module_name(cfg.t)} is special (t = {index}): "
            f"estimate/q^2 = {approx(Fraction(result.estimate, ch.q**2))}, s = {approx(formula)}"
        )
    return "\n".join(lines)


REPORT_MODELS = {
    "analyze": AnalyzeReport,
    "frobenius": FrobeniusReport,
    "quiver": ARQuiver,
    "certify": CertifyReport,
    "compare-tau": TauComparison,
    "convergence": ConvergenceReport,
    "estimate": BEstimate,
}


def report_schema(command: str) -> str:
    """JSON schema of what `command --format json` prints."""
    schema = REPORT_MODELS[command].model_json_schema(mode="serialization")
    return json.dumps(schema, indent=2, sort_keys=True)


COMMANDS: Dict[str, Callable[[RunConfig], str]] = {
    "analyze": cmd_analyze,
    "frobenius": cmd_frobenius,
    "quiver": cmd_quiver,
    "certify": cmd_certify,
    "compare-tau": cmd_compare_tau,
    "convergence": cmd_convergence,
    "estimate": cmd_estimate,
}

HELP = {
    "analyze": "continued fraction, series, special modules and their dual F-signature",
    "frobenius": "multiplicities of the Frobenius pushforward ^eM_t",
    "quiver": "AR quiver as DOT, JSON or a PNG drawing",
    "certify": "run the surjection schedule for a special module and rank-check it",
    "compare-tau": "scheduler b for M against the oracle b for τ(M)",
    "convergence": "a_e/q^2 and b_e/q^2 for e = 1..E against their limits",
    "estimate": "randomized F-surjective number b_e of any M_t",
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, required=True, help="group order")
    common.add_argument("--a", type=int, required=True, help="weight of y")
    common.add_argument("--p", type=int, help="characteristic")
    common.add_argument("--e", type=int, help="Frobenius iterations (max level for convergence)")
    common.add_argument("--t", type=int, help="series index, or label for frobenius/estimate")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"RNG seed ({SEED_ENV_VAR} overrides)")
    common.add_argument("--format", default="table", help="table, json, dot or png")
    common.add_argument("--trials", type=int, default=DEFAULT_TRIALS, help="oracle trials")
    common.add_argument("--unsafe-large", action="store_true", help="lift the q^2 guards")
    common.add_argument("--output", "--plot", dest="output", help="file for PNG output")
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v info, -vv debug")

    parser = argparse.ArgumentParser(
        prog="fsig",
        description="F-signature invariants of cyclic quotient surface singularities 1/n(1,a)",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        subparsers.add_parser(name, parents=[common], help=HELP[name])
    schema = subparsers.add_parser(
        "schema", help="JSON schema of a command's --format json report"
    )
    schema.add_argument(
        "report", choices=sorted(REPORT_MODELS), help="command whose report to describe"
    )
    schema.add_argument("-v", "--verbose", action="count", default=0, help="-v info, -vv debug")
    return parser


def _seed(args: argparse.Namespace) -> int:
    override = os.environ.get(SEED_ENV_VAR)
    if override is None:
        return args.seed
    try:
        return int(override)
    except ValueError:
        raise UsageError(f"{SEED_ENV_VAR}={override!r} is not an integer") from None


def _configure_logging(verbosity: int):
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbosity, logging.DEBUG)
    logging.basicConfig(
        stream=sys.stderr,
        level=level,
        format="%(levelname)s %(name)s: %(message)s",
        force=True,
    )


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_:
        return EXIT_OK if exit_.code == 0 else EXIT_USAGE
    _configure_logging(args.verbose)
    if args.command == "schema":
        print(report_schema(args.report))
        return EXIT_OK
    logger.info(f"Running {args.command} for 1/{args.n}(1,{args.a})")

    try:
        cfg = RunConfig(
            n=args.n,
            a=args.a,
            p=args.p,
            e=args.e,
            t=args.t,
            seed=_seed(args),
            format=args.format,
            trials=args.trials,
            unsafe_large=args.unsafe_large,
            output=args.output,
        )
        output = COMMANDS[args.command](cfg)
    except ValidationError as e:
        message = "; ".join(
            f"{'.'.join(map(str, err['loc'])) or 'options'}: {err['msg']}" for err in e.errors()
        )
        logger.error(f"Invalid options for {args.command}: {message}")
        print(f"error: {message}", file=sys.stderr)
        return EXIT_USAGE
    except InvariantViolation as e:
        logger.error(f"Invariant violated during {args.command}: {e}")
        print(f"error: invariant violated: {e}", file=sys.stderr)
        return EXIT_INVARIANT
    except FSignatureError as e:
        logger.error(f"{args.command} failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE

    stats = catalog.get_group_stats(args.n, args.a)
    logger.debug(f"Result catalog for 1/{args.n}(1,{args.a}): {stats}")
    print(output)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
