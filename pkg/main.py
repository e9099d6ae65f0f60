# main.py - Entry point for the cf-tailbound CLI
import argparse
import csv
import io
import json
import logging
import math
import sys
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from bounds import (
    Method,
    OptimizeOptions,
    Side,
    certify_compact_support,
    certify_half_line,
    compute_bound,
)
from cf_core import CatalogSpec, CharFn, empirical_cf, load_samples, make_catalog_cf
from errors import ParameterDomainError, TailBoundError
from oracle import (
    ViolationReport,
    empirical_oracle,
    empirical_tail,
    expand_case,
    expand_plan,
    halve_bounds,
    oracle_for,
    validate,
)
from settings import get_settings, load_plan
from trigpoly import TrigPoly, parse_kernel

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_PRECONDITION = 2
EXIT_NOT_CERTIFIED = 3

FAULTS = {"halve-bounds": halve_bounds}
SWEEP_COLUMNS = ["axis", "value", "bound", "raw_bound", "quad_error"]

DIST_HELP = (
    "catalog distribution as family:param1,param2 (parameters may be omitted for defaults). "
    "Families: point_mass:c, normal:mu,sigma, cauchy:x0,gamma, laplace:mu,b, exponential:lambda, "
    "uniform:lo,hi, symmetric_stable:alpha,scale, linnik:alpha,scale"
)


@dataclass
class RunConfig:
    subcommand: str
    dist: Optional[str] = None
    samples: Optional[str] = None
    method: Optional[Method] = None
    A: Optional[float] = None
    s: Optional[float] = None
    k: Optional[int] = None
    poly: Optional[TrigPoly] = None
    F0plus: Optional[float] = None
    F0minus: Optional[float] = None
    rel_tol: Optional[float] = None
    abs_tol: Optional[float] = None
    check_poly: bool = True
    output_format: str = "table"
    output: Optional[str] = None
    # sweep
    axis: Optional[str] = None
    sweep_from: Optional[float] = None
    sweep_to: Optional[float] = None
    count: int = 10
    spacing: str = "linear"
    # verify
    plan: Optional[str] = None
    inject_fault: Optional[str] = None
    # certify
    tol: Optional[float] = None
    s_max: Optional[float] = None
    side: Side = Side.TWO_SIDED
    # ecf
    action: str = "bound"
    compare_empirical: bool = False

    def options(self) -> OptimizeOptions:
        return OptimizeOptions(
            poly=self.poly,
            F0plus=self.F0plus,
            F0minus=self.F0minus,
            check_poly=self.check_poly,
            rel_tol=self.rel_tol,
            abs_tol=self.abs_tol,
        )


# ---------- Argument parsing ----------


def _add_source_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--dist", help=DIST_HELP)
    parser.add_argument(
        "--samples",
        help="sample file: one number per line, '#' comments, or a one-column CSV headed 'x'",
    )


def _add_bound_args(parser: argparse.ArgumentParser, method_default: Optional[str] = None) -> None:
    parser.add_argument(
        "--method", default=method_default,
        choices=[m.value for m in Method],
        required=method_default is None,
        help="which bound to compute",
    )
    parser.add_argument("--A", type=float, help="threshold A (theorem1/corollary1 use A = 2*pi/s)")
    parser.add_argument("--s", type=float, help="integration limit s; optimised when omitted")
    parser.add_argument("--k", type=int, help="power k for corollary1 (sin^2k); scanned when omitted")
    parser.add_argument("--cos", help="cosine coefficients a_0,...,a_k for theorem1")
    parser.add_argument(
        "--sin", nargs="?", const="", help="sine coefficients b_1,...,b_k for theorem1 (bare flag means none)"
    )
    parser.add_argument("--kernel", help="named polynomial for theorem1: sin2k:<k> or fejer:<n>")
    parser.add_argument("--F0plus", type=float, help="F(+0) for theorem3-right (default: known value, else 1)")
    parser.add_argument("--F0minus", type=float, help="F(-0) for theorem3-left (default: known value, else 0)")
    parser.add_argument(
        "--no-poly-check", dest="check_poly", action="store_false",
        help="compute theorem1 even if the polynomial fails the non-negativity check",
    )


def _add_common_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--rel-tol", type=float, help="quadrature relative tolerance")
    parser.add_argument("--abs-tol", type=float, help="quadrature absolute tolerance")
    parser.add_argument("--format", dest="output_format", choices=["table", "json", "csv"], default="table")
    parser.add_argument("--output", "-o", help="write output to a file instead of standard output")
    parser.add_argument("--verbose", "-v", action="store_true", help="debug logging")


def _add_certify_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--tol", type=float, help="certification tolerance (default from config)")
    parser.add_argument("--s-max", type=float, help="largest s probed (default from config)")
    parser.add_argument("--side", choices=[s.value for s in Side], default=Side.TWO_SIDED.value)


def _add_sweep_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--axis", choices=["s", "A", "k"], required=True, help="parameter to sweep")
    parser.add_argument("--from", dest="sweep_from", type=float, required=True)
    parser.add_argument("--to", dest="sweep_to", type=float, required=True)
    parser.add_argument("--count", type=int, default=10, help="number of points (ignored for k)")
    parser.add_argument("--spacing", choices=["linear", "log"], default="linear")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cf-tailbound",
        description="Rigorous tail bounds for probability distributions from their characteristic functions",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("bound", help="compute one bound")
    _add_source_args(p)
    _add_bound_args(p)
    _add_common_args(p)

    p = sub.add_parser("sweep", help="compute bounds over a grid of s, A or k")
    _add_source_args(p)
    _add_bound_args(p)
    _add_sweep_args(p)
    _add_common_args(p)

    p = sub.add_parser("verify", help="check bounds against exact tails over a plan")
    p.add_argument("--plan", help="plan YAML (default: config/verify_plan.yaml)")
    p.add_argument("--samples", help="run the empirical plan against this sample file")
    p.add_argument("--inject-fault", choices=sorted(FAULTS), help="test hook: corrupt every bound")
    _add_common_args(p)

    p = sub.add_parser("certify", help="certify that the mass beyond A is negligible")
    _add_source_args(p)
    p.add_argument("--A", type=float, required=True)
    _add_certify_args(p)
    _add_common_args(p)

    p = sub.add_parser("ecf", help="bounds from the empirical CF of a sample file")
    p.add_argument("action", nargs="?", choices=["bound", "sweep", "certify"], default="bound")
    p.add_argument("--samples", required=True, help="sample file")
    _add_bound_args(p, method_default=Method.THEOREM1.value)
    p.add_argument("--axis", choices=["s", "A", "k"])
    p.add_argument("--from", dest="sweep_from", type=float)
    p.add_argument("--to", dest="sweep_to", type=float)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--spacing", choices=["linear", "log"], default="linear")
    _add_certify_args(p)
    p.add_argument("--compare-empirical", action="store_true", help="print the exact empirical tail next to the bound")
    _add_common_args(p)
    return parser


def _poly_from_args(args: argparse.Namespace) -> Optional[TrigPoly]:
    cos_text = getattr(args, "cos", None)
    sin_text = getattr(args, "sin", None)
    kernel = getattr(args, "kernel", None)
    if kernel and (cos_text is not None or sin_text is not None):
        raise ParameterDomainError("give either --kernel or --cos/--sin, not both")
    if kernel:
        return parse_kernel(kernel)
    if cos_text is not None:
        return TrigPoly.from_strings(cos_text, sin_text)
    if sin_text is not None:
        raise ParameterDomainError("--sin needs --cos (a_0 at least)")
    return None


def config_from_args(args: argparse.Namespace) -> RunConfig:
    """Validate parsed arguments into a RunConfig."""
    dist = getattr(args, "dist", None)
    samples = getattr(args, "samples", None)
    if args.subcommand in ("bound", "sweep", "certify") and (dist is None) == (samples is None):
        raise ParameterDomainError("give exactly one input source: --dist or --samples")
    method = getattr(args, "method", None)
    config = RunConfig(
        subcommand=args.subcommand,
        dist=dist,
        samples=samples,
        method=Method.parse(method) if method else None,
        A=getattr(args, "A", None),
        s=getattr(args, "s", None),
        k=getattr(args, "k", None),
        poly=_poly_from_args(args),
        F0plus=getattr(args, "F0plus", None),
        F0minus=getattr(args, "F0minus", None),
        rel_tol=args.rel_tol,
        abs_tol=args.abs_tol,
        check_poly=getattr(args, "check_poly", True),
        output_format=args.output_format,
        output=args.output,
        axis=getattr(args, "axis", None),
        sweep_from=getattr(args, "sweep_from", None),
        sweep_to=getattr(args, "sweep_to", None),
        count=getattr(args, "count", 10),
        spacing=getattr(args, "spacing", "linear"),
        plan=getattr(args, "plan", None),
        inject_fault=getattr(args, "inject_fault", None),
        tol=getattr(args, "tol", None),
        s_max=getattr(args, "s_max", None),
        side=Side(getattr(args, "side", Side.TWO_SIDED.value)),
        action=getattr(args, "action", "bound"),
        compare_empirical=getattr(args, "compare_empirical", False),
    )
    for name in ("rel_tol", "abs_tol", "tol", "s_max"):
        value = getattr(config, name)
        if value is not None and not (math.isfinite(value) and value > 0):
            raise ParameterDomainError(f"--{name.replace('_', '-')} must be positive, got {value}")
    if config.poly is not None and config.method not in (None, Method.THEOREM1):
        raise ParameterDomainError(f"--cos/--sin/--kernel only apply to theorem1, not {config.method.value}")
    return config


# ---------- Output ----------


def round_significant(value: Any, digits: int) -> Any:
    if isinstance(value, bool) or not isinstance(value, (float, np.floating)):
        return value
    if not math.isfinite(value) or value == 0.0:
        return float(value)
    return float(f"{float(value):.{digits}g}")


def format_record(record: Dict[str, Any], digits: Optional[int] = None) -> Dict[str, Any]:
    digits = digits or get_settings().output.significant_digits
    out = {}
    for key, value in record.items():
        if isinstance(value, dict):
            out[key] = format_record(value, digits)
        elif isinstance(value, (list, tuple)):
            out[key] = [
                format_record(v, digits) if isinstance(v, dict) else round_significant(v, digits)
                for v in value
            ]
        else:
            out[key] = round_significant(value, digits)
    return out


def render(records: List[Dict[str, Any]], fmt: str, columns: Optional[List[str]] = None, single: bool = False) -> str:
    columns = columns or sorted({key for record in records for key in record})
    if fmt == "json":
        payload: Any = records[0] if single and len(records) == 1 else records
        return json.dumps(payload, sort_keys=True, indent=2)
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=columns, extrasaction="ignore", lineterminator="\n")
        writer.writeheader()
        for record in records:
            writer.writerow({key: record.get(key, "") for key in columns})
        return buffer.getvalue().rstrip("\n")

    cells = [[str(record.get(key, "")) for key in columns] for record in records]
    widths = [max([len(col)] + [len(row[i]) for row in cells]) for i, col in enumerate(columns)]
    lines = ["  ".join(col.ljust(w) for col, w in zip(columns, widths))]
    lines.append("  ".join("-" * w for w in widths))
    lines.extend("  ".join(cell.ljust(w) for cell, w in zip(row, widths)) for row in cells)
    return "\n".join(lines)


def emit(text: str, output: Optional[str] = None) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as f:
            f.write(text + "\n")
    else:
        print(text)


# ---------- Commands ----------


def load_source(config: RunConfig) -> Tuple[CharFn, Optional[List[float]]]:
    """The CF to bound plus the raw samples when the source is a file."""
    if config.samples is not None:
        samples = load_samples(config.samples)
        return empirical_cf(samples, label=f"empirical({config.samples})"), samples
    return make_catalog_cf(CatalogSpec.parse(config.dist)), None


def _bound_record(cf: CharFn, config: RunConfig, samples: Optional[List[float]], **overrides) -> Dict[str, Any]:
    params = {"A": config.A, "s": config.s, "k": config.k}
    params.update(overrides)
    result = compute_bound(
        cf, config.method, A=params["A"], s=params["s"], k=params["k"],
        poly=config.poly, opts=config.options(),
    )
    record = result.to_record()
    if config.compare_empirical and samples is not None:
        record["empirical_tail"] = empirical_tail(samples, result.threshold, result.side)
    return record


def cmd_bound(config: RunConfig, cf: Optional[CharFn] = None, samples: Optional[List[float]] = None) -> int:
    if cf is None:
        cf, samples = load_source(config)
    record = format_record(_bound_record(cf, config, samples))
    emit(render([record], config.output_format, single=True), config.output)
    return EXIT_OK


def sweep_values(config: RunConfig) -> List[float]:
    if config.axis is None or config.sweep_from is None or config.sweep_to is None:
        raise ParameterDomainError("sweep needs --axis, --from and --to")
    lo, hi = config.sweep_from, config.sweep_to
    if config.axis == "k":
        if lo != int(lo) or hi != int(hi) or not 1 <= lo <= hi:
            raise ParameterDomainError(f"k sweep needs integers 1 <= from <= to, got {lo}, {hi}")
        return list(range(int(lo), int(hi) + 1))
    if not (0 < lo <= hi) or config.count < 1:
        raise ParameterDomainError(f"{config.axis} sweep needs 0 < from <= to and count >= 1")
    grid = np.geomspace(lo, hi, config.count) if config.spacing == "log" else np.linspace(lo, hi, config.count)
    return [float(v) for v in grid]


def cmd_sweep(config: RunConfig, cf: Optional[CharFn] = None, samples: Optional[List[float]] = None) -> int:
    values = sweep_values(config)
    if cf is None:
        cf, samples = load_source(config)
    rows = []
    failures = 0
    for value in values:
        row: Dict[str, Any] = {"axis": config.axis, "value": value}
        try:
            record = _bound_record(cf, config, samples, **{config.axis: value})
            row.update(bound=record["bound"], raw_bound=record["raw_bound"], quad_error=record["quad_error"])
            if "empirical_tail" in record:
                row["empirical_tail"] = record["empirical_tail"]
        except TailBoundError as exc:
            logger.warning("sweep point %s=%s failed: %s", config.axis, value, exc)
            row["error"] = str(exc)
            failures += 1
        rows.append(format_record(row))

    columns = list(SWEEP_COLUMNS)
    if config.compare_empirical and samples is not None:
        columns.append("empirical_tail")
    if failures:
        columns.append("error")
    emit(render(rows, config.output_format, columns), config.output)
    return EXIT_OK if failures < len(rows) else EXIT_PRECONDITION


def run_plan(config: RunConfig) -> ViolationReport:
    transform = FAULTS[config.inject_fault] if config.inject_fault else None
    opts = OptimizeOptions(rel_tol=config.rel_tol, abs_tol=config.abs_tol)
    report = ViolationReport()
    if config.samples is not None:
        samples = load_samples(config.samples)
        cf = empirical_cf(samples, label=f"empirical({config.samples})")
        oracle = empirical_oracle(samples, label=cf.label)
        entries = expand_plan(load_plan(config.plan, key="empirical_plan"))
        report.extend(validate(cf, oracle, entries, bound_transform=transform, opts=opts))
        return report

    for case in load_plan(config.plan):
        spec = CatalogSpec.parse(case["dist"])
        try:
            oracle = oracle_for(spec)
        except TailBoundError as exc:
            report.errors.append({"method": case["method"], "params": {"distribution": spec.label}, "error": str(exc)})
            continue
        cf = make_catalog_cf(spec)
        report.extend(validate(cf, oracle, expand_case(case), bound_transform=transform, opts=opts))
    return report


def cmd_verify(config: RunConfig) -> int:
    try:
        report = run_plan(config)
    except TailBoundError:
        raise
    except (OSError, ValueError, KeyError) as exc:
        raise ParameterDomainError(f"cannot read plan: {exc}") from exc

    summary = (
        f"checked {report.checked} bounds: {len(report.violations)} violations, "
        f"{len(report.errors)} errors"
    )
    print(summary, file=sys.stderr)
    if report.violations or config.output_format == "json":
        emit(json.dumps(format_record(report.to_json()), sort_keys=True, indent=2), config.output)
    return EXIT_OK if report.passed else EXIT_FAILURE


def cmd_certify(config: RunConfig, cf: Optional[CharFn] = None) -> int:
    if cf is None:
        cf, _ = load_source(config)
    defaults = get_settings().certify
    tol = config.tol or defaults.tol
    s_max = config.s_max or defaults.s_max
    opts = OptimizeOptions(rel_tol=config.rel_tol, abs_tol=config.abs_tol)
    if config.side is Side.TWO_SIDED:
        cert = certify_compact_support(cf, config.A, tol, s_max, opts=opts)
    else:
        cert = certify_half_line(cf, config.A, config.side, tol, s_max, opts=opts)
    record = format_record(cert.to_record())
    fmt = "json" if config.output_format == "table" else config.output_format
    emit(render([record], fmt, single=True), config.output)
    return EXIT_OK if cert.certified else EXIT_NOT_CERTIFIED


def cmd_ecf(config: RunConfig) -> int:
    """Empirical CF of a sample file, then the requested action against it."""
    samples = load_samples(config.samples)
    cf = empirical_cf(samples, label=f"empirical({config.samples})")
    logger.info("loaded %d samples from %s", len(samples), config.samples)
    if config.action == "sweep":
        return cmd_sweep(config, cf, samples)
    if config.action == "certify":
        if config.A is None:
            raise ParameterDomainError("certify needs --A")
        return cmd_certify(config, cf)
    return cmd_bound(config, cf, samples)


COMMANDS = {
    "bound": cmd_bound,
    "sweep": cmd_sweep,
    "verify": cmd_verify,
    "certify": cmd_certify,
    "ecf": cmd_ecf,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse arguments, dispatch, and map failures to exit codes."""
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        config = config_from_args(args)
        return COMMANDS[config.subcommand](config)
    except TailBoundError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PRECONDITION
    except Exception as e:
        print(f"An unexpected error occurred: {e}", file=sys.stderr)
        logger.debug("traceback", exc_info=True)
        return EXIT_FAILURE


def main():
    """
    Main entry point for the 'cf-tailbound' CLI tool.
    Subcommands: bound, sweep, verify, certify, ecf.
    """
    sys.exit(run())


if __name__ == "__main__":
    main()
