"""Command-line front end.

Three verbs:

    compute    bound values for one potential over chosen partial waves
    reproduce  recompute one of the four reference tables with deviations
    check      sandwich + invariant suite, nonzero exit on any violation

Configuration is a flat INI file (a [potential] section plus optional [run]
and [quadrature] sections); every key can also be given as a flag.  Exit
codes: 0 success, 1 invariant or reproduction failure, 2 configuration
error, 3 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import io
import sys
import time
from dataclasses import dataclass, field

from . import bounds, exact
from .bounds import Method, sandwich
from .errors import (AccuracyError, ConfigurationError, DegeneratePotentialError,
                     DomainError, InvariantViolation, NoBoundStateError,
                     SearchRangeError, TruncationError)
from .potentials import Kind, Potential
from .quadrature import DEFAULT_CONFIG, QuadratureConfig
from .tables import reproduce_table

EXIT_OK = 0
EXIT_INVARIANT = 1
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3

#: stable wide-output column order
CSV_COLUMNS = ("ell", "g_BS", "g_eq2", "g_B", "g_GGMT", "g_c_shoot",
               "g_c_nystrom", "g_New", "p*", "g_C1", "g_C2")

_BOUND_METHODS = {
    "bargmann_schwinger": bounds.lower_bargmann_schwinger,
    "second_order": bounds.lower_second_order,
    "third_order": bounds.lower_third_order,
    "ggmt": bounds.lower_ggmt,
    "calogero_i": bounds.upper_calogero_I,
    "calogero_ii": bounds.upper_calogero_II,
    "variational": bounds.upper_variational,
}

_ORACLES = ("shooting", "nystrom")

METHOD_NAMES = tuple(_BOUND_METHODS) + ("variational_closed_form",) + _ORACLES

_METHOD_COLUMN = {
    "bargmann_schwinger": "g_BS",
    "second_order": "g_eq2",
    "third_order": "g_B",
    "ggmt": "g_GGMT",
    "shooting": "g_c_shoot",
    "nystrom": "g_c_nystrom",
    "variational": "g_New",
    "calogero_i": "g_C1",
    "calogero_ii": "g_C2",
}


@dataclass(frozen=True)
class RunConfig:
    potential: Potential
    ells: tuple[int, ...]
    methods: tuple[str, ...]
    fmt: str = "csv"
    digits: int = 6
    quadrature: QuadratureConfig = field(default_factory=QuadratureConfig)
    n_nystrom: int = 400

    def __post_init__(self):
        if not self.ells:
            raise ConfigurationError("at least one ell is required")
        if any(e < 0 for e in self.ells):
            raise ConfigurationError("ell values must be nonnegative")
        if not self.methods:
            raise ConfigurationError("at least one method is required")
        for m in self.methods:
            if m != "all" and m not in METHOD_NAMES:
                raise ConfigurationError(
                    f"unknown method {m!r}; choose from {', '.join(METHOD_NAMES)} or 'all'")
        if self.fmt not in ("csv", "md", "markdown"):
            raise ConfigurationError(f"format must be csv or md, got {self.fmt!r}")
        if self.digits < 2:
            raise ConfigurationError("digits must be at least 2")


@dataclass(frozen=True)
class RunRecord:
    ell: int
    method: str
    value: float
    optimal_param: float | None
    error_estimate: float
    wall_time_s: float


def expand_methods(names, potential: Potential) -> tuple[str, ...]:
    """Resolve 'all' to every applicable bound method, order preserved."""
    out = []
    for name in names:
        if name == "all":
            out.extend(_BOUND_METHODS)
            if potential.kind is Kind.SQUARE_WELL:
                out.append("variational_closed_form")
        else:
            out.append(name)
    seen = set()
    uniq = []
    for n in out:
        if n not in seen:
            seen.add(n)
            uniq.append(n)
    return tuple(uniq)


def run(config: RunConfig) -> list[RunRecord]:
    """One record per (ell, method), in deterministic order."""
    methods = expand_methods(config.methods, config.potential)
    if "variational_closed_form" in methods and config.potential.kind is not Kind.SQUARE_WELL:
        raise ConfigurationError(
            "method variational_closed_form applies only to potential kind square_well")
    cfg = config.quadrature
    records = []
    for ell in config.ells:
        for name in methods:
            t0 = time.perf_counter()
            if name == "shooting":
                value, param = exact.critical_coupling_shooting(
                    config.potential, ell, cfg), None
                err = 1e-11 * value   # threshold root width + integrator error
            elif name == "nystrom":
                value, param = exact.critical_coupling_nystrom(
                    config.potential, ell, config.n_nystrom, cfg), None
                err = 1e-5 * value    # discretization scale at the default n
            elif name == "variational_closed_form":
                res = bounds.upper_variational_square_well(ell)
                value, param = res.value, res.optimal_param
                err = 0.0
            else:
                res = _BOUND_METHODS[name](config.potential, ell, cfg)
                value, param = res.value, res.optimal_param
                err = 10.0 * cfg.rel_tol * value
            records.append(RunRecord(ell, name, value, param, err,
                                     time.perf_counter() - t0))
    return records


def render_wide(records: list[RunRecord], fmt: str, digits: int) -> str:
    """Wide table, one row per ell, fixed column order; blank when absent."""
    num = f"{{:.{digits}g}}"
    by_ell: dict[int, dict[str, str]] = {}
    for rec in records:
        col = _METHOD_COLUMN.get(rec.method)
        if col is None:
            continue
        cells = by_ell.setdefault(rec.ell, {})
        cells[col] = num.format(rec.value)
        if rec.method == "variational" and rec.optimal_param is not None:
            cells["p*"] = num.format(rec.optimal_param)
    rows = [[str(ell)] + [by_ell[ell].get(c, "") for c in CSV_COLUMNS[1:]]
            for ell in sorted(by_ell)]
    if fmt == "csv":
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        writer.writerows(rows)
        return out.getvalue()
    lines = ["| " + " | ".join(CSV_COLUMNS) + " |",
             "|" + "---|" * len(CSV_COLUMNS)]
    lines += ["| " + " | ".join(r) + " |" for r in rows]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# configuration parsing
# ---------------------------------------------------------------------------

def load_grid_csv(path: str) -> list[tuple[float, float]]:
    """Two-column CSV (radius, value); a non-numeric first row is a header."""
    rows = []
    with open(path, newline="", encoding="utf-8") as fh:
        for rownum, row in enumerate(csv.reader(fh)):
            if not row or not "".join(row).strip():
                continue
            try:
                rows.append((float(row[0]), float(row[1])))
            except (ValueError, IndexError):
                if rownum == 0:
                    continue
                raise ConfigurationError(
                    f"{path}: line {rownum + 1} is not 'radius,value'")
    if not rows:
        raise ConfigurationError(f"{path}: no grid rows found")
    return rows


def build_potential(kind: str, R: float = 1.0, alpha: float | None = None,
                    shell_width: float | None = None,
                    grid_csv: str | None = None) -> Potential:
    try:
        k = Kind(kind)
    except ValueError:
        raise ConfigurationError(
            f"unknown potential kind {kind!r}; choose from "
            f"{', '.join(x.value for x in Kind)}") from None
    if k is Kind.SQUARE_WELL:
        return Potential.square_well(R)
    if k is Kind.EXPONENTIAL:
        return Potential.exponential(R)
    if k is Kind.YUKAWA:
        return Potential.yukawa(R)
    if k is Kind.STIS:
        if alpha is None:
            raise ConfigurationError("field alpha is required for kind stis")
        return Potential.stis(alpha=alpha, R=R)
    if k is Kind.SHELL:
        if shell_width is None:
            raise ConfigurationError("field shell_width is required for kind shell")
        return Potential.shell(width=shell_width, R=R)
    if grid_csv is None:
        raise ConfigurationError("field grid_csv is required for kind tabulated")
    return Potential.tabulated(load_grid_csv(grid_csv))


def _parse_ints(text: str) -> tuple[int, ...]:
    return tuple(int(tok) for tok in text.replace(",", " ").split())


def _parse_names(text: str) -> tuple[str, ...]:
    return tuple(text.replace(",", " ").split())


def read_config_file(path: str) -> dict:
    parser = configparser.ConfigParser()
    if not parser.read(path):
        raise ConfigurationError(f"cannot read config file {path!r}")
    out: dict = {}
    if parser.has_section("potential"):
        sec = parser["potential"]
        out["kind"] = sec.get("kind")
        if sec.get("R") is not None:
            out["R"] = sec.getfloat("R")
        if sec.get("alpha") is not None:
            out["alpha"] = sec.getfloat("alpha")
        if sec.get("shell_width") is not None:
            out["shell_width"] = sec.getfloat("shell_width")
        if sec.get("grid_csv") is not None:
            out["grid_csv"] = sec.get("grid_csv")
    if parser.has_section("run"):
        sec = parser["run"]
        if sec.get("ell") is not None:
            out["ells"] = _parse_ints(sec.get("ell"))
        if sec.get("methods") is not None:
            out["methods"] = _parse_names(sec.get("methods"))
        if sec.get("format") is not None:
            out["fmt"] = sec.get("format")
        if sec.get("digits") is not None:
            out["digits"] = sec.getint("digits")
    if parser.has_section("quadrature"):
        sec = parser["quadrature"]
        kwargs = {}
        for key, conv in (("rel_tol", sec.getfloat), ("abs_tol", sec.getfloat),
                          ("max_subdivisions", sec.getint),
                          ("max_radius", sec.getfloat)):
            if sec.get(key) is not None:
                kwargs[key] = conv(key)
        out["quadrature"] = QuadratureConfig(**kwargs)
    return out


def _merge_run_config(args) -> RunConfig:
    opts: dict = {}
    if args.config:
        opts.update(read_config_file(args.config))
    if args.potential:
        opts["kind"] = args.potential
    if args.R is not None:
        opts["R"] = args.R
    if args.alpha is not None:
        opts["alpha"] = args.alpha
    if args.shell_width is not None:
        opts["shell_width"] = args.shell_width
    if args.grid_csv is not None:
        opts["grid_csv"] = args.grid_csv
    if args.ell:
        opts["ells"] = tuple(args.ell)
    if args.methods:
        opts["methods"] = tuple(args.methods)
    if args.format:
        opts["fmt"] = args.format
    if args.digits is not None:
        opts["digits"] = args.digits
    if not opts.get("kind"):
        raise ConfigurationError("field kind: no potential given (flag or config file)")
    potential = build_potential(opts["kind"], opts.get("R", 1.0),
                                opts.get("alpha"), opts.get("shell_width"),
                                opts.get("grid_csv"))
    return RunConfig(
        potential=potential,
        ells=opts.get("ells", (0,)),
        methods=opts.get("methods", ("all",)),
        fmt=opts.get("fmt", "csv"),
        digits=opts.get("digits", 6),
        quadrature=opts.get("quadrature", DEFAULT_CONFIG),
    )


# ---------------------------------------------------------------------------
# verbs
# ---------------------------------------------------------------------------

def _cmd_compute(args) -> int:
    config = _merge_run_config(args)
    records = run(config)
    if args.records:
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["ell", "method", "value", "optimal_param",
                         "error_estimate", "wall_time_s"])
        num = f"{{:.{config.digits}g}}"
        for r in records:
            writer.writerow([r.ell, r.method, num.format(r.value),
                             "" if r.optimal_param is None else num.format(r.optimal_param),
                             f"{r.error_estimate:.2e}", f"{r.wall_time_s:.3f}"])
        text = out.getvalue()
    else:
        fmt = "csv" if config.fmt == "csv" else "md"
        text = render_wide(records, fmt, config.digits)
    _emit(text, args.out)
    return EXIT_OK


def _cmd_reproduce(args) -> int:
    artifact = reproduce_table(args.table)
    fmt = args.format or "csv"
    text = artifact.to_csv(args.digits) if fmt == "csv" else artifact.to_markdown(args.digits)
    _emit(text, args.out)
    status = "PASS" if artifact.passed else "FAIL"
    print(f"table {args.table}: {status} (max relative deviation "
          f"{artifact.max_deviation:.2e})", file=sys.stderr)
    return EXIT_OK if artifact.passed else EXIT_INVARIANT


_CHECK_BUILTINS = ("square_well", "exponential", "yukawa", "stis")


def _cmd_check(args) -> int:
    if args.config or args.potential:
        config = _merge_run_config(args)
        potentials = [config.potential]
        ells = config.ells
    else:
        potentials = [build_potential(k, alpha=1.0 if k == "stis" else None)
                      for k in _CHECK_BUILTINS]
        ells = tuple(args.ell) if args.ell else (0, 1, 2)
    failures = 0

    def report(ok: bool, text: str):
        nonlocal failures
        print(f"{'ok  ' if ok else 'FAIL'} {text}")
        if not ok:
            failures += 1

    for pot in potentials:
        reg = pot.validate_regularity(0.5)
        report(reg.ok, f"{pot.label()}: regular at origin and infinity")
        if not reg.ok:
            # outside the admissible class the bounds carry no guarantee
            continue
        for ell in ells:
            try:
                rep = sandwich(pot, ell)
            except InvariantViolation as exc:
                report(False, str(exc))
                continue
            name = f"{pot.label()} ell={ell}"
            report(rep.ordering_ok(),
                   f"{name}: max lower {rep.max_lower:.6g} <= exact "
                   f"{rep.exact_shooting:.6g} <= min upper {rep.min_upper:.6g}")
            seq = [rep.by_method(Method.BARGMANN_SCHWINGER).value,
                   rep.by_method(Method.SECOND_ORDER).value,
                   rep.by_method(Method.THIRD_ORDER).value]
            report(seq[0] <= seq[1] * (1 + 1e-9) and seq[1] <= seq[2] * (1 + 1e-9),
                   f"{name}: lower sequence monotone "
                   f"({seq[0]:.6g} <= {seq[1]:.6g} <= {seq[2]:.6g})")
            report(rep.by_method(Method.GGMT).value >= seq[0] * (1 - 1e-9),
                   f"{name}: optimized power family at least first moment")
            agree = abs(rep.exact_shooting - rep.exact_nystrom) / rep.exact_shooting
            report(agree <= 1e-5,
                   f"{name}: solvers agree to {agree:.2e}")
    return EXIT_OK if failures == 0 else EXIT_INVARIANT


def _emit(text: str, out_path: str | None):
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _add_potential_flags(p: argparse.ArgumentParser):
    p.add_argument("--config", help="INI config file")
    p.add_argument("--potential", help="potential kind "
                   f"({', '.join(k.value for k in Kind)})")
    p.add_argument("--R", type=float, help="radius parameter (default 1)")
    p.add_argument("--alpha", type=float, help="cutoff multiplier (stis)")
    p.add_argument("--shell-width", dest="shell_width", type=float,
                   help="shell width (shell)")
    p.add_argument("--grid-csv", dest="grid_csv",
                   help="two-column CSV of (radius, value) (tabulated)")
    p.add_argument("--ell", type=int, nargs="+", help="partial waves")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gcrit",
        description="Bracket the critical coupling of attractive central potentials")
    sub = parser.add_subparsers(dest="verb", required=True)

    p_compute = sub.add_parser("compute", help="compute bound values")
    _add_potential_flags(p_compute)
    p_compute.add_argument("--methods", nargs="+",
                           help=f"methods to run: {', '.join(METHOD_NAMES)} or all")
    p_compute.add_argument("--format", choices=("csv", "md"), help="output format")
    p_compute.add_argument("--records", action="store_true",
                           help="long format: one line per (ell, method) with timing")
    p_compute.add_argument("--digits", type=int, help="significant digits (default 6)")
    p_compute.add_argument("--out", help="write output to a file instead of stdout")
    p_compute.set_defaults(func=_cmd_compute)

    p_repr = sub.add_parser("reproduce", help="recompute a reference table")
    p_repr.add_argument("--table", type=int, required=True, choices=(1, 2, 3, 4))
    p_repr.add_argument("--format", choices=("csv", "md"))
    p_repr.add_argument("--digits", type=int, default=6)
    p_repr.add_argument("--out", help="write output to a file instead of stdout")
    p_repr.set_defaults(func=_cmd_reproduce)

    p_check = sub.add_parser("check", help="run the invariant suite")
    _add_potential_flags(p_check)
    p_check.add_argument("--methods", nargs="+", help=argparse.SUPPRESS)
    p_check.add_argument("--format", help=argparse.SUPPRESS)
    p_check.add_argument("--digits", type=int, help=argparse.SUPPRESS)
    p_check.set_defaults(func=_cmd_check)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigurationError, DomainError, DegeneratePotentialError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (AccuracyError, NoBoundStateError, SearchRangeError,
            TruncationError) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
