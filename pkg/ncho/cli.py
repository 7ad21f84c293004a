#!/usr/bin/env python3
"""
ncho command-line front end

Commands:
    verify       run the verification suites
    energy       energy expectation and its standard-Bopp comparison curve
    uncertainty  commutative and NC uncertainty products
    ep-check     pointwise Ermakov-Pinney residuals
    nc-recover   (theta, Omega, c) recovered from Hamiltonian coefficients

Exit codes: 0 success, 1 verification failure, 2 configuration error.
"""

import argparse
import logging
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable, Dict, List, Optional, Sequence, TypeVar

from .config import ConfigLoader, ConfigValidator, RunConfig, load_environment, preset_mapping
from .config.loader import normalize_key
from .ep import CustomFamily, EPFamily, ep_residual
from .errors import (
    ConfigError,
    ConstraintError,
    DomainError,
    MissingCoefficientError,
    NCHOError,
)
from .model import CoefficientSet, NCParams, coefficients_from_nc, recover_nc_parameters
from .output import Column, Table, write_table
from .qstate import (
    QuantumNumbers,
    StateContext,
    energy_expectation,
    recovered_c_supplier,
    uncertainties_commutative,
    uncertainties_noncommutative,
)
from .verification import DEFAULT_TOLERANCES, SuiteTracker, VerificationReport, VerifyOptions, run_suites

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2

T = TypeVar("T")

COLUMNS_HELP = """\
output columns (CSV header "name [unit]", JSON keys "name"):
  energy       t [time], gamma_t [1], E [energy], E_standard_bopp [energy]
  uncertainty  t, dx [length], dp [momentum], dx_dp [action],
               dX_dY [length^2], dPX_dPY [momentum^2], dX_dPX [action]
  ep-check     t, a, b, d, rho [length], residual
  nc-recover   t, theta [length^2], omega_nc [momentum^2], c, residual columns
               (with --theta/--omega-nc: true and recovered values along a
               ramp from the commutative point, plus rel_error)

environment:
  NCHO_QUAD_ORDER_MARGIN  extra Gauss-Laguerre nodes (default 2)
"""

# Flags whose mapping key differs from the argparse destination
_DEST_TO_KEY = {"fmt": "format", "tol": "tol", "suite": "suite"}


# =============================================================================
# Parser
# =============================================================================

def _tolerance(text: str) -> tuple:
    name, sep, value = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected NAME=VAL, got {text!r}")
    try:
        return name.strip(), float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"tolerance {name!r} is not a number: {value!r}")


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--preset", choices=["fig1", "fig2", "static", "roundtrip"])
    common.add_argument("--config", help="Flat key=value run file (flags win on conflict)")
    common.add_argument("--family", choices=["exp", "rational", "static"])

    family = common.add_argument_group("family parameters")
    for flag in ("sigma", "delta", "mu", "gamma", "cconst", "kconst", "chi", "small-delta"):
        family.add_argument(f"--{flag}", type=float)
    family.add_argument("--korder", type=int)

    state = common.add_argument_group("state and grid")
    state.add_argument("--n", type=int)
    state.add_argument("--m", type=int)
    state.add_argument("--t-start", type=float)
    state.add_argument("--t-end", type=float)
    state.add_argument("--samples", type=int)

    nc = common.add_argument_group("oscillator and NC parameters")
    nc.add_argument("--mass", type=float)
    nc.add_argument("--omega", type=float)
    nc.add_argument("--theta", type=float)
    nc.add_argument("--omega-nc", type=float)

    out = common.add_argument_group("output")
    out.add_argument("--format", dest="fmt", choices=["csv", "json"])
    out.add_argument("--out", help="Output path (stdout when omitted)")
    out.add_argument("--tol", type=_tolerance, action="append", metavar="NAME=VAL")
    out.add_argument("--workers", type=int, help="Threads for time-grid evaluation")
    out.add_argument("--perturb-constraint", type=float,
                     help="Scale Delta by (1 + VALUE) to inject a constraint fault")
    out.add_argument("--verbose", "-v", action="store_true")
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ncho",
        description="Time-dependent noncommutative harmonic oscillator toolkit",
        epilog=COLUMNS_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    commands = parser.add_subparsers(dest="command", required=True)
    common = _common_options()
    helps = {
        "verify": "Run verification suites",
        "energy": "Energy expectation over the time grid",
        "uncertainty": "Uncertainty products over the time grid",
        "ep-check": "Pointwise EP residuals",
        "nc-recover": "Recover NC parameters from coefficients",
    }
    for name, text in helps.items():
        sub = commands.add_parser(
            name, parents=[common], help=text, epilog=COLUMNS_HELP,
            formatter_class=argparse.RawDescriptionHelpFormatter,
        )
        if name == "verify":
            sub.add_argument("--suite", action="append", default=argparse.SUPPRESS,
                             help=f"Suite to run (repeatable): {', '.join(DEFAULT_TOLERANCES)}")
            sub.add_argument("--matrix-dim", type=int, default=argparse.SUPPRESS,
                             help="Basis size per mode for invariance checks (default 40)")
    return parser


# =============================================================================
# Configuration
# =============================================================================

def merge_mapping(args: argparse.Namespace) -> Dict[str, Any]:
    """Preset, then config file, then flags"""
    flags = vars(args)
    mapping: Dict[str, Any] = {}
    if "preset" in flags:
        mapping.update(preset_mapping(flags["preset"]))
        mapping["preset"] = flags["preset"]
    if "config" in flags:
        mapping.update(ConfigLoader.load(flags["config"]))

    for dest, value in flags.items():
        if dest in ("config", "verbose", "preset"):
            continue
        key = _DEST_TO_KEY.get(dest, normalize_key(dest))
        if key == "tol":
            mapping.setdefault("tol", {}).update(dict(value))
        else:
            mapping[key] = value

    if mapping["command"] in ("verify", "nc-recover"):
        mapping.setdefault("family", "static")
    return mapping


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """
    Raises:
        ConfigError: With every validation message attached
    """
    mapping = merge_mapping(args)
    ConfigValidator().require_valid(mapping)
    return RunConfig.from_mapping(mapping)


def _tolerance_for(cfg: RunConfig, name: str) -> float:
    return cfg.tolerances.get(name, DEFAULT_TOLERANCES[name])


def _evaluate(times: Sequence[float], fn: Callable[[float], T], workers: int) -> List[T]:
    """Map fn over the grid, results in grid order"""
    if workers <= 1:
        return [fn(t) for t in times]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, times))


def _status(message: str) -> None:
    print(message, file=sys.stderr)


# =============================================================================
# Commands
# =============================================================================

def _c_supplier(cfg: RunConfig, family: EPFamily):
    if cfg.n == cfg.m:
        return None
    if cfg.oscillator is None:
        raise MissingCoefficientError(
            f"n={cfg.n} != m={cfg.m} needs c(t): pass --mass and --omega to recover it"
        )
    return recovered_c_supplier(family, cfg.oscillator)


def cmd_energy(cfg: RunConfig) -> int:
    """Rows (t, Gamma t, E, E_standard_bopp)"""
    family = cfg.build_family()
    comparison = family if isinstance(family, CustomFamily) else family.standard_bopp_limit()
    qn = QuantumNumbers(cfg.n, cfg.m)
    ctx = StateContext(qn, family, _c_supplier(cfg, family))
    reference = StateContext(qn, comparison, _c_supplier(cfg, comparison))
    gamma = getattr(family, "gamma", 0.0)

    def row(t: float) -> tuple:
        return t, gamma * t, energy_expectation(ctx, t), energy_expectation(reference, t)

    table = Table([Column("t", "time"), Column("gamma_t"), Column("E", "energy"), Column("E_standard_bopp", "energy")])
    for values in _evaluate(cfg.grid.times(), row, cfg.workers):
        table.add_row(values)
    write_table(table, cfg.output_format, cfg.out)
    return EXIT_OK


def cmd_uncertainty(cfg: RunConfig) -> int:
    """Commutative and NC uncertainty products over the grid"""
    family = cfg.build_family()
    ctx = StateContext(QuantumNumbers(cfg.n, cfg.m), family)
    nc = cfg.nc_params or NCParams(0.0, 0.0)

    def row(t: float) -> tuple:
        plain = uncertainties_commutative(ctx, t)
        deformed = uncertainties_noncommutative(ctx, t, nc)
        return t, plain.dx1, plain.dp1, plain.dx_dp, deformed.dX_dY, deformed.dPX_dPY, deformed.dX_dPX

    table = Table([
        Column("t", "time"),
        Column("dx", "length"),
        Column("dp", "momentum"),
        Column("dx_dp", "action"),
        Column("dX_dY", "length^2"),
        Column("dPX_dPY", "momentum^2"),
        Column("dX_dPX", "action"),
    ])
    for values in _evaluate(cfg.grid.times(), row, cfg.workers):
        table.add_row(values)
    write_table(table, cfg.output_format, cfg.out)
    return EXIT_OK


def cmd_ep_check(cfg: RunConfig) -> int:
    """Pointwise EP residuals; exit 1 if any exceeds the ep-residual tolerance"""
    family = cfg.build_family()
    tol = _tolerance_for(cfg, "ep-residual")

    def row(t: float) -> tuple:
        s = family.sample(t)
        return t, s.a, s.b, s.d, s.rho, ep_residual(s)

    table = Table([
        Column("t", "time"), Column("a"), Column("b"), Column("d"), Column("rho", "length"), Column("residual"),
    ])
    for values in _evaluate(cfg.grid.times(), row, cfg.workers):
        table.add_row(values)
    write_table(table, cfg.output_format, cfg.out)

    worst = max(abs(r) for r in table.column("residual"))
    if worst > tol:
        _status(f"✗ EP residual {worst:.3e} exceeds {tol:.1e}")
        return EXIT_FAILURE
    _status(f"✓ EP residual {worst:.3e} within {tol:.1e}")
    return EXIT_OK


def _nc_roundtrip(cfg: RunConfig) -> int:
    osc = cfg.oscillator
    tol = _tolerance_for(cfg, "nc-roundtrip")
    t0, t1 = cfg.grid.t_start, cfg.grid.t_end

    def row(t: float) -> tuple:
        ramp = (t - t0) / (t1 - t0)
        truth = NCParams(cfg.theta * ramp, cfg.omega_nc * ramp)
        recovered = recover_nc_parameters(coefficients_from_nc(truth, osc), osc)
        error = max(abs(recovered.nc.theta - truth.theta), abs(recovered.nc.omega_nc - truth.omega_nc))
        scale = max(abs(truth.theta), abs(truth.omega_nc))
        return (
            t, truth.theta, truth.omega_nc, recovered.nc.theta, recovered.nc.omega_nc, recovered.c,
            error / scale if scale > 0 else error,
        )

    table = Table([
        Column("t", "time"),
        Column("theta_true", "length^2"),
        Column("omega_nc_true", "momentum^2"),
        Column("theta", "length^2"),
        Column("omega_nc", "momentum^2"),
        Column("c", "frequency"),
        Column("rel_error"),
    ])
    for values in _evaluate(cfg.grid.times(), row, cfg.workers):
        table.add_row(values)
    write_table(table, cfg.output_format, cfg.out)

    worst = max(table.column("rel_error"))
    if worst > tol:
        _status(f"✗ NC roundtrip error {worst:.3e} exceeds {tol:.1e}")
        return EXIT_FAILURE
    _status(f"✓ NC roundtrip error {worst:.3e} within {tol:.1e}")
    return EXIT_OK


def cmd_nc_recover(cfg: RunConfig) -> int:
    """(theta(t), Omega(t), c(t)) from a family's (a, b, d), or a forward-map roundtrip"""
    if cfg.oscillator is None:
        raise ConfigError("nc-recover needs --mass and --omega")
    if cfg.nc_params is not None:
        return _nc_roundtrip(cfg)

    family = cfg.build_family()
    osc = cfg.oscillator

    def row(t: float) -> tuple:
        s = family.sample(t)
        result = recover_nc_parameters(CoefficientSet(a=s.a, b=s.b, c=math.nan, d=s.d), osc)
        return t, result.nc.theta, result.nc.omega_nc, result.c, result.residual, result.b_residual

    table = Table([
        Column("t", "time"),
        Column("theta", "length^2"),
        Column("omega_nc", "momentum^2"),
        Column("c", "frequency"),
        Column("ad_residual"),
        Column("b_residual"),
    ])
    for values in _evaluate(cfg.grid.times(), row, cfg.workers):
        table.add_row(values)
    write_table(table, cfg.output_format, cfg.out)
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    """Run the selected suites and print the report; exit 0 iff all pass"""
    unknown = sorted(set(cfg.tolerances) - set(DEFAULT_TOLERANCES))
    if unknown:
        raise ConfigError(f"Unknown tolerance name(s) {unknown}; expected {list(DEFAULT_TOLERANCES)}")
    unknown = sorted(set(cfg.suites) - set(DEFAULT_TOLERANCES))
    if unknown:
        raise ConfigError(f"Unknown suite(s) {unknown}; expected {list(DEFAULT_TOLERANCES)}")

    tracker = SuiteTracker()
    options = VerifyOptions(perturb=cfg.perturb_constraint, matrix_dim=cfg.matrix_dim)
    results = run_suites(cfg.suites or None, cfg.tolerances, options, tracker)
    VerificationReport.print_summary(results, tracker.get_summary())

    if all(r.passed for r in results):
        print("✓ All suites passed")
        return EXIT_OK
    print("✗ Some suites failed")
    return EXIT_FAILURE


COMMANDS: Dict[str, Callable[[RunConfig], int]] = {
    "verify": cmd_verify,
    "energy": cmd_energy,
    "uncertainty": cmd_uncertainty,
    "ep-check": cmd_ep_check,
    "nc-recover": cmd_nc_recover,
}


# =============================================================================
# Entry point
# =============================================================================

def main(argv: Optional[Sequence[str]] = None) -> int:
    load_environment()
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if getattr(args, "verbose", False) else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )

    try:
        cfg = resolve_config(args)
        return COMMANDS[cfg.command](cfg)
    except ConfigError as e:
        _status(f"✗ Configuration error: {e}")
        for error in e.errors:
            _status(f"  • {error}")
        return EXIT_CONFIG
    except FileNotFoundError as e:
        _status(f"✗ Configuration error: {e}")
        return EXIT_CONFIG
    except (ConstraintError, MissingCoefficientError, DomainError) as e:
        _status(f"✗ {type(e).__name__}: {e}")
        return EXIT_CONFIG
    except NCHOError as e:
        _status(f"✗ {type(e).__name__}: {e}")
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
