#!/usr/bin/env python3
"""
Command-line surface: run | verify | convergence | compare.

Exit codes: 0 success, 1 validation error, 2 numerical failure,
3 verification failure. Every failure also prints one line
`error code=<n> kind=<ExceptionName> message=<text>` on stderr.
"""
import argparse
import logging
import sys
from pathlib import Path

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.config import RunConfig, load_config, override_config
from src.dynamics import PotentialMode
from src.timestepper import compare_formulations, convergence_study, run
from src.transform import NumericalFailure
from src.utils import settings
from src.verification import format_table, run_suite
from src.verification.suite import CONVERGENCE_DTS, CONVERGENCE_REFERENCE_DT

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_NUMERICAL = 2
EXIT_VERIFY = 3


class UsageError(ValueError):
    """Malformed command line."""


class _Parser(argparse.ArgumentParser):
    # subparsers inherit the class, so every level reports through UsageError
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _load(args) -> RunConfig:
    config = load_config(args.config) if args.config else RunConfig()
    changes = {}
    if args.seed is not None:
        changes["seed"] = args.seed
    if getattr(args, "out", None) is not None:
        changes["out_dir"] = str(args.out)
    return override_config(config, **changes) if changes else config


def _parse_dts(text: str):
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"--dts expects comma-separated numbers: {exc}") from exc


def cmd_run(args) -> int:
    config = _load(args)
    if config.out_dir is None:
        config = override_config(config, out_dir=str(settings.output_root / "run"))
    print(f"🚀 Running {config.n_steps} {config.scheme.kind} steps on a {config.grid.n}x{config.grid.n} grid")
    result = run(config)
    last = result.records[-1]
    print(f"✅ Finished at t={last.t:.6g}")
    print(f"   mass_u:     {last.mass_u:.15g}")
    print(f"   energy:     {last.energy:.10g}")
    print(f"   max |u|:    {last.max_abs_u:.15g}")
    print(f"   separation floor (1 - max|u|): {result.monitor.separation_floor:.6e}")
    if result.k_residuals:
        print(f"   max K residual per step:       {max(r for _, r in result.k_residuals):.6e}")
    for warning in result.monitor.violations:
        print(f"⚠️  {warning}")
    print(f"📁 Outputs in {config.out_dir}")
    return EXIT_OK


def cmd_verify(args) -> int:
    config = _load(args)
    print("🔍 Running verification suite")
    print("=" * 60)
    results = run_suite(override_config(config, out_dir=None))
    print(format_table(results))
    failed = [r for r in results if not r.passed]
    if failed:
        print(f"\n❌ {len(failed)} of {len(results)} checks failed")
        _error_line(EXIT_VERIFY, "VerificationFailure", ", ".join(r.name for r in failed))
        return EXIT_VERIFY
    print(f"\n✅ All {len(results)} checks passed")
    return EXIT_OK


def cmd_convergence(args) -> int:
    config = _load(args)
    dts = args.dts or list(CONVERGENCE_DTS)
    reference = args.reference_dt
    if reference is None and not args.dts:
        reference = CONVERGENCE_REFERENCE_DT
    rows = convergence_study(config, dts, reference_dt=reference, linear_only=args.linear_only)
    print(f"📊 {config.scheme.kind} convergence at t_end={config.t_end:g}")
    print(f"{'dt':>12}  {'error':>12}  {'order':>7}")
    for row in rows:
        order = "" if row.observed_order is None else f"{row.observed_order:.3f}"
        print(f"{row.dt:>12.4e}  {row.error:>12.4e}  {order:>7}")
    return EXIT_OK


def cmd_compare(args) -> int:
    config = _load(args)
    mode = PotentialMode.parse(args.baseline)
    result = compare_formulations(config, mode)
    print(f"📊 g-formulation vs {mode.label()}")
    print(f"{'t':>12}  {'mass_u(g)':>22}  {'mass_u(base)':>22}  {'energy(g)':>16}  {'energy(base)':>16}  "
          f"{'max|u|(g)':>10}  {'max|u|(base)':>12}  {'sup diff':>10}")
    for row in result.rows:
        print(f"{row.t:>12.6g}  {row.mass_u_g:>22.15g}  {row.mass_u_base:>22.15g}  "
              f"{row.energy_g:>16.10g}  {row.energy_base:>16.10g}  "
              f"{row.max_abs_u_g:>10.6f}  {row.max_abs_u_base:>12.6f}  {row.sup_diff:>10.3e}")
    print("\n📈 g-formulation diagnostics")
    print(f"{'t':>12}  {'max|g|':>12}  {'1 - max|u|':>12}  {'|grad K|':>12}  {'dissipation':>12}")
    for rec in result.g_records:
        dissipation = "" if rec.dissipation_check is None else f"{rec.dissipation_check:.3e}"
        print(f"{rec.t:>12.6g}  {rec.max_abs_g:>12.6g}  {1.0 - rec.max_abs_u:>12.6e}  "
              f"{rec.grad_K_L2:>12.6e}  {dissipation:>12}")
    print(f"\n‖u_g − u_base‖∞ at t_end: {result.sup_diff:.6e}")
    return EXIT_OK


def _error_line(code: int, kind: str, message: str) -> None:
    message = " ".join(str(message).split())
    print(f"error code={code} kind={kind} message={message}", file=sys.stderr)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(description="Cahn-Hilliard solver with logarithmic potential in the g = atanh(u) variable")
    parser.add_argument("--log-level", default=settings.log_level, type=str.upper,
                        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
                        help=f"Logging level (default: {settings.log_level})")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_out=True):
        p.add_argument("--config", type=Path, default=None, help="YAML run file (default: built-in defaults)")
        p.add_argument("--seed", type=int, default=None, help="Override the initial-condition seed (u64)")
        if with_out:
            p.add_argument("--out", type=Path, default=None, help="Output directory (overrides out_dir)")

    p_run = sub.add_parser("run", help="Time evolution with diagnostics and snapshots")
    common(p_run)
    p_run.set_defaults(func=cmd_run)

    p_verify = sub.add_parser("verify", help="Run the identity/invariant oracle suite")
    common(p_verify, with_out=False)
    p_verify.set_defaults(func=cmd_verify)

    p_conv = sub.add_parser("convergence", help="Temporal convergence table")
    common(p_conv, with_out=False)
    p_conv.add_argument("--dts", type=_parse_dts, default=None,
                        help="Comma-separated decreasing time steps (default: 4e-5,2e-5,1e-5,5e-6)")
    p_conv.add_argument("--reference-dt", type=float, default=None, help="Reference time step (default: half the finest)")
    p_conv.add_argument("--linear-only", action="store_true", help="Drop the nonlinear term (exact semigroup)")
    p_conv.set_defaults(func=cmd_convergence)

    p_cmp = sub.add_parser("compare", help="g-formulation vs a direct-u baseline from the same u0")
    common(p_cmp, with_out=False)
    p_cmp.add_argument("--baseline", default="truncated:100",
                       help="truncated:N | phieps:EPS | exactlog (default: truncated:100)")
    p_cmp.set_defaults(func=cmd_compare)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        _error_line(EXIT_VALIDATION, type(exc).__name__, exc)
        return EXIT_VALIDATION
    try:
        logging.basicConfig(level=args.log_level.upper(), format="%(asctime)s %(levelname)s %(name)s: %(message)s")
        return args.func(args)
    except NumericalFailure as exc:
        _error_line(EXIT_NUMERICAL, type(exc).__name__, exc)
        return EXIT_NUMERICAL
    except (ValueError, OSError) as exc:
        _error_line(EXIT_VALIDATION, type(exc).__name__, exc)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
