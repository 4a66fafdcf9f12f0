"""
Run orchestration: time loop, outputs, convergence studies.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..config.initial import make_initial
from ..config.loader import serialize_config
from ..config.models import RunConfig
from ..diagnostics.monitors import DiagnosticsRecord, RunMonitor, proof_monitors, record
from ..dynamics.rhs import K_residual, chemical_potential_K
from ..potential.free_energy import linear_growth_rate
from ..spectral.grid import RealField, spectral_grid
from ..storage.diagnostics_csv import write_diagnostics_csv
from ..storage.heatmap import write_heatmap
from ..storage.snapshot import write_snapshot
from .etd import EtdIntegrator, SeparationLossError, State, advance, check_separated, g_integrator

logger = logging.getLogger(__name__)

DIAGNOSTICS_FILE = "diagnostics.csv"
LAST_GOOD_FILE = "last_good.bin"


class ConvergenceSetupError(ValueError):
    pass


@dataclass
class Snapshot:
    step: int
    t: float
    g: RealField
    path: Optional[Path] = None


@dataclass
class RunResult:
    final_state: State
    records: List[DiagnosticsRecord]
    snapshots: List[Snapshot]
    monitor: RunMonitor = field(default_factory=RunMonitor)
    # (t, residual) of K_t across the step ending at each record after the first
    k_residuals: List[Tuple[float, float]] = field(default_factory=list)
    # proof_monitors() at every record, aligned with `records`
    proof: List[Dict[str, float]] = field(default_factory=list)


def unstable_mode_count(config: RunConfig) -> int:
    """Number of resolved Fourier modes with positive linear growth rate around the IC mean."""
    grid = config.grid_spec()
    p = config.potential()
    sg = spectral_grid(grid)
    g0 = make_initial(config.ic, grid, config.seed)
    u_bar = float(np.clip(np.mean(np.tanh(g0.values)), -0.999999, 0.999999))
    rates = linear_growth_rate(sg.k2, u_bar, p)
    return int(np.count_nonzero((rates > 0) & sg.dealias_mask))


def _snapshot_name(step: int) -> str:
    return f"g_{step:08d}.bin"


def _heatmap_name(step: int) -> str:
    return f"u_{step:08d}.pgm"


def evolve(initial: State, integrator: EtdIntegrator, config: RunConfig,
           out_dir: Optional[Path] = None) -> RunResult:
    """
    Advance `initial` for config.n_steps steps of the configured scheme.

    Records diagnostics every record_every steps (and at the last step), takes
    snapshots every snapshot_every steps (and at both ends). Each record after
    the first also carries the K residual across the step just taken. On a
    separation loss the last good state is written to out_dir before the
    error propagates.

    Raises:
        SeparationLossError: the initial state or a later step is not strictly
            separated in float64
    """
    p = config.potential()
    kind = config.scheme_spec().kind
    n_steps = config.n_steps
    monitor = RunMonitor()
    records: List[DiagnosticsRecord] = []
    snapshots: List[Snapshot] = []
    k_residuals: List[Tuple[float, float]] = []
    proof: List[Dict[str, float]] = []

    check_separated(initial.g.values, initial.t, initial.step)

    def take_record(s: State, before: Optional[State] = None):
        prev = records[-1].energy if records else None
        rec = record(s, prev, p)
        records.append(rec)
        monitor.observe(rec)
        proof.append(proof_monitors(s.g, p))
        logger.info(
            "t=%.6g mass=%.15g energy=%.10g max|u|=%.15g |grad K|=%.6g",
            rec.t, rec.mass_u, rec.energy, rec.max_abs_u, rec.grad_K_L2,
        )
        logger.debug("t=%.6g K_sup=%.6g g_H2=%.6g coercivity_gap=%.3e",
                     rec.t, proof[-1]["K_sup"], proof[-1]["g_H2"], proof[-1]["coercivity_gap"])
        if before is not None:
            g_mid = RealField(s.g.grid, 0.5 * (before.g.values + s.g.values))
            residual = K_residual(chemical_potential_K(before.g, p), chemical_potential_K(s.g, p),
                                  g_mid, s.t - before.t, p)
            k_residuals.append((rec.t, residual))
            logger.info("t=%.6g K residual over the last step=%.6e", rec.t, residual)

    def take_snapshot(s: State):
        path = None
        if out_dir is not None:
            path = write_snapshot(s.g, s.t, out_dir / _snapshot_name(s.step))
            if config.heatmaps:
                write_heatmap(np.tanh(s.g.values), out_dir / _heatmap_name(s.step))
        snapshots.append(Snapshot(s.step, s.t, s.g.copy(), path))

    state = initial
    take_record(state)
    take_snapshot(state)

    try:
        for step in range(1, n_steps + 1):
            before = state
            state = advance(integrator, state, kind)
            if step % config.record_every == 0 or step == n_steps:
                take_record(state, before)
            if step % config.snapshot_every == 0 or step == n_steps:
                take_snapshot(state)
    except SeparationLossError:
        logger.error("Run aborted at step %d of %d; last good state t=%.6g", state.step + 1, n_steps, state.t)
        if out_dir is not None:
            write_snapshot(state.g, state.t, out_dir / LAST_GOOD_FILE)
            write_diagnostics_csv(records, out_dir / DIAGNOSTICS_FILE)
        raise

    monitor.finish()
    logger.info(
        "Finished %d steps: separation floor 1 - max|u| = %.6e, %d soft-gate warning(s)",
        n_steps, monitor.separation_floor, len(monitor.violations),
    )
    return RunResult(final_state=state, records=records, snapshots=snapshots, monitor=monitor,
                     k_residuals=k_residuals, proof=proof)


def run(config: RunConfig, out_dir: Optional[Path] = None) -> RunResult:
    """
    Evolve the g-equation from the configured initial condition.

    Args:
        config: validated RunConfig
        out_dir: output directory; defaults to config.out_dir. Nothing is
            written when both are None.

    Returns:
        RunResult with the final state, diagnostics records and snapshots

    Raises:
        SeparationLossError: the run left the representable range of g
    """
    out_dir = Path(out_dir) if out_dir is not None else config.out_dir
    if out_dir is not None:
        out_dir.mkdir(parents=True, exist_ok=True)

    logger.info("Run configuration:\n%s", serialize_config(config))
    grid = config.grid_spec()
    p = config.potential()
    scheme = config.scheme_spec()
    logger.info("%d resolved modes are linearly unstable around the initial mean", unstable_mode_count(config))

    g0 = make_initial(config.ic, grid, config.seed)
    integrator = g_integrator(grid, p, scheme.dt)
    result = evolve(State(g0, 0.0, 0), integrator, config, out_dir)

    if out_dir is not None:
        write_diagnostics_csv(result.records, out_dir / DIAGNOSTICS_FILE)
    return result


# ---- convergence ----

@dataclass(frozen=True)
class ConvergenceRow:
    dt: float
    error: float
    observed_order: Optional[float] = None


def _steps(t_end: float, dt: float) -> int:
    steps = t_end / dt
    if abs(steps - round(steps)) > 1e-9 * max(1.0, steps):
        raise ConvergenceSetupError(f"dt={dt!r} does not divide t_end={t_end!r}")
    return int(round(steps))


def _final_g(config: RunConfig, dt: float, linear_only: bool) -> np.ndarray:
    grid = config.grid_spec()
    integrator = g_integrator(grid, config.potential(), dt, linear_only=linear_only)
    kind = config.scheme_spec().kind
    state = State(make_initial(config.ic, grid, config.seed), 0.0, 0)
    for _ in range(_steps(config.t_end, dt)):
        state = advance(integrator, state, kind)
    return state.g.values


def convergence_study(config: RunConfig, dts: Sequence[float], reference_dt: Optional[float] = None,
                      linear_only: bool = False) -> List[ConvergenceRow]:
    """
    Temporal convergence table for the configured scheme.

    Errors are L² distances at t_end from a Richardson-extrapolated reference
    built from runs at reference_dt and 2·reference_dt with the scheme's
    nominal order. Consecutive dts must nest (each an integer multiple of the
    next); the observed order is log(e_coarse/e_fine)/log(ratio).

    Args:
        config: run to study; its scheme.dt is ignored
        dts: strictly decreasing steps, each dividing t_end
        reference_dt: defaults to half the finest dt
        linear_only: zero the nonlinear term, so every step is the exact semigroup

    Returns:
        One ConvergenceRow per dt; the first has no observed order
    """
    dts = [float(dt) for dt in dts]
    if len(dts) < 2:
        raise ConvergenceSetupError("need at least two time steps")
    if any(dt <= 0 for dt in dts):
        raise ConvergenceSetupError(f"time steps must be positive: {dts}")
    ratios = []
    for coarse, fine in zip(dts, dts[1:]):
        ratio = coarse / fine
        if not ratio > 1 or abs(ratio - round(ratio)) > 1e-9 * ratio:
            raise ConvergenceSetupError(f"time steps do not nest: {coarse!r} is not an integer multiple of {fine!r}")
        ratios.append(round(ratio))
    if reference_dt is None:
        reference_dt = dts[-1] / 2.0
    if not reference_dt < dts[-1]:
        raise ConvergenceSetupError(f"reference dt {reference_dt!r} must be below the finest dt {dts[-1]!r}")
    for dt in dts:
        _steps(config.t_end, dt)

    order = config.scheme_spec().kind.order
    sg = spectral_grid(config.grid_spec())
    logger.info("Reference runs at dt=%g and %g (order %d extrapolation)", reference_dt, 2 * reference_dt, order)
    finals = {}

    def final(dt: float) -> np.ndarray:
        if dt not in finals:
            finals[dt] = _final_g(config, dt, linear_only)
        return finals[dt]

    fine = final(reference_dt)
    coarse = final(2.0 * reference_dt)
    reference = fine + (fine - coarse) / (2.0**order - 1.0)

    errors = []
    for dt in dts:
        errors.append(sg.l2_norm(final(dt) - reference))
        logger.info("dt=%g error=%.6e", dt, errors[-1])

    rows = [ConvergenceRow(dts[0], errors[0])]
    for i, ratio in enumerate(ratios, start=1):
        observed = None
        if errors[i] > 0 and errors[i - 1] > 0:
            observed = math.log(errors[i - 1] / errors[i]) / math.log(ratio)
        rows.append(ConvergenceRow(dts[i], errors[i], observed))
    return rows
