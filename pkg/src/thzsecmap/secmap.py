"""Security-level maps, radial profiles, threshold radii, and parameter sweeps.

Every grid point is an independent pure evaluation: build the transmitter-
to-eavesdropper link (pattern gain at the eavesdropper's offset angle, the
eavesdropper aimed straight back at the transmitter) and minimize the
security bound there.  Results are deterministic and independent of how the
grid is partitioned across workers.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .antenna import cone_radius, pattern_gain
from .bounds import min_security
from .errors import ConfigError, ProfileError
from .geometry import CELL, DIRECTED, ScenarioConfig, build_scenario, grid_axes, offset_angle
from .linkmodel import link_budget
from .planner import PlanResult, plan_cell, plan_directed, require_feasible

THRESHOLD_RADIUS_TOL_M = 0.01
SWEEP_VARIABLES = ("n", "phi_target", "R", "G_E", "G_A", "d_AB", "l_AB")


@dataclass(frozen=True, eq=False)
class SecrecyMapGrid:
    """Security levels on a rectangular grid of eavesdropper positions.

    ``values`` has shape (ny, nx), row-major over (y, x) like the CSV
    export.  ``metadata`` carries the resolved plan and inputs.
    """

    xs: np.ndarray
    ys: np.ndarray
    resolution_m: float
    values: np.ndarray
    metadata: dict

    @property
    def origin_m(self) -> tuple[float, float]:
        return float(self.xs[0]), float(self.ys[0])

    @property
    def extent_m(self) -> tuple[float, float]:
        return float(self.xs[-1] - self.xs[0]), float(self.ys[-1] - self.ys[0])


@dataclass(frozen=True, eq=False)
class RadialProfile:
    """Security level versus horizontal distance from the transmitter."""

    radii_m: np.ndarray
    deltas: np.ndarray

    def __post_init__(self) -> None:
        if np.any(np.diff(self.radii_m) <= 0.0):
            raise ValueError("radii must be strictly increasing")
        if np.any(self.deltas < 0.0) or np.any(self.deltas > 1.0):
            raise ValueError("security levels must lie in [0, 1]")


def scenario_dict(config: ScenarioConfig) -> dict:
    """Resolved scenario inputs as plain JSON-ready values."""

    def antenna(a):
        return {
            "gain_dbi": a.gain_dbi,
            "kappa_deg2": a.kappa_deg2,
            "min_relative_gain_db": a.min_relative_gain_db,
            "beamwidth_override_deg": a.beamwidth_override_deg,
        }

    env = config.environment
    return {
        "variant": config.variant,
        "environment": {
            "carrier_frequency_hz": env.carrier_frequency_hz,
            "bandwidth_hz": env.bandwidth_hz,
            "temperature_k": env.temperature_k,
            "noise_figure_db": env.noise_figure_db,
        },
        "antennas": {"alice": antenna(config.alice), "bob": antenna(config.bob),
                     "eve": antenna(config.eve)},
        "transmit_power_w": config.transmit_power_w,
        "height_difference_m": config.height_difference_m,
        "horizontal_distance_m": config.horizontal_distance_m,
        "room_extent_m": list(config.room_extent_m),
        "receiver_height_m": config.receiver_height_m,
        "transmitter_setback_m": config.transmitter_setback_m,
    }


class _EveEvaluator:
    """Security level at arbitrary eavesdropper positions for one plan."""

    def __init__(self, plan: PlanResult, config: ScenarioConfig):
        require_feasible(plan)
        # the receiver's own position never enters the eavesdropper links, so
        # the cell variant is built at nadir
        nodes = build_scenario(config, bob_offset=0.0 if config.variant == CELL else None)
        self.plan = plan
        self.config = config
        self.alice = nodes["alice"]
        self.bob = nodes["bob"]

    def delta_at(self, position: np.ndarray) -> float:
        cfg = self.config
        theta = offset_angle(self.alice.boresight, self.alice.position, position)
        g_tx = pattern_gain(cfg.alice, theta)
        diff = np.asarray(position, dtype=float) - self.alice.position
        distance = math.sqrt(float(diff[0]) ** 2 + float(diff[1]) ** 2 + float(diff[2]) ** 2)
        link = link_budget(self.plan.transmit_power_w, g_tx, cfg.eve.gain_linear,
                           distance, cfg.environment)
        return min_security(self.plan.code, link)[0]

    def delta_at_radius(self, radius_m: float) -> float:
        return self.delta_at(np.array([radius_m, 0.0, self.config.receiver_height_m]))


def _map_rows(args) -> list[list[float]]:
    evaluator, xs, ys, z, row_indices = args
    rows = []
    for iy in row_indices:
        y = ys[iy]
        rows.append([evaluator.delta_at(np.array([x, y, z])) for x in xs])
    return rows


def evaluate_map(plan: PlanResult, config: ScenarioConfig, resolution_m: float,
                 *, threads: int = 1) -> SecrecyMapGrid:
    """Security level at every grid point of the room at receiver height.

    Parameters
    ----------
    plan : PlanResult
        A feasible plan; raises InfeasiblePlanError otherwise.
    config : ScenarioConfig
    resolution_m : float
        Grid spacing; grid axes follow geometry.grid_axes.
    threads : int
        Worker processes.  Output is identical for any worker count.
    """
    evaluator = _EveEvaluator(plan, config)
    xs, ys = grid_axes(config, resolution_m)
    z = config.receiver_height_m
    ny = len(ys)
    if threads <= 1:
        rows = _map_rows((evaluator, xs, ys, z, range(ny)))
    else:
        chunk = max(1, ny // (4 * threads))
        batches = [list(range(i, min(i + chunk, ny))) for i in range(0, ny, chunk)]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            parts = pool.map(_map_rows, [(evaluator, xs, ys, z, b) for b in batches])
        rows = [row for part in parts for row in part]
    values = np.array(rows)
    metadata = {
        "plan": plan.to_dict(),
        "scenario": scenario_dict(config),
        "resolution_m": resolution_m,
        "nx": len(xs),
        "ny": ny,
        "origin_m": [float(xs[0]), float(ys[0])],
        "receiver_height_m": z,
    }
    return SecrecyMapGrid(xs=xs, ys=ys, resolution_m=resolution_m, values=values,
                          metadata=metadata)


def radial_profile(plan: PlanResult, config: ScenarioConfig, r_min_m: float,
                   r_max_m: float, steps: int) -> RadialProfile:
    """Security level at evenly spaced radii from the transmitter axis.

    Cell scenario only; the directed scenario has no radial symmetry.
    """
    if config.variant != CELL:
        raise ConfigError("radial profile requires the cell scenario (radial symmetry)")
    if not 0.0 <= r_min_m < r_max_m:
        raise ValueError(f"need 0 <= r_min < r_max, got {r_min_m}, {r_max_m}")
    if steps < 2:
        raise ValueError(f"need at least 2 steps, got {steps}")
    evaluator = _EveEvaluator(plan, config)
    radii = np.linspace(r_min_m, r_max_m, steps)
    deltas = np.array([evaluator.delta_at_radius(float(r)) for r in radii])
    return RadialProfile(radii_m=radii, deltas=deltas)


def threshold_radius(plan: PlanResult, config: ScenarioConfig, delta_0: float) -> float:
    """Smallest radius at which the security level falls to ``delta_0``.

    Bisection along the (non-increasing) radial profile to 1 cm.  Returns
    0.0 when the level is already below the target at the transmitter axis.
    """
    if config.variant != CELL:
        raise ConfigError("threshold radius requires the cell scenario")
    if not 0.0 < delta_0 < 1.0:
        raise ValueError(f"delta_0 must lie in (0, 1), got {delta_0}")
    evaluator = _EveEvaluator(plan, config)
    return _crossing_radius(evaluator, delta_0)


def _crossing_radius(evaluator: _EveEvaluator, delta_0: float) -> float:
    delta_axis = evaluator.delta_at_radius(0.0)
    if delta_axis < delta_0:
        return 0.0
    lo = 0.0
    hi = max(1.0, 2.0 * cone_radius(evaluator.config.alice,
                                    evaluator.config.height_difference_m))
    while evaluator.delta_at_radius(hi) >= delta_0:
        lo = hi
        hi *= 2.0
        if hi > 1e6:
            raise ProfileError(f"security level never fell below {delta_0:g} out to 1e6 m")
    # coarse monotonicity diagnostic across the bracket before trusting bisection
    previous = delta_axis
    prev_r = 0.0
    for k in range(1, 17):
        r = hi * k / 16.0
        value = evaluator.delta_at_radius(r)
        if value > previous + 1e-6:
            raise ProfileError(
                f"security level rose from {previous:g} at {prev_r:.3f} m to {value:g} "
                f"at {r:.3f} m; profile is not monotone")
        previous, prev_r = value, r
    while hi - lo > THRESHOLD_RADIUS_TOL_M:
        mid = 0.5 * (lo + hi)
        if evaluator.delta_at_radius(mid) >= delta_0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def insecure_fraction(grid: SecrecyMapGrid, threshold: float = 0.5) -> float:
    """Fraction of grid cells whose security level exceeds the threshold."""
    return float(np.count_nonzero(grid.values > threshold)) / grid.values.size


def _replan(config: ScenarioConfig, n: int, rate_bits: float, phi_target: float,
            tx_power_w: float) -> PlanResult:
    if config.variant == CELL:
        return plan_cell(config, n, rate_bits, phi_target, tx_power_w)
    return plan_directed(config, config.horizontal_distance_m, n, rate_bits,
                         phi_target, tx_power_w)


def _apply_sweep_value(config: ScenarioConfig, n: int, rate_bits: float,
                       phi_target: float, variable: str, value: float):
    if variable == "n":
        if value != int(value) or int(value) < 1:
            raise ConfigError(f"swept blocklength must be a positive integer, got {value}")
        return config, int(value), rate_bits, phi_target
    if variable == "phi_target":
        return config, n, rate_bits, float(value)
    if variable == "R":
        return config, n, float(value), phi_target
    if variable == "G_E":
        cfg = replace(config, eve=replace(config.eve, gain_dbi=float(value)))
        return cfg, n, rate_bits, phi_target
    if variable == "G_A":
        # transmitter and legitimate receiver share the same gain by convention
        cfg = replace(config,
                      alice=replace(config.alice, gain_dbi=float(value)),
                      bob=replace(config.bob, gain_dbi=float(value)))
        return cfg, n, rate_bits, phi_target
    if variable == "d_AB":
        if config.variant != DIRECTED:
            raise ConfigError("d_AB can only be swept in the directed scenario")
        return replace(config, horizontal_distance_m=float(value)), n, rate_bits, phi_target
    if variable == "l_AB":
        return replace(config, height_difference_m=float(value)), n, rate_bits, phi_target
    raise ConfigError(f"unknown sweep variable {variable!r}; choose from {SWEEP_VARIABLES}")


def sweep(config: ScenarioConfig, n: int, rate_bits: float, phi_target: float,
          tx_power_w: float, variable: str, values, *, delta_0: float = 1e-3,
          area_threshold: float = 0.5, area_resolution_m: float = 2.0) -> list[dict]:
    """Re-plan and summarize the secrecy geometry along one swept variable.

    Produces one long-format row per swept value with the cone footprint
    radius, worst-case capacity, resolved randomness rate, and (cell
    scenario) the radii where the security level crosses 0.99, ``delta_0``
    and 0.01.  Directed rows carry the insecure-area fraction of a coarse
    map instead.
    """
    if variable not in SWEEP_VARIABLES:
        raise ConfigError(f"unknown sweep variable {variable!r}; choose from {SWEEP_VARIABLES}")
    rows = []
    for value in values:
        cfg, n_v, r_v, phi_v = _apply_sweep_value(config, n, rate_bits, phi_target,
                                                  variable, value)
        plan = _replan(cfg, n_v, r_v, phi_v, tx_power_w)
        row = {
            "variable": variable,
            "value": value,
            "feasible": plan.feasible,
            "r_b_m": None,
            "c_ab_bits": plan.c_ab_bits,
            "l_bits": plan.code.randomness_bits if plan.feasible else None,
            "achieved_phi": plan.achieved_phi if plan.feasible else None,
            "r_e0_m": None,
            "r_delta_hi_m": None,
            "r_delta_lo_m": None,
            "transition_width_m": None,
            "insecure_fraction": None,
        }
        if cfg.variant == CELL:
            row["r_b_m"] = cone_radius(cfg.alice, cfg.height_difference_m)
        if plan.feasible:
            if cfg.variant == CELL:
                evaluator = _EveEvaluator(plan, cfg)
                row["r_e0_m"] = _crossing_radius(evaluator, delta_0)
                row["r_delta_hi_m"] = _crossing_radius(evaluator, 0.99)
                row["r_delta_lo_m"] = _crossing_radius(evaluator, 0.01)
                row["transition_width_m"] = row["r_delta_lo_m"] - row["r_delta_hi_m"]
            else:
                grid = evaluate_map(plan, cfg, area_resolution_m)
                row["insecure_fraction"] = insecure_fraction(grid, area_threshold)
        rows.append(row)
    return rows


def format_float(value: float) -> str:
    """Fixed 9-significant-digit rendering used by every text export."""
    return format(value, ".9g")


def map_csv_lines(grid: SecrecyMapGrid) -> list[str]:
    """Row-major CSV rows ``x_m,y_m,delta`` with 9 significant digits."""
    lines = ["x_m,y_m,delta"]
    for iy, y in enumerate(grid.ys):
        for ix, x in enumerate(grid.xs):
            lines.append(
                f"{format_float(float(x))},{format_float(float(y))},"
                f"{format_float(float(grid.values[iy, ix]))}")
    return lines


def write_map_csv(grid: SecrecyMapGrid, path) -> None:
    with open(path, "w") as f:
        f.write("\n".join(map_csv_lines(grid)))
        f.write("\n")


def write_map_pgm(grid: SecrecyMapGrid, path) -> None:
    """ASCII PGM (P2) rendering: pixel = round(255 * (1 - delta)).

    Secure regions render bright.  The first pixel row is the smallest y,
    matching the CSV row order.
    """
    ny, nx = grid.values.shape
    pixels = np.rint(255.0 * (1.0 - grid.values)).astype(int)
    lines = ["P2", f"{nx} {ny}", "255"]
    for iy in range(ny):
        lines.append(" ".join(str(int(v)) for v in pixels[iy]))
    with open(path, "w") as f:
        f.write("\n".join(lines))
        f.write("\n")


def profile_csv_lines(profile: RadialProfile) -> list[str]:
    lines = ["r_m,delta"]
    for r, d in zip(profile.radii_m, profile.deltas):
        lines.append(f"{format_float(float(r))},{format_float(float(d))}")
    return lines


def write_profile_csv(profile: RadialProfile, path) -> None:
    with open(path, "w") as f:
        f.write("\n".join(profile_csv_lines(profile)))
        f.write("\n")


SWEEP_COLUMNS = ["variable", "value", "feasible", "r_b_m", "c_ab_bits", "l_bits",
                 "achieved_phi", "r_e0_m", "r_delta_hi_m", "r_delta_lo_m",
                 "transition_width_m", "insecure_fraction"]


def sweep_csv_lines(rows: list[dict]) -> list[str]:
    lines = [",".join(SWEEP_COLUMNS)]
    for row in rows:
        cells = []
        for col in SWEEP_COLUMNS:
            v = row[col]
            if v is None:
                cells.append("")
            elif isinstance(v, bool):
                cells.append("true" if v else "false")
            elif isinstance(v, str):
                cells.append(v)
            elif isinstance(v, (int, np.integer)):
                cells.append(str(int(v)))
            else:
                cells.append(format_float(float(v)))
        lines.append(",".join(cells))
    return lines


def write_sweep_csv(rows: list[dict], path) -> None:
    with open(path, "w") as f:
        f.write("\n".join(sweep_csv_lines(rows)))
        f.write("\n")


__all__ = [
    "SecrecyMapGrid",
    "RadialProfile",
    "evaluate_map",
    "radial_profile",
    "threshold_radius",
    "insecure_fraction",
    "sweep",
    "SWEEP_VARIABLES",
    "SWEEP_COLUMNS",
    "map_csv_lines",
    "write_map_csv",
    "write_map_pgm",
    "profile_csv_lines",
    "write_profile_csv",
    "sweep_csv_lines",
    "write_sweep_csv",
    "format_float",
    "THRESHOLD_RADIUS_TOL_M",
]
