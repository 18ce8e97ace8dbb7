"""Benchmark schemes and the Monte-Carlo sweep harness."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field, replace
from typing import List, Tuple

import numpy as np

from .channel import (
    ChannelParams,
    ChannelRealization,
    channel_gain,
    sample_realization,
    shift_reference,
)
from .errors import ConfigError
from .motor import MotorParams, motor_power, v_max
from .objective import OperatingPoint, SystemConfig, energy_efficiency
from .solver import (
    Scheme,
    Solution,
    _optimise_positions,
    _sc_at,
    _search_order,
    build_grid,
    dinkelbach_power,
    solve,
)

SWEEP_PARAMS = ("speed", "array_len", "P_max", "block_T", "num_paths")
CSV_HEADER = ("param", "scheme", "mean_ee", "std_ee", "mean_move_m", "mean_power_w")


def benchmark1_rate_max(sc: SystemConfig, m: MotorParams, cr: ChannelRealization,
                        cp: ChannelParams, *, speed=None) -> Solution:
    """Move to the reachable candidate with the largest gain and send at ``P_max``."""
    grid = build_grid(sc, m)
    scx = _sc_at(sc, grid)
    v = v_max(m) if speed is None else speed
    gains = channel_gain(cr, cp, grid.candidates)
    best_j = None
    for j in _search_order(grid):
        if abs(grid.candidates[j] - grid.x0) >= v * sc.block_T:
            continue
        if best_j is None or gains[j] > gains[best_j]:
            best_j = j
    x = float(grid.candidates[best_j])
    ee = energy_efficiency(OperatingPoint(x, sc.P_max, v), scx, m, float(gains[best_j]),
                           cp.noise_power)
    return Solution(x, sc.P_max, v, ee, abs(x - grid.x0) / v, 0, Scheme.BENCHMARK1, best_j)


def fixed_motor_power(m: MotorParams) -> float:
    """Motor power at half the maximum speed, used as a speed-independent constant."""
    return motor_power(m, v_max(m) / 2)


def benchmark2_fixed_motor_power(sc: SystemConfig, m: MotorParams, cr: ChannelRealization,
                                 cp: ChannelParams, eps: float = 1e-9, *, speed=None) -> Solution:
    """Decide position and power under a constant motor power, then score the
    decision with the true speed-dependent motor power."""
    return _optimise_positions(sc, m, cr, cp, eps, Scheme.BENCHMARK2, speed=speed,
                               motor_power_w=fixed_motor_power(m))


def benchmark3_fpa(sc: SystemConfig, cr: ChannelRealization, cp: ChannelParams,
                   eps: float = 1e-9, m: MotorParams = MotorParams()) -> Solution:
    """Stay at the (snapped) initial position and optimise only the power.

    The motor never runs, so ``m`` matters only through the step size that
    defines the grid.
    """
    grid = build_grid(sc, m)
    scx = _sc_at(sc, grid)
    gain = channel_gain(cr, cp, grid.x0)
    P, _, trace = dinkelbach_power(grid.x0, grid, scx, m, cr, cp, eps, gain=gain)
    ee = energy_efficiency(OperatingPoint(grid.x0, P, v_max(m)), scx, m, gain, cp.noise_power)
    return Solution(grid.x0, P, v_max(m), ee, 0.0, trace.iterations, Scheme.FPA, grid.x0_index)


def run_scheme(scheme: Scheme, sc, m, cr, cp, eps=1e-9, speed=None) -> Solution:
    if scheme is Scheme.PROPOSED:
        return solve(sc, m, cr, cp, eps, speed=speed)
    if scheme is Scheme.BENCHMARK1:
        return benchmark1_rate_max(sc, m, cr, cp, speed=speed)
    if scheme is Scheme.BENCHMARK2:
        return benchmark2_fixed_motor_power(sc, m, cr, cp, eps, speed=speed)
    return benchmark3_fpa(sc, cr, cp, eps, m)


@dataclass(frozen=True)
class SweepSpec:
    swept_param: str
    values: Tuple[float, ...]
    realizations: int = 200
    seed_base: int = 0
    schemes: Tuple[Scheme, ...] = tuple(Scheme)

    def __post_init__(self):
        if self.swept_param not in SWEEP_PARAMS:
            raise ConfigError(f"sweep.swept_param: unknown parameter {self.swept_param!r}")
        values = tuple(self.values)
        if not values:
            raise ConfigError("sweep.values: must be non-empty")
        if list(values) != sorted(values):
            raise ConfigError("sweep.values: must be sorted ascending")
        if int(self.realizations) != self.realizations or self.realizations < 1:
            raise ConfigError("sweep.realizations: must be a positive integer")
        schemes = tuple(Scheme(s) for s in self.schemes)
        if not schemes:
            raise ConfigError("sweep.schemes: must be non-empty")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "schemes", schemes)


@dataclass(frozen=True)
class SweepRow:
    param: float
    scheme: Scheme
    mean_ee: float
    std_ee: float
    mean_move_m: float
    mean_power_w: float


@dataclass
class SweepResult:
    swept_param: str
    rows: List[SweepRow] = field(default_factory=list)

    def mean(self, scheme, value=None) -> List[float]:
        scheme = Scheme(scheme)
        return [r.mean_ee for r in self.rows
                if r.scheme is scheme and (value is None or r.param == value)]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for r in self.rows:
            writer.writerow([fmt(r.param), r.scheme.value, fmt(r.mean_ee), fmt(r.std_ee),
                             fmt(r.mean_move_m), fmt(r.mean_power_w)])
        return buf.getvalue()


def fmt(x: float) -> str:
    return f"{x:.12g}"


def _configure(param: str, value, sc: SystemConfig, m: MotorParams, cp: ChannelParams):
    """Apply one swept value.  Returns ``(sc, m, cp, speed)``."""
    speed = None
    try:
        if param == "speed":
            if not 0 < value <= v_max(m) * (1 + 1e-12):
                raise ValueError(f"speed must lie in (0, {v_max(m):g}] m/s")
            speed = min(float(value), v_max(m))
        elif param == "array_len":
            sc = replace(sc, array_len=float(value), init_pos=float(value) / 2)
        elif param == "P_max":
            sc = replace(sc, P_max=float(value))
        elif param == "block_T":
            sc = replace(sc, block_T=float(value))
        elif param == "num_paths":
            if int(value) != value:
                raise ValueError("num_paths must be an integer")
            cp = replace(cp, num_paths=int(value))
        build_grid(sc, m)
    except ValueError as exc:
        raise ConfigError(f"sweep value {param}={value!r}: {exc}") from exc
    return sc, m, cp, speed


def monte_carlo_sweep(spec: SweepSpec, base_config) -> SweepResult:
    """Average each scheme over ``spec.realizations`` channels per swept value.

    ``base_config`` is a :class:`~ma_ee.config.RunConfig`.  Realization ``i``
    uses seed ``seed_base + i`` at every swept value, so the curves share
    common random numbers and the output does not depend on run order.  For
    array-length sweeps the realization is anchored at the initial position,
    which keeps the candidate sets of growing arrays nested.
    """
    eps = base_config.solver.eps
    result = SweepResult(spec.swept_param)
    for value in spec.values:
        sc, m, cp, speed = _configure(spec.swept_param, value, base_config.system,
                                      base_config.motor, base_config.channel)
        ee = {s: [] for s in spec.schemes}
        move = {s: [] for s in spec.schemes}
        power = {s: [] for s in spec.schemes}
        grid = build_grid(sc, m)
        for i in range(spec.realizations):
            cr = sample_realization(cp, spec.seed_base + i)
            if spec.swept_param == "array_len":
                # same physical field around the starting point at every size
                cr = shift_reference(cr, cp, grid.x0)
            for s in spec.schemes:
                sol = run_scheme(s, sc, m, cr, cp, eps, speed)
                ee[s].append(sol.ee_star)
                move[s].append(abs(sol.x_t_star - grid.x0))
                power[s].append(sol.P_star)
        for s in spec.schemes:
            vals = np.asarray(ee[s])
            result.rows.append(SweepRow(float(value), s, float(vals.mean()), float(vals.std()),
                                        float(np.mean(move[s])), float(np.mean(power[s]))))
    return result
