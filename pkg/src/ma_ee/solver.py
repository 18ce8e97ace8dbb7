"""Joint position / power optimisation for one coherence block.

The motor always runs at full speed (EE is increasing in ``v`` for any fixed
destination and power), the transmit power for each destination comes from
Dinkelbach iterations with a closed-form inner step, and the destination is
found by enumerating the reachable grid points.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Tuple

import numpy as np

from .channel import ChannelParams, ChannelRealization, channel_gain
from .errors import ConfigError, DegenerateChannelError, DomainError, FeasibilityError
from .motor import MotorParams, motor_power, step_size, v_max
from .objective import OperatingPoint, SystemConfig, energy_efficiency

LN2 = math.log(2.0)


class Scheme(str, enum.Enum):
    PROPOSED = "Proposed"
    BENCHMARK1 = "Benchmark1"
    BENCHMARK2 = "Benchmark2"
    FPA = "FPA"


@dataclass(frozen=True, eq=False)
class PositionGrid:
    step: float
    num_points: int
    candidates: np.ndarray
    x0_index: int

    @property
    def x0(self) -> float:
        return float(self.candidates[self.x0_index])


@dataclass
class DinkelbachTrace:
    etas: List[float] = field(default_factory=list)
    powers: List[float] = field(default_factory=list)
    converged: bool = False

    @property
    def iterations(self) -> int:
        return len(self.etas) - 1


@dataclass
class Solution:
    x_t_star: float
    P_star: float
    v_star: float
    ee_star: float
    tau: float
    dinkelbach_iters: int
    scheme: Scheme
    x_index: int = 0
    traces: Optional[Dict[int, DinkelbachTrace]] = field(default=None, repr=False, compare=False)


def build_grid(sc: SystemConfig, m: MotorParams) -> PositionGrid:
    """Candidate positions ``{0, d_s, ..., (J_x-1) d_s}`` with ``J_x = floor(A/d_s)``.

    The initial position is snapped to the nearest candidate, ties to the
    lower index.
    """
    ds = step_size(m)
    # tiny relative nudge so that A == k*d_s computed in floats still counts k points
    n = int(math.floor(sc.array_len / ds * (1 + 1e-12)))
    if n < 1:
        raise ConfigError(f"array length {sc.array_len:g} m is shorter than one step ({ds:g} m)")
    j0 = int(math.ceil(sc.init_pos / ds - 0.5))
    j0 = min(max(j0, 0), n - 1)
    return PositionGrid(ds, n, np.arange(n) * ds, j0)


def dinkelbach_power_update(eta_prev: float, gain: float, sigma2: float, P_max: float) -> float:
    """Maximiser of the subtractive objective for fixed ``eta_prev``.

    Water-level form ``[1/(eta ln 2) - sigma2/gain]^+`` clipped at ``P_max``.
    """
    if gain <= 0:
        raise DegenerateChannelError("zero channel gain: rate is identically zero")
    if not eta_prev > 0:
        raise DomainError("eta must be positive")
    level = 1.0 / (eta_prev * LN2) - sigma2 / gain
    return min(max(level, 0.0), P_max)


def _sc_at(sc: SystemConfig, grid: PositionGrid) -> SystemConfig:
    """System config with the initial position moved onto the grid."""
    return sc if sc.init_pos == grid.x0 else replace(sc, init_pos=grid.x0)


def dinkelbach_power(
    x_t: float,
    grid: PositionGrid,
    sc: SystemConfig,
    m: MotorParams,
    cr: ChannelRealization,
    cp: ChannelParams,
    eps: float = 1e-9,
    *,
    speed: Optional[float] = None,
    motor_power_w: Optional[float] = None,
    gain: Optional[float] = None,
    max_iter: int = 100,
) -> Tuple[float, float, DinkelbachTrace]:
    """Optimal transmit power for destination ``x_t``.

    ``speed`` defaults to ``v_max``; ``motor_power_w`` replaces the motor
    power used in the movement energy (fixed-power benchmark).  Returns
    ``(P, eta, trace)``.
    """
    if not eps > 0:
        raise DomainError("eps must be positive")
    v = v_max(m) if speed is None else speed
    dx = abs(x_t - grid.x0)
    slack = v * sc.block_T - dx
    if not slack > 0:
        raise FeasibilityError(f"x_t={x_t:g} m is not reachable within the block")
    if gain is None:
        gain = channel_gain(cr, cp, x_t)
    if gain <= 0:
        return 0.0, 0.0, DinkelbachTrace([0.0], [0.0], True)

    pm = motor_power(m, v) if motor_power_w is None else motor_power_w
    fixed = pm * dx
    snr = gain / cp.noise_power

    def eta(P: float) -> float:
        # without movement the block length cancels; keep it out of the arithmetic
        den = slack * (P + sc.P_s) + fixed if dx > 0 else P + sc.P_s
        if den == 0:
            return snr / LN2  # limit of R/P as P -> 0
        num = slack * math.log2(1.0 + P * snr) if dx > 0 else math.log2(1.0 + P * snr)
        return num / den

    P = sc.P_max
    e = eta(P)
    trace = DinkelbachTrace([e], [P], False)
    for _ in range(max_iter):
        P = dinkelbach_power_update(e, gain, cp.noise_power, sc.P_max)
        e_new = eta(P)
        trace.etas.append(e_new)
        trace.powers.append(P)
        done = abs(e_new - e) < eps
        e = e_new
        if done:
            trace.converged = True
            break
    return P, e, trace


def _search_order(grid: PositionGrid) -> List[int]:
    # least movement first, then lower index: a strict ">" keeps the earliest
    return sorted(range(grid.num_points), key=lambda j: (abs(j - grid.x0_index), j))


def _optimise_positions(sc, m, cr, cp, eps, scheme, speed=None, motor_power_w=None,
                        keep_traces=False, grid=None) -> Solution:
    grid = build_grid(sc, m) if grid is None else grid
    scx = _sc_at(sc, grid)
    v = v_max(m) if speed is None else speed
    reach = v * sc.block_T
    gains = channel_gain(cr, cp, grid.candidates)
    traces = {} if keep_traces else None

    best = None
    for j in _search_order(grid):
        x = float(grid.candidates[j])
        dx = abs(x - grid.x0)
        if dx >= reach:
            continue
        P, _, trace = dinkelbach_power(x, grid, scx, m, cr, cp, eps, speed=v,
                                       motor_power_w=motor_power_w, gain=float(gains[j]))
        if traces is not None:
            traces[j] = trace
        ee = energy_efficiency(OperatingPoint(x, P, v), scx, m, float(gains[j]), cp.noise_power)
        if best is None or ee > best[0]:
            best = (ee, j, P, trace.iterations)
    ee, j, P, iters = best
    x = float(grid.candidates[j])
    return Solution(x, P, v, ee, abs(x - grid.x0) / v, iters, scheme, j, traces)


def solve(sc: SystemConfig, m: MotorParams, cr: ChannelRealization, cp: ChannelParams,
          eps: float = 1e-9, *, speed: Optional[float] = None,
          keep_traces: bool = False) -> Solution:
    """Proposed scheme: full speed, Dinkelbach power, enumerated position.

    ``speed`` forces a slower constant speed (used for speed sweeps).
    """
    return _optimise_positions(sc, m, cr, cp, eps, Scheme.PROPOSED, speed=speed,
                               keep_traces=keep_traces)


def brute_force_oracle(sc: SystemConfig, m: MotorParams, cr: ChannelRealization,
                       cp: ChannelParams, power_points: int = 100_000) -> Solution:
    """Exhaustive search over reachable candidates and a uniform power grid."""
    grid = build_grid(sc, m)
    if grid.num_points > 200:
        raise ConfigError("brute-force oracle is limited to 200 candidates")
    scx = _sc_at(sc, grid)
    v = v_max(m)
    powers = np.linspace(0.0, sc.P_max, power_points)
    best = None
    for j in _search_order(grid):
        x = float(grid.candidates[j])
        if abs(x - grid.x0) >= v * sc.block_T:
            continue
        gain = channel_gain(cr, cp, x)
        ee = energy_efficiency(OperatingPoint(x, powers, v), scx, m, gain, cp.noise_power)
        k = int(np.argmax(ee))
        if best is None or ee[k] > best[0]:
            best = (float(ee[k]), j, float(powers[k]))
    ee, j, P = best
    x = float(grid.candidates[j])
    return Solution(x, P, v, ee, abs(x - grid.x0) / v, 0, Scheme.PROPOSED, j)
