"""Rate, block energy and energy efficiency of one coherence block.

A block of length ``T`` is split into a movement stage of length ``tau``,
during which only the motor draws power, and a transmission stage.  EE is
reported in bits/Hz/J.  Functions accept numpy arrays for ``P`` so grid
searches can be vectorised.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, FeasibilityError
from .motor import MotorParams, motor_power, v_max

_RTOL = 1e-12


@dataclass(frozen=True)
class SystemConfig:
    array_len: float = 0.12      # A, m
    init_pos: float = 0.06       # x0, m
    block_T: float = 0.05        # s
    P_max: float = 10 ** 1.6     # W (46 dBm)
    P_s: float = 1.0             # W (30 dBm)

    def __post_init__(self):
        if not self.array_len > 0:
            raise ValueError(f"array_len must be positive, got {self.array_len!r}")
        if not 0 <= self.init_pos <= self.array_len:
            raise ValueError(f"init_pos must lie in [0, array_len], got {self.init_pos!r}")
        if not self.block_T > 0:
            raise ValueError(f"block_T must be positive, got {self.block_T!r}")
        if not self.P_max > 0:
            raise ValueError(f"P_max must be positive, got {self.P_max!r}")
        if not self.P_s >= 0:
            raise ValueError(f"P_s must be non-negative, got {self.P_s!r}")


@dataclass(frozen=True)
class OperatingPoint:
    x_t: float
    P: float
    v: float


def rate(gain, P, sigma2):
    """Spectral efficiency ``log2(1 + P*gain/sigma2)``."""
    if not sigma2 > 0:
        raise DomainError("noise power must be positive")
    out = np.log2(1.0 + np.asarray(P, dtype=float) * gain / sigma2)
    return out if np.ndim(out) else float(out)


def movement_delay(x_t: float, x0: float, v: float) -> float:
    if not v > 0:
        raise DomainError("speed must be positive")
    return abs(x_t - x0) / v


def _check_feasible(op: OperatingPoint, sc: SystemConfig, m: MotorParams) -> float:
    """Validate ``op`` and return its movement delay (clamped to ``T``)."""
    P = np.asarray(op.P, dtype=float)
    if np.any(P < 0) or np.any(P > sc.P_max * (1 + _RTOL)):
        raise FeasibilityError(f"transmit power must lie in [0, {sc.P_max:g}] W")
    if op.v > v_max(m) * (1 + _RTOL):
        raise FeasibilityError(f"speed {op.v:g} m/s exceeds v_max={v_max(m):g} m/s")
    tau = movement_delay(op.x_t, sc.init_pos, op.v)
    if tau > sc.block_T * (1 + _RTOL):
        raise FeasibilityError(
            f"movement of {abs(op.x_t - sc.init_pos):g} m at {op.v:g} m/s does not fit in the block"
        )
    return min(tau, sc.block_T)


def total_energy(op: OperatingPoint, sc: SystemConfig, m: MotorParams):
    """Energy over the block: motor during ``tau``, AP during ``T - tau``."""
    tau = _check_feasible(op, sc, m)
    p_motor = motor_power(m, min(op.v, v_max(m))) if tau > 0 else 0.0
    out = tau * p_motor + (sc.block_T - tau) * (np.asarray(op.P, dtype=float) + sc.P_s)
    return out if np.ndim(out) else float(out)


def energy_efficiency(op: OperatingPoint, sc: SystemConfig, m: MotorParams, gain, sigma2):
    """Bits per Hz per joule delivered in the block.

    Zero when the whole block is spent moving.  Without movement the block
    length cancels and the value is exactly ``rate / (P + P_s)``.
    """
    tau = _check_feasible(op, sc, m)
    r = rate(gain, op.P, sigma2)
    P = np.asarray(op.P, dtype=float)
    if tau == 0:
        denom = P + sc.P_s
        if np.any(denom == 0):
            raise DomainError("total energy is zero; EE undefined")
        out = r / denom
    elif tau >= sc.block_T:
        out = np.zeros_like(P)
    else:
        out = (sc.block_T - tau) * r / total_energy(op, sc, m)
    return out if np.ndim(out) else float(out)


def ee_asymptotic(P, gain, sigma2, P_s):
    """Long-block limit ``rate / (P + P_s)`` with no mechanical cost."""
    denom = np.asarray(P, dtype=float) + P_s
    if np.any(denom == 0):
        raise DomainError("P + P_s must be positive")
    out = rate(gain, P, sigma2) / denom
    return out if np.ndim(out) else float(out)


def speed_penalty(v: float, x_t: float, sc: SystemConfig, m: MotorParams) -> float:
    """``P_M(v) / (v*T - |x_t - x0|)``, the per-metre motor cost term."""
    slack = v * sc.block_T - abs(x_t - sc.init_pos)
    if not slack > 0:
        raise FeasibilityError("speed too low to reach x_t within the block")
    return motor_power(m, v) / slack


def ee_recast(op: OperatingPoint, sc: SystemConfig, m: MotorParams, gain, sigma2):
    """EE written as ``R / (P + P_s + f(v)*|dx|)``; algebraically equal to
    :func:`energy_efficiency` on the open feasible set."""
    dx = abs(op.x_t - sc.init_pos)
    f = speed_penalty(op.v, op.x_t, sc, m) if dx > 0 else 0.0
    return rate(gain, op.P, sigma2) / (np.asarray(op.P, dtype=float) + sc.P_s + f * dx)


def dbm_to_watt(dbm: float) -> float:
    return 10 ** ((dbm - 30) / 10)


def watt_to_dbm(w: float) -> float:
    return 10 * math.log10(w) + 30


def db_to_linear(db: float) -> float:
    return 10 ** (db / 10)


def linear_to_db(x: float) -> float:
    return 10 * math.log10(x)
