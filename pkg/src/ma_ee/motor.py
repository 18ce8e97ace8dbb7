"""Stepper motor and lead screw model.

The antenna carriage is driven by a stepper motor through a lead screw, so a
linear speed ``v`` maps to a shaft speed ``omega = v / l0``.  Mechanical power
is the product of shaft speed and pull-out torque.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.optimize import brentq

from .errors import DomainError, ModelError

# relative slack used when checking v <= v_max on values that went through
# float arithmetic (e.g. 552 * 0.005)
_SPEED_RTOL = 1e-12


@dataclass(frozen=True)
class MotorParams:
    """Electromechanical constants.  Defaults are the AM2224 values."""

    rotor_teeth: int = 6
    flux: float = 0.023            # peak magnet flux per winding, Wb
    voltage: float = 11.94         # V
    resistance: float = 75.0       # phase resistance, ohm
    inductance: float = 65.6e-3    # phase inductance, H
    screw_radius: float = 5e-3     # lead screw radius l0, m
    step_angle: float = math.pi / 12  # rad
    omega_max: float = 552.0       # rad/s
    step_size: Optional[float] = None  # explicit d_s override, m

    def __post_init__(self):
        for name in ("rotor_teeth", "flux", "voltage", "resistance",
                     "inductance", "screw_radius", "step_angle", "omega_max"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise ModelError(f"{name} must be positive and finite, got {value!r}")
        if self.step_size is not None and not self.step_size > 0:
            raise ModelError(f"step_size must be positive, got {self.step_size!r}")
        w_m = no_load_speed(self)
        if not self.omega_max < w_m:
            raise ModelError(
                f"omega_max={self.omega_max:g} rad/s exceeds no-load speed {w_m:.1f} rad/s"
            )


def pull_out_torque(m: MotorParams, omega):
    """Pull-out torque ``M(omega)`` in N*m.  Accepts scalars or arrays."""
    w = np.asarray(omega, dtype=float)
    if np.any(w < 0):
        raise DomainError("angular speed must be non-negative")
    r2 = m.resistance ** 2
    z2 = r2 + (w * m.inductance) ** 2
    p = m.rotor_teeth
    torque = (p * m.flux * m.voltage / np.sqrt(z2)
              - p * w * m.flux ** 2 * m.resistance / z2)
    return torque if torque.ndim else float(torque)


def shaft_power(m: MotorParams, omega):
    """``omega * M(omega)`` in W over the whole torque curve, ignoring omega_max."""
    w = np.asarray(omega, dtype=float)
    out = w * pull_out_torque(m, w)
    return out if np.ndim(out) else float(out)


def motor_power(m: MotorParams, v):
    """Mechanical power drawn while moving the antenna at linear speed ``v``.

    Speeds outside ``[0, v_max]`` are rejected, not clamped.
    """
    speed = np.asarray(v, dtype=float)
    vm = v_max(m)
    if np.any(speed < 0) or np.any(speed > vm * (1 + _SPEED_RTOL)):
        raise DomainError(f"speed must lie in [0, {vm:g}] m/s")
    return shaft_power(m, speed / m.screw_radius)


def no_load_speed(m: MotorParams) -> float:
    """Shaft speed at which the pull-out torque reaches zero (closed form)."""
    disc = (m.flux * m.resistance) ** 2 - (m.voltage * m.inductance) ** 2
    if disc <= 0:
        raise ModelError("no finite no-load speed: flux*R must exceed V*L")
    return m.voltage * m.resistance / math.sqrt(disc)


def no_load_speed_bracketed(m: MotorParams, xtol: float = 1e-12) -> float:
    """Root of the torque curve by bracketing, independent of the closed form."""
    hi = m.resistance / m.inductance
    while pull_out_torque(m, hi) > 0:
        hi *= 2.0
        if hi > 1e12:
            raise ModelError("no finite no-load speed: torque stays positive")
    return brentq(lambda w: pull_out_torque(m, w), 0.0, hi, xtol=xtol, rtol=4 * np.finfo(float).eps)


def step_size(m: MotorParams) -> float:
    """Linear step ``omega_D * l0`` unless an explicit override is set."""
    if m.step_size is not None:
        return m.step_size
    return m.step_angle * m.screw_radius


def v_max(m: MotorParams) -> float:
    return m.omega_max * m.screw_radius


def torque_speed_curve(m: MotorParams, points: int = 1001):
    """Sample ``(omega, M, P_M)`` on ``[0, omega_M]``."""
    omega = np.linspace(0.0, no_load_speed(m), points)
    torque = pull_out_torque(m, omega)
    return omega, torque, omega * torque
