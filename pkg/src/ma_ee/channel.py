"""Field-response multipath channel for a single movable transmit antenna.

Only the transmit-side field response varies with position; the user has a
single fixed antenna, so each path contributes ``g_k * exp(j*k0*x*sin(theta_k))``.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class ChannelParams:
    wavelength: float = 0.06
    num_paths: int = 4
    distance: float = 30.0
    pathloss_exp: float = 2.8
    ref_pathloss: float = 1e-4      # linear power ratio at 1 m (-40 dB)
    noise_power: float = 1e-11      # W (-80 dBm)

    def __post_init__(self):
        for name in ("wavelength", "distance", "pathloss_exp", "ref_pathloss", "noise_power"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise ValueError(f"{name} must be positive and finite, got {value!r}")
        if int(self.num_paths) != self.num_paths or self.num_paths < 1:
            raise ValueError(f"num_paths must be a positive integer, got {self.num_paths!r}")

    @property
    def mean_gain(self) -> float:
        """Expected total channel power ``rho * d**-alpha``."""
        return self.ref_pathloss * self.distance ** (-self.pathloss_exp)


@dataclass(frozen=True, eq=False)
class ChannelRealization:
    gains: np.ndarray   # complex, one per path
    aods: np.ndarray    # radians in [-pi/2, pi/2]

    def __post_init__(self):
        gains = np.asarray(self.gains, dtype=complex).reshape(-1)
        aods = np.asarray(self.aods, dtype=float).reshape(-1)
        if gains.shape != aods.shape or gains.size == 0:
            raise ValueError("gains and aods must be non-empty and of equal length")
        if np.any(np.abs(aods) > math.pi / 2):
            raise ValueError("angles of departure must lie in [-pi/2, pi/2]")
        gains.flags.writeable = False
        aods.flags.writeable = False
        object.__setattr__(self, "gains", gains)
        object.__setattr__(self, "aods", aods)

    @property
    def num_paths(self) -> int:
        return self.gains.size

    def __eq__(self, other):
        if not isinstance(other, ChannelRealization):
            return NotImplemented
        return (np.array_equal(self.gains, other.gains)
                and np.array_equal(self.aods, other.aods))

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["path", "gain_re", "gain_im", "aod_rad"])
        for k, (g, th) in enumerate(zip(self.gains, self.aods)):
            writer.writerow([k, repr(float(g.real)), repr(float(g.imag)), repr(float(th))])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "ChannelRealization":
        rows = list(csv.DictReader(io.StringIO(text)))
        gains = [complex(float(r["gain_re"]), float(r["gain_im"])) for r in rows]
        aods = [float(r["aod_rad"]) for r in rows]
        return cls(np.array(gains), np.array(aods))


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def sample_realization(cp: ChannelParams, seed: int) -> ChannelRealization:
    """Draw CSCG path gains and uniform AoDs, deterministically from ``seed``.

    Each gain has total variance ``rho * d**-alpha / L`` split evenly between
    the real and imaginary parts.
    """
    rng = make_rng(seed)
    n = int(cp.num_paths)
    scale = math.sqrt(cp.mean_gain / n / 2.0)
    gains = scale * (rng.standard_normal(n) + 1j * rng.standard_normal(n))
    aods = rng.uniform(-math.pi / 2, math.pi / 2, n)
    return ChannelRealization(gains, aods)


def channel_coeff(cr: ChannelRealization, cp: ChannelParams, x):
    """Complex channel ``h(x)`` with the phase reference at ``x = 0``."""
    pos = np.asarray(x, dtype=float)
    k0 = 2 * math.pi / cp.wavelength
    phase = k0 * pos[..., None] * np.sin(cr.aods)
    h = np.exp(1j * phase) @ cr.gains
    return h if h.ndim else complex(h)


def shift_reference(cr: ChannelRealization, cp: ChannelParams, x_ref: float) -> ChannelRealization:
    """Realization whose field at ``x`` equals the original field at ``x - x_ref``.

    A pure per-path phase rotation, so the CSCG gain distribution is unchanged.
    """
    k0 = 2 * math.pi / cp.wavelength
    return ChannelRealization(cr.gains * np.exp(-1j * k0 * x_ref * np.sin(cr.aods)), cr.aods)


def channel_gain(cr: ChannelRealization, cp: ChannelParams, x):
    """Power gain ``|h(x)|**2``.

    Expanded as diagonal plus cross terms so a single path gives exactly
    ``|g_1|**2`` at every position (no rounding from the unit phasor).
    """
    pos = np.asarray(x, dtype=float)
    k0 = 2 * math.pi / cp.wavelength
    g = cr.gains
    total = np.full(pos.shape, float(np.sum(np.abs(g) ** 2)))
    sines = np.sin(cr.aods)
    for k in range(g.size):
        for l in range(k + 1, g.size):
            cross = g[k] * np.conj(g[l]) * np.exp(1j * k0 * pos * (sines[k] - sines[l]))
            total = total + 2.0 * cross.real
    total = np.maximum(total, 0.0)
    return total if total.ndim else float(total)
