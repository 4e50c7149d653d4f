"""Parameter containers for the driven V-type emitter.

Units: decay rates, detunings, and Rabi amplitudes share one frequency unit;
lengths are measured against the beam waist.  Angles are radians.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError

TWO_PI = 2.0 * math.pi

COUPLING_PROFILES = ("constant", "gaussian")


@dataclass(frozen=True)
class AtomParams:
    """Decay and detuning parameters of the two excited levels.

    `p` is the interference parameter set by the dipole alignment: the
    cross-damping rate is p*sqrt(gamma1*gamma2)/2, which is only a valid
    damping matrix for |p| <= 1.
    """

    gamma1: float = 1.0
    gamma2: float = 1.0
    p: float = 1.0
    delta1: float = 0.0
    delta2: float = 0.0

    def __post_init__(self):
        if self.gamma1 <= 0.0 or self.gamma2 <= 0.0:
            raise ConfigError("decay rates must be positive, got "
                              f"gamma1={self.gamma1}, gamma2={self.gamma2}")
        if not abs(self.p) <= 1.0:
            raise ConfigError(f"interference parameter must satisfy |p| <= 1, got {self.p}")
        for name in ("gamma1", "gamma2", "p", "delta1", "delta2"):
            if not math.isfinite(getattr(self, name)):
                raise ConfigError(f"{name} must be finite")

    @property
    def cross_damping(self) -> float:
        return self.p * math.sqrt(self.gamma1 * self.gamma2) / 2.0

    @property
    def splitting(self) -> float:
        """Frequency separation delta2 - delta1 of the excited doublet."""
        return self.delta2 - self.delta1


@dataclass(frozen=True)
class FieldConfig:
    """Drive geometry: one vortex arm and one coupling arm.

    The vortex arm carries orbital angular momentum `winding`; its transverse
    profile is o01 * (r/waist)^|winding| * exp(-r^2/waist^2) * exp(i*winding*phi).
    The coupling arm is either spatially flat ("constant") or a waist-matched
    Gaussian ("gaussian") with no phase winding.
    """

    o01: float = 1.0
    omega02: float = 1.0
    waist: float = 1.0
    winding: int = 1
    coupling_profile: str = "constant"

    def __post_init__(self):
        if not isinstance(self.winding, int) or isinstance(self.winding, bool):
            raise ConfigError(f"winding must be an int, got {self.winding!r}")
        if self.waist <= 0.0:
            raise ConfigError(f"waist must be positive, got {self.waist}")
        if self.o01 < 0.0 or self.omega02 < 0.0:
            # global phases are unobservable here, so amplitudes are magnitudes
            raise ConfigError("drive amplitudes must be non-negative")
        if self.coupling_profile not in COUPLING_PROFILES:
            raise ConfigError(f"coupling_profile must be one of {COUPLING_PROFILES}, "
                              f"got {self.coupling_profile!r}")
        for name in ("o01", "omega02", "waist"):
            if not math.isfinite(getattr(self, name)):
                raise ConfigError(f"{name} must be finite")

    @property
    def ring_radius(self) -> float:
        """Radius where the vortex arm is brightest (waist/sqrt(2) for winding 0)."""
        return self.waist * math.sqrt(max(abs(self.winding), 1) / 2.0)


_NORM_SKIP = 1e-14   # already unit within round-off: leave amplitudes untouched
_NORM_ALLOW = 1e-9   # renormalize silently inside this window, reject beyond


@dataclass(frozen=True)
class InitialState:
    """Initial probability amplitudes (ground, upper doublet |1>, |2>).

    The norm must be 1 within 1e-9; small deviations are renormalized so the
    stored state is unit within round-off.
    """

    b0: complex = 1.0 + 0.0j
    b1: complex = 0.0j
    b2: complex = 0.0j

    def __post_init__(self):
        amps = [complex(self.b0), complex(self.b1), complex(self.b2)]
        norm = math.sqrt(sum(abs(a) ** 2 for a in amps))
        if abs(norm - 1.0) > _NORM_ALLOW:
            raise ConfigError(f"initial state norm {norm!r} is not 1 within {_NORM_ALLOW}")
        if abs(norm - 1.0) > _NORM_SKIP:
            amps = [a / norm for a in amps]
        object.__setattr__(self, "b0", amps[0])
        object.__setattr__(self, "b1", amps[1])
        object.__setattr__(self, "b2", amps[2])

    @classmethod
    def ground(cls) -> "InitialState":
        return cls(1.0 + 0.0j, 0.0j, 0.0j)

    @classmethod
    def excited_pair(cls) -> "InitialState":
        """Equal real superposition of the two excited levels."""
        a = 1.0 / math.sqrt(2.0)
        return cls(0.0j, a + 0.0j, a + 0.0j)

    @classmethod
    def uniform(cls) -> "InitialState":
        """Equal real superposition of all three coupled levels."""
        a = 1.0 / math.sqrt(3.0)
        return cls(a + 0.0j, a + 0.0j, a + 0.0j)

    def as_tuple(self) -> tuple[complex, complex, complex]:
        return (self.b0, self.b1, self.b2)


@dataclass(frozen=True)
class SpectralPoint:
    """Observation point: transverse position plus emission detuning delta_k."""

    r: float = 0.0
    phi: float = 0.0
    delta_k: float = 0.0

    def __post_init__(self):
        if self.r < 0.0 or not math.isfinite(self.r):
            raise ConfigError(f"radius must be finite and >= 0, got {self.r}")
        if not math.isfinite(self.phi) or not math.isfinite(self.delta_k):
            raise ConfigError("phi and delta_k must be finite")
        object.__setattr__(self, "phi", self.phi % TWO_PI)


@dataclass(frozen=True)
class GridSpec:
    """Square transverse grid, centered on the beam axis.

    `half_extent` is in waist units; the grid spans [-half_extent*waist,
    +half_extent*waist] along both axes with `resolution` samples per axis.
    """

    half_extent: float = 2.0
    resolution: int = 256

    def __post_init__(self):
        if self.half_extent <= 0.0 or not math.isfinite(self.half_extent):
            raise ConfigError(f"half_extent must be finite and positive, got {self.half_extent}")
        if not isinstance(self.resolution, int) or self.resolution < 2:
            raise ConfigError(f"resolution must be an int >= 2, got {self.resolution!r}")

    def axes(self, waist: float = 1.0):
        """Return (x, y) sample coordinates; y runs from +extent down to -extent."""
        ext = self.half_extent * waist
        x = np.linspace(-ext, ext, self.resolution)
        y = np.linspace(ext, -ext, self.resolution)
        return x, y
