"""Time-domain integration of the three coupled amplitudes.

This module is the independent cross-check for the closed-form results: it
steps the amplitude equations with classical RK4 and reconstructs mode
amplitudes as explicit Fourier integrals of the stored history.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .emission import coupling_rabi, vortex_rabi
from .errors import ConfigError, NonConvergenceWarning, NotConverged
from .params import AtomParams, FieldConfig, InitialState, SpectralPoint

_trapz = getattr(np, "trapezoid", None) or np.trapz

_MAX_STEPS = 50_000_000


@dataclass(frozen=True)
class IntegratorConfig:
    """Step size and stopping policy for the amplitude integration.

    `tail_tolerance` bounds the survival mass allowed at t_final once any
    non-radiating (trapped) population has been subtracted.
    """

    t_final: float = 60.0
    dt: float = 1e-3
    tail_tolerance: float = 1e-8

    def __post_init__(self):
        if not (self.t_final > 0.0 and math.isfinite(self.t_final)):
            raise ConfigError(f"t_final must be finite and positive, got {self.t_final}")
        if not (self.dt > 0.0 and math.isfinite(self.dt)):
            raise ConfigError(f"dt must be finite and positive, got {self.dt}")
        if self.dt >= self.t_final:
            raise ConfigError(f"dt={self.dt} must be smaller than t_final={self.t_final}")
        if self.t_final / self.dt > _MAX_STEPS:
            raise ConfigError(f"t_final/dt = {self.t_final / self.dt:.2e} exceeds "
                              f"{_MAX_STEPS} steps")
        if not (self.tail_tolerance > 0.0):
            raise ConfigError(f"tail_tolerance must be positive, got {self.tail_tolerance}")


@dataclass(frozen=True)
class Trajectory:
    """Stored amplitude history at one transverse position.

    `emission_source` is b1 + b2, the coherent source feeding each vacuum
    mode.  `dark_state` records that non-radiating population was parked at
    t_final (trapped ground amplitude with both local drives off, or the
    non-decaying superposition that exists at |p| = 1 with equal excited
    detunings); `tail_mass` is what survival leaves after that exclusion.
    """

    times: np.ndarray
    amps: np.ndarray
    emission_source: np.ndarray
    converged: bool
    dark_state: bool
    tail_mass: float
    atom: AtomParams
    drive: tuple[complex, complex]
    config: IntegratorConfig = field(repr=False)

    def survival(self) -> np.ndarray:
        """Total retained probability |b0|^2 + |b1|^2 + |b2|^2 at each step."""
        return np.sum(np.abs(self.amps) ** 2, axis=1)


def _step_matrix(a: np.ndarray, dt: float) -> np.ndarray:
    """One-step RK4 propagator for the linear system db/dt = a @ b.

    Equivalent to textbook RK4 stepping because the system is linear with
    constant coefficients; precomputing it turns the loop into a 3x3 matvec.
    """
    eye = np.eye(3, dtype=complex)
    k1 = a
    k2 = a @ (eye + 0.5 * dt * k1)
    k3 = a @ (eye + 0.5 * dt * k2)
    k4 = a @ (eye + dt * k3)
    return eye + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def drive_matrix(atom: AtomParams, o01c: complex, o02c: complex) -> np.ndarray:
    """Non-Hermitian generator a with db/dt = a @ b for local Rabi values."""
    q = atom.cross_damping
    h = np.array([
        [0.0, o01c, o02c],
        [np.conjugate(o01c), atom.delta1 - 0.5j * atom.gamma1, -1j * q],
        [np.conjugate(o02c), -1j * q, atom.delta2 - 0.5j * atom.gamma2],
    ], dtype=complex)
    return -1j * h


def evolve(atom: AtomParams, fields: FieldConfig, init: InitialState,
           point: SpectralPoint, config: IntegratorConfig | None = None) -> Trajectory:
    """Integrate the amplitudes at one transverse position.

    Only point.r and point.phi matter here; the mode detuning enters later
    through the Fourier integrals.  Emits NonConvergenceWarning when survival
    stalls above tail_tolerance with no trapped population to explain it.
    """
    cfg = config if config is not None else IntegratorConfig()
    o01c = vortex_rabi(fields, point.r, point.phi)
    o02c = complex(coupling_rabi(fields, point.r))
    a = drive_matrix(atom, o01c, o02c)

    n = int(round(cfg.t_final / cfg.dt))
    r = _step_matrix(a, cfg.dt)
    r00, r01, r02 = r[0]
    r10, r11, r12 = r[1]
    r20, r21, r22 = r[2]

    amps = np.empty((n + 1, 3), dtype=complex)
    b0, b1, b2 = init.as_tuple()
    amps[0] = (b0, b1, b2)
    for i in range(1, n + 1):
        b0, b1, b2 = (r00 * b0 + r01 * b1 + r02 * b2,
                      r10 * b0 + r11 * b1 + r12 * b2,
                      r20 * b0 + r21 * b1 + r22 * b2)
        amps[i, 0] = b0
        amps[i, 1] = b1
        amps[i, 2] = b2

    times = np.arange(n + 1) * cfg.dt
    source = amps[:, 1] + amps[:, 2]

    drives_off = o01c == 0.0 and o02c == 0.0
    trapped = 0.0
    if drives_off:
        trapped += abs(b0) ** 2
        if abs(atom.p) == 1.0 and atom.delta1 == atom.delta2:
            s1, s2 = math.sqrt(atom.gamma1), math.sqrt(atom.gamma2)
            scale = math.sqrt(atom.gamma1 + atom.gamma2)
            d1, d2 = s2 / scale, -math.copysign(s1, atom.p) / scale
            trapped += abs(d1 * b1 + d2 * b2) ** 2

    survival_end = abs(b0) ** 2 + abs(b1) ** 2 + abs(b2) ** 2
    tail = max(survival_end - trapped, 0.0)
    converged = tail < cfg.tail_tolerance
    dark = trapped > cfg.tail_tolerance
    if not converged:
        warnings.warn(f"survival mass {tail:.3e} above tolerance "
                      f"{cfg.tail_tolerance:.1e} at t_final={cfg.t_final}",
                      NonConvergenceWarning, stacklevel=2)

    for arr in (times, amps, source):
        arr.setflags(write=False)
    return Trajectory(times=times, amps=amps, emission_source=source,
                      converged=converged, dark_state=dark, tail_mass=tail,
                      atom=atom, drive=(o01c, o02c), config=cfg)


def _require_converged(traj: Trajectory, what: str):
    if not (traj.converged or traj.dark_state):
        raise NotConverged(f"{what} needs a decayed emission source; tail mass "
                           f"{traj.tail_mass:.3e} at t_final={traj.config.t_final}")


def channel_amplitudes(traj: Trajectory, delta_k: float) -> tuple[complex, complex]:
    """Per-channel mode amplitudes as Fourier integrals of the stored history."""
    phase = np.exp(1j * delta_k * traj.times)
    f1 = _trapz(phase * traj.amps[:, 1], dx=traj.config.dt)
    f2 = _trapz(phase * traj.amps[:, 2], dx=traj.config.dt)
    return complex(f1), complex(f2)


def spectral_amplitude(traj: Trajectory, delta_k: float) -> complex:
    """Long-time amplitude of the mode at detuning delta_k, channels summed."""
    _require_converged(traj, "spectral_amplitude")
    phase = np.exp(1j * delta_k * traj.times)
    return complex(-_trapz(phase * traj.emission_source, dx=traj.config.dt))


def oracle_spectrum(traj: Trajectory, delta_k: float) -> float:
    """Detected spectrum from the time domain: channel amplitudes added in power."""
    _require_converged(traj, "oracle_spectrum")
    f1, f2 = channel_amplitudes(traj, delta_k)
    return abs(f1) ** 2 + abs(f2) ** 2


def _scale_for_grid(traj: Trajectory) -> float:
    atom = traj.atom
    o01c, o02c = traj.drive
    return max(atom.gamma1, atom.gamma2, abs(atom.delta1), abs(atom.delta2),
               abs(o01c), abs(o02c))


_PARSEVAL_MIN_POINTS = 4096
_PARSEVAL_SPAN_FACTOR = 20.0
_PARSEVAL_MAX_SAMPLES = 30_001


def parseval_check(traj: Trajectory, delta_k_grid: np.ndarray) -> tuple[float, float]:
    """Energy on both sides of the line shape: (integrated spectrum, 2*pi*source energy).

    The grid must be uniform, hold at least 4096 points, and span at least
    +-20x the largest rate in play.  Time samples are decimated to ~30k for
    the oscillatory integrals; the quadrature bias this leaves stays well
    inside 1%.
    """
    _require_converged(traj, "parseval_check")
    grid = np.asarray(delta_k_grid, dtype=float)
    if grid.ndim != 1 or grid.size < _PARSEVAL_MIN_POINTS:
        raise ConfigError(f"delta_k grid needs >= {_PARSEVAL_MIN_POINTS} points, "
                          f"got shape {grid.shape}")
    steps = np.diff(grid)
    if steps.size == 0 or not np.allclose(steps, steps[0], rtol=1e-9, atol=0.0) \
            or steps[0] <= 0.0:
        raise ConfigError("delta_k grid must be uniformly increasing")
    span = _PARSEVAL_SPAN_FACTOR * _scale_for_grid(traj)
    if grid[0] > -span or grid[-1] < span:
        raise ConfigError(f"delta_k grid [{grid[0]}, {grid[-1]}] must span at "
                          f"least +-{span}")

    stride = max(1, (traj.times.size - 1) // (_PARSEVAL_MAX_SAMPLES - 1))
    src = traj.emission_source[::stride]
    h = traj.config.dt * stride
    weights = np.full(src.size, h)
    weights[0] = weights[-1] = 0.5 * h
    y = src * weights

    lineshape = np.empty(grid.size)
    chunk = 64
    for start in range(0, grid.size, chunk):
        dk = grid[start:start + chunk]
        base = np.exp(1j * dk * h)
        phases = np.broadcast_to(base[:, None], (dk.size, src.size)).copy()
        phases[:, 0] = 1.0
        np.cumprod(phases, axis=1, out=phases)
        f = phases @ y
        lineshape[start:start + chunk] = np.abs(f) ** 2

    lhs = float(_trapz(lineshape, grid))
    rhs = float(2.0 * np.pi * _trapz(np.abs(traj.emission_source) ** 2,
                                     dx=traj.config.dt))
    return lhs, rhs
