"""Transverse maps and azimuthal cuts of the emission spectrum."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .emission import POLE_EPSILON, spectrum_values
from .errors import ConfigError, DegenerateProfile, SpectralPole
from .params import AtomParams, FieldConfig, GridSpec, InitialState

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class SpectrumMap:
    """Spectrum sampled on a square transverse grid at fixed mode detuning.

    Row 0 is the top of the frame (+y); columns run left to right (-x to +x).
    Masked cells sit where the resolvent determinant vanished; their values
    are nan.
    """

    values: np.ndarray
    pole_mask: np.ndarray
    grid: GridSpec
    waist: float
    delta_k: float
    label: str = ""

    @property
    def masked_count(self) -> int:
        return int(np.count_nonzero(self.pole_mask))

    def finite_values(self) -> np.ndarray:
        return self.values[~self.pole_mask]


@dataclass(frozen=True)
class AzimuthalProfile:
    """Spectrum around one ring of constant radius, phis uniform in [0, 2pi)."""

    phis: np.ndarray
    values: np.ndarray
    r: float
    delta_k: float


def evaluate_map(atom: AtomParams, fields: FieldConfig, init: InitialState,
                 delta_k: float = 0.0, grid: GridSpec | None = None,
                 workers: int | None = None, pole_epsilon: float = POLE_EPSILON,
                 label: str = "") -> SpectrumMap:
    """Evaluate the spectrum over the grid; splits rows across threads if asked.

    The kernel is elementwise, so the worker count cannot change a single bit
    of the result.
    """
    g = grid if grid is not None else GridSpec()
    x, y = g.axes(fields.waist)
    xx = x[np.newaxis, :]

    values = np.empty((g.resolution, g.resolution))
    mask = np.empty((g.resolution, g.resolution), dtype=bool)

    def fill(lo: int, hi: int):
        yy = y[lo:hi, np.newaxis]
        rr = np.hypot(xx, yy)
        pp = np.arctan2(yy, xx)
        vals, m = spectrum_values(atom, fields, init, rr, pp, delta_k,
                                  pole_epsilon=pole_epsilon)
        values[lo:hi] = vals
        mask[lo:hi] = m

    nw = int(workers) if workers else 1
    if nw <= 1:
        fill(0, g.resolution)
    else:
        step = -(-g.resolution // nw)
        bounds = [(lo, min(lo + step, g.resolution))
                  for lo in range(0, g.resolution, step)]
        with ThreadPoolExecutor(max_workers=nw) as pool:
            list(pool.map(lambda b: fill(*b), bounds))

    values.setflags(write=False)
    mask.setflags(write=False)
    return SpectrumMap(values=values, pole_mask=mask, grid=g, waist=fields.waist,
                       delta_k=delta_k, label=label)


def azimuthal_profile(atom: AtomParams, fields: FieldConfig, init: InitialState,
                      r: float, delta_k: float = 0.0, n_phi: int = 360,
                      pole_epsilon: float = POLE_EPSILON) -> AzimuthalProfile:
    """Sample the spectrum on a ring by direct evaluation (no map interpolation)."""
    if n_phi < 4:
        raise ConfigError(f"n_phi must be >= 4, got {n_phi}")
    phis = np.arange(n_phi) * (TWO_PI / n_phi)
    vals, mask = spectrum_values(atom, fields, init, r, phis, delta_k,
                                 pole_epsilon=pole_epsilon)
    if mask.any():
        bad = phis[mask][0]
        raise SpectralPole(f"determinant vanished on the ring r={r} at "
                           f"phi={bad:.6f} (and {int(mask.sum()) - 1} more samples)")
    vals = np.asarray(vals)
    vals.setflags(write=False)
    phis.setflags(write=False)
    return AzimuthalProfile(phis=phis, values=vals, r=r, delta_k=delta_k)


def vortex_ring_radius(fields: FieldConfig) -> float:
    """Radius of maximum vortex intensity; waist/sqrt(2) when there is no winding."""
    return fields.ring_radius


def _profile_values(profile) -> np.ndarray:
    vals = profile.values if isinstance(profile, AzimuthalProfile) else np.asarray(profile, dtype=float)
    if vals.ndim != 1 or vals.size < 4:
        raise ConfigError(f"need a 1-d profile with >= 4 samples, got shape {vals.shape}")
    return vals


def count_peaks(profile, rel_threshold: float = 0.5) -> int:
    """Number of distinct bright lobes around the ring.

    A lobe is a circularly contiguous run of samples at or above
    rel_threshold times the maximum.  A profile with no positive maximum has
    no angular structure and counts zero.
    """
    vals = _profile_values(profile)
    if not 0.0 < rel_threshold <= 1.0:
        raise ConfigError(f"rel_threshold must be in (0, 1], got {rel_threshold}")
    top = vals.max()
    if not top > 0.0:
        return 0
    mask = vals >= rel_threshold * top
    if mask.all():
        return 1
    starts = mask & ~np.roll(mask, 1)
    return int(np.count_nonzero(starts))


def rotation_offset(reference, rotated) -> float:
    """Angle in [0, 2pi) that carries `reference` onto `rotated`, counterclockwise.

    Found as the argmax of the circular cross-correlation, so for a pattern
    with an n-fold repeat the answer is only defined modulo 2pi/n.  Both
    profiles must share one uniform [0, 2pi) angle grid.
    """
    a = _profile_values(reference)
    b = _profile_values(rotated)
    if a.size != b.size:
        raise ConfigError(f"profiles differ in length: {a.size} vs {b.size}")
    for name, vals in (("reference", a), ("rotated", b)):
        if np.ptp(vals) <= 1e-12 * max(np.abs(vals).max(), 1e-300):
            raise DegenerateProfile(f"{name} profile is constant; rotation is undefined")
    corr = np.fft.ifft(np.conjugate(np.fft.fft(a)) * np.fft.fft(b)).real
    shift = int(np.argmax(corr))
    return shift * TWO_PI / a.size
