"""Closed-form emission spectrum of the driven V-type atom.

Everything here evaluates the long-time photon amplitude of one vacuum mode
directly from the resolvent of the 3x3 amplitude system: no time stepping.
The two decay channels feed distinct final states, so the detected spectrum
is the incoherent sum of the per-channel mode amplitudes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidScenario, SpectralPole
from .params import AtomParams, FieldConfig, InitialState, SpectralPoint

POLE_EPSILON = 1e-12


def vortex_rabi(fields: FieldConfig, r, phi):
    """Position-dependent Rabi amplitude of the vortex arm, o01*(r/w)^|l|*e^(-r^2/w^2)*e^(il*phi).

    Accepts scalars or broadcastable arrays; returns complex to match.
    """
    r = np.asarray(r, dtype=float)
    phi = np.asarray(phi, dtype=float)
    rho = r / fields.waist
    mag = fields.o01 * rho ** abs(fields.winding) * np.exp(-rho * rho)
    out = mag * np.exp(1j * fields.winding * phi)
    return complex(out) if out.ndim == 0 else out


def coupling_rabi(fields: FieldConfig, r):
    """Rabi amplitude of the coupling arm: flat, or a waist-matched Gaussian."""
    r = np.asarray(r, dtype=float)
    if fields.coupling_profile == "gaussian":
        rho = r / fields.waist
        out = fields.omega02 * np.exp(-rho * rho)
    else:
        out = np.broadcast_to(np.float64(fields.omega02), r.shape)
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class ResolventParts:
    """State-independent pieces of the resolvent at one evaluation point.

    `z_coef` is the system determinant; the mode amplitude for a given initial
    state is assembled from the cofactors xi0..xi5 by `mn_from_initial`.
    """

    x1: complex
    x2: complex
    lambda_: complex
    xi0: complex
    xi1: complex
    xi2: complex
    xi3: complex
    xi4: complex
    xi5: complex
    z_coef: complex


def _kernel(atom: AtomParams, o01c, o02c, delta_k):
    """Resolvent cofactors and determinant, broadcast over field and detuning arrays.

    Returns (xi0..xi5, x1, x2, lam, z).  All inputs may be scalars.
    """
    g1, g2 = atom.gamma1, atom.gamma2
    q = atom.cross_damping
    o10 = np.conjugate(o01c)
    o20 = np.conjugate(o02c)
    w1 = np.abs(o01c) ** 2
    w2 = np.abs(o02c) ** 2

    x1 = delta_k - atom.delta1 + 0.5j * g1
    x2 = delta_k - atom.delta2 + 0.5j * g2

    xi0 = o10 * x2 - 1j * o20 * q
    xi1 = delta_k * x2 - w2
    xi2 = 1j * delta_k * q - o10 * o02c
    xi3 = o20 * x1 - 1j * o10 * q
    xi4 = 1j * delta_k * q - o01c * o20
    xi5 = delta_k * x1 - w1

    lam = delta_k * (x1 * x2 + q * q) - (w1 * x2 + w2 * x1)
    z = lam + 1j * q * (o10 * o02c + o01c * o20)
    return xi0, xi1, xi2, xi3, xi4, xi5, x1, x2, lam, z


def resolvent_parts(atom: AtomParams, fields: FieldConfig, point: SpectralPoint) -> ResolventParts:
    """Evaluate the resolvent pieces at one observation point."""
    o01c = vortex_rabi(fields, point.r, point.phi)
    o02c = coupling_rabi(fields, point.r)
    xi0, xi1, xi2, xi3, xi4, xi5, x1, x2, lam, z = _kernel(atom, o01c, o02c, point.delta_k)
    return ResolventParts(
        x1=complex(x1), x2=complex(x2), lambda_=complex(lam),
        xi0=complex(xi0), xi1=complex(xi1), xi2=complex(xi2),
        xi3=complex(xi3), xi4=complex(xi4), xi5=complex(xi5),
        z_coef=complex(z),
    )


def mn_from_initial(parts: ResolventParts, init: InitialState) -> tuple[complex, complex]:
    """Channel numerators (M, N) for a given initial state.

    M/z_coef and N/z_coef are the long-time mode amplitudes radiated through
    the two decay channels.
    """
    b0, b1, b2 = init.as_tuple()
    m = 1j * (b0 * parts.xi0 + b1 * parts.xi1 - b2 * parts.xi2)
    n = 1j * (b0 * parts.xi3 - b1 * parts.xi4 + b2 * parts.xi5)
    return m, n


def _mn_z(atom, fields, init, r, phi, delta_k):
    """Array-friendly (m, n, z) at arbitrary positions and detunings."""
    o01c = vortex_rabi(fields, r, phi)
    o02c = coupling_rabi(fields, r)
    xi0, xi1, xi2, xi3, xi4, xi5, _, _, _, z = _kernel(atom, o01c, o02c, delta_k)
    b0, b1, b2 = init.as_tuple()
    m = 1j * (b0 * xi0 + b1 * xi1 - b2 * xi2)
    n = 1j * (b0 * xi3 - b1 * xi4 + b2 * xi5)
    return m, n, z


def bk_infinity(atom: AtomParams, fields: FieldConfig, init: InitialState,
                point: SpectralPoint, pole_epsilon: float = POLE_EPSILON) -> complex:
    """Long-time amplitude -(M+N)/Z of one vacuum mode, channels added coherently.

    Raises SpectralPole when the determinant magnitude falls below pole_epsilon.
    """
    m, n, z = _mn_z(atom, fields, init, point.r, point.phi, point.delta_k)
    if abs(z) < pole_epsilon:
        raise SpectralPole(f"|Z| = {abs(z):.3e} at r={point.r}, phi={point.phi}, "
                           f"delta_k={point.delta_k}")
    return complex(-(m + n) / z)


def spectrum(atom: AtomParams, fields: FieldConfig, init: InitialState,
             point: SpectralPoint, pole_epsilon: float = POLE_EPSILON) -> float:
    """Detected emission spectrum (|M|^2 + |N|^2)/|Z|^2 at one point.

    The two channels terminate on different final states, so their mode
    amplitudes add incoherently regardless of the interference parameter.
    """
    m, n, z = _mn_z(atom, fields, init, point.r, point.phi, point.delta_k)
    zabs = abs(z)
    if zabs < pole_epsilon:
        raise SpectralPole(f"|Z| = {zabs:.3e} at r={point.r}, phi={point.phi}, "
                           f"delta_k={point.delta_k}")
    return float((abs(m) ** 2 + abs(n) ** 2) / (zabs * zabs))


def spectrum_values(atom: AtomParams, fields: FieldConfig, init: InitialState,
                    r, phi, delta_k, pole_epsilon: float = POLE_EPSILON):
    """Vectorized spectrum over broadcastable position/detuning arrays.

    Returns (values, pole_mask); masked entries hold nan instead of raising.
    """
    m, n, z = _mn_z(atom, fields, init, r, phi, delta_k)
    zabs = np.abs(z)
    mask = zabs < pole_epsilon
    with np.errstate(divide="ignore", invalid="ignore"):
        vals = (np.abs(m) ** 2 + np.abs(n) ** 2) / (zabs * zabs)
    vals = np.where(mask, np.nan, vals)
    return vals, mask


def spectrum_ground_no_qi(atom: AtomParams, fields: FieldConfig,
                          point: SpectralPoint, pole_epsilon: float = POLE_EPSILON) -> float:
    """Fast path for a ground-state atom with no interference (p = 0).

    Independent of the general assembly: the channels reduce to two driven
    Lorentzian arms sharing one determinant.
    """
    if atom.p != 0.0:
        raise InvalidScenario(f"ground no-interference path requires p = 0, got p={atom.p}")
    o01c = vortex_rabi(fields, point.r, point.phi)
    o02 = coupling_rabi(fields, point.r)
    w1 = abs(o01c) ** 2
    w2 = o02 * o02
    x1 = point.delta_k - atom.delta1 + 0.5j * atom.gamma1
    x2 = point.delta_k - atom.delta2 + 0.5j * atom.gamma2
    z = point.delta_k * x1 * x2 - w1 * x2 - w2 * x1
    zabs = abs(z)
    if zabs < pole_epsilon:
        raise SpectralPole(f"|Z| = {zabs:.3e} at r={point.r}, phi={point.phi}, "
                           f"delta_k={point.delta_k}")
    return float((w1 * abs(x2) ** 2 + w2 * abs(x1) ** 2) / (zabs * zabs))


def resonant_closed_form(atom: AtomParams, fields: FieldConfig, point: SpectralPoint) -> float:
    """Fast path for the fully resonant, maximally interfering ground case.

    Requires p = 1, equal decay rates, zero detunings, delta_k = 0, and a flat
    coupling arm.  The spectrum collapses to 2/(W^2 + O^2 - 2*W*O*cos(l*phi))
    with W the local vortex magnitude and O the coupling amplitude; the decay
    rate drops out entirely.
    """
    conditions = []
    if atom.p != 1.0:
        conditions.append(f"p = 1 (got {atom.p})")
    if atom.gamma1 != atom.gamma2:
        conditions.append(f"gamma1 = gamma2 (got {atom.gamma1}, {atom.gamma2})")
    if atom.delta1 != 0.0 or atom.delta2 != 0.0:
        conditions.append(f"delta1 = delta2 = 0 (got {atom.delta1}, {atom.delta2})")
    if point.delta_k != 0.0:
        conditions.append(f"delta_k = 0 (got {point.delta_k})")
    if fields.coupling_profile != "constant":
        conditions.append(f"flat coupling arm (got {fields.coupling_profile!r})")
    if conditions:
        raise InvalidScenario("resonant closed form requires " + "; ".join(conditions))
    w = abs(vortex_rabi(fields, point.r, point.phi))
    o = coupling_rabi(fields, point.r)
    denom = w * w + o * o - 2.0 * w * o * np.cos(fields.winding * point.phi)
    if denom < POLE_EPSILON:
        raise SpectralPole(f"beat denominator {denom:.3e} vanished at r={point.r}, "
                           f"phi={point.phi}")
    return float(2.0 / denom)


def resolvent_poles(atom: AtomParams, fields: FieldConfig, r: float, phi: float) -> np.ndarray:
    """Complex detunings where Z vanishes (the three dressed-line positions).

    The imaginary parts are minus the dressed decay rates, which bound how
    long the time-domain amplitudes take to die out.
    """
    o01c = vortex_rabi(fields, r, phi)
    o02c = coupling_rabi(fields, r)
    o10 = np.conjugate(o01c)
    o20 = np.conjugate(o02c)
    q = atom.cross_damping
    a1 = -atom.delta1 + 0.5j * atom.gamma1
    a2 = -atom.delta2 + 0.5j * atom.gamma2
    w1 = abs(o01c) ** 2
    w2 = abs(o02c) ** 2
    c = o10 * o02c + o01c * o20
    coeffs = [1.0,
              a1 + a2,
              a1 * a2 + q * q - w1 - w2,
              -(w1 * a2 + w2 * a1) + 1j * q * c]
    return np.roots(np.asarray(coeffs, dtype=complex))
