"""Filament growth/dissolution rate law shared by both engines.

The tip-diameter rate (m/s) is the sum of three contributions:

* drift (growth, >= 0):      A * exp(-(E_drift - alpha*q*psi) / (kB*T))
* diffusion (dissolution):  -B / phi * exp(-E_diff / (kB*T))
* thermo-diffusion:         -C / phi * S(T) * (dT/dr + dT/dz)

with the Soret factor S(T) = E_soret / (2 * kB * T^2) in 1/K.  Energies
are carried in eV so alpha*psi adds to the exponent directly (psi in V,
charge number 1).  ``numpy`` broadcasting is supported so the PDE engine
can evaluate whole profiles at once.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .params import KB_EV, MaterialParams


@dataclass(frozen=True)
class RateTerms:
    """Per-term breakdown of the tip rate (all m/s)."""

    drift: float
    diffusion: float
    thermo: float

    @property
    def net(self) -> float:
        return self.drift + self.diffusion + self.thermo


def soret_factor(E_soret, T):
    """Soret coefficient closure S(T) = E_s / (2 kB T^2), in 1/K."""
    return E_soret / (2.0 * KB_EV * np.asarray(T, dtype=float) ** 2)


def drift_term(mat: MaterialParams, psi, T):
    """Field-directed growth component, m/s (never negative)."""
    psi = np.asarray(psi, dtype=float)
    T = np.asarray(T, dtype=float)
    return mat.A * np.exp(-(mat.E_drift - mat.alpha * psi) / (KB_EV * T))


def diffusion_term(mat: MaterialParams, phi, T):
    """Thermally activated dissolution component, m/s (never positive)."""
    phi = np.asarray(phi, dtype=float)
    T = np.asarray(T, dtype=float)
    return -(mat.B / phi) * np.exp(-mat.E_diff / (KB_EV * T))


def thermo_term(mat: MaterialParams, phi, T, grad_T):
    """Thermo-diffusion (Soret) dissolution component, m/s.

    ``grad_T`` is the pair (dT/dr, dT/dz) in K/m; scalars or arrays.
    """
    phi = np.asarray(phi, dtype=float)
    g_r, g_z = grad_T
    total_grad = np.asarray(g_r, dtype=float) + np.asarray(g_z, dtype=float)
    return -(mat.C / phi) * soret_factor(mat.E_soret, T) * total_grad


def filament_rate(mat: MaterialParams, phi, psi, T, grad_T) -> RateTerms:
    """Evaluate all three rate components at one state point.

    Scalars in, scalar RateTerms out; arrays broadcast elementwise and the
    RateTerms fields hold arrays.
    """
    T = np.maximum(np.asarray(T, dtype=float), 1.0)  # guard against T=0
    drift = drift_term(mat, psi, T)
    diff = diffusion_term(mat, phi, T)
    thermo = thermo_term(mat, phi, T, grad_T)
    if np.ndim(drift) == 0 and np.ndim(diff) == 0 and np.ndim(thermo) == 0:
        return RateTerms(float(drift), float(diff), float(thermo))
    shape = np.broadcast_shapes(np.shape(drift), np.shape(diff), np.shape(thermo))
    return RateTerms(np.broadcast_to(drift, shape).astype(float),
                     np.broadcast_to(diff, shape).astype(float),
                     np.broadcast_to(thermo, shape).astype(float))
