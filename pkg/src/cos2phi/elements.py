"""Relaxation figures of merit and charge-basis symmetry diagnostics.

The decay channels couple through n̂ (dielectric loss) and through the flux
derivative of the Hamiltonian (flux noise).  Between the two lowest states
the relevant dimensionless magnitudes are

    M_n    = |<0| n̂ |1>|
    M_1phi = |<0|cos(phi)|1>  cos(pi dPhi) + <0|sin(phi)|1>  d1 sin(pi dPhi)|
    M_2phi = |-<0|cos(2phi)|1> sin(2pi dPhi) + <0|sin(2phi)|1> d2 cos(2pi dPhi)|

The symmetry diagnostics quantify why M_n stays small even when the two
states no longer live on disjoint charge parities: within each parity sector
the wavefunctions are close to symmetric (even sector) or antisymmetric (odd
sector) under charge inversion, and n̂ is inversion-odd, so the element is
suppressed by selection rules.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .chargebasis import (
    charge_number_operator,
    cos_m_phi_operator,
    sin_m_phi_operator,
)
from .circuit import CircuitParams
from .constants import DEGENERACY_F01_GHZ
from .spectrum import Spectrum, spectrum_of, transition_frequency

__all__ = [
    "MatrixElementReport",
    "matrix_elements",
    "parity_weights",
    "symmetry_metric",
]

_SECTOR_WEIGHT_FLOOR = 1e-6


@dataclass(frozen=True)
class MatrixElementReport:
    """Magnitudes of the decay figures of merit plus their raw amplitudes.

    ``components`` stores the four complex amplitudes keyed by
    'cos_phi', 'sin_phi', 'cos_2phi', 'sin_2phi' in the deterministic
    eigenvector gauge; only magnitudes of the stated combinations are
    physically meaningful (they enter rates squared).
    """

    m_n: float
    m_1phi: float
    m_2phi: float
    components: dict
    f01_ghz: float
    degenerate: bool

    def recombine(self, p: CircuitParams) -> tuple[float, float]:
        """Recompute (m_1phi, m_2phi) from the stored amplitudes."""
        a1 = math.pi * p.dphi
        a2 = 2.0 * math.pi * p.dphi
        m1 = abs(
            self.components["cos_phi"] * math.cos(a1)
            + self.components["sin_phi"] * p.d1 * math.sin(a1)
        )
        m2 = abs(
            -self.components["cos_2phi"] * math.sin(a2)
            + self.components["sin_2phi"] * p.d2 * math.cos(a2)
        )
        return m1, m2


def matrix_elements(p: CircuitParams, spec: Optional[Spectrum] = None) -> MatrixElementReport:
    """Figures of merit between the two lowest eigenstates.

    A degenerate pair (f01 numerically zero) still has well-defined matrix
    elements in the deterministic gauge; the report flags it instead of
    raising.
    """
    if spec is None:
        spec = spectrum_of(p, k=2)
    n = p.n_trunc
    v0, v1 = spec.state(0), spec.state(1)

    def element(op) -> complex:
        return complex(np.vdot(v0, op.entries @ v1))

    comps = {
        "cos_phi": element(cos_m_phi_operator(n, 1)),
        "sin_phi": element(sin_m_phi_operator(n, 1)),
        "cos_2phi": element(cos_m_phi_operator(n, 2)),
        "sin_2phi": element(sin_m_phi_operator(n, 2)),
    }
    m_n = abs(element(charge_number_operator(n)))
    a1 = math.pi * p.dphi
    a2 = 2.0 * math.pi * p.dphi
    m_1phi = abs(comps["cos_phi"] * math.cos(a1) + comps["sin_phi"] * p.d1 * math.sin(a1))
    m_2phi = abs(-comps["cos_2phi"] * math.sin(a2) + comps["sin_2phi"] * p.d2 * math.cos(a2))
    f01 = transition_frequency(spec, 0, 1)
    return MatrixElementReport(
        m_n=m_n,
        m_1phi=m_1phi,
        m_2phi=m_2phi,
        components=comps,
        f01_ghz=f01,
        degenerate=f01 < DEGENERACY_F01_GHZ,
    )


def parity_weights(
    p: CircuitParams, level: int, spec: Optional[Spectrum] = None
) -> tuple[float, float]:
    """Squared-amplitude weight of an eigenstate on even vs odd charge states."""
    if spec is None:
        spec = spectrum_of(p, k=level + 1)
    vec = spec.state(level)
    kvals = np.arange(-p.n_trunc, p.n_trunc + 1)
    probs = np.abs(vec) ** 2
    w_even = float(probs[kvals % 2 == 0].sum())
    w_odd = float(probs[kvals % 2 == 1].sum())
    total = w_even + w_odd
    if abs(total - 1.0) > 1e-10:
        raise AssertionError(f"parity weights sum to {total}, not 1")
    return w_even, w_odd


_QUARTER_TURN = np.array([1.0 + 0.0j, 1.0j, -1.0 + 0.0j, -1.0j])


def _sector_metric(vec: np.ndarray, kvals: np.ndarray, mask: np.ndarray, center: int) -> float:
    """Normalized overlap <psi_s| R_c |psi_s> with R_c: n -> 2 c - n.

    The overlap is evaluated in the well-centered phase gauge (phase origin
    midway between the two potential wells, i.e. amplitudes rotated by i^n).
    There the sector symmetry characters are stable across the hybridized and
    localized regimes: even-sector symmetric, odd-sector antisymmetric.  In
    the bare gauge, whose wells sit at phase 0 and pi, the odd-sector sign
    flips and the diagnostic would depend on that convention.

    Amplitudes reflected outside the truncated window contribute zero; at a
    converged truncation the neglected tail is negligible.
    """
    amp = np.where(mask, vec, 0.0) * _QUARTER_TURN[kvals % 4]
    weight = float(np.sum(np.abs(amp) ** 2))
    n_min = int(kvals[0])
    overlap = 0.0 + 0.0j
    for idx in np.nonzero(mask)[0]:
        n_val = int(kvals[idx])
        mirrored = 2 * center - n_val
        jdx = mirrored - n_min
        if 0 <= jdx < kvals.size:
            overlap += np.conj(amp[jdx]) * amp[idx]
    return float(np.real(overlap) / weight)


def symmetry_metric(
    p: CircuitParams, level: int, spec: Optional[Spectrum] = None
) -> tuple[Optional[float], Optional[float]]:
    """Charge-inversion symmetry of an eigenstate, per parity sector.

    Returns (even-sector metric, odd-sector metric), each in [-1, 1]; +1 means
    symmetric under reflection about the chosen center, -1 antisymmetric.  The
    nominal center round(2 n_g)/2 is mapped to the integer lattice centers
    bracketing it, and the one maximizing |metric| is used per sector, which
    makes the diagnostic independent of that convention choice.  A sector
    carrying less than 1e-6 of the weight has no meaningful metric and is
    reported as None.
    """
    if spec is None:
        spec = spectrum_of(p, k=level + 1)
    vec = spec.state(level)
    kvals = np.arange(-p.n_trunc, p.n_trunc + 1)
    base = round(2.0 * p.ng) / 2.0
    centers = sorted({math.floor(base), math.floor(base) + 1})

    results: list[Optional[float]] = []
    for parity in (0, 1):
        mask = (kvals % 2) == parity
        weight = float(np.sum(np.abs(np.where(mask, vec, 0.0)) ** 2))
        if weight < _SECTOR_WEIGHT_FLOOR:
            results.append(None)
            continue
        metrics = [_sector_metric(vec, kvals, mask, c) for c in centers]
        results.append(max(metrics, key=abs))
    return results[0], results[1]
