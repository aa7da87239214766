"""Josephson-harmonic content of candidate circuit elements.

Each implementation of a pi-periodic element reduces to an even inductive
potential U(phi) whose Fourier cosine coefficients are the Josephson
harmonics E_Jm.  The second-to-first harmonic ratio of a single branch sets
the E_JS2/E_JS1 ratio of the interference circuit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import PoleError

__all__ = [
    "HarmonicSeries",
    "fourier_harmonics",
    "transparent_junction_harmonics",
    "rhombus_harmonics",
    "rhombus_expansion_coefficients",
    "kite_small_inductance_ratio",
    "flowermon_ratio",
    "implementation_table",
]

PRODUCTION_GRID = 4096
ORACLE_GRID = 65536
_ODD_PART_TOL = 1e-8

# Experimentally plausible twist-angle window for the twisted-cuprate element.
FLOWERMON_ANGLE_ACCURACY_RAD = math.radians(0.2)


@dataclass(frozen=True)
class HarmonicSeries:
    """Cosine coefficients E_Jm, m = 0..M, of an even 2pi-periodic potential."""

    coefficients: np.ndarray
    model_tag: str

    def __post_init__(self):
        coeff = np.asarray(self.coefficients, dtype=float)
        coeff.setflags(write=False)
        object.__setattr__(self, "coefficients", coeff)

    @property
    def order(self) -> int:
        return self.coefficients.size - 1

    def reconstruct(self, phi: np.ndarray) -> np.ndarray:
        phi = np.asarray(phi, dtype=float)
        total = np.zeros_like(phi)
        for m, coeff in enumerate(self.coefficients):
            total += coeff * np.cos(m * phi)
        return total

    @property
    def second_to_first_ratio(self) -> float:
        """E_J2 / E_J1, the quantity quoted per implementation."""
        if self.order < 2:
            raise ValueError("series must include at least the m=2 harmonic")
        e1 = self.coefficients[1]
        if e1 == 0:
            raise ZeroDivisionError("first harmonic vanishes; ratio undefined")
        return float(self.coefficients[2] / e1)


def fourier_harmonics(potential: np.ndarray, order: int, model_tag: str = "sampled") -> HarmonicSeries:
    """Cosine-series coefficients of a potential sampled on a uniform 2pi grid.

    The grid is phi_j = 2 pi j / L, j = 0..L-1 (periodic, endpoint excluded)
    and must satisfy L >= 8 * order.  The potential must be even in phi to the
    1e-8 odd-part tolerance; an odd component signals a phase-offset bug in
    whatever produced the samples, so it is rejected instead of projected out.
    """
    samples = np.asarray(potential, dtype=float)
    if samples.ndim != 1:
        raise ValueError("potential must be a 1-D array of samples")
    size = samples.size
    if order < 0:
        raise ValueError("order must be non-negative")
    if size < 8 * max(order, 1):
        raise ValueError(f"grid size {size} is below 8*M = {8 * max(order, 1)}")
    mirrored = samples[(-np.arange(size)) % size]
    odd_norm = np.linalg.norm(samples - mirrored) / 2.0
    scale = max(np.linalg.norm(samples), 1.0)
    if odd_norm / scale > _ODD_PART_TOL:
        raise ValueError(
            f"potential has an odd component (relative norm {odd_norm / scale:.2e}); "
            "a cosine series does not apply -- check for a phase offset upstream"
        )
    phi = 2.0 * math.pi * np.arange(size) / size
    coeffs = np.empty(order + 1)
    coeffs[0] = samples.mean()
    for m in range(1, order + 1):
        coeffs[m] = 2.0 * np.mean(samples * np.cos(m * phi))
    return HarmonicSeries(coefficients=coeffs, model_tag=model_tag)


def transparent_junction_harmonics(
    tau: float, order: int, num_points: int = PRODUCTION_GRID, ndelta: float = 1.0
) -> HarmonicSeries:
    """Harmonics of a short high-transparency weak link.

    U(phi) = -N Delta sqrt(1 - tau sin^2(phi/2)), with channel transparency
    tau in [0, 1] and the junction energy scale ``ndelta`` = N Delta.  The
    tau = 1 kink at phi = pi is integrable; the uniform trapezoidal projection
    still converges well below the 1e-3 tolerances used on ratios.
    """
    if not 0.0 <= tau <= 1.0:
        raise ValueError("transparency tau must lie in [0, 1]")
    phi = 2.0 * math.pi * np.arange(num_points) / num_points
    potential = -ndelta * np.sqrt(1.0 - tau * np.sin(phi / 2.0) ** 2)
    return fourier_harmonics(potential, order, model_tag=f"transparent(tau={tau:g})")


def rhombus_harmonics(
    eta: float, order: int, num_points: int = PRODUCTION_GRID, ej: float = 1.0
) -> HarmonicSeries:
    """Harmonics of two junctions in series with asymmetry eta.

    U(phi) = -2 E_J sqrt(cos^2(phi/2) + eta^2 sin^2(phi/2)); equivalent to the
    transparent junction with tau = 1 - eta^2 and N Delta = 2 E_J.
    """
    if not 0.0 <= eta < 1.0:
        raise ValueError("asymmetry eta must lie in [0, 1)")
    phi = 2.0 * math.pi * np.arange(num_points) / num_points
    potential = -2.0 * ej * np.sqrt(
        np.cos(phi / 2.0) ** 2 + eta**2 * np.sin(phi / 2.0) ** 2
    )
    return fourier_harmonics(potential, order, model_tag=f"rhombus(eta={eta:g})")


def rhombus_expansion_coefficients(eta: float, ej: float = 1.0) -> tuple[float, float, float]:
    """(E_J0, E_J1, E_J2) of the small-eta expansion of the rhombus potential.

    Valid to O(eta^4); the m=1 and m=2 terms give the ratio -1/5 at eta = 0.
    """
    e0 = -2.0 * ej * (2.0 + eta**2 * (math.log(4.0) - 1.0)) / math.pi
    e1 = -4.0 * ej * (2.0 - eta**2 * (math.log(64.0) - 5.0)) / (3.0 * math.pi)
    e2 = 2.0 * ej * (4.0 - 3.0 * eta**2 * (5.0 * math.log(16.0) - 26.0)) / (15.0 * math.pi)
    return e0, e1, e2


def kite_small_inductance_ratio(ej: float, el: float) -> float:
    """Harmonic ratio of the kinetic-interference element with E_L >> E_J.

    The Born-Oppenheimer reduction of a junction in series with a large
    inductance gives E_JS2/E_JS1 = -E_J / (4 E_L).
    """
    if el <= 0:
        raise ValueError("inductive energy el must be positive")
    return -ej / (4.0 * el)


def flowermon_ratio(theta: float, ek_over_ej: float) -> float:
    """Harmonic ratio of the twisted-cuprate element, E_k / (E_J cos 2 theta).

    ``theta`` is the twist angle in radians.  cos(2 theta) = 0 (45 degrees) is
    a pole where the first harmonic vanishes identically.
    """
    c = math.cos(2.0 * theta)
    if abs(c) < 1e-12:
        raise PoleError(
            "twist angle at 45 degrees: first harmonic vanishes and the ratio diverges"
        )
    return ek_over_ej / c


def implementation_table(angle_accuracy: float = FLOWERMON_ANGLE_ACCURACY_RAD) -> list[dict]:
    """Catalog of implementations and their E_JS2/E_JS1 ratios.

    Computed rows come from the closed forms above; literature rows are
    annotations (values quoted, not derived here).  The high-inductance
    kinetic-interference variant needs a full multi-mode spectrum fit and is
    out of scope for this single-mode model.
    """
    rhombus = rhombus_harmonics(0.0, 2)
    # High transparencies: tau >= 0.85 is where the ratio reaches the
    # -1/5 .. -1/10 band quoted for real material junctions.
    tau_band = [
        transparent_junction_harmonics(t, 2).second_to_first_ratio
        for t in (0.85, 0.9, 0.95)
    ]
    flower_edge = flowermon_ratio(math.pi / 4.0 - angle_accuracy, 0.1)
    return [
        {
            "name": "rhombus",
            "source": "computed",
            "ratio": rhombus.second_to_first_ratio,
            "note": "two junctions in series per branch, eta = 0",
        },
        {
            "name": "pinhole/transparent junction",
            "source": "computed",
            "ratio_range": (min(tau_band), max(tau_band)),
            "note": "tau in [0.85, 0.95]; material dependent",
        },
        {
            "name": "kite (low inductance)",
            "source": "computed",
            "ratio": kite_small_inductance_ratio(0.1, 1.0),
            "note": "E_J/E_L = 0.1",
        },
        {
            "name": "kite (high inductance)",
            "source": "out-of-scope",
            "ratio": -0.04,
            "note": "requires fitting a multi-mode circuit spectrum",
        },
        {
            "name": "flowermon",
            "source": "computed",
            "ratio_range": (-abs(flower_edge), abs(flower_edge)),
            "note": "sign follows cos(2 theta); |ratio| in [0.1, %.1f] for 0.2 deg accuracy"
            % abs(flower_edge),
        },
        {"name": "germanium", "source": "literature", "ratio": -0.1, "note": ""},
        {"name": "graphene", "source": "literature", "ratio": -0.1, "note": ""},
        {
            "name": "InAs",
            "source": "literature",
            "ratio_range": (-0.2, -0.1),
            "note": "",
        },
    ]
