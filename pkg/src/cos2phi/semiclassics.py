"""Closed-form inter-well physics of the double-well cos(2phi) potential.

The two wells of -E_JS2 cos(2phi) host quasi-degenerate persistent-current
states.  A WKB estimate of their coupling, modulated by the offset charge
through the interference of the two tunneling paths, is

    kappa(n_g) = 8 E_C sqrt(2/pi) (2 E_JS2/E_C)^(3/4) exp(-sqrt(2 E_JS2/E_C)) cos(pi n_g)

The residual first harmonic tilts the double well with slope
alpha = pi |E_JS1| per Phi0 of offset flux, so a two-level model gives
f01 = 2 sqrt(kappa^2 + (alpha dPhi)^2).  The flux sweet spot survives over
|dPhi| < dphi_max = kappa / (pi |E_JS1|).  Being WKB-asymptotic, kappa is
used for scales and cross-checked at 50% tolerance, never for precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .circuit import CircuitParams

__all__ = ["TwoLevelModel", "kappa", "sweetness", "two_level_f01"]


def kappa(ec: float, ejs2: float, ng: float = 0.0) -> float:
    """Inter-well coupling in GHz; sign carried by cos(pi n_g)."""
    if ec <= 0 or ejs2 <= 0:
        raise ValueError("ec and ejs2 must be positive")
    ratio = 2.0 * ejs2 / ec
    return (
        8.0 * ec * math.sqrt(2.0 / math.pi) * ratio**0.75 * math.exp(-math.sqrt(ratio))
        * math.cos(math.pi * ng)
    )


@dataclass(frozen=True)
class TwoLevelModel:
    """(kappa, alpha, dphi_max) of the tilted two-well doublet.

    kappa is stored as a magnitude (GHz); alpha = pi |E_JS1| in GHz per Phi0;
    dphi_max = kappa / alpha in Phi0 units.
    """

    kappa: float
    alpha: float

    def __post_init__(self):
        if self.kappa < 0:
            raise ValueError("kappa must be stored as a magnitude")
        if self.alpha <= 0:
            raise ValueError("alpha must be positive")

    @property
    def dphi_max(self) -> float:
        return self.kappa / self.alpha

    @classmethod
    def from_params(cls, p: CircuitParams) -> "TwoLevelModel":
        if p.ejs1 == 0:
            raise ValueError(
                "two-level flux model undefined for ejs1 = 0 "
                "(the pure cos(2phi) circuit has no fluxon slope)"
            )
        return cls(
            kappa=abs(kappa(p.ec, p.ejs2, p.ng)),
            alpha=math.pi * abs(p.ejs1),
        )


def sweetness(p: CircuitParams) -> float:
    """Flux range dphi_max over which the dPhi = 0 sweet spot is effective."""
    return TwoLevelModel.from_params(p).dphi_max


def two_level_f01(model: TwoLevelModel, dphi: float) -> float:
    """Qubit frequency of the tilted doublet: 2 sqrt(kappa^2 + (alpha dphi)^2)."""
    return 2.0 * math.hypot(model.kappa, model.alpha * dphi)
