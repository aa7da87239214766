"""Circuit parameters and Hamiltonian assembly for the two-junction SQUID.

The circuit is a capacitively shunted SQUID whose two branches carry first
and second Josephson harmonics.  In the charge basis the Hamiltonian reads

    H = 4 E_C (n̂ - n_g)^2
      + E_JS1 [ cos(phi)  cos(pi (dPhi + 1/2)) + d1 sin(phi)  sin(pi (dPhi + 1/2)) ]
      + E_JS2 [ cos(2phi) cos(2pi (dPhi + 1/2)) + d2 sin(2phi) sin(2pi (dPhi + 1/2)) ]

with dPhi the external flux measured from the frustration point Phi0/2, in
units of Phi0.  Energies are in GHz.  At dPhi = 0 and d1 = d2 = 0 the first
harmonic interferes away and the pure cos(2phi) Hamiltonian
H = 4 E_C (n̂ - n_g)^2 - E_JS2 cos(2phi) remains.
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
import math
from dataclasses import dataclass

import numpy as np

from .chargebasis import (
    ChargeOperator,
    charge_number_operator,
    cos_m_phi_operator,
    sin_m_phi_operator,
)

__all__ = [
    "CircuitParams",
    "build_hamiltonian",
    "flux_coupling_operator",
    "charge_coupling_operator",
]

_FIELDS = ("ec", "ejs1", "ejs2", "d1", "d2", "dphi", "ng", "n_trunc")


@dataclass(frozen=True)
class CircuitParams:
    """All knobs of the interference-based cos(2phi) circuit.

    Parameters
    ----------
    ec : float
        Charging energy e^2/2C, GHz.  Must be positive.
    ejs1 : float
        Summed first-harmonic Josephson energy of the two branches, GHz.
        Typically negative for multi-harmonic junctions; may be zero for the
        pure cos(2phi) idealization.
    ejs2 : float
        Summed second-harmonic Josephson energy, GHz.  Must be positive.
    d1, d2 : float
        Junction asymmetries (E_JB - E_JA)/(E_JB + E_JA) per harmonic,
        each in (-1, 1).
    dphi : float
        Offset flux from the frustration point, Phi/Phi0 - 1/2.
    ng : float
        Island offset charge in Cooper pairs.
    n_trunc : int
        Charge-basis halfwidth N; must be >= 2 so cos(2phi) is representable.
    """

    ec: float
    ejs1: float
    ejs2: float
    d1: float = 0.0
    d2: float = 0.0
    dphi: float = 0.0
    ng: float = 0.0
    n_trunc: int = 40

    def __post_init__(self):
        if not self.ec > 0:
            raise ValueError("ec must be positive")
        if not self.ejs2 > 0:
            raise ValueError("ejs2 must be positive")
        for name in ("d1", "d2"):
            if not abs(getattr(self, name)) < 1.0:
                raise ValueError(f"{name} must lie in (-1, 1)")
        if int(self.n_trunc) != self.n_trunc or self.n_trunc < 2:
            raise ValueError("n_trunc must be an integer >= 2")
        for name in ("ec", "ejs1", "ejs2", "d1", "d2", "dphi", "ng"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite")

    @classmethod
    def from_ratio(
        cls,
        ec: float,
        ejs2: float,
        ratio: float = -0.1,
        d: float = 0.0,
        dphi: float = 0.0,
        ng: float = 0.0,
        n_trunc: int = 40,
    ) -> "CircuitParams":
        """Build params from the harmonic ratio E_JS2/E_JS1.

        The ratio is the quantity quoted for implementations (typically -0.1),
        so the signed ejs1 = ejs2/ratio is derived here rather than left to
        the caller's sign bookkeeping.
        """
        if ratio == 0:
            raise ValueError("ratio must be nonzero; use ejs1=0 directly for pure cos(2phi)")
        return cls(
            ec=ec,
            ejs1=ejs2 / ratio,
            ejs2=ejs2,
            d1=d,
            d2=d,
            dphi=dphi,
            ng=ng,
            n_trunc=n_trunc,
        )

    @classmethod
    def pure_cos2phi(
        cls, ec: float, ejs2: float, ng: float = 0.0, n_trunc: int = 40
    ) -> "CircuitParams":
        """Pure cos(2phi) circuit: no first harmonic, no asymmetry, dphi = 0."""
        return cls(ec=ec, ejs1=0.0, ejs2=ejs2, d1=0.0, d2=0.0, dphi=0.0, ng=ng, n_trunc=n_trunc)

    @property
    def ratio(self) -> float:
        """E_JS2 / E_JS1 (inf for the pure circuit)."""
        if self.ejs1 == 0:
            return math.inf
        return self.ejs2 / self.ejs1

    def replace(self, **changes) -> "CircuitParams":
        return dataclasses.replace(self, **changes)

    def to_dict(self) -> dict:
        return {name: getattr(self, name) for name in _FIELDS}

    @classmethod
    def from_dict(cls, data: dict) -> "CircuitParams":
        unknown = set(data) - set(_FIELDS)
        if unknown:
            raise ValueError(f"unknown CircuitParams keys: {sorted(unknown)}")
        missing = set(_FIELDS) - set(data)
        if missing:
            raise ValueError(f"missing CircuitParams keys: {sorted(missing)}")
        return cls(**{k: (int(v) if k == "n_trunc" else float(v)) for k, v in data.items()})

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "CircuitParams":
        data = json.loads(text)
        if not isinstance(data, dict):
            raise ValueError("CircuitParams JSON must be a flat object")
        return cls.from_dict(data)

    def content_hash(self) -> str:
        return hashlib.sha256(self.to_json().encode()).hexdigest()[:16]


def _flux_weights(dphi: float) -> tuple[float, float, float, float]:
    """Trigonometric interference weights of the two harmonics."""
    t1 = math.pi * (dphi + 0.5)
    t2 = 2.0 * math.pi * (dphi + 0.5)
    return math.cos(t1), math.sin(t1), math.cos(t2), math.sin(t2)


def build_hamiltonian(p: CircuitParams) -> ChargeOperator:
    """Assemble the circuit Hamiltonian in GHz on the truncated charge basis."""
    n = p.n_trunc
    kvals = np.arange(-n, n + 1, dtype=float)
    ham = np.diag(4.0 * p.ec * (kvals - p.ng) ** 2).astype(complex)
    wc1, ws1, wc2, ws2 = _flux_weights(p.dphi)
    ham += p.ejs1 * (
        wc1 * cos_m_phi_operator(n, 1).entries + p.d1 * ws1 * sin_m_phi_operator(n, 1).entries
    )
    ham += p.ejs2 * (
        wc2 * cos_m_phi_operator(n, 2).entries + p.d2 * ws2 * sin_m_phi_operator(n, 2).entries
    )
    return ChargeOperator(n, ham)


def flux_coupling_operator(p: CircuitParams) -> ChargeOperator:
    """Analytic flux derivative dH/dPhi in GHz per Phi0.

    Differentiating the interference weights shifts their arguments from
    pi (dPhi + 1/2) to pi dPhi:

        dH/dPhi = - E_JS1 (pi/Phi0)  [  cos(phi)  cos(pi dPhi)  + d1 sin(phi)  sin(pi dPhi) ]
                  - E_JS2 (2pi/Phi0) [ -cos(2phi) sin(2pi dPhi) + d2 sin(2phi) cos(2pi dPhi) ]

    Since dPhi is already measured in Phi0 units, the returned matrix equals
    dH/d(dPhi) numerically.  It is checked against a central finite difference
    of ``build_hamiltonian`` in the test suite.
    """
    n = p.n_trunc
    a1 = math.pi * p.dphi
    a2 = 2.0 * math.pi * p.dphi
    mat = -p.ejs1 * math.pi * (
        math.cos(a1) * cos_m_phi_operator(n, 1).entries
        + p.d1 * math.sin(a1) * sin_m_phi_operator(n, 1).entries
    )
    mat -= p.ejs2 * 2.0 * math.pi * (
        -math.sin(a2) * cos_m_phi_operator(n, 2).entries
        + p.d2 * math.cos(a2) * sin_m_phi_operator(n, 2).entries
    )
    return ChargeOperator(n, mat)


def charge_coupling_operator(p: CircuitParams) -> ChargeOperator:
    """Analytic offset-charge derivative dH/dn_g = -8 E_C (n̂ - n_g), GHz per Cooper pair."""
    n_op = charge_number_operator(p.n_trunc)
    dim = n_op.dim
    mat = -8.0 * p.ec * (n_op.entries - p.ng * np.eye(dim))
    return ChargeOperator(p.n_trunc, mat)
