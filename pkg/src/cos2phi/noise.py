"""Coherence-time estimates from 1/f noise and dielectric loss.

Conventions
-----------
Pure dephasing from 1/f noise in knob lambda (flux in Phi0, charge in Cooper
pairs) uses the standard first-order estimate

    Gamma_phi = A_lambda |d omega01 / d lambda| sqrt(2 |ln(omega_ir t_exp)|)

with the infrared cutoff omega_ir and measurement timescale t_exp taken from
the NoiseSpec (defaults 2*pi s^-1 and 10 us).

Decay via 1/f flux noise treats the quoted amplitude as the measured,
symmetrized spectral density S(omega) = 2 pi A^2 / |omega|.  The downward and
upward golden-rule rates split it by detailed balance,

    down : up = (nbar + 1) : nbar,   down + up = 2 |<0|dH/dPhi|1>|^2 S(omega01),

so the total decay rate carries no net thermal enhancement while the ratio of
absorption to emission is exactly the Boltzmann factor.  Dielectric loss uses
the capacitive quantum spectral density (quality factor Q_cap, charge coupling
2e n̂), which reduces to

    down = 16 (2 pi E_C) / Q_cap |<0|n̂|1>|^2 (nbar + 1),  up likewise with nbar,

with E_C converted to angular frequency.  Both channels reduce to their
zero-temperature forms as T -> 0 and obey Gamma_up/Gamma_down = exp(-h f / kT).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from .circuit import CircuitParams, flux_coupling_operator
from .constants import (
    DEGENERACY_F01_GHZ,
    GHZ_TO_ANGULAR,
    TIME_CAP_S,
    thermal_occupation,
)
from .elements import matrix_elements
from .errors import DegenerateTransitionError
from .spectrum import frequency_gradient, spectrum_of, transition_frequency

__all__ = [
    "NoiseSpec",
    "CoherenceReport",
    "tphi_1f",
    "tphi_1f_second_order",
    "t1_flux",
    "t1_dielectric",
    "coherence_report",
    "classify_limiting",
]

_NOISE_FIELDS = ("a_phi", "a_ng", "q_cap", "temperature", "omega_ir", "t_exp")

# Fig.-9-style classification thresholds.
TEMPERATURE_EJS2_GHZ = 1.0        # usable qubit needs 2 E_JS2 >= k_B T / h ~ 1 GHz
DEPHASING_LIMIT_S = 100e-6        # a channel with T_phi below this is "limiting"


@dataclass(frozen=True)
class NoiseSpec:
    """Noise amplitudes and environment constants.

    a_phi : 1/f flux-noise amplitude in Phi0 (default 1e-6).
    a_ng : 1/f charge-noise amplitude in Cooper pairs (default 1e-4).
    q_cap : dielectric quality factor (default 1e6).
    temperature : photonic temperature in kelvin (default 0.050).
    omega_ir : infrared angular-frequency cutoff in 1/s (default 2*pi).
    t_exp : dephasing measurement timescale in s (default 1e-5).
    """

    a_phi: float = 1e-6
    a_ng: float = 1e-4
    q_cap: float = 1e6
    temperature: float = 0.050
    omega_ir: float = 2.0 * math.pi
    t_exp: float = 1e-5

    def __post_init__(self):
        for name in _NOISE_FIELDS:
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")

    @property
    def dephasing_envelope(self) -> float:
        return math.sqrt(2.0 * abs(math.log(self.omega_ir * self.t_exp)))

    def replace(self, **changes) -> "NoiseSpec":
        return replace(self, **changes)

    def to_dict(self) -> dict:
        return {name: getattr(self, name) for name in _NOISE_FIELDS}

    @classmethod
    def from_dict(cls, data: dict) -> "NoiseSpec":
        unknown = set(data) - set(_NOISE_FIELDS)
        if unknown:
            raise ValueError(f"unknown NoiseSpec keys: {sorted(unknown)}")
        return cls(**{k: float(v) for k, v in data.items()})

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "NoiseSpec":
        data = json.loads(text)
        if not isinstance(data, dict):
            raise ValueError("NoiseSpec JSON must be a flat object")
        return cls.from_dict(data)


def one_over_f_rates(
    me_ghz_per_unit: float,
    f_ghz: float,
    amplitude: float,
    temperature: float,
) -> tuple[float, float]:
    """(downward, upward) 1/s golden-rule rates for a 1/f-coupled transition.

    ``me_ghz_per_unit`` is |<i| dH/dlambda |j>| in GHz per unit of the noisy
    knob; ``f_ghz`` must be positive (callers clamp degenerate pairs at the
    infrared cutoff).
    """
    omega = GHZ_TO_ANGULAR * f_ghz
    s_sym = 2.0 * math.pi * amplitude**2 / omega
    total = 2.0 * (GHZ_TO_ANGULAR * me_ghz_per_unit) ** 2 * s_sym
    nbar = thermal_occupation(f_ghz, temperature)
    down = total * (nbar + 1.0) / (2.0 * nbar + 1.0)
    return down, total - down


def dielectric_rates(
    mn: float,
    f_ghz: float,
    ec_ghz: float,
    q_cap: float,
    temperature: float,
) -> tuple[float, float]:
    """(downward, upward) 1/s dielectric-loss rates for charge element ``mn``."""
    nbar = thermal_occupation(f_ghz, temperature)
    base = 16.0 * GHZ_TO_ANGULAR * ec_ghz / q_cap * mn**2
    return base * (nbar + 1.0), base * nbar


def _cap_time(rate: float) -> float:
    if rate <= 1.0 / TIME_CAP_S:
        return TIME_CAP_S
    return 1.0 / rate


def tphi_1f(
    p: CircuitParams,
    noise: NoiseSpec,
    channel: str,
    gradient_ghz: Optional[float] = None,
) -> float:
    """First-order 1/f pure-dephasing time, seconds (capped at 1e6 s).

    ``channel`` is 'flux' or 'charge'.  ``gradient_ghz`` (d f01/d lambda in
    GHz per unit) short-circuits the internal Hellmann-Feynman evaluation when
    the caller already has it.
    """
    if channel == "flux":
        amplitude, lam = noise.a_phi, "dphi"
    elif channel == "charge":
        amplitude, lam = noise.a_ng, "ng"
    else:
        raise ValueError(f"unknown dephasing channel {channel!r}")
    if gradient_ghz is None:
        gradient_ghz = frequency_gradient(p, lam, check=False).hellmann_feynman
    rate = amplitude * GHZ_TO_ANGULAR * abs(gradient_ghz) * noise.dephasing_envelope
    return _cap_time(rate)


def tphi_1f_second_order(
    p: CircuitParams,
    noise: NoiseSpec,
    channel: str,
    fd_step: float = 1e-5,
) -> float:
    """Second-order (sweet-spot) 1/f dephasing time, seconds.

    Off the default path: the operating points studied keep a finite
    first-order slope, where this contribution is subdominant.  Uses
    Gamma = A^2 |d^2 omega01/d lambda^2| with a logarithmic envelope; the
    curvature comes from a three-point finite difference of f01.
    """
    if channel == "flux":
        amplitude, lam = noise.a_phi, "dphi"
    elif channel == "charge":
        amplitude, lam = noise.a_ng, "ng"
    else:
        raise ValueError(f"unknown dephasing channel {channel!r}")

    from .spectrum import lowest_energies  # local import avoids cycle at module load

    def f01_at(value: float) -> float:
        energies = lowest_energies(p.replace(**{lam: value}), k=2)
        return energies[1] - energies[0]

    x0 = getattr(p, lam)
    curvature = (f01_at(x0 + fd_step) - 2.0 * f01_at(x0) + f01_at(x0 - fd_step)) / fd_step**2
    log_term = abs(math.log(noise.omega_ir * noise.t_exp))
    envelope = math.sqrt(2.0 * log_term**2 + 2.0 * log_term + 1.0)
    rate = amplitude**2 * GHZ_TO_ANGULAR * abs(curvature) * envelope
    return _cap_time(rate)


def _flux_element(p: CircuitParams, spec) -> float:
    op = flux_coupling_operator(p)
    return abs(complex(np.vdot(spec.state(0), op.entries @ spec.state(1))))


def _require_nondegenerate(f01: float) -> None:
    if f01 < DEGENERACY_F01_GHZ:
        raise DegenerateTransitionError(
            f"f01 = {f01:.3e} GHz is below the degeneracy threshold "
            f"{DEGENERACY_F01_GHZ:.0e} GHz; decay rates are undefined"
        )


def t1_flux(p: CircuitParams, noise: NoiseSpec, spec=None) -> float:
    """Decay time from 1/f flux noise between the two lowest states, seconds."""
    if spec is None:
        spec = spectrum_of(p, k=2)
    f01 = transition_frequency(spec, 0, 1)
    _require_nondegenerate(f01)
    down, up = one_over_f_rates(_flux_element(p, spec), f01, noise.a_phi, noise.temperature)
    return _cap_time(down + up)


def t1_dielectric(p: CircuitParams, noise: NoiseSpec, spec=None) -> float:
    """Decay time from dielectric loss between the two lowest states, seconds."""
    if spec is None:
        spec = spectrum_of(p, k=2)
    f01 = transition_frequency(spec, 0, 1)
    _require_nondegenerate(f01)
    report = matrix_elements(p, spec=spec)
    down, up = dielectric_rates(report.m_n, f01, p.ec, noise.q_cap, noise.temperature)
    return _cap_time(down + up)


@dataclass(frozen=True)
class CoherenceReport:
    """Per-channel coherence times (seconds) and the limiting mechanism."""

    t1_flux: float
    t1_dielectric: float
    t1_total: float
    tphi_flux: float
    tphi_charge: float
    tphi_total: float
    t2: float
    limiting_channel: str
    f01_ghz: float
    flags: tuple = ()

    def to_dict(self) -> dict:
        return {
            "t1_flux": self.t1_flux,
            "t1_dielectric": self.t1_dielectric,
            "t1_total": self.t1_total,
            "tphi_flux": self.tphi_flux,
            "tphi_charge": self.tphi_charge,
            "tphi_total": self.tphi_total,
            "t2": self.t2,
            "limiting_channel": self.limiting_channel,
            "f01_ghz": self.f01_ghz,
            "flags": list(self.flags),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CoherenceReport":
        kwargs = dict(data)
        kwargs["flags"] = tuple(kwargs.get("flags", ()))
        return cls(**kwargs)


def classify_limiting(
    tphi_flux_s: float, tphi_charge_s: float, ejs2_ghz: float
) -> tuple[str, tuple]:
    """Limiting-mechanism tag plus the full set of triggered flags.

    Thresholds applied in order temperature -> charge -> flux: the qubit is
    temperature-limited when 2 E_JS2 < 1 GHz (thermal escape over the barrier),
    charge- or flux-limited when the corresponding pure-dephasing time is
    below 100 us.
    """
    flags = []
    if 2.0 * ejs2_ghz < TEMPERATURE_EJS2_GHZ:
        flags.append("temperature")
    if tphi_charge_s < DEPHASING_LIMIT_S:
        flags.append("charge")
    if tphi_flux_s < DEPHASING_LIMIT_S:
        flags.append("flux")
    primary = flags[0] if flags else "none"
    return primary, tuple(flags)


def coherence_report(
    p: CircuitParams,
    noise: NoiseSpec,
    thermal_levels: Optional[int] = None,
    include_thermal_dephasing: bool = False,
    check_gradients: bool = False,
) -> CoherenceReport:
    """Assemble (T1, Tphi, T2) with per-channel breakdown.

    With ``thermal_levels`` set (>= 2), the decay rate comes from the
    multilevel rate matrix reduced to the computational subspace, so
    thermally assisted paths through higher levels shorten T1.  The reduced
    decoherence rate also carries a higher-level dephasing term
    (sum of Gamma_{0->j} + Gamma_{1->j} over j >= 2, halved); across the
    regimes studied that term was found negligible for the operating points
    of interest and it is excluded from T2 by default, but it is computed
    either way and folded in when ``include_thermal_dephasing`` is set.
    Pure 1/f dephasing channels always add.  Without thermal mode, T2
    combines the direct two-level rates: 1/T2 = 1/(2 T1) + 1/Tphi.

    A (numerically) degenerate qubit transition does not raise here; the
    report carries a 'degenerate' flag, NaN decay times and capped dephasing
    times so that sweeps can record the point and move on.
    """
    k = max(2, thermal_levels or 2)
    spec = spectrum_of(p, k=k)
    f01 = transition_frequency(spec, 0, 1)
    flags: list[str] = []

    grad_flux = frequency_gradient(p, "dphi", check=check_gradients, spec=spec)
    grad_charge = frequency_gradient(p, "ng", check=check_gradients, spec=spec)
    if grad_flux.degenerate or grad_charge.degenerate:
        flags.append("degenerate")
    tphi_f = tphi_1f(p, noise, "flux", gradient_ghz=grad_flux.hellmann_feynman)
    tphi_c = tphi_1f(p, noise, "charge", gradient_ghz=grad_charge.hellmann_feynman)
    rate_phi = (1.0 / tphi_f if tphi_f < TIME_CAP_S else 0.0) + (
        1.0 / tphi_c if tphi_c < TIME_CAP_S else 0.0
    )
    tphi_total = _cap_time(rate_phi)

    if f01 < DEGENERACY_F01_GHZ:
        flags.append("degenerate")
        primary, limit_flags = classify_limiting(tphi_f, tphi_c, p.ejs2)
        return CoherenceReport(
            t1_flux=math.nan,
            t1_dielectric=math.nan,
            t1_total=math.nan,
            tphi_flux=tphi_f,
            tphi_charge=tphi_c,
            tphi_total=tphi_total,
            t2=math.nan,
            limiting_channel=primary,
            f01_ghz=f01,
            flags=tuple(dict.fromkeys(flags)) + limit_flags,
        )

    el = matrix_elements(p, spec=spec)
    flux_down, flux_up = one_over_f_rates(
        _flux_element(p, spec), f01, noise.a_phi, noise.temperature
    )
    diel_down, diel_up = dielectric_rates(
        el.m_n, f01, p.ec, noise.q_cap, noise.temperature
    )
    t1_f = _cap_time(flux_down + flux_up)
    t1_d = _cap_time(diel_down + diel_up)
    gamma1_direct = flux_down + flux_up + diel_down + diel_up

    if thermal_levels is not None:
        from .thermal import build_rate_matrix, effective_qubit_rates

        rates = build_rate_matrix(p, noise, thermal_levels, spec=spec)
        gamma1_eff, gamma2_eff = effective_qubit_rates(rates)
        higher_level_dephasing = gamma2_eff - 0.5 * (
            rates.gamma[0, 1] + rates.gamma[1, 0]
        )
        t2_rate = 0.5 * gamma1_eff + rate_phi
        if include_thermal_dephasing:
            t2_rate += higher_level_dephasing
        t1_total = _cap_time(gamma1_eff)
        t2 = _cap_time(t2_rate)
        flags.append("thermal")
    else:
        t1_total = _cap_time(gamma1_direct)
        t2 = _cap_time(0.5 * gamma1_direct + rate_phi)

    primary, limit_flags = classify_limiting(tphi_f, tphi_c, p.ejs2)
    return CoherenceReport(
        t1_flux=t1_f,
        t1_dielectric=t1_d,
        t1_total=t1_total,
        tphi_flux=tphi_f,
        tphi_charge=tphi_c,
        tphi_total=tphi_total,
        t2=t2,
        limiting_channel=primary,
        f01_ghz=f01,
        flags=tuple(dict.fromkeys(flags)) + limit_flags,
    )
