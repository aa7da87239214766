"""Finite-temperature multilevel rates and reduction to effective qubit rates.

At finite temperature the higher circuit levels open extra decay and
decoherence paths.  Every ordered level pair gets golden-rule rates from the
two decay channels (1/f flux noise and dielectric loss) with detailed-balance
thermal factors.  A steady-state elimination of the higher-level block of the
population-rate generator then yields effective computational-subspace rates:
writing the generator in blocks [[A, B], [C, D]] over ({0,1}, {2..n-1}),

    Lambda = A - B D^{-1} C,
    Gamma1_eff = Lambda_01 + Lambda_10,

and the decoherence rate of the 01 coherence is half the total outflow

    Gamma2_eff = (sum_j Gamma_{0->j} + sum_j Gamma_{1->j}) / 2.

Additional pure-dephasing mechanisms add on top of Gamma2_eff.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .circuit import CircuitParams, flux_coupling_operator
from .chargebasis import charge_number_operator
from .constants import GHZ_TO_ANGULAR
from .errors import SingularReductionError
from .noise import NoiseSpec, dielectric_rates, one_over_f_rates
from .spectrum import Spectrum, spectrum_of

__all__ = ["RateMatrix", "build_rate_matrix", "effective_qubit_rates"]


@dataclass(frozen=True)
class RateMatrix:
    """Table of transition rates Gamma_{i->j} in 1/s; the diagonal is zero."""

    n_levels: int
    gamma: np.ndarray

    def __post_init__(self):
        mat = np.asarray(self.gamma, dtype=float)
        if mat.shape != (self.n_levels, self.n_levels):
            raise ValueError("gamma must be an (n_levels, n_levels) table")
        if np.any(mat < 0):
            raise ValueError("transition rates must be non-negative")
        if np.any(np.diag(mat) != 0):
            raise ValueError("the diagonal of the rate table must be zero")
        mat = mat.copy()
        mat.setflags(write=False)
        object.__setattr__(self, "gamma", mat)

    def generator(self) -> np.ndarray:
        """Population-rate generator G with dp/dt = G p; columns sum to zero."""
        g = self.gamma.T.copy()
        np.fill_diagonal(g, 0.0)
        g -= np.diag(self.gamma.sum(axis=1))
        return g


def build_rate_matrix(
    p: CircuitParams,
    noise: NoiseSpec,
    n_levels: int = 4,
    spec: Optional[Spectrum] = None,
) -> RateMatrix:
    """Golden-rule rates between the lowest ``n_levels`` eigenstates.

    Channels: 1/f flux noise through dH/dPhi and dielectric loss through n̂,
    with downward/upward thermal factors as in :mod:`cos2phi.noise`.  A
    degenerate pair (omega_ij = 0) would make the 1/f density diverge, so its
    frequency is clamped at the infrared cutoff; such pairs are physically
    meaningful for the pure cos(2phi) circuit and should be treated with care.
    """
    if n_levels < 2:
        raise ValueError("n_levels must be >= 2")
    if spec is None:
        spec = spectrum_of(p, k=n_levels)
    if spec.level_count < n_levels:
        raise ValueError(
            f"spectrum holds {spec.level_count} levels, need {n_levels}"
        )
    flux_op = flux_coupling_operator(p).entries
    n_op = charge_number_operator(p.n_trunc).entries
    f_ir_ghz = noise.omega_ir / GHZ_TO_ANGULAR

    gamma = np.zeros((n_levels, n_levels))
    for i in range(n_levels):
        for j in range(i + 1, n_levels):
            f_ij = float(spec.energies[j] - spec.energies[i])
            f_eff = max(f_ij, f_ir_ghz)
            vi, vj = spec.state(i), spec.state(j)
            me_flux = abs(complex(np.vdot(vi, flux_op @ vj)))
            me_n = abs(complex(np.vdot(vi, n_op @ vj)))
            down = up = 0.0
            d, u = one_over_f_rates(me_flux, f_eff, noise.a_phi, noise.temperature)
            down += d
            up += u
            d, u = dielectric_rates(me_n, f_eff, p.ec, noise.q_cap, noise.temperature)
            down += d
            up += u
            gamma[j, i] += down
            gamma[i, j] += up
    return RateMatrix(n_levels=n_levels, gamma=gamma)


def _prune_disconnected(rate: RateMatrix) -> tuple[np.ndarray, list[int]]:
    """Drop higher levels with neither inflow nor outflow.

    A fully disconnected level contributes nothing to the reduced rates but
    would make the D block singular, so it is removed before elimination.
    Levels 0 and 1 are always kept.
    """
    g = rate.gamma
    keep = [0, 1]
    for k in range(2, rate.n_levels):
        if g[k, :].any() or g[:, k].any():
            keep.append(k)
    return g[np.ix_(keep, keep)], keep


def effective_qubit_rates(rate: RateMatrix) -> tuple[float, float]:
    """(Gamma1_eff, Gamma2_eff) in 1/s from steady-state block elimination."""
    if rate.n_levels < 2:
        raise ValueError("need at least the two computational levels")
    gamma, keep = _prune_disconnected(rate)
    n = gamma.shape[0]

    gen = gamma.T.copy()
    np.fill_diagonal(gen, 0.0)
    gen -= np.diag(gamma.sum(axis=1))

    if n == 2:
        lam = gen[:2, :2]
    else:
        a = gen[:2, :2]
        b = gen[:2, 2:]
        c = gen[2:, :2]
        d = gen[2:, 2:]
        for row, level in enumerate(keep[2:]):
            if not gamma[2 + row, :].any():
                raise SingularReductionError(
                    f"level {level} has inflow but no outgoing rates; "
                    "its steady-state population diverges"
                )
        try:
            lam = a - b @ np.linalg.solve(d, c)
        except np.linalg.LinAlgError as exc:
            raise SingularReductionError(
                f"higher-level block is singular (levels {keep[2:]}): {exc}"
            ) from exc

    gamma1_eff = float(lam[0, 1] + lam[1, 0])
    gamma2_eff = 0.5 * float(rate.gamma[0, :].sum() + rate.gamma[1, :].sum())
    return gamma1_eff, gamma2_eff
