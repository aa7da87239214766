"""Diagonalization and spectral observables.

Dense Hermitian eigensolves are cheap at the dimensions used here (a few
hundred), so everything goes through ``scipy.linalg.eigh``.  Eigenvector
phases are fixed deterministically: the first component of each vector whose
magnitude exceeds a relative threshold is rotated to be real positive.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass
from typing import Literal, Optional

import numpy as np
import scipy.linalg

from .chargebasis import ChargeOperator
from .circuit import (
    CircuitParams,
    build_hamiltonian,
    charge_coupling_operator,
    flux_coupling_operator,
)
from .constants import DEGENERACY_F01_GHZ
from .errors import ConvergenceError, EigensolverError, GradientConsistencyError

__all__ = [
    "Spectrum",
    "GradientResult",
    "eigensystem",
    "spectrum_of",
    "lowest_energies",
    "transition_frequency",
    "charge_dispersion",
    "frequency_gradient",
    "converge_truncation",
]

_ORTHONORMALITY_ATOL = 1e-10
_RESIDUAL_RTOL = 1e-9


@dataclass(frozen=True)
class Spectrum:
    """Lowest eigenpairs of one Hamiltonian instance.

    energies are ascending, in GHz; states holds orthonormal eigenvectors as
    columns in the charge basis; params_hash identifies the generating
    parameter set (or the Hamiltonian bytes when built directly from one).
    """

    energies: np.ndarray
    states: np.ndarray
    params_hash: str = ""

    def __post_init__(self):
        object.__setattr__(self, "energies", np.asarray(self.energies, dtype=float))
        object.__setattr__(self, "states", np.asarray(self.states, dtype=complex))
        self.energies.setflags(write=False)
        self.states.setflags(write=False)

    @property
    def level_count(self) -> int:
        return self.energies.size

    def state(self, k: int) -> np.ndarray:
        return self.states[:, k]


def _fix_phases(states: np.ndarray) -> np.ndarray:
    out = states.copy()
    for col in range(out.shape[1]):
        vec = out[:, col]
        mags = np.abs(vec)
        threshold = 1e-11 * mags.max()
        first = int(np.argmax(mags > threshold))
        phase = vec[first] / abs(vec[first])
        out[:, col] = vec / phase
    return out


def _hash_matrix(mat: np.ndarray) -> str:
    digest = hashlib.sha256()
    digest.update(np.ascontiguousarray(mat).tobytes())
    return digest.hexdigest()[:16]


def eigensystem(op: ChargeOperator, k: int, params_hash: str = "") -> Spectrum:
    """k lowest eigenpairs of a Hermitian charge-basis operator.

    Raises
    ------
    EigensolverError
        If the dense solver fails to converge; the message carries matrix
        diagnostics (dimension, norm).
    """
    if k < 1 or k > op.dim:
        raise ValueError(f"level count k={k} must satisfy 1 <= k <= dim={op.dim}")
    try:
        energies, states = scipy.linalg.eigh(op.entries, subset_by_index=(0, k - 1))
    except scipy.linalg.LinAlgError as exc:
        norm = float(np.linalg.norm(op.entries, ord=np.inf))
        raise EigensolverError(
            f"dense eigensolver failed on a {op.dim}x{op.dim} matrix "
            f"(inf-norm {norm:.3e}): {exc}"
        ) from exc
    states = _fix_phases(states)

    gram = states.conj().T @ states
    if not np.allclose(gram, np.eye(k), atol=_ORTHONORMALITY_ATOL):
        raise EigensolverError("eigenvectors failed the orthonormality check")
    norm = float(np.linalg.norm(op.entries, ord=np.inf))
    residual = np.linalg.norm(op.entries @ states - states * energies, axis=0)
    if np.any(residual > _RESIDUAL_RTOL * max(norm, 1.0)):
        raise EigensolverError(
            f"eigenpair residual {residual.max():.3e} exceeds "
            f"{_RESIDUAL_RTOL:.0e} * ||H|| = {_RESIDUAL_RTOL * norm:.3e}"
        )
    if not params_hash:
        params_hash = _hash_matrix(op.entries)
    return Spectrum(energies=energies, states=states, params_hash=params_hash)


def spectrum_of(p: CircuitParams, k: int = 2) -> Spectrum:
    """Diagonalize the circuit Hamiltonian for parameter set ``p``."""
    return eigensystem(build_hamiltonian(p), k, params_hash=p.content_hash())


def lowest_energies(p: CircuitParams, k: int = 3) -> np.ndarray:
    """Eigenvalues only (no vectors); the fast path for dispersion scans."""
    ham = build_hamiltonian(p)
    return scipy.linalg.eigh(
        ham.entries, eigvals_only=True, subset_by_index=(0, k - 1)
    )


def transition_frequency(spec: Spectrum, i: int, j: int) -> float:
    """f_ij = E_j - E_i in GHz, for i < j."""
    if not 0 <= i < j < spec.level_count:
        raise IndexError(
            f"need 0 <= i < j < level count; got i={i}, j={j}, k={spec.level_count}"
        )
    return float(spec.energies[j] - spec.energies[i])


def charge_dispersion(
    p: CircuitParams,
    level_pair: tuple[int, int] = (0, 1),
    num_points: int = 51,
) -> float:
    """Peak-to-peak variation of f_ij over offset charge n_g in [0, 1/2].

    The transition frequency is 1-periodic and symmetric about n_g = 1/2, so
    the half period with both endpoints included captures the exact extremes
    (the extrema sit at n_g = 0 and 1/2 in practice).
    """
    if num_points < 51:
        raise ValueError("num_points must be >= 51")
    i, j = level_pair
    values = []
    for ng in np.linspace(0.0, 0.5, num_points):
        energies = lowest_energies(p.replace(ng=float(ng)), k=j + 1)
        values.append(energies[j] - energies[i])
    return float(np.max(values) - np.min(values))


@dataclass(frozen=True)
class GradientResult:
    """d f01 / d lambda evaluated two ways, GHz per unit of lambda."""

    hellmann_feynman: float
    finite_difference: Optional[float]
    degenerate: bool

    @property
    def value(self) -> float:
        return self.hellmann_feynman


def _f01(p: CircuitParams) -> float:
    energies = lowest_energies(p, k=2)
    return float(energies[1] - energies[0])


def frequency_gradient(
    p: CircuitParams,
    lam: Literal["ng", "dphi"],
    check: bool = True,
    fd_step: float = 1e-6,
    rtol: float = 1e-4,
    atol: float = 1e-8,
    spec: Optional[Spectrum] = None,
) -> GradientResult:
    """First-order response of f01 to an external knob.

    The Hellmann-Feynman value <1|dH/dlam|1> - <0|dH/dlam|0> needs a single
    diagonalization and is what production sweeps use.  With ``check=True`` a
    central finite difference is also computed and the two must agree to
    ``rtol`` relative (or ``atol`` GHz/unit near stationary points, widened
    to the finite-difference rounding floor eps*||H||/step when that is
    larger); a disagreement raises, since it flags a near-degeneracy where
    the first-order estimate is unreliable.

    At an exact degeneracy (f01 below the global threshold) f01 is not
    differentiable; the result carries ``degenerate=True`` and a zero value.
    """
    if lam == "ng":
        coupling = charge_coupling_operator(p)
    elif lam == "dphi":
        coupling = flux_coupling_operator(p)
    else:
        raise ValueError(f"unknown parameter tag {lam!r}; expected 'ng' or 'dphi'")

    if spec is None:
        spec = spectrum_of(p, k=2)
    f01 = transition_frequency(spec, 0, 1)
    if f01 < DEGENERACY_F01_GHZ:
        return GradientResult(0.0, None, degenerate=True)

    v0, v1 = spec.state(0), spec.state(1)
    hf = float(np.real(coupling.expectation(v1, v1) - coupling.expectation(v0, v0)))

    fd = None
    if check:
        lo = p.replace(**{lam: getattr(p, lam) - fd_step})
        hi = p.replace(**{lam: getattr(p, lam) + fd_step})
        fd = (_f01(hi) - _f01(lo)) / (2.0 * fd_step)
        scale = max(abs(hf), abs(fd))
        hnorm = float(np.linalg.norm(build_hamiltonian(p).entries, ord=np.inf))
        noise_floor = 8.0 * np.finfo(float).eps * hnorm / fd_step
        if abs(hf - fd) > max(rtol * scale, atol, noise_floor):
            raise GradientConsistencyError(
                f"d f01/d {lam} disagreement: Hellmann-Feynman {hf:.6e} vs "
                f"finite difference {fd:.6e} (f01 = {f01:.3e} GHz); "
                "this usually flags a near-degeneracy"
            )
    return GradientResult(hf, fd, degenerate=False)


def converge_truncation(
    p: CircuitParams,
    rtol: float = 1e-8,
    n_start: int | None = None,
    n_max: int = 400,
    step: int = 10,
    atol: float = 1e-12,
) -> int:
    """Smallest basis halfwidth at which f01 and f12 are truncation-stable.

    Stability predicate: |f(N) - f(N + 10)| < max(rtol * f, atol) for both
    transitions.  The absolute floor (GHz) keeps the predicate attainable for
    near-degenerate doublets, where the relative test would chase eigenvalue
    differences below double-precision resolution of the Hamiltonian norm.
    The search starts from the kinetic-vs-potential heuristic
    N = ceil(4 (E_JS2/E_C)^(1/4) + 10) and grows in steps of 10.
    """
    if n_start is None:
        n_start = math.ceil(4.0 * (p.ejs2 / p.ec) ** 0.25 + 10)
    n = max(int(n_start), 2)

    def freqs(n_trunc: int) -> tuple[float, float]:
        energies = lowest_energies(p.replace(n_trunc=n_trunc), k=3)
        return float(energies[1] - energies[0]), float(energies[2] - energies[1])

    f_cur = freqs(n)
    while n <= n_max:
        f_next = freqs(n + step)
        ok = all(
            abs(a - b) < max(rtol * abs(a), atol) for a, b in zip(f_cur, f_next)
        )
        if ok:
            return n
        n += step
        f_cur = f_next
    raise ConvergenceError(
        f"truncation did not converge by N = {n_max} "
        f"(E_JS2/E_C = {p.ejs2 / p.ec:.3g})"
    )
