"""Elementary operators on the truncated Cooper-pair-number basis.

The basis is {|-N>, ..., |+N>} with N the basis halfwidth.  The phase-shift
convention is e^{i m phi} |k> = |k + m>, so cos(m phi) = (R_m + R_m^dag)/2 and
sin(m phi) = (R_m - R_m^dag)/(2i) with R_m the upward m-step shift.  The
opposite sign convention is a gauge choice; spectra and matrix-element
magnitudes do not depend on it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "ChargeOperator",
    "charge_number_operator",
    "cos_m_phi_operator",
    "sin_m_phi_operator",
]

_HERMITICITY_ATOL = 1e-12


@dataclass(frozen=True)
class ChargeOperator:
    """A dense Hermitian operator in the truncated charge basis.

    Attributes
    ----------
    basis_halfwidth : int
        N, so that the matrix acts on charge states -N..N.
    entries : np.ndarray
        Complex (2N+1) x (2N+1) Hermitian matrix.  Marked read-only.
    """

    basis_halfwidth: int
    entries: np.ndarray = field(repr=False)

    def __post_init__(self):
        n = self.basis_halfwidth
        if n < 0:
            raise ValueError("basis halfwidth must be non-negative")
        mat = np.asarray(self.entries, dtype=complex)
        if mat.shape != (2 * n + 1, 2 * n + 1):
            raise ValueError(
                f"entries shape {mat.shape} does not match dim {2 * n + 1}"
            )
        scale = max(1.0, float(np.max(np.abs(mat))))
        if not np.allclose(mat, mat.conj().T, atol=_HERMITICITY_ATOL * scale):
            raise ValueError("entries must form a Hermitian matrix")
        mat.setflags(write=False)
        object.__setattr__(self, "entries", mat)

    @property
    def dim(self) -> int:
        return 2 * self.basis_halfwidth + 1

    @property
    def charge_values(self) -> np.ndarray:
        """Charge quantum numbers k = -N..N along the basis."""
        n = self.basis_halfwidth
        return np.arange(-n, n + 1, dtype=float)

    def expectation(self, bra: np.ndarray, ket: np.ndarray) -> complex:
        return complex(np.vdot(bra, self.entries @ ket))

    def __add__(self, other: "ChargeOperator") -> "ChargeOperator":
        self._check_compatible(other)
        return ChargeOperator(self.basis_halfwidth, self.entries + other.entries)

    def __sub__(self, other: "ChargeOperator") -> "ChargeOperator":
        self._check_compatible(other)
        return ChargeOperator(self.basis_halfwidth, self.entries - other.entries)

    def __mul__(self, scalar: float) -> "ChargeOperator":
        if abs(complex(scalar).imag) > 0:
            raise ValueError("only real scalars preserve Hermiticity")
        return ChargeOperator(self.basis_halfwidth, self.entries * float(scalar))

    __rmul__ = __mul__

    def _check_compatible(self, other: "ChargeOperator") -> None:
        if self.basis_halfwidth != other.basis_halfwidth:
            raise ValueError(
                "operators act on different truncations: "
                f"N={self.basis_halfwidth} vs N={other.basis_halfwidth}"
            )


def _shift_matrix(n: int, m: int) -> np.ndarray:
    """Upward m-step shift R_m with (R_m)_{k+m, k} = 1."""
    dim = 2 * n + 1
    mat = np.zeros((dim, dim), dtype=complex)
    idx = np.arange(dim - m)
    mat[idx + m, idx] = 1.0
    return mat


def _validate_harmonic(n: int, m: int) -> None:
    if n < 1:
        raise ValueError("basis halfwidth must be >= 1 (need at least 3 charge states)")
    if m < 1:
        raise ValueError("harmonic order must be >= 1")
    if m > n:
        raise ValueError(
            f"harmonic order m={m} exceeds basis halfwidth N={n}; "
            "the operator would be identically zero (under-truncated basis)"
        )


def charge_number_operator(n: int) -> ChargeOperator:
    """Cooper-pair number operator n̂ = diag(-N..N)."""
    if n < 1:
        raise ValueError("basis halfwidth must be >= 1 (need at least 3 charge states)")
    diag = np.arange(-n, n + 1, dtype=float)
    return ChargeOperator(n, np.diag(diag).astype(complex))


def cos_m_phi_operator(n: int, m: int) -> ChargeOperator:
    """cos(m phi) with entries 1/2 on the +-m-th off-diagonals."""
    _validate_harmonic(n, m)
    shift = _shift_matrix(n, m)
    return ChargeOperator(n, 0.5 * (shift + shift.conj().T))


def sin_m_phi_operator(n: int, m: int) -> ChargeOperator:
    """sin(m phi) with entries -+ i/2 on the +-m-th off-diagonals."""
    _validate_harmonic(n, m)
    shift = _shift_matrix(n, m)
    return ChargeOperator(n, (shift - shift.conj().T) / 2j)
