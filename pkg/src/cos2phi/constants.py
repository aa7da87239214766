"""Unit conventions and physical constants.

All circuit energies are quoted as frequencies E/h in GHz, external flux in
units of the flux quantum Phi0, island offset charge in Cooper pairs, and
rates in 1/s.
"""

import math

# k_B / h in GHz per kelvin (CODATA exact values).
BOLTZMANN_GHZ_PER_K = 1.380649e-23 / 6.62607015e-34 / 1e9

# Conversion from a frequency in GHz to an angular frequency in rad/s.
GHZ_TO_ANGULAR = 2.0 * math.pi * 1e9

# Transition frequencies below this (GHz) are treated as exact degeneracies.
DEGENERACY_F01_GHZ = 1e-11

# Coherence times are capped at this value when a rate underflows to zero.
TIME_CAP_S = 1e6


def thermal_occupation(f_ghz: float, temperature_k: float) -> float:
    """Bose occupation n̄ at transition frequency ``f_ghz`` (GHz) and T (K)."""
    if f_ghz <= 0.0:
        raise ValueError("thermal_occupation requires a positive frequency")
    if temperature_k <= 0.0:
        return 0.0
    x = f_ghz / (BOLTZMANN_GHZ_PER_K * temperature_k)
    if x > 700.0:
        return 0.0
    return 1.0 / math.expm1(x)
