import math

import numpy as np
import pytest

from cos2phi import (
    CircuitParams,
    TwoLevelModel,
    kappa,
    lowest_energies,
    sweetness,
    two_level_f01,
)
from conftest import converged


def test_kappa_vanishes_at_half_cooper_pair():
    assert kappa(1.0, 40.0, ng=0.5) == pytest.approx(0.0, abs=1e-15)


def test_kappa_charge_modulation_is_cosine():
    for ng in (0.1, 0.2, 0.37):
        assert kappa(1.0, 30.0, ng) / kappa(1.0, 30.0, 0.0) == pytest.approx(
            math.cos(math.pi * ng), rel=1e-12
        )


def test_kappa_scale_at_ratio_seventy():
    # A realistic E_JS2/E_C = 70 at E_C = 1 GHz leaves a doublet splitting of
    # a few MHz.
    splitting = 2 * kappa(1.0, 70.0, 0.0)
    assert splitting == pytest.approx(4e-3, rel=0.5)


def test_kappa_decreasing_in_barrier_height():
    values = [kappa(1.0, float(r), 0.0) for r in (20, 40, 80, 160)]
    assert all(a > b > 0 for a, b in zip(values, values[1:]))


def test_kappa_against_numerical_splitting():
    for ratio in (30, 40, 60):
        p = converged(CircuitParams.pure_cos2phi(ec=1.0, ejs2=float(ratio), ng=0.0))
        f01 = float(np.diff(lowest_energies(p, k=2))[0])
        assert abs(2 * kappa(1.0, float(ratio), 0.0) - f01) / f01 < 0.5


class TestSweetness:
    def test_realistic_point_is_below_flux_noise(self):
        p = CircuitParams.from_ratio(ec=1.0, ejs2=70.0, ratio=-0.1)
        assert sweetness(p) <= 1e-6

    def test_inverse_proportionality_to_first_harmonic(self):
        p = CircuitParams.from_ratio(ec=0.5, ejs2=10.0, ratio=-0.1)
        doubled = p.replace(ejs1=2 * p.ejs1)
        assert sweetness(doubled) == pytest.approx(sweetness(p) / 2, rel=1e-12)

    def test_pure_circuit_has_no_fluxon_slope(self):
        p = CircuitParams.pure_cos2phi(ec=0.5, ejs2=10.0)
        with pytest.raises(ValueError):
            sweetness(p)

    def test_sweetness_separates_dispersion_regimes(self):
        # The numerical f01(dphi) crosses from quadratic to linear at the
        # sweetness scale: locate the flux offset where f01 doubles its
        # zero-offset value and compare with dphi_max within a factor 3.
        p = converged(CircuitParams.from_ratio(
            ec=0.5, ejs2=20.0, ratio=-0.1, d=0.0, dphi=0.0, ng=0.0))
        f0 = float(np.diff(lowest_energies(p, k=2))[0])

        def f01(dphi):
            return float(np.diff(lowest_energies(p.replace(dphi=dphi), k=2))[0])

        grid = np.geomspace(1e-6, 1e-2, 161)
        crossing = next(x for x in grid if f01(float(x)) > 2.0 * f0)
        dphi_max = sweetness(p)
        assert dphi_max / 3 < crossing < dphi_max * 3


class TestTwoLevelModel:
    def test_zero_offset_gives_doublet_splitting(self):
        model = TwoLevelModel(kappa=0.01, alpha=300.0)
        assert two_level_f01(model, 0.0) == pytest.approx(0.02)

    def test_linear_asymptote(self):
        model = TwoLevelModel(kappa=0.01, alpha=300.0)
        dphi = 100 * model.dphi_max
        assert two_level_f01(model, dphi) == pytest.approx(2 * model.alpha * dphi, rel=1e-3)

    def test_even_and_monotone_in_offset(self):
        model = TwoLevelModel(kappa=0.02, alpha=100.0)
        offsets = np.geomspace(1e-7, 1e-2, 20)
        values = [two_level_f01(model, float(x)) for x in offsets]
        assert all(b > a for a, b in zip(values, values[1:]))
        assert two_level_f01(model, -3e-4) == pytest.approx(two_level_f01(model, 3e-4))

    def test_model_tracks_numerics_across_the_crossover(self):
        p = converged(CircuitParams.from_ratio(
            ec=0.5, ejs2=20.0, ratio=-0.1, d=0.0, dphi=0.0, ng=0.0))
        model = TwoLevelModel.from_params(p)

        def f01(dphi):
            return float(np.diff(lowest_energies(p.replace(dphi=dphi), k=2))[0])

        # WKB-asymptotic accuracy: 50% through the hybridized window.
        for x in np.linspace(0.0, 5.0, 6):
            dphi = x * model.dphi_max
            numeric = f01(dphi)
            assert abs(two_level_f01(model, dphi) - numeric) / numeric < 0.5
        # The linear branch is tighter: 20%.
        for x in (20.0, 50.0):
            dphi = x * model.dphi_max
            numeric = f01(dphi)
            assert abs(two_level_f01(model, dphi) - numeric) / numeric < 0.2

    def test_rejects_invalid_model(self):
        with pytest.raises(ValueError):
            TwoLevelModel(kappa=-0.1, alpha=1.0)
        with pytest.raises(ValueError):
            TwoLevelModel(kappa=0.1, alpha=0.0)
