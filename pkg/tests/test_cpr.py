import math

import numpy as np
import pytest

from cos2phi import PoleError
from cos2phi.cpr import (
    ORACLE_GRID,
    HarmonicSeries,
    flowermon_ratio,
    fourier_harmonics,
    implementation_table,
    kite_small_inductance_ratio,
    rhombus_expansion_coefficients,
    rhombus_harmonics,
    transparent_junction_harmonics,
)


class TestFourierProjection:
    def test_single_harmonic_recovered(self):
        phi = 2 * np.pi * np.arange(256) / 256
        series = fourier_harmonics(np.cos(2 * phi), order=5)
        assert series.coefficients[2] == pytest.approx(1.0, abs=1e-12)
        others = np.delete(series.coefficients, 2)
        assert np.max(np.abs(others)) < 1e-12

    def test_constant_potential_has_no_harmonics(self):
        series = fourier_harmonics(np.full(128, 3.7), order=4)
        assert series.coefficients[0] == pytest.approx(3.7)
        assert np.max(np.abs(series.coefficients[1:])) < 1e-13

    def test_odd_potential_rejected(self):
        phi = 2 * np.pi * np.arange(256) / 256
        with pytest.raises(ValueError, match="odd component"):
            fourier_harmonics(np.cos(phi) + 1e-4 * np.sin(phi), order=3)

    def test_grid_size_floor(self):
        with pytest.raises(ValueError, match="grid size"):
            fourier_harmonics(np.ones(32), order=8)

    def test_production_grid_matches_quadrature_oracle(self):
        fine = transparent_junction_harmonics(0.9, 6, num_points=ORACLE_GRID)
        coarse = transparent_junction_harmonics(0.9, 6)
        assert np.max(np.abs(fine.coefficients - coarse.coefficients)) < 1e-9

    def test_parseval_bound(self):
        series = transparent_junction_harmonics(0.95, 8)
        phi = 2 * np.pi * np.arange(4096) / 4096
        potential = -np.sqrt(1 - 0.95 * np.sin(phi / 2) ** 2)
        grid_norm = np.mean(potential**2)
        power = series.coefficients[0] ** 2 + 0.5 * np.sum(series.coefficients[1:] ** 2)
        assert power <= grid_norm * (1 + 1e-12)

    def test_reconstruction_tracks_source_potential(self):
        series = transparent_junction_harmonics(0.8, 12)
        phi = 2 * np.pi * np.arange(1024) / 1024
        source = -np.sqrt(1 - 0.8 * np.sin(phi / 2) ** 2)
        assert np.max(np.abs(series.reconstruct(phi) - source)) < 1e-6


class TestTransparentJunction:
    def test_full_transparency_ratio(self):
        series = transparent_junction_harmonics(1.0, 4)
        assert series.second_to_first_ratio == pytest.approx(-0.2, abs=1e-3)

    def test_zero_transparency_is_flat(self):
        series = transparent_junction_harmonics(0.0, 4)
        assert np.max(np.abs(series.coefficients[1:])) < 1e-13

    @pytest.mark.parametrize("tau", [0.85, 0.9, 0.95])
    def test_high_transparencies_land_in_band(self, tau):
        # The -1/5 .. -1/10 band quoted for material junctions corresponds to
        # transparencies above ~0.85; lower tau falls below the band
        # (tau = 0.7 gives about -0.07).
        ratio = transparent_junction_harmonics(tau, 4).second_to_first_ratio
        assert -0.2 <= ratio <= -0.1

    def test_low_transparency_reported_below_band(self):
        ratio = transparent_junction_harmonics(0.7, 4).second_to_first_ratio
        assert -0.1 < ratio < -0.05

    def test_ratio_monotone_in_transparency(self):
        ratios = [
            transparent_junction_harmonics(t, 4).second_to_first_ratio
            for t in np.linspace(0.5, 1.0, 11)
        ]
        assert all(b < a for a, b in zip(ratios, ratios[1:]))

    def test_transparency_bounds(self):
        with pytest.raises(ValueError):
            transparent_junction_harmonics(1.2, 4)


class TestRhombus:
    def test_symmetric_limit_equals_full_transparency(self):
        rhombus = rhombus_harmonics(0.0, 6, ej=0.5)
        transparent = transparent_junction_harmonics(1.0, 6, ndelta=1.0)
        assert np.allclose(rhombus.coefficients, transparent.coefficients, atol=1e-12)

    def test_symmetric_ratio(self):
        assert rhombus_harmonics(0.0, 4).second_to_first_ratio == pytest.approx(-0.2, abs=1e-3)

    def test_small_asymmetry_expansion_envelope(self):
        # The displayed eta^2 series omits an eta^2 ln(1/eta) piece: the
        # eta^2-derivative of the potential has a log-divergent cosine
        # projection at the phase slip.  Exact Fourier coefficients therefore
        # approach the series only as eta -> 0, with a ~4% gap left at
        # eta = 0.1.  Assert the documented envelope and the convergence.
        for eta, tol in ((0.1, 0.05), (0.03, 8e-3), (0.01, 1.5e-3)):
            series = rhombus_harmonics(eta, 4, num_points=ORACLE_GRID)
            _, e1, e2 = rhombus_expansion_coefficients(eta)
            assert series.coefficients[1] == pytest.approx(e1, rel=tol)
            assert series.coefficients[2] == pytest.approx(e2, rel=4 * tol)

    def test_printed_expansion_transcription(self):
        # Frozen values of the displayed coefficients at eta = 0.1.
        e0, e1, e2 = rhombus_expansion_coefficients(0.1, ej=1.0)
        assert e0 == pytest.approx(-2 * (2 + 0.01 * (np.log(4) - 1)) / np.pi, abs=1e-15)
        assert e1 == pytest.approx(-0.8523961742234825, abs=1e-12)
        assert e2 == pytest.approx(0.18521865278225716, abs=1e-12)

    def test_asymmetry_bounds(self):
        with pytest.raises(ValueError):
            rhombus_harmonics(1.0, 4)


class TestKite:
    def test_reference_ratio(self):
        assert kite_small_inductance_ratio(0.1, 1.0) == pytest.approx(-0.025)

    def test_zero_josephson_energy(self):
        assert kite_small_inductance_ratio(0.0, 1.0) == 0.0

    def test_linearity(self):
        assert kite_small_inductance_ratio(0.3, 1.0) == pytest.approx(
            3 * kite_small_inductance_ratio(0.1, 1.0)
        )

    def test_requires_positive_inductive_energy(self):
        with pytest.raises(ValueError):
            kite_small_inductance_ratio(0.1, 0.0)


class TestFlowermon:
    def test_untwisted_reference(self):
        assert flowermon_ratio(0.0, 0.1) == pytest.approx(0.1)

    def test_near_pole_magnitude(self):
        theta = math.radians(45.0 - 0.2)
        ratio = flowermon_ratio(theta, 0.1)
        assert ratio == pytest.approx(14.3, rel=0.01)
        assert abs(ratio) <= 15.0

    def test_sign_flip_across_pole(self):
        below = flowermon_ratio(math.radians(44.8), 0.1)
        above = flowermon_ratio(math.radians(45.2), 0.1)
        assert below > 0 > above

    def test_exact_pole_flagged(self):
        with pytest.raises(PoleError):
            flowermon_ratio(math.pi / 4, 0.1)


class TestImplementationTable:
    def test_computed_rows(self):
        rows = {row["name"]: row for row in implementation_table()}
        assert rows["rhombus"]["ratio"] == pytest.approx(-0.2, abs=1e-3)
        assert rows["kite (low inductance)"]["ratio"] == pytest.approx(-0.025)
        lo, hi = rows["pinhole/transparent junction"]["ratio_range"]
        assert -0.2 <= lo < hi <= -0.1

    def test_literature_annotations(self):
        rows = {row["name"]: row for row in implementation_table()}
        for name in ("germanium", "graphene"):
            assert rows[name]["source"] == "literature"
            assert rows[name]["ratio"] == -0.1
        assert rows["InAs"]["ratio_range"] == (-0.2, -0.1)

    def test_out_of_scope_row_is_marked(self):
        rows = {row["name"]: row for row in implementation_table()}
        assert rows["kite (high inductance)"]["source"] == "out-of-scope"

    def test_computed_signs(self):
        rows = {row["name"]: row for row in implementation_table()}
        for name in ("rhombus", "kite (low inductance)"):
            assert rows[name]["ratio"] < 0
        lo, hi = rows["flowermon"]["ratio_range"]
        assert lo < 0 < hi  # sign follows cos(2 theta)


def test_harmonic_series_requires_first_harmonic_for_ratio():
    series = HarmonicSeries(coefficients=np.array([1.0, 0.0, 0.3]), model_tag="t")
    with pytest.raises(ZeroDivisionError):
        _ = series.second_to_first_ratio
