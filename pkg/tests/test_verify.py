import math

import numpy as np
import pytest

from burgersvortex import (
    AccuracyError,
    EigenMode,
    EvolveSpec,
    Field1D,
    Grid1D,
    SteadyProfile,
    cross_check_transform,
    decay_rate_fit,
    discrete_spectrum,
    evolve,
    lambda_n,
    ode_residual,
    pde_residual_steady,
)
from burgersvortex.verify import build_discrepancy_report, spatial_order, temporal_order


class TestOdeResidual:
    GRID = Grid1D(8.0, 801)

    def test_zero_function(self):
        assert ode_residual(lambda xi: np.zeros_like(xi), 1.0, 0.0, self.GRID) == 0.0

    def test_correct_mode_is_tiny(self):
        m = EigenMode(n=3, alpha=1.0)
        assert ode_residual(m.profile, 1.0, 3.0, self.GRID) < 1e-7

    def test_wrong_lambda_is_order_one(self):
        m = EigenMode(n=3, alpha=1.0)
        assert ode_residual(m.profile, 1.0, 2.0, self.GRID) > 0.1

    def test_wrong_gaussian_exponent_is_order_one(self):
        # the exp(-xi^2/4) variant of h_0 does not satisfy the mode equation
        bad = lambda xi: np.exp(-0.25 * np.asarray(xi, float) ** 2)
        assert ode_residual(bad, 1.0, 0.0, self.GRID) > 0.1

    def test_steady_wrapper(self):
        assert pde_residual_steady(1.5, self.GRID) < 1e-7

    def test_unscaled_steady_argument_is_order_one(self):
        from burgersvortex import parabolic_cylinder_d

        alpha = 2.0
        bad = lambda xi: (np.exp(-0.25 * alpha * np.asarray(xi, float) ** 2)
                          * parabolic_cylinder_d(1.0 / alpha - 1.0, np.asarray(xi, float)))
        assert ode_residual(bad, alpha, 0.0, self.GRID) > 0.01


class TestDiscreteSpectrum:
    def test_alpha_one_integers(self):
        rep = discrete_spectrum(1.0, Grid1D(10.0, 201), 4)
        for (i, v), want in zip(rep.computed, [0.0, 1.0, 2.0, 3.0]):
            assert v == pytest.approx(want, abs=1e-6)
        assert rep.max_imag_residue == 0.0

    def test_alpha_half_growing_mode(self):
        rep = discrete_spectrum(0.5, Grid1D(14.0, 401), 1)
        assert rep.computed[0][1] == pytest.approx(-0.5, abs=1e-8)

    def test_alpha_two(self):
        rep = discrete_spectrum(2.0, Grid1D(10.0, 401), 2)
        assert rep.computed[0][1] == pytest.approx(1.0, abs=1e-8)
        assert rep.computed[1][1] == pytest.approx(3.0, abs=1e-8)

    def test_k_zero_empty(self):
        rep = discrete_spectrum(1.0, Grid1D(10.0, 201), 0)
        assert rep.computed == [] and rep.abs_errors == []

    def test_matches_dense_eigensolver(self):
        """Independent route: dense nonsymmetric eigenvalues of the same
        tridiagonal operator."""
        from burgersvortex.solver import operator_tridiagonal

        grid = Grid1D(10.0, 101)
        alpha = 1.0
        sub, diag, sup = operator_tridiagonal(grid, alpha)
        n = len(diag)
        dense = np.diag(diag) + np.diag(sup, 1) + np.diag(sub, -1)
        ref = np.sort(np.linalg.eigvals(-dense).real)[:5]
        rep = discrete_spectrum(alpha, grid, 5)
        got = [v for _, v in rep.computed]
        np.testing.assert_allclose(got, ref, rtol=1e-9, atol=1e-9)

    def test_coarse_grid_rejected(self):
        # h > 2/(alpha L) breaks the symmetrization; must fail loudly
        with pytest.raises(AccuracyError):
            discrete_spectrum(2.0, Grid1D(10.0, 11), 2)

    def test_k_cap(self):
        with pytest.raises(ValueError):
            discrete_spectrum(1.0, Grid1D(10.0, 201), 13)

    def test_to_dict_round_trip_keys(self):
        rep = discrete_spectrum(1.0, Grid1D(10.0, 201), 2)
        d = rep.to_dict()
        assert set(d) == {"alpha", "grid", "computed", "closed_form", "abs_errors",
                          "max_imag_residue"}


class TestDecayRateFit:
    def test_exact_exponential(self):
        taus = np.linspace(0.0, 2.0, 100)
        rate, r2 = decay_rate_fit(taus, np.exp(-2.0 * taus))
        assert rate == pytest.approx(2.0, abs=1e-12)
        assert r2 == pytest.approx(1.0, abs=1e-12)

    def test_constant_amplitude(self):
        taus = np.linspace(0.0, 2.0, 50)
        rate, r2 = decay_rate_fit(taus, np.full(50, 3.0))
        assert rate == pytest.approx(0.0, abs=1e-14)

    def test_growing_mode_negative_rate(self):
        taus = np.linspace(0.0, 2.0, 50)
        rate, _ = decay_rate_fit(taus, np.exp(0.5 * taus))
        assert rate == pytest.approx(-0.5, abs=1e-12)

    def test_skip_fraction_excludes_transient(self):
        taus = np.linspace(0.0, 1.0, 200)
        amps = np.exp(-taus)
        amps[:5] *= 1.5  # startup glitch inside the skipped window
        rate, r2 = decay_rate_fit(taus, amps, skip_fraction=0.05)
        assert rate == pytest.approx(1.0, abs=1e-10)

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            decay_rate_fit(np.linspace(0, 1, 20), np.linspace(-1, 1, 20))

    def test_rejects_short_series(self):
        with pytest.raises(ValueError):
            decay_rate_fit([0.0, 1.0], [1.0, 0.5])


class TestEvolvedDecayRates:
    @pytest.mark.parametrize("alpha,n", [(1.0, 1), (2.0, 0), (0.5, 2)])
    def test_fitted_rate_matches_lambda(self, alpha, n):
        grid = Grid1D(12.0, 601)
        m = EigenMode(n=n, alpha=alpha)
        vals = m.profile(grid.points)
        vals[0] = vals[-1] = 0.0
        spec = EvolveSpec(equation="similarity", t_end=1.0, alpha=alpha, dt=1e-3,
                          scheme="trapezoidal", record_norms_every=10)
        _, norms, _ = evolve(Field1D(grid, vals), spec)
        rate, r2 = decay_rate_fit(norms.times, norms.linf)
        assert rate == pytest.approx(lambda_n(n, alpha), abs=2e-3)
        assert r2 > 0.9999


class TestCrossCheck:
    def test_selects_one_minus_c1(self):
        rep = cross_check_transform(-0.5, -1.0, 1.0, 0, 1.0, num_points=1001, dt=1e-3)
        assert rep.winner == "1 - c1"
        assert rep.errors["1 - c1"] < 5e-3
        assert rep.errors["1 - 2*c1"] > 10 * rep.errors["1 - c1"]

    def test_degenerate_candidates_coincide(self):
        rep = cross_check_transform(0.0, -1.0, 1.0, 0, 0.5, num_points=801, dt=1e-3)
        assert rep.degenerate
        a, b = rep.errors["1 - c1"], rep.errors["1 - 2*c1"]
        assert a == pytest.approx(b, rel=1e-12)

    def test_report_dict(self):
        rep = cross_check_transform(-0.5, -1.0, 1.0, 0, 0.2, num_points=401, dt=2e-3)
        d = rep.to_dict()
        assert d["winner"] in d["errors"]
        assert d["candidate_alphas"]["1 - c1"] == 1.5


class TestConvergenceOrders:
    def test_spatial_second_order(self):
        orders = spatial_order(grids=(251, 501, 1001))
        for p in orders:
            assert p == pytest.approx(2.0, abs=0.1)

    def test_temporal_fourth_order(self):
        orders = temporal_order()
        for p in orders:
            assert p == pytest.approx(4.0, abs=0.15)


class TestDiscrepancyReport:
    def test_four_items_with_decisive_evidence(self):
        items = build_discrepancy_report(num_points=1001)
        names = [it.item for it in items]
        assert names == ["AlphaMapping", "SteadyArgScaling", "EigenGaussianExponent",
                         "WPrefactor"]
        for it in items:
            ev = it.oracle_evidence
            if it.item == "AlphaMapping":
                assert ev["winner"] == "1 - c1"
                assert ev["min_loser_to_winner_ratio"] > 10.0
            else:
                assert ev["ratio"] > 1e4

    def test_serializable(self):
        import json

        items = build_discrepancy_report(num_points=401)
        text = json.dumps([it.to_dict() for it in items])
        assert "AlphaMapping" in text
