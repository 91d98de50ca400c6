"""Classification predicates, the unicorn fit and the verdict ladder."""

import json

import numpy as np
import pytest

from finsler.catalog import get_metric
from finsler.classify import (ClassificationReport, Verdict, classify_metric,
                              curvature_flags, default_directions,
                              default_grid, is_generalized_berwald,
                              killing_constant_length, randers_s0_shortcut,
                              theorem11_verdict, unicorn_fit)
from finsler.errors import (EmptyGrid, MissingReports, RankDeficient,
                            WrongPhiVariant)
from finsler.phi_families import RandersPhi, RiemannSqrtPhi, UnicornPhi


class TestGeneralizedBerwald:
    def test_lie_group_true(self):
        m = get_metric("lie_group").metric
        v = is_generalized_berwald(m, default_grid(m))
        assert v
        assert v.residual < 1e-10

    def test_fish_tank_false(self):
        m = get_metric("fish_tank").metric
        assert not is_generalized_berwald(m, default_grid(m))

    def test_bao_shen_true(self):
        m = get_metric("bao_shen", K=2.0).metric
        assert is_generalized_berwald(m, default_grid(m))

    def test_empty_grid(self):
        m = get_metric("euclid").metric
        with pytest.raises(EmptyGrid):
            is_generalized_berwald(m, [])


class TestKillingConstantLength:
    def test_parallel_form_true(self):
        m = get_metric("euclid_randers", eps=0.5).metric
        assert killing_constant_length(m, default_grid(m))

    def test_lie_group_false(self):
        m = get_metric("lie_group").metric
        assert not killing_constant_length(m, default_grid(m))

    def test_sphere_randers_false(self):
        m = get_metric("sphere_randers", eps=0.5).metric
        assert not killing_constant_length(m, default_grid(m))

    def test_proj_sphere_killing_r_zero_s_nonzero(self):
        m = get_metric("proj_sphere_killing", kappa=0.5).metric
        v = killing_constant_length(m, default_grid(m))
        # r = 0 but s_i != 0 here (b is constant, beta not closed)
        from finsler.geometry_core import beta_at
        x = default_grid(m)[0]
        assert np.abs(beta_at(m, x).r).max() < 1e-6


class TestRandersShortcut:
    def test_sphere_randers_true(self):
        e = get_metric("sphere_randers", eps=0.5)
        assert randers_s0_shortcut(e.metric, e.phi, default_grid(e.metric))

    def test_fish_tank_true(self):
        e = get_metric("fish_tank")
        assert randers_s0_shortcut(e.metric, e.phi, default_grid(e.metric))

    def test_lie_group_false(self):
        e = get_metric("lie_group")
        assert not randers_s0_shortcut(e.metric, e.phi, default_grid(e.metric))

    def test_wrong_variant_rejected(self):
        e = get_metric("lie_group")
        with pytest.raises(WrongPhiVariant):
            randers_s0_shortcut(e.metric, RiemannSqrtPhi(1.0),
                                default_grid(e.metric))


class TestCurvatureFlags:
    def test_flat_randers(self):
        e = get_metric("euclid_randers", eps=0.5)
        flags = curvature_flags(e.metric, e.phi, default_grid(e.metric),
                                default_directions(2, 8))
        assert flags["berwald"]
        assert flags["landsberg"]
        assert flags["douglas"]
        assert flags["s_zero"]
        assert not flags["riemannian"]
        assert flags["riemannian"].residual > 0.01

    def test_riemann_sqrt_is_riemannian(self):
        e = get_metric("mw")
        flags = curvature_flags(e.metric, RiemannSqrtPhi(0.5),
                                default_grid(e.metric)[:2],
                                default_directions(2, 4))
        assert flags["riemannian"]

    def test_lie_group_all_nonzero(self):
        e = get_metric("lie_group")
        flags = curvature_flags(e.metric, e.phi, default_grid(e.metric)[:2],
                                default_directions(2, 4))
        for name in ("berwald", "landsberg", "douglas", "s_zero", "riemannian"):
            assert not flags[name]

    def test_logical_closure(self):
        e = get_metric("euclid_randers", eps=0.3)
        flags = curvature_flags(e.metric, e.phi, default_grid(e.metric)[:3],
                                default_directions(2, 4))
        if flags["berwald"]:
            assert flags["landsberg"].residual < 10 * flags["landsberg"].threshold
            assert flags["douglas"].residual < 10 * flags["douglas"].threshold
            assert flags["s_zero"].residual < 10 * flags["s_zero"].threshold


class TestUnicornFit:
    def test_exact_family_member(self):
        f = UnicornPhi(1.0, 0.3, 0.7, 1.0)
        fit = unicorn_fit(f, 1.0)
        assert fit.k == pytest.approx(0.3, abs=1e-8)
        assert fit.q == pytest.approx(0.7, abs=1e-8)
        assert fit.rms < 1e-9

    def test_riemannian_gives_q_zero(self):
        fit = unicorn_fit(RiemannSqrtPhi(2.0), 0.8)
        assert fit.k == pytest.approx(2.0, abs=1e-8)
        assert fit.q == pytest.approx(0.0, abs=1e-8)

    def test_randers_poor_fit(self):
        fit = unicorn_fit(RandersPhi(), 0.8)
        assert fit.rms > 0.01

    def test_idempotence(self):
        f = UnicornPhi(1.0, 0.25, 0.6, 1.0)
        fit1 = unicorn_fit(f, 1.0)
        # resample Q from the fitted coefficients and fit again
        s = np.linspace(-0.9, 0.9, 25)
        q = fit1.k * s + fit1.q * np.sqrt(1.0 - s * s)
        fit2 = unicorn_fit((s, q), 1.0)
        assert fit2.k == pytest.approx(fit1.k, abs=1e-10)
        assert fit2.q == pytest.approx(fit1.q, abs=1e-10)

    def test_rank_deficient(self):
        with pytest.raises(RankDeficient):
            unicorn_fit((np.array([0.5, 0.5, 0.5]), np.array([1.0, 1.0, 1.0])),
                        1.0)


class TestVerdict:
    def _v(self, flag, residual=0.0):
        return Verdict(flag, residual, 1e-6, 9)

    def test_priority_order(self):
        t, f = self._v(True), self._v(False, 1.0)
        assert theorem11_verdict({"gb": f, "s_zero": t}) == "NotGeneralizedBerwald"
        assert theorem11_verdict({"gb": t, "s_zero": f}) == "SNonzero"
        assert theorem11_verdict({"gb": t, "s_zero": t, "riemannian": t}) \
            == "RiemannianIsotropic"
        assert theorem11_verdict({"gb": t, "s_zero": t, "riemannian": f,
                                  "berwald": t}, flag_zero=self._v(True)) \
            == "LocallyMinkowskiLike"
        assert theorem11_verdict({"gb": t, "s_zero": t, "riemannian": f,
                                  "berwald": f, "killing_cl": f}) == "Inconclusive"

    def test_missing_reports(self):
        with pytest.raises(MissingReports):
            theorem11_verdict({"gb": self._v(True)})

    def test_tol_monotonicity(self):
        # loosening tol never flips a true verdict to false
        m = get_metric("lie_group").metric
        grid = default_grid(m)
        prev = None
        for tol in (1e-10, 1e-8, 1e-6, 1e-4):
            v = is_generalized_berwald(m, grid, tol=tol)
            if prev is not None and prev.value:
                assert v.value
            prev = v


class TestEndToEnd:
    @pytest.mark.parametrize("name,kw,expected", [
        ("lie_group", {}, "SNonzero"),
        ("fish_tank", {}, "NotGeneralizedBerwald"),
        ("sphere_randers", {"eps": 0.5}, "NotGeneralizedBerwald"),
        ("euclid_randers", {"eps": 0.5}, "LocallyMinkowskiLike"),
        ("euclid", {}, "RiemannianIsotropic"),
    ])
    def test_catalog_verdicts(self, name, kw, expected):
        e = get_metric(name, **kw)
        rep = classify_metric(e.metric, e.phi)
        assert rep.verdict == expected

    def test_report_serializes(self):
        e = get_metric("euclid_randers", eps=0.5)
        rep = classify_metric(e.metric, e.phi)
        doc = json.loads(rep.to_json())
        assert doc["verdict"] == "LocallyMinkowskiLike"
        for pred in ("gb", "killing_cl", "berwald", "landsberg", "douglas",
                     "s_zero", "riemannian"):
            entry = doc["predicates"][pred]
            assert set(entry) == {"verdict", "residual", "threshold", "n_samples"}
