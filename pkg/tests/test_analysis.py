import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.integrate import quad

from onelevel import analysis as an
from onelevel import closedform as cf
from onelevel import transcribed as tr
from onelevel.fredholm import nystrom_solve
from onelevel.symmetry import kernel_spec

GROUPS = ["SO(even)", "SO(odd)", "Sp"]


def naive_oracle(group, sigma):
    """int phi^ (delta + m) for the triangle of height 1/s on [-s, s], by quadrature."""
    s = 2 * sigma
    alpha, beta = kernel_spec(group)
    tri = lambda y: (1 / s) * (1 - abs(y) / s)
    lim = min(1.0, s)
    return 1 / s + alpha * quad(tri, -s, s, points=[0])[0] + beta * quad(tri, -lim, lim, points=[0])[0]


class TestInfimum:
    def test_orthogonal(self):
        assert an.infimum("O", 1.0).value == 1.0
        r = an.infimum("O", 1.7, "nystrom", 500)
        assert r.value == pytest.approx(1 / 3.4 + 0.5, abs=1e-12)
        assert r.method is an.Method.Nystrom

    def test_sp_small(self):
        r = an.infimum("Sp", 0.4)
        assert r.value == pytest.approx(0.75, abs=1e-12)
        assert r.value == pytest.approx(1 / r.inner_product)
        assert r.residual <= 1e-12

    def test_unit_values_match_nystrom(self):
        # oracle-verified values at sigma = 1; the naive pair is not optimal there
        for group in GROUPS:
            closed = an.infimum(group, 1.0).value
            numeric = an.infimum(group, 1.0, "nystrom", 4000).value
            assert closed == pytest.approx(numeric, abs=2e-3)
            assert closed < an.naive_bound(group, 1.0)

    def test_range_error_propagates(self):
        with pytest.raises(cf.RangeError):
            an.infimum("Sp", 2.5)

    def test_method_parse(self):
        assert an.Method.parse("Nystrom") is an.Method.Nystrom
        assert an.Method.parse("closed") is an.Method.ClosedForm
        with pytest.raises(ValueError):
            an.Method.parse("exact")

    @pytest.mark.parametrize("sigma", [0.6, 1.0, 1.35, 1.7, 1.85])
    def test_closed_matches_nystrom(self, sigma):
        for group in GROUPS:
            assert an.infimum(group, sigma).value == pytest.approx(
                an.infimum(group, sigma, "nystrom", 2000).value, abs=2e-3)

    def test_large_sigma_limits(self):
        sp = an.infimum("Sp", 10, "nystrom", 4000).value
        so = an.infimum("SO(odd)", 10, "nystrom", 4000).value
        se = an.infimum("SO(even)", 10, "nystrom", 4000).value
        assert sp <= 0.02 and 1 <= so <= 1.02 and se <= 0.21


class TestTransfer:
    @pytest.mark.parametrize("sigma", [0.3, 0.6, 1.0, 1.2, 1.7, 1.85])
    def test_closed(self, sigma):
        assert an.infimum("SO(odd)", sigma).value - an.infimum("Sp", sigma).value == pytest.approx(1, abs=1e-8)

    @pytest.mark.parametrize("sigma", [2.5, 3.0])
    def test_nystrom(self, sigma):
        diff = an.infimum("SO(odd)", sigma, "nystrom", 1000).value - an.infimum("Sp", sigma, "nystrom", 1000).value
        assert diff == pytest.approx(1, abs=2e-3)

    def test_soodd_from_sp(self):
        out = an.soodd_from_sp(cf.closed_form_g("Sp", 0.4))
        assert float(out(0.0)) == pytest.approx(5 / 7, abs=1e-14)
        assert an.closed_form_residual(out) <= 1e-10
        out = an.soodd_from_sp(cf.closed_form_g("Sp", 1.0))
        assert 1 / an.inner_product(out) == pytest.approx(an.infimum("Sp", 1.0).value + 1, abs=1e-12)
        xs = np.linspace(-1.7, 1.7, 41)
        np.testing.assert_allclose(an.soodd_from_sp(cf.band2_g("Sp", 1.7))(xs), cf.band2_g("SO(odd)", 1.7)(xs),
                                   atol=1e-8)

    def test_soodd_from_sp_grid(self):
        out = an.soodd_from_sp(nystrom_solve("Sp", 2.5, 600))
        ref = nystrom_solve("SO(odd)", 2.5, 600)
        np.testing.assert_allclose(out.values, ref.values, atol=1e-10)

    def test_wrong_group(self):
        with pytest.raises(ValueError):
            an.soodd_from_sp(cf.closed_form_g("SO(even)", 1.0))


class TestNaiveBound:
    @settings(max_examples=40, deadline=None)
    @given(st.sampled_from(GROUPS + ["O"]), st.floats(0.1, 4.0))
    def test_against_quadrature(self, group, sigma):
        assert an.naive_bound(group, sigma) == pytest.approx(naive_oracle(group, sigma), abs=1e-10)

    def test_small_support_matches_printed(self):
        assert an.naive_bound("Sp", 0.4) == pytest.approx(0.75)
        for group in GROUPS + ["O"]:
            for sigma in (0.1, 0.3, 0.5):
                assert an.naive_bound(group, sigma) == pytest.approx(tr.printed_naive_bound(group, sigma))

    def test_printed_examples(self):
        assert tr.printed_naive_bound("SO(even)", 1.2) == pytest.approx(2 / 2.4 - 1 / 5.76)
        assert tr.printed_naive_bound("SO(odd)", 1.0) == pytest.approx(1.25)

    def test_printed_large_support_differs(self):
        # the printed branches for s > 1 disagree with direct integration
        assert an.naive_bound("SO(even)", 1.0) == pytest.approx(0.875)
        assert tr.printed_naive_bound("SO(even)", 1.0) == pytest.approx(0.75)

    @pytest.mark.parametrize("group", GROUPS)
    def test_admissible(self, group):
        for sigma in (0.3, 0.6, 0.9, 1.0, 1.2, 1.6, 1.9):
            assert an.infimum(group, sigma).value <= an.naive_bound(group, sigma) + 1e-6


class TestRankBounds:
    def test_identities(self):
        r = an.rank_bounds("Sp", 0.4)
        assert r.g_bound == pytest.approx(0.75)
        assert r.p0_lower == pytest.approx(0.25)
        assert dict(r.pm_upper)[3] == pytest.approx(0.25)
        assert [m for m, _ in r.pm_upper] == [1, 2, 3, 4, 5]

    @pytest.mark.parametrize("sigma", [0.7, 1.3, 4.0])
    def test_orthogonal(self, sigma):
        r = an.rank_bounds("O", sigma)
        assert r.g_bound == pytest.approx(1 / (2 * sigma) + 0.5, abs=1e-12)
        assert r.p0_lower == pytest.approx(0.5 - 1 / (2 * sigma), abs=1e-12)

    @pytest.mark.parametrize("group", GROUPS)
    @pytest.mark.parametrize("sigma", [1.1, 1.2, 1.3, 1.4])
    def test_printed_formula(self, group, sigma):
        assert an.rank_bounds(group, sigma).g_bound == pytest.approx(tr.printed_rank_bound(group, sigma), abs=1e-6)


class TestPhi:
    def test_orthogonal_formula(self):
        xs = np.random.default_rng(0).uniform(-4, 4, 50)
        got = np.array([v for _, v in an.phi_from_g(cf.orthogonal_g(1.2), xs)])
        np.testing.assert_allclose(got, (np.sin(2.4 * np.pi * xs) / (2.2 * np.pi * xs)) ** 2, atol=1e-10)

    @pytest.mark.parametrize("group", GROUPS)
    def test_at_zero_and_nonnegative(self, group):
        g = cf.closed_form_g(group, 1.6)
        (_, v0), = an.phi_from_g(g, [0.0])
        assert v0 == pytest.approx(an.inner_product(g) ** 2, rel=1e-12)
        vals = np.array([v for _, v in an.phi_from_g(g, np.linspace(-6, 6, 601))])
        assert vals.min() >= -1e-12

    def test_sp_unit(self):
        g = cf.unit_g("Sp")
        (_, v0), = an.phi_from_g(g, [0.0])
        assert v0 == pytest.approx((1 / an.infimum("Sp", 1.0).value) ** 2, rel=1e-12)

    def test_against_quadrature(self):
        g = cf.closed_form_g("SO(even)", 1.3)
        for x in (0.1, 0.45, 1.7):
            ref = 2 * quad(lambda t: float(g(t)) * np.cos(2 * np.pi * x * t), 0, 1.3, points=[0.3, 0.7],
                           epsabs=1e-13)[0]
            assert an.phi_from_g(g, [x])[0][1] == pytest.approx(ref**2, abs=1e-11)

    def test_grid_function(self):
        gn = nystrom_solve("SO(even)", 1.3, 2000)
        g = cf.closed_form_g("SO(even)", 1.3)
        xs = [0.0, 0.3, 0.9]
        a = np.array([v for _, v in an.phi_from_g(gn, xs)])
        b = np.array([v for _, v in an.phi_from_g(g, xs)])
        np.testing.assert_allclose(a, b, atol=2e-3)


class TestPhiHat:
    @pytest.mark.parametrize("group", GROUPS)
    def test_against_quadrature(self, group):
        g = cf.closed_form_g(group, 1.7)
        scale = float(np.max(np.abs(g(np.linspace(0, 1.7, 50))))) ** 2
        pts = [-1.3, -0.7, -0.3, 0.0, 0.3, 0.7, 1.3]
        for y in (0.0, 0.25, 1.1, 2.9):
            ref = quad(lambda t: float(g(t) * g(t - y)), -1.7, 1.7, limit=400,
                       points=sorted(set(pts + [p + y for p in pts if abs(p + y) < 1.7])))[0]
            assert an.phi_hat_from_g(g, [y])[0][1] == pytest.approx(ref, abs=1e-9 * scale)

    def test_peak_and_support(self):
        g = cf.closed_form_g("SO(even)", 1.2)
        (_, v0), = an.phi_hat_from_g(g, [0.0])
        assert v0 == pytest.approx(cf.exact_integral(cf.PiecewiseTrig(
            1.2, "SO(even)", [cf.Segment(s.lo, s.hi, [(1, 0, 0)]) for s in g.segments]), -1.2, 1.2) * 0 + quad(
            lambda t: float(g(t)) ** 2, -1.2, 1.2, points=[-0.8, -0.2, 0.2, 0.8])[0], rel=1e-10)
        assert v0 > 0
        assert [v for _, v in an.phi_hat_from_g(g, [2.5, -2.5])] == [0.0, 0.0]

    def test_naive_triangle(self):
        sigma = 0.8
        g = cf.PiecewiseTrig(sigma, "O", [cf.Segment(0, sigma, [cf.TrigTerm.constant(1 / np.sqrt(2 * sigma))])])
        ys = np.linspace(-1.7, 1.7, 35)
        got = np.array([v for _, v in an.phi_hat_from_g(g, ys)])
        np.testing.assert_allclose(got, np.clip(1 - np.abs(ys) / (2 * sigma), 0, None), atol=1e-14)

    def test_needs_closed_form(self):
        with pytest.raises(TypeError):
            an.phi_hat_from_g(nystrom_solve("O", 1.0, 10), [0.0])


class TestSweep:
    def test_orthogonal(self):
        res = an.sweep("O", 0.5, 3.0, 0.25)
        s = res.column("sigma")
        np.testing.assert_allclose(s, np.arange(0.5, 3.01, 0.25))
        np.testing.assert_allclose(res.column("optimal_inf"), 1 / (2 * s) + 0.5, atol=1e-15)
        assert res.monotone

    def test_soeven_improvement(self):
        res = an.sweep("SO(even)", 1.05, 1.45, 0.05)
        imp = res.column("improvement")
        assert np.all(imp >= 0)
        assert imp[np.isclose(res.column("sigma"), 1.2)][0] > 0
        assert res.monotone and len(res) == 9

    def test_sp_small_support(self):
        res = an.sweep("Sp", 0.1, 0.5, 0.1)
        assert np.all(np.abs(res.column("improvement")) <= 1e-9)

    def test_row_failure_names_sigma(self):
        with pytest.raises(cf.RangeError, match="sigma=2.0"):
            an.sweep("Sp", 1.8, 2.2, 0.2)

    def test_bad_span(self):
        with pytest.raises(ValueError):
            an.sweep("O", 2.0, 1.0, 0.1)
        with pytest.raises(ValueError):
            an.sweep("O", 1.0, 2.0, 0.0)

    def test_nystrom_monotone(self):
        res = an.sweep("Sp", 0.6, 2.6, 0.2, "nystrom", 400)
        assert res.monotone and res.tolerance == 1e-3
