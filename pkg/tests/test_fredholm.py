import warnings

import numpy as np
import pytest

from onelevel import closedform as cf
from onelevel.fredholm import (Grid, GridFunction, SingularSystemError, apply_operator, integral,
                               nystrom_matrix, nystrom_solve, residual_report)

GROUPS = ["SO(even)", "SO(odd)", "Sp"]


class TestGrid:
    def test_nodes_and_weights(self):
        g = Grid(1.0, 4)
        np.testing.assert_allclose(g.nodes, [-1, -0.5, 0, 0.5, 1])
        np.testing.assert_allclose(g.weights, [0.25, 0.5, 0.5, 0.5, 0.25])
        assert g.weights.sum() == pytest.approx(2.0)

    @pytest.mark.parametrize("sigma, n", [(0.0, 4), (-1.0, 4), (1.0, 1), (1.0, 2.5)])
    def test_rejects_bad(self, sigma, n):
        with pytest.raises(ValueError):
            Grid(sigma, n)


class TestMatrix:
    def test_orthogonal_constant_kernel(self):
        grid = Grid(1.0, 2)
        mat = nystrom_matrix("O", grid)
        np.testing.assert_allclose(mat, np.eye(3) + 0.5 * grid.weights[None, :])
        np.testing.assert_allclose((mat - np.eye(3)).sum(axis=1), 1.0)

    def test_sp_small_support(self):
        grid = Grid(0.4, 4)
        np.testing.assert_allclose(nystrom_matrix("Sp", grid) - np.eye(5), np.tile(-0.5 * grid.weights, (5, 1)))

    def test_far_entry_vanishes(self):
        grid = Grid(1.2, 6)
        assert nystrom_matrix("SO(even)", grid)[-1, 0] == 0.0


class TestSolve:
    def test_orthogonal_exact(self):
        g = nystrom_solve("O", 1.0, 100)
        np.testing.assert_allclose(g.values, 0.5, atol=1e-12)

    def test_sp_constant(self):
        g = nystrom_solve("Sp", 0.4, 100)
        np.testing.assert_allclose(g.values, 1 / 0.6, atol=1e-12)
        assert integral(g) == pytest.approx(0.8 / 0.6, abs=1e-10)

    def test_soeven_unit_against_closed_form(self):
        g = nystrom_solve("SO(even)", 1.0, 2000)
        ref = cf.unit_g("SO(even)")
        assert np.max(np.abs(g.values - ref(g.nodes))) <= 5e-3
        # the integral matches the closed form's exact value, which is not 4/3
        assert integral(g) == pytest.approx(cf.exact_integral(ref, -1, 1), abs=2e-3)

    @pytest.mark.parametrize("group", GROUPS)
    def test_residual_and_evenness(self, group):
        g = nystrom_solve(group, 1.7, 800)
        rep = residual_report(group, g)
        assert rep.sup_residual <= 1e-10
        assert rep.symmetric_defect <= 1e-9
        np.testing.assert_allclose(apply_operator(group, g).values, 1.0, atol=1e-10)

    def test_zero_function(self):
        grid = Grid(1.3, 20)
        zero = GridFunction(grid, np.zeros(21))
        assert np.all(apply_operator("Sp", zero).values == 0.0)
        assert residual_report("Sp", zero).sup_residual == 1.0

    def test_closed_form_samples_residual(self):
        g = cf.closed_form_g("SO(even)", 1.2)
        grid = Grid(1.2, 2000)
        rep = residual_report("SO(even)", GridFunction(grid, g(grid.nodes)))
        assert rep.sup_residual <= 5e-3

    def test_singular_is_error(self, monkeypatch):
        from onelevel import fredholm

        monkeypatch.setattr(fredholm, "nystrom_matrix", lambda group, grid: np.zeros((grid.n + 1,) * 2))
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            with pytest.raises(SingularSystemError, match="sigma=1.0"):
                fredholm.nystrom_solve("Sp", 1.0, 8)


class TestInvariants:
    @pytest.mark.parametrize("group", GROUPS)
    @pytest.mark.parametrize("sigma", [0.9, 1.7])
    def test_first_order_convergence(self, group, sigma):
        sols = {n: nystrom_solve(group, sigma, n) for n in (250, 500, 1000, 2000)}
        d = [np.max(np.abs(sols[2 * n].values[::2] - sols[n].values)) for n in (250, 500, 1000)]
        assert d[0] / d[1] >= 1.5 and d[1] / d[2] >= 1.5

    @pytest.mark.parametrize("group", ["O", "SO(even)", "SO(odd)"])
    def test_bounded(self, group):
        for sigma in (0.5, 1.5, 2.5, 4.0):
            assert np.max(np.abs(nystrom_solve(group, sigma, 400).values)) <= 10

    def test_sp_bounded_by_operator(self):
        # g = 1 - K g, so max|g| <= 1 + max|K g|; the constant 10 is exceeded for Sp
        g = nystrom_solve("Sp", 4.0, 400)
        kg = apply_operator("Sp", g).values - g.values
        assert np.max(np.abs(g.values)) <= 1 + np.max(np.abs(kg)) + 1e-9
        assert np.max(np.abs(g.values)) > 10

    @pytest.mark.parametrize("group", GROUPS + ["O"])
    def test_form_positive(self, group):
        rng = np.random.default_rng(7)
        grid = Grid(2.3, 200)
        mat = nystrom_matrix(group, grid)
        for _ in range(10):
            f = rng.normal(size=grid.n + 1)
            f = 0.5 * (f + f[::-1])
            assert f @ mat @ f >= -1e-8 * (f @ f)


class TestCsv:
    def test_round_trip(self):
        g = nystrom_solve("Sp", 1.3, 50)
        text = g.to_csv()
        assert text.splitlines()[0] == "x,g"
        back = GridFunction.from_csv(text)
        np.testing.assert_array_equal(back.values, g.values)
        assert back.grid == g.grid

    def test_bad_header(self):
        with pytest.raises(ValueError, match="header"):
            GridFunction.from_csv("a,b\n0,1\n")

    def test_rejects_nonfinite(self):
        with pytest.raises(ValueError, match="finite"):
            GridFunction(Grid(1.0, 2), [0.0, np.nan, 0.0])

    def test_interpolation_zero_outside(self):
        g = nystrom_solve("O", 1.0, 10)
        assert g(1.5) == 0.0
        assert g(0.05) == pytest.approx(0.5)
