import numpy as np
import pytest
from hypothesis import given, strategies as st

from onelevel.symmetry import SymmetryGroup, delta_mass, kernel_spec, m_value, weight_smooth_part


class TestParse:
    @pytest.mark.parametrize("text, group", [
        ("O", SymmetryGroup.O), ("so(even)", SymmetryGroup.SOeven), ("SO-EVEN", SymmetryGroup.SOeven),
        ("soodd", SymmetryGroup.SOodd), ("Sp", SymmetryGroup.Sp), (" sp ", SymmetryGroup.Sp),
    ])
    def test_aliases(self, text, group):
        assert SymmetryGroup.parse(text) is group

    @pytest.mark.parametrize("text", ["U", "SO", "", "symplectic"])
    def test_rejects_unknown(self, text):
        with pytest.raises(ValueError, match="unknown symmetry group"):
            SymmetryGroup.parse(text)

    def test_round_trip(self):
        for g in SymmetryGroup:
            assert SymmetryGroup.parse(str(g)) is g


class TestKernel:
    def test_specs(self):
        assert kernel_spec("O") == (0.5, 0.0)
        assert kernel_spec("SO(even)") == (0.0, 0.5)
        assert kernel_spec("SO(odd)") == (1.0, -0.5)
        assert kernel_spec("Sp") == (0.0, -0.5)

    def test_indicator_is_closed(self):
        assert m_value("SO(even)", 1.0) == 0.5
        assert m_value("SO(even)", -1.0) == 0.5
        assert m_value("SO(even)", 1.0 + 1e-12) == 0.0
        assert m_value("SO(odd)", 0.3) == 0.5
        assert m_value("SO(odd)", 2.0) == 1.0

    @given(st.floats(-5, 5))
    def test_kernel_even(self, xi):
        for g in SymmetryGroup:
            assert m_value(g, xi) == m_value(g, -xi)

    def test_fourier_pair_numerically(self):
        # the bounded part of W^ should be the Fourier transform of W minus its atom
        xs = np.linspace(-400, 400, 800001)
        dx = xs[1] - xs[0]
        for g in (SymmetryGroup.SOeven, SymmetryGroup.Sp):
            w = np.array([weight_smooth_part(g, x) for x in xs]) - 1.0
            alpha, beta = kernel_spec(g)
            # integral of (W - 1) * cos(2 pi x xi) at xi = 0.5 equals beta
            val = np.sum(w * np.cos(2 * np.pi * xs * 0.5)) * dx
            assert abs(val - beta) < 5e-3

    def test_weights_at_origin(self):
        assert weight_smooth_part("SO(even)", 0.0) == 2.0
        assert weight_smooth_part("Sp", 0.0) == 0.0
        assert weight_smooth_part("O", 0.7) == 1.0
        assert delta_mass("O") == 0.5 and delta_mass("SO(odd)") == 1.0 and delta_mass("Sp") == 0.0
