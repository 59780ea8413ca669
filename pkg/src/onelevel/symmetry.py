"""Classical compact groups, their weight functions and Fourier-side kernels.

The Fourier transform of each weight is ``delta_0 + m`` where the bounded
part is piecewise constant, ``m(xi) = alpha + beta * 1[-1, 1](xi)``.
"""

from __future__ import annotations

import enum
import math
from typing import NamedTuple


class SymmetryGroup(enum.Enum):
    O = "O"
    SOeven = "SO(even)"
    SOodd = "SO(odd)"
    Sp = "Sp"

    def __str__(self) -> str:
        return self.value

    @property
    def label(self) -> str:
        return self.value

    @classmethod
    def parse(cls, text: "str | SymmetryGroup") -> "SymmetryGroup":
        """Parse a group label, case-insensitively, accepting common aliases."""
        if isinstance(text, cls):
            return text
        key = str(text).strip().lower()
        try:
            return _ALIASES[key]
        except KeyError:
            known = ", ".join(g.value for g in cls)
            raise ValueError(f"unknown symmetry group {text!r} (expected one of {known})") from None


_ALIASES = {
    "o": SymmetryGroup.O,
    "so(even)": SymmetryGroup.SOeven,
    "so-even": SymmetryGroup.SOeven,
    "soeven": SymmetryGroup.SOeven,
    "so(odd)": SymmetryGroup.SOodd,
    "so-odd": SymmetryGroup.SOodd,
    "soodd": SymmetryGroup.SOodd,
    "sp": SymmetryGroup.Sp,
}


class KernelSpec(NamedTuple):
    alpha: float
    beta: float


_KERNELS = {
    SymmetryGroup.O: KernelSpec(0.5, 0.0),
    SymmetryGroup.SOeven: KernelSpec(0.0, 0.5),
    SymmetryGroup.SOodd: KernelSpec(1.0, -0.5),
    SymmetryGroup.Sp: KernelSpec(0.0, -0.5),
}

_DELTA_MASS = {
    SymmetryGroup.O: 0.5,
    SymmetryGroup.SOeven: 0.0,
    SymmetryGroup.SOodd: 1.0,
    SymmetryGroup.Sp: 0.0,
}

# sign in front of sin(2 pi x) / (2 pi x) in the smooth part of W
_SINC_SIGN = {
    SymmetryGroup.O: 0.0,
    SymmetryGroup.SOeven: 1.0,
    SymmetryGroup.SOodd: -1.0,
    SymmetryGroup.Sp: -1.0,
}


def kernel_spec(group) -> KernelSpec:
    return _KERNELS[SymmetryGroup.parse(group)]


def m_value(group, xi: float) -> float:
    """Kernel value; the indicator interval [-1, 1] is closed."""
    alpha, beta = kernel_spec(group)
    return alpha + beta if abs(xi) <= 1.0 else alpha


def _sinc2pi(x: float) -> float:
    if x == 0.0:
        return 1.0
    return math.sin(2.0 * math.pi * x) / (2.0 * math.pi * x)


def weight_smooth_part(group, x: float) -> float:
    """Non-atomic part of the weight function W at ``x``."""
    return 1.0 + _SINC_SIGN[SymmetryGroup.parse(group)] * _sinc2pi(x)


def delta_mass(group) -> float:
    """Coefficient of the Dirac mass at the origin in W."""
    return _DELTA_MASS[SymmetryGroup.parse(group)]
