"""Reduction of the optimality condition to linear ODEs on the outer intervals.

Differentiating ``(I + K) g = 1`` gives a family of location-specific delay
differential equations linking ``g`` on unit shifts of two outermost
intervals.  Walking the "U-path" through that system and then trading integer
shifts for derivatives leaves a monic constant-coefficient ODE on each outer
interval.  All combinatorics here is exact (``beta = +-1/2`` is dyadic); floats
appear only when an :class:`ODESpec` is assembled.
"""

from __future__ import annotations

import enum
import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional

import numpy as np

from .symmetry import SymmetryGroup, kernel_spec

_HALF_TOL = 1e-12


class Case(enum.Enum):
    HalfLow = "HalfLow"    # k <= sigma < k + 1/2
    HalfHigh = "HalfHigh"  # k + 1/2 <= sigma < k + 1


class System(enum.Enum):
    FirstSystem = "first"
    SecondSystem = "second"


@dataclass(frozen=True)
class IntervalSystem:
    sigma: float
    k: int
    case: Case
    first: tuple
    second: tuple
    degenerate: Optional[System] = None

    def lists(self):
        return {System.FirstSystem: self.first, System.SecondSystem: self.second}

    def locate(self, x: float) -> System:
        """System whose interval interior contains ``x``."""
        for system, intervals in self.lists().items():
            if system is self.degenerate:
                continue
            for lo, hi in intervals:
                if lo < x < hi:
                    return system
        raise ValueError(f"x={x} is not interior to any interval at sigma={self.sigma}")


@dataclass(frozen=True)
class DelayTerm:
    """``coefficient * g^(derivative_order)(x - shift)``."""

    coefficient: Fraction
    derivative_order: int
    shift: int

    @property
    def full_degree(self) -> int:
        return self.derivative_order + self.shift


@dataclass(frozen=True)
class ODESpec:
    """Monic ODE ``sum_j coeffs[j] * g^(j) = 0`` with ``coeffs[order] == 1``."""

    order: int
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.order + 1:
            raise ValueError("need order + 1 coefficients")
        if self.coeffs[-1] != 1:
            raise ValueError("ODE must be monic")

    def characteristic(self, z):
        """Characteristic polynomial evaluated at ``z``."""
        return sum(c * z**j for j, c in enumerate(self.coeffs))

    def roots(self) -> np.ndarray:
        return np.roots([float(c) for c in reversed(self.coeffs)])

    def annihilation_defect(self, omega: float) -> float:
        """``|p(i omega)|``; zero iff ``cos(omega x + phase)`` solves the ODE."""
        return abs(self.characteristic(1j * omega))


class Reflection(NamedTuple):
    """Marker: the interval is the mirror image of interval ``target``."""

    target: int


class OutsideODEs(NamedTuple):
    first: Optional[ODESpec]
    second: Optional[ODESpec]
    degenerate: Optional[System]


def _as_fraction(beta) -> Fraction:
    b = Fraction(beta).limit_denominator(1 << 20)
    if abs(b) != Fraction(1, 2):
        raise ValueError(f"beta must be +-1/2, got {beta}")
    return b


def _half_multiple(sigma: float) -> Optional[float]:
    nearest = round(2.0 * sigma) / 2.0
    return nearest if abs(sigma - nearest) < _HALF_TOL else None


def interval_systems(sigma: float) -> IntervalSystem:
    if sigma < 0.5 - _HALF_TOL:
        raise ValueError(f"interval systems need sigma >= 0.5, got {sigma}")
    snapped = _half_multiple(sigma)
    s = snapped if snapped is not None else sigma
    k = int(math.floor(s))
    if k >= 1 and s - k < 0.5:
        case = Case.HalfLow
        first = tuple((2 * k - sigma - j, sigma - j) for j in range(2 * k + 1))
        second = tuple((sigma - 1 - j, 2 * k - sigma - j) for j in range(2 * k))
        degenerate = System.FirstSystem if snapped == k else None
    else:
        case = Case.HalfHigh
        second = tuple((2 * k + 1 - sigma - j, sigma - j) for j in range(2 * k + 2))
        first = tuple((sigma - 1 - j, 2 * k + 1 - sigma - j) for j in range(2 * k + 1))
        degenerate = System.SecondSystem if snapped == k + 0.5 else None
    return IntervalSystem(sigma, k, case, first, second, degenerate)


def u_path_after_turn(k_max: int, beta) -> list:
    """Current expression once the U-path has turned, for largest shift ``k_max``."""
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    b = _as_fraction(beta)
    terms = [DelayTerm(Fraction(1), k_max + 1, 0)]
    terms += [DelayTerm(b ** (m + 2), k_max - 1 - m, m) for m in range(k_max)]
    return terms


def reduce_term(r: int, m: int, beta) -> list:
    """Rewrite ``g^(r)(x - m)`` as a combination of unshifted derivatives.

    Uses ``g^(r)(x - m) = sum_{a + b = m} C(a, b) beta^(b - a) g^(r + a - b)(x)``.
    """
    if r < 0 or m < 0:
        raise ValueError("derivative order and shift must be nonnegative")
    b = _as_fraction(beta)
    out = []
    for hor in range(m // 2 + 1):
        n = m - hor
        out.append(DelayTerm(math.comb(n, hor) * b ** (hor - n), r + n - hor, 0))
    return out


def _assemble(k_max: int, beta) -> ODESpec:
    acc = defaultdict(Fraction)
    for term in u_path_after_turn(k_max, beta):
        for piece in reduce_term(term.derivative_order, term.shift, beta):
            acc[piece.derivative_order] += term.coefficient * piece.coefficient
    order = k_max + 1
    if acc[order] != 1 or max(acc) != order:
        raise AssertionError("leading term of the reduced ODE cancelled")
    return ODESpec(order, tuple(acc[j] for j in range(order + 1)))


def _largest_shifts(system: IntervalSystem) -> tuple:
    k = system.k
    if system.case is Case.HalfLow:
        return 2 * k, 2 * k - 1
    return 2 * k, 2 * k + 1


def outside_odes(sigma: float, group) -> OutsideODEs:
    """Monic ODEs satisfied by the optimal ``g`` on the two outermost intervals."""
    if sigma < 1 - _HALF_TOL:
        raise ValueError(f"outside ODEs need sigma >= 1, got {sigma}")
    group = SymmetryGroup.parse(group)
    beta = kernel_spec(group).beta
    if beta == 0:
        raise ValueError("the orthogonal kernel has no indicator part; g is constant")
    system = interval_systems(sigma)
    k_first, k_second = _largest_shifts(system)
    first = None if system.degenerate is System.FirstSystem else _assemble(k_first, beta)
    second = None if system.degenerate is System.SecondSystem else _assemble(k_second, beta)
    return OutsideODEs(first, second, system.degenerate)


def dimension(sigma: float) -> int:
    """Number of free parameters left after the reduction."""
    if sigma < 1 - _HALF_TOL:
        raise ValueError(f"dimension needs sigma >= 1, got {sigma}")
    snapped = _half_multiple(sigma)
    if snapped is not None:
        k = int(math.floor(snapped))
        return 2 * k if snapped == k else 2 * k + 1
    k = int(math.floor(sigma))
    return 4 * k + 1 if sigma - k < 0.5 else 4 * k + 3


def breakpoint_count(sigma: float) -> int:
    """Upper bound on points of non-differentiability of ``g`` in ``(-sigma, sigma)``."""
    if sigma < 1 - _HALF_TOL:
        raise ValueError(f"breakpoint count needs sigma >= 1, got {sigma}")
    snapped = _half_multiple(sigma)
    if snapped is not None:
        k = int(math.floor(snapped))
        return 2 * k - 1 if snapped == k else 2 * k + 1
    k = int(math.floor(sigma))
    return 4 * k + 1 if sigma - k < 0.5 else 4 * k + 3


def _expansion_limits(system: IntervalSystem, which: System) -> tuple:
    # (last index, last expanded index, mirror pivot)
    k = system.k
    if system.case is Case.HalfLow:
        if which is System.FirstSystem:
            return 2 * k, k, 2 * k
        return 2 * k - 1, k - 1, 2 * k - 1
    if which is System.FirstSystem:
        return 2 * k, k, 2 * k
    return 2 * k + 1, k, 2 * k + 1


def inner_expansion(j: int, which, sigma: float, beta):
    """How ``g`` on inner interval ``j`` follows from the outermost one.

    Returns ``[(coefficient, derivative_order), ...]`` meaning
    ``g|_j(x) = sum coefficient * g|_0^(derivative_order)(|x| + j)``, or a
    :class:`Reflection` when interval ``j`` mirrors another interval.
    """
    which = System(which) if not isinstance(which, System) else which
    system = interval_systems(sigma)
    last, expanded, pivot = _expansion_limits(system, which)
    if not 1 <= j <= last:
        raise ValueError(f"index {j} outside 1..{last} for the {which.value} system at sigma={sigma}")
    if j > expanded:
        return Reflection(pivot - j)
    b = _as_fraction(beta)
    return [(math.comb(j - hor, hor) * b ** (2 * hor - j), j - 2 * hor) for hor in range(j // 2 + 1)]
