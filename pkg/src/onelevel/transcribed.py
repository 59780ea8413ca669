"""Closed-form expressions copied from the literature, kept as regression cross-checks.

Nothing on the computation path calls these; tests compare them against the
runtime-solved coefficient systems.  Where a printed expression uses ``s`` for
the support variable it is read as ``sigma``.
"""

from __future__ import annotations

from math import cos, pi, sin, sqrt, tan

from .symmetry import SymmetryGroup

R2 = sqrt(2.0)


def printed_naive_bound(group, sigma: float) -> float:
    """Average-rank bound of the triangle pair as printed (``s = 2 sigma``).

    The branches for ``s > 1`` do not agree with direct integration; see
    :func:`onelevel.analysis.naive_bound` for the exact value.
    """
    group = SymmetryGroup.parse(group)
    s = 2.0 * sigma
    if group is SymmetryGroup.O:
        return 1 / s + 0.5
    if s <= 1:
        return 1 / s - 0.5 if group is SymmetryGroup.Sp else 1 / s + 0.5
    if group is SymmetryGroup.SOeven:
        return 2 / s - 1 / s**2
    if group is SymmetryGroup.SOodd:
        return 1 + 1 / s**2
    return 1 / s**2


def _parts(sigma):
    t = tan((sigma - 1) / R2)
    a = sin((3 - 2 * sigma) / 4)
    b = sin((-2 * sigma + pi + 3) / 4)
    c = sin((2 * sigma + pi - 3) / 4)
    return t, a, b, c


def printed_rank_bound(group, sigma: float) -> float:
    """Printed average-rank bound for ``1 < sigma < 1.5`` (all ``sigma`` for O)."""
    group = SymmetryGroup.parse(group)
    if group is SymmetryGroup.O:
        return 1 / (2 * sigma) + 0.5
    t, a, b, c = _parts(sigma)
    s = sigma
    if group is SymmetryGroup.SOeven:
        num = 4 * R2 * a + 2 * (s - 1) * b + c * (R2 * (s + 1) * t + 2)
        den = 8 * R2 * a + 8 * (s - 1) * b + 4 * R2 * s * c * t
    elif group is SymmetryGroup.Sp:
        num = -2 * (s - 1) * c - 4 * R2 * a + b * (R2 * (s - 3) * t + 2)
        den = 8 * (s - 1) * c + 8 * R2 * a - 4 * R2 * (s - 2) * b * t
    else:
        num = 6 * (s - 1) * c + 4 * R2 * a + b * (R2 * (5 - 3 * s) * t + 2)
        den = 8 * (s - 1) * c + 8 * R2 * a - 4 * R2 * (s - 2) * b * t
    return num / den


def printed_band15_coefficients(group, sigma: float) -> tuple:
    """``(c1, c2, c3)`` for ``1 < sigma < 1.5`` as printed."""
    group = SymmetryGroup.parse(group)
    t = tan((sigma - 1) / R2)
    sec = 1 / cos((sigma - 1) / R2)
    if group is SymmetryGroup.SOeven:
        c1 = cos((sigma - 1) / 2 - (1 + pi) / 4) * sec
        c3 = sin((2 * sigma + 3 * pi - 3) / 4) + sin((-2 * sigma + 3 * pi + 3) / 4) * t / R2
    else:
        c1 = cos((1 - sigma) / 2 + (1 - pi) / 4) * sec
        c3 = sin((-2 * sigma + 3 * pi + 3) / 4) - sin((2 * sigma + 3 * pi - 3) / 4) * t / R2
    return c1, 0.0, c3


def printed_band15_scaling(group, sigma: float) -> float:
    """``((I + K) g~)(0)`` for ``1 < sigma < 1.5`` as printed."""
    group = SymmetryGroup.parse(group)
    t, a, b, c = _parts(sigma)
    s = sigma
    if group is SymmetryGroup.SOeven:
        return 2 * R2 * a + (s - 1) * b + 0.5 * c * (R2 * (s + 1) * t + 2)
    sp = -2 * R2 * a + (s - 1) * cos((2 * s + 3 * pi - 3) / 4) + 0.5 * b * (R2 * (s - 3) * t + 2)
    if group is SymmetryGroup.Sp:
        return sp
    return sp + 4 * (s - 1) * c + 4 * R2 * a - 2 * R2 * (s - 2) * b * t


def printed_medium_gamma(group, sigma: float):
    """Printed medium-band scaling constants; ``None`` where no operator is printed."""
    group = SymmetryGroup.parse(group)
    s = sigma
    if group is SymmetryGroup.SOeven:
        return (1 - s) * cos((1 - s) / 2 - (pi + 1) / 4) + 2 * (sin(s / 2 - (pi + 1) / 4) + sin(s / 2 + (pi - 1) / 4))
    if group is SymmetryGroup.SOodd:
        return 3 * (1 - s) * cos((s - 1) / 2 - (pi - 1) / 4) + 2 * sin(s / 2 + (pi - 1) / 4) \
            + 2 * sin(s / 2 - (pi + 1) / 4)
    return None
