"""Exact piecewise-trigonometric optimal functions for small support.

A :class:`PiecewiseTrig` stores ``g`` on ``[0, sigma]`` as abutting segments,
each a sum of ``amplitude * cos(omega * x + phase)`` terms, and extends it
evenly to ``[-sigma, 0)``.  Everything here (evaluation, integration, the
action of ``I + K``) is done with closed-form antiderivatives, so residuals
measure the construction and not a quadrature rule.

Coefficients are always solved from small linear systems at runtime; the
normalization constant is ``1 / ((I + K) g~)(0)`` computed exactly.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
import scipy.linalg

from . import reduction
from .symmetry import SymmetryGroup, kernel_spec

SQRT2 = math.sqrt(2.0)
ALPHA1 = 0.5 * math.sqrt((3.0 + math.sqrt(5.0)) / 2.0)
ALPHA2 = 0.5 * math.sqrt((3.0 - math.sqrt(5.0)) / 2.0)

_DET_TOL = 1e-12
_CONTINUITY_TOL = 1e-10
_EDGE_TOL = 1e-12


class RangeError(ValueError):
    """Requested (group, sigma) is outside a construction's range."""


class CoefficientError(RuntimeError):
    """A coefficient system was numerically singular."""


class TrigTerm(NamedTuple):
    """``amplitude * cos(omega * x + phase)``."""

    amplitude: float
    omega: float
    phase: float

    @classmethod
    def constant(cls, value: float) -> "TrigTerm":
        return cls(float(value), 0.0, 0.0)

    @classmethod
    def sine(cls, amplitude: float, omega: float, phase: float = 0.0) -> "TrigTerm":
        """``amplitude * sin(omega * x + phase)`` in cosine form."""
        return cls(amplitude, omega, phase - math.pi / 2)

    def __call__(self, x):
        return self.amplitude * np.cos(self.omega * np.asarray(x, dtype=float) + self.phase)

    def primitive(self, x):
        x = np.asarray(x, dtype=float)
        if self.omega == 0.0:
            return self.amplitude * math.cos(self.phase) * x
        return self.amplitude / self.omega * np.sin(self.omega * x + self.phase)

    def derivative(self, order: int = 1) -> "TrigTerm":
        if order == 0:
            return self
        if self.omega == 0.0:
            return TrigTerm(0.0, 0.0, 0.0)
        return TrigTerm(self.amplitude * self.omega**order, self.omega, self.phase + order * math.pi / 2)

    def shifted(self, d: float) -> "TrigTerm":
        """The term as a function of ``x`` after substituting ``x + d``."""
        return TrigTerm(self.amplitude, self.omega, self.phase + self.omega * d)

    def scaled(self, c: float) -> "TrigTerm":
        return TrigTerm(c * self.amplitude, self.omega, self.phase)


@dataclass(frozen=True)
class Segment:
    lo: float
    hi: float
    terms: tuple

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"segment needs lo < hi, got [{self.lo}, {self.hi}]")
        object.__setattr__(self, "terms", tuple(TrigTerm(*map(float, t)) for t in self.terms))

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        for term in self.terms:
            out = out + term(x)
        return out

    def integral(self, a: float, b: float) -> float:
        return float(sum(term.primitive(b) - term.primitive(a) for term in self.terms))

    def derivative(self, order: int = 1) -> tuple:
        return tuple(t.derivative(order) for t in self.terms)


@dataclass(frozen=True)
class PiecewiseTrig:
    sigma: float
    group: SymmetryGroup
    segments: tuple
    coefficients: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "group", SymmetryGroup.parse(self.group))
        object.__setattr__(self, "segments", tuple(self.segments))
        if not self.sigma > 0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")
        if not self.segments:
            raise ValueError("need at least one segment")
        tol = _EDGE_TOL * max(1.0, self.sigma)
        if abs(self.segments[0].lo) > tol or abs(self.segments[-1].hi - self.sigma) > tol:
            raise ValueError("segments must tile [0, sigma]")
        for left, right in zip(self.segments, self.segments[1:]):
            if abs(left.hi - right.lo) > tol:
                raise ValueError(f"gap or overlap at {left.hi} / {right.lo}")

    @property
    def breakpoints(self) -> np.ndarray:
        """Internal breakpoints in ``(0, sigma)``."""
        return np.array([s.hi for s in self.segments[:-1]])

    def continuity_defect(self) -> float:
        return max((abs(float(a(a.hi)) - float(b(a.hi))) for a, b in zip(self.segments, self.segments[1:])),
                   default=0.0)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        ax = np.abs(x)
        out = np.zeros_like(ax)
        for i, seg in enumerate(self.segments):
            last = i == len(self.segments) - 1
            mask = (ax >= seg.lo) & ((ax <= seg.hi) if last else (ax < seg.hi))
            if np.any(mask):
                out = np.where(mask, seg(ax), out)
        return out if out.ndim else float(out)

    def scaled(self, c: float) -> "PiecewiseTrig":
        segs = [Segment(s.lo, s.hi, [t.scaled(c) for t in s.terms]) for s in self.segments]
        return PiecewiseTrig(self.sigma, self.group, segs, dict(self.coefficients))

    def with_group(self, group) -> "PiecewiseTrig":
        return PiecewiseTrig(self.sigma, group, self.segments, dict(self.coefficients))

    def _primitive_pos(self, x: float) -> float:
        # integral of g over [0, x] for 0 <= x <= sigma
        total = 0.0
        for seg in self.segments:
            if x <= seg.lo:
                break
            total += seg.integral(seg.lo, min(x, seg.hi))
        return total

    def primitive(self, x: float) -> float:
        """Odd antiderivative ``G`` with ``G(0) = 0``, constant beyond the support."""
        x = min(max(float(x), -self.sigma), self.sigma)
        return self._primitive_pos(abs(x)) * (1.0 if x >= 0 else -1.0)

    def to_dict(self) -> dict:
        return {
            "group": self.group.value,
            "sigma": self.sigma,
            "segments": [
                {"lo": s.lo, "hi": s.hi,
                 "terms": [{"amplitude": t.amplitude, "omega": t.omega, "phase": t.phase} for t in s.terms]}
                for s in self.segments
            ],
        }

    def to_json(self) -> str:
        # repr of a float round-trips, so the default encoder keeps full precision
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, data: dict) -> "PiecewiseTrig":
        segs = [Segment(s["lo"], s["hi"], [(t["amplitude"], t["omega"], t["phase"]) for t in s["terms"]])
                for s in data["segments"]]
        return cls(float(data["sigma"]), data["group"], segs)

    @classmethod
    def from_json(cls, text: str) -> "PiecewiseTrig":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class CoefficientSolve:
    matrix: np.ndarray
    rhs: np.ndarray
    solution: np.ndarray
    determinant: float


def eval(g: PiecewiseTrig, x):  # noqa: A001 - public name from the interface
    return g(x)


def exact_integral(g: PiecewiseTrig, a: float, b: float) -> float:
    if a > b:
        raise ValueError(f"need a <= b, got [{a}, {b}]")
    return g.primitive(b) - g.primitive(a)


def apply_operator_exact(group, g: PiecewiseTrig, x) -> float:
    """``g(x) + alpha * int g + beta * int_{x-1}^{x+1} g`` with exact integrals."""
    alpha, beta = kernel_spec(group)
    s = g.sigma
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(np.abs(xs) > s * (1 + 1e-12)):
        raise ValueError(f"x must lie in [-sigma, sigma] = [{-s}, {s}]")
    total = exact_integral(g, -s, s)
    out = []
    for xi in xs:
        local = exact_integral(g, max(xi - 1.0, -s), min(xi + 1.0, s)) if beta else 0.0
        out.append(float(g(xi)) + alpha * total + beta * local)
    return out[0] if np.ndim(x) == 0 else np.array(out)


def solve_coefficients(matrix, rhs, sigma: float) -> CoefficientSolve:
    matrix = np.asarray(matrix, dtype=float)
    rhs = np.asarray(rhs, dtype=float)
    det = float(np.linalg.det(matrix))
    if abs(det) < _DET_TOL:
        raise CoefficientError(f"coefficient system singular at sigma={sigma} (det={det:.3e})")
    return CoefficientSolve(matrix, rhs, scipy.linalg.solve(matrix, rhs), det)


def _check_sigma(sigma, lo, hi, name, lo_closed=False, hi_closed=False):
    ok_lo = sigma >= lo if lo_closed else sigma > lo
    ok_hi = sigma <= hi if hi_closed else sigma < hi
    if not (ok_lo and ok_hi):
        lb = "[" if lo_closed else "("
        rb = "]" if hi_closed else ")"
        raise RangeError(f"{name} needs sigma in {lb}{lo}, {hi}{rb}, got {sigma}")


def _non_orthogonal(group) -> SymmetryGroup:
    group = SymmetryGroup.parse(group)
    if group is SymmetryGroup.O:
        raise RangeError("the orthogonal group is handled by orthogonal_g")
    return group


def _build(sigma, group, pieces, coefficients=None) -> PiecewiseTrig:
    # drop zero-length pieces (boundary sigma values)
    tol = _EDGE_TOL * max(1.0, sigma)
    segs = [Segment(lo, hi, terms) for lo, hi, terms in pieces if hi - lo > tol]
    return PiecewiseTrig(sigma, group, segs, dict(coefficients or {}))


def _normalize(g: PiecewiseTrig) -> tuple:
    gamma = apply_operator_exact(g.group, g, 0.0)
    return g.scaled(1.0 / gamma), gamma


def _finish(g: PiecewiseTrig) -> PiecewiseTrig:
    defect = g.continuity_defect()
    if defect > _CONTINUITY_TOL * max(1.0, float(np.max(np.abs(g(np.linspace(0, g.sigma, 11)))))):
        raise CoefficientError(f"continuity defect {defect:.3e} at sigma={g.sigma}")
    return g


def orthogonal_g(sigma: float) -> PiecewiseTrig:
    if not sigma > 0:
        raise RangeError(f"sigma must be positive, got {sigma}")
    return PiecewiseTrig(sigma, SymmetryGroup.O, [Segment(0.0, sigma, [TrigTerm.constant(1.0 / (1.0 + sigma))])])


def tiny_g(group, sigma: float) -> PiecewiseTrig:
    """Constant solution for ``sigma <= 1/2``, where ``m`` is constant on ``[-2 sigma, 2 sigma]``."""
    group = SymmetryGroup.parse(group)
    _check_sigma(sigma, 0.0, 0.5, "tiny_g", hi_closed=True)
    alpha, beta = kernel_spec(group)
    value = 1.0 / (1.0 + 2.0 * sigma * (alpha + beta))
    return PiecewiseTrig(sigma, group, [Segment(0.0, sigma, [TrigTerm.constant(value)])])


def _cosine_piece(beta: float) -> TrigTerm:
    """``cos(beta x - (pi + 2 beta)/4)`` written with a nonnegative frequency."""
    phase = -(math.pi + 2.0 * beta) / 4.0
    if beta >= 0:
        return TrigTerm(1.0, beta, phase)
    # cos(-|b| x + p) = cos(|b| x - p)
    return TrigTerm(1.0, -beta, -phase)


def medium_g(group, sigma: float) -> PiecewiseTrig:
    group = _non_orthogonal(group)
    _check_sigma(sigma, 0.5, 1.0, "medium_g")
    beta = kernel_spec(group).beta
    f = _cosine_piece(beta)
    const = float(f(1.0 - sigma))
    raw = _build(sigma, group, [(0.0, 1.0 - sigma, [TrigTerm.constant(const)]), (1.0 - sigma, sigma, [f])])
    g, gamma = _normalize(raw)
    g.coefficients.update(C=const / gamma, gamma=gamma)
    return _finish(g)


_UNIT_NORMALIZERS = {
    SymmetryGroup.SOeven: SQRT2 * math.sin(0.25) + math.sin((math.pi + 1) / 4),
    SymmetryGroup.SOodd: 3 * math.sin((math.pi + 1) / 4) - 2 * math.sin((math.pi - 1) / 4),
    SymmetryGroup.Sp: 2 * math.sin((math.pi - 1) / 4) - math.cos((math.pi - 1) / 4),
}


def unit_g(group) -> PiecewiseTrig:
    """Exact solution at ``sigma = 1``: a single shifted cosine over the normalizer."""
    group = _non_orthogonal(group)
    f = _cosine_piece(kernel_spec(group).beta)
    norm = _UNIT_NORMALIZERS[group]
    g = PiecewiseTrig(1.0, group, [Segment(0.0, 1.0, [f.scaled(1.0 / norm)])], {"gamma": norm})
    return _finish(g)


def _band15_system(beta: float, sigma: float):
    a = (sigma - 1.0) / SQRT2
    sgn = 1.0 if beta > 0 else -1.0
    f = _cosine_piece(beta)
    left, right = float(f(sigma - 1.0)), float(f(2.0 - sigma))
    ca, sa = math.cos(a), math.sin(a)
    matrix = [
        [ca, sa, 0.0],
        [ca, 0.0, 0.0],
        [sgn * sa / SQRT2 + ca, sgn * (SQRT2 - ca / SQRT2), -1.0],
    ]
    return matrix, [left, left, left - right]


def band15_g(group, sigma: float) -> PiecewiseTrig:
    group = _non_orthogonal(group)
    _check_sigma(sigma, 1.0, 1.5, "band15_g", hi_closed=True)
    beta = kernel_spec(group).beta
    sgn = 1.0 if beta > 0 else -1.0
    matrix, rhs = _band15_system(beta, sigma)
    sol = solve_coefficients(matrix, rhs, sigma)
    c1, c2, c3 = sol.solution
    w = 1.0 / SQRT2
    outer = [
        TrigTerm.sine(sgn * c1 * w, w, -w),          # (c1/sqrt2) sin((x-1)/sqrt2)
        TrigTerm(-sgn * c2 * w, w, -w),              # -(c2/sqrt2) cos((x-1)/sqrt2)
        TrigTerm.constant(c3),
    ]
    raw = _build(sigma, group, [
        (0.0, sigma - 1.0, [TrigTerm(c1, w, 0.0), TrigTerm.sine(c2, w)]),
        (sigma - 1.0, 2.0 - sigma, [_cosine_piece(beta)]),
        (2.0 - sigma, sigma, outer),
    ])
    g, gamma = _normalize(raw)
    g.coefficients.update(c1=c1, c2=c2, c3=c3, gamma=gamma, lam=1.0 / gamma, determinant=sol.determinant)
    return _finish(g)


def _expand_inner(outer_terms, j: int, which, sigma: float, beta: float) -> list:
    """Terms on inner interval ``j`` from the outer ones via the delay relations."""
    rule = reduction.inner_expansion(j, which, sigma, beta)
    if isinstance(rule, reduction.Reflection):
        raise AssertionError("expected an expansion, got a reflection")
    out = []
    for coef, order in rule:
        out += [t.derivative(order).shifted(float(j)).scaled(float(coef)) for t in outer_terms]
    return out


def c5_c7_ratio(alpha: float, beta: float) -> float:
    """Ratio ``c5/c4`` (or ``c7/c6``) fixing the outer four-term family."""
    return (-alpha**2 / beta + beta - alpha * math.sin(alpha)) / (alpha * math.cos(alpha))


def _band2_basis(beta: float, sigma: float) -> list:
    """Unnormalized four-segment pieces for unit values of c1, c3, c4, c6."""
    w = 1.0 / SQRT2
    lo1, hi1 = 0.0, 2.0 - sigma
    loj1, hij1 = 2.0 - sigma, sigma - 1.0
    lo0, hi0 = sigma - 1.0, 3.0 - sigma
    loj0, hij0 = 3.0 - sigma, sigma
    first, second = reduction.System.FirstSystem, reduction.System.SecondSystem

    def family(i_terms, j_terms):
        return [
            (lo1, hi1, _expand_inner(i_terms, 1, first, sigma, beta)),
            (loj1, hij1, _expand_inner(j_terms, 1, second, sigma, beta)),
            (lo0, hi0, i_terms),
            (loj0, hij0, j_terms),
        ]

    def outer_pair(alpha):
        # sin(alpha (x-1)) + r cos(alpha (x-1))
        r = c5_c7_ratio(alpha, beta)
        return [TrigTerm.sine(1.0, alpha, -alpha), TrigTerm(r, alpha, -alpha)]

    return [
        family([TrigTerm.sine(w, w, -w)], []),
        family([TrigTerm.constant(1.0)], []),
        family([], outer_pair(ALPHA1)),
        family([], outer_pair(ALPHA2)),
    ]


def _combine(sigma, group, basis, coeffs) -> PiecewiseTrig:
    pieces = []
    for idx in range(len(basis[0])):
        lo, hi, _ = basis[0][idx]
        terms = [t.scaled(c) for c, fam in zip(coeffs, basis) for t in fam[idx][2]]
        pieces.append((lo, hi, terms or [TrigTerm.constant(0.0)]))
    return _build(sigma, group, pieces)


def band2_g(group, sigma: float) -> PiecewiseTrig:
    group = _non_orthogonal(group)
    _check_sigma(sigma, 1.5, 2.0, "band2_g")
    beta = kernel_spec(group).beta
    basis = _band2_basis(beta, sigma)
    funcs = [_combine(sigma, group, basis, np.eye(4)[i]) for i in range(4)]

    def piece_value(fam, idx, x):
        return sum(float(t(x)) for t in fam[idx][2])

    knots = [(0, 1, 2.0 - sigma), (1, 2, sigma - 1.0), (2, 3, 3.0 - sigma)]
    matrix = [[piece_value(fam, a, x) - piece_value(fam, b, x) for fam in basis] for a, b, x in knots]
    matrix.append([apply_operator_exact(group, f, 0.0) for f in funcs])
    sol = solve_coefficients(matrix, [0.0, 0.0, 0.0, 1.0], sigma)
    g = _combine(sigma, group, basis, sol.solution)
    c1, c3, c4, c6 = sol.solution
    g.coefficients.update(
        c1=c1, c2=0.0, c3=c3, c4=c4, c5=c4 * c5_c7_ratio(ALPHA1, beta),
        c6=c6, c7=c6 * c5_c7_ratio(ALPHA2, beta), determinant=sol.determinant,
    )
    return _finish(g)


def closed_form_g(group, sigma: float) -> PiecewiseTrig:
    group = SymmetryGroup.parse(group)
    if not sigma > 0:
        raise RangeError(f"sigma must be positive, got {sigma}")
    if group is SymmetryGroup.O:
        return orthogonal_g(sigma)
    if sigma >= 2.0:
        raise RangeError(f"unsupported range, use nystrom_solve (group {group}, sigma={sigma})")
    if sigma <= 0.5:
        return tiny_g(group, sigma)
    if sigma < 1.0:
        return medium_g(group, sigma)
    if sigma == 1.0:
        return unit_g(group)
    if sigma <= 1.5:
        return band15_g(group, sigma)
    return band2_g(group, sigma)
