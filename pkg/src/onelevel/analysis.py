"""Infima, rank bounds, sigma sweeps and reconstruction of the test function.

The infimum of ``int phi W / phi(0)`` over admissible ``phi`` with
``supp phi^ in [-2 sigma, 2 sigma]`` equals ``1 / <1, g>``, where ``g`` solves
``(I + K) g = 1``.  The optimal ``phi`` is recovered as ``phi = h**2`` with
``h`` the inverse Fourier transform of ``g``, and ``phi^ = g * g``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Union

import numpy as np

from . import closedform as cf
from . import fredholm as fr
from .symmetry import SymmetryGroup, kernel_spec

DEFAULT_N = 2000
_RESIDUAL_POINTS = 101
_MONOTONE_TOL = {"ClosedForm": 1e-6, "Nystrom": 1e-3}


class Method(enum.Enum):
    ClosedForm = "closed"
    Nystrom = "nystrom"

    @classmethod
    def parse(cls, text) -> "Method":
        if isinstance(text, cls):
            return text
        key = str(text).strip().lower()
        for m in cls:
            if key in (m.value, m.name.lower()):
                return m
        raise ValueError(f"unknown method {text!r} (expected closed or nystrom)")


@dataclass(frozen=True)
class InfimumResult:
    group: SymmetryGroup
    sigma: float
    method: Method
    value: float
    inner_product: float
    residual: float


@dataclass(frozen=True)
class RankBoundReport:
    g_bound: float
    p0_lower: float
    pm_upper: tuple


@dataclass(frozen=True)
class SweepRow:
    sigma: float
    optimal_inf: float
    naive_bound: float
    improvement: float
    method: str
    residual: float


@dataclass(frozen=True)
class SweepResult:
    rows: tuple
    monotone: bool
    tolerance: float
    worst_step: float  # largest optimal_inf[i+1] - optimal_inf[i]

    def __iter__(self):
        return iter(self.rows)

    def __len__(self):
        return len(self.rows)

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(r, name) for r in self.rows])


def closed_form_residual(g: cf.PiecewiseTrig, points: int = _RESIDUAL_POINTS) -> float:
    xs = np.linspace(-g.sigma, g.sigma, points)
    return float(np.max(np.abs(cf.apply_operator_exact(g.group, g, xs) - 1.0)))


def solve_g(group, sigma: float, method="closed", n: int = DEFAULT_N):
    method = Method.parse(method)
    if method is Method.ClosedForm:
        return cf.closed_form_g(group, sigma)
    return fr.nystrom_solve(group, sigma, n)


def inner_product(g) -> float:
    """``<1, g>`` by exact integration or the trapezoid rule."""
    if isinstance(g, cf.PiecewiseTrig):
        return cf.exact_integral(g, -g.sigma, g.sigma)
    return fr.integral(g)


def infimum(group, sigma: float, method="closed", n: int = DEFAULT_N) -> InfimumResult:
    group = SymmetryGroup.parse(group)
    method = Method.parse(method)
    g = solve_g(group, sigma, method, n)
    if method is Method.ClosedForm:
        residual = closed_form_residual(g)
    else:
        residual = fr.residual_report(group, g).sup_residual
    ip = inner_product(g)
    if not ip > 0:
        raise ArithmeticError(f"<1, g> = {ip} is not positive for {group} at sigma={sigma}")
    return InfimumResult(group, float(sigma), method, 1.0 / ip, ip, residual)


def naive_bound(group, sigma: float) -> float:
    """Exact value of ``int phi^ W^`` for the triangle pair, ``s = 2 sigma``.

    ``phi^`` is the triangle of height ``1/s`` on ``[-s, s]``, so the bound is
    ``1/s + alpha + beta * int_{-1}^{1} phi^``.
    """
    alpha, beta = kernel_spec(group)
    if not sigma > 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    s = 2.0 * sigma
    mass = 1.0 if s <= 1 else 2 / s - 1 / s**2
    return 1 / s + alpha + beta * mass


def rank_bounds(group, sigma: float, method="closed", n: int = DEFAULT_N) -> RankBoundReport:
    g = infimum(group, sigma, method, n).value
    return RankBoundReport(g, 1.0 - g, tuple((m, g / m) for m in range(1, 6)))


def soodd_from_sp(g_sp):
    """Turn the symplectic optimum into the SO(odd) optimum at the same sigma."""
    ip = inner_product(g_sp)
    if abs(1.0 + ip) < 1e-14:
        raise ArithmeticError("1 + <1, g> vanishes")
    if isinstance(g_sp, cf.PiecewiseTrig):
        if g_sp.group is not SymmetryGroup.Sp:
            raise ValueError(f"expected an Sp solution, got {g_sp.group}")
        return g_sp.scaled(1.0 / (1.0 + ip)).with_group(SymmetryGroup.SOodd)
    return fr.GridFunction(g_sp.grid, g_sp.values / (1.0 + ip))


def _exp_integral(nu, a: float, b: float):
    """``int_a^b exp(i nu t) dt`` without cancellation for small ``nu``."""
    half = 0.5 * (b - a)
    return (b - a) * np.exp(1j * nu * 0.5 * (a + b)) * np.sinc(nu * half / np.pi)


def _cos_integral(nu, r, a: float, b: float):
    """``int_a^b cos(nu t + r) dt``, stable as ``nu -> 0``."""
    half = 0.5 * (b - a)
    return (b - a) * np.cos(nu * 0.5 * (a + b) + r) * np.sinc(nu * half / np.pi)


def _inverse_transform(g, xs: np.ndarray) -> np.ndarray:
    """``h(x) = int g(xi) exp(2 pi i x xi) d xi`` as a complex array."""
    k = 2.0 * np.pi * xs
    if isinstance(g, fr.GridFunction):
        w = g.grid.weights * g.values
        return np.exp(1j * np.outer(k, g.nodes)) @ w
    h = np.zeros_like(k, dtype=complex)
    for seg in g.segments:
        for amp, omega, phase in seg.terms:
            # positive half uses cos(omega t + phase), the mirror half cos(-omega t + phase)
            for w, a, b in ((omega, seg.lo, seg.hi), (-omega, -seg.hi, -seg.lo)):
                h += 0.5 * amp * (np.exp(1j * phase) * _exp_integral(k + w, a, b)
                                  + np.exp(-1j * phase) * _exp_integral(k - w, a, b))
    return h


def phi_from_g(g, xs) -> list:
    """Samples ``(x, phi(x))`` of ``phi = h**2``."""
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    h = _inverse_transform(g, xs)
    if isinstance(g, fr.GridFunction):
        tol = 1e-10 * max(1.0, float(np.sum(np.abs(g.grid.weights * g.values))))
    else:
        tol = 1e-10
    worst = float(np.max(np.abs(h.imag), initial=0.0))
    if worst > tol:
        raise ArithmeticError(f"inverse transform has imaginary part {worst:.3e}")
    return list(zip(xs.tolist(), (h.real**2).tolist()))


def _local_terms(g: cf.PiecewiseTrig, t_mid: float, shift: float = 0.0) -> list:
    """Signed-frequency terms of ``t -> g(t - shift)`` near ``t_mid``."""
    u = t_mid - shift
    if abs(u) > g.sigma:
        return []
    au = abs(u)
    for seg in g.segments:
        if seg.lo <= au <= seg.hi:
            sign = 1.0 if u >= 0 else -1.0
            return [(amp, sign * omega, phase - sign * omega * shift) for amp, omega, phase in seg.terms]
    return []


def _knots(g: cf.PiecewiseTrig) -> np.ndarray:
    pts = {0.0}
    for seg in g.segments:
        pts.update((seg.lo, seg.hi, -seg.lo, -seg.hi))
    return np.array(sorted(pts))


def phi_hat_from_g(g: cf.PiecewiseTrig, ys) -> list:
    """Samples ``(y, phi^(y))`` of the autocorrelation ``int g(t) g(t - y) dt``."""
    if not isinstance(g, cf.PiecewiseTrig):
        raise TypeError("phi_hat_from_g needs a closed-form PiecewiseTrig")
    ys = np.atleast_1d(np.asarray(ys, dtype=float))
    knots = _knots(g)
    out = []
    for y in ys:
        lo, hi = max(-g.sigma, y - g.sigma), min(g.sigma, y + g.sigma)
        if not lo < hi:
            out.append((float(y), 0.0))
            continue
        cuts = np.concatenate([knots, knots + y, [lo, hi]])
        cuts = np.unique(cuts[(cuts >= lo) & (cuts <= hi)])
        total = 0.0
        for a, b in zip(cuts[:-1], cuts[1:]):
            if b - a <= 0:
                continue
            mid = 0.5 * (a + b)
            for a1, w1, p1 in _local_terms(g, mid):
                for a2, w2, p2 in _local_terms(g, mid, y):
                    total += 0.5 * a1 * a2 * (_cos_integral(w1 + w2, p1 + p2, a, b)
                                              + _cos_integral(w1 - w2, p1 - p2, a, b))
        out.append((float(y), float(total)))
    return out


def sigma_grid(lo: float, hi: float, step: float) -> np.ndarray:
    if not 0 < lo < hi:
        raise ValueError(f"need 0 < lo < hi, got lo={lo}, hi={hi}")
    if not step > 0:
        raise ValueError(f"step must be positive, got {step}")
    count = int(np.floor((hi - lo) / step + 1e-9))
    return np.round(lo + step * np.arange(count + 1), 12)


def sweep(group, sigma_lo: float, sigma_hi: float, step: float, method="closed",
          n: int = DEFAULT_N) -> SweepResult:
    group = SymmetryGroup.parse(group)
    method = Method.parse(method)
    rows = []
    for sigma in sigma_grid(sigma_lo, sigma_hi, step):
        try:
            res = infimum(group, float(sigma), method, n)
        except Exception as exc:
            raise type(exc)(f"sweep failed at sigma={sigma}: {exc}") from exc
        naive = naive_bound(group, sigma)
        rows.append(SweepRow(float(sigma), res.value, naive, naive - res.value, method.value, res.residual))
    values = np.array([r.optimal_inf for r in rows])
    tol = _MONOTONE_TOL[method.name]
    worst = float(np.max(np.diff(values))) if len(values) > 1 else -np.inf
    return SweepResult(tuple(rows), bool(worst < tol), tol, worst)
