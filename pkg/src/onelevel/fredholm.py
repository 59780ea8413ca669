"""Nystrom discretization of ``(I + K) g = 1`` on ``[-sigma, sigma]``.

The integral operator ``(K g)(x) = int m(x - y) g(y) dy`` is replaced by the
composite trapezoid rule on a uniform grid with ``n`` subintervals.  The kernel
jump at ``|x - y| = 1`` gets no special treatment, so the method converges at
first order; accuracy is certified afterwards with :func:`residual_report`.
"""

from __future__ import annotations

import csv
import io
import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .symmetry import SymmetryGroup, kernel_spec


class SingularSystemError(RuntimeError):
    """The discretized operator could not be inverted reliably."""


@dataclass(frozen=True)
class Grid:
    sigma: float
    n: int

    def __post_init__(self):
        if not self.sigma > 0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")
        if int(self.n) != self.n or self.n < 2:
            raise ValueError(f"n must be an integer >= 2, got {self.n}")

    @property
    def nodes(self) -> np.ndarray:
        j = np.arange(self.n + 1)
        return -self.sigma + 2.0 * self.sigma * j / self.n

    @property
    def step(self) -> float:
        return 2.0 * self.sigma / self.n

    @property
    def weights(self) -> np.ndarray:
        w = np.full(self.n + 1, self.step)
        w[0] = w[-1] = 0.5 * self.step
        return w


@dataclass(frozen=True)
class GridFunction:
    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.shape != (self.grid.n + 1,):
            raise ValueError(f"expected {self.grid.n + 1} values, got shape {values.shape}")
        if not np.all(np.isfinite(values)):
            raise ValueError("grid function values must be finite")
        object.__setattr__(self, "values", values)

    @property
    def sigma(self) -> float:
        return self.grid.sigma

    @property
    def nodes(self) -> np.ndarray:
        return self.grid.nodes

    def __call__(self, x):
        """Piecewise-linear interpolation, zero outside the support."""
        x = np.asarray(x, dtype=float)
        out = np.interp(x, self.nodes, self.values)
        return np.where(np.abs(x) <= self.sigma, out, 0.0)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["x", "g"])
        for x, g in zip(self.nodes, self.values):
            writer.writerow([f"{x:.17g}", f"{g:.17g}"])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "GridFunction":
        rows = list(csv.reader(io.StringIO(text)))
        if not rows or rows[0] != ["x", "g"]:
            raise ValueError("expected CSV header 'x,g'")
        data = np.array([[float(a), float(b)] for a, b in rows[1:]])
        grid = Grid(sigma=float(data[-1, 0]), n=len(data) - 1)
        if not np.allclose(grid.nodes, data[:, 0], rtol=0, atol=1e-12 * max(1.0, grid.sigma)):
            raise ValueError("CSV nodes are not a uniform grid on [-sigma, sigma]")
        return cls(grid, data[:, 1])


@dataclass(frozen=True)
class ResidualReport:
    sup_residual: float
    integral: float
    symmetric_defect: float


def _kernel_matrix(group, nodes: np.ndarray) -> np.ndarray:
    alpha, beta = kernel_spec(group)
    diff = np.abs(nodes[:, None] - nodes[None, :])
    return alpha + beta * (diff <= 1.0)


def nystrom_matrix(group, grid: Grid) -> np.ndarray:
    """Dense matrix of ``I + K_h``: entry (i, j) is ``w_j m(x_i - x_j) + [i == j]``."""
    group = SymmetryGroup.parse(group)
    mat = _kernel_matrix(group, grid.nodes) * grid.weights[None, :]
    mat[np.diag_indices_from(mat)] += 1.0
    return mat


def nystrom_solve(group, sigma: float, n: int = 400) -> GridFunction:
    grid = Grid(float(sigma), int(n))
    mat = nystrom_matrix(group, grid)
    rhs = np.ones(grid.n + 1)
    with warnings.catch_warnings():
        warnings.simplefilter("error", scipy.linalg.LinAlgWarning)
        try:
            values = scipy.linalg.solve(mat, rhs, check_finite=True)
        except (np.linalg.LinAlgError, scipy.linalg.LinAlgWarning) as exc:
            raise SingularSystemError(
                f"Nystrom matrix for {SymmetryGroup.parse(group)} at sigma={sigma}, n={n} "
                f"is singular or ill-conditioned: {exc}"
            ) from exc
    if not np.all(np.isfinite(values)):
        raise SingularSystemError(f"Nystrom solve for {SymmetryGroup.parse(group)} at sigma={sigma}, n={n} "
                                  "produced non-finite values")
    return GridFunction(grid, values)


def apply_operator(group, g: GridFunction) -> GridFunction:
    """``(I + K_h) g`` at the nodes, with the same weights as :func:`nystrom_matrix`."""
    return GridFunction(g.grid, nystrom_matrix(group, g.grid) @ g.values)


def integral(g: GridFunction) -> float:
    """Trapezoid-rule value of the integral of ``g`` over ``[-sigma, sigma]``."""
    return float(g.grid.weights @ g.values)


def residual_report(group, g: GridFunction) -> ResidualReport:
    residual = apply_operator(group, g).values - 1.0
    return ResidualReport(
        sup_residual=float(np.max(np.abs(residual))),
        integral=integral(g),
        symmetric_defect=float(np.max(np.abs(g.values - g.values[::-1]))),
    )
