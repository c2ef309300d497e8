"""Integral and differential operators on divergences along mixture paths.

The integral operator maps D to t -> Integral_0^t D(P | R(s)) / s ds and
contracts any right-convex divergence toward zero; the differential
operator t -> t * d/dt D(P | R(t)) expands it. Iterated application of the
integral operator uses an interpolate-then-integrate pipeline so the cost
stays linear in the iteration depth instead of exponential.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass

import numpy as np

from .chebyshev import ChebyshevInterpolant
from .distributions import MixturePath
from .divergences import DivergenceFunctional, Orientation, path_derivative
from .errors import DomainError
from .quadrature import QuadratureConfig, cumulative_integral, integrate

__all__ = [
    "OperatorResult",
    "QuadratureConfig",
    "psi",
    "psi_inverse",
    "psi_iter",
    "psi_profile",
    "psi_roundtrip",
]


@dataclass(frozen=True)
class OperatorResult:
    value: float
    estimated_error: float
    evaluations: int


def _default(cfg: QuadratureConfig | None) -> QuadratureConfig:
    return QuadratureConfig() if cfg is None else cfg


def _check_position(t) -> float:
    t = float(t)
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"path position must lie in [0, 1], got {t!r}")
    return t


def _require_right_convex(D: DivergenceFunctional) -> None:
    if D.orientation is not Orientation.RIGHT_CONVEX:
        raise DomainError(
            f"divergence {D.identifier!r} is not right-convex; wrap it with "
            "swap_orientation first"
        )


def _path_integrand(D: DivergenceFunctional, path: MixturePath):
    p = path.start.masses

    def f(s: np.ndarray) -> np.ndarray:
        return D.evaluator(p, path.masses_at(s)) / s

    return f


def psi(
    D: DivergenceFunctional,
    path: MixturePath,
    t: float,
    cfg: QuadratureConfig | None = None,
) -> OperatorResult:
    """Integral operator: Integral_0^t D(start | R(s)) / s ds.

    The integrand extends continuously by 0 at s = 0 because both D and
    its path derivative vanish there; the quadrature rule only samples
    interior points, so no special casing is needed beyond the exact
    short-circuits for t = 0 and a constant path.
    """
    cfg = _default(cfg)
    _require_right_convex(D)
    t = _check_position(t)
    if t == 0.0 or path.is_constant:
        return OperatorResult(0.0, 0.0, 0)
    value, err, evals = integrate(_path_integrand(D, path), 0.0, t, cfg)
    return OperatorResult(float(value), float(err), evals)


def psi_profile(
    D: DivergenceFunctional,
    path: MixturePath,
    t_grid,
    cfg: QuadratureConfig | None = None,
) -> np.ndarray:
    """Integral-operator values on a whole grid, sharing the quadrature work.

    The grid may be unsorted and contain duplicates; values come back in
    the given order.
    """
    cfg = _default(cfg)
    _require_right_convex(D)
    grid = np.asarray(t_grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise DomainError("t_grid must be a nonempty 1-d array")
    if not np.all(np.isfinite(grid)) or np.any(grid < 0.0) or np.any(grid > 1.0):
        raise DomainError("t_grid values must lie in [0, 1]")
    if path.is_constant:
        return np.zeros_like(grid)
    distinct, inverse = np.unique(grid, return_inverse=True)
    at_distinct = _integrate_from_zero(_path_integrand(D, path), distinct, cfg)
    return at_distinct[inverse]


def _integrate_from_zero(f, points: np.ndarray, cfg: QuadratureConfig) -> np.ndarray:
    """Cumulative integrals of f from 0 to each of the sorted points."""
    if points[0] == 0.0:
        if points.size == 1:
            return np.zeros(1)
        values, _, _ = cumulative_integral(f, points, cfg)
        return values
    edges = np.concatenate([[0.0], points])
    values, _, _ = cumulative_integral(f, edges, cfg)
    return values[1:]


def psi_inverse(D: DivergenceFunctional, path: MixturePath, t: float) -> float:
    """Differential operator: t * d/dt D(start | R(t)); exactly 0 at t = 0."""
    t = _check_position(t)
    if t == 0.0 or path.is_constant:
        return 0.0
    return t * path_derivative(D, path, t)


# Level values inside psi_iter are integrated more tightly than the user
# asked so that interpolation residuals measured against them can actually
# reach cfg.abs_tol instead of plateauing on quadrature noise.
def _tightened(cfg: QuadratureConfig) -> QuadratureConfig:
    return QuadratureConfig(
        rel_tol=min(cfg.rel_tol, 1e-12),
        abs_tol=min(cfg.abs_tol, 1e-15),
        max_subdivisions=cfg.max_subdivisions,
    )


def psi_iter(
    D: DivergenceFunctional,
    k,
    path: MixturePath,
    t_grid,
    cfg: QuadratureConfig | None = None,
) -> np.ndarray:
    """Iterated integral operator: rows are levels 0..k over the grid.

    Level 0 is D itself evaluated along the path. Each further level fits
    a Chebyshev interpolant to the previous level (node count doubling
    until the residual at fresh nodes drops below cfg.abs_tol) and then
    integrates interpolant(s)/s cumulatively. Rows are nonincreasing in
    the level at every grid point.
    """
    cfg = _default(cfg)
    try:
        k = operator.index(k)
    except TypeError:
        raise DomainError(f"iteration depth must be an integer, got {k!r}") from None
    if k < 0:
        raise DomainError(f"iteration depth must be nonnegative, got {k}")
    grid = np.asarray(t_grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise DomainError("t_grid must be a nonempty 1-d array")
    if not np.all(np.isfinite(grid)) or np.any(grid < 0.0) or np.any(grid > 1.0):
        raise DomainError("t_grid values must lie in [0, 1]")

    rows = np.zeros((k + 1, grid.size))
    if path.is_constant:
        return rows
    p = path.start.masses
    rows[0] = D.evaluator(p, path.masses_at(grid))
    if k == 0:
        return rows
    _require_right_convex(D)

    tight = _tightened(cfg)
    distinct, inverse = np.unique(grid, return_inverse=True)

    def level_zero(s: np.ndarray) -> np.ndarray:
        return D.evaluator(p, path.masses_at(s))

    interp, _, _ = ChebyshevInterpolant.fit_adaptive(level_zero, cfg.abs_tol)
    for level in range(1, k + 1):
        def ratio(s: np.ndarray, c=interp) -> np.ndarray:
            return c(s) / s

        rows[level] = _integrate_from_zero(ratio, distinct, tight)[inverse]
        if level == k:
            break

        def lifted(nodes: np.ndarray, g=ratio) -> np.ndarray:
            return _integrate_from_zero(g, nodes, tight)

        interp, _, _ = ChebyshevInterpolant.fit_adaptive(lifted, cfg.abs_tol)
    return rows


def psi_roundtrip(
    D: DivergenceFunctional,
    path: MixturePath,
    t: float,
    cfg: QuadratureConfig | None = None,
) -> tuple[float, float]:
    """Apply the two operators in both orders at t; each should give back
    D(start | R(t)).

    The first component differentiates the numerically integrated operator
    with a fourth-order stencil; the second integrates the differential
    operator. Both are computed with internally tightened quadrature so the
    stencil division does not amplify integration noise past the 1e-6
    scale.
    """
    cfg = _default(cfg)
    t = float(t)
    if not 0.0 < t <= 1.0:
        raise DomainError(f"roundtrip position must lie in (0, 1], got {t!r}")
    if path.is_constant:
        return (0.0, 0.0)
    _require_right_convex(D)
    if not D.differentiable:
        raise DomainError(f"divergence {D.identifier!r} is not differentiable")

    tight = QuadratureConfig(
        rel_tol=1e-13, abs_tol=1e-14, max_subdivisions=max(cfg.max_subdivisions, 2000)
    )
    integrand = _path_integrand(D, path)

    def big_psi(s: float) -> float:
        value, _, _ = integrate(integrand, 0.0, s, tight)
        return value

    h = 4e-6 * max(t, 0.1)
    if t - 2.0 * h >= 0.0 and t + 2.0 * h <= 1.0:
        deriv = (
            big_psi(t - 2.0 * h)
            - 8.0 * big_psi(t - h)
            + 8.0 * big_psi(t + h)
            - big_psi(t + 2.0 * h)
        ) / (12.0 * h)
    elif t - 2.0 * h < 0.0:
        deriv = (
            -25.0 * big_psi(t)
            + 48.0 * big_psi(t + h)
            - 36.0 * big_psi(t + 2.0 * h)
            + 16.0 * big_psi(t + 3.0 * h)
            - 3.0 * big_psi(t + 4.0 * h)
        ) / (12.0 * h)
    else:
        deriv = (
            25.0 * big_psi(t)
            - 48.0 * big_psi(t - h)
            + 36.0 * big_psi(t - 2.0 * h)
            - 16.0 * big_psi(t - 3.0 * h)
            + 3.0 * big_psi(t - 4.0 * h)
        ) / (12.0 * h)
    differentiated_integral = t * deriv

    def inverse_over_s(s: np.ndarray) -> np.ndarray:
        return np.array([psi_inverse(D, path, si) / si for si in s])

    integrated_derivative, _, _ = integrate(inverse_over_s, 0.0, t, tight)
    return (float(differentiated_integral), float(integrated_derivative))
