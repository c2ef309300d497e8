"""Chebyshev-Lobatto interpolation on [0, 1] with adaptive degree doubling."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DomainError, ToleranceError


def lobatto_nodes(n: int) -> np.ndarray:
    """The n+1 Chebyshev extreme points mapped to [0, 1], ascending.

    Computed as sin^2(j*pi/(2n)) so that the node set for 2n contains the
    node set for n bitwise, which lets the adaptive fit reuse every previous
    function evaluation.
    """
    if n < 1:
        raise DomainError(f"node count parameter must be >= 1, got {n}")
    angles = np.arange(n + 1) * (np.pi / (2 * n))
    return np.sin(angles) ** 2


def _bary_weights(n: int) -> np.ndarray:
    w = np.ones(n + 1)
    w[1::2] = -1.0
    w[0] *= 0.5
    w[-1] *= 0.5
    return w


@dataclass(frozen=True)
class ChebyshevInterpolant:
    """Barycentric interpolant through function values at Lobatto nodes."""

    nodes: np.ndarray
    values: np.ndarray
    weights: np.ndarray = field(default=None)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        nodes = np.asarray(self.nodes, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if nodes.ndim != 1 or nodes.shape != values.shape or len(nodes) < 2:
            raise DomainError("nodes and values must be matching 1-d arrays")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "values", values)
        if self.weights is None:
            object.__setattr__(self, "weights", _bary_weights(len(nodes) - 1))

    def __call__(self, x: float | np.ndarray) -> float | np.ndarray:
        x_arr = np.atleast_1d(np.asarray(x, dtype=float))
        diff = x_arr[:, None] - self.nodes[None, :]
        hit_row, hit_col = np.nonzero(diff == 0.0)
        with np.errstate(divide="ignore", invalid="ignore"):
            inv = self.weights / diff
            # Row-wise reductions rather than a matvec so that scalar and
            # batched calls reduce in the same order and agree bitwise.
            out = (inv * self.values).sum(axis=1) / inv.sum(axis=1)
        out[hit_row] = self.values[hit_col]
        if np.ndim(x) == 0:
            return float(out[0])
        return out

    @classmethod
    def fit_adaptive(
        cls,
        f: Callable[[np.ndarray], np.ndarray],
        target: float,
        max_nodes: int = 2**14,
        initial: int = 16,
    ) -> tuple["ChebyshevInterpolant", float, int]:
        """Fit f on [0, 1], doubling the node count until the residual at the
        newly introduced nodes drops to ``target``.

        Returns (interpolant, achieved_residual, function_evaluations).  The
        returned interpolant is the fine one, so its own nodes carry exact
        function values.  Raises ToleranceError if the residual still exceeds
        the target at ``max_nodes`` intervals.
        """
        if not (target > 0.0 and np.isfinite(target)):
            raise DomainError(f"residual target must be positive, got {target}")
        n = initial
        nodes = lobatto_nodes(n)
        vals = np.asarray(f(nodes), dtype=float)
        neval = len(nodes)
        while True:
            fine_nodes = lobatto_nodes(2 * n)
            new_nodes = fine_nodes[1::2]
            new_vals = np.asarray(f(new_nodes), dtype=float)
            neval += len(new_nodes)
            coarse = cls(nodes, vals)
            residual = float(np.max(np.abs(coarse(new_nodes) - new_vals)))
            merged = np.empty(2 * n + 1)
            merged[::2] = vals
            merged[1::2] = new_vals
            n, nodes, vals = 2 * n, fine_nodes, merged
            if not np.all(np.isfinite(vals)):
                raise DomainError("function returned a non-finite value")
            if residual <= target:
                return cls(nodes, vals), residual, neval
            if n >= max_nodes:
                raise ToleranceError(
                    f"interpolation residual {residual:.3e} still above "
                    f"{target:.3e} at {n} intervals"
                )
