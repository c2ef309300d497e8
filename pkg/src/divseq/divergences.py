"""Divergence functionals over finite discrete distributions.

Ships five named divergences with hand-coded analytic path derivatives,
plus factories for generic f-divergences and Bregman divergences. A
functional knows its convexity orientation: right-convex means convex in
the second argument (the f-divergence family), left-convex means convex in
the first (the Bregman family). The swap adapter exchanges arguments and
flips the recorded orientation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional

import numpy as np

from .distributions import Distribution, MixturePath
from .errors import DomainError, SpecError

_EPS = np.finfo(float).eps

# Path-derivative callables take (path, t) and return d/dt of the
# functional evaluated with the path's start pinned in one slot and the
# moving mixture R(t) in the other.
PathDerivative = Callable[[MixturePath, float], float]


class Orientation(Enum):
    RIGHT_CONVEX = "right_convex"
    LEFT_CONVEX = "left_convex"


def _as_masses(x) -> np.ndarray:
    return np.asarray(getattr(x, "masses", x), dtype=np.float64)


@dataclass(frozen=True)
class DivergenceFunctional:
    """A divergence together with the metadata the operators need.

    ``evaluator`` maps two mass arrays to a value and broadcasts: either
    argument may be a single vector (n,) or a stack (m, n), reduction is
    over the last axis. Distribution objects are accepted in place of raw
    arrays. ``analytic_path_derivative`` gives d/dt of
    evaluator(start, R(t)); when None, callers fall back to finite
    differences.
    """

    identifier: str
    orientation: Orientation
    evaluator: Callable[..., np.ndarray]
    analytic_path_derivative: Optional[PathDerivative]
    differentiable: bool
    # Derivative with the moving point in the first slot instead, i.e.
    # d/dt evaluator(R(t), start). swap_orientation exchanges the two so
    # swapped functionals keep analytic derivatives.
    mirror_path_derivative: Optional[PathDerivative] = field(default=None, repr=False)


def evaluate(D: DivergenceFunctional, P, Q) -> float:
    """The divergence value D(P | Q); DomainError on support mismatch."""
    p = _as_masses(P)
    q = _as_masses(Q)
    if p.shape != q.shape:
        raise DomainError(
            f"support sizes differ: {p.shape[-1]} vs {q.shape[-1]}"
        )
    return float(D.evaluator(p, q))


# ---------------------------------------------------------------------------
# Named divergences.

def _lift(mass_fn):
    def evaluator(first, second):
        return mass_fn(_as_masses(first), _as_masses(second))

    return evaluator


def _kl_masses(p, q):
    return np.sum(p * np.log(p / q), axis=-1)


def _chi2_masses(p, q):
    return np.sum((q - p) ** 2 / q, axis=-1)


def _jeffreys_masses(p, q):
    return np.sum((p - q) * np.log(p / q), axis=-1)


def _hellinger2_masses(p, q):
    return 0.5 * np.sum((np.sqrt(q) - np.sqrt(p)) ** 2, axis=-1)


def _path_parts(path: MixturePath, t: float):
    p = path.start.masses
    delta = path.end.masses - p
    r = path.masses_at(np.array([float(t)]))[0]
    return p, delta, r


def _kl_deriv_moving_right(path, t):
    p, delta, r = _path_parts(path, t)
    return float(-np.sum(p * delta / r))


def _kl_deriv_moving_left(path, t):
    p, delta, r = _path_parts(path, t)
    return float(np.sum(delta * (1.0 + np.log(r / p))))


def _chi2_deriv_moving_right(path, t):
    p, delta, r = _path_parts(path, t)
    return float(np.sum(delta * (1.0 - (p / r) ** 2)))


def _chi2_deriv_moving_left(path, t):
    p, delta, r = _path_parts(path, t)
    return float(2.0 * np.sum(delta * (r - p) / p))


def _jeffreys_deriv(path, t):
    p, delta, r = _path_parts(path, t)
    return float(np.sum(delta * (1.0 + np.log(r / p))) - np.sum(p * delta / r))


def _hellinger2_deriv(path, t):
    p, delta, r = _path_parts(path, t)
    return float(0.5 * np.sum(delta * (1.0 - np.sqrt(p / r))))


_NAMED: dict[str, DivergenceFunctional] = {
    "kl": DivergenceFunctional(
        identifier="kl",
        orientation=Orientation.RIGHT_CONVEX,
        evaluator=_lift(_kl_masses),
        analytic_path_derivative=_kl_deriv_moving_right,
        differentiable=True,
        mirror_path_derivative=_kl_deriv_moving_left,
    ),
    "reverse_kl": DivergenceFunctional(
        identifier="reverse_kl",
        orientation=Orientation.RIGHT_CONVEX,
        evaluator=_lift(lambda p, q: _kl_masses(q, p)),
        analytic_path_derivative=_kl_deriv_moving_left,
        differentiable=True,
        mirror_path_derivative=_kl_deriv_moving_right,
    ),
    "chi2": DivergenceFunctional(
        identifier="chi2",
        orientation=Orientation.RIGHT_CONVEX,
        evaluator=_lift(_chi2_masses),
        analytic_path_derivative=_chi2_deriv_moving_right,
        differentiable=True,
        mirror_path_derivative=_chi2_deriv_moving_left,
    ),
    "jeffreys": DivergenceFunctional(
        identifier="jeffreys",
        orientation=Orientation.RIGHT_CONVEX,
        evaluator=_lift(_jeffreys_masses),
        analytic_path_derivative=_jeffreys_deriv,
        differentiable=True,
        mirror_path_derivative=_jeffreys_deriv,
    ),
    "hellinger2": DivergenceFunctional(
        identifier="hellinger2",
        orientation=Orientation.RIGHT_CONVEX,
        evaluator=_lift(_hellinger2_masses),
        analytic_path_derivative=_hellinger2_deriv,
        differentiable=True,
        mirror_path_derivative=_hellinger2_deriv,
    ),
}

NAMED_IDENTIFIERS = tuple(_NAMED)


def named_divergence(identifier: str) -> DivergenceFunctional:
    try:
        return _NAMED[identifier]
    except KeyError:
        raise DomainError(
            f"unknown divergence {identifier!r}; known: {', '.join(NAMED_IDENTIFIERS)}"
        ) from None


# ---------------------------------------------------------------------------
# Factories.

@dataclass(frozen=True)
class FDivergenceSpec:
    """Convex generator for Sum_i q_i f(p_i / q_i); f(1) must be 0.

    Both callables must accept ndarray arguments elementwise.
    """

    f: Callable[[np.ndarray], np.ndarray]
    f_prime: Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class BregmanSpec:
    """Differentiable strictly convex generator for the Bregman form
    Sum_i F(p_i) - F(q_i) - F'(q_i)(p_i - q_i)."""

    F: Callable[[np.ndarray], np.ndarray]
    F_prime: Callable[[np.ndarray], np.ndarray]


_CONVEXITY_GRID = np.logspace(np.log10(0.011), np.log10(95.0), 21)


def make_f_divergence(spec: FDivergenceSpec) -> DivergenceFunctional:
    """Build a right-convex functional from a convex generator.

    Raises SpecError if f(1) is not 0 within 1e-12 or midpoint convexity
    fails on a sampled grid.
    """
    f, fp = spec.f, spec.f_prime
    at_one = float(f(np.asarray(1.0)))
    if abs(at_one) > 1e-12:
        raise SpecError(f"f(1) must vanish, got {at_one!r}")
    a, b = np.meshgrid(_CONVEXITY_GRID, _CONVEXITY_GRID)
    fa, fb = f(a), f(b)
    slack = 1e-9 * (1.0 + np.abs(fa) + np.abs(fb))
    excess = f(0.5 * (a + b)) - 0.5 * (fa + fb)
    if np.any(excess > slack):
        raise SpecError(
            f"f fails midpoint convexity on the sampled grid by {float(excess.max()):.3e}"
        )

    def mass_fn(p, q):
        return np.sum(q * f(p / q), axis=-1)

    def deriv_moving_right(path, t):
        p, delta, r = _path_parts(path, t)
        u = p / r
        return float(np.sum(delta * (f(u) - u * fp(u))))

    def deriv_moving_left(path, t):
        p, delta, r = _path_parts(path, t)
        return float(np.sum(delta * fp(r / p)))

    return DivergenceFunctional(
        identifier="f_divergence",
        orientation=Orientation.RIGHT_CONVEX,
        evaluator=_lift(mass_fn),
        analytic_path_derivative=deriv_moving_right,
        differentiable=True,
        mirror_path_derivative=deriv_moving_left,
    )


def make_bregman(spec: BregmanSpec) -> DivergenceFunctional:
    """Build a left-convex Bregman functional.

    The generator pair is screened with the gradient inequality
    F(x) >= F(y) + F'(y)(x - y) on a sampled grid; violations raise
    SpecError. The result has no analytic path derivative, so
    path_derivative falls back to finite differences.
    """
    F, Fp = spec.F, spec.F_prime
    x, y = np.meshgrid(_CONVEXITY_GRID, _CONVEXITY_GRID)
    fx, fy = F(x), F(y)
    slack = 1e-9 * (1.0 + np.abs(fx) + np.abs(fy))
    shortfall = fy + Fp(y) * (x - y) - fx
    if np.any(shortfall > slack):
        raise SpecError(
            "generator fails the gradient inequality on the sampled grid "
            f"by {float(shortfall.max()):.3e}"
        )

    def mass_fn(p, q):
        return np.sum(F(p) - F(q) - Fp(q) * (p - q), axis=-1)

    return DivergenceFunctional(
        identifier="bregman",
        orientation=Orientation.LEFT_CONVEX,
        evaluator=_lift(mass_fn),
        analytic_path_derivative=None,
        differentiable=True,
        mirror_path_derivative=None,
    )


def swap_orientation(D: DivergenceFunctional) -> DivergenceFunctional:
    """The functional (P, Q) -> D(Q, P), with the orientation flipped."""
    flipped = (
        Orientation.LEFT_CONVEX
        if D.orientation is Orientation.RIGHT_CONVEX
        else Orientation.RIGHT_CONVEX
    )
    base = D.evaluator
    return DivergenceFunctional(
        identifier=f"swap({D.identifier})",
        orientation=flipped,
        evaluator=lambda first, second: base(second, first),
        analytic_path_derivative=D.mirror_path_derivative,
        differentiable=D.differentiable,
        mirror_path_derivative=D.analytic_path_derivative,
    )


# ---------------------------------------------------------------------------
# Path derivatives.

def _check_path_position(t: float) -> float:
    t = float(t)
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"path position must lie in [0, 1], got {t!r}")
    return t


def finite_difference_path_derivative(
    D: DivergenceFunctional, path: MixturePath, t: float
) -> float:
    """Second-order finite difference of t -> evaluator(start, R(t)).

    Central step h = cbrt(machine epsilon) * max(t, 0.1); one-sided
    three-point stencils take over when t is within h of 0 or 1.
    """
    t = _check_path_position(t)
    h = float(np.cbrt(_EPS)) * max(t, 0.1)
    if t - h >= 0.0 and t + h <= 1.0:
        pts = np.array([t - h, t + h])
        lo, hi = D.evaluator(path.start.masses, path.masses_at(pts))
        return float((hi - lo) / (2.0 * h))
    if t - h < 0.0:
        pts = np.array([t, t + h, t + 2.0 * h])
        g0, g1, g2 = D.evaluator(path.start.masses, path.masses_at(pts))
        return float((-3.0 * g0 + 4.0 * g1 - g2) / (2.0 * h))
    pts = np.array([t, t - h, t - 2.0 * h])
    g0, g1, g2 = D.evaluator(path.start.masses, path.masses_at(pts))
    return float((3.0 * g0 - 4.0 * g1 + g2) / (2.0 * h))


def path_derivative(D: DivergenceFunctional, path: MixturePath, t: float) -> float:
    """d/dt of evaluator(start, R(t)), analytic when available.

    Raises DomainError if D is not flagged differentiable or t is outside
    [0, 1].
    """
    if not D.differentiable:
        raise DomainError(f"divergence {D.identifier!r} is not differentiable")
    t = _check_path_position(t)
    if D.analytic_path_derivative is not None:
        return float(D.analytic_path_derivative(path, t))
    return finite_difference_path_derivative(D, path, t)
