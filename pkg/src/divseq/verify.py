"""Randomized property checks for the divergence operators.

Each check draws seeded random distribution pairs, evaluates one of the
structural guarantees the operators are supposed to satisfy (contraction
under the path integral, monotone iterated chains, domination by the scaled
path derivative, invariance under path reparametrization), and reports the
worst violation seen.  ``run_suite`` bundles the checks over a fixed roster
of divergences into a single deterministic report.
"""

from __future__ import annotations

import json
import math
import operator
from dataclasses import dataclass, replace

import numpy as np

from .distributions import MixturePath, mixture, new_distribution, random_distribution
from .divergences import (
    BregmanSpec,
    DivergenceFunctional,
    FDivergenceSpec,
    Orientation,
    make_bregman,
    make_f_divergence,
    named_divergence,
    swap_orientation,
)
from .errors import DomainError, ToleranceError
from .operators import psi, psi_inverse, psi_iter, psi_profile
from .sequences import pl, sl

__all__ = [
    "PropertyCheck",
    "VerificationReport",
    "check_derivative_dominates",
    "check_integral_contraction",
    "check_iterated_chain",
    "check_path_invariance",
    "run_suite",
]

_CONTRACTION_TOL = 1e-9
_CHAIN_TOL = 1e-6
_DOMINATES_TOL = 1e-9
_INVARIANCE_TOL = 1e-8

# Strict inequalities are only meaningful when the endpoints are genuinely
# distinct, so they are enforced with a small margin and only for pairs whose
# total variation distance clears a separation threshold.
_STRICT_MARGIN = 1e-12
_SEPARATION_TV = 0.01

_MIN_MASS = 0.01
_FIXED_GRID = np.linspace(0.0, 1.0, 11)


@dataclass(frozen=True)
class PropertyCheck:
    """Outcome of one property check on one divergence."""

    name: str
    paper_anchor: str
    instances: int
    worst_violation: float
    tolerance: float
    passed: bool

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "paper_anchor": self.paper_anchor,
            "instances": self.instances,
            "worst_violation": self.worst_violation,
            "tolerance": self.tolerance,
            "passed": self.passed,
        }


@dataclass(frozen=True)
class VerificationReport:
    """Aggregate of all property checks from one suite run."""

    seed: int
    checks: tuple[PropertyCheck, ...]
    all_passed: bool

    def to_json(self) -> str:
        payload = {
            "seed": self.seed,
            "checks": [check.to_dict() for check in self.checks],
            "all_passed": self.all_passed,
        }
        return json.dumps(payload)


def _sample_pair(rng: np.random.Generator):
    n = int(rng.integers(2, 11))
    start = random_distribution(n, seed=int(rng.integers(2**31)), min_mass=_MIN_MASS)
    end = random_distribution(n, seed=int(rng.integers(2**31)), min_mass=_MIN_MASS)
    return start, end


def _t_points(rng: np.random.Generator) -> np.ndarray:
    extra = rng.uniform(0.0, 1.0, size=2)
    return np.unique(np.concatenate([_FIXED_GRID, extra]))


def _is_separated(path: MixturePath) -> bool:
    tv = 0.5 * float(np.sum(np.abs(path.end.masses - path.start.masses)))
    return tv > _SEPARATION_TV


def _strict_increase_violation(values: np.ndarray, separated: bool) -> float:
    if not separated or values.size < 2:
        return 0.0
    smallest_step = float(np.min(np.diff(values)))
    return max(0.0, _STRICT_MARGIN - smallest_step)


def check_integral_contraction(
    D: DivergenceFunctional, instances: int, seed: int
) -> PropertyCheck:
    """Check psi[D] <= D, psi[D] >= 0, strict growth, and convexity of psi.

    Convexity is probed in the second argument: for a shared start point and a
    random mixture of two end points, psi at the mixed end must not exceed the
    mixture of the two psi values.
    """
    rng = np.random.default_rng(seed)
    worst = 0.0
    try:
        for _ in range(instances):
            start, end = _sample_pair(rng)
            path = MixturePath(start, end)
            ts = _t_points(rng)

            profile = psi_profile(D, path, ts)
            direct = np.asarray(D.evaluator(start.masses, path.masses_at(ts)))

            worst = max(worst, float(np.max(profile - direct)))
            worst = max(worst, float(np.max(-profile)))
            worst = max(
                worst, _strict_increase_violation(profile, _is_separated(path))
            )

            other = random_distribution(
                start.masses.size, seed=int(rng.integers(2**31)), min_mass=_MIN_MASS
            )
            lam = float(rng.uniform(0.05, 0.95))
            mixed = new_distribution(
                lam * end.masses + (1.0 - lam) * other.masses
            )
            at_end = profile[-1]
            at_other = psi(D, MixturePath(start, other), 1.0).value
            at_mixed = psi(D, MixturePath(start, mixed), 1.0).value
            worst = max(
                worst, at_mixed - (lam * at_end + (1.0 - lam) * at_other)
            )
    except ToleranceError:
        worst = math.inf
    return PropertyCheck(
        name=f"integral_contraction[{D.identifier}]",
        paper_anchor=(
            "0 <= psi[D](t) <= D(start, mix(t)) along mixture paths, strictly "
            "increasing in t for separated endpoints, and convex in the end point"
        ),
        instances=instances,
        worst_violation=worst,
        tolerance=_CONTRACTION_TOL,
        passed=worst <= _CONTRACTION_TOL,
    )


def check_iterated_chain(
    D: DivergenceFunctional, depth: int, instances: int, seed: int
) -> PropertyCheck:
    """Check that iterated averaging produces a nonincreasing chain of levels.

    Every level must stay nonnegative and strictly increasing in t, and each
    application of the operator must not increase the value at any t.  For the
    chi-square and Jeffreys divergences the levels are also compared against
    their closed-form polylogarithm expressions.
    """
    depth = operator.index(depth)
    if depth < 0:
        raise DomainError(f"depth must be nonnegative, got {depth}")
    rng = np.random.default_rng(seed)
    worst = 0.0
    try:
        for _ in range(instances):
            start, end = _sample_pair(rng)
            path = MixturePath(start, end)
            ts = _t_points(rng)
            separated = _is_separated(path)

            levels = psi_iter(D, depth, path, ts)
            worst = max(worst, float(np.max(-levels)))
            if depth >= 1:
                worst = max(worst, float(np.max(np.diff(levels, axis=0))))
            for row in levels:
                worst = max(worst, _strict_increase_violation(row, separated))

            closed_form = None
            if D.identifier == "chi2":
                closed_form = pl
            elif D.identifier == "jeffreys":
                closed_form = sl
            if closed_form is not None:
                idx = int(rng.integers(1, ts.size))
                probe = mixture(path, float(ts[idx]))
                for k in range(depth + 1):
                    expected = closed_form(k, start, probe)
                    worst = max(worst, abs(float(levels[k, idx]) - expected))
    except ToleranceError:
        worst = math.inf
    return PropertyCheck(
        name=f"iterated_chain[{D.identifier}]",
        paper_anchor=(
            "repeated application of psi yields nonnegative levels that are "
            "nonincreasing in the level index and strictly increasing in t; "
            "chi2 and jeffreys levels match their closed-form sequences"
        ),
        instances=instances,
        worst_violation=worst,
        tolerance=_CHAIN_TOL,
        passed=worst <= _CHAIN_TOL,
    )


def check_derivative_dominates(
    D: DivergenceFunctional, instances: int, seed: int
) -> PropertyCheck:
    """Check psi_inverse[D] >= D pointwise, with both strictly increasing."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    try:
        for _ in range(instances):
            start, end = _sample_pair(rng)
            path = MixturePath(start, end)
            ts = _t_points(rng)
            separated = _is_separated(path)

            upper = np.array([psi_inverse(D, path, float(t)) for t in ts])
            direct = np.asarray(D.evaluator(start.masses, path.masses_at(ts)))

            worst = max(worst, float(np.max(direct - upper)))
            worst = max(worst, _strict_increase_violation(upper, separated))
            worst = max(worst, _strict_increase_violation(direct, separated))
    except ToleranceError:
        worst = math.inf
    return PropertyCheck(
        name=f"derivative_dominates[{D.identifier}]",
        paper_anchor=(
            "psi_inverse[D](t) >= D(start, mix(t)) along mixture paths, with "
            "both sides strictly increasing in t for separated endpoints"
        ),
        instances=instances,
        worst_violation=worst,
        tolerance=_DOMINATES_TOL,
        passed=worst <= _DOMINATES_TOL,
    )


def check_path_invariance(
    D: DivergenceFunctional, instances: int, seed: int
) -> PropertyCheck:
    """Check that truncating a path and rescaling to [0, 1] changes nothing.

    Both psi and psi_inverse evaluated at t on the full path must agree with
    their values at 1 on the shortened path that ends at the mixture point.
    """
    rng = np.random.default_rng(seed)
    worst = 0.0
    try:
        for _ in range(instances):
            start, end = _sample_pair(rng)
            path = MixturePath(start, end)
            t_star = float(rng.uniform(0.05, 1.0))
            shortened = MixturePath(start, mixture(path, t_star))

            full_integral = psi(D, path, t_star).value
            short_integral = psi(D, shortened, 1.0).value
            worst = max(worst, abs(full_integral - short_integral))

            full_derivative = psi_inverse(D, path, t_star)
            short_derivative = psi_inverse(D, shortened, 1.0)
            worst = max(worst, abs(full_derivative - short_derivative))
    except ToleranceError:
        worst = math.inf
    return PropertyCheck(
        name=f"path_invariance[{D.identifier}]",
        paper_anchor=(
            "psi and psi_inverse at time t on a path equal their values at "
            "time 1 on the truncated path ending at the mixture point"
        ),
        instances=instances,
        worst_violation=worst,
        tolerance=_INVARIANCE_TOL,
        passed=worst <= _INVARIANCE_TOL,
    )


def _triangular_discrimination() -> DivergenceFunctional:
    spec = FDivergenceSpec(
        f=lambda u: (u - 1.0) ** 2 / (u + 1.0),
        f_prime=lambda u: (u - 1.0) * (u + 3.0) / (u + 1.0) ** 2,
    )
    return make_f_divergence(spec)


def _suite_divergences() -> tuple[DivergenceFunctional, ...]:
    left_kl = replace(named_divergence("kl"), orientation=Orientation.LEFT_CONVEX)
    squared_norm = BregmanSpec(F=lambda x: x * x, F_prime=lambda x: 2.0 * x)
    return (
        named_divergence("chi2"),
        named_divergence("kl"),
        named_divergence("jeffreys"),
        named_divergence("hellinger2"),
        swap_orientation(left_kl),
        _triangular_discrimination(),
        swap_orientation(make_bregman(squared_norm)),
    )


def run_suite(seed: int, instances: int) -> VerificationReport:
    """Run every check against a fixed roster of divergences.

    The roster covers the named divergences, a swapped left-convex variant,
    a generic f-divergence, and a swapped Bregman divergence.  Per-check seeds
    are derived from ``seed`` so the report is reproducible bit for bit.
    """
    instances = operator.index(instances)
    if instances < 1:
        raise DomainError(f"instances must be at least 1, got {instances}")
    checks: list[PropertyCheck] = []
    for d_index, D in enumerate(_suite_divergences()):
        runners = (
            lambda s: check_integral_contraction(D, instances, s),
            lambda s: check_iterated_chain(D, 3, instances, s),
            lambda s: check_derivative_dominates(D, instances, s),
            lambda s: check_path_invariance(D, instances, s),
        )
        for c_index, runner in enumerate(runners):
            child = np.random.SeedSequence(seed, spawn_key=(d_index, c_index))
            checks.append(runner(int(child.generate_state(1)[0])))
    all_passed = all(check.passed for check in checks)
    return VerificationReport(seed=seed, checks=tuple(checks), all_passed=all_passed)
