import numpy as np
import pytest
from scipy import integrate as sci_integrate

from divseq.errors import DomainError, ToleranceError
from divseq.quadrature import QuadratureConfig, cumulative_integral, integrate

CFG = QuadratureConfig()


def test_polynomial_is_exact_to_roundoff():
    value, err, neval = integrate(lambda x: x**2, 0.0, 1.0, CFG)
    assert value == pytest.approx(1.0 / 3.0, abs=1e-15)
    assert err >= 0.0
    assert neval >= 15


def test_high_degree_polynomial():
    # K15 integrates degree <= 22 exactly; a single panel should do it.
    value, _, _ = integrate(lambda x: 7.0 * x**13 - x**5 + 2.0, 0.0, 1.0, CFG)
    assert value == pytest.approx(0.5 - 1.0 / 6.0 + 2.0, abs=1e-14)


def test_sine_over_half_period():
    value, _, _ = integrate(np.sin, 0.0, np.pi, CFG)
    assert value == pytest.approx(2.0, abs=1e-12)


def test_sqrt_endpoint_kink():
    value, _, _ = integrate(np.sqrt, 0.0, 1.0, CFG)
    assert value == pytest.approx(2.0 / 3.0, abs=1e-10)


@pytest.mark.parametrize(
    "fn,a,b",
    [
        (lambda x: np.exp(-(x**2)), 0.0, 5.0),
        (lambda x: 1.0 / (1.0 + x**2), 0.0, 8.0),
        (lambda x: np.log1p(x) / (1.0 + x), 0.0, 3.0),
        (lambda x: np.exp(x) * np.cos(10.0 * x), 0.0, 2.0),
    ],
)
def test_agrees_with_scipy_quad(fn, a, b):
    ours, _, _ = integrate(fn, a, b, CFG)
    ref, _ = sci_integrate.quad(lambda x: float(fn(np.array([x]))[0]), a, b, limit=200)
    assert ours == pytest.approx(ref, abs=1e-10, rel=1e-10)


def test_zero_width_interval():
    value, err, neval = integrate(np.exp, 0.3, 0.3, CFG)
    assert value == 0.0 and err == 0.0 and neval == 0


def test_reversed_interval_rejected():
    with pytest.raises(DomainError):
        integrate(np.exp, 1.0, 0.0, CFG)


def test_error_estimate_brackets_truth():
    for fn, a, b, truth in [
        (np.sin, 0.0, np.pi, 2.0),
        (lambda x: np.exp(-(x**2)), 0.0, 5.0, 0.8862269254527579),
    ]:
        value, err, _ = integrate(fn, a, b, CFG)
        assert abs(value - truth) <= max(100.0 * err, 1e-12)


def _inverse_sqrt_cusp(x):
    return 1.0 / np.sqrt(np.abs(x - 0.31) + 1e-300)


def test_singular_integrand_exhausts_small_budget():
    cfg = QuadratureConfig(max_subdivisions=10)
    with pytest.raises(ToleranceError):
        integrate(_inverse_sqrt_cusp, 0.0, 1.0, cfg)


def test_sqrt_cusp_converges_with_default_budget():
    value, _, _ = integrate(lambda x: np.sqrt(np.abs(x - 0.31)), 0.0, 1.0, CFG)
    truth = (2.0 / 3.0) * (0.31**1.5 + 0.69**1.5)
    assert value == pytest.approx(truth, rel=1e-9)


def test_unbounded_singularity_reports_failure_not_garbage():
    # No extrapolation is attempted, so a non-integrable-looking cusp must
    # surface as ToleranceError rather than a silently wrong value.
    with pytest.raises(ToleranceError):
        integrate(_inverse_sqrt_cusp, 0.0, 1.0, CFG)


def test_cumulative_matches_single_segments():
    edges = np.array([0.0, 0.1, 0.35, 0.6, 1.0])
    vals, err, _ = cumulative_integral(np.exp, edges, CFG)
    assert vals[0] == 0.0
    for j, e in enumerate(edges):
        direct = np.exp(e) - 1.0
        assert vals[j] == pytest.approx(direct, abs=1e-12), f"edge {e}"
    assert err >= 0.0


def test_cumulative_requires_increasing_edges():
    with pytest.raises(DomainError):
        cumulative_integral(np.exp, np.array([0.0, 0.5, 0.4]), CFG)


def test_config_validation():
    with pytest.raises(DomainError):
        QuadratureConfig(rel_tol=0.0)
    with pytest.raises(DomainError):
        QuadratureConfig(abs_tol=-1e-10)
    with pytest.raises(DomainError):
        QuadratureConfig(max_subdivisions=5)


def test_defaults():
    cfg = QuadratureConfig()
    assert cfg.rel_tol == 1e-10
    assert cfg.abs_tol == 1e-12
    assert cfg.max_subdivisions == 2000
