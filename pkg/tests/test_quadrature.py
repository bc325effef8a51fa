"""Quadrature routines against closed-form integrals.

Every target value here has an exact closed form (or an error-function
oracle), so the suite doubles as the reference check that reported error
estimates never underestimate the true error.
"""

import math

import numpy as np
import pytest

from levysup.errors import ConvergenceError, DomainError, TailBoundError
from levysup.quadrature import (
    integrate_adaptive,
    integrate_power_endpoint,
    integrate_upper_tail,
)

from scipy.special import erfc


TOL = 1e-10

# (label, runner, exact value)
# runner: tol -> QuadratureResult
CLOSED_FORM_SUITE = [
    ("x^2 on [0,1]",
     lambda tol: integrate_adaptive(lambda x: x ** 2, 0, 1, tol),
     1.0 / 3.0),
    ("exp(-x^2) on [0,8]",
     lambda tol: integrate_adaptive(lambda x: np.exp(-x * x), 0, 8, tol),
     math.sqrt(math.pi) / 2.0),
    ("sin on [0,pi]",
     lambda tol: integrate_adaptive(np.sin, 0, math.pi, tol),
     2.0),
    ("1/(1+x^2) on [0,1]",
     lambda tol: integrate_adaptive(lambda x: 1.0 / (1.0 + x * x), 0, 1, tol),
     math.pi / 4.0),
    ("log x on [0,1]",
     lambda tol: integrate_adaptive(np.log, 0, 1, tol),
     -1.0),
    ("cos^2 on [0,2pi]",
     lambda tol: integrate_adaptive(lambda x: np.cos(x) ** 2, 0, 2 * math.pi, tol),
     math.pi),
    ("peaked 1/(1+100x^2) on [0,1]",
     lambda tol: integrate_adaptive(lambda x: 1.0 / (1.0 + 100.0 * x * x), 0, 1, tol),
     math.atan(10.0) / 10.0),
    ("Runge 1/(1+25x^2) on [-1,1]",
     lambda tol: integrate_adaptive(lambda x: 1.0 / (1.0 + 25.0 * x * x), -1, 1, tol),
     0.4 * math.atan(5.0)),
    ("cubic on [0,2]",
     lambda tol: integrate_adaptive(lambda x: x ** 3 - 2.0 * x ** 2 + 5.0, 0, 2, tol),
     26.0 / 3.0),
    ("damped sine on [0,10pi]",
     lambda tol: integrate_adaptive(lambda x: np.exp(-x / 5.0) * np.sin(x), 0,
                                    10 * math.pi, tol),
     (1.0 - math.exp(-2 * math.pi)) / 1.04),
    ("x^(-1/3) on [0,1]",
     lambda tol: integrate_power_endpoint(lambda x: x ** (-1.0 / 3.0), 0, 1,
                                          "lower", -1.0 / 3.0, tol),
     1.5),
    ("(1/3) s^(1/1.5 - 1) on [0,1]",
     lambda tol: integrate_power_endpoint(lambda s: s ** (-1.0 / 3.0) / 3.0, 0, 1,
                                          "lower", -1.0 / 3.0, tol),
     0.5),
    ("s^(1/1.2 - 1) on [0,1]",
     lambda tol: integrate_power_endpoint(lambda s: s ** (1.0 / 1.2 - 1.0), 0, 1,
                                          "lower", 1.0 / 1.2 - 1.0, tol),
     1.2),
    ("x^(-0.3) on [0,1]",
     lambda tol: integrate_power_endpoint(lambda x: x ** -0.3, 0, 1,
                                          "lower", -0.3, tol),
     1.0 / 0.7),
    ("x^(-1/2)(1+x) on [0,1]",
     lambda tol: integrate_power_endpoint(lambda x: (1.0 + x) / np.sqrt(x), 0, 1,
                                          "lower", -0.5, tol),
     8.0 / 3.0),
    ("s^(1/1.8 - 1) on [0,2]",
     lambda tol: integrate_power_endpoint(lambda s: s ** (1.0 / 1.8 - 1.0), 0, 2,
                                          "lower", 1.0 / 1.8 - 1.0, tol),
     1.8 * 2.0 ** (1.0 / 1.8)),
    ("(1-x)^(-1/5) on [0,1]",
     lambda tol: integrate_power_endpoint(lambda x: (1.0 - x) ** -0.2, 0, 1,
                                          "upper", -0.2, tol),
     1.25),
    ("x (2-x)^(-1/2) on [0,2]",
     lambda tol: integrate_power_endpoint(lambda x: x / np.sqrt(2.0 - x), 0, 2,
                                          "upper", -0.5, tol),
     8.0 * math.sqrt(2.0) / 3.0),
    ("exp(-x) on [0,inf)",
     lambda tol: integrate_upper_tail(lambda x: np.exp(-x), 0,
                                      lambda x: np.exp(-x), tol),
     1.0),
    ("x^(-2.5) on [1,inf)",
     lambda tol: integrate_upper_tail(lambda x: x ** -2.5, 1,
                                      lambda x: x ** -2.5, tol),
     2.0 / 3.0),
    ("Gaussian(var 2) survival on [0,inf)",
     lambda tol: integrate_upper_tail(lambda u: 0.5 * erfc(u / 2.0), 0,
                                      lambda u: np.exp(-u * u / 4.0), tol),
     1.0 / math.sqrt(math.pi)),
    ("x exp(-x^2) on [0,inf)",
     lambda tol: integrate_upper_tail(lambda x: x * np.exp(-x * x), 0,
                                      lambda x: np.maximum(x, 1.0) * np.exp(-x * x),
                                      tol),
     0.5),
]


@pytest.mark.parametrize("label,runner,exact",
                         CLOSED_FORM_SUITE,
                         ids=[c[0] for c in CLOSED_FORM_SUITE])
def test_closed_form_suite(label, runner, exact):
    res = runner(TOL)
    true_err = abs(res.value - exact)
    assert true_err <= TOL, f"{label}: off by {true_err:.2e}"
    assert res.error_estimate <= TOL
    # the estimate must never claim better accuracy than was delivered
    assert res.error_estimate + 1e-15 >= true_err
    assert res.evaluations > 0


def test_suite_has_at_least_twenty_cases():
    assert len(CLOSED_FORM_SUITE) >= 20


def test_additivity_random_split():
    rng = np.random.default_rng(1234)
    whole = integrate_adaptive(np.sin, 0, math.pi, TOL)
    for _ in range(5):
        c = float(rng.uniform(0.1, math.pi - 0.1))
        left = integrate_adaptive(np.sin, 0, c, TOL)
        right = integrate_adaptive(np.sin, c, math.pi, TOL)
        assert abs(left.value + right.value - whole.value) <= 2 * TOL


def test_power_endpoint_agrees_with_plain_on_smooth_integrand():
    # exponent handling must not corrupt an integrand with no singularity
    plain = integrate_adaptive(np.cos, 0, 1, TOL)
    routed = integrate_power_endpoint(np.cos, 0, 1, "lower", -0.4, TOL)
    assert abs(routed.value - plain.value) <= 2 * TOL
    routed_up = integrate_power_endpoint(np.cos, 0, 1, "upper", -0.25, TOL)
    assert abs(routed_up.value - plain.value) <= 2 * TOL


def test_scalar_integrands_are_accepted():
    res = integrate_adaptive(lambda x: math.exp(-x), 0, 1, 1e-9)
    assert abs(res.value - (1 - math.exp(-1))) < 1e-9


def test_domain_errors():
    with pytest.raises(DomainError):
        integrate_adaptive(np.sin, 1, 0, TOL)
    with pytest.raises(DomainError):
        integrate_adaptive(np.sin, 0, 1, -1e-9)
    with pytest.raises(DomainError):
        integrate_power_endpoint(np.sin, 0, 1, "lower", -1.5, TOL)
    with pytest.raises(DomainError):
        integrate_power_endpoint(np.sin, 0, 1, "lower", 0.5, TOL)
    with pytest.raises(DomainError):
        integrate_power_endpoint(np.sin, 0, 1, "middle", -0.5, TOL)


def test_boundedness_probe_rejects_wrong_exponent():
    # true singularity x^(-0.6) declared as x^(-0.2): probe must catch it
    with pytest.raises(DomainError):
        integrate_power_endpoint(lambda x: x ** -0.6, 0, 1, "lower", -0.2, TOL)


def test_nonintegrable_singularity_raises_convergence_error():
    with pytest.raises(ConvergenceError):
        integrate_adaptive(lambda x: 1.0 / x, 0, 1, 1e-8)


def test_nan_integrand_raises_convergence_error():
    with pytest.raises(ConvergenceError):
        integrate_adaptive(lambda x: np.where(x < 0.5, 1.0, np.nan), 0, 1, 1e-8)


def test_slow_tail_bound_raises():
    with pytest.raises(TailBoundError):
        integrate_upper_tail(lambda x: 0.5 * x ** -1.05, 1,
                             lambda x: x ** -1.05, 1e-9)


def test_tail_dominance_violation_raises():
    with pytest.raises(DomainError):
        integrate_upper_tail(lambda x: 10.0 * np.exp(-x / 10.0), 0,
                             lambda x: np.exp(-x), 1e-9)


def test_error_estimate_within_tolerance_on_success():
    for tol in (1e-6, 1e-9, 1e-12):
        res = integrate_adaptive(lambda x: np.exp(-x * x), 0, 3, tol)
        assert res.error_estimate <= tol
