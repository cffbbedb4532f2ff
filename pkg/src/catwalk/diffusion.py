"""Analytic laws of the jump-diffusion limit: Wiener motion between failures.

The process drifts like a Wiener process with drift lam_hat - mu_hat and
infinitesimal variance sigma2 until a catastrophe (rate nu) sends it to the
failure state F; after an Exp(eta) repair it restarts from 0.  Its law has a
density on the reals plus an atom at F whose mass is the same failure mass as
in the discrete model.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .failure_cycle import (
    NoSteadyStateError,
    failure_mass as _cycle_failure_mass,
    relaxation_profile,
)
from .special import (
    DEFAULT_QUADRATURE,
    QuadratureSpec,
    integrate_adaptive,
)

__all__ = [
    "DiffusionParams",
    "DensitySlice",
    "PointMass",
    "DIRAC_AT_ORIGIN",
    "failure_probability",
    "wiener_density",
    "transient_density",
    "on_mass",
    "density_slice",
    "laplace_density",
    "laplace_roots",
    "steady_density",
    "mean_x",
    "variance_x",
    "asymptotic_moments",
    "fpt_density_wiener",
    "renewal_check",
]


@dataclass(frozen=True)
class DiffusionParams:
    """Drift components, variance and failure-cycle rates of the jump-diffusion.

    lam_hat: upward drift component (space per time)
    mu_hat:  downward drift component
    sigma2:  infinitesimal variance (space^2 per time)
    nu:      catastrophe rate
    eta:     repair rate
    """

    lam_hat: float
    mu_hat: float
    sigma2: float
    nu: float
    eta: float

    def __post_init__(self) -> None:
        for name in ("lam_hat", "mu_hat", "sigma2", "nu", "eta"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
        if self.lam_hat <= 0.0 or self.mu_hat <= 0.0:
            raise ValueError("drift components lam_hat and mu_hat must be positive")
        if self.sigma2 <= 0.0:
            raise ValueError("sigma2 must be positive")
        if self.eta <= 0.0:
            raise ValueError("eta must be positive")
        if self.nu < 0.0:
            raise ValueError("nu must be nonnegative")

    @property
    def drift(self) -> float:
        return self.lam_hat - self.mu_hat


@dataclass(frozen=True)
class PointMass:
    """Degenerate law concentrated at one point (the t = 0 initial condition)."""

    location: float


DIRAC_AT_ORIGIN = PointMass(0.0)


def failure_probability(dp: DiffusionParams, t: float) -> float:
    """Probability of being under repair at time t (atom at F)."""
    return _cycle_failure_mass(dp.nu, dp.eta, t)


def wiener_density(dp: DiffusionParams, x: float, t: float, x0: float = 0.0) -> float:
    """Failure-free transition density: Gaussian with mean x0 + drift*t and
    variance sigma2*t."""
    if t <= 0.0:
        raise ValueError(f"time must be positive, got {t}")
    var = dp.sigma2 * t
    offset = x - x0 - dp.drift * t
    return math.exp(-offset * offset / (2.0 * var)) / math.sqrt(2.0 * math.pi * var)


def _restart_integrand(dp: DiffusionParams, x: float, t: float):
    def integrand(tau: float) -> float:
        lag = t - tau
        if lag <= 0.0 or tau < 0.0:
            return 0.0
        return (
            _cycle_failure_mass(dp.nu, dp.eta, tau)
            * math.exp(-dp.nu * lag)
            * wiener_density(dp, x, lag)
        )

    return integrand


def transient_density(
    dp: DiffusionParams,
    x: float,
    t: float,
    quad: QuadratureSpec = DEFAULT_QUADRATURE,
) -> Union[float, PointMass]:
    """Density of the operating state at time t, started at 0.

    At t = 0 the law is a unit point mass at the origin, returned as the
    tagged :data:`DIRAC_AT_ORIGIN` value instead of a number.

        f(x,t) = e^{-nu t} w(x,t) + eta int_0^t q(tau) e^{-nu (t-tau)} w(x,t-tau) dtau

    with w the failure-free Gaussian kernel and q the failure mass.
    """
    if t < 0.0:
        raise ValueError(f"time must be nonnegative, got {t}")
    if t == 0.0:
        return DIRAC_AT_ORIGIN
    base = math.exp(-dp.nu * t) * wiener_density(dp, x, t)
    if dp.nu == 0.0:
        return base
    integrand = _restart_integrand(dp, x, t)
    # the integrand peaks sharply near tau = t where the Gaussian collapses;
    # split there, and flatten the 1/sqrt(t - tau) endpoint (felt at x = 0)
    # with the substitution tau = t - s^2
    split = t - min(0.5 * t, 10.0 * dp.sigma2 / (dp.drift**2 + dp.sigma2))
    head, _ = integrate_adaptive(integrand, 0.0, split, quad)
    s_max = math.sqrt(t - split)

    def tail_integrand(s: float) -> float:
        if s <= 0.0 or s * s * dp.sigma2 == 0.0:
            return 0.0
        return 2.0 * s * integrand(t - s * s)

    tail, _ = integrate_adaptive(tail_integrand, 0.0, s_max, quad)
    return base + dp.eta * (head + tail)


def _support_bounds(dp: DiffusionParams, t: float, widths: float = 12.0) -> tuple[float, float]:
    # restart components have means between 0 and drift*t and spread at most
    # sqrt(sigma2 t); beyond `widths` standard deviations the mass is dust
    sd = math.sqrt(dp.sigma2 * t)
    lo = min(0.0, dp.drift * t) - widths * sd
    hi = max(0.0, dp.drift * t) + widths * sd
    return lo, hi


def on_mass(
    dp: DiffusionParams,
    t: float,
    quad: QuadratureSpec = DEFAULT_QUADRATURE,
) -> float:
    """Total operating mass integral of the transient density at time t.

    Integrates adaptively on each side of the derivative kink at the origin;
    equals 1 minus the failure mass up to quadrature error.
    """
    if t <= 0.0:
        raise ValueError(f"time must be positive, got {t}")
    lo, hi = _support_bounds(dp, t)

    def f(x: float) -> float:
        return transient_density(dp, x, t, quad)  # type: ignore[return-value]

    left, _ = integrate_adaptive(f, lo, 0.0, quad)
    right, _ = integrate_adaptive(f, 0.0, hi, quad)
    return left + right


def _gaussian_outside(dp: DiffusionParams, s: float, lo: float, hi: float) -> float:
    # failure-free mass outside [lo, hi] after elapsed time s
    sd = math.sqrt(dp.sigma2 * s)
    mean = dp.drift * s
    upper = 0.5 * math.erfc((hi - mean) / (sd * math.sqrt(2.0)))
    lower = 0.5 * math.erfc((mean - lo) / (sd * math.sqrt(2.0)))
    return upper + lower


@dataclass(frozen=True)
class DensitySlice:
    """Sampled transient density at a fixed time.

    ``tail_mass`` is the analytically integrated mass outside the abscissa
    range, so trapezoid mass + tail_mass + failure_mass reconstructs 1 up to
    the declared ``mass_tolerance`` (trapezoid discretization error).
    Treat the arrays as immutable.
    """

    time: float
    abscissas: np.ndarray
    values: np.ndarray
    failure_mass: float
    tail_mass: float
    mass_tolerance: float

    def trapezoid_mass(self) -> float:
        return float(np.trapezoid(self.values, self.abscissas)) + self.tail_mass


def density_slice(
    dp: DiffusionParams,
    t: float,
    quad: QuadratureSpec = DEFAULT_QUADRATURE,
    n_points: int = 801,
    span_sds: float = 8.0,
) -> DensitySlice:
    """Uniform grid over the failure-free mean +- span_sds standard deviations,
    with analytic closure of the two exponential-type tails."""
    if t <= 0.0:
        raise ValueError(f"time must be positive, got {t}")
    sd = math.sqrt(dp.sigma2 * t)
    center = dp.drift * t
    xs = np.linspace(center - span_sds * sd, center + span_sds * sd, n_points)
    values = np.array([transient_density(dp, float(x), t, quad) for x in xs])
    lo, hi = float(xs[0]), float(xs[-1])
    tail = math.exp(-dp.nu * t) * _gaussian_outside(dp, t, lo, hi)
    if dp.nu > 0.0:
        restart_tail, _ = integrate_adaptive(
            lambda tau: 0.0
            if tau >= t
            else _cycle_failure_mass(dp.nu, dp.eta, tau)
            * math.exp(-dp.nu * (t - tau))
            * _gaussian_outside(dp, t - tau, lo, hi),
            0.0,
            t,
            quad,
        )
        tail += dp.eta * restart_tail
    return DensitySlice(
        time=t,
        abscissas=xs,
        values=values,
        failure_mass=failure_probability(dp, t),
        tail_mass=tail,
        mass_tolerance=1e-4,
    )


def laplace_roots(dp: DiffusionParams, z: float) -> tuple[float, float]:
    """Roots w1 > 0 > w2 of sigma2 w^2 - 2 drift w - 2 (z + nu) = 0, the decay
    exponents of the transform density on each side of the origin."""
    if z <= 0.0:
        raise ValueError(f"transform variable must be positive, got {z}")
    root = math.sqrt(dp.drift**2 + 2.0 * dp.sigma2 * (z + dp.nu))
    return (dp.drift + root) / dp.sigma2, (dp.drift - root) / dp.sigma2


def laplace_density(dp: DiffusionParams, x: float, z: float) -> float:
    """Laplace transform in time of the transient density, in closed form."""
    if z <= 0.0:
        raise ValueError(f"transform variable must be positive, got {z}")
    root = math.sqrt(dp.drift**2 + 2.0 * dp.sigma2 * (z + dp.nu))
    amplitude = (z + dp.nu) * (z + dp.eta) / (z * (z + dp.eta + dp.nu) * root)
    return amplitude * math.exp((dp.drift * x - root * abs(x)) / dp.sigma2)


def steady_density(dp: DiffusionParams, x: float) -> float:
    """Long-run density: bilateral asymmetric exponential around the origin."""
    if dp.nu <= 0.0:
        raise NoSteadyStateError(
            "the diffusion has no stationary law without catastrophes (nu > 0 required)"
        )
    root = math.sqrt(dp.drift**2 + 2.0 * dp.sigma2 * dp.nu)
    weight = dp.eta * dp.nu / (dp.eta + dp.nu)
    return weight / root * math.exp((dp.drift * x - root * abs(x)) / dp.sigma2)


def mean_x(dp: DiffusionParams, t: float) -> float:
    """Truncated mean E[X(t) 1{on}]."""
    if t < 0.0:
        raise ValueError(f"time must be nonnegative, got {t}")
    if dp.nu == 0.0:
        return dp.drift * t
    prefactor = dp.drift * dp.eta / ((dp.eta + dp.nu) * dp.nu)
    return prefactor * relaxation_profile(dp.nu, dp.eta, t)


def variance_x(dp: DiffusionParams, t: float) -> float:
    """Truncated variance Var[X(t) 1{on}], fully closed form."""
    if t < 0.0:
        raise ValueError(f"time must be nonnegative, got {t}")
    nu, eta = dp.nu, dp.eta
    if nu == 0.0:
        return dp.sigma2 * t
    diffusive = dp.sigma2 * eta / ((eta + nu) * nu) * relaxation_profile(nu, eta, t)
    decay = math.exp(-nu * t)
    repair_gap = -math.expm1(-eta * t)
    braces = (
        -2.0 * nu**2 * decay * repair_gap * (nu**2 + eta * nu + eta**2)
        + 2.0 * nu * eta**3 * (-math.expm1(-nu * t))
        + eta**4
        + 2.0 * eta * nu * (eta + nu) * (nu**2 - eta**2) * t * decay
        - math.exp(-2.0 * nu * t) * (nu**2 - eta**2 - nu**2 * math.exp(-eta * t)) ** 2
    )
    return diffusive + dp.drift**2 / ((eta + nu) ** 2 * nu**2 * eta**2) * braces


def asymptotic_moments(dp: DiffusionParams) -> tuple[float, float]:
    """Long-run truncated mean and variance."""
    if dp.nu <= 0.0:
        raise NoSteadyStateError("asymptotic moments require nu > 0")
    nu, eta = dp.nu, dp.eta
    mean_limit = dp.drift * eta / ((eta + nu) * nu)
    var_limit = dp.sigma2 * eta / ((eta + nu) * nu) + dp.drift**2 * eta * (
        2.0 * nu + eta
    ) / ((eta + nu) ** 2 * nu**2)
    return mean_limit, var_limit


def fpt_density_wiener(
    dp: DiffusionParams, x: float, t: float, x0: float = 0.0
) -> float:
    """First-passage-time density of the failure-free motion from x0 to x."""
    if x == x0:
        raise ValueError("first-passage target must differ from the start point")
    if t <= 0.0:
        raise ValueError(f"time must be positive, got {t}")
    return abs(x - x0) / t * wiener_density(dp, x, t, x0)


def renewal_check(
    dp: DiffusionParams,
    x: float,
    t: float,
    quad: QuadratureSpec = DEFAULT_QUADRATURE,
) -> float:
    """Residual of the last-visit-to-the-origin identity

        f(x,t) = int_0^t f(0,tau) e^{-nu (t-tau)} g(x, t-tau) dtau,  x != 0,

    with g the failure-free first-passage density.  Both sides are computed
    independently; the return value is their absolute difference.
    """
    if x == 0.0:
        raise ValueError("the renewal identity needs x != 0")
    if t <= 0.0:
        raise ValueError(f"time must be positive, got {t}")
    direct = transient_density(dp, x, t, quad)

    def integrand(tau: float) -> float:
        lag = t - tau
        if tau <= 0.0 or lag <= 0.0:
            return 0.0
        origin = transient_density(dp, 0.0, tau, quad)
        return origin * math.exp(-dp.nu * lag) * fpt_density_wiener(dp, x, lag)

    # f(0,tau) blows up like 1/sqrt(tau) at tau = 0; tau = s^2 flattens it
    mid = 0.5 * t
    head, _ = integrate_adaptive(
        lambda s: 0.0 if s <= 0.0 else 2.0 * s * integrand(s * s),
        0.0,
        math.sqrt(mid),
        quad,
    )
    tail, _ = integrate_adaptive(integrand, mid, t, quad)
    return abs(direct - (head + tail))
