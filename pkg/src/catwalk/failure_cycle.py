"""Closed forms tied to the on/off failure-repair cycle.

Both the lattice walk and its diffusion limit share the same failure
mechanism: while operating, catastrophes arrive at rate nu; a failed system
spends an Exp(eta) sojourn under repair and restarts from the origin.  The
quantities below depend only on (nu, eta) and on the moments of the
catastrophe-free motion, so they are factored out here and reused by both
model modules.
"""

from __future__ import annotations

import math

__all__ = [
    "NoSteadyStateError",
    "failure_mass",
    "steady_failure_mass",
    "relaxation_profile",
    "truncated_second_moment",
]


class NoSteadyStateError(ValueError):
    """The model admits no stationary law (needs a positive catastrophe rate)."""


def failure_mass(nu: float, eta: float, t: float) -> float:
    """Probability of being under repair at time t, starting operational."""
    if t < 0.0:
        raise ValueError(f"time must be nonnegative, got {t}")
    if nu == 0.0:
        return 0.0
    rate = eta + nu
    return -(nu / rate) * math.expm1(-rate * t)


def steady_failure_mass(nu: float, eta: float) -> float:
    if nu <= 0.0:
        raise NoSteadyStateError("stationary failure mass requires a positive catastrophe rate")
    return nu / (eta + nu)


def relaxation_profile(nu: float, eta: float, t: float) -> float:
    """1 - e^{-nu t} + (nu/eta)^2 e^{-nu t} (1 - e^{-eta t}).

    The truncated mean of either model is a drift prefactor times this
    profile; it starts at 0 and relaxes to 1.
    """
    decay = math.exp(-nu * t)
    return -math.expm1(-nu * t) + (nu * nu) / (eta * eta) * decay * (-math.expm1(-eta * t))


def _int_exp_s(a: float, t: float) -> float:
    # integral of e^{a s} s over [0, t]; series branch avoids the 0/0 at a ~ 0
    at = a * t
    if abs(at) < 0.25:
        # sum_k a^k t^{k+2} / (k! (k+2))
        total, coeff = 0.0, t * t
        for k in range(0, 26):
            term = coeff / (k + 2)
            total += term
            if abs(term) <= 1e-18 * abs(total):
                break
            coeff *= a * t / (k + 1)
        return total
    return (math.exp(at) * (at - 1.0) + 1.0) / (a * a)


def _int_exp_s2(a: float, t: float) -> float:
    # integral of e^{a s} s^2 over [0, t]
    at = a * t
    if abs(at) < 0.25:
        total, coeff = 0.0, t * t * t
        for k in range(0, 26):
            term = coeff / (k + 3)
            total += term
            if abs(term) <= 1e-18 * abs(total):
                break
            coeff *= a * t / (k + 1)
        return total
    return (math.exp(at) * (at * at - 2.0 * at + 2.0) - 2.0) / (a * a * a)


def _int_exp_s_damped(a: float, damp: float, t: float) -> float:
    # e^{-damp t} * integral of e^{a s} s over [0, t], for damp >= a so the
    # growing exponential never materializes
    at = a * t
    if abs(at) < 0.25:
        return math.exp(-damp * t) * _int_exp_s(a, t)
    return (math.exp((a - damp) * t) * (at - 1.0) + math.exp(-damp * t)) / (a * a)


def _int_exp_s2_damped(a: float, damp: float, t: float) -> float:
    # e^{-damp t} * integral of e^{a s} s^2 over [0, t]
    at = a * t
    if abs(at) < 0.25:
        return math.exp(-damp * t) * _int_exp_s2(a, t)
    return (
        math.exp((a - damp) * t) * (at * at - 2.0 * at + 2.0) - 2.0 * math.exp(-damp * t)
    ) / (a * a * a)


def truncated_second_moment(
    nu: float, eta: float, t: float, linear: float, quadratic: float
) -> float:
    """E[Z(t)^2, system on] when the failure-free motion has second moment
    linear*t + quadratic*t^2.

    Convolution of the failure-free second moment against the law of the time
    since the last restart; everything reduces to exponential-polynomial
    integrals, so no quadrature is involved.
    """
    if t < 0.0:
        raise ValueError(f"time must be nonnegative, got {t}")
    base = math.exp(-nu * t) * (linear * t + quadratic * t * t)
    if nu == 0.0:
        return base
    weight = eta * nu / (eta + nu)
    since_restart = linear * _int_exp_s(-nu, t) + quadratic * _int_exp_s2(-nu, t)
    repair_lag = linear * _int_exp_s_damped(eta, eta + nu, t) + quadratic * _int_exp_s2_damped(
        eta, eta + nu, t
    )
    return base + weight * (since_restart - repair_lag)
