"""Scaled modified Bessel evaluation and adaptive quadrature.

Every analytic formula in this package is expressed in terms of the
overflow-safe product e^{-x} I_n(x) (``bessel_i_scaled``) and of adaptive
integrals over finite intervals (``integrate_adaptive``).  Keeping these two
primitives in one place pins down the numerical contracts the model modules
rely on: 1e-12 relative accuracy for the Bessel kernel, and user-controlled
tolerances with an honest error estimate for the integrals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

from scipy.integrate import quad
from scipy.special import ive

__all__ = [
    "QuadratureSpec",
    "QuadratureError",
    "QuadResult",
    "bessel_i_scaled",
    "integrate_adaptive",
]

# Orders are supported far beyond this, but accuracy is only asserted by the
# test suite up to |n| = 1e5 and x = 1e7.
MAX_TESTED_ORDER = 100_000


def bessel_i_scaled(n: int, x: float) -> float:
    """Return e^{-x} I_n(x) for integer order n and x >= 0.

    The scaled product lies in [0, 1] and stays finite for arguments up to
    at least 1e7, where the raw Bessel function would overflow long before.
    Negative orders use the symmetry I_{-n} = I_n.
    """
    if not math.isfinite(x) or x < 0.0:
        raise ValueError(f"bessel_i_scaled requires finite x >= 0, got {x!r}")
    n = abs(int(n))
    if x == 0.0:
        return 1.0 if n == 0 else 0.0
    # AMOS ive is exponentially scaled already; clamp stray -0.0.
    value = float(ive(n, x))
    return value if value > 0.0 else 0.0


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerance budget for one adaptive integral."""

    relative_tolerance: float = 1e-10
    absolute_tolerance: float = 1e-14
    max_subdivisions: int = 2000

    def __post_init__(self) -> None:
        if not (self.relative_tolerance > 0.0 and self.absolute_tolerance > 0.0):
            raise ValueError("quadrature tolerances must be strictly positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")


#: Default budget used by the model modules when the caller does not care.
DEFAULT_QUADRATURE = QuadratureSpec()


class QuadResult(NamedTuple):
    value: float
    error_estimate: float


class QuadratureError(RuntimeError):
    """Adaptive subdivision budget exhausted without meeting the tolerance.

    Carries the best available estimate and its error bound so a caller can
    decide whether the partial answer is still usable.
    """

    def __init__(self, message: str, best_estimate: float, error_bound: float):
        super().__init__(message)
        self.best_estimate = best_estimate
        self.error_bound = error_bound


def integrate_adaptive(
    integrand: Callable[[float], float],
    a: float,
    b: float,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
) -> QuadResult:
    """Integrate ``integrand`` over [a, b] to the tolerances in ``spec``.

    Returns the estimate together with the achieved error estimate.  Raises
    :class:`QuadratureError` if the subdivision budget runs out before the
    requested tolerance is met.
    """
    if not a <= b:
        raise ValueError(f"integration bounds must satisfy a <= b, got ({a}, {b})")
    if a == b:
        return QuadResult(0.0, 0.0)
    value, abserr, info, *message = quad(
        integrand,
        a,
        b,
        epsabs=spec.absolute_tolerance,
        epsrel=spec.relative_tolerance,
        limit=spec.max_subdivisions,
        full_output=1,
    )
    if message:
        tol = max(spec.absolute_tolerance, spec.relative_tolerance * abs(value))
        # QUADPACK round-off warnings still deliver the tolerance in practice;
        # only treat the result as failed when the reported bound misses it.
        if abserr > tol:
            raise QuadratureError(
                f"quadrature did not converge on [{a}, {b}]: {message[0]}",
                best_estimate=value,
                error_bound=abserr,
            )
    return QuadResult(value, abserr)
