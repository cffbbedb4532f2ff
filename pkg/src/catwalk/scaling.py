"""Bridge between the lattice model and its jump-diffusion limit.

The lattice is rescaled to spacing epsilon with rates

    lam = lam_hat / eps + sigma2 / (2 eps^2),
    mu  = mu_hat  / eps + sigma2 / (2 eps^2),

while the failure-cycle rates pass through unchanged.  As eps shrinks, lattice
probabilities divided by eps approach the diffusion densities; the functions
here quantify that agreement (stationary laws, Laplace transforms, moments)
and check the internal consistency of the rescaling family.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from . import diffusion
from .discrete import DiscreteParams, laplace_pn, steady_state
from .diffusion import DiffusionParams

__all__ = [
    "ScalingMap",
    "ComparisonRow",
    "scale_params",
    "steady_comparison",
    "rate_invariance_check",
    "laplace_convergence",
    "mean_correspondence_check",
    "asymptotic_variance_gap",
]


def scale_params(dp: DiffusionParams, epsilon: float) -> DiscreteParams:
    """Lattice rates induced by spacing epsilon."""
    if epsilon <= 0.0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    shared = dp.sigma2 / (2.0 * epsilon * epsilon)
    return DiscreteParams(
        lam=dp.lam_hat / epsilon + shared,
        mu=dp.mu_hat / epsilon + shared,
        nu=dp.nu,
        eta=dp.eta,
    )


@dataclass(frozen=True)
class ScalingMap:
    """A diffusion together with one lattice spacing."""

    epsilon: float
    source: DiffusionParams

    def __post_init__(self) -> None:
        if self.epsilon <= 0.0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")

    @property
    def discrete(self) -> DiscreteParams:
        return scale_params(self.source, self.epsilon)


@dataclass(frozen=True)
class ComparisonRow:
    """One line of a stationary-law comparison at lattice site n.

    delta is the relative difference (w_value*eps - pi_n) / pi_n with pi_n the
    lattice stationary probability, so scaled_pi and w_value agree when delta
    is small.
    """

    n: int
    scaled_pi: float
    w_value: float
    delta: float


def steady_comparison(
    dp: DiffusionParams, epsilon: float, n_range: Iterable[int]
) -> list[ComparisonRow]:
    """Stationary lattice probabilities over eps against the stationary
    density at the matching points."""
    p = scale_params(dp, epsilon)
    rows = []
    for n in n_range:
        pi = steady_state(p, n)
        w = diffusion.steady_density(dp, n * epsilon)
        rows.append(
            ComparisonRow(n=n, scaled_pi=pi / epsilon, w_value=w, delta=(w * epsilon - pi) / pi)
        )
    return rows


def rate_invariance_check(
    dp: DiffusionParams,
    epsilon: float,
    h: float,
    n_grid: Sequence[int] = tuple(range(-10, 11)),
) -> float:
    """Residual of the rescaling family (eps, drift components, sigma) -> h
    multiples.

    Scaling eps, lam_hat, mu_hat and sigma (so sigma2 by h^2) leaves the
    induced lattice rates unchanged and preserves the per-site stationary
    mass, W_h(n eps_h) eps_h = W(n eps) eps.  Returns the largest violation:
    relative for the rates, absolute for the mass products.
    """
    if h <= 0.0:
        raise ValueError(f"h must be positive, got {h}")
    scaled = DiffusionParams(
        lam_hat=dp.lam_hat * h,
        mu_hat=dp.mu_hat * h,
        sigma2=dp.sigma2 * h * h,
        nu=dp.nu,
        eta=dp.eta,
    )
    eps_h = epsilon * h
    base_rates = scale_params(dp, epsilon)
    moved_rates = scale_params(scaled, eps_h)
    residual = max(
        abs(moved_rates.lam - base_rates.lam) / base_rates.lam,
        abs(moved_rates.mu - base_rates.mu) / base_rates.mu,
    )
    for n in n_grid:
        base = diffusion.steady_density(dp, n * epsilon) * epsilon
        moved = diffusion.steady_density(scaled, n * eps_h) * eps_h
        residual = max(residual, abs(moved - base))
    return residual


def laplace_convergence(
    dp: DiffusionParams,
    z: float,
    x: float,
    eps_list: Sequence[float],
) -> list[tuple[float, float]]:
    """Per-epsilon gaps |P_n*(z)/eps - f*(x,z)| with n the lattice site nearest
    x/eps (round half to even).  The gaps shrink as eps does."""
    target = diffusion.laplace_density(dp, x, z)
    gaps = []
    for epsilon in eps_list:
        p = scale_params(dp, epsilon)
        n = round(x / epsilon)
        gaps.append((epsilon, abs(laplace_pn(p, n, z) / epsilon - target)))
    return gaps


def mean_correspondence_check(
    dp: DiffusionParams, epsilon: float, t_grid: Sequence[float]
) -> float:
    """Max over the grid of |lattice mean - diffusion mean / eps|.

    The identity is exact algebra (the lattice drift is drift/eps), so the
    residual is pure floating-point noise.
    """
    from .discrete import mean_transient

    p = scale_params(dp, epsilon)
    return max(
        abs(mean_transient(p, t) - diffusion.mean_x(dp, t) / epsilon) for t in t_grid
    )


def asymptotic_variance_gap(dp: DiffusionParams, epsilon: float) -> tuple[float, float]:
    """Finite-spacing gap between the rescaled lattice variance limit and the
    diffusion variance limit, together with its exact closed form.

    eps^2 V_N(inf) - V_X(inf) = (lam_hat + mu_hat) eps eta / ((eta + nu) nu):
    the lattice carries (lam+mu) eps^2 = sigma2 + (lam_hat + mu_hat) eps where
    the diffusion carries sigma2, so the limits agree only as eps -> 0.
    """
    from .discrete import asymptotic_variance

    p = scale_params(dp, epsilon)
    _, diffusion_limit = diffusion.asymptotic_moments(dp)
    gap = epsilon * epsilon * asymptotic_variance(p) - diffusion_limit
    predicted = (dp.lam_hat + dp.mu_hat) * epsilon * dp.eta / ((dp.eta + dp.nu) * dp.nu)
    return gap, predicted
