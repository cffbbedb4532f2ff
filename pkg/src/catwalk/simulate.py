"""Event-driven simulation of both models, usable as an independent oracle.

Discrete paths are exact continuous-time Markov chain samples; diffusion
paths sample exact Gaussian increments between the catastrophe/repair event
skeleton, so observed marginals carry no discretization bias.

Randomness is split per replication with a counter-based generator: path i of
a run seeded with s draws from ``Philox(key=(s, i))``.  Replications are
therefore independent of execution order and worker count, and a single
(seed, index) pair always reproduces the same path.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Union

import numpy as np

from .discrete import DiscreteParams
from .diffusion import DiffusionParams

__all__ = [
    "FAILED",
    "SimConfig",
    "PathTrace",
    "EmpiricalEstimate",
    "simulate_discrete",
    "simulate_diffusion",
    "estimate",
    "export_traces",
]

#: observation marker for the failure state
FAILED = "F"

State = Union[int, float, str]


@dataclass(frozen=True)
class SimConfig:
    """Replication plan: master seed, count, horizon and observation grid."""

    seed: int
    replications: int
    horizon: float
    observation_times: tuple[float, ...]

    def __post_init__(self) -> None:
        if self.replications < 1:
            raise ValueError("replications must be >= 1")
        if not self.horizon > 0.0:
            raise ValueError("horizon must be positive")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 unsigned bits")
        times = tuple(float(t) for t in self.observation_times)
        if not times:
            raise ValueError("at least one observation time is required")
        if any(not 0.0 < t <= self.horizon for t in times):
            raise ValueError("observation times must lie in (0, horizon]")
        if any(b <= a for a, b in zip(times, times[1:])):
            raise ValueError("observation times must be strictly increasing")
        object.__setattr__(self, "observation_times", times)


@dataclass(frozen=True)
class PathTrace:
    """One simulated path: event log plus state snapshots at observation times."""

    events: tuple[tuple[float, str], ...]
    observations: tuple[tuple[float, State], ...]


@dataclass(frozen=True)
class EmpiricalEstimate:
    """Monte Carlo point estimate; ``standard_error`` is None when a single
    replication makes the spread unestimable."""

    value: float
    standard_error: Optional[float]
    replications: int


def _stream(seed: int, replication: int) -> np.random.Generator:
    key = np.array([seed, replication], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def _discrete_path(p: DiscreteParams, cfg: SimConfig, replication: int) -> PathTrace:
    rng = _stream(cfg.seed, replication)
    events: list[tuple[float, str]] = []
    observations: list[tuple[float, State]] = []
    pending = list(cfg.observation_times)
    obs_at = 0
    t = 0.0
    state = 0
    failed = False
    total = p.lam + p.mu + p.nu
    up_cut = p.lam / total
    down_cut = (p.lam + p.mu) / total
    while True:
        if failed:
            dt = rng.exponential(1.0 / p.eta)
            kind = "repair_done"
        else:
            dt = rng.exponential(1.0 / total)
            u = rng.random()
            kind = "up" if u < up_cut else ("down" if u < down_cut else "catastrophe")
        t_next = t + dt
        while obs_at < len(pending) and pending[obs_at] <= min(t_next, cfg.horizon):
            observations.append((pending[obs_at], FAILED if failed else state))
            obs_at += 1
        if t_next >= cfg.horizon:
            break
        events.append((t_next, kind))
        if kind == "up":
            state += 1
        elif kind == "down":
            state -= 1
        elif kind == "catastrophe":
            failed = True
        else:
            failed = False
            state = 0
        t = t_next
    return PathTrace(events=tuple(events), observations=tuple(observations))


def _diffusion_path(dp: DiffusionParams, cfg: SimConfig, replication: int) -> PathTrace:
    rng = _stream(cfg.seed, replication)
    events: list[tuple[float, str]] = []
    observations: list[tuple[float, State]] = []
    pending = list(cfg.observation_times)
    obs_at = 0
    t = 0.0
    x = 0.0
    failed = False
    sigma = math.sqrt(dp.sigma2)
    while True:
        if failed:
            dt = rng.exponential(1.0 / dp.eta)
            kind = "repair_done"
        else:
            dt = rng.exponential(1.0 / dp.nu) if dp.nu > 0.0 else math.inf
            kind = "catastrophe"
        t_next = t + dt
        while obs_at < len(pending) and pending[obs_at] <= min(t_next, cfg.horizon):
            when = pending[obs_at]
            if failed:
                observations.append((when, FAILED))
            else:
                gap = when - t
                x = x + dp.drift * gap + sigma * math.sqrt(gap) * rng.standard_normal()
                t = when
                observations.append((when, x))
            obs_at += 1
        if t_next >= cfg.horizon:
            break
        events.append((t_next, kind))
        if kind == "catastrophe":
            failed = True
        else:
            failed = False
            x = 0.0
        t = t_next
    return PathTrace(events=tuple(events), observations=tuple(observations))


def simulate_discrete(p: DiscreteParams, cfg: SimConfig) -> Iterator[PathTrace]:
    """Exact CTMC paths of the discrete model, one per replication."""
    for replication in range(cfg.replications):
        yield _discrete_path(p, cfg, replication)


def simulate_diffusion(dp: DiffusionParams, cfg: SimConfig) -> Iterator[PathTrace]:
    """Jump-diffusion paths with exact Gaussian marginals at the observation
    times (no Euler stepping)."""
    for replication in range(cfg.replications):
        yield _diffusion_path(dp, cfg, replication)


_STATISTICS = (
    "state-probability",
    "failure-probability",
    "truncated-mean",
    "truncated-variance",
    "cdf",
)


def _initial_value(statistic: str, arg: Optional[float]) -> float:
    # at t = 0 the state is 0 and operating by construction
    if statistic == "state-probability":
        return 1.0 if arg == 0 else 0.0
    if statistic == "failure-probability":
        return 0.0
    if statistic in ("truncated-mean", "truncated-variance"):
        return 0.0
    return 1.0 if arg is not None and arg >= 0.0 else 0.0


def estimate(
    traces: Iterable[PathTrace],
    t: float,
    statistic: str,
    arg: Optional[float] = None,
) -> EmpiricalEstimate:
    """Sample estimator with a replication-based standard error.

    ``arg`` is the state n for ``state-probability`` and the threshold x for
    ``cdf``; truncated statistics zero the state while under repair.  t = 0
    refers to the known initial condition and needs no observation.
    """
    if statistic not in _STATISTICS:
        raise ValueError(f"unknown statistic {statistic!r}, expected one of {_STATISTICS}")
    if statistic in ("state-probability", "cdf") and arg is None:
        raise ValueError(f"statistic {statistic!r} requires an argument")
    traces = list(traces)
    count = len(traces)
    if t == 0.0:
        return EmpiricalEstimate(_initial_value(statistic, arg), 0.0 if count > 1 else None, count)

    def state_at(trace: PathTrace) -> State:
        for when, state in trace.observations:
            if when == t or abs(when - t) <= 1e-12 * max(1.0, t):
                return state
        raise ValueError(f"time {t} is not among the observation times of the trace")

    states = [state_at(trace) for trace in traces]
    if statistic == "state-probability":
        if any(isinstance(s, float) and s != FAILED for s in states):
            raise ValueError(
                "state-probability is undefined for continuous-state traces; use cdf"
            )
        values = np.array([1.0 if s == arg else 0.0 for s in states])
    elif statistic == "failure-probability":
        values = np.array([1.0 if s == FAILED else 0.0 for s in states])
    elif statistic == "cdf":
        values = np.array(
            [1.0 if (s != FAILED and s <= arg) else 0.0 for s in states]
        )
    else:
        values = np.array([0.0 if s == FAILED else float(s) for s in states])

    if statistic == "truncated-variance":
        point = float(np.var(values, ddof=1)) if count > 1 else 0.0
        if count > 1:
            centered = values - values.mean()
            fourth = float(np.mean(centered**4))
            spread = max(fourth - point * point, 0.0)
            se = math.sqrt(spread / count)
        else:
            se = None
        return EmpiricalEstimate(point, se, count)

    point = float(values.mean())
    se = float(values.std(ddof=1) / math.sqrt(count)) if count > 1 else None
    return EmpiricalEstimate(point, se, count)


def export_traces(
    traces: Iterable[PathTrace],
    path: str,
    params: dict,
    cfg: SimConfig,
) -> None:
    """Write one line-delimited file for the run.

    Header lines start with '#': a format tag, the model parameters as JSON,
    and the replication plan.  Then one record per line, tab separated:

        <replication> event <time> <kind>
        <replication> obs   <time> <state>
    """
    with open(path, "w", encoding="utf-8") as sink:
        sink.write("# catwalk-traces v1\n")
        sink.write(f"# params {json.dumps(params, sort_keys=True)}\n")
        sink.write(
            f"# seed {cfg.seed} replications {cfg.replications} horizon {cfg.horizon!r}\n"
        )
        for index, trace in enumerate(traces):
            for when, kind in trace.events:
                sink.write(f"{index}\tevent\t{when!r}\t{kind}\n")
            for when, state in trace.observations:
                sink.write(f"{index}\tobs\t{when!r}\t{state!r}\n")
