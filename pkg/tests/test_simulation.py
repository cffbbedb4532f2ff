import numpy as np
import pytest
from scipy import stats

from catwalk import discrete as d
from catwalk import diffusion as f
from catwalk import simulate as sim

SYMMETRIC = d.DiscreteParams(2.0, 2.0, 0.1, 1.0)
FIG4 = f.DiffusionParams(3.0, 1.0, 1.0, 1.0, 1.0)


def _config(seed=1234, reps=20_000, horizon=1.0, times=(1.0,)):
    return sim.SimConfig(seed=seed, replications=reps, horizon=horizon, observation_times=times)


class TestSimConfig:
    def test_rejects_zero_replications(self):
        with pytest.raises(ValueError):
            _config(reps=0)

    def test_rejects_observations_outside_horizon(self):
        with pytest.raises(ValueError):
            _config(times=(0.5, 2.0))
        with pytest.raises(ValueError):
            _config(times=(0.0, 1.0))

    def test_rejects_unsorted_observations(self):
        with pytest.raises(ValueError):
            _config(times=(0.8, 0.4))

    def test_rejects_empty_observations(self):
        with pytest.raises(ValueError):
            _config(times=())


class TestTraceLegality:
    def test_event_times_strictly_increase(self):
        for trace in sim.simulate_discrete(SYMMETRIC, _config(reps=200, horizon=4.0, times=(4.0,))):
            times = [when for when, _ in trace.events]
            assert all(b > a for a, b in zip(times, times[1:]))

    def test_catastrophe_always_repaired_before_motion(self):
        p = d.DiscreteParams(2.0, 2.0, 2.0, 3.0)
        for trace in sim.simulate_discrete(p, _config(reps=300, horizon=3.0, times=(3.0,))):
            failed = False
            for _, kind in trace.events:
                if failed:
                    assert kind == "repair_done"
                    failed = False
                elif kind == "catastrophe":
                    failed = True

    def test_state_restarts_at_zero_after_repair(self):
        p = d.DiscreteParams(2.0, 1.0, 1.0, 2.0)
        cfg = _config(reps=300, horizon=2.0, times=(0.5, 1.0, 1.5, 2.0))
        for trace in sim.simulate_discrete(p, cfg):
            state, failed = 0, False
            events = iter(trace.events)
            position = 0
            log = list(trace.events)
            for when, observed in trace.observations:
                while position < len(log) and log[position][0] <= when:
                    kind = log[position][1]
                    if kind == "up":
                        state += 1
                    elif kind == "down":
                        state -= 1
                    elif kind == "catastrophe":
                        failed = True
                    else:
                        failed, state = False, 0
                    position += 1
                assert observed == (sim.FAILED if failed else state)

    def test_no_catastrophes_without_rate(self):
        p = d.DiscreteParams(2.0, 1.0, 0.0, 1.0)
        for trace in sim.simulate_discrete(p, _config(reps=100)):
            assert all(kind in ("up", "down") for _, kind in trace.events)
        dp = f.DiffusionParams(3.0, 1.0, 1.0, 0.0, 1.0)
        for trace in sim.simulate_diffusion(dp, _config(reps=100)):
            assert trace.events == ()


class TestDeterminism:
    def test_runs_are_bit_identical(self):
        cfg = _config(reps=50, times=(0.5, 1.0))
        first = list(sim.simulate_discrete(SYMMETRIC, cfg))
        second = list(sim.simulate_discrete(SYMMETRIC, cfg))
        assert first == second

    def test_replications_are_order_independent(self):
        cfg = _config(reps=10)
        batch = list(sim.simulate_discrete(SYMMETRIC, cfg))
        # drawing replication 7 on its own gives the same path as in the batch
        alone = sim._discrete_path(SYMMETRIC, cfg, 7)
        assert alone == batch[7]

    def test_diffusion_runs_are_bit_identical(self):
        cfg = _config(reps=50)
        first = list(sim.simulate_diffusion(FIG4, cfg))
        second = list(sim.simulate_diffusion(FIG4, cfg))
        assert first == second


class TestDiscreteAgainstAnalytic:
    def test_failure_probability(self):
        p = d.DiscreteParams(1.0, 1.0, 1.0, 1.0)
        traces = sim.simulate_discrete(p, _config(seed=101, reps=20_000))
        est = sim.estimate(traces, 1.0, "failure-probability")
        target = d.failure_probability(p, 1.0)
        assert abs(est.value - target) <= 3.0 * est.standard_error

    def test_truncated_mean(self):
        p = d.DiscreteParams(2.0, 1.0, 0.5, 1.0)
        traces = sim.simulate_discrete(p, _config(seed=202, reps=20_000))
        est = sim.estimate(traces, 1.0, "truncated-mean")
        assert abs(est.value - d.mean_transient(p, 1.0)) <= 3.0 * est.standard_error

    def test_steady_regime_state_probability(self):
        p = d.DiscreteParams(2.0, 1.0, 1.0, 1.0)
        cfg = _config(seed=303, reps=2_000, horizon=200.0, times=(200.0,))
        traces = sim.simulate_discrete(p, cfg)
        est = sim.estimate(traces, 200.0, "state-probability", 0)
        assert abs(est.value - d.steady_state(p, 0)) <= 3.0 * est.standard_error

    def test_chi_square_fit_of_the_transient_law(self):
        # fixed-seed regression over the window [-8, 8] plus F plus the rest
        cfg = _config(seed=987654321, reps=100_000)
        states = [tr.observations[0][1] for tr in sim.simulate_discrete(SYMMETRIC, cfg)]
        categories = list(range(-8, 9)) + [sim.FAILED, "other"]
        counts = dict.fromkeys(categories, 0)
        for state in states:
            if state == sim.FAILED:
                counts[sim.FAILED] += 1
            elif isinstance(state, int) and -8 <= state <= 8:
                counts[state] += 1
            else:
                counts["other"] += 1
        expected = {n: d.transient_probability(SYMMETRIC, n, 1.0) for n in range(-8, 9)}
        expected[sim.FAILED] = d.failure_probability(SYMMETRIC, 1.0)
        expected["other"] = 1.0 - sum(expected.values())
        observed = np.array([counts[c] for c in categories], dtype=float)
        reference = np.array([expected[c] * cfg.replications for c in categories])
        _, p_value = stats.chisquare(observed, reference)
        assert p_value > 0.001


class TestDiffusionAgainstAnalytic:
    def test_pure_wiener_marginal(self):
        dp = f.DiffusionParams(3.0, 1.0, 1.5, 0.0, 1.0)
        traces = list(sim.simulate_diffusion(dp, _config(seed=404, reps=20_000)))
        mean = sim.estimate(traces, 1.0, "truncated-mean")
        var = sim.estimate(traces, 1.0, "truncated-variance")
        assert abs(mean.value - dp.drift) <= 3.0 * mean.standard_error
        assert abs(var.value - dp.sigma2) <= 3.0 * var.standard_error

    def test_reference_failure_mass_and_mean(self):
        traces = list(sim.simulate_diffusion(FIG4, _config(seed=505, reps=20_000)))
        q = sim.estimate(traces, 1.0, "failure-probability")
        mean = sim.estimate(traces, 1.0, "truncated-mean")
        assert abs(q.value - 0.432332) <= 3.0 * q.standard_error
        assert abs(mean.value - 0.865) <= 3.0 * mean.standard_error

    def test_cdf_estimate(self):
        traces = list(sim.simulate_diffusion(FIG4, _config(seed=606, reps=20_000)))
        est = sim.estimate(traces, 1.0, "cdf", 0.0)
        # P(X(1) <= 0, on) from the transient density
        expected, _ = __import__("scipy.integrate", fromlist=["quad"]).quad(
            lambda x: f.transient_density(FIG4, x, 1.0), -12.0, 0.0
        )
        assert abs(est.value - expected) <= 3.0 * est.standard_error


class TestEstimate:
    def test_single_replication_has_no_standard_error(self):
        traces = sim.simulate_discrete(SYMMETRIC, _config(reps=1))
        est = sim.estimate(traces, 1.0, "truncated-mean")
        assert est.standard_error is None
        assert est.replications == 1

    def test_time_zero_is_exact(self):
        traces = list(sim.simulate_discrete(SYMMETRIC, _config(reps=5)))
        assert sim.estimate(traces, 0.0, "failure-probability").value == 0.0
        assert sim.estimate(traces, 0.0, "state-probability", 0).value == 1.0
        assert sim.estimate(traces, 0.0, "truncated-mean").value == 0.0

    def test_state_probability_rejected_on_diffusion_traces(self):
        traces = list(sim.simulate_diffusion(FIG4, _config(reps=10)))
        with pytest.raises(ValueError):
            sim.estimate(traces, 1.0, "state-probability", 0)

    def test_unknown_statistic_rejected(self):
        traces = list(sim.simulate_discrete(SYMMETRIC, _config(reps=5)))
        with pytest.raises(ValueError):
            sim.estimate(traces, 1.0, "median")

    def test_missing_time_rejected(self):
        traces = list(sim.simulate_discrete(SYMMETRIC, _config(reps=5)))
        with pytest.raises(ValueError):
            sim.estimate(traces, 0.25, "failure-probability")

    def test_cdf_on_discrete_traces(self):
        traces = list(sim.simulate_discrete(SYMMETRIC, _config(seed=707, reps=5_000)))
        est = sim.estimate(traces, 1.0, "cdf", 0.0)
        expected = sum(d.transient_probability(SYMMETRIC, n, 1.0) for n in range(-30, 1))
        assert abs(est.value - expected) <= 3.0 * est.standard_error


class TestExport:
    def test_round_trip_structure(self, tmp_path):
        cfg = _config(reps=4, times=(0.5, 1.0))
        traces = list(sim.simulate_discrete(SYMMETRIC, cfg))
        target = tmp_path / "traces.log"
        sim.export_traces(traces, str(target), {"model": "discrete", "lam": 2.0}, cfg)
        lines = target.read_text().splitlines()
        assert lines[0] == "# catwalk-traces v1"
        assert lines[1].startswith("# params ")
        assert "seed 1234" in lines[2]
        records = [line.split("\t") for line in lines if not line.startswith("#")]
        events = sum(1 for r in records if r[1] == "event")
        observations = sum(1 for r in records if r[1] == "obs")
        assert events == sum(len(t.events) for t in traces)
        assert observations == sum(len(t.observations) for t in traces)
