import math

import numpy as np
import pytest

from support import random_causal_polyline

from causalmetrics.errors import InvariantError
from causalmetrics.extreal import MINUS_INF, PLUS_INF, ExtReal, add_gain
from causalmetrics.finspace import SpaceKind
from causalmetrics.pathval import (
    MetricFunction,
    PolylinePath,
    ValuationTrace,
    delta_line,
    gain_line,
    partition_sum,
    potential_metric,
    refine_valuation,
    rho_line,
)
from causalmetrics.spacetime import MetricField, event_metric


def straight(t):
    return t


# ------------------------------------------------------------- PolylinePath


def test_path_validation():
    with pytest.raises(ValueError):
        PolylinePath.of([0.0, 0.5], [0.0, 1.0, 2.0])
    with pytest.raises(ValueError):
        PolylinePath.of([0.1, 1.0], [0.0, 1.0])
    with pytest.raises(ValueError):
        PolylinePath.of([0.0, 0.9], [0.0, 1.0])
    with pytest.raises(ValueError):
        PolylinePath.of([0.0, 0.6, 0.4, 1.0], [0.0, 1.0, 2.0, 3.0])
    with pytest.raises(ValueError):
        PolylinePath.of([0.0], [0.0])


def test_repeated_parameters_collapse():
    path = PolylinePath.of([0.0, 0.5, 0.5, 1.0], [0.0, 1.0, 1.0, 2.0])
    assert path.params == (0.0, 0.5, 1.0)
    assert len(path) == 3


def test_interpolation():
    path = PolylinePath.of([0.0, 0.5, 1.0], [[0.0, 0.0], [1.0, 2.0], [2.0, 0.0]])
    assert np.allclose(path.at(0.25), [0.5, 1.0])
    assert np.allclose(path.at(1.0), [2.0, 0.0])
    with pytest.raises(ValueError):
        path.at(1.5)


def test_path_json_round_trip():
    path = PolylinePath.of([0.0, 1.0], [[0.0, 0.0], [2.0, 1.0]])
    doc = path.to_json()
    back = PolylinePath.from_json(doc)
    assert back.params == path.params
    assert np.allclose(back.point_array(), path.point_array())

    scalar = PolylinePath.of([0.0, 1.0], [0.0, 3.0])
    assert scalar.to_json()["points"] == [0.0, 3.0]


# ------------------------------------------------------------ partition_sum


def test_delta_line_forward_telescopes():
    path = PolylinePath.of([0.0, 0.5, 1.0], [0.0, 0.5, 1.0])
    assert partition_sum(delta_line(), path, [0, 1, 2]) == ExtReal(1.0)
    assert partition_sum(delta_line(), path, [0, 2]) == ExtReal(1.0)


def test_delta_line_backward_is_unaffordable():
    path = PolylinePath.of([0.0, 0.5, 1.0], [1.0, 0.5, 0.0])
    assert partition_sum(delta_line(), path, [0, 1, 2]) == PLUS_INF
    assert partition_sum(delta_line(), path, [0, 2]) == PLUS_INF


def test_rho_line_any_partition_telescopes():
    rng = np.random.default_rng(5)
    metric = rho_line()
    for _ in range(50):
        k = int(rng.integers(2, 9))
        params = np.linspace(0.0, 1.0, k)
        pts = rng.normal(size=k) * 4.0
        path = PolylinePath.of(params, pts.tolist())
        idx = sorted({0, k - 1, *rng.integers(0, k, size=3).tolist()})
        total = partition_sum(metric, path, idx)
        assert abs(total.to_float() - (pts[-1] - pts[0])) < 1e-12


def test_partition_argument_errors():
    path = PolylinePath.of([0.0, 0.5, 1.0], [0.0, 0.5, 1.0])
    with pytest.raises(ValueError):
        partition_sum(rho_line(), path, [0, 1])  # missing the last sample
    with pytest.raises(ValueError):
        partition_sum(rho_line(), path, [1, 2])  # missing the first
    with pytest.raises(ValueError):
        partition_sum(rho_line(), path, [0, 0, 2])


# ---------------------------------------------------------- refine_valuation


def test_delta_line_straight_path_every_level_one():
    trace = refine_valuation(delta_line(), straight, levels=5)
    for s in trace.sums:
        assert abs(s.to_float() - 1.0) < 1e-12
    assert trace.estimate == trace.sums[-1]


def test_rho_line_wiggly_path_telescopes():
    wiggle = lambda t: math.sin(math.pi * t) / 2 + t
    trace = refine_valuation(rho_line(), wiggle, levels=6)
    for s in trace.sums:
        assert abs(s.to_float() - (wiggle(1.0) - wiggle(0.0))) < 1e-12


def test_minkowski_straight_path_every_level_sqrt3():
    metric = event_metric(MetricField.minkowski(2))
    path = PolylinePath.of([0.0, 1.0], [[0.0, 0.0], [2.0, 1.0]])
    trace = refine_valuation(metric, path.at, levels=6)
    root3 = math.sqrt(3.0)
    for lvl, s in enumerate(trace.sums):
        assert abs(s.to_float() - root3) < 1e-12
        # independent per-level partition sum
        k = 1 << lvl
        oracle = sum(
            math.sqrt(
                (path.at((i + 1) / k)[0] - path.at(i / k)[0]) ** 2
                - (path.at((i + 1) / k)[1] - path.at(i / k)[1]) ** 2
            )
            for i in range(k)
        )
        assert abs(s.to_float() - oracle) < 1e-12


def test_delta_line_backward_step_absorbs_and_is_final():
    # forward at level 0, backward move visible from level 2 on
    path = lambda t: t + math.sin(2 * math.pi * t) / 3
    trace = refine_valuation(delta_line(), path, levels=5)
    assert abs(trace.sums[0].to_float() - 1.0) < 1e-12
    assert trace.estimate == PLUS_INF
    seen_inf = False
    for s in trace.sums:
        if seen_inf:
            assert s == PLUS_INF
        seen_inf = seen_inf or s == PLUS_INF
    assert seen_inf


def test_gamma_short_circuit_on_cone_exit():
    metric = event_metric(MetricField.minkowski(2))
    path = lambda t: np.array([t, 0.6 * math.sin(2 * math.pi * t)])
    trace = refine_valuation(metric, path, levels=4)
    assert trace.estimate == MINUS_INF
    assert trace.sums[-1] == MINUS_INF


def test_levels_validation():
    with pytest.raises(ValueError):
        refine_valuation(rho_line(), straight, levels=0)


def test_non_metric_trips_the_monotonicity_check():
    # Squared differences violate the triangle inequality, so the cost sum
    # shrinks under refinement and the trace assertion must fire.
    bogus = MetricFunction(SpaceKind.RHO, lambda x, y: ExtReal((y - x) ** 2))
    with pytest.raises(InvariantError):
        refine_valuation(bogus, straight, levels=3)


# ----------------------------------------------------------- monotonicity


def test_refinement_monotone_on_line_metrics():
    rng = np.random.default_rng(17)
    for metric, sign in ((delta_line(), +1), (rho_line(), +1), (gain_line(), -1)):
        for _ in range(40):
            k = int(rng.integers(2, 7))
            pts = rng.normal(size=k).tolist()
            interior = (np.arange(1, k - 1) + rng.uniform(-0.3, 0.3, size=k - 2)) / (k - 1)
            path = PolylinePath.of([0.0, *interior.tolist(), 1.0], pts)
            trace = refine_valuation(metric, path.at, levels=4)
            floats = [s.to_float() for s in trace.sums]
            for a, b in zip(floats, floats[1:]):
                if sign > 0:
                    assert b >= a - 1e-9
                else:
                    assert b <= a + 1e-9


def test_inserting_one_point_never_decreases_cost_sum():
    rng = np.random.default_rng(19)
    metric = delta_line()
    for _ in range(60):
        k = int(rng.integers(4, 9))
        pts = np.abs(rng.normal(size=k)).cumsum()  # forward path
        params = np.linspace(0.0, 1.0, k)
        path = PolylinePath.of(params, pts.tolist())
        idx = sorted({0, k - 1, *rng.integers(0, k, size=2).tolist()})
        missing = [i for i in range(k) if i not in idx]
        if not missing:
            continue
        finer = sorted(idx + [missing[int(rng.integers(0, len(missing)))]])
        coarse = partition_sum(metric, path, idx)
        fine = partition_sum(metric, path, finer)
        assert fine.to_float() >= coarse.to_float() - 1e-9


def test_refinement_monotone_on_minkowski_event_metric():
    rng = np.random.default_rng(29)
    metric = event_metric(MetricField.minkowski(2))
    for _ in range(30):
        path = random_causal_polyline(rng, 2)
        trace = refine_valuation(metric, path.at, levels=4)
        floats = [s.to_float() for s in trace.sums]
        for a, b in zip(floats, floats[1:]):
            assert b <= a + 1e-9


# ----------------------------------------------------------- line metrics


def test_standard_metric_values():
    d = delta_line()
    assert d(3.0, 5.0) == ExtReal(2.0)
    assert d(5.0, 3.0) == PLUS_INF
    r = rho_line()
    assert r(4.0, 1.5) == ExtReal(-2.5)
    g = gain_line()
    assert g.kind is SpaceKind.GAMMA
    assert g(1.0, 3.0) == ExtReal(2.0)
    p = potential_metric(lambda x: x * x)
    assert p(1.0, 3.0) == ExtReal(8.0)


def test_potential_partition_sums_telescope_exactly():
    # dyadic samples of a dyadic potential: float sums are exact
    phi = lambda x: x * x
    metric = potential_metric(phi)
    params = [0.0, 0.25, 0.5, 0.75, 1.0]
    pts = [0.0, 4.0, -2.0, 8.0, 3.0]
    path = PolylinePath.of(params, pts)
    assert partition_sum(metric, path, [0, 1, 2, 3, 4]) == ExtReal(phi(3.0) - phi(0.0))
    assert partition_sum(metric, path, [0, 2, 4]) == ExtReal(9.0)


def test_potential_telescopes_within_float_noise():
    rng = np.random.default_rng(31)
    phi = math.exp
    metric = potential_metric(phi)
    for _ in range(40):
        k = int(rng.integers(2, 8))
        pts = rng.normal(size=k).tolist()
        path = PolylinePath.of(np.linspace(0.0, 1.0, k), pts)
        total = partition_sum(metric, path, list(range(k)))
        assert abs(total.to_float() - (phi(pts[-1]) - phi(pts[0]))) < 1e-12


def test_metric_function_rejects_delta_kind():
    with pytest.raises(ValueError):
        MetricFunction(SpaceKind.DELTA, lambda x, y: ExtReal(0.0))


def test_trace_json():
    trace = refine_valuation(rho_line(), straight, levels=2)
    doc = trace.to_json()
    assert [d["level"] for d in doc] == [0, 1, 2]
    back = ValuationTrace.from_json(doc)
    assert back.sums == trace.sums
