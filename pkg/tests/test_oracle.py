import numpy as np
import pytest

from holopath import oracle
from holopath.linalg import IDENTITY
from holopath.oracle import (
    PulseEnvelope,
    Schedule,
    ScheduleSegment,
    closed_form_limit,
    convergence_order,
    propagate,
    schedule_for_single_loop,
    schedule_for_single_shot,
    schedule_for_two_loop,
)
from holopath.schemes import (
    LoopParams,
    RabiError,
    SingleLoopPath,
    SingleShotPath,
    TwoLoopPath,
    coupling_generator,
    single_loop_errored,
    single_shot_errored,
    two_loop_errored_relative,
    two_loop_ideal,
)


def random_two_loop(rng):
    return TwoLoopPath(
        LoopParams(rng.uniform(0, np.pi), rng.uniform(0, 2 * np.pi), rng.uniform(0, 2 * np.pi)),
        LoopParams(rng.uniform(0, np.pi), rng.uniform(0, 2 * np.pi), rng.uniform(0, 2 * np.pi)),
    )


@pytest.mark.parametrize("shape", ["square", "sine", "sine-squared"])
def test_envelope_calibrated_area(shape):
    env = PulseEnvelope(shape, duration=0.7, target_area=np.pi)
    assert abs(env.area() - np.pi) <= 1e-10


def test_envelope_validation():
    with pytest.raises(ValueError):
        PulseEnvelope("triangle", 1.0, np.pi)
    with pytest.raises(ValueError):
        PulseEnvelope("square", -1.0, np.pi)
    with pytest.raises(ValueError):
        PulseEnvelope("square", 0.0, np.pi)


def test_segment_requires_hermitian_generator():
    from holopath.linalg import ContractViolation

    bad = np.zeros((3, 3), dtype=complex)
    bad[0, 2] = 1.0
    with pytest.raises(ContractViolation):
        ScheduleSegment(PulseEnvelope("square", 1.0, np.pi), bad)


@pytest.mark.parametrize("shape", ["square", "sine-squared"])
def test_propagate_single_pi_pulse_matches_loop_gate(shape):
    gen = coupling_generator(0.8, 0.4, 1.2)
    schedule = Schedule((ScheduleSegment(PulseEnvelope(shape, 1.0, np.pi), gen),))
    from holopath.linalg import expm

    np.testing.assert_allclose(propagate(schedule, 10_000), expm(gen, np.pi), atol=1e-8)


def test_envelope_independence(rng):
    gen = coupling_generator(1.1, 2.0, 0.3)
    results = []
    for shape in ("square", "sine-squared"):
        schedule = Schedule((ScheduleSegment(PulseEnvelope(shape, 1.3, np.pi / 2), gen, 1.02),))
        results.append(propagate(schedule, 20_000))
    assert np.max(np.abs(results[0] - results[1])) <= 1e-8


def test_propagate_unitary(rng):
    schedule = schedule_for_two_loop(random_two_loop(rng), RabiError(0.03, -0.01), "sine-squared")
    u = propagate(schedule, 1000)
    assert np.max(np.abs(u.conj().T @ u - IDENTITY)) <= 1e-10


def test_propagate_requires_enough_steps(rng):
    schedule = schedule_for_two_loop(random_two_loop(rng))
    with pytest.raises(ValueError):
        propagate(schedule, 99)


def test_propagate_empty_schedule_warns():
    with pytest.warns(RuntimeWarning):
        u = propagate(Schedule(()), 1000)
    np.testing.assert_allclose(u, IDENTITY, atol=0)


def test_propagate_zero_duration_segment_is_identity():
    gen = coupling_generator(0.5, 0.1, 0.2)
    schedule = Schedule((ScheduleSegment(PulseEnvelope("square", 0.0, 0.0), gen),))
    np.testing.assert_allclose(propagate(schedule, 1000), IDENTITY, atol=0)


def test_schedules_match_scheme_constructors(rng):
    # spot check at moderate step count; the acceptance suite runs the full sweep
    for _ in range(5):
        error = RabiError(rng.uniform(-0.05, 0.05), rng.uniform(-0.05, 0.05))
        common = RabiError(error.epsilon)

        path2 = random_two_loop(rng)
        closed = two_loop_errored_relative(path2, error)
        for shape in ("square", "sine-squared"):
            stepped = propagate(schedule_for_two_loop(path2, error, shape), 20_000)
            assert np.max(np.abs(stepped - closed)) <= 1e-8

        path_sl = SingleLoopPath(rng.uniform(0, np.pi), rng.uniform(0, 2 * np.pi),
                                 rng.uniform(0, 2 * np.pi), rng.uniform(0, 2 * np.pi))
        closed = single_loop_errored(path_sl, common)
        stepped = propagate(schedule_for_single_loop(path_sl, common, "sine-squared"), 20_000)
        assert np.max(np.abs(stepped - closed)) <= 1e-8

        path_ss = SingleShotPath(rng.uniform(0, np.pi / 2), rng.uniform(0, 2 * np.pi),
                                 rng.uniform(0, 2 * np.pi), rng.uniform(-np.pi / 2, np.pi / 2))
        closed = single_shot_errored(path_ss, common)
        stepped = propagate(schedule_for_single_shot(path_ss, common, "square"), 20_000)
        assert np.max(np.abs(stepped - closed)) <= 1e-8


def test_schedule_builders_reject_relative_error_where_undefined(rng):
    with pytest.raises(ValueError):
        schedule_for_single_loop(SingleLoopPath(0.5, 0.1, 0.2, 0.3), RabiError(0.01, 0.001))
    with pytest.raises(ValueError):
        schedule_for_single_shot(SingleShotPath(0.5, 0.1, 0.2, 0.3), RabiError(0.01, 0.001))


def test_two_loop_ideal_schedule(rng):
    path = random_two_loop(rng)
    stepped = propagate(schedule_for_two_loop(path), 10_000)
    assert np.max(np.abs(stepped - two_loop_ideal(path))) <= 1e-8


def test_convergence_second_order_for_half_sine():
    # the half-sine arch has a genuine O(1/N^2) midpoint quadrature error
    gen = coupling_generator(0.8, 0.4, 1.2)
    schedule = Schedule((ScheduleSegment(PulseEnvelope("sine", 1.0, np.pi), gen),))
    p = convergence_order(schedule, steps=1000)
    assert p == pytest.approx(2.0, abs=0.2)
    ref = closed_form_limit(schedule)
    err1 = np.max(np.abs(propagate(schedule, 1000) - ref))
    err2 = np.max(np.abs(propagate(schedule, 2000) - ref))
    assert err1 / err2 >= 3.0
    assert np.max(np.abs(propagate(schedule, 200_000) - ref)) <= 1e-8


def test_convergence_exact_shapes_hit_roundoff_floor():
    # midpoint integrates the square (constant) and sine-squared (periodic)
    # envelopes exactly, so the error sits at the floor and p is indeterminate
    gen = coupling_generator(0.8, 0.4, 1.2)
    for shape in ("square", "sine-squared"):
        schedule = Schedule((ScheduleSegment(PulseEnvelope(shape, 1.0, np.pi), gen),))
        assert convergence_order(schedule, steps=1000) == np.inf


def test_closed_form_limit_matches_constructor(rng):
    path = random_two_loop(rng)
    error = RabiError(0.02, 0.01)
    limit = closed_form_limit(schedule_for_two_loop(path, error))
    assert np.max(np.abs(limit - two_loop_errored_relative(path, error))) <= 1e-12


def test_schedule_duration():
    gen = coupling_generator(0.5, 0.1, 0.2)
    schedule = Schedule(
        (
            ScheduleSegment(PulseEnvelope("square", 1.0, np.pi), gen),
            ScheduleSegment(PulseEnvelope("sine", 0.5, np.pi / 2), gen),
        )
    )
    assert schedule.duration == pytest.approx(1.5)
