"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

The checks themselves live in holopath.verify so that `holopath verify`
runs the identical suite from the command line.
"""

from holopath import verify

LEVEL = "full"


def _run(check):
    result = check(level=LEVEL, seed=verify.DEFAULT_SEED)
    print(result.line)
    assert result.passed, result.detail
    return result


def test_criterion_1_figure1_reproduction():
    _run(verify.check_figure1)


def test_criterion_2_two_loop_coefficients():
    _run(verify.check_two_loop_coefficients)


def test_criterion_3_single_loop_and_single_shot_coefficients():
    _run(verify.check_other_scheme_coefficients)


def test_criterion_4_phi_b_optimality():
    _run(verify.check_phi_b_optimality)


def test_criterion_5_relative_error_consistency():
    _run(verify.check_relative_error_consistency)


def test_criterion_6_kappa_optimality():
    _run(verify.check_kappa_optimality)


def test_criterion_7_oracle_equivalence():
    result = _run(verify.check_oracle_equivalence)
    assert result.seconds < 120.0


def test_criterion_8_structural_suite():
    _run(verify.check_structural)
