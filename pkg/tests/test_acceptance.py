"""The thirteen acceptance criteria, one test per criterion.

Each test runs the shared criterion implementation and asserts every
residual-vs-threshold comparison it contains, so a failure names the exact
quantity and the measured residual.
"""

import pytest

from finsler import acceptance


def _assert_criterion(result):
    for check in result.checks:
        cmp = "<" if check.mode == "lt" else ">"
        assert check.passed, (
            f"criterion {result.number} ({result.title}): {check.label} "
            f"residual {check.residual:.3e} not {cmp} {check.threshold:.1e}")


def test_criterion_01_lie_group_components():
    _assert_criterion(acceptance.criterion_1())


def test_criterion_02_lie_group_verdicts():
    _assert_criterion(acceptance.criterion_2())


def test_criterion_03_fish_tank():
    _assert_criterion(acceptance.criterion_3())


def test_criterion_04_sphere_randers():
    _assert_criterion(acceptance.criterion_4())


def test_criterion_05_warped_surface():
    _assert_criterion(acceptance.criterion_5())


def test_criterion_06_unicorn_family():
    _assert_criterion(acceptance.criterion_6())


def test_criterion_07_dual_routes():
    _assert_criterion(acceptance.criterion_7())


def test_criterion_08_surface_identities():
    _assert_criterion(acceptance.criterion_8())


def test_criterion_09_bao_shen():
    _assert_criterion(acceptance.criterion_9())


def test_criterion_10_proj_sphere_killing():
    _assert_criterion(acceptance.criterion_10())


def test_criterion_11_length_gradient():
    _assert_criterion(acceptance.criterion_11())


def test_criterion_12_zermelo():
    _assert_criterion(acceptance.criterion_12())


def test_criterion_13_structural_invariants():
    _assert_criterion(acceptance.criterion_13())


def test_run_all_is_green():
    results = acceptance.run_all(seed=42)
    assert len(results) == 13
    assert all(r.passed for r in results)
