"""Acceptance gate: every criterion at its pinned tolerance, one line each.

The criteria live in plaplab.acceptance (shared with the verify-theorems CLI
command); this module runs each one, prints its PASS/FAIL line, and asserts.
"""

import json

import pytest

from plaplab import acceptance


@pytest.fixture(scope="module")
def cache():
    return acceptance.ProfileCache()


def _check(result):
    line = f"{'PASS' if result.passed else 'FAIL'}  {result.key}: {result.description}"
    print(line)
    assert result.passed, (
        f"criterion {result.key} failed; measured: "
        f"{json.dumps(result.measured, default=str)}"
    )


def test_criterion_01_exponent_exactness(cache):
    _check(acceptance.criterion_exponents(cache))


def test_criterion_02_sign_law(cache):
    _check(acceptance.criterion_sign_law(cache))


def test_criterion_03_transform_equivalence(cache):
    _check(acceptance.criterion_transform_equivalence(cache))


def test_criterion_04_closed_form_residuals(cache):
    _check(acceptance.criterion_closed_form_residuals(cache))


def test_criterion_05_pohozaev(cache):
    _check(acceptance.criterion_pohozaev(cache))


def test_criterion_06_instability_certificates(cache):
    _check(acceptance.criterion_gelfand_instability(cache))


def test_criterion_07_stability_outside_compact(cache):
    _check(acceptance.criterion_hardy_stability(cache))


def test_criterion_08_decay_law(cache):
    _check(acceptance.criterion_decay_law(cache))


def test_criterion_09_cutoff_scaling_exponents(cache):
    _check(acceptance.criterion_cutoff_scaling(cache))


def test_criterion_10_stable_profile_audits(cache):
    _check(acceptance.criterion_stable_audits(cache))
