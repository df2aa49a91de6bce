"""Acceptance criteria 1-12, one test each, at their stated sizes and exact tolerance.

Each test prints a single PASS/FAIL line (shown even under output capture).
"""

import pytest

from qsmanin.acceptance import CRITERIA, run_criterion


@pytest.mark.parametrize("number", [c.number for c in CRITERIA],
                         ids=[f"{c.number:02d}-{c.title.replace(' ', '-')}" for c in CRITERIA])
def test_criterion(number, capsys):
    verdict = run_criterion(number)
    with capsys.disabled():
        print("\n" + verdict.line())
    assert verdict.ok, verdict.line()


def test_minor_coverage_rules_detect_gaps():
    from qsmanin.acceptance import c10_coverage

    problems = c10_coverage([])
    assert any("permutation pairs" in p for p in problems)
    assert any("sylvester" in p for p in problems)
