"""Acceptance gate: every criterion must pass at its stated tolerance.

Each test prints one pass/fail line with the criterion's measured numbers,
so `pytest -v -s tests/test_acceptance.py` doubles as the acceptance report
(the `burgersvortex accept` subcommand runs the same functions).
"""

import pytest

from burgersvortex import acceptance


@pytest.mark.parametrize(
    "criterion", acceptance.CRITERIA, ids=[fn.__name__ for fn in acceptance.CRITERIA]
)
def test_criterion(criterion):
    result = criterion()
    status = "PASS" if result.passed else "FAIL"
    print(f"[{status}] {result.name} ({result.elapsed:.2f}s): {result.detail}")
    assert result.passed, f"{result.name}: {result.detail}"
