"""The acceptance gate: every shipped guarantee at its contractual scale.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one line per
criterion.  Scales and tolerances are fixed here (via the acceptance
module), not tunable from the outside.
"""
import pytest

from fsrecon.acceptance import CRITERIA, run_criterion


@pytest.mark.parametrize(
    "number,name",
    [(num, name) for num, name, _ in CRITERIA],
    ids=[f"criterion_{num:02d}" for num, _, _ in CRITERIA],
)
def test_acceptance_criterion(number, name):
    result = run_criterion(number, quick=False, seed=0)
    print(result.line())
    assert result.passed, result.line()


def test_negative_control_corrupted_weights_fail():
    """Integrity of the harness: breaking the inversion weights must flip the
    inversion-criterion item to FAIL."""
    result = run_criterion(7, quick=True, corrupt_lambda=True)
    assert not result.passed
