"""Acceptance gate: every criterion runs at its stated tolerance and prints
one status line."""

import pytest

from drinfeld import acceptance


@pytest.mark.parametrize("criterion", acceptance.ALL_CRITERIA,
                         ids=[fn.__name__ for fn in acceptance.ALL_CRITERIA])
def test_criterion(criterion):
    result = criterion()
    print(result.line())
    for detail in result.details[:20]:
        print("   ", detail)
    assert result.passed, result.details[:5]
    assert result.seconds < result.budget, (
        f"criterion {result.number} took {result.seconds:.1f}s "
        f"(budget {result.budget:.0f}s)")
