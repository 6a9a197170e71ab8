"""One test per acceptance criterion; each prints a pass/fail line."""
import pytest

from hypgraft import acceptance


@pytest.mark.parametrize("number", [num for num, _, _ in acceptance.CHECKS],
                         ids=[name.replace(" ", "_") for _, name, _ in acceptance.CHECKS])
def test_criterion(number):
    result = acceptance.run_check(number)
    print(result.line())
    assert result.passed, result.detail
