import pytest


@pytest.fixture
def criterion(request, capsys):
    """Print one PASS/FAIL line for an acceptance criterion, even under capture."""

    def run(label, check):
        try:
            check()
        except BaseException as exc:
            with capsys.disabled():
                print(f"\nACCEPTANCE {label}: FAIL ({type(exc).__name__}: {exc})")
            raise
        with capsys.disabled():
            print(f"\nACCEPTANCE {label}: PASS")

    return run
