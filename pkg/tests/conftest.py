import pytest

from rookph import build_rook, cut_pairing, decide_nonextendable

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def warm_kernel():
    # compile (or load the cached) numba kernel outside any timed region
    decide_nonextendable(build_rook(2, 3), cut_pairing(3))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
