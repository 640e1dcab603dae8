import pytest

from nwfs.freeseq import SequenceState, converged_nwfs
from nwfs import presets

from corpus import finset_arrows


@pytest.fixture(scope="session")
def corpus3():
    """Every finset arrow with domain and codomain of size at most 3."""
    return finset_arrows(3, 3)


@pytest.fixture(scope="session")
def splitepi_state():
    return SequenceState(presets.splitepi())


@pytest.fixture(scope="session")
def splitepi_nwfs(splitepi_state, corpus3):
    return converged_nwfs(splitepi_state, corpus3)


@pytest.fixture(scope="session")
def cosection_state():
    return SequenceState(presets.cosection(), max_stage=4)


def pytest_terminal_summary(terminalreporter):
    import acceptance_log

    if acceptance_log.LINES:
        terminalreporter.section("acceptance")
        for line in acceptance_log.LINES:
            terminalreporter.write_line(line)
