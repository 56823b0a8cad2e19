import pytest

from sigma_phi_lab.oracles import phi_sigma_table


@pytest.fixture(scope="session")
def oracle_1e4():
    """(sigma, phi, phi o sigma) brute-force tables for n <= 10**4."""
    return phi_sigma_table(10**4)


@pytest.fixture(scope="session")
def oracle_1e5():
    return phi_sigma_table(10**5)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
