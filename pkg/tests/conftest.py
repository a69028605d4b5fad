import itertools

import pytest

from aitlab.enumeration import EnumParams, enumerate_programs
from aitlab.infotheory import Estimator
from aitlab.machine import Halted, run


def naive_census(L, T, condition=""):
    """Run every bit string of length <= L; keep exact-consumption halts."""
    found = {}
    for n in range(1, L + 1):
        for bits in itertools.product("01", repeat=n):
            p = "".join(bits)
            out = run(p, condition, T)
            if isinstance(out, Halted) and out.consumed == n:
                found[p] = out.output
    return found


def short_strings(max_len=3):
    return ["".join(b) for n in range(max_len + 1) for b in itertools.product("01", repeat=n)]


@pytest.fixture(scope="session")
def table6():
    return enumerate_programs(EnumParams(6, 100))


@pytest.fixture(scope="session")
def table12():
    return enumerate_programs(EnumParams(12, 256))


@pytest.fixture(scope="session")
def table21():
    return enumerate_programs(EnumParams(21, 256))


@pytest.fixture(scope="session")
def est6(table6):
    return Estimator(EnumParams(6, 100), base=table6)


@pytest.fixture(scope="session")
def est21(table21):
    return Estimator(EnumParams(21, 256), base=table21)


@pytest.fixture(scope="session")
def est15():
    return Estimator(EnumParams(15, 256))


_acceptance: dict[str, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.rsplit("::", 1)[-1]
    if "test_acceptance" not in report.nodeid or not name.startswith("test_A"):
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        crit = name[len("test_"):].split("_", 1)[0]
        status = "PASS" if report.passed else "FAIL"
        if _acceptance.get(crit, ("PASS",))[0] == "FAIL":
            status = "FAIL"  # any failing variant fails the criterion
        _acceptance[crit] = (status, name.split("[", 1)[0])


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(_acceptance, key=lambda c: int(c[1:])):
        status, name = _acceptance[crit]
        terminalreporter.write_line(f"{crit:>4} {status}  {name}")
