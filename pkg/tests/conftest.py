import itertools

import pytest

from sepwords.wordpoly import BinaryString

_criteria: dict[int, list[str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    num = getattr(report, "criterion", None)
    if num is not None:
        _criteria.setdefault(num, []).append(report.outcome)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        report.criterion = marker.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criteria):
        outcomes = _criteria[num]
        status = "PASS" if all(o == "passed" for o in outcomes) else "FAIL"
        terminalreporter.write_line(f"criterion {num:2d}: {status} ({len(outcomes)} test(s))")


def all_strings(n):
    return [BinaryString.from_int(v, n) for v in range(1 << n)]


def all_pairs(n):
    return itertools.combinations(all_strings(n), 2)


def raw_tables(k):
    """Every k-state transition table as a tuple of rows (no isomorphism pruning)."""
    for flat in itertools.product(range(k), repeat=2 * k):
        yield tuple(zip(flat[0::2], flat[1::2]))


def simulate(rows, q, word):
    for a in word:
        q = rows[q][a]
    return q
