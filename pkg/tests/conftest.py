from collections import defaultdict

import pytest

_RESULTS: dict[int, list[tuple[str, str, str]]] = defaultdict(list)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): part of numbered acceptance criterion n")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        measured = "; ".join(v for k, v in item.user_properties if k == "measured")
        _RESULTS[marker.args[0]].append((item.name, rep.outcome, measured))


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_RESULTS):
        parts = _RESULTS[n]
        ok = all(outcome == "passed" for _, outcome, _ in parts)
        tr.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}")
        for name, outcome, measured in parts:
            tr.write_line(f"    {outcome.upper():6s} {name}: {measured}")
