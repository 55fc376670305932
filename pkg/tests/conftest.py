import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import pytest

_verdicts: dict[str, list] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    key = (str(mark.args[0]), mark.args[1])
    if rep.when == "call":
        ok = rep.passed and not hasattr(rep, "wasxfail")
        _verdicts.setdefault(key, []).append(ok)
    elif rep.when == "setup" and not rep.passed:
        _verdicts.setdefault(key, []).append(False)


def pytest_terminal_summary(terminalreporter):
    if not _verdicts:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for (num, title), oks in sorted(_verdicts.items(), key=lambda kv: (int(kv[0][0].split(".")[0]), kv[0][0])):
        tr.write_line(f"{'PASS' if all(oks) else 'FAIL'}  criterion {num}: {title}")
