import os
from pathlib import Path

# Posets and point-count samples are cached on disk; a cold toric E6 build
# takes about a minute, so keep the cache between runs unless told otherwise.
os.environ.setdefault("WEYLCOH_CACHE", str(Path(__file__).resolve().parent.parent / ".cache" / "weylcoh"))

import pytest  # noqa: E402


@pytest.fixture(scope="session")
def ctx3():
    from weylcoh.moduli import degree_context

    return degree_context(3)


@pytest.fixture(scope="session")
def ctx4():
    from weylcoh.moduli import degree_context

    return degree_context(4)


_CRITERIA: dict[str, int] = {}
_OUTCOMES: dict[int, list[str]] = {}


def pytest_runtest_logreport(report):
    marker = _CRITERIA.get(report.nodeid)
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        if hasattr(report, "wasxfail"):
            outcome = "xpassed" if report.outcome == "passed" else "xfailed"
        else:
            outcome = report.outcome
        _OUTCOMES.setdefault(int(marker), []).append(outcome)


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            _CRITERIA[item.nodeid] = m.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _OUTCOMES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_OUTCOMES):
        got = _OUTCOMES[n]
        counts = {k: got.count(k) for k in ("passed", "failed", "xfailed", "xpassed", "skipped") if got.count(k)}
        ok = set(got) == {"passed"}
        detail = ", ".join(f"{v} {k}" for k, v in counts.items())
        note = ""
        if "xfailed" in counts and not ({"failed", "xpassed"} & set(counts)):
            note = "  literal agreement fails on documented conflicts; reconciled checks pass"
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} ({detail}){note}")
