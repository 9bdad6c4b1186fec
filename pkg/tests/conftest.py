from __future__ import annotations

import re
from functools import lru_cache

import pytest

from garside.coxeter import build_system


@lru_cache(maxsize=None)
def system(name: str):
    return build_system(name)


@pytest.fixture
def W():
    return system


# -- acceptance report ----------------------------------------------------------

_ACCEPTANCE: dict[int, tuple[str, list[tuple[str, str]]]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = re.match(r"test_criterion_(\d+)", getattr(item, "originalname", item.name))
    if not m or not (rep.when == "call" or (rep.when == "setup" and not rep.passed)):
        return
    num = int(m.group(1))
    status = "xfailed" if hasattr(rep, "wasxfail") else rep.outcome
    title = getattr(item.module, "CRITERIA", {}).get(num, "")
    _ACCEPTANCE.setdefault(num, (title, []))[1].append((item.name, status))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_ACCEPTANCE):
        title, results = _ACCEPTANCE[num]
        bad = [(name, status) for name, status in results if status != "passed"]
        verdict = "FAIL" if bad else "PASS"
        line = f"criterion {num:2d}: {verdict}  {title} ({len(results) - len(bad)}/{len(results)} checks)"
        if bad:
            line += "; not met: " + ", ".join(f"{name} [{status}]" for name, status in bad)
        terminalreporter.write_line(line)
