from __future__ import annotations

import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# (criterion id, passed, detail), filled by tests/test_acceptance.py
ACCEPTANCE: list[tuple[int, bool, str]] = []


def pytest_addoption(parser):
    parser.addoption("--large", action="store_true", help="also generate the 10^5 and 10^6 vertex presets")


@pytest.fixture
def large(request):
    return request.config.getoption("--large") or os.environ.get("KMOTIF_LARGE") == "1"


@pytest.fixture
def record():
    def _record(cid: int, passed: bool, detail: str) -> None:
        ACCEPTANCE.append((cid, bool(passed), detail))

    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for cid, passed, detail in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"criterion {cid:2d}: {'PASS' if passed else 'FAIL'}  {detail}")
