from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from lefschetz.oracle import OracleConfig

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def cfg() -> OracleConfig:
    return OracleConfig(seed=0, trials=3)


@pytest.fixture(scope="session")
def cfg1() -> OracleConfig:
    """Single trial, for large cases where a full-rank trial is already a certificate."""
    return OracleConfig(seed=0, trials=1)


# one line per acceptance criterion, collected by tests/test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        ok, text = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {text}")
