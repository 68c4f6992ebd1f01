from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from hodgeorbit.case1111 import build_example
from hodgeorbit.sl2 import build_orbit_data

settings.register_profile(
    "default",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture],
)
settings.load_profile("default")


@pytest.fixture(scope="session")
def examples():
    return {k: build_example(k) for k in ("I", "II", "III")}


@pytest.fixture(scope="session")
def orbit_data(examples):
    return {k: build_orbit_data(e.N, e.base_flag, e.spec) for k, e in examples.items()}


_CRITERIA: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def criterion():
    """Record one acceptance line; the assertion stays with the caller."""

    def record(number: int, ok: bool, detail: str) -> bool:
        _CRITERIA[number] = (bool(ok), detail)
        print(f"criterion {number}: {'PASS' if ok else 'FAIL'} ({detail})")
        return bool(ok)

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        ok, detail = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'} ({detail})")
