from __future__ import annotations

import pytest

from wgqed.waveguide_model import channel_pair_from_delta

# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE_LINES: list[str] = []


def record(label: str, passed: bool, detail: str) -> None:
    ACCEPTANCE_LINES.append(f"{label}: {'PASS' if passed else 'FAIL'}  {detail}")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def p0():
    """Reference channel pair: omega0=1, delta=0.8, v_a1=1, gamma_a=0.01, no b coupling."""
    return channel_pair_from_delta(1.0, 0.8, 1.0, 0.01)


@pytest.fixture
def p0_b():
    return channel_pair_from_delta(1.0, 0.8, 1.0, 0.01, 0.05)
