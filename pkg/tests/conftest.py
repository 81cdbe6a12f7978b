from __future__ import annotations

from pathlib import Path

import pytest

from canext.corpus import boolean, chain, m3, n5

DATA = Path(__file__).parent / "data"

_ACCEPTANCE: list[str] = []


@pytest.fixture(scope="session")
def record_criterion():
    """Log one PASS/FAIL line per acceptance criterion for the terminal summary."""

    def record(number: int, title: str, ok: bool, detail: str = "") -> str:
        line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {title}"
        if detail:
            line += f" ({detail})"
        _ACCEPTANCE.append(line)
        print(line)
        return line

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)


@pytest.fixture
def data_dir() -> Path:
    return DATA


@pytest.fixture
def chain3():
    return chain(3)


@pytest.fixture
def M3():
    return m3()


@pytest.fixture
def N5():
    return n5()


@pytest.fixture
def B2():
    return boolean(2)
