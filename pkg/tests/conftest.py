from __future__ import annotations

import pytest

from lbemap import make_params, parse_initial_condition
from lbemap.pipeline import PAPER_R, PAPER_X0, AnalysisSettings, analyze


@pytest.fixture(scope="session")
def paper_params():
    return make_params(PAPER_R)


@pytest.fixture(scope="session")
def paper_results(paper_params):
    """Full pipeline (5000 iterations, oracle to n = 20) for the four paper x0."""
    out = {}
    for text in PAPER_X0:
        x0 = parse_initial_condition(text, paper_params)
        out[text] = analyze(paper_params, x0, AnalysisSettings())
    return out


_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance():
    """Record one PASS/FAIL line per acceptance criterion."""

    def record(number: int, title: str, ok: bool, detail: str = "") -> bool:
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}"
        if detail:
            line += f" -- {detail}"
        _ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
