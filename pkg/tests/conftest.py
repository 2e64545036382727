import pytest

from sphyper.construct import PolyPair

# Rows of the degree-6 reference table, keyed by row number: (f indices, g indices).
TABLE_ROWS = {
    158: ((4, 4, 6), (3, 10)),
    162: ((1, 1, 2, 2, 4), (18,)),
    167: ((1, 1, 2, 2, 4), (3, 12)),
    390: ((14,), (2, 2, 10)),
    394: ((1, 1, 4, 6), (14,)),
    437: ((7,), (2, 2, 3, 3)),
    468: ((14,), (3, 5)),
    534: ((6, 10), (7,)),
    774: ((1,) * 6, (14,)),
    819: ((1,) * 6, (18,)),
    838: ((1,) * 6, (7,)),
}


@pytest.fixture
def table_rows():
    return {nr: PolyPair(f, g) for nr, (f, g) in TABLE_ROWS.items()}


ACCEPTANCE_LINES: list[str] = []


def record(label: str, ok: bool, detail: str) -> bool:
    line = f"{'PASS' if ok else 'FAIL'}  {label}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
