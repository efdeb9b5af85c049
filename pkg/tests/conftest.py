"""Collects the acceptance results so one line per criterion is printed at the end."""

ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        ok, title, secs, detail = ACCEPTANCE[num]
        tr.write_line(f"criterion {num}: {'PASS' if ok else 'FAIL'} [{secs:.1f} s] {title} :: {detail}")
