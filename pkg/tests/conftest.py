# one line per acceptance criterion, shown at the end of the run
ACCEPTANCE: dict[tuple[int, str], tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, title = ACCEPTANCE[k]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {k[0]:2d}{k[1]:1s}: {title}")
