RESULTS = []  # (criterion number, status, description), filled by the acceptance suite


def record(number, status, description):
    RESULTS.append((number, status, description))


def pytest_terminal_summary(terminalreporter):
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, status, description in sorted(RESULTS):
        terminalreporter.write_line(f"criterion {number:2d}: {status:4s} - {description}")
