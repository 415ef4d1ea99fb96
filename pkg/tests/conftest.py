"""Shared pytest plumbing: collects acceptance-criterion verdicts and prints
one line per criterion at the end of the run."""

criteria_results = []


def record_criterion(num, desc, ok, elapsed, detail=""):
    criteria_results.append((num, desc, ok, elapsed, detail))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not criteria_results:
        return
    terminalreporter.section("acceptance criteria")
    for num, desc, ok, elapsed, detail in sorted(criteria_results):
        line = "criterion %02d %s (%6.2fs) %s" % (
            num, "PASS" if ok else "FAIL", elapsed, desc)
        if detail:
            line += " | " + detail
        terminalreporter.write_line(line)
