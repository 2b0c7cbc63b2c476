import re

from _util import ACCEPTANCE


def pytest_runtest_logreport(report):
    # a criterion whose test crashed before recording still gets a FAIL line
    m = re.search(r"test_acceptance\.py::test_ac(\d+)_(\w+)", report.nodeid)
    if m and report.failed:
        cid = int(m.group(1))
        desc = ACCEPTANCE.get(cid, (m.group(2).replace("_", " "), False))[0]
        ACCEPTANCE[cid] = (desc, False)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(ACCEPTANCE):
        desc, ok = ACCEPTANCE[cid]
        terminalreporter.write_line(f"AC{cid:02d} {'PASS' if ok else 'FAIL'}  {desc}")
