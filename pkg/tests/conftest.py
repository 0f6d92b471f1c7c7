import pytest

from higher_uea.weights import ChiForm

CHI_KINDS = [("zero", 0), ("nilpotent", 0), ("semisimple", 1)]


def chis(p, r):
    return [ChiForm(kind, p, r, c) for kind, c in CHI_KINDS]


@pytest.fixture(params=CHI_KINDS, ids=[k for k, _ in CHI_KINDS])
def chi_p3r1(request):
    kind, c = request.param
    return ChiForm(kind, 3, 1, c)


_ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid or "::test_criterion_" not in report.nodeid:
        return
    name = report.nodeid.split("::test_criterion_")[1]
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _ACCEPTANCE[name] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_ACCEPTANCE):
        num, _, label = name.partition("_")
        status = "PASS" if _ACCEPTANCE[name] == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {int(num):2d} {label.replace('_', ' '):<40} {status}")
