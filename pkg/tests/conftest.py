import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

_results: dict[int, list[tuple[str, bool, str]]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        n = mark.args[0]
        tol = mark.kwargs.get("tol", "exact")
        _results.setdefault(n, []).append((item.name, rep.passed, tol))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_results):
        runs = _results[n]
        ok = all(passed for _, passed, _ in runs)
        tol = runs[0][2]
        names = ", ".join(name for name, _, _ in runs)
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  [tolerance: {tol}]  ({names})")
