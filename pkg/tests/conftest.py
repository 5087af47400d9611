import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    max_examples=150,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("ci", parent=settings.get_profile("default"), max_examples=400)
settings.load_profile("default")

# criterion number -> list of (test id, outcome, detail)
_CRITERIA: dict[int, list[tuple[str, str, str]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(k): acceptance criterion k")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        detail = "; ".join(str(v) for k, v in item.user_properties if k == "detail")
        _CRITERIA.setdefault(marker.args[0], []).append((item.name, rep.outcome, detail))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_CRITERIA):
        runs = _CRITERIA[k]
        outcomes = {o for _, o, _ in runs}
        if "failed" in outcomes:
            verdict = "FAIL"
        elif outcomes == {"skipped"}:
            verdict = "SKIP"
        else:
            verdict = "PASS"
        details = " | ".join(d for _, _, d in runs if d)
        terminalreporter.write_line(f"criterion {k}: {verdict} ({len(runs)} check(s)) {details}".rstrip())


@pytest.fixture(scope="session")
def symmetry_only_n6():
    """Counterexample runs at n=6 with only the symmetry rule on (about 35 s each, cached)."""
    from gallai.search import Mode, PruneConfig, SearchProblem, find_counterexample

    cache = {}

    def run(r, assume_lemmas=False):
        key = (r, assume_lemmas)
        if key not in cache:
            cfg = PruneConfig(use_symmetry=True, use_degree_bounds=False, use_prop1=False, assume_lemmas=assume_lemmas)
            cache[key] = find_counterexample(SearchProblem(6, r, Mode.COUNTEREXAMPLE, cfg))
        return cache[key]

    return run
