import pytest

from paley_snf.graph import build_paley, laplacian


@pytest.fixture(scope="session")
def paley():
    cache = {}

    def get(q):
        if q not in cache:
            cache[q] = build_paley(q)
        return cache[q]

    return get


@pytest.fixture(scope="session")
def paley_laplacian(paley):
    return lambda q: laplacian(paley(q))


_acceptance_key = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_acceptance_key] = []


@pytest.fixture
def criterion(request):
    """Record one acceptance line: criterion(label, ok, elapsed, budget)."""
    lines = request.config.stash[_acceptance_key]

    def record(label, ok, elapsed, budget):
        within = elapsed <= budget
        status = "PASS" if ok and within else "FAIL"
        line = f"{status}  {label}  [{elapsed:.2f}s, budget {budget:g}s]"
        lines.append(line)
        print(line)
        assert ok, label
        assert within, f"{label}: {elapsed:.1f}s exceeds {budget}s"

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_acceptance_key, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
