import pytest

from antipowers import kernels
from antipowers.words import fibonacci_word, parse_morphism, thue_morse_word

_CRITERIA = []

BACKENDS = sorted(kernels.available_backends())


@pytest.fixture(scope="session")
def fib():
    return fibonacci_word()


@pytest.fixture(scope="session")
def tm():
    return thue_morse_word()


@pytest.fixture(scope="session")
def period4():
    return parse_morphism("0 -> 01230; 1 -> 12301; 2 -> 23012; 3 -> 30123")


@pytest.fixture(scope="module", params=BACKENDS)
def backend(request):
    return kernels.get_backend(request.param)


@pytest.fixture
def criterion():
    """Record one acceptance line; printed in the terminal summary."""

    def record(number, ok, detail):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {detail}"
        _CRITERIA.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_CRITERIA, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
