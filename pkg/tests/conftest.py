import random
from pathlib import Path

import pytest

from rankzeta.rmcode import load_code

FIXTURES = Path(__file__).resolve().parent.parent / "src" / "rankzeta" / "fixtures"


def fixture_code(name):
    return load_code(FIXTURES / f"{name}.json")


@pytest.fixture
def c1():
    return fixture_code("c1")


@pytest.fixture(scope="session")
def acceptance_log(request):
    lines = getattr(request.config, "_acceptance_lines", None)
    if lines is None:
        lines = request.config._acceptance_lines = {}
    return lines


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_acceptance_lines", None)
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(lines, key=lambda k: (int(k.split(".")[0]), k)):
        status, detail = lines[key]
        terminalreporter.write_line(f"criterion {key}: {status}  {detail}")


def random_codes(count, seed, qs=(2, 3), max_nm=12, square=False):
    """Reproducible random codes with 1 <= n <= m and nm <= max_nm."""
    from rankzeta.rmcode import random_code

    rnd = random.Random(seed)
    out = []
    while len(out) < count:
        q = rnd.choice(qs)
        n = rnd.randint(1, 3)
        m = n if square else rnd.randint(n, 4)
        if n * m > max_nm:
            continue
        out.append(random_code(q, n, m, rnd.randint(0, n * m), rnd))
    return out
