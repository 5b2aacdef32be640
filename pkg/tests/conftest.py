import numpy as np
import pytest

from twinsieve import kernels

BACKENDS = sorted(kernels.MARK_BACKENDS)

FORM_SIGNS = {"PLUS_MINUS": (-1, 1), "PLUS_PLUS": (1, 1), "MINUS_MINUS": (-1, -1)}


def exhaustive_representable(limit):
    """Sets of n <= limit hit by each form, from a plain double loop over (x, y).

    Every (x, y) whose value can be <= limit is visited; nothing here uses
    progressions, square-root bounds or the library.
    """
    hits = {name: set() for name in FORM_SIGNS}
    for name, (sx, sy) in FORM_SIGNS.items():
        x = 1
        # value is increasing in y, so y = 1 gives the smallest value for this x
        while (6 + sy) * x + sx <= limit:
            y = 1
            while True:
                v = 6 * x * y + sy * x + sx * y
                if v > limit:
                    break
                if v >= 1:
                    hits[name].add(v)
                y += 1
            x += 1
    return hits


def linear_witness(n, name):
    """Smallest-x witness by scanning every x and solving y by division."""
    sx, sy = FORM_SIGNS[name]
    for x in range(1, n + 1):
        den = 6 * x + sx
        num = n - sy * x
        if num < den:
            break
        if num % den == 0:
            return x, num // den
    return None


def trial_prime(m):
    if m < 2:
        return False
    d = 2
    while d * d <= m:
        if m % d == 0:
            return False
        d += 1
    return True


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param


@pytest.fixture(scope="session")
def representable_10k():
    return exhaustive_representable(10_000)


@pytest.fixture(scope="session")
def eratosthenes_6e5():
    mask = np.ones(600_002, dtype=bool)
    mask[:2] = False
    for p in range(2, 775):
        if mask[p]:
            mask[p * p :: p] = False
    return mask


ACCEPTANCE_RESULTS = {}


@pytest.fixture
def acceptance(request):
    """Record one acceptance line; the test's own asserts decide pass/fail."""
    key = request.node.name
    ACCEPTANCE_RESULTS[key] = ["FAIL", ""]

    def note(detail):
        ACCEPTANCE_RESULTS[key][1] = detail

    yield note
    rep = getattr(request.node, "rep_call", None)
    if rep is not None and rep.passed:
        ACCEPTANCE_RESULTS[key][0] = "PASS"


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key, (status, detail) in sorted(ACCEPTANCE_RESULTS.items()):
        terminalreporter.write_line(f"{status}  {key}  {detail}")
