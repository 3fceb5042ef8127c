import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def random_sparse(rng, shape, density=0.3, integer=False):
    """Random nonnegative tensor with roughly ``density`` nonzeros."""
    mask = rng.random(shape) < density
    vals = rng.integers(1, 4, shape).astype(float) if integer else rng.uniform(0.1, 1.0, shape)
    return vals * mask


@pytest.fixture
def rng():
    return np.random.default_rng(20241016)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        ok, detail = RESULTS[n]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {n:2d}: {detail}")
