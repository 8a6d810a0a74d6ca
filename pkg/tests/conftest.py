import mpmath
import pytest
from hypothesis import HealthCheck, settings

from zetapsi.numerics import DEFAULT_CONTEXT, PrecisionContext

settings.register_profile(
    "default",
    deadline=None,
    max_examples=25,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

# lines recorded by the acceptance module, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def ctx() -> PrecisionContext:
    return DEFAULT_CONTEXT


@pytest.fixture
def fast_ctx() -> PrecisionContext:
    return PrecisionContext(work_digits=20, target_tol=1e-15)


@pytest.fixture(autouse=True)
def _reset_mp_precision():
    # mpmath precision is process-global; keep tests independent of each other
    dps = mpmath.mp.dps
    yield
    mpmath.mp.dps = dps


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
