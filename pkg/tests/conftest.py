import numpy as np
import pytest
from hypothesis import HealthCheck, settings, strategies as st

from egh.algebra import Form, RingContext

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

P = 101


@pytest.fixture
def ring5():
    return RingContext(5, P)


def variables(ctx):
    return [Form.variable(ctx, i) for i in range(ctx.n)]


def squares(ctx):
    return [x * x for x in variables(ctx)]


@st.composite
def forms(draw, ctx, degree, allow_zero=True):
    """Random forms via a dense coefficient vector, biased towards sparsity."""
    dim = ctx.dim(degree)
    coeffs = draw(st.lists(st.integers(0, ctx.p - 1) | st.just(0), min_size=dim, max_size=dim))
    f = Form.from_vector(ctx, degree, np.array(coeffs, dtype=np.int64))
    if not allow_zero and f.is_zero():
        f = Form.monomial(ctx, [degree] + [0] * (ctx.n - 1))
    return f


# acceptance criteria register one status line each; printed after the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
