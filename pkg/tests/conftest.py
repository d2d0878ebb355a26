import pytest
from hypothesis import HealthCheck, settings

from weylcalc import AlgebraCtx, parse_expr, parse_poly

settings.register_profile(
    "default", max_examples=40, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

REGULAR_CORPUS = ("1-z", "z^2-1", "(z-1)^2")


@pytest.fixture(scope="session")
def ctx2():
    return AlgebraCtx(parse_poly("z^2-1"))


@pytest.fixture(scope="session")
def ctx_lin():
    return AlgebraCtx(parse_poly("1-z"))


@pytest.fixture(scope="session")
def ctx_sq():
    return AlgebraCtx(parse_poly("(z-1)^2"))


@pytest.fixture(scope="session", params=REGULAR_CORPUS)
def regular_ctx(request):
    return AlgebraCtx(parse_poly(request.param))


def A(text, ctx):
    return parse_expr(text, "A", ctx)


# acceptance criteria report one line each; collected here and printed in
# the terminal summary so they show up even with output capture on
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
