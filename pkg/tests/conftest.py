import os

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from szkit.poly import IntPoly

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("ci", max_examples=200, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

ACCEPTANCE_LINES: list[str] = []


def monic_polys(max_degree: int = 6, bound: int = 10, min_degree: int = 1, nonzero_constant: bool = False):
    @st.composite
    def build(draw):
        n = draw(st.integers(min_degree, max_degree))
        cs = draw(st.lists(st.integers(-bound, bound), min_size=n, max_size=n))
        if nonzero_constant and cs and cs[0] == 0:
            cs[0] = draw(st.sampled_from([-1, 1]))
        return IntPoly(cs + [1])

    return build()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
