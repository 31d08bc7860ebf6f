import sys
from pathlib import Path

import pytest
from hypothesis import settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from exactreal.approx_rationals import DYADIC, RATIONAL  # noqa: E402
from exactreal.dyadic import Dyadic  # noqa: E402

settings.register_profile("default", deadline=None)
settings.load_profile("default")

mantissas = st.integers(min_value=-(2**160), max_value=2**160)
exponents = st.integers(min_value=-200, max_value=200)
dyadics = st.builds(Dyadic, mantissas, exponents)
nonzero_dyadics = st.builds(Dyadic, mantissas.filter(bool), exponents)
# Exponents passed to app_div / app_approx.
grades = st.integers(min_value=-300, max_value=100)


@pytest.fixture(params=[DYADIC, RATIONAL], ids=lambda o: o.name)
def ops(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is not None and acceptance.LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(acceptance.LINES):
            terminalreporter.write_line(line)
