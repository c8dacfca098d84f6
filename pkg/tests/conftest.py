from __future__ import annotations

import os

import pytest
from hypothesis import HealthCheck, settings

from algrat.algfun import parse_defining, parse_initial

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", deadline=None, max_examples=400)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

QUAD = "y^2 - y - z"
FIG1 = "(z+1)*y^3 = (z^2+1)*y^2 + (z-5*I)*y + (z^3-1-I)"
FIG1_GENERIC_INIT = "z^5+I*z^2-5, z^3-z+I, 1"
FIG3 = "y^3 = (z+1-I)*y^2 + (z+1)*(z-I)*y + (z^3+10)"


@pytest.fixture(scope="session")
def quad():
    return parse_defining(QUAD)


@pytest.fixture(scope="session")
def fig1():
    return parse_defining(FIG1)


@pytest.fixture(scope="session")
def fig1_generic_init():
    return parse_initial(FIG1_GENERIC_INIT)
