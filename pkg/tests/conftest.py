import os

import hypothesis
import pytest

from greenroute.core.config import get_settings
from greenroute.models.instance import Instance
from tests.helpers import fixture_instance

hypothesis.settings.register_profile("fast", max_examples=10, deadline=None)
hypothesis.settings.register_profile("ci", max_examples=100, deadline=None)
hypothesis.settings.register_profile("debugger", report_multiple_bugs=False, deadline=None)
hypothesis.settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "ci"))


@pytest.fixture(autouse=True)
def fresh_settings():
    """Settings are cached; tests that patch GREENROUTE_* need a clean read."""
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def t1() -> Instance:
    return fixture_instance("t1.json")


@pytest.fixture
def t1_asym() -> Instance:
    return fixture_instance("t1_asym.json")


@pytest.fixture
def t3() -> Instance:
    return fixture_instance("t3.json")


@pytest.fixture
def empty_instance() -> Instance:
    return fixture_instance("empty.json")
