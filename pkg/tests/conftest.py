"""Shared fixtures: one full-size session reused across the suite."""

import pytest

from bordcalc.session import Session


@pytest.fixture(scope='session')
def sess():
    return Session()
