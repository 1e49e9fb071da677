"""Run every named check of the executable property suite."""

import pytest

from cstar_frames.selftest import CHECKS


@pytest.mark.parametrize("name,check", CHECKS, ids=[name for name, _ in CHECKS])
def test_property_check(name, check):
    check(0, False)
