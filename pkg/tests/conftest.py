from __future__ import annotations

from functools import lru_cache

import pytest

from shicone.rootsys import CartanType, build_root_system


@lru_cache(maxsize=None)
def get_rs(name: str):
    return build_root_system(CartanType.parse(name))


@pytest.fixture
def rs_b2():
    return get_rs("B2")


@pytest.fixture
def rs_a3():
    return get_rs("A3")


RANK_LE_3 = ["A1", "A2", "A3", "B2", "B3", "C3", "D3", "G2"]
RANK_4 = ["A4", "B4", "C4", "D4", "F4"]
