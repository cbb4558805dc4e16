from __future__ import annotations

from pathlib import Path

import pytest

from bimcheck import ModelStore, box, load_facts, point

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN = Path(__file__).parent / "golden"


def fixture_text(name: str) -> str:
    return (FIXTURES / name).read_text(encoding="utf-8")


@pytest.fixture
def rect_a():
    return box(point(1, 2), point(4, 5))


@pytest.fixture
def rect_b():
    return box(point(3, 1), point(5, 4))


@pytest.fixture
def building_store() -> ModelStore:
    return load_facts(fixture_text("building.pl"))


@pytest.fixture
def slice_store_fixture() -> ModelStore:
    return load_facts(fixture_text("slice_demo.pl"))
