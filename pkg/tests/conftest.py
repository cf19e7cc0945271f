import json
from pathlib import Path

import pytest

ORACLES = json.loads((Path(__file__).parent / "oracles" / "values.json").read_text())


@pytest.fixture(scope="session")
def oracle():
    return ORACLES


def rel(got, want, floor=1.0):
    return abs(got - want) / max(floor, abs(want))
