import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from cbpoints.scalar import FieldSpec  # noqa: E402


@pytest.fixture
def F():
    return FieldSpec(32003)


@pytest.fixture
def F7():
    return FieldSpec(7)
