import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from kqt import ClosurePolicy, directed_path, generate_frame_instance, kqt_closure  # noqa: E402


@pytest.fixture(scope="session")
def frame5():
    """Closure-built minimal frame instance for k=5 (8 vertices, no outside)."""
    return generate_frame_instance(5, 0, 0.0, 0)


@pytest.fixture(scope="session")
def frame7():
    return generate_frame_instance(7, 0, 0.0, 0)


@pytest.fixture(scope="session")
def path8():
    return directed_path(8)


def close_frame(d, k):
    """Re-close ``d`` keeping ``d(0, k+2) = k+2``."""
    return kqt_closure(d, k, ClosurePolicy.distance_preserving(0, k + 2, k + 2))
