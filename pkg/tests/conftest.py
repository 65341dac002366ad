from __future__ import annotations

import pytest


def pytest_collection_modifyitems(config, items):
    # keep the cheap checks first so failures show up early
    items.sort(key=lambda it: it.get_closest_marker("slow") is not None)


@pytest.fixture
def rng():
    import numpy as np

    return np.random.default_rng(20240611)
