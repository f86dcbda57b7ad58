"""Shared fixtures: the three worked examples and their expected set splits."""

from pathlib import Path

import pytest

from gmcs import EdgePValues, SUPPLIED

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"

CORK = {
    (1, 2): 0.01, (1, 3): 0.71, (1, 4): 0.44,
    (2, 3): 0.9, (2, 4): 0.95, (3, 4): 0.001,
}

MATHMARKS = {
    (1, 2): 0.02, (1, 3): 0.29, (1, 4): 1.00, (1, 5): 1.00,
    (2, 3): 0.095, (2, 4): 1.00, (2, 5): 1.00, (3, 4): 0.00,
    (3, 5): 0.01, (4, 5): 0.18,
}

FOWL = {
    (1, 2): 0.00, (1, 3): 0.99, (1, 4): 0.99, (1, 5): 1.00, (1, 6): 0.92,
    (2, 3): 0.03, (2, 4): 0.68, (2, 5): 1.00, (2, 6): 0.82, (3, 4): 0.00,
    (3, 5): 0.07, (3, 6): 0.98, (4, 5): 0.59, (4, 6): 0.00, (5, 6): 0.00,
}


@pytest.fixture
def cork_pvalues():
    return EdgePValues(4, CORK, SUPPLIED)


@pytest.fixture
def mathmarks_pvalues():
    return EdgePValues(5, MATHMARKS, SUPPLIED)


@pytest.fixture
def fowl_pvalues():
    return EdgePValues(6, FOWL, SUPPLIED)
