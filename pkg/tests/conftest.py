import numpy as np
import pytest

from dualdrazin import DualMatrix


def rand_int_dual(rng, rows, cols=None, scale=3, with_inf=True):
    """Small-integer dual matrix; exact in floating point."""
    cols = rows if cols is None else cols
    std = rng.integers(-scale, scale + 1, (rows, cols)).astype(complex)
    inf = rng.integers(-scale, scale + 1, (rows, cols)).astype(complex) if with_inf else None
    return DualMatrix(std, inf)


def rel_err(got, want):
    return (got - want).norm() / (1.0 + want.norm())


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
