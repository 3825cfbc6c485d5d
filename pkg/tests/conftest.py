import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def make_frame(pixels, **kw):
    from phagoquant.imgcore import Frame

    return Frame(np.asarray(pixels, dtype=np.float64), **kw)
