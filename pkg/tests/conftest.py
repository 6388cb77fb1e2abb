import numpy as np
import pytest
from hypothesis import settings

from jetflat.fourier import FourierFunction

settings.register_profile("numeric", deadline=None, max_examples=40, derandomize=True)
settings.load_profile("numeric")


def fn(a0=0.0, cos=(), sin=()):
    """Shorthand circle-function builder used all over the tests."""
    return FourierFunction.from_circle_coeffs(a0, list(cos), list(sin))


@pytest.fixture
def rng():
    return np.random.default_rng(20240315)
