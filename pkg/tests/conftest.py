import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from qcanon.qmatrix import QMatrix
from qcanon.quaternion import Quaternion

settings.register_profile(
    "default",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

coef = st.floats(min_value=-4.0, max_value=4.0, allow_nan=False, allow_infinity=False)


@st.composite
def quaternions(draw, nonzero: bool = False):
    q = Quaternion(*(draw(coef) for _ in range(4)))
    if nonzero and abs(q) < 1e-3:
        q = q + 1.0
    return q


@st.composite
def qmatrices(draw, m=None, n=None, max_dim: int = 4):
    m = draw(st.integers(1, max_dim)) if m is None else m
    n = draw(st.integers(1, max_dim)) if n is None else n
    data = draw(arrays(np.float64, (m, n, 4), elements=coef))
    return QMatrix.from_coefficients(data)


seeds = st.integers(min_value=0, max_value=2**32 - 1)


@pytest.fixture
def rng():
    from qcanon.testkit import make_rng

    return make_rng(12345)
