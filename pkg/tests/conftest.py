import numpy as np
import pytest
from hypothesis import strategies as st

from quatwave.algebra import Biquaternion

finite = st.floats(min_value=-3, max_value=3, allow_nan=False, allow_infinity=False)
complexes = st.builds(complex, finite, finite)
biquaternions = st.builds(Biquaternion, complexes, complexes, complexes, complexes)
pure_biquaternions = st.builds(lambda x, y, z: Biquaternion(0, x, y, z), complexes, complexes, complexes)
real3 = st.tuples(finite, finite, finite)


def rand_bq(rng, scale=1.0):
    v = rng.normal(scale=scale, size=8)
    return Biquaternion(complex(v[0], v[1]), complex(v[2], v[3]),
                        complex(v[4], v[5]), complex(v[6], v[7]))


def rand_complex(rng):
    return complex(*rng.normal(size=2))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
