import numpy as np
import pytest

from jetkin import ddouble, models


@pytest.fixture(scope="session", autouse=True)
def warm_compiled_kernels():
    # trigger the one-off numba JIT (or load from cache) so timing-sensitive
    # tests measure the algorithm, not compilation
    x = ddouble.DDReal(0.7)
    ddouble.exp(x), ddouble.log(x), ddouble.sin(x), ddouble.cos(x), ddouble.sqrt(x)
    models.inverted_cosine_wave_dd(ddouble.DDVector(np.array([0.1, 0.4, 0.9])))
