import numpy as np
import pytest
from hypothesis import HealthCheck, settings

import fasaris as fa

settings.register_profile(
    "numeric",
    deadline=None,
    max_examples=25,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("numeric")


@pytest.fixture(scope="session")
def ref_cfg():
    return fa.reference_config()


@pytest.fixture(scope="session")
def ref_partition(ref_cfg):
    sigma = fa.correlation_matrix(ref_cfg.N, ref_cfg.W)
    return fa.fit_block_partition(sigma)


@pytest.fixture(scope="session")
def ref_surrogate(ref_cfg, ref_partition):
    return fa.build_surrogate(ref_cfg, ref_partition)


@pytest.fixture(scope="session")
def quad():
    return fa.QuadratureSpec()


@pytest.fixture()
def rng():
    return np.random.default_rng(20240817)
