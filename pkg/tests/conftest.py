import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def quadric_quartic():
    from subcanon.linear_series import PointAnalysis
    from subcanon.witnesses import example_quadric_quartic

    w = example_quadric_quartic()
    return w, PointAnalysis(w.curve, w.point)


@pytest.fixture(scope="session")
def schwarz():
    from subcanon.surface import HyperellipticModel, SpinorData, homology_basis

    model = HyperellipticModel.from_string("z^8 - 14*z^4 + 1")
    return model, SpinorData("1", "z"), homology_basis(model)
