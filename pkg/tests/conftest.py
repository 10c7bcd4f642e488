import os

import hypothesis
import pytest

from demorgan.lattice import FiniteLattice
from demorgan.modules import FiniteModule
from demorgan.rings import ideal_quantale, prime_field, zmod

hypothesis.settings.register_profile("default", max_examples=60, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=10, deadline=None)
hypothesis.settings.register_profile("thorough", max_examples=400, deadline=None)
hypothesis.settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def z6q():
    return ideal_quantale(zmod(6))[0]


@pytest.fixture(scope="session")
def z4q():
    return ideal_quantale(zmod(4))[0]


@pytest.fixture(scope="session")
def z12q():
    return ideal_quantale(zmod(12))[0]


@pytest.fixture(scope="session")
def klein():
    """Z2 ⊕ Z2, realized over F2."""
    return FiniteModule.free(prime_field(2), 2)


@pytest.fixture
def chain3():
    return FiniteLattice.chain(3)
