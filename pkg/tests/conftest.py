"""
Pytest configuration and fixtures for TAFT-CLEFT tests.
"""

import pytest

from taftcleft.algebra.cleft import CleftData, cleft_extension
from taftcleft.algebra.ring import parse_ring_spec
from taftcleft.algebra.taft import TaftParams
from taftcleft.settings import Settings


@pytest.fixture
def z5():
    """The field Z/5."""
    return parse_ring_spec('Z/5')


@pytest.fixture
def z7():
    """The field Z/7."""
    return parse_ring_spec('Z/7')


@pytest.fixture
def gf4():
    """GF(4) = F_2[t]/(t^2+t+1); t has index 2."""
    return parse_ring_spec('GF(2^2)')


@pytest.fixture
def dual_numbers():
    """F_5[t]/(t^2), a local ring with nonzero nilradical."""
    return parse_ring_spec('F_5[t]/(t^2)')


@pytest.fixture
def params_z5(z5):
    """H_2^4 over Z/5."""
    return TaftParams.of(z5, 2, 4)


@pytest.fixture
def params_z7(z7):
    """H_3^2 over Z/7."""
    return TaftParams.of(z7, 3, 2)


@pytest.fixture
def params_gf4(gf4):
    """H_3^t over GF(4)."""
    return TaftParams.of(gf4, 3, (0, 1))


@pytest.fixture
def params_dual(dual_numbers):
    """H_2^(-1) over F_5[t]/(t^2)."""
    return TaftParams.of(dual_numbers, 2, -1)


@pytest.fixture
def cleft_z5(params_z5, z5):
    """B_(2,3,0) over Z/5, N=2."""
    return cleft_extension(params_z5, CleftData.of(z5, 2, 3))


@pytest.fixture
def cleft_z5_b(params_z5, z5):
    """B_(1,0,1) over Z/5, N=2, with a nonzero skew term."""
    return cleft_extension(params_z5, CleftData.of(z5, 1, 0, 1))


@pytest.fixture
def small_settings():
    """Tight budgets for budget-error tests."""
    return Settings(max_ring_elements=16, max_fingerprint_words=10, identity_check_max_maps=8)


@pytest.fixture
def settings_file(tmp_path):
    """A YAML settings file with a 'taftcleft' section."""
    path = tmp_path / 'taftcleft.yaml'
    path.write_text("taftcleft:\n  workers: 2\n  chunk_size: 64\n")
    return path
