import math

import pytest

from cvbell import TripartitePhotonNumbers, su21_fock, twb_fock


@pytest.fixture(scope="session")
def photons_03():
    return TripartitePhotonNumbers(0.3, 0.3)


@pytest.fixture(scope="session")
def su21_fock_03(photons_03):
    return su21_fock(photons_03, 30)


@pytest.fixture(scope="session")
def twb_fock_n1():
    # mean total photon number 1: X = tanh(arcsinh(sqrt(1/2)))
    x = math.tanh(math.asinh(math.sqrt(0.5)))
    return twb_fock(x, 30)
