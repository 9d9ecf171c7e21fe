import random

import pytest

from gmdcrt import worked_examples
from gmdcrt.multivec import ModuliSet


@pytest.fixture(scope="session")
def ex1():
    return worked_examples.example("example1")


@pytest.fixture(scope="session")
def ex2():
    return worked_examples.example("example2")


@pytest.fixture(scope="session")
def ex3():
    return worked_examples.example("example3")


@pytest.fixture(scope="session")
def ex4():
    return worked_examples.example("example4")


@pytest.fixture(scope="session")
def ms1(ex1):
    return ModuliSet(ex1["moduli"])


@pytest.fixture(scope="session")
def ms4(ex4):
    return ModuliSet(ex4["moduli"])


@pytest.fixture
def rnd():
    return random.Random(20240611)
