import pytest

from quinncalc.finalg import (
    crossed_module_identity,
    crossed_module_zero,
    cyclic_group,
    symmetric_group,
)

# The desk-scale corpus used throughout the suite.


def corpus_groups():
    return [cyclic_group(2), cyclic_group(3), cyclic_group(4), symmetric_group(3)]


def corpus_crossed_modules():
    return [
        crossed_module_zero(cyclic_group(2), cyclic_group(2)),
        crossed_module_identity(cyclic_group(2)),
        crossed_module_zero(cyclic_group(4), cyclic_group(2)),
    ]


@pytest.fixture(scope="session")
def groups():
    return corpus_groups()


@pytest.fixture(scope="session")
def crossed_modules():
    return corpus_crossed_modules()


@pytest.fixture(scope="session")
def s3():
    return symmetric_group(3)


@pytest.fixture(scope="session")
def z2():
    return cyclic_group(2)


@pytest.fixture(scope="session")
def z3():
    return cyclic_group(3)


@pytest.fixture(scope="session")
def z4():
    return cyclic_group(4)
