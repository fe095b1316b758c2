import random

import pytest

from qale.catalog import named_group, random_group


@pytest.fixture(scope="session")
def z4():
    return named_group("joyce-9-3-5")


@pytest.fixture(scope="session")
def z2z2():
    return named_group("z2z2")


@pytest.fixture(scope="session")
def s3():
    return named_group("s3-hilb3")


@pytest.fixture(scope="session")
def free_z5():
    return named_group("free-z5")


@pytest.fixture(scope="session")
def random_groups():
    """Twelve SU(3) and twelve Sp(2) groups from the diagonal/cyclic/permutation blocks."""
    rng = random.Random(20261016)
    return [random_group(rng, 3) for _ in range(12)] + [random_group(rng, 4) for _ in range(12)]
