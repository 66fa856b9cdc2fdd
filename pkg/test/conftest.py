"""Shared fixtures: the worked example and seeded random instances."""

import random

import pytest

from cooccurx.scanner import QueryProfile

EXAMPLE = b'----BC-ACCB--'
EXAMPLE_QUERY = QueryProfile.from_ids(b'ABC')


def make_instances(count, seed, max_n=500):
    """Random (tokens, query) pairs with n in [1, max_n], alphabet in [2, 8], q in {2, 3, 4}."""
    rng = random.Random(seed)
    instances = list()
    while len(instances) < count:
        sigma = rng.randint(2, 8)
        q = rng.choice([qq for qq in (2, 3, 4) if qq <= sigma])
        n = rng.randint(1, max_n)
        tokens = [rng.randrange(sigma) for _ in range(n)]
        query = QueryProfile.from_ids(rng.sample(range(sigma), q))
        instances.append((tokens, query))
    return instances


@pytest.fixture(scope='session')
def example():
    return EXAMPLE, EXAMPLE_QUERY


@pytest.fixture(scope='session')
def random_instances():
    return make_instances(200, seed=20240611)


@pytest.fixture(scope='session')
def instance_factory():
    return make_instances
