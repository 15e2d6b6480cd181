import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from lobbying import GenConfig, example1, gen_random
from lobbying.model import Comparison

settings.register_profile(
    "default", max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

SMALL = GenConfig()


def small_instances(**overrides):
    """Hypothesis strategy: seeded small random instances."""
    cfg = GenConfig(**overrides) if overrides else SMALL
    return st.integers(0, 2**32).map(lambda seed: gen_random(cfg, random.Random(seed)))


@pytest.fixture
def ex1():
    return example1()


@pytest.fixture
def ex1_weak():
    return example1(threshold=Fraction(3, 5), comparison=Comparison.WEAK)
