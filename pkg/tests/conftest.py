import random
from fractions import Fraction
from pathlib import Path

import pytest

from omnirate import BitPoolSource

REPO_ROOT = Path(__file__).resolve().parent.parent
FIVE_USER_PATH = REPO_ROOT / "models" / "example_5user.bitpool"

# The golden five-user source: ten independent uniform bits a..j spread
# over five users.  Most exact expectations in this suite are anchored to it.
FIVE_USER_BITS = ["abcdfgij", "abcfij", "efhi", "bcej", "bcdhi"]


@pytest.fixture(scope="session")
def five_user():
    return BitPoolSource(FIVE_USER_BITS)


@pytest.fixture(scope="session")
def five_user_path():
    return str(FIVE_USER_PATH)


def random_bitpool(rng: random.Random, max_users: int = 6, max_bits: int = 12) -> BitPoolSource:
    """A random bit-pool source with 2..max_users users over <= max_bits bits."""
    n = rng.randint(2, max_users)
    n_bits = rng.randint(1, max_bits)
    universe = [f"b{k}" for k in range(n_bits)]
    pools = [rng.sample(universe, rng.randint(1, n_bits)) for _ in range(n)]
    return BitPoolSource(pools)


def random_alpha(rng: random.Random, model) -> Fraction:
    """A random exact alpha in [0, H(V)] on a 1/1000 grid (endpoints included)."""
    return model.total_entropy * Fraction(rng.randrange(0, 1001), 1000)


def corpus_models(count: int = 200, seed: int = 7151):
    """Seeded model corpus shared by the oracle-equivalence criteria.

    A few structured degenerate sources are pinned at the front; the rest
    are random.
    """
    models = [
        BitPoolSource(["w", "w"]),                       # one shared bit
        BitPoolSource(["x", "y"]),                       # fully independent
        BitPoolSource(["w", "wy"]),                      # shared plus private
        BitPoolSource(["ab", "bc", "ca"]),               # each misses one bit
        BitPoolSource(["x", "y", "z", "xyz"]),           # one omniscient user
    ]
    rng = random.Random(seed)
    while len(models) < count:
        models.append(random_bitpool(rng))
    return models
