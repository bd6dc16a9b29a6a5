import warnings

import pytest

from props import PROPERTIES

SEEDS = range(100, 115)


@pytest.mark.parametrize("seed", SEEDS)
@pytest.mark.parametrize("name", sorted(PROPERTIES))
def test_property(name, seed):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        PROPERTIES[name](seed)
