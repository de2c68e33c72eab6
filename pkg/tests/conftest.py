import functools

import pytest

from landauvar.graphs import sunrise_graph, symanzik_F
from landauvar.landau import eliminate_critical_values
from landauvar.poly import Polynomial


@functools.lru_cache(maxsize=1)
def _sunrise_eliminant():
    """Sunrise critical-value eliminant in unsquared masses; computed once
    (a few seconds) and shared between the unit and acceptance suites."""
    m = {i: Polynomial.var(f"m{i}") for i in (1, 2, 3)}
    f = symanzik_F(sunrise_graph()).substitute(
        {f"m{i}sq": m[i] * m[i] for i in (1, 2, 3)}
    )
    return eliminate_critical_values(f, ["x1", "x2", "x3"], {"x3": 1})


@pytest.fixture(scope="session")
def sunrise_eliminant():
    return _sunrise_eliminant()
