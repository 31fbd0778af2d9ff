import pytest

from xsolve.formula import from_clauses


@pytest.fixture
def F():
    """Shorthand formula constructor: ``F([1, 2, 3], [-1, 4])``."""
    return lambda *clauses, **kw: from_clauses(clauses, **kw)
