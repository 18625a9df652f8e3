"""
Shared fixtures: builtin groups, coordinate rings and form helpers
"""
import pytest

from src.algebra.lie_algebra import builtin_group
from src.calculus.polyform import CoordinateRing
from src.cli.form_parser import parse_form


@pytest.fixture(scope='session')
def h3():
    return builtin_group('heisenberg', 1)


@pytest.fixture(scope='session')
def h5():
    return builtin_group('heisenberg', 2)


@pytest.fixture(scope='session')
def engel():
    return builtin_group('engel')


@pytest.fixture(scope='session')
def abelian3():
    return builtin_group('abelian', 3)


@pytest.fixture(scope='session')
def h3_ring(h3):
    return CoordinateRing(h3)


@pytest.fixture
def form(h3_ring):
    """Parse a form expression over the first Heisenberg group"""
    return lambda text: parse_form(text, h3_ring)
