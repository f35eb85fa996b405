"""
Fixtures compartidas: sistemas, tablas KL, células y evaluadores por grupo.

Las tablas se calculan una vez por sesión.
"""

import pytest

from Core.block_invariants import CategoryOEngine
from Core.cells import compute_cells
from Core.coxeter import build_system
from Core.kl_engine import kl_table


def _engine(cartan_type: str, rank: int) -> CategoryOEngine:
    system = build_system(cartan_type, rank)
    kl = kl_table(system)
    return CategoryOEngine(system, kl, compute_cells(system, kl))


@pytest.fixture(scope="session")
def engine_a1():
    return _engine("A", 1)


@pytest.fixture(scope="session")
def engine_a2():
    return _engine("A", 2)


@pytest.fixture(scope="session")
def engine_a3():
    return _engine("A", 3)


@pytest.fixture(scope="session")
def engine_a4():
    return _engine("A", 4)


@pytest.fixture(scope="session")
def engine_b2():
    return _engine("B", 2)


@pytest.fixture(scope="session")
def a3(engine_a3):
    return engine_a3.system


@pytest.fixture
def weight():
    """Índice del elemento con secuencia de pesos `text` para el subconjunto J."""
    def lookup(engine, J, text):
        system = engine.system
        return system.parse_element(text, system.parabolic(J))
    return lookup
