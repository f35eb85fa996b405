"""
KLO - Core Module: Closed Forms
Fórmulas cerradas para s_λ y d_λ en familias de singularidades donde
se conocen, para contrastarlas con el cálculo KLV.

    Pares hermitianos simétricos y bloques con a(w0 w0^λ) <= 2:
        s_λ(x) = a(w0 x) + a(w0 w0^λ)
        d_λ(x) = a(x w0^λ)

    Familia W_λ = S1 x S1 x S_{n-2} en sl(n), n > 3:
        s_λ(x) = a(w0 x) + a(w0 w0^λ) + ε(x), con ε(x) en {0, 1}
        según las células L1 y L1'.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from Core.block_invariants import CategoryOEngine, SDFunctions
from Core.coxeter import ParabolicSubset


logger = logging.getLogger(__name__)

HERMITIAN_SYMMETRIC = "hermitian_symmetric"
SMALL_A = "small_a"
SINGULAR_FAMILY = "s1_s1_sn2_family"


def hermitian_symmetric(cartan_type: str, rank: int, J: ParabolicSubset) -> bool:
    """True si W_J es el Levi de un par hermitiano simétrico."""
    missing = set(range(1, rank + 1)) - set(J.J)
    if len(missing) != 1:
        return False
    (node,) = missing
    if cartan_type == "A":
        return True
    if cartan_type == "B":
        return node == 1
    if cartan_type == "C":
        return node == rank
    if cartan_type == "D":
        return node in (1, rank - 1, rank)
    return False


def in_singular_family(cartan_type: str, rank: int, J: ParabolicSubset) -> bool:
    """W_J = S1 x S1 x S_{n-2} dentro de S_n con n = rank + 1 > 3."""
    return cartan_type == "A" and rank >= 3 and J.J == frozenset(range(3, rank + 1))


@dataclass
class FamilyCells:
    """
    Células L1 y L1' de la familia S1 x S1 x S_{n-2} con sus elementos nombrados.

    Attributes:
        x: x_1..x_{n-1} (células L1)
        x_prime: x'_1..x'_{n-1} (célula L1'); el último es el elemento restante de L1'
        L1: Célula izquierda de x_1
        L1_prime: Célula izquierda de x'_1
    """
    x: List[int]
    x_prime: List[int]
    L1: List[int] = field(default_factory=list)
    L1_prime: List[int] = field(default_factory=list)


def _as_subset(engine: CategoryOEngine, J) -> ParabolicSubset:
    return J if isinstance(J, ParabolicSubset) else engine.system.parabolic(J)


def family_cells(engine: CategoryOEngine, J) -> FamilyCells:
    J = _as_subset(engine, J)
    sys_ = engine.system
    n = sys_.rank + 1
    x1 = sys_.multiply(sys_.from_word(range(n - 1, 1, -1)), J.w0J)
    x1_prime = sys_.multiply(sys_.from_word(range(n - 1, 0, -1)), J.w0J)

    def descend(j: int, start: int) -> int:
        # s_{j-1} s_{j-2} ... s_1 · start
        return sys_.multiply(sys_.from_word(range(j - 1, 0, -1)), start)

    xs = [descend(j, x1) for j in range(1, n)]
    primes = [descend(j, x1_prime) for j in range(1, n - 1)]
    L1 = engine.cells.left_cell(x1)
    L1_prime = engine.cells.left_cell(x1_prime)
    leftover = [z for z in L1_prime if z not in primes]
    primes.extend(leftover)
    return FamilyCells(x=xs, x_prime=primes, L1=L1, L1_prime=L1_prime)


def _lower_bound(engine: CategoryOEngine, J: ParabolicSubset, x: int) -> int:
    sys_ = engine.system
    return engine.a(sys_.multiply(sys_.w0, x)) + engine.a(sys_.multiply(sys_.w0, J.w0J))


def family_simple_dimensions(engine: CategoryOEngine, J) -> Dict[int, int]:
    """s_λ para la familia S1 x S1 x S_{n-2} por el caso L1 / L1'."""
    J = _as_subset(engine, J)
    fam = family_cells(engine, J)
    raised = (set(fam.L1) - {fam.x[-1]}) | {fam.x_prime[-1]}
    index = engine.system.x_lambda(J)
    return {x: _lower_bound(engine, J, x) + (1 if x in raised else 0) for x in index}


def right_cell_rule(engine: CategoryOEngine, J) -> Dict[int, int]:
    """
    s_λ(x) = a(w0 x) + a(w0 w0^λ), más uno si l(x) no es la longitud
    máxima en R(x) ∩ X_λ.

    Se compara con la máxima y no con la mínima: es la lectura que coincide
    con family_simple_dimensions y con el cálculo KLV en A3 y A4.
    """
    J = _as_subset(engine, J)
    index = engine.system.x_lambda(J)
    members = set(index)
    values: Dict[int, int] = {}
    for x in index:
        lengths = [engine.l(y) for y in engine.cells.right_cell(x) if y in members]
        bump = 0 if engine.l(x) == max(lengths) else 1
        values[x] = _lower_bound(engine, J, x) + bump
    return values


def closed_forms(engine: CategoryOEngine, J) -> Optional[SDFunctions]:
    """
    Funciones s/d por fórmula cerrada, o None si ninguna familia aplica.

    La procedencia indica la familia usada; en la familia S1 x S1 x S_{n-2}
    sólo se determina s.
    """
    sys_ = engine.system
    J = _as_subset(engine, J)
    index = sys_.x_lambda(J)
    a_top = engine.a(sys_.multiply(sys_.w0, J.w0J))

    provenance = None
    if hermitian_symmetric(sys_.cartan_type, sys_.rank, J):
        provenance = HERMITIAN_SYMMETRIC
    elif a_top <= 2:
        provenance = SMALL_A
    if provenance is not None:
        return SDFunctions(
            J=J,
            s={x: _lower_bound(engine, J, x) for x in index},
            d={x: engine.a(sys_.multiply(x, J.w0J)) for x in index},
            provenance=provenance,
        )
    if in_singular_family(sys_.cartan_type, sys_.rank, J):
        return SDFunctions(J=J, s=family_simple_dimensions(engine, J), d=None,
                           provenance=SINGULAR_FAMILY)
    logger.debug("Sin forma cerrada para J=%s en %s", J.label(), sys_.name)
    return None
