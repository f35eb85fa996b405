"""
KLO - Core Module: Coxeter Systems
Enumeración de grupos de Weyl finitos de tipos A, B, C y D.

Los elementos se representan como permutaciones con signo de {1..N}
(tipo A: permutaciones ordinarias de {1..n+1}) y se indexan densamente
en orden BFS desde la identidad bajo multiplicación a derecha, de modo
que el índice respeta (longitud, orden de descubrimiento).

Convenciones:
    - Los reflejos simples se numeran 1..rank.
    - Multiplicar a derecha por s_i intercambia las posiciones i, i+1.
    - Multiplicar a izquierda por s_i intercambia los valores i, i+1.
    - Tipos B/C: s_n cambia el signo de la última coordenada.
    - Tipo D: s_n intercambia y cambia de signo las dos últimas.
"""

import logging
import math
import re
from collections import deque
from dataclasses import asdict, dataclass
from enum import Enum
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from Core.config import DEFAULT_MAX_ORDER
from Core.errors import NotACosetRep, NotTypeA, RankTooLarge, UnsupportedType


logger = logging.getLogger(__name__)

SignedPerm = Tuple[int, ...]

SUPPORTED_TYPES = ("A", "B", "C", "D")
MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 4}


class CosetFlavor(Enum):
    """Conjuntos de representantes que indexan bloques."""
    X_LAMBDA = "X_lambda"
    X_MU = "X_mu"
    X_MU_LAMBDA = "X_mu_lambda"


@dataclass(frozen=True)
class ParabolicSubset:
    """
    Subgrupo parabólico W_J.

    Attributes:
        J: Reflejos simples (índices 1..rank)
        w0J: Elemento más largo de W_J
        order_J: |W_J|
    """
    J: FrozenSet[int]
    w0J: int
    order_J: int

    @property
    def mask(self) -> int:
        return sum(1 << (s - 1) for s in self.J)

    @property
    def is_regular(self) -> bool:
        return not self.J

    def label(self) -> str:
        return ",".join(str(s) for s in sorted(self.J)) or "-"


@dataclass
class ElementInfo:
    """
    Datos de un elemento del grupo.

    Attributes:
        index: Índice denso
        length: Longitud de Coxeter
        inverse: Índice del inverso
        left_descents: Reflejos s con s·x < x
        right_descents: Reflejos s con x·s < x
        shortlex_word: Palabra reducida lexicográficamente mínima
    """
    index: int
    length: int
    inverse: int
    left_descents: List[int]
    right_descents: List[int]
    shortlex_word: List[int]

    def to_dict(self) -> Dict:
        return asdict(self)


def group_order(cartan_type: str, rank: int) -> int:
    """Cardinal de W(X_rank) sin enumerar."""
    if cartan_type == "A":
        return math.factorial(rank + 1)
    if cartan_type in ("B", "C"):
        return (2 ** rank) * math.factorial(rank)
    return (2 ** (rank - 1)) * math.factorial(rank)


def _compose(a: SignedPerm, b: SignedPerm) -> SignedPerm:
    """(a∘b)(k) = a(b(k)), con a(-j) = -a(j)."""
    return tuple(a[v - 1] if v > 0 else -a[-v - 1] for v in b)


def _invert(w: SignedPerm) -> SignedPerm:
    inverse = [0] * len(w)
    for position, value in enumerate(w, start=1):
        if value > 0:
            inverse[value - 1] = position
        else:
            inverse[-value - 1] = -position
    return tuple(inverse)


def _generators(cartan_type: str, rank: int) -> Tuple[int, List[SignedPerm]]:
    n = rank + 1 if cartan_type == "A" else rank
    gens: List[SignedPerm] = []
    adjacent = rank if cartan_type == "A" else rank - 1
    for i in range(1, adjacent + 1):
        images = list(range(1, n + 1))
        images[i - 1], images[i] = images[i], images[i - 1]
        gens.append(tuple(images))
    if cartan_type in ("B", "C"):
        images = list(range(1, n + 1))
        images[n - 1] = -n
        gens.append(tuple(images))
    elif cartan_type == "D":
        images = list(range(1, n + 1))
        images[n - 2], images[n - 1] = -n, -(n - 1)
        gens.append(tuple(images))
    return n, gens


class CoxeterSystem:
    """
    Grupo de Weyl finito enumerado con tablas de multiplicación.

    Inmutable tras la construcción salvo las cachés perezosas de ideales
    de Bruhat y palabras, que sólo se llenan.
    """

    def __init__(self, cartan_type: str, rank: int, max_order: int = DEFAULT_MAX_ORDER):
        cartan_type = cartan_type.upper()
        if cartan_type not in SUPPORTED_TYPES:
            raise UnsupportedType(
                f"Tipo de Cartan no soportado: {cartan_type}", cartan_type=cartan_type
            )
        if rank < MIN_RANK[cartan_type]:
            raise UnsupportedType(
                f"Rango {rank} no válido para el tipo {cartan_type}",
                cartan_type=cartan_type, rank=rank,
            )
        expected = group_order(cartan_type, rank)
        if expected > max_order:
            raise RankTooLarge(
                f"|W({cartan_type}{rank})| = {expected} excede el límite {max_order}",
                cartan_type=cartan_type, rank=rank, order=expected, max_order=max_order,
            )

        self.cartan_type = cartan_type
        self.rank = rank
        self.degree, self._gens = _generators(cartan_type, rank)

        identity = tuple(range(1, self.degree + 1))
        elements: List[SignedPerm] = [identity]
        index: Dict[SignedPerm, int] = {identity: 0}
        lengths = [0]
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for gen in self._gens:
                y = _compose(elements[x], gen)
                if y not in index:
                    index[y] = len(elements)
                    elements.append(y)
                    lengths.append(lengths[x] + 1)
                    queue.append(index[y])

        self.elements: List[SignedPerm] = elements
        self._index = index
        self.order = len(elements)
        self.length = np.array(lengths, dtype=np.int64)

        self.right_mul = np.empty((rank, self.order), dtype=np.int64)
        self.left_mul = np.empty((rank, self.order), dtype=np.int64)
        for s, gen in enumerate(self._gens):
            for x, w in enumerate(elements):
                self.right_mul[s, x] = index[_compose(w, gen)]
                self.left_mul[s, x] = index[_compose(gen, w)]

        self.right_descent_mask = np.zeros(self.order, dtype=np.int64)
        self.left_descent_mask = np.zeros(self.order, dtype=np.int64)
        for s in range(rank):
            self.right_descent_mask |= (self.length[self.right_mul[s]] < self.length).astype(np.int64) << s
            self.left_descent_mask |= (self.length[self.left_mul[s]] < self.length).astype(np.int64) << s

        self.inverse = np.array([index[_invert(w)] for w in elements], dtype=np.int64)
        self.w0 = int(np.argmax(self.length))
        self._generator_of = {int(self.right_mul[s, 0]): s + 1 for s in range(rank)}

        self._lower: Dict[int, np.ndarray] = {0: self._singleton(0)}
        self._words: Dict[int, Tuple[int, ...]] = {}
        self._parabolics: Dict[FrozenSet[int], ParabolicSubset] = {}
        self._weight_lookup: Dict[FrozenSet[int], Dict[Tuple[int, ...], int]] = {}
        logger.debug("Sistema %s%d construido: |W| = %d", cartan_type, rank, self.order)

    # -- identificación ---------------------------------------------------

    @property
    def name(self) -> str:
        return f"{self.cartan_type}{self.rank}"

    @property
    def simple_reflections(self) -> List[int]:
        return list(range(1, self.rank + 1))

    def generator(self, s: int) -> int:
        """Índice del reflejo simple s."""
        return int(self.right_mul[s - 1, 0])

    # -- cálculo con elementos ----------------------------------------------

    def rmul(self, x: int, s: int) -> int:
        return int(self.right_mul[s - 1, x])

    def lmul(self, s: int, x: int) -> int:
        return int(self.left_mul[s - 1, x])

    def multiply(self, x: int, y: int) -> int:
        return self._index[_compose(self.elements[x], self.elements[y])]

    def product(self, *factors: int) -> int:
        result = 0
        for factor in factors:
            result = self.multiply(result, factor)
        return result

    def inv(self, x: int) -> int:
        return int(self.inverse[x])

    def right_descents(self, x: int) -> List[int]:
        mask = int(self.right_descent_mask[x])
        return [s for s in self.simple_reflections if mask >> (s - 1) & 1]

    def left_descents(self, x: int) -> List[int]:
        mask = int(self.left_descent_mask[x])
        return [s for s in self.simple_reflections if mask >> (s - 1) & 1]

    def has_right_descent(self, x: int, s: int) -> bool:
        return bool(int(self.right_descent_mask[x]) >> (s - 1) & 1)

    def has_left_descent(self, x: int, s: int) -> bool:
        return bool(int(self.left_descent_mask[x]) >> (s - 1) & 1)

    def shortlex_word(self, x: int) -> Tuple[int, ...]:
        """Palabra reducida mínima en orden lexicográfico."""
        if x not in self._words:
            word = []
            current = x
            while current != 0:
                s = self.left_descents(current)[0]
                word.append(s)
                current = self.lmul(s, current)
            self._words[x] = tuple(word)
        return self._words[x]

    def from_word(self, word: Iterable[int]) -> int:
        """Elemento s_{i1}·s_{i2}···s_{ik}."""
        x = 0
        for s in word:
            if not 1 <= s <= self.rank:
                raise ValueError(f"Reflejo simple fuera de rango: s{s}")
            x = self.rmul(x, s)
        return x

    def element_calculus(self, x: int) -> ElementInfo:
        return ElementInfo(
            index=x,
            length=int(self.length[x]),
            inverse=self.inv(x),
            left_descents=self.left_descents(x),
            right_descents=self.right_descents(x),
            shortlex_word=list(self.shortlex_word(x)),
        )

    def word_label(self, x: int) -> str:
        word = self.shortlex_word(x)
        return "".join(f"s{s}" for s in word) if word else "e"

    def parse_element(self, token: str, J: Optional[ParabolicSubset] = None) -> int:
        """
        Interpreta "e", "s1s3s2", "1,3,2" o (tipo A con J) una secuencia de pesos.
        """
        token = token.strip()
        if token in ("", "e"):
            return 0
        if token.startswith("s"):
            letters = re.findall(r"s(\d+)", token)
            return self.from_word(int(letter) for letter in letters)
        if "," in token:
            return self.from_word(int(part) for part in token.split(",") if part)
        if J is not None and token.isdigit():
            return self.parse_weight_sequence([int(c) for c in token], J)
        raise ValueError(f"No se puede interpretar el elemento: {token!r}")

    def one_line(self, x: int) -> Tuple[int, ...]:
        if self.cartan_type != "A":
            raise NotTypeA("La notación en una línea requiere tipo A", cartan_type=self.cartan_type)
        return self.elements[x]

    # -- orden de Bruhat ----------------------------------------------------

    def _singleton(self, x: int) -> np.ndarray:
        marks = np.zeros(self.order, dtype=bool)
        marks[x] = True
        return marks

    def lower_ideal(self, y: int) -> np.ndarray:
        """
        Máscara booleana de {x : x <= y}.

        Si y·s < y entonces [e, y] = [e, ys] ∪ [e, ys]·s (propiedad de elevación).
        """
        chain = []
        current = y
        while current not in self._lower:
            chain.append(current)
            s = self.right_descents(current)[0]
            current = self.rmul(current, s)
        for z in reversed(chain):
            s = self.right_descents(z)[0]
            below = self._lower[self.rmul(z, s)]
            self._lower[z] = below | below[self.right_mul[s - 1]]
        return self._lower[y]

    def bruhat_leq(self, x: int, y: int) -> bool:
        if x == y:
            return True
        if self.length[x] >= self.length[y]:
            return False
        return bool(self.lower_ideal(y)[x])

    def bruhat_lower(self, y: int) -> np.ndarray:
        """Índices de [e, y] en orden creciente."""
        return np.flatnonzero(self.lower_ideal(y))

    # -- parabólicos --------------------------------------------------------

    def _validate_subset(self, J: Iterable[int]) -> FrozenSet[int]:
        subset = frozenset(int(s) for s in J)
        bad = [s for s in subset if not 1 <= s <= self.rank]
        if bad:
            raise ValueError(f"Reflejos simples fuera de rango: {sorted(bad)}")
        return subset

    def longest_element(self, J: Iterable[int]) -> int:
        """Elemento más largo de W_J (identidad si J = ∅)."""
        subset = self._validate_subset(J)
        x = 0
        grew = True
        while grew:
            grew = False
            for s in sorted(subset):
                if not self.has_right_descent(x, s):
                    x = self.rmul(x, s)
                    grew = True
                    break
        return x

    def subgroup_elements(self, J: Iterable[int]) -> List[int]:
        """Elementos de W_J ordenados por índice."""
        subset = sorted(self._validate_subset(J))
        seen = {0}
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for s in subset:
                y = self.rmul(x, s)
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return sorted(seen)

    def parabolic(self, J: Iterable[int]) -> ParabolicSubset:
        subset = self._validate_subset(J)
        if subset not in self._parabolics:
            self._parabolics[subset] = ParabolicSubset(
                J=subset,
                w0J=self.longest_element(subset),
                order_J=len(self.subgroup_elements(subset)),
            )
        return self._parabolics[subset]

    def hat_involution(self, P: ParabolicSubset) -> ParabolicSubset:
        """Imagen de J bajo s -> w0·s·w0."""
        image = set()
        for s in P.J:
            conj = self.product(self.w0, self.generator(s), self.w0)
            image.add(self._generator_of[conj])
        return self.parabolic(image)

    def coset_representatives(self,
                              J_lambda: ParabolicSubset,
                              J_mu: ParabolicSubset,
                              flavor: CosetFlavor = CosetFlavor.X_MU_LAMBDA) -> List[int]:
        """
        X_lambda: representantes más largos de W/W_λ.
        X_mu: representantes más cortos de W_μ\\W.
        X_mu_lambda: intersección (vacía = bloque cero).
        """
        flavor = CosetFlavor(flavor)
        longest = (self.right_descent_mask & J_lambda.mask) == J_lambda.mask
        shortest = (self.left_descent_mask & J_mu.mask) == 0
        if flavor is CosetFlavor.X_LAMBDA:
            marks = longest
        elif flavor is CosetFlavor.X_MU:
            marks = shortest
        else:
            marks = longest & shortest
        return [int(x) for x in np.flatnonzero(marks)]

    def x_lambda(self, J_lambda: ParabolicSubset) -> List[int]:
        return self.coset_representatives(J_lambda, self.parabolic(()), CosetFlavor.X_LAMBDA)

    def x_mu(self, J_mu: ParabolicSubset) -> List[int]:
        return self.coset_representatives(self.parabolic(()), J_mu, CosetFlavor.X_MU)

    def is_longest_rep(self, x: int, J_lambda: ParabolicSubset) -> bool:
        return (int(self.right_descent_mask[x]) & J_lambda.mask) == J_lambda.mask

    def is_shortest_rep(self, x: int, J_mu: ParabolicSubset) -> bool:
        return (int(self.left_descent_mask[x]) & J_mu.mask) == 0

    # -- secuencias de pesos (tipo A) ---------------------------------------

    def base_sequence(self, J: ParabolicSubset) -> Tuple[int, ...]:
        """Secuencia débilmente decreciente con entradas repetidas en los pares de J."""
        if self.cartan_type != "A":
            raise NotTypeA("Las secuencias de pesos requieren tipo A", cartan_type=self.cartan_type)
        base = [0] * self.degree
        for i in range(self.degree - 2, -1, -1):
            base[i] = base[i + 1] if (i + 1) in J.J else base[i + 1] + 1
        return tuple(base)

    def weight_sequence(self, x: int, J: ParabolicSubset) -> Tuple[int, ...]:
        """x aplicado a la secuencia base: la entrada j de la base pasa a la posición x(j)."""
        base = self.base_sequence(J)
        if not self.is_longest_rep(x, J):
            raise NotACosetRep(
                f"{self.word_label(x)} no es representante más largo para J={J.label()}",
                element=x, J=J.J,
            )
        sequence = [0] * self.degree
        for j, value in enumerate(self.elements[x]):
            sequence[value - 1] = base[j]
        return tuple(sequence)

    def parse_weight_sequence(self, sequence: Sequence[int], J: ParabolicSubset) -> int:
        """Inversa de weight_sequence."""
        if J.J not in self._weight_lookup:
            self._weight_lookup[J.J] = {
                self.weight_sequence(x, J): x for x in self.x_lambda(J)
            }
        key = tuple(int(v) for v in sequence)
        if key not in self._weight_lookup[J.J]:
            raise NotACosetRep(
                f"La secuencia {key} no es una permutación de {self.base_sequence(J)}",
                sequence=key, J=J.J,
            )
        return self._weight_lookup[J.J][key]

    def summary(self) -> Dict:
        return {
            "cartan_type": self.cartan_type,
            "rank": self.rank,
            "order": self.order,
            "w0": self.w0,
            "w0_word": self.word_label(self.w0),
            "length_w0": int(self.length[self.w0]),
        }


def format_weight(sequence: Sequence[int]) -> str:
    """(1,2,0,0) -> "1200"; con entradas de dos cifras usa comas."""
    if all(0 <= v <= 9 for v in sequence):
        return "".join(str(v) for v in sequence)
    return "(" + ",".join(str(v) for v in sequence) + ")"


def build_system(cartan_type: str, rank: int, max_order: int = DEFAULT_MAX_ORDER) -> CoxeterSystem:
    """Construye y valida un sistema de Coxeter finito."""
    return CoxeterSystem(cartan_type, rank, max_order=max_order)
