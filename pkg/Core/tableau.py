"""
KLO - Core Module: Young Tableaux
Tablas de Young y correspondencia de Robinson-Schensted (inserción por filas).
"""

from dataclasses import dataclass
from typing import List, Sequence, Tuple

from Core.errors import NotTypeA


def _check_shape(shape: Sequence[int]) -> None:
    for i in range(len(shape) - 1):
        if shape[i + 1] > shape[i]:
            raise ValueError(f"La forma {tuple(shape)} no es una partición")


class YoungTableau:

    def __init__(self, values: List[List[int]]):
        self.values = [list(row) for row in values]
        self.shape = tuple(len(row) for row in self.values)
        _check_shape(self.shape)
        self.n = sum(self.shape)

    def __repr__(self):
        return "\n".join("|" + "|".join(str(v) for v in row) + "|" for row in self.values)

    def __len__(self):
        return self.n

    def __getitem__(self, key):
        i, j = key
        return self.values[i][j]

    def __eq__(self, other):
        if not isinstance(other, YoungTableau):
            other = YoungTableau(other)
        return self.values == other.values

    def __hash__(self):
        return hash(self.key())

    def key(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(tuple(row) for row in self.values)

    def to_list(self) -> List[List[int]]:
        return [list(row) for row in self.values]

    def shape_statistic(self) -> int:
        """Σ (i-1)·λ_i sobre las filas λ_i."""
        return sum(i * row for i, row in enumerate(self.shape))


@dataclass
class RSKResult:
    """
    Resultado de la correspondencia de Robinson-Schensted.

    Attributes:
        insertion: Tabla de inserción P
        recording: Tabla de registro Q
        shape: Forma común
    """
    insertion: YoungTableau
    recording: YoungTableau
    shape: Tuple[int, ...]

    def to_dict(self):
        return {
            "insertion": self.insertion.to_list(),
            "recording": self.recording.to_list(),
            "shape": list(self.shape),
        }


def rsk(permutation: Sequence[int]) -> RSKResult:
    """
    Inserción por filas de la palabra w(1) w(2) ... w(n).

    Args:
        permutation: Permutación en notación de una línea (valores 1..n)

    Returns:
        RSKResult con P, Q y la forma
    """
    n = len(permutation)
    if sorted(permutation) != list(range(1, n + 1)):
        raise NotTypeA(
            f"{tuple(permutation)} no es una permutación de 1..{n}",
            permutation=tuple(permutation),
        )
    insertion: List[List[int]] = []
    recording: List[List[int]] = []
    for step, value in enumerate(permutation, start=1):
        row = 0
        bumped = value
        while True:
            if row == len(insertion):
                insertion.append([bumped])
                recording.append([step])
                break
            current = insertion[row]
            position = next((j for j, v in enumerate(current) if v > bumped), None)
            if position is None:
                current.append(bumped)
                recording[row].append(step)
                break
            current[position], bumped = bumped, current[position]
            row += 1
    P = YoungTableau(insertion)
    return RSKResult(insertion=P, recording=YoungTableau(recording), shape=P.shape)
