"""
KLO - Core Module: Hecke Algebra
Álgebra de Hecke de W sobre Z[v, v^-1] en la normalización de Soergel.

    H_x · H_s = H_{xs}                       si xs > x
    H_x · H_s = H_{xs} + (v^-1 - v) H_x      si xs < x
    C_y = Σ_x v^(l(y)-l(x)) P_{x,y}(v^-2) H_x

Los elementos son diccionarios {índice: LaurentV} en la base estándar.
"""

from typing import Dict, Iterable, Mapping, Tuple

from Core.coxeter import CoxeterSystem, ParabolicSubset
from Core.kl_engine import KLTable
from Core.polynomials import LaurentV, PolyQ, V, V_INV


HeckeElement = Dict[int, LaurentV]

_QUADRATIC = V_INV - V
_INVERSE_SHIFT = V - V_INV


def _accumulate(target: HeckeElement, w: int, coeff: LaurentV) -> None:
    total = target.get(w, LaurentV.ZERO) + coeff
    if total.is_zero():
        target.pop(w, None)
    else:
        target[w] = total


def add(a: Mapping[int, LaurentV], b: Mapping[int, LaurentV]) -> HeckeElement:
    result = dict(a)
    for w, c in b.items():
        _accumulate(result, w, c)
    return result


def scale(a: Mapping[int, LaurentV], coeff: LaurentV) -> HeckeElement:
    result: HeckeElement = {}
    for w, c in a.items():
        _accumulate(result, w, c * coeff)
    return result


class HeckeAlgebra:
    """
    Aritmética en la base estándar y cambio a la base canónica.

    Attributes:
        system: Sistema de Coxeter
        kl: Tabla KL usada para la base canónica
    """

    def __init__(self, system: CoxeterSystem, kl: KLTable):
        self.system = system
        self.kl = kl
        self._canonical: Dict[int, HeckeElement] = {}
        self._bar_standard: Dict[int, HeckeElement] = {0: {0: LaurentV.ONE}}
        self._structure: Dict[Tuple[int, int], HeckeElement] = {}

    def standard(self, w: int) -> HeckeElement:
        return {w: LaurentV.ONE}

    def mul_s(self, element: Mapping[int, LaurentV], s: int) -> HeckeElement:
        """element · H_s."""
        result: HeckeElement = {}
        for w, c in element.items():
            ws = self.system.rmul(w, s)
            _accumulate(result, ws, c)
            if self.system.length[ws] < self.system.length[w]:
                _accumulate(result, w, c * _QUADRATIC)
        return result

    def mul_s_inverse(self, element: Mapping[int, LaurentV], s: int) -> HeckeElement:
        """element · H_s^-1, con H_s^-1 = H_s + (v - v^-1)."""
        return add(self.mul_s(element, s), scale(element, _INVERSE_SHIFT))

    def multiply(self, a: Mapping[int, LaurentV], b: Mapping[int, LaurentV]) -> HeckeElement:
        """Producto a · b."""
        partial: Dict[int, HeckeElement] = {0: dict(a)}

        def times_standard(w: int) -> HeckeElement:
            chain = []
            current = w
            while current not in partial:
                s = self.system.right_descents(current)[0]
                chain.append((current, s))
                current = self.system.rmul(current, s)
            for z, s in reversed(chain):
                partial[z] = self.mul_s(partial[self.system.rmul(z, s)], s)
            return partial[w]

        result: HeckeElement = {}
        for w in sorted(b):
            for z, c in times_standard(w).items():
                _accumulate(result, z, c * b[w])
        return result

    def canonical(self, y: int) -> HeckeElement:
        """Elemento de la base canónica C_y en la base estándar."""
        if y not in self._canonical:
            ly = int(self.system.length[y])
            element: HeckeElement = {}
            for x in self.system.bruhat_lower(y):
                x = int(x)
                gap = ly - int(self.system.length[x])
                element[x] = LaurentV.from_poly(self.kl.P(x, y).kl_normalized(gap))
            self._canonical[y] = element
        return self._canonical[y]

    def to_canonical(self, element: Mapping[int, LaurentV]) -> HeckeElement:
        """Expresa un elemento en la base canónica restando términos de longitud máxima."""
        remaining = dict(element)
        result: HeckeElement = {}
        while remaining:
            top = max(remaining, key=lambda w: (int(self.system.length[w]), w))
            coeff = remaining[top]
            result[top] = coeff
            for x, c in self.canonical(top).items():
                _accumulate(remaining, x, -(c * coeff))
        return result

    def structure_constants(self, x: int, y: int) -> HeckeElement:
        """h_{x,y,z}: C_x · C_y = Σ_z h_{x,y,z} C_z."""
        key = (x, y)
        if key not in self._structure:
            product = self.multiply(self.canonical(x), self.canonical(y))
            self._structure[key] = self.to_canonical(product)
        return self._structure[key]

    def bar_standard(self, w: int) -> HeckeElement:
        """bar(H_w) = H_{s1}^-1 ··· H_{sk}^-1 para una palabra reducida de w."""
        if w not in self._bar_standard:
            s = self.system.right_descents(w)[0]
            self._bar_standard[w] = self.mul_s_inverse(self.bar_standard(self.system.rmul(w, s)), s)
        return self._bar_standard[w]

    def bar(self, element: Mapping[int, LaurentV]) -> HeckeElement:
        result: HeckeElement = {}
        for w, c in element.items():
            for z, d in self.bar_standard(w).items():
                _accumulate(result, z, d * c.bar())
        return result

    def is_bar_invariant(self, element: Mapping[int, LaurentV]) -> bool:
        return self.bar(element) == dict(element)

    def coset_vector(self, J: ParabolicSubset, column: Mapping[int, PolyQ]) -> HeckeElement:
        """
        Σ_x c_x · H_{x w0J} · C_{w0J} para x en X_λ.

        Con c_x = B[x][y] (q = v) el resultado es C_y dentro del ideal H·C_{w0J}.
        """
        base = self.canonical(J.w0J)
        result: HeckeElement = {}
        for x, poly in column.items():
            shortest = self.system.multiply(x, J.w0J)
            coeff = LaurentV.from_poly(poly)
            for z, c in self.multiply(self.standard(shortest), base).items():
                _accumulate(result, z, c * coeff)
        return result


def hecke_structure_constants(algebra: HeckeAlgebra, x: int, y: int) -> HeckeElement:
    return algebra.structure_constants(x, y)


def max_degree(values: Iterable[LaurentV]) -> int:
    degrees = [c.degree for c in values if not c.is_zero()]
    return max(degrees) if degrees else 0
