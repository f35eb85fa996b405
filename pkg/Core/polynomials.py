"""
KLO - Core Module: Exact Polynomials
Polinomios enteros en q (PolyQ) y polinomios de Laurent en v (LaurentV).

Aritmética exacta con enteros de Python y guarda explícita de 64 bits:
un coeficiente con |c| >= 2^63 indica un error interno, no una necesidad
de precisión arbitraria.
"""

from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from Core.errors import CoefficientOverflow


INT64_LIMIT = 1 << 63


def _checked(value: int) -> int:
    if value >= INT64_LIMIT or value <= -INT64_LIMIT:
        raise CoefficientOverflow(
            f"Coeficiente fuera del rango de 64 bits: {value}", value=str(value)
        )
    return value


def _term(coeff: int, power: int, var: str) -> str:
    if power == 0:
        return str(abs(coeff))
    body = var if power == 1 else f"{var}^{power}"
    if abs(coeff) == 1:
        return body
    return f"{abs(coeff)}{body}"


def _render(items: Iterable[Tuple[int, int]], var: str) -> str:
    parts: List[str] = []
    for power, coeff in items:
        if coeff == 0:
            continue
        text = _term(coeff, power, var)
        if not parts:
            parts.append(text if coeff > 0 else f"-{text}")
        else:
            parts.append(f"+ {text}" if coeff > 0 else f"- {text}")
    return " ".join(parts) if parts else "0"


class PolyQ:
    """
    Polinomio en Z[q] con coeficientes densos (índice = potencia de q).

    Inmutable y hashable. El polinomio cero tiene grado None.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Sequence[int] = ()):
        values = [_checked(int(c)) for c in coeffs]
        while values and values[-1] == 0:
            values.pop()
        self._coeffs: Tuple[int, ...] = tuple(values)

    @classmethod
    def monomial(cls, power: int, coeff: int = 1) -> "PolyQ":
        if power < 0:
            raise ValueError(f"Potencia negativa en PolyQ: {power}")
        return cls([0] * power + [coeff])

    @classmethod
    def from_terms(cls, terms: Dict[int, int]) -> "PolyQ":
        """Construye desde {potencia: coeficiente}."""
        if not terms:
            return cls()
        top = max(terms)
        values = [0] * (top + 1)
        for power, coeff in terms.items():
            values[power] += coeff
        return cls(values)

    # -- acceso -----------------------------------------------------------

    @property
    def coeffs(self) -> Tuple[int, ...]:
        return self._coeffs

    @property
    def degree(self) -> Optional[int]:
        return len(self._coeffs) - 1 if self._coeffs else None

    def coefficient(self, power: int) -> int:
        if 0 <= power < len(self._coeffs):
            return self._coeffs[power]
        return 0

    def is_zero(self) -> bool:
        return not self._coeffs

    def is_one(self) -> bool:
        return self._coeffs == (1,)

    def terms(self) -> Iterator[Tuple[int, int]]:
        """Pares (potencia, coeficiente) no nulos en orden creciente."""
        for power, coeff in enumerate(self._coeffs):
            if coeff:
                yield power, coeff

    def to_list(self) -> List[int]:
        return list(self._coeffs)

    def evaluate(self, q: int) -> int:
        total = 0
        for coeff in reversed(self._coeffs):
            total = total * q + coeff
        return total

    # -- aritmética -------------------------------------------------------

    def __add__(self, other: Union["PolyQ", int]) -> "PolyQ":
        other = _as_poly(other)
        size = max(len(self._coeffs), len(other._coeffs))
        return PolyQ([self.coefficient(i) + other.coefficient(i) for i in range(size)])

    __radd__ = __add__

    def __neg__(self) -> "PolyQ":
        return PolyQ([-c for c in self._coeffs])

    def __sub__(self, other: Union["PolyQ", int]) -> "PolyQ":
        return self + (-_as_poly(other))

    def __rsub__(self, other: int) -> "PolyQ":
        return _as_poly(other) - self

    def __mul__(self, other: Union["PolyQ", int]) -> "PolyQ":
        if isinstance(other, int):
            return PolyQ([c * other for c in self._coeffs])
        if not self._coeffs or not other._coeffs:
            return PolyQ()
        values = [0] * (len(self._coeffs) + len(other._coeffs) - 1)
        for i, a in enumerate(self._coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other._coeffs):
                values[i + j] += a * b
        return PolyQ(values)

    __rmul__ = __mul__

    def shift(self, power: int) -> "PolyQ":
        """Multiplica por q^power (power >= 0)."""
        if not self._coeffs or power == 0:
            return self
        return PolyQ([0] * power + list(self._coeffs))

    def kl_normalized(self, gap: int) -> "PolyQ":
        """
        Devuelve q^gap · P(q^-2).

        Es la normalización que convierte un polinomio KL P_{x,y} con
        gap = l(y) - l(x) en la entrada graduada de la matriz de
        descomposición. Requiere 2·deg P <= gap.
        """
        terms: Dict[int, int] = {}
        for power, coeff in self.terms():
            exponent = gap - 2 * power
            if exponent < 0:
                raise ValueError(
                    f"Normalización inválida: grado {self.degree} con gap {gap}"
                )
            terms[exponent] = terms.get(exponent, 0) + coeff
        return PolyQ.from_terms(terms)

    def has_alternating_signs(self) -> bool:
        """True si (-1)^k · coef(q^k) >= 0 para todo k."""
        return all((-1) ** k * c >= 0 for k, c in self.terms())

    # -- protocolo --------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = PolyQ([other])
        if not isinstance(other, PolyQ):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(("PolyQ", self._coeffs))

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __repr__(self) -> str:
        return f"PolyQ({list(self._coeffs)})"

    def __str__(self) -> str:
        return _render(enumerate(self._coeffs), "q")


def _as_poly(value: Union[PolyQ, int]) -> PolyQ:
    if isinstance(value, PolyQ):
        return value
    return PolyQ([value])


PolyQ.ZERO = PolyQ()
PolyQ.ONE = PolyQ([1])


class LaurentV:
    """
    Polinomio de Laurent en Z[v, v^-1].

    Representación dispersa {exponente: coeficiente}; inmutable.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Dict[int, int]] = None):
        clean = {}
        for exponent, coeff in (terms or {}).items():
            if coeff:
                clean[int(exponent)] = _checked(int(coeff))
        self._terms: Tuple[Tuple[int, int], ...] = tuple(sorted(clean.items()))

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> "LaurentV":
        return cls({exponent: coeff})

    @classmethod
    def from_poly(cls, poly: PolyQ, shift: int = 0) -> "LaurentV":
        """Interpreta q como v y multiplica por v^shift."""
        return cls({p + shift: c for p, c in poly.terms()})

    @property
    def degree(self) -> Optional[int]:
        return self._terms[-1][0] if self._terms else None

    def coefficient(self, exponent: int) -> int:
        for e, c in self._terms:
            if e == exponent:
                return c
        return 0

    def items(self) -> Tuple[Tuple[int, int], ...]:
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def bar(self) -> "LaurentV":
        """Involución v -> v^-1."""
        return LaurentV({-e: c for e, c in self._terms})

    def is_bar_invariant(self) -> bool:
        return self.bar() == self

    def to_poly(self) -> PolyQ:
        """Convierte a PolyQ si no hay exponentes negativos."""
        if self._terms and self._terms[0][0] < 0:
            raise ValueError(f"Exponente negativo en {self}")
        return PolyQ.from_terms(dict(self._terms))

    def to_dict(self) -> Dict[str, int]:
        return {str(e): c for e, c in self._terms}

    def __add__(self, other: Union["LaurentV", int]) -> "LaurentV":
        other = _as_laurent(other)
        terms = dict(self._terms)
        for e, c in other._terms:
            terms[e] = terms.get(e, 0) + c
        return LaurentV(terms)

    __radd__ = __add__

    def __neg__(self) -> "LaurentV":
        return LaurentV({e: -c for e, c in self._terms})

    def __sub__(self, other: Union["LaurentV", int]) -> "LaurentV":
        return self + (-_as_laurent(other))

    def __mul__(self, other: Union["LaurentV", int]) -> "LaurentV":
        if isinstance(other, int):
            return LaurentV({e: c * other for e, c in self._terms})
        terms: Dict[int, int] = {}
        for e1, c1 in self._terms:
            for e2, c2 in other._terms:
                terms[e1 + e2] = terms.get(e1 + e2, 0) + c1 * c2
        return LaurentV(terms)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentV({0: other})
        if not isinstance(other, LaurentV):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(("LaurentV", self._terms))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __repr__(self) -> str:
        return f"LaurentV({dict(self._terms)})"

    def __str__(self) -> str:
        parts: List[str] = []
        for e, c in reversed(self._terms):
            if e == 0:
                body = str(abs(c))
            else:
                var = "v" if e == 1 else f"v^{e}"
                body = var if abs(c) == 1 else f"{abs(c)}{var}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts) if parts else "0"


def _as_laurent(value: Union[LaurentV, int]) -> LaurentV:
    if isinstance(value, LaurentV):
        return value
    return LaurentV({0: value})


LaurentV.ZERO = LaurentV()
LaurentV.ONE = LaurentV({0: 1})
V = LaurentV({1: 1})
V_INV = LaurentV({-1: 1})
