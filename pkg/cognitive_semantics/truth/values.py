"""
Valores de verdad - T, F, U, V y el marcador ud; tablas de Kleene y
Łukasiewicz extendidas con la regla de V
"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction
from typing import Callable, Dict, Tuple

from ..core.errors import CognitiveSemanticsError, UnknownConnectiveError


class TruthValue(Enum):
    T = "T"
    F = "F"
    U = "U"
    V = "V"
    UD = "ud"

    @property
    def is_classical(self) -> bool:
        return self in (TruthValue.T, TruthValue.F)

    @property
    def in_z(self) -> bool:
        return self is not TruthValue.UD

    def __str__(self) -> str:
        return self.value


class Logic(Enum):
    KLEENE = "kleene"
    LUKASIEWICZ = "lukasiewicz"

    @classmethod
    def of(cls, name: "Logic | str") -> "Logic":
        if isinstance(name, Logic):
            return name
        try:
            return cls(str(name).lower())
        except ValueError:
            raise CognitiveSemanticsError(f"Lógica desconocida: {name} (kleene | lukasiewicz)") from None


# Orden F < U < T sobre [0, 1]
_DEGREE = {TruthValue.F: Fraction(0), TruthValue.U: Fraction(1, 2), TruthValue.T: Fraction(1)}
_FROM_DEGREE = {v: k for k, v in _DEGREE.items()}


def _neg(x: Fraction) -> Fraction:
    return 1 - x


def _kleene_implies(x: Fraction, y: Fraction) -> Fraction:
    return max(1 - x, y)


def _lukasiewicz_implies(x: Fraction, y: Fraction) -> Fraction:
    return min(Fraction(1), 1 - x + y)


_IMPLIES: Dict[Logic, Callable[[Fraction, Fraction], Fraction]] = {
    Logic.KLEENE: _kleene_implies,
    Logic.LUKASIEWICZ: _lukasiewicz_implies,
}


def _table(name: str, logic: Logic, args: Tuple[Fraction, ...]) -> Fraction:
    implies = _IMPLIES[logic]
    if name == "not":
        return _neg(args[0])
    x, y = args
    if name == "and":
        return min(x, y)
    if name == "or":
        return max(x, y)
    if name == "implies":
        return implies(x, y)
    if name == "iff":
        return min(implies(x, y), implies(y, x))
    if name == "xor":
        return min(max(x, y), _neg(min(x, y)))
    raise UnknownConnectiveError(f"Tabla de conectiva desconocida: {name}")


_ARITY = {"not": 1, "and": 2, "or": 2, "implies": 2, "iff": 2, "xor": 2}


def apply_connective(name: str, logic: "Logic | str", *values: TruthValue) -> TruthValue:
    """Valor de una conectiva veritativo-funcional.

    Un operando ud hace el resultado ud; si no, cualquier V lo hace V; el
    resto sigue la tabla trivalente de la lógica elegida.
    """
    if name not in _ARITY:
        raise UnknownConnectiveError(f"Tabla de conectiva desconocida: {name}")
    if len(values) != _ARITY[name]:
        raise UnknownConnectiveError(f"{name} espera {_ARITY[name]} operandos, recibió {len(values)}")
    if any(v is TruthValue.UD for v in values):
        return TruthValue.UD
    if any(v is TruthValue.V for v in values):
        return TruthValue.V
    degree = _table(name, Logic.of(logic), tuple(_DEGREE[v] for v in values))
    return _FROM_DEGREE[degree]


def conjunction(values, logic: "Logic | str" = Logic.KLEENE) -> TruthValue:
    result = TruthValue.T
    for v in values:
        result = apply_connective("and", logic, result, v)
    return result
