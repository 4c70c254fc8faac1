"""
Observaciones - Observaciones primitivas y compuestas, operaciones de extracción,
consistencia entre observadores y verificación directa
"""

from __future__ import annotations

import logging
import re
import sys
from abc import ABC, abstractmethod
from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from functools import total_ordering
from itertools import combinations
from typing import (
    Any,
    Dict,
    FrozenSet,
    Hashable,
    Iterable,
    Iterator,
    List,
    Optional,
    Sequence,
    Tuple,
    Union,
)

from .errors import CrossTagComparisonError, InvalidObservationError

logger = logging.getLogger(__name__)


class ParamTag(Enum):
    INT = "int"
    SYMBOL = "symbol"
    TUPLE = "tuple"
    EMPTY = "empty"


RawValue = Union[int, str, Tuple[int, ...], None]


@total_ordering
@dataclass(frozen=True)
class ParamValue:
    """Valor escalar etiquetado: entero, símbolo, tupla de enteros o vacío"""

    tag: ParamTag
    value: RawValue = None

    def __post_init__(self):
        if self.tag is ParamTag.INT:
            if not isinstance(self.value, int) or isinstance(self.value, bool):
                raise InvalidObservationError(f"Valor entero inválido: {self.value!r}")
        elif self.tag is ParamTag.SYMBOL:
            if not isinstance(self.value, str):
                raise InvalidObservationError(f"Símbolo inválido: {self.value!r}")
            object.__setattr__(self, "value", sys.intern(self.value))
        elif self.tag is ParamTag.TUPLE:
            if not isinstance(self.value, (tuple, list)) or not all(
                isinstance(v, int) and not isinstance(v, bool) for v in self.value
            ):
                raise InvalidObservationError(f"Tupla de enteros inválida: {self.value!r}")
            object.__setattr__(self, "value", tuple(self.value))
        elif self.value is not None:
            raise InvalidObservationError("El marcador vacío no lleva valor")

    @classmethod
    def of(cls, raw: Any) -> "ParamValue":
        """Construye el valor a partir de un dato JSON/Python"""
        if isinstance(raw, ParamValue):
            return raw
        if raw is None:
            return EMPTY
        if isinstance(raw, bool):
            raise InvalidObservationError(f"Los booleanos no son valores de parámetro: {raw!r}")
        if isinstance(raw, int):
            return cls(ParamTag.INT, raw)
        if isinstance(raw, str):
            return cls(ParamTag.SYMBOL, raw)
        if isinstance(raw, (list, tuple)):
            return cls(ParamTag.TUPLE, tuple(raw))
        raise InvalidObservationError(f"Valor de parámetro no soportado: {raw!r}")

    def _check_tag(self, other: "ParamValue") -> None:
        if not isinstance(other, ParamValue):
            raise CrossTagComparisonError(f"No se puede comparar {self} con {other!r}")
        if other.tag is not self.tag:
            raise CrossTagComparisonError(
                f"Comparación entre etiquetas distintas: {self.tag.value} y {other.tag.value}"
            )

    def __lt__(self, other: "ParamValue") -> bool:
        self._check_tag(other)
        if self.tag is ParamTag.EMPTY:
            return False
        return self.value < other.value

    def sort_key(self) -> Tuple[str, Any]:
        """Clave canónica de ordenación (válida entre etiquetas, sólo para determinismo)"""
        if self.tag is ParamTag.EMPTY:
            return (self.tag.value, ())
        if self.tag is ParamTag.INT:
            return (self.tag.value, (self.value,))
        if self.tag is ParamTag.SYMBOL:
            return (self.tag.value, (self.value,))
        return (self.tag.value, self.value)

    def to_raw(self) -> Any:
        if self.tag is ParamTag.TUPLE:
            return list(self.value)
        return self.value

    def __str__(self) -> str:
        if self.tag is ParamTag.EMPTY:
            return "∅"
        if self.tag is ParamTag.TUPLE:
            return "(" + ",".join(str(v) for v in self.value) + ")"
        return str(self.value)


EMPTY = ParamValue(ParamTag.EMPTY)


@dataclass(frozen=True)
class WorldPath:
    labels: Tuple[str, ...]

    def __post_init__(self):
        labels = tuple(self.labels)
        if not labels:
            raise InvalidObservationError("La ruta de mundo necesita al menos w[0]")
        object.__setattr__(self, "labels", tuple(sys.intern(str(x)) for x in labels))

    @property
    def w0(self) -> str:
        return self.labels[0]

    @property
    def w1(self) -> Optional[str]:
        return self.labels[1] if len(self.labels) > 1 else None

    def __str__(self) -> str:
        return "/".join(self.labels)


@dataclass(frozen=True)
class ParamDecl:
    name: str
    tag: ParamTag


# Parámetros de estado obligatorios: tiempo, punto de estado y punto espacial
TIME_PARAM = "t"
STATE_SPACE_PARAM = "s1"
SPACE_PARAM = "s0"
REQUIRED_STATE_PARAMS = (TIME_PARAM, STATE_SPACE_PARAM, SPACE_PARAM)


@dataclass(frozen=True)
class ResolutionPower:
    """Descriptor o[1]: parámetros de estado, de resolución y de resultado"""

    state: Tuple[ParamDecl, ...]
    resolution: Tuple[ParamDecl, ...]
    result: ParamDecl

    def __post_init__(self):
        object.__setattr__(self, "state", tuple(self.state))
        object.__setattr__(self, "resolution", tuple(self.resolution))
        names = [d.name for d in self.state]
        missing = [p for p in REQUIRED_STATE_PARAMS if p not in names]
        if missing:
            raise InvalidObservationError(f"Faltan parámetros de estado: {missing}")
        all_names = names + [d.name for d in self.resolution] + [self.result.name]
        if len(set(all_names)) != len(all_names):
            raise InvalidObservationError(f"Nombres de parámetro repetidos: {all_names}")

    def state_index(self, name: str) -> Optional[int]:
        for i, decl in enumerate(self.state):
            if decl.name == name:
                return i
        return None

    def resolution_index(self, name: str) -> Optional[int]:
        for i, decl in enumerate(self.resolution):
            if decl.name == name:
                return i
        return None


class AcIm(Enum):
    ACTUAL = "actual"
    IMAGINARY = "imaginary"


@dataclass(frozen=True)
class ObserverSpec:
    labels: Tuple[str, ...]
    power: ResolutionPower
    state: Tuple[ParamValue, ...]
    ac_im: AcIm

    def __post_init__(self):
        labels = tuple(self.labels)
        if not labels:
            raise InvalidObservationError("El observador necesita al menos una etiqueta o[0]")
        object.__setattr__(self, "labels", tuple(sys.intern(str(x)) for x in labels))
        object.__setattr__(self, "state", tuple(ParamValue.of(v) for v in self.state))
        if len(self.state) != len(self.power.state):
            raise InvalidObservationError(
                f"Estado de longitud {len(self.state)}; se esperaban {len(self.power.state)} parámetros"
            )

    def state_value(self, name: str) -> Optional[ParamValue]:
        idx = self.power.state_index(name)
        return None if idx is None else self.state[idx]


@dataclass(frozen=True)
class PrimitiveObservation:
    """Observación primitiva <mundo, observador, punto de resolución, resultado>.

    La identidad es estructural: ``obs_id`` sólo sirve para referenciar y
    reportar, no participa en la igualdad.
    """

    world: WorldPath
    observer: ObserverSpec
    resolution_point: Tuple[ParamValue, ...]
    result: ParamValue
    obs_id: str = field(default="", compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "resolution_point", tuple(ParamValue.of(v) for v in self.resolution_point))
        object.__setattr__(self, "result", ParamValue.of(self.result))
        expected = len(self.observer.power.resolution)
        if len(self.resolution_point) != expected:
            raise InvalidObservationError(
                f"Punto de resolución de longitud {len(self.resolution_point)}; se esperaban {expected}"
            )

    @property
    def ac_im(self) -> AcIm:
        return self.observer.ac_im

    @property
    def is_actual(self) -> bool:
        return self.observer.ac_im is AcIm.ACTUAL

    @property
    def t(self) -> Optional[int]:
        value = self.observer.state_value(TIME_PARAM)
        return value.value if value is not None and value.tag is ParamTag.INT else None

    @property
    def s0(self) -> Optional[Tuple[int, ...]]:
        value = self.observer.state_value(SPACE_PARAM)
        return value.value if value is not None and value.tag is ParamTag.TUPLE else None

    def context_key(self) -> Hashable:
        """Mundo, observador completo y punto de resolución (axioma de observación)"""
        return (self.world, self.observer, self.resolution_point)

    def verification_key(self) -> Hashable:
        """Todo salvo o[0], o[3] y el resultado"""
        obs = self.observer
        return (self.world, obs.power, obs.state, self.resolution_point)

    def sort_key(self) -> Tuple:
        obs = self.observer
        return (
            self.world.labels,
            obs.labels,
            obs.ac_im.value,
            tuple(v.sort_key() for v in obs.state),
            tuple(v.sort_key() for v in self.resolution_point),
            self.result.sort_key(),
            self.obs_id,
        )

    def label(self) -> str:
        return self.obs_id or f"{self.world}@{self.t}"


def sort_observations(observations: Iterable[PrimitiveObservation]) -> List[PrimitiveObservation]:
    return sorted(observations, key=PrimitiveObservation.sort_key)


@dataclass(frozen=True)
class CompositeObservation:
    """Conjunto finito de observaciones primitivas"""

    members: FrozenSet[PrimitiveObservation] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(self.members))

    @classmethod
    def of(cls, observations: Iterable[PrimitiveObservation]) -> "CompositeObservation":
        return cls(frozenset(observations))

    def __iter__(self) -> Iterator[PrimitiveObservation]:
        return iter(sort_observations(self.members))

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, item: object) -> bool:
        return item in self.members

    def __and__(self, other: "CompositeObservation") -> "CompositeObservation":
        return CompositeObservation(self.members & other.members)

    def __or__(self, other: "CompositeObservation") -> "CompositeObservation":
        return CompositeObservation(self.members | other.members)

    def issubset(self, other: "CompositeObservation") -> bool:
        return self.members <= other.members

    @property
    def is_empty(self) -> bool:
        return not self.members

    def imaginary(self) -> List[PrimitiveObservation]:
        return [a for a in self if not a.is_actual]

    def sort_key(self) -> Tuple:
        return tuple(a.sort_key() for a in self)

    def ids(self) -> List[str]:
        return [a.label() for a in self]

    def __str__(self) -> str:
        return "{" + ", ".join(self.ids()) + "}"


# ---------------------------------------------------------------------------
# Operaciones de extracción
# ---------------------------------------------------------------------------

_WORLD_PARAM = re.compile(r"w(\d+)")


def extract_value(a: PrimitiveObservation, param: str) -> Optional[ParamValue]:
    """Valor del parámetro ``param`` en ``a``; ``None`` cuando no forma parte de su construcción"""
    match = _WORLD_PARAM.fullmatch(param)
    if match:
        idx = int(match.group(1))
        labels = a.world.labels
        return ParamValue(ParamTag.SYMBOL, labels[idx]) if idx < len(labels) else None
    if param == "o0":
        return ParamValue(ParamTag.SYMBOL, "/".join(a.observer.labels))
    if param in ("o3", "acim"):
        return ParamValue(ParamTag.SYMBOL, a.ac_im.value)
    power = a.observer.power
    if param == "re0" or param == power.result.name:
        return a.result
    value = a.observer.state_value(param)
    if value is not None:
        return value
    idx = power.resolution_index(param)
    if idx is not None:
        return a.resolution_point[idx]
    return None


def extract_set(observations: Union[CompositeObservation, Iterable[PrimitiveObservation]], param: str) -> FrozenSet[ParamValue]:
    values = (extract_value(a, param) for a in observations)
    return frozenset(v for v in values if v is not None)


class ObservationPredicate(ABC):
    """Predicado sobre parámetros, cerrado bajo conectivas"""

    @abstractmethod
    def holds(self, a: PrimitiveObservation) -> bool:
        ...

    @abstractmethod
    def params(self) -> FrozenSet[str]:
        ...

    def __and__(self, other: "ObservationPredicate") -> "ObservationPredicate":
        return AllOf((self, other))

    def __or__(self, other: "ObservationPredicate") -> "ObservationPredicate":
        return AnyOf((self, other))

    def __invert__(self) -> "ObservationPredicate":
        return Negation(self)


@dataclass(frozen=True)
class Membership(ObservationPredicate):
    param: str
    domain: FrozenSet[ParamValue]

    @classmethod
    def of(cls, param: str, values: Iterable[Any]) -> "Membership":
        return cls(param, frozenset(ParamValue.of(v) for v in values))

    def holds(self, a: PrimitiveObservation) -> bool:
        value = extract_value(a, self.param)
        return value is not None and value in self.domain

    def params(self) -> FrozenSet[str]:
        return frozenset((self.param,))


@dataclass(frozen=True)
class AllOf(ObservationPredicate):
    parts: Tuple[ObservationPredicate, ...]

    def holds(self, a: PrimitiveObservation) -> bool:
        return all(p.holds(a) for p in self.parts)

    def params(self) -> FrozenSet[str]:
        return frozenset().union(*(p.params() for p in self.parts))


@dataclass(frozen=True)
class AnyOf(ObservationPredicate):
    parts: Tuple[ObservationPredicate, ...]

    def holds(self, a: PrimitiveObservation) -> bool:
        return any(p.holds(a) for p in self.parts)

    def params(self) -> FrozenSet[str]:
        return frozenset().union(*(p.params() for p in self.parts))


@dataclass(frozen=True)
class Negation(ObservationPredicate):
    """Un parámetro indefinido falla también bajo la negación"""

    inner: ObservationPredicate

    def holds(self, a: PrimitiveObservation) -> bool:
        if any(extract_value(a, p) is None for p in self.inner.params()):
            return False
        return not self.inner.holds(a)

    def params(self) -> FrozenSet[str]:
        return self.inner.params()


def filter_observations(
    observations: Union[CompositeObservation, Iterable[PrimitiveObservation]],
    pred: ObservationPredicate,
) -> CompositeObservation:
    """Extracción III: los miembros que satisfacen ``pred``"""
    return CompositeObservation(frozenset(a for a in observations if pred.holds(a)))


# ---------------------------------------------------------------------------
# Axioma de observación y consistencia entre observadores
# ---------------------------------------------------------------------------

ViolationPair = Tuple[PrimitiveObservation, PrimitiveObservation]


def _ordered_pair(x: PrimitiveObservation, y: PrimitiveObservation) -> ViolationPair:
    return (x, y) if x.sort_key() <= y.sort_key() else (y, x)


def _pairs_in_groups(groups: Dict[Hashable, List[PrimitiveObservation]], offending) -> List[ViolationPair]:
    pairs = []
    for members in groups.values():
        if len(members) < 2:
            continue
        for x, y in combinations(sort_observations(members), 2):
            if offending(x, y):
                pairs.append(_ordered_pair(x, y))
    pairs.sort(key=lambda p: (p[0].sort_key(), p[1].sort_key()))
    return pairs


def check_observation_axiom(observations: Iterable[PrimitiveObservation]) -> List[ViolationPair]:
    """Pares con mismo mundo, observador y punto de resolución pero resultado distinto"""
    groups: Dict[Hashable, List[PrimitiveObservation]] = defaultdict(list)
    for a in set(observations):
        groups[a.context_key()].append(a)
    pairs = _pairs_in_groups(groups, lambda x, y: x.result != y.result)
    if pairs:
        logger.debug("⚠️ Axioma de observación: %d violaciones", len(pairs))
    return pairs


def check_weak_consistency(
    observations: Iterable[PrimitiveObservation],
    include_same_observer: bool = False,
) -> List[ViolationPair]:
    """Pares que sólo difieren en o[0] y en el resultado.

    Por defecto o[0] debe diferir; los pares con el mismo observador los
    reporta ``check_observation_axiom``. Con ``include_same_observer`` se
    incluyen también, y el conjunto contiene entonces todas las violaciones del
    axioma de observación.
    """
    groups: Dict[Hashable, List[PrimitiveObservation]] = defaultdict(list)
    for a in set(observations):
        obs = a.observer
        groups[(a.world, obs.power, obs.state, obs.ac_im, a.resolution_point)].append(a)

    def offending(x: PrimitiveObservation, y: PrimitiveObservation) -> bool:
        if x.result == y.result:
            return False
        return include_same_observer or x.observer.labels != y.observer.labels

    pairs = _pairs_in_groups(groups, offending)
    if pairs:
        logger.debug("⚠️ Consistencia débil: %d violaciones", len(pairs))
    return pairs


def check_strong_consistency(observations: Iterable[PrimitiveObservation]) -> List[ViolationPair]:
    """Pares con o[0] distinto pero mismo w[0], mismo estado y misma etiqueta ac/im"""
    groups: Dict[Hashable, List[PrimitiveObservation]] = defaultdict(list)
    for a in set(observations):
        groups[(a.world.w0, a.observer.state, a.ac_im)].append(a)
    pairs = _pairs_in_groups(groups, lambda x, y: x.observer.labels != y.observer.labels)
    if pairs:
        logger.debug("⚠️ Consistencia fuerte: %d violaciones", len(pairs))
    return pairs


# ---------------------------------------------------------------------------
# Verificación y refutación directas
# ---------------------------------------------------------------------------


def directly_verifies(b: PrimitiveObservation, a: PrimitiveObservation) -> bool:
    """``b`` (actual) verifica directamente ``a`` (imaginaria)"""
    if a.is_actual or not b.is_actual:
        return False
    return a.verification_key() == b.verification_key() and a.result == b.result


def directly_refutes(b: PrimitiveObservation, a: PrimitiveObservation) -> bool:
    """``b`` (actual) refuta directamente ``a`` (imaginaria)"""
    if a.is_actual or not b.is_actual:
        return False
    return a.verification_key() == b.verification_key() and a.result != b.result


class WitnessIndex:
    """Índice de observaciones actuales por clave de verificación"""

    def __init__(self, observations: Iterable[PrimitiveObservation]):
        self._by_key: Dict[Hashable, List[PrimitiveObservation]] = defaultdict(list)
        for b in sort_observations(set(observations)):
            if b.is_actual:
                self._by_key[b.verification_key()].append(b)

    def verifier(self, a: PrimitiveObservation) -> Optional[PrimitiveObservation]:
        if a.is_actual:
            return None
        for b in self._by_key.get(a.verification_key(), ()):
            if b.result == a.result:
                return b
        return None

    def refuter(self, a: PrimitiveObservation) -> Optional[PrimitiveObservation]:
        if a.is_actual:
            return None
        for b in self._by_key.get(a.verification_key(), ()):
            if b.result != a.result:
                return b
        return None


WitnessSource = Union[WitnessIndex, Iterable[PrimitiveObservation]]


def _as_index(actuals: WitnessSource) -> WitnessIndex:
    return actuals if isinstance(actuals, WitnessIndex) else WitnessIndex(actuals)


def _members(A: Union[CompositeObservation, Iterable[PrimitiveObservation]]) -> Iterable[PrimitiveObservation]:
    return A if isinstance(A, CompositeObservation) else sort_observations(set(A))


def is_directly_verified(A: Union[CompositeObservation, Iterable[PrimitiveObservation]], actuals: WitnessSource) -> bool:
    """Cada miembro imaginario de ``A`` tiene un testigo que lo verifica (vacuo sin imaginarios)"""
    index = _as_index(actuals)
    return all(index.verifier(a) is not None for a in _members(A) if not a.is_actual)


def is_directly_refuted(A: Union[CompositeObservation, Iterable[PrimitiveObservation]], actuals: WitnessSource) -> bool:
    index = _as_index(actuals)
    return all(index.refuter(a) is not None for a in _members(A) if not a.is_actual)


def is_sequence_verified(sequence: Sequence[CompositeObservation], actuals: WitnessSource) -> bool:
    index = _as_index(actuals)
    return all(is_directly_verified(A, index) for A in sequence)


def is_sequence_refuted(sequence: Sequence[CompositeObservation], actuals: WitnessSource) -> bool:
    index = _as_index(actuals)
    return all(is_directly_refuted(A, index) for A in sequence)


@dataclass(frozen=True)
class Witness:
    imaginary: PrimitiveObservation
    actual: PrimitiveObservation
    relation: str  # "verifies" | "refutes"

    def describe(self) -> str:
        return f"{self.actual.label()} {self.relation} {self.imaginary.label()}"


def find_witnesses(A: Union[CompositeObservation, Iterable[PrimitiveObservation]], actuals: WitnessSource) -> List[Witness]:
    """Testigos de verificación o refutación para cada miembro imaginario"""
    index = _as_index(actuals)
    found = []
    for a in _members(A):
        if a.is_actual:
            continue
        b = index.verifier(a)
        if b is not None:
            found.append(Witness(a, b, "verifies"))
            continue
        b = index.refuter(a)
        if b is not None:
            found.append(Witness(a, b, "refutes"))
    return found
