"""
Modelo Cognitivo - Mundos, procesos, objetos, relaciones, identidad y
representación de observaciones compuestas
"""

from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from itertools import combinations
from typing import (
    Any,
    Callable,
    Dict,
    FrozenSet,
    Iterable,
    List,
    Mapping,
    Optional,
    Sequence,
    Tuple,
    Union,
)

import networkx as nx

from .errors import (
    ConstancyError,
    IncompleteRegionMapError,
    InvalidObservationError,
    SegmentError,
)
from .observation import (
    CompositeObservation,
    ParamValue,
    PrimitiveObservation,
    ViolationPair,
    check_observation_axiom,
    check_strong_consistency,
    check_weak_consistency,
    sort_observations,
)

logger = logging.getLogger(__name__)

SpacePoint = Tuple[int, ...]
Region = FrozenSet[SpacePoint]


# ---------------------------------------------------------------------------
# Tiempo y espacio
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Segment:
    start: int
    end: int

    def __post_init__(self):
        if self.start > self.end:
            raise SegmentError(f"Segmento mal formado: [{self.start}, {self.end}]")

    def __contains__(self, t: object) -> bool:
        return isinstance(t, int) and self.start <= t <= self.end

    def ticks(self) -> range:
        return range(self.start, self.end + 1)

    def __str__(self) -> str:
        return f"[{self.start}, {self.end}]"


def as_region(points: Iterable[Sequence[int]]) -> Region:
    return frozenset(tuple(int(c) for c in p) for p in points)


def _neighbors(point: SpacePoint) -> List[SpacePoint]:
    found = []
    for axis in range(len(point)):
        for step in (-1, 1):
            moved = list(point)
            moved[axis] += step
            found.append(tuple(moved))
    return found


@dataclass(frozen=True)
class RegionTopology:
    connected: bool
    boundary: Region
    interior: Region


def region_topology(region: Iterable[SpacePoint]) -> RegionTopology:
    """Conexidad por adyacencia ortogonal, frontera e interior de una región finita"""
    points = as_region(region)
    graph = nx.Graph()
    graph.add_nodes_from(points)
    interior = set()
    for p in points:
        adjacent = _neighbors(p)
        graph.add_edges_from((p, q) for q in adjacent if q in points)
        if all(q in points for q in adjacent):
            interior.add(p)
    # La región vacía no cuenta como conexa
    connected = bool(points) and nx.is_connected(graph)
    interior_region = frozenset(interior)
    return RegionTopology(connected, points - interior_region, interior_region)


# ---------------------------------------------------------------------------
# Procesos
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Process:
    """Todas y sólo las observaciones de un mundo en un segmento y una región por instante"""

    world_label: str
    segment: Segment
    region_map: Tuple[Tuple[int, Region], ...]
    members: CompositeObservation

    def region_at(self, t: int) -> Region:
        for tick, region in self.region_map:
            if tick == t:
                return region
        raise SegmentError(f"Instante {t} fuera del segmento {self.segment}")

    @property
    def t_min(self) -> int:
        return self.segment.start

    @property
    def t_max(self) -> int:
        return self.segment.end


# ---------------------------------------------------------------------------
# Relaciones y elementos
# ---------------------------------------------------------------------------


class RelationKind(Enum):
    PLAIN = "plain"
    IDENTITY = "identity"
    MEMBERSHIP = "membership"


class ProductKind(Enum):
    DENOTATION = "denotation"
    SENSE = "sense"
    EXPLANATION = "explanation"
    STRING = "string"


@dataclass(frozen=True)
class MRelationInfo:
    """Metadatos de una M-relación: (proceso mental, producto)"""

    product_kind: ProductKind
    knowledge: bool = False
    agent: Optional[str] = None


@dataclass(frozen=True)
class Relation:
    """Conjunto de secuencias de elementos de la misma aridad"""

    arity: int
    rows: FrozenSet[Tuple[Any, ...]]
    kind: RelationKind = RelationKind.PLAIN
    m_relation: Optional[MRelationInfo] = None
    name: str = field(default="", compare=False, hash=False)

    def __post_init__(self):
        rows = frozenset(tuple(r) for r in self.rows)
        if self.arity < 1:
            raise InvalidObservationError(f"Aridad inválida: {self.arity}")
        bad = [r for r in rows if len(r) != self.arity]
        if bad:
            raise InvalidObservationError(f"Secuencias de longitud distinta a {self.arity} en la relación {self.name!r}")
        object.__setattr__(self, "rows", rows)

    def with_rows(self, rows: Iterable[Tuple[Any, ...]]) -> "Relation":
        return Relation(self.arity, frozenset(rows), self.kind, self.m_relation, self.name)

    def sorted_rows(self) -> List[Tuple[Any, ...]]:
        return sorted(self.rows, key=lambda r: tuple(element_key(x) for x in r))

    def __len__(self) -> int:
        return len(self.rows)


@dataclass(frozen=True)
class AbstractString:
    """Cadena de símbolos abstracta (denotación de una cita directa)"""

    surface: str

    def __str__(self) -> str:
        return f'"{self.surface}"'


def element_key(e: Any) -> Tuple:
    """Clave canónica de ordenación para cualquier elemento del modelo"""
    if isinstance(e, CompositeObservation):
        return (0, e.sort_key())
    if isinstance(e, Process):
        return (1, e.members.sort_key(), e.world_label, e.segment.start, e.segment.end)
    if isinstance(e, frozenset):
        return (2, tuple(sorted(element_key(x) for x in e)))
    if isinstance(e, tuple):
        return (3, tuple(element_key(x) for x in e))
    if isinstance(e, Relation):
        return (4, (e.arity, e.kind.value), tuple(sorted(tuple(element_key(x) for x in r) for r in e.rows)))
    if isinstance(e, AbstractString):
        return (5, (e.surface,))
    if isinstance(e, PrimitiveObservation):
        return (6, e.sort_key())
    if hasattr(e, "sort_key"):
        return (7, e.sort_key())
    raise TypeError(f"Elemento no ordenable: {e!r}")


def normalize(e: Any) -> Any:
    """Forma canónica para la identidad: un proceso se representa por sus miembros"""
    if isinstance(e, Process):
        return e.members
    if isinstance(e, frozenset):
        return frozenset(normalize(x) for x in e)
    if isinstance(e, tuple):
        return tuple(normalize(x) for x in e)
    if isinstance(e, Relation):
        return e.with_rows(tuple(normalize(x) for x in r) for r in e.rows)
    return e


def identical(e1: Any, e2: Any) -> bool:
    """Ley de Leibniz: idénticos si los representa el mismo conjunto"""
    return normalize(e1) == normalize(e2)


def composites_in(e: Any) -> List[CompositeObservation]:
    """Observaciones compuestas contenidas (recursivamente) en un elemento"""
    if isinstance(e, CompositeObservation):
        return [e]
    if isinstance(e, Process):
        return [e.members]
    if isinstance(e, (frozenset, tuple)):
        return [c for x in e for c in composites_in(x)]
    if isinstance(e, Relation):
        return [c for r in e.rows for c in composites_in(r)]
    return []


def observations_in(e: Any) -> FrozenSet[PrimitiveObservation]:
    return frozenset(a for c in composites_in(e) for a in c.members)


# ---------------------------------------------------------------------------
# Modelo cognitivo
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WorldInfo:
    dimension: int
    subworlds: Tuple[str, ...] = ()


@dataclass(frozen=True)
class ObjectSpec:
    """Proceso registrado como objeto; el arranque/fin estricto lo declara el modelo"""

    process: Process
    strict_start_end: bool = False


@dataclass(frozen=True, eq=False)
class CognitiveModel:
    """Estructura inmutable tras la carga; las consultas son de sólo lectura"""

    observations: FrozenSet[PrimitiveObservation]
    worlds: Mapping[str, WorldInfo] = field(default_factory=dict)
    elements: Mapping[str, Any] = field(default_factory=dict)
    objects: Mapping[str, ObjectSpec] = field(default_factory=dict)
    abstract_strings: Mapping[str, AbstractString] = field(default_factory=dict)
    operations: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "observations", frozenset(self.observations))

    @cached_property
    def _by_world(self) -> Dict[str, List[PrimitiveObservation]]:
        index: Dict[str, List[PrimitiveObservation]] = defaultdict(list)
        for a in sort_observations(self.observations):
            index[a.world.w0].append(a)
        return dict(index)

    @cached_property
    def _by_world_time(self) -> Dict[Tuple[str, Optional[int]], List[PrimitiveObservation]]:
        index: Dict[Tuple[str, Optional[int]], List[PrimitiveObservation]] = defaultdict(list)
        for a in sort_observations(self.observations):
            index[(a.world.w0, a.t)].append(a)
        return dict(index)

    @cached_property
    def _by_id(self) -> Dict[str, PrimitiveObservation]:
        return {a.obs_id: a for a in self.observations if a.obs_id}

    @cached_property
    def _names(self) -> Dict[Any, str]:
        names: Dict[Any, str] = {}
        for name in sorted(self.elements):
            names.setdefault(normalize(self.elements[name]), name)
        return names

    def observation(self, obs_id: str) -> PrimitiveObservation:
        return self._by_id[obs_id]

    def actual_observations(self) -> List[PrimitiveObservation]:
        return [a for a in sort_observations(self.observations) if a.is_actual]

    def world_observations(self, u: str) -> List[PrimitiveObservation]:
        return list(self._by_world.get(u, ()))

    def observations_at(self, u: str, t: int) -> List[PrimitiveObservation]:
        return list(self._by_world_time.get((u, t), ()))

    def name_of(self, e: Any) -> Optional[str]:
        try:
            return self._names.get(normalize(e))
        except TypeError:
            return None

    def contains(self, e: Any) -> bool:
        """El elemento se construye a partir de las observaciones del modelo"""
        if isinstance(e, AbstractString):
            return e.surface in self.abstract_strings
        if isinstance(e, (CompositeObservation, Process, frozenset, tuple, Relation)):
            if isinstance(e, CompositeObservation) and not e.members:
                return True
            if not observations_in(e) <= self.observations:
                return False
            nested = e if isinstance(e, (frozenset, tuple)) else ()
            return all(self.contains(x) for x in nested)
        name = getattr(e, "name", None)
        if name is not None and name in self.operations:
            return True
        op = getattr(e, "op", None)
        return op is not None and self.contains(op)

    def validate(self) -> "ValidationReport":
        return validate_model(self)


def world_of(m: CognitiveModel, u: str) -> CompositeObservation:
    return CompositeObservation.of(m.world_observations(u))


def subworld_of(m: CognitiveModel, u: str, v: str) -> CompositeObservation:
    """Observaciones con w[0] = u y w[1] = v"""
    return CompositeObservation.of(a for a in m.world_observations(u) if a.world.w1 == v)


def process_at(
    m: CognitiveModel,
    u: str,
    seg: Segment,
    regions: Mapping[int, Iterable[Sequence[int]]],
) -> Process:
    """El único proceso de ``u`` sobre ``seg`` con la región de cada instante"""
    region_map = []
    members = []
    info = m.worlds.get(u)
    for t in seg.ticks():
        if t not in regions:
            raise IncompleteRegionMapError(f"Mapa de regiones incompleto: falta t={t} en {seg}")
        region = as_region(regions[t])
        if info is not None and any(len(p) != info.dimension for p in region):
            raise InvalidObservationError(f"Región en t={t} con dimensión distinta de {info.dimension}")
        region_map.append((t, region))
        members.extend(a for a in m.observations_at(u, t) if a.s0 in region)
    return Process(u, seg, tuple(region_map), CompositeObservation.of(members))


def state_of(P: Process, t0: int) -> CompositeObservation:
    """Un estado es un proceso en un único instante"""
    if t0 not in P.segment:
        raise SegmentError(f"Instante {t0} fuera del segmento {P.segment}")
    return CompositeObservation.of(a for a in P.members.members if a.t == t0)


# ---------------------------------------------------------------------------
# Condiciones de objeto
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ObjectConditionReport:
    spatial_difference: bool
    strict_boundary: bool
    disjointness: bool
    strict_start_end: bool

    @property
    def all_hold(self) -> bool:
        return self.spatial_difference and self.strict_boundary and self.disjointness and self.strict_start_end

    def as_dict(self) -> Dict[str, bool]:
        return {
            "spatial_difference": self.spatial_difference,
            "strict_boundary": self.strict_boundary,
            "disjointness": self.disjointness,
            "strict_start_end": self.strict_start_end,
        }


def _disjoint_or_nested(r1: Region, r2: Region) -> bool:
    return not (r1 & r2) or r1 <= r2 or r2 <= r1


def check_object_conditions(
    m: CognitiveModel,
    P: Process,
    strict_start_end: bool = False,
    exclude: Optional[str] = None,
) -> ObjectConditionReport:
    """Audita las condiciones computables de un objeto"""
    info = m.worlds.get(P.world_label)
    dimension = info.dimension if info is not None else 0
    distinct_s0 = {a.s0 for a in m.world_observations(P.world_label)}
    spatial = any(region for _, region in P.region_map) and dimension >= 1 and len(distinct_s0) > 1
    boundary = all(region and region_topology(region).connected for _, region in P.region_map)
    disjoint = True
    for name in sorted(m.objects):
        other = m.objects[name].process
        if name == exclude or other == P or other.world_label != P.world_label:
            continue
        for t, region in P.region_map:
            if t in other.segment and not _disjoint_or_nested(region, other.region_at(t)):
                disjoint = False
                break
    return ObjectConditionReport(bool(spatial), bool(boundary), disjoint, strict_start_end)


# ---------------------------------------------------------------------------
# Representación, constancia y similitud
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FeatureRepresentation:
    algorithm_id: str
    features: Tuple[Tuple[str, ParamValue], ...]

    def __post_init__(self):
        names = [n for n, _ in self.features]
        if len(set(names)) != len(names):
            raise ConstancyError(f"Rasgos repetidos en la representación {self.algorithm_id}: {names}")

    def value(self, name: str) -> ParamValue:
        for n, v in self.features:
            if n == name:
                return v
        raise ConstancyError(f"La representación {self.algorithm_id} no tiene el rasgo {name!r}")


RepresentationProcedure = Callable[[CompositeObservation], FeatureRepresentation]


def represent_extent(A: CompositeObservation) -> FeatureRepresentation:
    """Extensión temporal, tamaño y número de resultados distintos"""
    times = [a.t for a in A.members if a.t is not None]
    if not times:
        raise ConstancyError("La representación 'extent' no está definida sobre una observación sin tiempos")
    return FeatureRepresentation(
        "extent",
        (
            ("t_min", ParamValue.of(min(times))),
            ("t_max", ParamValue.of(max(times))),
            ("size", ParamValue.of(len(A))),
            ("results", ParamValue.of(len({a.result for a in A.members}))),
        ),
    )


REPRESENTATIONS: Dict[str, RepresentationProcedure] = {
    "extent": represent_extent,
}


FeatureRange = Tuple[Any, Any]


def _resolve_procedure(psi: Union[str, RepresentationProcedure]) -> RepresentationProcedure:
    if callable(psi):
        return psi
    if psi not in REPRESENTATIONS:
        raise ConstancyError(f"Procedimiento de representación desconocido: {psi}")
    return REPRESENTATIONS[psi]


def _represent_all(C: Iterable[CompositeObservation], psi: RepresentationProcedure) -> List[FeatureRepresentation]:
    reps = []
    for A in sorted(C, key=CompositeObservation.sort_key):
        try:
            reps.append(psi(A))
        except ConstancyError:
            raise
        except Exception as exc:
            raise ConstancyError(f"Procedimiento de representación no definido sobre {A}: {exc}") from exc
    return reps


def _in_range(value: ParamValue, bounds: FeatureRange) -> bool:
    low, high = (ParamValue.of(b) for b in bounds)
    return low <= value <= high


def check_constancy(
    C: Iterable[CompositeObservation],
    psi: Union[str, RepresentationProcedure],
    v1: Iterable[str],
    v2: Iterable[str],
    ranges: Optional[Mapping[str, FeatureRange]] = None,
) -> bool:
    """Constancia en ``v1`` bajo el cambio de ``v2``; con ``ranges`` se comprueba similitud"""
    reps = _represent_all(C, _resolve_procedure(psi))
    v1, v2 = list(v1), list(v2)
    if ranges is not None:
        for rep in reps:
            for name in v1:
                if name in ranges and not _in_range(rep.value(name), ranges[name]):
                    return False
    else:
        for name in v1:
            if len({rep.value(name) for rep in reps}) > 1:
                return False
    for r1, r2 in combinations(reps, 2):
        if any(r1.value(name) == r2.value(name) for name in v2):
            return False
    return True


def check_similarity(
    C: Iterable[CompositeObservation],
    psi: Union[str, RepresentationProcedure],
    ranges: Mapping[str, FeatureRange],
    v2: Iterable[str],
) -> bool:
    return check_constancy(C, psi, list(ranges), v2, ranges=ranges)


# ---------------------------------------------------------------------------
# Validación completa
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SelfObservationViolation:
    relation: str
    agent: str
    observation: PrimitiveObservation


@dataclass
class ValidationReport:
    axiom: List[ViolationPair]
    weak: List[ViolationPair]
    strong: List[ViolationPair]
    objects: Dict[str, ObjectConditionReport]
    self_observation: List[SelfObservationViolation]
    summary: Dict[str, Any]

    @property
    def ok(self) -> bool:
        return not (self.axiom or self.weak or self.strong or self.self_observation)


def _self_observation_violations(m: CognitiveModel) -> List[SelfObservationViolation]:
    found = []
    for name in sorted(m.elements):
        rel = m.elements[name]
        if not isinstance(rel, Relation) or rel.m_relation is None or not rel.m_relation.agent:
            continue
        agent = rel.m_relation.agent
        for row in rel.sorted_rows():
            for c in composites_in(row[0]):
                for a in c:
                    if a.is_actual and "/".join(a.observer.labels) != agent:
                        found.append(SelfObservationViolation(name, agent, a))
    return found


def validate_model(m: CognitiveModel) -> ValidationReport:
    observations = sort_observations(m.observations)
    actual = [a for a in observations if a.is_actual]
    per_world = {w: len(m.world_observations(w)) for w in sorted(m._by_world)}
    objects = {
        name: check_object_conditions(m, spec.process, spec.strict_start_end, exclude=name)
        for name, spec in sorted(m.objects.items())
    }
    report = ValidationReport(
        axiom=check_observation_axiom(observations),
        weak=check_weak_consistency(observations),
        strong=check_strong_consistency(actual),
        objects=objects,
        self_observation=_self_observation_violations(m),
        summary={
            "observations": len(observations),
            "actual": len(actual),
            "imaginary": len(observations) - len(actual),
            "worlds": per_world,
            "elements": len(m.elements),
            "objects": len(m.objects),
        },
    )
    if report.ok:
        logger.info("✅ Modelo consistente: %d observaciones", len(observations))
    else:
        logger.warning(
            "⚠️ Violaciones: axioma=%d débil=%d fuerte=%d autoobservación=%d",
            len(report.axiom), len(report.weak), len(report.strong), len(report.self_observation),
        )
    return report
