"""
Loaders - Carga de modelos, léxicos, contextos y árboles desde archivos JSON
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Tuple, Union

from ..core.errors import CognitiveSemanticsError, InputFileError
from ..core.model import (
    AbstractString,
    CognitiveModel,
    MRelationInfo,
    ObjectSpec,
    ProductKind,
    Relation,
    RelationKind,
    Segment,
    WorldInfo,
    as_region,
    process_at,
)
from ..core.observation import (
    AcIm,
    CompositeObservation,
    ObserverSpec,
    ParamDecl,
    ParamTag,
    ParamValue,
    PrimitiveObservation,
    ResolutionPower,
    WorldPath,
)
from ..semantics.interp import DepTree, Leaf, Node
from ..semantics.lexicon import Context, DenotationRef, Lexicon, LexiconEntry
from ..semantics.operations import (
    FilterSpec,
    Match,
    MeaningLevel,
    OperationDef,
    OpKind,
    QuantifierSort,
    BUILTIN_OPERATIONS,
    resolve_operation,
)

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1

JsonSource = Union[str, Path, Mapping[str, Any]]


def read_json(path: Union[str, Path]) -> Dict[str, Any]:
    """Lee un archivo JSON con versión; los errores llevan línea y columna"""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise InputFileError(str(path), f"no se pudo leer: {e.strerror or e}") from e
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputFileError(str(path), e.msg, e.lineno, e.colno) from e
    if not isinstance(data, dict):
        raise InputFileError(str(path), "se esperaba un objeto JSON en la raíz")
    return data


def _source(source: JsonSource) -> Tuple[Dict[str, Any], str]:
    if isinstance(source, Mapping):
        data, where = dict(source), "<memoria>"
    else:
        data, where = read_json(source), str(source)
    version = data.get("version")
    if version != FORMAT_VERSION:
        raise InputFileError(where, f"versión de formato no soportada: {version!r} (se espera {FORMAT_VERSION})")
    return data, where


def _require(mapping: Mapping[str, Any], key: str, where: str, what: str) -> Any:
    if not isinstance(mapping, Mapping) or key not in mapping:
        raise InputFileError(where, f"{what}: falta la clave '{key}'")
    return mapping[key]


# ---------------------------------------------------------------------------
# Modelo
# ---------------------------------------------------------------------------


def _parse_tag(raw: str, where: str) -> ParamTag:
    try:
        return ParamTag(raw)
    except ValueError:
        raise InputFileError(where, f"etiqueta de parámetro desconocida: {raw!r}") from None


def _parse_power(name: str, spec: Mapping[str, Any], where: str) -> ResolutionPower:
    what = f"poder '{name}'"

    def decls(items) -> Tuple[ParamDecl, ...]:
        return tuple(ParamDecl(str(n), _parse_tag(t, where)) for n, t in items)

    result_name, result_tag = _require(spec, "result", where, what)
    return ResolutionPower(
        state=decls(_require(spec, "state", where, what)),
        resolution=decls(spec.get("resolution", [])),
        result=ParamDecl(str(result_name), _parse_tag(result_tag, where)),
    )


def _typed_values(raw: List[Any], decls: Tuple[ParamDecl, ...], where: str, what: str) -> Tuple[ParamValue, ...]:
    if len(raw) != len(decls):
        raise InputFileError(where, f"{what}: se esperaban {len(decls)} valores, hay {len(raw)}")
    values = []
    for value, decl in zip(raw, decls):
        pv = ParamValue.of(value)
        if pv.tag is not ParamTag.EMPTY and pv.tag is not decl.tag:
            raise InputFileError(where, f"{what}: '{decl.name}' espera {decl.tag.value}, recibió {pv.tag.value}")
        values.append(pv)
    return tuple(values)


def _parse_observation(i: int, spec: Mapping[str, Any], powers: Mapping[str, ResolutionPower], where: str) -> PrimitiveObservation:
    obs_id = str(spec.get("id", f"#{i}"))
    what = f"observación {obs_id}"
    observer = _require(spec, "observer", where, what)
    power_name = _require(observer, "power", where, what)
    if power_name not in powers:
        raise InputFileError(where, f"{what}: poder desconocido {power_name!r}")
    power = powers[power_name]
    try:
        acim = AcIm(observer.get("acim", "actual"))
    except ValueError:
        raise InputFileError(where, f"{what}: acim debe ser 'actual' o 'imaginary'") from None
    state = _typed_values(_require(observer, "state", where, what), power.state, where, what)
    rpoint = _typed_values(spec.get("rpoint", []), power.resolution, where, what)
    result = _typed_values([_require(spec, "result", where, what)], (power.result,), where, what)[0]
    return PrimitiveObservation(
        world=WorldPath(tuple(_require(spec, "world", where, what))),
        observer=ObserverSpec(tuple(_require(observer, "labels", where, what)), power, state, acim),
        resolution_point=rpoint,
        result=result,
        obs_id=obs_id,
    )


class _ElementResolver:
    """Resuelve elementos con nombre que se referencian entre sí"""

    def __init__(self, specs: Mapping[str, Any], observations: Mapping[str, PrimitiveObservation], partial: CognitiveModel, where: str):
        self.specs = specs
        self.observations = observations
        self.partial = partial
        self.where = where
        self.resolved: Dict[str, Any] = {}
        self._pending: List[str] = []

    def resolve_all(self) -> Dict[str, Any]:
        for name in sorted(self.specs):
            self.get(name)
        return self.resolved

    def get(self, name: str) -> Any:
        if name in self.resolved:
            return self.resolved[name]
        if name not in self.specs:
            raise InputFileError(self.where, f"elemento desconocido: {name!r}")
        if name in self._pending:
            raise InputFileError(self.where, f"referencia circular entre elementos: {' → '.join(self._pending + [name])}")
        self._pending.append(name)
        value = self._build(name, self.specs[name])
        self._pending.pop()
        self.resolved[name] = value
        return value

    def _obs(self, obs_id: str, name: str) -> PrimitiveObservation:
        if obs_id not in self.observations:
            raise InputFileError(self.where, f"elemento {name!r}: observación desconocida {obs_id!r}")
        return self.observations[obs_id]

    def _build(self, name: str, spec: Mapping[str, Any]) -> Any:
        if "composite" in spec:
            return CompositeObservation.of(self._obs(o, name) for o in spec["composite"])
        if "set" in spec:
            return frozenset(self.get(n) for n in spec["set"])
        if "sequence" in spec:
            return tuple(self.get(n) for n in spec["sequence"])
        if "process" in spec:
            return parse_process(spec["process"], self.partial, self.where).members
        if "relation" in spec or "kind" in spec:
            return self._relation(name, spec)
        raise InputFileError(self.where, f"elemento {name!r}: tipo no reconocido")

    def _relation(self, name: str, spec: Mapping[str, Any]) -> Relation:
        try:
            kind = RelationKind(spec.get("kind", "plain"))
        except ValueError:
            raise InputFileError(self.where, f"relación {name!r}: tipo desconocido {spec.get('kind')!r}") from None
        m_info = None
        if "m_relation" in spec:
            m = spec["m_relation"]
            try:
                m_info = MRelationInfo(ProductKind(m.get("product_kind", "sense")), bool(m.get("knowledge", False)), m.get("agent"))
            except ValueError:
                raise InputFileError(self.where, f"relación {name!r}: tipo de producto desconocido") from None
        if kind is RelationKind.IDENTITY and "relation" not in spec:
            over = spec.get("over") or sorted(n for n, s in self.specs.items() if "composite" in s)
            rows = [(self.get(n), self.get(n)) for n in over]
            return Relation(2, frozenset(rows), kind, m_info, name)
        rows = [tuple(self.get(n) for n in row) for row in spec.get("relation", [])]
        arity = spec.get("arity") or (len(rows[0]) if rows else 1)
        try:
            return Relation(arity, frozenset(rows), kind, m_info, name)
        except CognitiveSemanticsError as e:
            raise InputFileError(self.where, str(e)) from e


def parse_process(spec: Mapping[str, Any], model: CognitiveModel, where: str):
    world = _require(spec, "world", where, "proceso")
    start, end = _require(spec, "segment", where, "proceso")
    regions = {int(t): as_region(points) for t, points in _require(spec, "regions", where, "proceso").items()}
    try:
        return process_at(model, world, Segment(int(start), int(end)), regions)
    except CognitiveSemanticsError as e:
        raise InputFileError(where, str(e)) from e


def parse_model(source: JsonSource) -> CognitiveModel:
    data, where = _source(source)
    try:
        worlds = {
            name: WorldInfo(int(spec.get("dimension", 0)), tuple(spec.get("subworlds", ())))
            for name, spec in data.get("worlds", {}).items()
        }
        powers = {name: _parse_power(name, spec, where) for name, spec in data.get("powers", {}).items()}
        observations = [_parse_observation(i, spec, powers, where) for i, spec in enumerate(data.get("observations", []))]
    except InputFileError:
        raise
    except CognitiveSemanticsError as e:
        raise InputFileError(where, str(e)) from e
    by_id: Dict[str, PrimitiveObservation] = {}
    for a in observations:
        if a.obs_id in by_id:
            raise InputFileError(where, f"id de observación repetido: {a.obs_id}")
        by_id[a.obs_id] = a
    partial = CognitiveModel(frozenset(observations), worlds)
    elements = _ElementResolver(data.get("elements", {}), by_id, partial, where).resolve_all()
    objects = {
        name: ObjectSpec(parse_process(_require(spec, "process", where, f"objeto {name}"), partial, where), bool(spec.get("strict_start_end", False)))
        for name, spec in data.get("objects", {}).items()
    }
    strings = {s: AbstractString(s) for s in data.get("abstract_strings", [])}
    model = CognitiveModel(frozenset(observations), worlds, elements, objects, strings, dict(BUILTIN_OPERATIONS))
    logger.info("✅ Modelo cargado: %d observaciones, %d elementos", len(observations), len(elements))
    return model


def load_model(path: Union[str, Path]) -> CognitiveModel:
    return parse_model(path)


# ---------------------------------------------------------------------------
# Operaciones y léxico
# ---------------------------------------------------------------------------

_OVERRIDE_KEYS = {
    "var": ("var_index", int),
    "threshold": ("threshold", float),
    "cardinal": ("cardinal", int),
    "match": ("match", Match),
    "mode": ("modal_mode", MeaningLevel),
    "sentential": ("sentential", bool),
}


def _overrides(spec: Mapping[str, Any], where: str) -> Dict[str, Any]:
    out = {}
    for key, (field_name, convert) in _OVERRIDE_KEYS.items():
        if key in spec:
            try:
                out[field_name] = convert(spec[key])
            except (TypeError, ValueError):
                raise InputFileError(where, f"valor inválido para '{key}': {spec[key]!r}") from None
    return out


def build_operation(name: str, spec: Mapping[str, Any], library: Mapping[str, OperationDef], where: str) -> OperationDef:
    """Operación definida por el léxico: derivada de otra (``base``) o por tipo"""
    try:
        if "base" in spec:
            return resolve_operation(spec["base"], library, name=name, **_overrides(spec, where))
        kind = OpKind(_require(spec, "kind", where, f"operación {name}"))
        if kind is OpKind.CONTEXT_OP:
            segment = Segment(*spec["segment"]) if "segment" in spec else None
            return OperationDef(name, kind, arity=1, filter=FilterSpec(segment, spec.get("region")), sentential=False)
        if kind is OpKind.CONNECTIVE:
            return OperationDef(name, kind, connective=spec.get("table"), relation_name=spec.get("relation"))
        if kind is OpKind.QUANTIFIER:
            sort = QuantifierSort(spec.get("sort", "exists"))
            return OperationDef(name, kind, quantifier=sort, **_overrides(spec, where))
        return OperationDef(name, kind, **_overrides(spec, where))
    except InputFileError:
        raise
    except (CognitiveSemanticsError, ValueError, TypeError) as e:
        raise InputFileError(where, f"operación {name!r}: {e}") from e


def _denotation(item: Any, model: CognitiveModel, library: Mapping[str, OperationDef], where: str, token: str) -> DenotationRef:
    if isinstance(item, str):
        if item not in model.elements:
            raise InputFileError(where, f"'{token}': elemento desconocido {item!r}")
        return DenotationRef(item, model.elements[item])
    if isinstance(item, Mapping) and "op" in item:
        try:
            op = resolve_operation(item["op"], library, **_overrides(item, where))
        except CognitiveSemanticsError as e:
            raise InputFileError(where, f"'{token}': {e}") from e
        return DenotationRef(op.label(), op)
    raise InputFileError(where, f"'{token}': denotación no reconocida {item!r}")


def parse_lexicon(source: JsonSource, model: CognitiveModel) -> Lexicon:
    data, where = _source(source)
    library: Dict[str, OperationDef] = dict(BUILTIN_OPERATIONS)
    custom: Dict[str, OperationDef] = {}
    for name, spec in data.get("operations", {}).items():
        custom[name] = library[name] = build_operation(name, spec, library, where)
    entries = []
    for token, items in data.get("entries", {}).items():
        refs = tuple(_denotation(item, model, library, where, token) for item in items)
        entries.append(LexiconEntry(token, refs, empty_meaning=not refs))
    logger.info("✅ Léxico cargado: %d entradas, %d operaciones propias", len(entries), len(custom))
    return Lexicon(entries, custom)


def load_lexicon(path: Union[str, Path], model: CognitiveModel) -> Lexicon:
    return parse_lexicon(path, model)


# ---------------------------------------------------------------------------
# Contexto
# ---------------------------------------------------------------------------


def parse_context(source: JsonSource, model: CognitiveModel, lexicon: Optional[Lexicon] = None) -> Context:
    data, where = _source(source)
    try:
        facts = tuple(CompositeObservation.of(model.observation(o) for o in fact) for fact in data.get("facts", []))
    except KeyError as e:
        raise InputFileError(where, f"hecho con observación desconocida: {e.args[0]}") from None
    window = data.get("time_window")
    modal_mode = data.get("modal_mode")
    try:
        return Context(
            facts=facts,
            selected_world=data.get("world"),
            time_window=Segment(*window) if window else None,
            region_hints={name: as_region(points) for name, points in data.get("regions", {}).items()},
            active_region=data.get("active_region"),
            convention_bindings={k: tuple(v) for k, v in data.get("conventions", {}).items()},
            resolution_directives=dict(data.get("directives", {})),
            most_threshold=data.get("most_threshold"),
            modal_mode=MeaningLevel(modal_mode) if modal_mode else None,
            operations=dict(lexicon.operations) if lexicon is not None else dict(BUILTIN_OPERATIONS),
        )
    except (CognitiveSemanticsError, ValueError, TypeError) as e:
        raise InputFileError(where, str(e)) from e


def load_context(path: Union[str, Path], model: CognitiveModel, lexicon: Optional[Lexicon] = None) -> Context:
    return parse_context(path, model, lexicon)


def product_truths(source: JsonSource) -> Dict[str, str]:
    """Valores de productos (explicación/cadena) que el contexto aporta para las M-proposiciones"""
    data, _ = _source(source)
    return {str(k): str(v) for k, v in data.get("product_truths", {}).items()}


# ---------------------------------------------------------------------------
# Árboles
# ---------------------------------------------------------------------------


def parse_tree(raw: Any, where: str = "<memoria>") -> DepTree:
    if isinstance(raw, str):
        return Leaf(raw)
    if isinstance(raw, list):
        if len(raw) != 2:
            raise InputFileError(where, f"los nodos internos son binarios: {len(raw)} hijos")
        return Node(parse_tree(raw[0], where), parse_tree(raw[1], where))
    if isinstance(raw, Mapping):
        node_id = str(raw.get("id", ""))
        if "quote" in raw:
            return Leaf(str(raw["quote"]), node_id, quoted=True)
        if "slot" in raw:
            slot = tuple(raw["slot"])
            return Leaf(str(raw.get("token", "∅")), node_id, slot=slot)
        if "token" in raw:
            return Leaf(str(raw["token"]), node_id)
        if "mod" in raw and "head" in raw:
            return Node(
                parse_tree(raw["mod"], where),
                parse_tree(raw["head"], where),
                node_id,
                pattern=raw.get("pattern"),
                phrase=bool(raw.get("phrase", False)),
            )
    raise InputFileError(where, f"nodo de árbol no reconocido: {raw!r}")


def parse_trees(source: JsonSource) -> List[DepTree]:
    data, where = _source(source)
    if "trees" in data:
        return [parse_tree(t, where) for t in data["trees"]]
    return [parse_tree(_require(data, "tree", where, "archivo de árboles"), where)]


def load_trees(path: Union[str, Path]) -> List[DepTree]:
    return parse_trees(path)
