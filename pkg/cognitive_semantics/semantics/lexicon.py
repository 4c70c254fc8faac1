"""
Léxico - Interpretación base de palabras, contexto y operaciones de contexto
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from ..core.errors import (
    DirectiveError,
    EmptyDenotationSetError,
    InvalidObservationError,
    UnknownTokenError,
)
from ..core.model import Region, Relation, Segment, composites_in, element_key
from ..core.observation import CompositeObservation, PrimitiveObservation
from .operations import (
    BUILTIN_OPERATIONS,
    MeaningLevel,
    OperationDef,
    apply_filter,
    is_operation,
    resolve_operation,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DenotationRef:
    """Denotación candidata: un elemento con nombre del modelo o una operación"""

    name: str
    value: Any

    def sort_key(self) -> Tuple:
        return (self.name, element_key(self.value))

    def __str__(self) -> str:
        return self.name


def sort_refs(refs: Iterable[DenotationRef]) -> List[DenotationRef]:
    return sorted(set(refs), key=DenotationRef.sort_key)


@dataclass(frozen=True)
class LexiconEntry:
    surface: str
    denotations: Tuple[DenotationRef, ...]
    empty_meaning: bool = False

    def __post_init__(self):
        object.__setattr__(self, "denotations", tuple(sort_refs(self.denotations)))
        if not self.denotations and not self.empty_meaning:
            raise EmptyDenotationSetError(
                f"'{self.surface}' no tiene denotaciones y no está declarado como símbolo sin significado"
            )


class Lexicon:
    """Interpretación base: cada símbolo a su conjunto de denotaciones"""

    def __init__(
        self,
        entries: Iterable[LexiconEntry] = (),
        operations: Optional[Mapping[str, OperationDef]] = None,
    ):
        self._entries: Dict[str, LexiconEntry] = {}
        for entry in entries:
            self._entries[entry.surface] = entry
        # Biblioteca de operaciones: integradas más las definidas por el léxico
        self.operations: Dict[str, OperationDef] = dict(BUILTIN_OPERATIONS)
        self.operations.update(operations or {})

    def entry(self, token: str) -> LexiconEntry:
        if token not in self._entries:
            raise UnknownTokenError(f"Token desconocido: {token!r}")
        return self._entries[token]

    def lookup(self, token: str) -> Tuple[DenotationRef, ...]:
        return self.entry(token).denotations

    def is_empty_meaning(self, token: str) -> bool:
        return self.entry(token).empty_meaning

    def __contains__(self, token: str) -> bool:
        return token in self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def tokens(self) -> List[str]:
        return sorted(self._entries)


def lookup(lex: Lexicon, token: str) -> Tuple[DenotationRef, ...]:
    return lex.lookup(token)


class PhraseClass(Enum):
    CONTENT = "content"
    FUNCTION = "function"
    MIXED = "mixed"


def classify(denotations: Iterable[DenotationRef]) -> PhraseClass:
    """Frase de contenido, de función o mixta según sus denotaciones"""
    refs = list(denotations)
    if not refs:
        raise EmptyDenotationSetError("No se puede clasificar un conjunto de denotaciones vacío")
    ops = [is_operation(r.value) for r in refs]
    if all(ops):
        return PhraseClass.FUNCTION
    if not any(ops):
        return PhraseClass.CONTENT
    return PhraseClass.MIXED


Directive = Union[int, str, Sequence[str]]


@dataclass(frozen=True)
class Context:
    """Contexto: hechos actuales, filtros de mundo/tiempo/región, convenciones y directivas"""

    facts: Tuple[CompositeObservation, ...] = ()
    selected_world: Optional[str] = None
    time_window: Optional[Segment] = None
    region_hints: Mapping[str, Region] = field(default_factory=dict)
    active_region: Optional[str] = None
    convention_bindings: Mapping[str, Tuple[str, ...]] = field(default_factory=dict)
    resolution_directives: Mapping[str, Directive] = field(default_factory=dict)
    most_threshold: Optional[float] = None
    modal_mode: Optional[MeaningLevel] = None
    operations: Mapping[str, OperationDef] = field(default_factory=lambda: dict(BUILTIN_OPERATIONS))

    def __post_init__(self):
        for fact in self.facts:
            inner = [a for a in fact.members if not a.is_actual]
            if inner:
                raise InvalidObservationError(
                    f"El contexto sólo admite observaciones actuales; imaginaria: {inner[0].label()}"
                )
        if self.active_region is not None and self.active_region not in self.region_hints:
            raise DirectiveError(f"Región activa sin definir: {self.active_region}")

    def fact_observations(self) -> FrozenSet[PrimitiveObservation]:
        return frozenset(a for fact in self.facts for a in fact.members)

    def directive_for(self, node_id: str, token: Optional[str] = None) -> Optional[Directive]:
        if node_id in self.resolution_directives:
            return self.resolution_directives[node_id]
        if token is not None and token in self.resolution_directives:
            return self.resolution_directives[token]
        return None

    def convention_operation(self, pattern: Optional[str], node_id: str) -> Optional[OperationDef]:
        """Elige f_v de Q_v: directiva del nodo o cabeza de la lista"""
        if pattern is None or pattern not in self.convention_bindings:
            return None
        candidates = [resolve_operation(ref, self.operations) for ref in self.convention_bindings[pattern]]
        if not candidates:
            return None
        directive = self.resolution_directives.get(node_id)
        if directive is None:
            return candidates[0]
        return _pick_operation(candidates, directive, node_id)


def _pick_operation(candidates: List[OperationDef], directive: Directive, node_id: str) -> OperationDef:
    if isinstance(directive, int):
        if not 0 <= directive < len(candidates):
            raise DirectiveError(f"Directiva {directive} fuera de rango en {node_id}")
        return candidates[directive]
    for op in candidates:
        if op.label() == directive or op.name == directive:
            return op
    raise DirectiveError(f"Directiva {directive!r} sin operación candidata en {node_id}")


def _restrict_value(value: Any, ctx: Context) -> Optional[Any]:
    """Filtra un candidato por mundo, ventana temporal y región activa.

    Devuelve ``None`` cuando el candidato cae por completo fuera.
    """
    if is_operation(value):
        return value
    region = ctx.region_hints.get(ctx.active_region) if ctx.active_region else None
    world = ctx.selected_world
    if world is not None:
        if isinstance(value, frozenset):
            value = frozenset(x for x in value if _in_world(x, world))
        elif isinstance(value, Relation):
            value = value.with_rows(r for r in value.rows if _in_world(r, world))
        elif isinstance(value, CompositeObservation) and value.members and not _touches_world(value, world):
            return None
    if ctx.time_window is None and region is None:
        return value
    if isinstance(value, CompositeObservation):
        if not value.members:
            return value
        restricted = apply_filter(value, ctx.time_window, region)
        return value if restricted.members else None
    if isinstance(value, (frozenset, Relation)):
        return apply_filter(value, ctx.time_window, region)
    return value


def _in_world(x: Any, world: str) -> bool:
    return all(a.world.w0 == world for c in composites_in(x) for a in c.members)


def _touches_world(c: CompositeObservation, world: str) -> bool:
    return any(a.world.w0 == world for a in c.members)


def apply_directive(refs: List[DenotationRef], directive: Directive, where: str) -> List[DenotationRef]:
    if isinstance(directive, bool):
        raise DirectiveError(f"Directiva inválida en {where}: {directive!r}")
    if isinstance(directive, int):
        if not 0 <= directive < len(refs):
            raise DirectiveError(f"Directiva {directive} fuera de rango en {where} ({len(refs)} candidatos)")
        return [refs[directive]]
    names = [directive] if isinstance(directive, str) else list(directive)
    by_name = {r.name: r for r in refs}
    missing = [n for n in names if n not in by_name]
    if missing:
        raise DirectiveError(f"Directiva en {where} apunta a candidatos inexistentes: {missing}")
    return sort_refs(by_name[n] for n in names)


def apply_context(
    ctx: Context,
    node: str,
    candidates: Iterable[DenotationRef],
    token: Optional[str] = None,
) -> Tuple[DenotationRef, ...]:
    """Filtros de mundo/tiempo/región y después directivas (por nodo, luego por token).

    Una directiva por índice elige por posición en la lista ordenada por
    nombre; sobre un único candidato ya no se aplica, así que el resultado es
    idempotente.
    """
    refs = sort_refs(candidates)
    narrowed = []
    for ref in refs:
        value = _restrict_value(ref.value, ctx)
        if value is None:
            continue
        narrowed.append(ref if value == ref.value else replace(ref, value=value))
    if len(narrowed) != len(refs):
        logger.debug("🔍 %s: %d → %d candidatos tras filtros", node, len(refs), len(narrowed))
    directive = ctx.directive_for(node, token)
    if directive is None:
        return tuple(narrowed)
    if isinstance(directive, int) and not isinstance(directive, bool) and len(narrowed) == 1:
        return tuple(narrowed)
    return tuple(apply_directive(narrowed, directive, node))
