"""
Operaciones - Definiciones de operaciones, biblioteca integrada y aplicación
(operaciones básicas, cuantificadores, conectivas, conectivas modales y
operaciones de contexto)
"""

from __future__ import annotations

import dataclasses
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, FrozenSet, Iterable, Mapping, Optional, Tuple

from ..core.errors import OperationUndefinedError, UnknownConnectiveError
from ..core.model import (
    AbstractString,
    Process,
    Region,
    Relation,
    Segment,
    composites_in,
    element_key,
    identical,
    normalize,
)
from ..core.observation import CompositeObservation

logger = logging.getLogger(__name__)


class OpKind(Enum):
    BASIC = "basic"
    QUANTIFIER = "quantifier"
    CONNECTIVE = "connective"
    MODAL = "modal"
    CONTEXT_OP = "context-op"


class Match(Enum):
    WEAK = "weak"
    STRONG = "strong"
    EXACT = "exact"


class QuantifierSort(Enum):
    FORALL = "forall"
    EXISTS = "exists"
    UNIQUE = "unique"
    MOST = "most"
    AT_LEAST = "at_least"


class ModalSort(Enum):
    NECESSITY = "necessity"
    POSSIBILITY = "possibility"


class MeaningLevel(Enum):
    DENOTATION = "denotation"
    SENSE = "sense"
    EXPLANATION = "explanation"


TRUTH_FUNCTIONAL = ("not", "and", "or", "implies", "iff", "xor")


@dataclass(frozen=True)
class FilterSpec:
    """Filtro de una operación de contexto: segmento exacto o región con nombre"""

    segment: Optional[Segment] = None
    region: Optional[str] = None


@dataclass(frozen=True)
class OperationDef:
    name: str
    kind: OpKind
    arity: int = 2
    match: Match = Match.WEAK
    var_index: int = 1
    quantifier: Optional[QuantifierSort] = None
    threshold: Optional[float] = None
    cardinal: Optional[int] = None
    connective: Optional[str] = None
    relation_name: Optional[str] = None
    modal: Optional[ModalSort] = None
    modal_mode: MeaningLevel = MeaningLevel.SENSE
    filter: Optional[FilterSpec] = None
    sentential: bool = True

    def __post_init__(self):
        if self.arity not in (1, 2):
            raise OperationUndefinedError(f"Aridad no soportada para {self.name}: {self.arity}")
        if self.var_index < 1:
            raise OperationUndefinedError(f"Índice de variable inválido para {self.name}: {self.var_index}")
        if self.kind is OpKind.CONNECTIVE and self.connective is None and self.relation_name is None:
            raise UnknownConnectiveError(f"La conectiva {self.name} no tiene tabla ni relación asociada")
        if self.connective is not None and self.connective not in TRUTH_FUNCTIONAL:
            raise UnknownConnectiveError(f"Tabla de conectiva desconocida: {self.connective}")

    def label(self) -> str:
        if self.kind in (OpKind.BASIC, OpKind.QUANTIFIER) and self.var_index != 1:
            return f"{self.name}@{self.var_index}"
        return self.name

    def sort_key(self) -> Tuple:
        return (self.kind.value, self.name, self.var_index)

    def __str__(self) -> str:
        return self.label()


@dataclass(frozen=True)
class PartialOperation:
    """Operación binaria con el primer argumento ya aplicado (caso II)"""

    op: OperationDef
    first: Any

    @property
    def arity(self) -> int:
        return 1

    def sort_key(self) -> Tuple:
        return (self.op.sort_key(), element_key(self.first))

    def __str__(self) -> str:
        return f"{self.op.label()}(·)"


def is_operation(e: Any) -> bool:
    return isinstance(e, (OperationDef, PartialOperation))


def _basic(name: str, match: Match) -> OperationDef:
    return OperationDef(name, OpKind.BASIC, match=match)


def _quantifier(sort: QuantifierSort, **extra: Any) -> OperationDef:
    return OperationDef(sort.value, OpKind.QUANTIFIER, quantifier=sort, **extra)


def _connective(table: str, arity: int = 2) -> OperationDef:
    return OperationDef(table, OpKind.CONNECTIVE, arity=arity, connective=table)


BUILTIN_OPERATIONS: Dict[str, OperationDef] = {
    "basic-weak": _basic("basic-weak", Match.WEAK),
    "basic-strong": _basic("basic-strong", Match.STRONG),
    "basic-exact": _basic("basic-exact", Match.EXACT),
    "forall": _quantifier(QuantifierSort.FORALL),
    "exists": _quantifier(QuantifierSort.EXISTS),
    "unique": _quantifier(QuantifierSort.UNIQUE),
    "most": _quantifier(QuantifierSort.MOST),
    "at_least": _quantifier(QuantifierSort.AT_LEAST, cardinal=1),
    "not": _connective("not", arity=1),
    "and": _connective("and"),
    "or": _connective("or"),
    "implies": _connective("implies"),
    "iff": _connective("iff"),
    "xor": _connective("xor"),
    "necessary": OperationDef("necessary", OpKind.MODAL, arity=1, modal=ModalSort.NECESSITY),
    "possible": OperationDef("possible", OpKind.MODAL, arity=1, modal=ModalSort.POSSIBILITY),
}


def resolve_operation(
    ref: str,
    library: Optional[Mapping[str, OperationDef]] = None,
    **overrides: Any,
) -> OperationDef:
    """Resuelve ``nombre`` o ``nombre@i`` contra la biblioteca y aplica sobrescrituras"""
    library = BUILTIN_OPERATIONS if library is None else library
    name, _, var = ref.partition("@")
    if name not in library:
        raise OperationUndefinedError(f"Operación desconocida: {name}")
    op = library[name]
    if var:
        overrides.setdefault("var_index", int(var))
    if overrides:
        op = dataclasses.replace(op, **overrides)
    return op


# ---------------------------------------------------------------------------
# Dominios y relaciones
# ---------------------------------------------------------------------------


def as_domain(e: Any) -> FrozenSet[Any]:
    """Conjunto de elementos que un argumento aporta como dominio A"""
    if isinstance(e, CompositeObservation):
        return frozenset((e,)) if e.members else frozenset()
    if isinstance(e, Process):
        return as_domain(e.members)
    if isinstance(e, frozenset):
        return e
    if isinstance(e, Relation) and e.arity == 1:
        return frozenset(r[0] for r in e.rows)
    if isinstance(e, AbstractString):
        return frozenset((e,))
    raise OperationUndefinedError(f"El argumento no puede usarse como dominio: {type(e).__name__}")


def as_relation(e: Any) -> Relation:
    if isinstance(e, Relation):
        return e
    if isinstance(e, frozenset):
        return Relation(1, frozenset((x,) for x in e))
    raise OperationUndefinedError(f"El argumento no es una relación: {type(e).__name__}")


def _restore_shape(original: Any, result: Relation) -> Any:
    if isinstance(original, frozenset):
        return frozenset(r[0] for r in result.rows)
    return result


def _composite(x: Any) -> CompositeObservation:
    if isinstance(x, CompositeObservation):
        return x
    if isinstance(x, Process):
        return x.members
    raise OperationUndefinedError(f"Se esperaba una observación compuesta, no {type(x).__name__}")


def _matches(match: Match, a: Any, b: Any) -> bool:
    if match is Match.EXACT:
        return identical(a, b)
    a_members, b_members = _composite(a).members, _composite(b).members
    if match is Match.WEAK:
        return bool(a_members & b_members)
    return a_members <= b_members


def _exact_domain(A: FrozenSet[Any], b: Any) -> bool:
    if len(A) == 1:
        return identical(next(iter(A)), b)
    return normalize(A) == normalize(b)


def _check_index(i: int, R: Relation) -> None:
    if not 1 <= i <= R.arity:
        raise OperationUndefinedError(f"Índice de variable {i} fuera de rango para aridad {R.arity}")


def apply_basic(match: Match, A: Iterable[Any], i: int, R: Any) -> Any:
    """Restricción de ``R`` en la posición ``i`` por todos los elementos de ``A``"""
    relation = as_relation(R)
    _check_index(i, relation)
    domain = frozenset(A)
    if match is Match.EXACT:
        kept = [b for b in relation.rows if _exact_domain(domain, b[i - 1])]
    else:
        kept = [b for b in relation.rows if all(_matches(match, a, b[i - 1]) for a in domain)]
    return _restore_shape(R, relation.with_rows(kept))


def apply_quantifier(sort: QuantifierSort, match: Match, A: Iterable[Any], i: int, R: Any) -> Any:
    """Conserva las secuencias con algún testigo en ``A`` en la posición ``i``.

    La clase de cuantificador sólo afecta a la cláusula de verdad.
    """
    relation = as_relation(R)
    _check_index(i, relation)
    domain = frozenset(A)
    kept = [b for b in relation.rows if any(_matches(match, a, b[i - 1]) for a in domain)]
    return _restore_shape(R, relation.with_rows(kept))


# ---------------------------------------------------------------------------
# Operaciones de contexto
# ---------------------------------------------------------------------------


def _inside(x: Any, segment: Optional[Segment], region: Optional[Region]) -> bool:
    for c in composites_in(x):
        for a in c.members:
            if segment is not None and a.t not in segment:
                return False
            if region is not None and a.s0 not in region:
                return False
    return True


def apply_filter(e: Any, segment: Optional[Segment], region: Optional[Region]) -> Any:
    """Conserva los elementos o secuencias cuyas observaciones caen dentro del filtro"""
    if segment is None and region is None:
        return e
    if isinstance(e, frozenset):
        return frozenset(x for x in e if _inside(x, segment, region))
    if isinstance(e, Relation):
        return e.with_rows(r for r in e.rows if _inside(r, segment, region))
    if isinstance(e, (CompositeObservation, Process)):
        return CompositeObservation.of(
            a for a in _composite(e).members
            if (segment is None or a.t in segment) and (region is None or a.s0 in region)
        )
    raise OperationUndefinedError(f"Filtro de contexto no definido sobre {type(e).__name__}")


def apply_context_op(op: OperationDef, e: Any, regions: Optional[Mapping[str, Region]] = None) -> Any:
    spec = op.filter or FilterSpec()
    region = None
    if spec.region is not None:
        if regions is None or spec.region not in regions:
            raise OperationUndefinedError(f"Región desconocida para {op.name}: {spec.region}")
        region = regions[spec.region]
    return apply_filter(e, spec.segment, region)


# ---------------------------------------------------------------------------
# Aplicación general
# ---------------------------------------------------------------------------


def associated_content(R: Relation, left: Any, right: Any) -> Relation:
    """Contenido de una conectiva con relación asociada: {(x, y) ∈ R : x = e_α, y = e_β}"""

    def same(denotation: Any, x: Any) -> bool:
        if isinstance(denotation, (frozenset, Relation)):
            try:
                return _exact_domain(as_domain(denotation), x)
            except OperationUndefinedError:
                return False
        return identical(denotation, x)

    return R.with_rows(r for r in R.rows if same(left, r[0]) and same(right, r[1]))


def apply_operation(
    op: OperationDef,
    first: Any,
    second: Any = None,
    relations: Optional[Mapping[str, Any]] = None,
    regions: Optional[Mapping[str, Region]] = None,
) -> Any:
    """Aplica ``op``; en las binarias ``first`` es el dominio y ``second`` la relación.

    Lanza ``OperationUndefinedError`` cuando la operación no está definida
    sobre sus argumentos.
    """
    if is_operation(first) or (second is not None and is_operation(second)):
        raise OperationUndefinedError(f"{op.name} no se aplica a operaciones")
    if op.kind is OpKind.BASIC:
        return apply_basic(op.match, as_domain(first), op.var_index, second)
    if op.kind is OpKind.QUANTIFIER:
        return apply_quantifier(op.quantifier, op.match, as_domain(first), op.var_index, second)
    if op.kind is OpKind.CONTEXT_OP:
        return apply_context_op(op, first, regions)
    if op.kind is OpKind.CONNECTIVE:
        if op.arity == 1:
            return (first,)
        # first es el operando izquierdo (el que se combina con la conectiva), second el derecho
        if op.relation_name is None:
            return (first, second)
        relation = (relations or {}).get(op.relation_name)
        if not isinstance(relation, Relation) or relation.arity != 2:
            raise OperationUndefinedError(f"Relación asociada inexistente: {op.relation_name}")
        return associated_content(relation, first, second)
    raise OperationUndefinedError(f"{op.name} no tiene aplicación directa")
