"""
Evaluador - Clasificación y valor de verdad de proposiciones: atómicas de
tipo I, II y M, cuantificadas, con conectivas y modales; verdad de oraciones
y de denotaciones
"""

from __future__ import annotations

import dataclasses
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Callable, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from ..core.errors import (
    FreeVariableError,
    MissingInterpretationHandleError,
    ModalClauseError,
    NonEffectiveInterpretationError,
    NotAPropositionError,
    OperationUndefinedError,
)
from ..core.model import (
    CognitiveModel,
    ProductKind,
    Relation,
    RelationKind,
    composites_in,
    element_key,
)
from ..core.observation import (
    CompositeObservation,
    Witness,
    WitnessIndex,
    find_witnesses,
    is_directly_refuted,
    is_directly_verified,
)
from ..core.sense_registry import SenseRegistry
from ..semantics.interp import (
    Binder,
    Environment,
    Explanation,
    IPCase,
    Interpretation,
    LeafSense,
    ModalSense,
    Sense,
    SenseNode,
    binder_chain,
    evaluate_sense,
    explanation_pairs,
    render_sense,
)
from ..semantics.lexicon import Context
from ..semantics.operations import (
    Match,
    MeaningLevel,
    ModalSort,
    OperationDef,
    OpKind,
    QuantifierSort,
    apply_basic,
    as_domain,
    as_relation,
)
from .values import Logic, TruthValue, apply_connective, conjunction

logger = logging.getLogger(__name__)

T, F, U, V, UD = TruthValue.T, TruthValue.F, TruthValue.U, TruthValue.V, TruthValue.UD


class PropositionKind(Enum):
    ATOMIC_I = "atomic_I"
    ATOMIC_II = "atomic_II"
    ATOMIC_M = "atomic_M"
    QUANTIFIED = "quantified"
    CONNECTIVE = "connective"
    MODAL = "modal"
    NORMAL_PHRASE = "normal_phrase"


@dataclass(frozen=True)
class Verdict:
    value: TruthValue
    kind: PropositionKind
    sense: str
    content_size: Optional[int] = None
    witnesses: Tuple[Witness, ...] = ()
    children: Tuple["Verdict", ...] = ()
    note: str = ""


InterpretationHandle = Callable[[Any, ProductKind], Optional[TruthValue]]

Filter = Tuple[Match, FrozenSet[Any], int]


def _row_status(index: WitnessIndex, row: Sequence[Any]) -> TruthValue:
    members = CompositeObservation.of(a for c in composites_in(tuple(row)) for a in c.members)
    if is_directly_verified(members, index):
        return T
    if is_directly_refuted(members, index):
        return F
    return U


def _exists_combine(values: Iterable[TruthValue]) -> TruthValue:
    values = list(values)
    if V in values:
        return V
    if T in values:
        return T
    if values and all(v is F for v in values):
        return F
    return U


class Evaluator:
    """Asignación de verdad de cuatro valores sobre un modelo cargado"""

    def __init__(
        self,
        model: CognitiveModel,
        ctx: Optional[Context] = None,
        logic: "Logic | str" = Logic.KLEENE,
        most_threshold: float = 0.5,
        registry: Optional[SenseRegistry] = None,
        interp_handle: Optional[InterpretationHandle] = None,
    ):
        self.model = model
        self.ctx = ctx or Context()
        self.logic = Logic.of(logic)
        self.most_threshold = most_threshold
        self.registry = registry or SenseRegistry()
        self.interp_handle = interp_handle
        self.env = Environment.of(model, self.ctx)
        self.index = WitnessIndex(list(model.actual_observations()) + list(self.ctx.fact_observations()))

    # ------------------------------------------------------------------
    # Clasificación
    # ------------------------------------------------------------------

    def _base_relation(self, base_sense: Sense) -> Optional[Relation]:
        try:
            return as_relation(evaluate_sense(base_sense, self.env))
        except OperationUndefinedError:
            return None

    def classify(self, sense: Sense) -> PropositionKind:
        if isinstance(sense, ModalSense):
            return PropositionKind.MODAL
        if isinstance(sense, LeafSense) or sense.phrase or not sense.op.sentential or sense.case is IPCase.II:
            return PropositionKind.NORMAL_PHRASE
        if sense.op.kind is OpKind.CONNECTIVE:
            return PropositionKind.CONNECTIVE
        chain = binder_chain(sense)
        base = self._base_relation(chain.base_sense) if chain.binders else None
        if base is None:
            return PropositionKind.NORMAL_PHRASE
        bound = [b.var_index for b in chain.binders]
        if len(set(bound)) != len(bound):
            raise FreeVariableError(f"Variable ligada más de una vez en {render_sense(sense)}")
        free = sorted(set(range(1, base.arity + 1)) - set(bound))
        if free:
            raise FreeVariableError(
                f"{render_sense(sense)} tiene variables libres " + ", ".join(f"x{i}" for i in free)
            )
        if any(b.op.kind is OpKind.QUANTIFIER for b in chain.binders):
            return PropositionKind.QUANTIFIED
        if base.kind in (RelationKind.IDENTITY, RelationKind.MEMBERSHIP):
            return PropositionKind.ATOMIC_II
        if base.m_relation is not None:
            return PropositionKind.ATOMIC_M
        return PropositionKind.ATOMIC_I

    # ------------------------------------------------------------------
    # Evaluación
    # ------------------------------------------------------------------

    def evaluate(self, sense: Sense) -> Verdict:
        kind = self.classify(sense)
        if kind is PropositionKind.NORMAL_PHRASE:
            return Verdict(UD, kind, render_sense(sense), note="no es una oración")
        if kind is PropositionKind.MODAL:
            return self.eval_modal(sense)
        if kind is PropositionKind.CONNECTIVE:
            return self.eval_connective(sense)
        return self._eval_chain(sense, kind)

    def _domain(self, binder: Binder) -> FrozenSet[Any]:
        return as_domain(evaluate_sense(binder.domain_sense, self.env))

    def _eval_chain(self, sense: Sense, kind: PropositionKind) -> Verdict:
        chain = binder_chain(sense)
        base = self._base_relation(chain.base_sense)
        if base is None:
            raise NotAPropositionError(f"{render_sense(sense)} no denota una relación")
        domains = [self._domain(b) for b in chain.binders]
        label = render_sense(sense)
        vacant = not base.rows or any(
            b.op.kind is OpKind.BASIC and not d for b, d in zip(chain.binders, domains)
        )
        if vacant:
            return Verdict(V, kind, label, content_size=0, note="argumento vacante")
        if kind is PropositionKind.QUANTIFIED:
            verdict = self._quantify(chain, base, domains, 0, (), label)
            return dataclasses.replace(verdict, kind=kind, sense=label)
        filters = tuple((b.op.match, d, b.var_index) for b, d in zip(chain.binders, domains))
        return self._atomic(chain, base, filters, kind, label, top_level=True)

    def _content(self, base: Relation, filters: Tuple[Filter, ...]) -> Relation:
        content = base
        for match, domain, i in filters:
            content = apply_basic(match, domain, i, content)
        return content

    def _atomic(
        self,
        chain,
        base: Relation,
        filters: Tuple[Filter, ...],
        kind: PropositionKind,
        label: str,
        top_level: bool,
    ) -> Verdict:
        content = self._content(base, filters)
        rows = content.sorted_rows()
        if kind is PropositionKind.ATOMIC_II:
            return Verdict(T if rows else F, kind, label, content_size=len(rows))
        if kind is PropositionKind.ATOMIC_M:
            return self.eval_atomic_m(chain, base, rows, label)
        if not rows:
            # Contenido vacío con argumentos no vacantes dentro de una instanciación
            return Verdict(V if top_level else F, kind, label, content_size=0)
        value = _exists_combine(_row_status(self.index, r) for r in rows)
        witnesses = tuple(find_witnesses(self._row_members(rows), self.index))
        return Verdict(value, kind, label, content_size=len(rows), witnesses=witnesses)

    @staticmethod
    def _row_members(rows: Iterable[Sequence[Any]]) -> CompositeObservation:
        return CompositeObservation.of(a for r in rows for c in composites_in(tuple(r)) for a in c.members)

    def eval_atomic_I(self, sense: Sense) -> Verdict:
        return self._eval_chain(sense, PropositionKind.ATOMIC_I)

    def eval_atomic_II(self, sense: Sense) -> Verdict:
        return self._eval_chain(sense, PropositionKind.ATOMIC_II)

    # ------------------------------------------------------------------
    # M-proposiciones
    # ------------------------------------------------------------------

    def _product_truth(self, chain, product: Any, kind: ProductKind) -> TruthValue:
        if kind is ProductKind.SENSE:
            for b in chain.binders:
                if b.var_index == 2:
                    value = self.evaluate(b.domain_sense).value
                    return U if value is UD else value
            return U
        if kind is ProductKind.DENOTATION:
            value = self.eval_denotation_truth(product)
            return U if value is UD else value
        if self.interp_handle is None:
            raise MissingInterpretationHandleError(
                f"El producto de tipo {kind.value} necesita una interpretación efectiva de la cláusula"
            )
        value = self.interp_handle(product, kind)
        return U if value is None or value is UD else value

    def eval_atomic_m(self, chain, base: Relation, rows: List[Tuple[Any, ...]], label: str) -> Verdict:
        kind = PropositionKind.ATOMIC_M
        if not rows:
            return Verdict(F, kind, label, content_size=0, note="contenido vacío")
        info = base.m_relation
        values = []
        for row in rows:
            status = _row_status(self.index, row[:1])
            if not info.knowledge:
                values.append(status)
                continue
            product = self._product_truth(chain, row[1], info.product_kind)
            if product is V:
                values.append(V)
            elif status is T and product is T:
                values.append(T)
            elif status is F or product is F:
                values.append(F)
            else:
                values.append(U)
        witnesses = tuple(find_witnesses(self._row_members(r[:1] for r in rows), self.index))
        return Verdict(_exists_combine(values), kind, label, content_size=len(rows), witnesses=witnesses)

    def eval_atomic_M(self, sense: Sense) -> Verdict:
        return self._eval_chain(sense, PropositionKind.ATOMIC_M)

    # ------------------------------------------------------------------
    # Cuantificadores
    # ------------------------------------------------------------------

    def _threshold(self, op: OperationDef) -> Fraction:
        """Umbral exacto: 0.57 es 57/100, no su aproximación binaria"""
        if op.threshold is not None:
            theta = op.threshold
        elif self.ctx.most_threshold is not None:
            theta = self.ctx.most_threshold
        else:
            theta = self.most_threshold
        return Fraction(str(theta))

    def _quantify(self, chain, base: Relation, domains, k: int, filters: Tuple[Filter, ...], label: str) -> Verdict:
        binders = chain.binders
        if k == len(binders):
            kind = self._base_kind(base)
            return self._atomic(chain, base, filters, kind, label, top_level=False)
        binder, domain = binders[k], domains[k]
        if binder.op.kind is OpKind.BASIC:
            return self._quantify(chain, base, domains, k + 1, filters + ((binder.op.match, domain, binder.var_index),), label)
        children = []
        for d in sorted(domain, key=element_key):
            name = self.model.name_of(d) or "σ"
            child = self._quantify(
                chain, base, domains, k + 1,
                filters + ((binder.op.match, frozenset((d,)), binder.var_index),),
                f"{label}[x{binder.var_index}:={name}]",
            )
            children.append(child)
        value = self.combine_quantifier(binder.op, [c.value for c in children], len(domain))
        content = self._content(base, filters + ((binder.op.match, domain, binder.var_index),))
        return Verdict(value, PropositionKind.QUANTIFIED, label, content_size=len(content), children=tuple(children))

    @staticmethod
    def _base_kind(base: Relation) -> PropositionKind:
        if base.kind in (RelationKind.IDENTITY, RelationKind.MEMBERSHIP):
            return PropositionKind.ATOMIC_II
        if base.m_relation is not None:
            return PropositionKind.ATOMIC_M
        return PropositionKind.ATOMIC_I

    def combine_quantifier(self, op: OperationDef, values: Sequence[TruthValue], size: int) -> TruthValue:
        """Cláusula de verdad del cuantificador sobre los valores de cada instanciación"""
        if V in values:
            return V
        n_t = sum(v is T for v in values)
        n_f = sum(v is F for v in values)
        n_u = len(values) - n_t - n_f
        sort = op.quantifier
        if sort is QuantifierSort.FORALL:
            if size == 0 or n_f:
                return F
            return U if n_u else T
        if sort is QuantifierSort.EXISTS:
            if n_t:
                return T
            return U if n_u else F
        if sort is QuantifierSort.UNIQUE:
            if n_t >= 2:
                return F
            if n_u == 0:
                return T if n_t == 1 else F
            return U
        if sort is QuantifierSort.MOST:
            theta = self._threshold(op)
            if size == 0:
                return F
            if n_t > theta * size:
                return T
            if n_t + n_u <= theta * size:
                return F
            return U
        if sort is QuantifierSort.AT_LEAST:
            need = op.cardinal or 1
            if n_t >= need:
                return T
            return F if n_t + n_u < need else U
        raise OperationUndefinedError(f"Cuantificador sin cláusula de verdad: {op.name}")

    def eval_quantified(self, sense: Sense) -> Verdict:
        return self._eval_chain(sense, PropositionKind.QUANTIFIED)

    # ------------------------------------------------------------------
    # Conectivas
    # ------------------------------------------------------------------

    def eval_connective(self, sense: SenseNode) -> Verdict:
        op = sense.op
        label = render_sense(sense)
        if isinstance(sense.head, SenseNode) and sense.head.case is IPCase.II:
            operands = (sense.head.modifier, sense.modifier)
        else:
            operands = (sense.modifier,)
        children = tuple(self.evaluate(s) for s in operands)
        values = [c.value for c in children]
        if op.connective is not None:
            value = apply_connective(op.connective, self.logic, *values)
            return Verdict(value, PropositionKind.CONNECTIVE, label, children=children)
        content = evaluate_sense(sense, self.env)
        size = len(content) if isinstance(content, Relation) else None
        if UD in values:
            value = UD
        elif V in values:
            value = V
        elif not size:
            value = F
        else:
            value = conjunction(values, self.logic)
        return Verdict(value, PropositionKind.CONNECTIVE, label, content_size=size, children=children)

    # ------------------------------------------------------------------
    # Modales
    # ------------------------------------------------------------------

    def eval_modal(self, sense: ModalSense) -> Verdict:
        op = sense.op
        if not sense.clause:
            raise ModalClauseError("Cláusula sin significados")
        mode = self.ctx.modal_mode or op.modal_mode
        children = []
        seen = set()
        for triple in sense.clause:
            if mode is MeaningLevel.DENOTATION:
                key = element_key(triple.denotation)
                if key in seen:
                    continue
                seen.add(key)
                value = self.eval_denotation_truth(triple.denotation)
                name = self.model.name_of(triple.denotation) or render_sense(triple.sense)
                child = Verdict(U if value is UD else value, PropositionKind.NORMAL_PHRASE, name)
            else:
                # En nivel explicación cada explicación distinta es un miembro propio
                key = triple.sense if mode is MeaningLevel.SENSE else triple.explanation
                if key in seen:
                    continue
                seen.add(key)
                child = self.evaluate(triple.sense)
                if child.value is UD:
                    child = dataclasses.replace(child, value=U)
            children.append(child)
        values = [c.value for c in children]
        value = self.combine_modal(op.modal, values)
        return Verdict(value, PropositionKind.MODAL, render_sense(sense), children=tuple(children))

    @staticmethod
    def combine_modal(sort: ModalSort, values: Sequence[TruthValue]) -> TruthValue:
        if not values:
            raise ModalClauseError("Cláusula sin significados")
        if V in values:
            return V
        if sort is ModalSort.NECESSITY:
            if F in values:
                return F
            return U if U in values else T
        if T in values:
            return T
        return U if U in values else F

    # ------------------------------------------------------------------
    # Oraciones y denotaciones
    # ------------------------------------------------------------------

    def eval_denotation_truth(self, e: Any) -> TruthValue:
        """Valor común de los sentidos registrados que implican ``e``; si no, ud"""
        if not self.model.contains(e):
            return UD
        values = set()
        for sense in self.registry.senses_for(e):
            try:
                value = self.evaluate(sense).value
            except FreeVariableError:
                continue
            if value is not UD:
                values.add(value)
        return values.pop() if len(values) == 1 else UD

    def eval_sentence(self, interpretation: Interpretation, explanation: Optional[Explanation] = None) -> Verdict:
        """Verdad de la oración bajo una interpretación efectiva"""
        ambiguous = interpretation.ambiguous_nodes()
        if ambiguous:
            raise NonEffectiveInterpretationError(ambiguous)
        self.registry.register_triples(interpretation.all_triples())
        root = interpretation.root_meanings[0]
        verdict = self.evaluate(root.sense)
        if verdict.value is UD:
            return verdict
        chosen: Dict[str, Sense] = {
            node_id: triples[0].sense
            for node_id, triples in interpretation.meanings.items()
            if node_id not in interpretation.modal_clause_nodes
        }
        mismatched = sorted(
            node_id
            for node_id, sense in explanation_pairs(explanation or root.explanation)
            if node_id in chosen and chosen[node_id] != sense
        )
        if mismatched:
            logger.info("⚠️ La explicación no coincide con la interpretación en %s", ", ".join(mismatched))
            return dataclasses.replace(verdict, value=F, note="explicación no coincide en " + ", ".join(mismatched))
        return verdict
