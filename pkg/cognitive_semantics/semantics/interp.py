"""
Interpretación - Interpretación recursiva de árboles de dependencia binarios
en ternas de significado (denotación, sentido, explicación)
"""

from __future__ import annotations

import dataclasses
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, FrozenSet, Iterator, List, Mapping, Optional, Set, Tuple, Union

from ..core.errors import (
    AssignmentError,
    MixedHeadError,
    ModalClauseError,
    OperationUndefinedError,
    QuoteError,
    UninterpretableNodeError,
)
from ..core.model import CognitiveModel, Region
from .lexicon import Context, DenotationRef, Lexicon, apply_context, apply_directive
from .operations import (
    OperationDef,
    OpKind,
    PartialOperation,
    apply_operation,
    as_domain,
    as_relation,
    is_operation,
    resolve_operation,
)

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Árboles de dependencia
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Leaf:
    token: str
    node_id: str = ""
    quoted: bool = False
    slot: Tuple[str, ...] = ()


@dataclass(frozen=True)
class Node:
    modifier: "DepTree"
    head: "DepTree"
    node_id: str = ""
    pattern: Optional[str] = None
    phrase: bool = False


DepTree = Union[Leaf, Node]


def number_tree(tree: DepTree, node_id: str = "r") -> DepTree:
    """Asigna ids por ruta (modificador ``.0``, núcleo ``.1``) a los nodos sin id"""
    own = tree.node_id or node_id
    if isinstance(tree, Leaf):
        return dataclasses.replace(tree, node_id=own)
    return dataclasses.replace(
        tree,
        node_id=own,
        modifier=number_tree(tree.modifier, f"{own}.0"),
        head=number_tree(tree.head, f"{own}.1"),
    )


def iter_nodes(tree: DepTree) -> Iterator[DepTree]:
    yield tree
    if isinstance(tree, Node):
        yield from iter_nodes(tree.modifier)
        yield from iter_nodes(tree.head)


def render_tree(tree: DepTree) -> str:
    if isinstance(tree, Leaf):
        return f'"{tree.token}"' if tree.quoted else tree.token
    return f"[{render_tree(tree.modifier)} {render_tree(tree.head)}]"


# ---------------------------------------------------------------------------
# Sentidos, explicaciones y ternas
# ---------------------------------------------------------------------------


class IPCase(Enum):
    I = "I"
    II = "II"
    III = "III"


@dataclass(frozen=True)
class LeafSense:
    ref: DenotationRef


@dataclass(frozen=True)
class SenseNode:
    case: IPCase
    op: OperationDef
    modifier: "Sense"
    head: "Sense"
    phrase: bool = False


@dataclass(frozen=True)
class ModalSense:
    op: OperationDef
    clause: Tuple["MeaningTriple", ...]
    head: "Sense"


Sense = Union[LeafSense, SenseNode, ModalSense]


def render_sense(s: Sense) -> str:
    """Notación prefija del sentido"""
    if isinstance(s, LeafSense):
        return s.ref.name
    if isinstance(s, ModalSense):
        return f"({s.op.label()}, {{" + "; ".join(render_sense(t.sense) for t in s.clause) + "})"
    if s.case is IPCase.III:
        return f"({s.op.label()}, {render_sense(s.modifier)}, {render_sense(s.head)})"
    if s.case is IPCase.I and isinstance(s.head, SenseNode) and s.head.case is IPCase.II:
        return f"({s.op.label()}, {render_sense(s.head.modifier)}, {render_sense(s.modifier)})"
    return f"({s.op.label()}, {render_sense(s.modifier)})"


@dataclass(frozen=True)
class ExplanationLeaf:
    token: str
    sense: Optional[Sense]
    node_id: str


@dataclass(frozen=True)
class ExplanationNode:
    modifier: "Explanation"
    head: "Explanation"
    node_id: str
    sense: Sense


Explanation = Union[ExplanationLeaf, ExplanationNode]


def explanation_pairs(r: Explanation) -> List[Tuple[str, Sense]]:
    """Pares (frase, sentido) contenidos en la explicación"""
    if isinstance(r, ExplanationLeaf):
        return [(r.node_id, r.sense)] if r.sense is not None else []
    return explanation_pairs(r.modifier) + explanation_pairs(r.head) + [(r.node_id, r.sense)]


def leaf_choices(r: Explanation) -> List[Tuple[str, Sense]]:
    if isinstance(r, ExplanationLeaf):
        return [(r.token, r.sense)] if r.sense is not None else []
    return leaf_choices(r.modifier) + leaf_choices(r.head)


def render_explanation(r: Explanation) -> str:
    if isinstance(r, ExplanationLeaf):
        sense = render_sense(r.sense) if r.sense is not None else "∅"
        return f"({r.token}: {sense})"
    return f"({render_explanation(r.modifier)}, {render_explanation(r.head)}, {r.node_id})"


@dataclass(frozen=True)
class MeaningTriple:
    denotation: Any
    sense: Sense
    explanation: Explanation

    @property
    def target(self) -> str:
        return self.explanation.node_id

    def sort_key(self) -> Tuple[str, str]:
        return (render_sense(self.sense), render_explanation(self.explanation))


def sort_triples(triples) -> Tuple[MeaningTriple, ...]:
    return tuple(sorted(set(triples), key=MeaningTriple.sort_key))


@dataclass(frozen=True)
class Formula:
    """Sentido con variables libres (posiciones de la relación base)"""

    sense: Sense
    free: FrozenSet[int]


# ---------------------------------------------------------------------------
# Composición y recálculo de denotaciones
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Environment:
    relations: Mapping[str, Any] = field(default_factory=dict)
    regions: Mapping[str, Region] = field(default_factory=dict)

    @classmethod
    def of(cls, model: Optional[CognitiveModel], ctx: Optional[Context]) -> "Environment":
        return cls(
            relations=dict(model.elements) if model is not None else {},
            regions=dict(ctx.region_hints) if ctx is not None else {},
        )


def compose(case: IPCase, op: OperationDef, modifier: Any, head: Any, env: Environment) -> Any:
    """Denotación de un nodo a partir de las de sus hijos"""
    if case is IPCase.I:
        if isinstance(head, PartialOperation):
            return apply_operation(head.op, head.first, modifier, env.relations, env.regions)
        return apply_operation(op, modifier, None, env.relations, env.regions)
    if case is IPCase.II:
        if is_operation(modifier):
            raise OperationUndefinedError(f"{op.name} no acepta una operación como argumento")
        if op.kind in (OpKind.BASIC, OpKind.QUANTIFIER):
            as_domain(modifier)
        return PartialOperation(op, modifier)
    return apply_operation(op, modifier, head, env.relations, env.regions)


def evaluate_sense(sense: Sense, env: Environment) -> Any:
    """Recalcula la denotación implicada por un sentido"""
    if isinstance(sense, LeafSense):
        return sense.ref.value
    if isinstance(sense, ModalSense):
        return frozenset(t.denotation for t in sense.clause)
    modifier = evaluate_sense(sense.modifier, env)
    head = evaluate_sense(sense.head, env)
    return compose(sense.case, sense.op, modifier, head, env)


# ---------------------------------------------------------------------------
# Cadenas de ligadores y fórmulas
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Binder:
    op: OperationDef
    domain_sense: Sense
    var_index: int


@dataclass(frozen=True)
class BinderChain:
    binders: Tuple[Binder, ...]
    base_sense: Sense


def _binds(op: OperationDef) -> bool:
    return op.kind in (OpKind.BASIC, OpKind.QUANTIFIER)


def binder_chain(sense: Sense) -> BinderChain:
    """Descompone (f, A(x_i), α) anidados en ligadores, de fuera hacia dentro"""
    binders: List[Binder] = []
    s = sense
    while isinstance(s, SenseNode):
        if s.case is IPCase.III and _binds(s.op):
            binders.append(Binder(s.op, s.modifier, s.op.var_index))
            s = s.head
        elif s.case is IPCase.I and isinstance(s.head, SenseNode) and s.head.case is IPCase.II and _binds(s.op):
            binders.append(Binder(s.op, s.head.modifier, s.op.var_index))
            s = s.modifier
        else:
            break
    return BinderChain(tuple(binders), s)


def rebuild_sense(binders: Tuple[Binder, ...], base: Sense) -> Sense:
    s = base
    for b in reversed(binders):
        s = SenseNode(IPCase.III, dataclasses.replace(b.op, var_index=b.var_index), b.domain_sense, s)
    return s


def free_variables(sense: Sense, env: Environment) -> FrozenSet[int]:
    chain = binder_chain(sense)
    if not chain.binders:
        return frozenset()
    try:
        base = as_relation(evaluate_sense(chain.base_sense, env))
    except OperationUndefinedError:
        return frozenset()
    bound = {b.var_index for b in chain.binders}
    return frozenset(range(1, base.arity + 1)) - bound


def delete_quantifier(sense: Sense, var: int) -> Formula:
    """Elimina el cuantificador que liga ``x_var`` y su dominio"""
    chain = binder_chain(sense)
    kept = tuple(b for b in chain.binders if not (b.var_index == var and b.op.kind is OpKind.QUANTIFIER))
    if len(kept) == len(chain.binders):
        raise OperationUndefinedError(f"No hay cuantificador que ligue x{var}")
    return Formula(rebuild_sense(kept, chain.base_sense), frozenset((var,)))


def instantiate(
    fml: Formula,
    sigma: Mapping[int, Any],
    f: OperationDef,
    model: Optional[CognitiveModel] = None,
) -> Sense:
    """Liga cada variable libre con una operación básica de dominio {σ(x_i)}"""
    if f.kind is not OpKind.BASIC:
        raise AssignmentError(f"La instanciación requiere una operación básica, no {f.name}")
    sense = fml.sense
    for i in sorted(fml.free):
        if i not in sigma:
            raise AssignmentError(f"Asignación incompleta: falta x{i}")
        value = sigma[i]
        try:
            empty = not as_domain(value)
        except OperationUndefinedError as exc:
            raise AssignmentError(f"σ(x{i}) no es un valor asignable: {exc}") from exc
        if empty:
            raise AssignmentError(f"σ(x{i}) está vacío")
        if model is not None and not model.contains(value):
            raise AssignmentError(f"σ(x{i}) no pertenece al modelo")
        name = (model.name_of(value) if model is not None else None) or f"σ(x{i})"
        sense = SenseNode(IPCase.III, dataclasses.replace(f, var_index=i), LeafSense(DenotationRef(name, value)), sense)
    return sense


# ---------------------------------------------------------------------------
# Citas directas
# ---------------------------------------------------------------------------


def quote(leaf: Leaf, model: CognitiveModel) -> MeaningTriple:
    """Una cita denota la cadena abstracta registrada, no el evento descrito"""
    if leaf.token not in model.abstract_strings:
        raise QuoteError(f"Cadena citada sin registrar en el modelo: {leaf.token!r}")
    ref = DenotationRef(f'"{leaf.token}"', model.abstract_strings[leaf.token])
    sense = LeafSense(ref)
    return MeaningTriple(ref.value, sense, ExplanationLeaf(leaf.token, sense, leaf.node_id))


# ---------------------------------------------------------------------------
# Intérprete
# ---------------------------------------------------------------------------


@dataclass
class Interpretation:
    tree: DepTree
    meanings: Dict[str, Tuple[MeaningTriple, ...]]
    candidates: Dict[str, int]
    modal_clause_nodes: FrozenSet[str]

    @property
    def root_meanings(self) -> Tuple[MeaningTriple, ...]:
        return self.meanings[self.tree.node_id]

    def ambiguous_nodes(self) -> List[str]:
        """Nodos (fuera de cláusulas modales) sin exactamente una terna"""
        return [
            node.node_id
            for node in iter_nodes(self.tree)
            if node.node_id in self.meanings
            and node.node_id not in self.modal_clause_nodes
            and len(self.meanings[node.node_id]) != 1
        ]

    @property
    def is_effective(self) -> bool:
        return not self.ambiguous_nodes()

    def all_triples(self) -> List[MeaningTriple]:
        return [t for node in iter_nodes(self.tree) for t in self.meanings.get(node.node_id, ())]


def token_consistent(triples: Tuple[MeaningTriple, ...]) -> Tuple[MeaningTriple, ...]:
    """Ternas en que cada aparición de un mismo símbolo toma la misma denotación"""
    kept = []
    for t in triples:
        chosen: Dict[str, Sense] = {}
        if all(chosen.setdefault(token, sense) == sense for token, sense in leaf_choices(t.explanation)):
            kept.append(t)
    return tuple(kept)


class Interpreter:
    """Interpretación recursiva bajo un léxico, un contexto y un modelo"""

    def __init__(self, model: CognitiveModel, lexicon: Lexicon, ctx: Optional[Context] = None):
        self.model = model
        self.lexicon = lexicon
        self.ctx = ctx or Context()
        self.env = Environment.of(model, self.ctx)

    def interpret(self, tree: DepTree) -> Interpretation:
        tree = number_tree(tree)
        self._meanings: Dict[str, Tuple[MeaningTriple, ...]] = {}
        self._candidates: Dict[str, int] = {}
        self._empty: Set[str] = set()
        self._modal: Set[str] = set()
        self._visit(tree)
        logger.debug("🧠 Interpretado %s: %d nodos", tree.node_id, len(self._meanings))
        return Interpretation(tree, dict(self._meanings), dict(self._candidates), frozenset(self._modal))

    def _visit(self, tree: DepTree) -> Tuple[MeaningTriple, ...]:
        triples = self._visit_leaf(tree) if isinstance(tree, Leaf) else self._visit_node(tree)
        if tree.node_id in self._empty:
            return ()
        if not triples:
            raise UninterpretableNodeError(tree.node_id)
        self._meanings[tree.node_id] = triples
        return triples

    def _visit_leaf(self, leaf: Leaf) -> Tuple[MeaningTriple, ...]:
        if leaf.quoted:
            self._candidates[leaf.node_id] = 1
            return (quote(leaf, self.model),)
        if leaf.slot:
            ops = [resolve_operation(ref, self.ctx.operations) for ref in leaf.slot]
            refs = [DenotationRef(op.label(), op) for op in ops]
            self._candidates[leaf.node_id] = len(refs)
            directive = self.ctx.directive_for(leaf.node_id)
            chosen = apply_directive(refs, directive, leaf.node_id) if directive is not None else refs[:1]
        else:
            if self.lexicon.is_empty_meaning(leaf.token):
                self._empty.add(leaf.node_id)
                return ()
            candidates = self.lexicon.lookup(leaf.token)
            self._candidates[leaf.node_id] = len(candidates)
            chosen = apply_context(self.ctx, leaf.node_id, candidates, leaf.token)
        triples = []
        for ref in chosen:
            sense = LeafSense(ref)
            triples.append(MeaningTriple(ref.value, sense, ExplanationLeaf(leaf.token, sense, leaf.node_id)))
        return sort_triples(triples)

    def _visit_node(self, node: Node) -> Tuple[MeaningTriple, ...]:
        mods = self._visit(node.modifier)
        heads = self._visit(node.head)
        if node.modifier.node_id in self._empty or node.head.node_id in self._empty:
            return self._pass_through(node, mods or heads)
        modal_heads = [h for h in heads if isinstance(h.denotation, OperationDef) and h.denotation.kind is OpKind.MODAL]
        triples = []
        if modal_heads:
            triples.extend(self._modal_triples(node, modal_heads, mods))
        ops = [is_operation(h.denotation) for h in heads]
        convention = self.ctx.convention_operation(node.pattern, node.node_id)
        if any(ops) and not all(ops) and convention is None:
            raise MixedHeadError(f"Núcleo mixto contenido/función sin convención en {node.node_id}")
        for h in heads:
            if h in modal_heads:
                continue
            for m in mods:
                triple = self._combine(node, m, h, convention)
                if triple is not None:
                    triples.append(triple)
        return sort_triples(triples)

    def _combine(
        self,
        node: Node,
        m: MeaningTriple,
        h: MeaningTriple,
        convention: Optional[OperationDef],
    ) -> Optional[MeaningTriple]:
        e_y = h.denotation
        if isinstance(e_y, PartialOperation):
            case, op = IPCase.I, e_y.op
        elif isinstance(e_y, OperationDef):
            case, op = (IPCase.I if e_y.arity == 1 else IPCase.II), e_y
        elif is_operation(m.denotation) or convention is None:
            return None
        else:
            case, op = IPCase.III, convention
        try:
            denotation = compose(case, op, m.denotation, e_y, self.env)
        except OperationUndefinedError as exc:
            logger.debug("🔍 %s: aplicación no definida (%s)", node.node_id, exc)
            return None
        sense = SenseNode(case, op, m.sense, h.sense, node.phrase)
        return MeaningTriple(denotation, sense, ExplanationNode(m.explanation, h.explanation, node.node_id, sense))

    def _modal_triples(self, node: Node, modal_heads, mods) -> List[MeaningTriple]:
        clause = token_consistent(mods)
        if not clause:
            raise ModalClauseError(f"La cláusula de {node.node_id} no tiene significados")
        self._modal.update(n.node_id for n in iter_nodes(node.modifier))
        triples = []
        for h in modal_heads:
            sense = ModalSense(h.denotation, clause, h.sense)
            denotation = frozenset(t.denotation for t in clause)
            explanation = ExplanationNode(clause[0].explanation, h.explanation, node.node_id, sense)
            triples.append(MeaningTriple(denotation, sense, explanation))
        return triples

    def _pass_through(self, node: Node, triples: Tuple[MeaningTriple, ...]) -> Tuple[MeaningTriple, ...]:
        """Un símbolo sin significado no altera el sentido del otro hijo"""
        out = []
        for t in triples:
            if node.modifier.node_id in self._empty:
                blank = ExplanationLeaf(_token(node.modifier), None, node.modifier.node_id)
                explanation = ExplanationNode(blank, t.explanation, node.node_id, t.sense)
            else:
                blank = ExplanationLeaf(_token(node.head), None, node.head.node_id)
                explanation = ExplanationNode(t.explanation, blank, node.node_id, t.sense)
            out.append(MeaningTriple(t.denotation, t.sense, explanation))
        return sort_triples(out)


def _token(tree: DepTree) -> str:
    return tree.token if isinstance(tree, Leaf) else tree.node_id


def interpret(tree: DepTree, lex: Lexicon, ctx: Optional[Context], model: CognitiveModel) -> Interpretation:
    return Interpreter(model, lex, ctx).interpret(tree)
