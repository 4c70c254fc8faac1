"""
Tests del evaluador: conectivas, productos de M-proposiciones, registro de
sentidos, verdad de denotaciones y renderizado de veredictos
"""

import json
from dataclasses import replace

import pytest

from conftest import make_obs

from cognitive_semantics.core.errors import MissingInterpretationHandleError, NotAPropositionError
from cognitive_semantics.core.observation import CompositeObservation
from cognitive_semantics.core.run_config import product_truth_handle
from cognitive_semantics.core.sense_registry import SenseRegistry
from cognitive_semantics.examples.worked_examples import (
    build_scenario,
    document,
    evaluate,
    mental_context,
    mental_lexicon,
    mental_model,
    mental_tree,
    tom_ran,
    tom_ran_context,
    tom_ran_lexicon,
    tom_ran_model,
    values,
)
from cognitive_semantics.reporting.trace import render_batch, render_validation, render_verdict, verdict_data
from cognitive_semantics.semantics.interp import Interpreter, LeafSense
from cognitive_semantics.semantics.lexicon import DenotationRef
from cognitive_semantics.semantics.operations import ModalSort
from cognitive_semantics.truth.evaluator import Evaluator, PropositionKind
from cognitive_semantics.truth.values import TruthValue

T, F, U, V, UD = TruthValue.T, TruthValue.F, TruthValue.U, TruthValue.V, TruthValue.UD

TOM_RAN = {"mod": "Tom", "head": ["ran", "at-school-today"], "pattern": "SUBJ+VERB"}
MIKE_RAN = {"mod": "Mike", "head": ["ran", "at-school-today"], "pattern": "SUBJ+VERB"}


def _connective_scenario(variant, trees, because_rows=(("run1", "run2"),)):
    model = tom_ran_model(variant)
    model["elements"]["because-rel"] = {"relation": [list(r) for r in because_rows], "arity": 2}
    lexicon = tom_ran_lexicon()
    lexicon["operations"]["because"] = {"kind": "connective", "relation": "because-rel"}
    lexicon["entries"].update({"not": [{"op": "not"}], "and": [{"op": "and"}], "because": [{"op": "because"}], "implies": [{"op": "implies"}]})
    return build_scenario(model, lexicon, tom_ran_context(), document(trees=trees))


def _binary(left, connective, right):
    # el operando izquierdo se combina primero con la conectiva
    return {"mod": right, "head": {"mod": left, "head": connective}}


# ---------------------------------------------------------------------------
# Conectivas
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("variant,expected", [("actual", F), ("imaginary", U), ("refuted", T)])
def test_negation_sentence(variant, expected):
    (verdict,) = evaluate(_connective_scenario(variant, [{"mod": TOM_RAN, "head": "not"}]))
    assert verdict.kind is PropositionKind.CONNECTIVE
    assert verdict.value is expected


def test_conjunction_with_vacant_operand():
    verdicts = evaluate(_connective_scenario("actual", [_binary(TOM_RAN, "and", MIKE_RAN), _binary(TOM_RAN, "and", TOM_RAN)]))
    assert values(verdicts) == [V, T]
    assert [c.value for c in verdicts[0].children] == [T, V]


def test_connective_with_associated_relation():
    tom = {"mod": "Tom", "head": "ran", "pattern": "SUBJ+VERB"}
    mike = {"mod": "Mike", "head": "ran", "pattern": "SUBJ+VERB"}
    tree = _binary(tom, "because", mike)
    (holds,) = evaluate(_connective_scenario("actual", [tree]))
    (reversed_,) = evaluate(_connective_scenario("actual", [tree], because_rows=(("run2", "run1"),)))
    assert holds.value is T
    assert holds.content_size == 1
    assert reversed_.value is F


NOT_TOM_RAN = {"mod": TOM_RAN, "head": "not"}


@pytest.mark.parametrize(
    "left,right,expected,children,prefix",
    [
        (TOM_RAN, NOT_TOM_RAN, F, [T, F], "(implies, (basic-weak"),
        (NOT_TOM_RAN, TOM_RAN, T, [F, T], "(implies, (not"),
    ],
)
def test_implication_operand_order(left, right, expected, children, prefix):
    (verdict,) = evaluate(_connective_scenario("actual", [_binary(left, "implies", right)]))
    assert verdict.sense.startswith(prefix)
    assert [c.value for c in verdict.children] == children
    assert verdict.value is expected


# ---------------------------------------------------------------------------
# Modales
# ---------------------------------------------------------------------------


@pytest.mark.parametrize(
    "sort,members,expected",
    [
        (ModalSort.NECESSITY, [T, T], T),
        (ModalSort.NECESSITY, [T, U], U),
        (ModalSort.NECESSITY, [U, F], F),
        (ModalSort.POSSIBILITY, [F, U], U),
        (ModalSort.POSSIBILITY, [F, T], T),
        (ModalSort.POSSIBILITY, [F, F], F),
        (ModalSort.NECESSITY, [T, V], V),
    ],
)
def test_modal_combination(sort, members, expected):
    assert Evaluator.combine_modal(sort, members) is expected


# ---------------------------------------------------------------------------
# M-proposiciones con productos de explicación
# ---------------------------------------------------------------------------


def _explanation_knowledge():
    model = mental_model("verified", clause_true=True)
    model["elements"]["knows"]["m_relation"]["product_kind"] = "explanation"
    return build_scenario(model, mental_lexicon(), mental_context(), document(trees=[mental_tree("knows")]))


def test_explanation_product_needs_handle():
    with pytest.raises(MissingInterpretationHandleError):
        evaluate(_explanation_knowledge())


@pytest.mark.parametrize("product,expected", [("T", T), ("F", F), ("U", U)])
def test_explanation_product_from_context_table(product, expected):
    scenario = _explanation_knowledge()
    handle = product_truth_handle(scenario.model, {"tomfly": product})
    assert values(evaluate(scenario, interp_handle=handle)) == [expected]


def test_empty_product_table_gives_no_handle():
    assert product_truth_handle(tom_ran().model, {}) is None


# ---------------------------------------------------------------------------
# Registro de sentidos y verdad de denotaciones
# ---------------------------------------------------------------------------


def test_registry_deduplicates_senses():
    registry = SenseRegistry("s")
    A = CompositeObservation.of([make_obs(t=1)])
    registry.register(A, "alpha")
    registry.register(A, "alpha")
    registry.register(A, "beta")
    assert registry.senses_for(A) == ["alpha", "beta"]
    summary = registry.get_session_summary()
    assert (summary["senses_registered"], summary["denotations"], summary["session_id"]) == (2, 1, "s")


def test_denotation_truth_after_sentence():
    scenario = tom_ran()
    interp = Interpreter(scenario.model, scenario.lexicon, scenario.context).interpret(scenario.trees[0])
    evaluator = Evaluator(scenario.model, scenario.context)
    assert evaluator.eval_denotation_truth(interp.root_meanings[0].denotation) is UD
    evaluator.eval_sentence(interp)
    assert evaluator.eval_denotation_truth(interp.root_meanings[0].denotation) is T


def test_denotation_outside_model_is_undefined():
    evaluator = Evaluator(tom_ran().model)
    assert evaluator.eval_denotation_truth(CompositeObservation.of([make_obs("zz", t=99)])) is UD


def test_context_facts_act_as_witnesses():
    model = tom_ran_model("imaginary")
    scenario = build_scenario(model, tom_ran_lexicon(), tom_ran_context(), document(tree=TOM_RAN))
    assert values(evaluate(scenario)) == [U]
    interp = Interpreter(scenario.model, scenario.lexicon, scenario.context).interpret(scenario.trees[0])
    o4 = scenario.model.observation("o4")
    witness = make_obs("seen", t=7, s0=1, aspect="legs", result="moving", observer="mike")
    assert witness.observer.state == o4.observer.state
    ctx = replace(scenario.context, facts=(CompositeObservation.of([witness]),))
    assert Evaluator(scenario.model, ctx).eval_sentence(interp).value is T


# ---------------------------------------------------------------------------
# Renderizado
# ---------------------------------------------------------------------------


def test_verdict_rendering():
    (verdict,) = evaluate(tom_ran("refuted"))
    data = verdict_data(verdict)
    assert data["value"] == "F"
    assert data["witnesses"] == [{"imaginary": "o4", "actual": "o9", "relation": "refutes"}]
    assert json.loads(render_verdict(verdict, "structured")) == data
    assert "o9 refutes o4" in render_verdict(verdict)


def test_batch_rendering_with_error():
    (verdict,) = evaluate(tom_ran())
    items = [{"index": 0, "tree": "a", "verdict": verdict}, {"index": 1, "tree": "b", "verdict": None, "error": "boom"}]
    structured = json.loads(render_batch(items, "structured"))
    assert structured[1] == {"index": 1, "tree": "b", "error": "boom"}
    assert "#1 b\n❌ boom" in render_batch(items)


def test_unknown_output_format():
    with pytest.raises(ValueError):
        render_validation(tom_ran().model.validate(), "yaml")


def test_direct_evaluation_needs_a_relation():
    model = tom_ran().model
    sense = LeafSense(DenotationRef("tom", model.elements["tom"]))
    with pytest.raises(NotAPropositionError):
        Evaluator(model).eval_atomic_I(sense)
