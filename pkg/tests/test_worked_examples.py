"""
Tests de los ejemplos trabajados: valores esperados de cada escenario
"""

import pytest

from cognitive_semantics.core.errors import NonEffectiveInterpretationError
from cognitive_semantics.core.model import world_of
from cognitive_semantics.examples.worked_examples import (
    BELIEF_STATUSES,
    HAMLET_DENOTATIONS,
    build_scenario,
    document,
    evaluate,
    hamlet,
    identity_scenario,
    mental_scenario,
    modal_context,
    modal_lexicon,
    modal_model,
    modal_scenario,
    modal_tree,
    red_flowers,
    tom_ran,
    tom_ran_lexicon,
    tom_ran_model,
    trees_scenario,
    values,
)
from cognitive_semantics.semantics.interp import Environment, Interpreter, evaluate_sense, render_sense
from cognitive_semantics.truth.evaluator import Evaluator, PropositionKind
from cognitive_semantics.truth.values import Logic, TruthValue

T, F, U, V = TruthValue.T, TruthValue.F, TruthValue.U, TruthValue.V


@pytest.mark.parametrize("variant,expected", [("actual", T), ("imaginary", U), ("refuted", F)])
def test_tom_ran(variant, expected):
    (verdict,) = evaluate(tom_ran(variant))
    assert verdict.value is expected
    assert verdict.kind is PropositionKind.ATOMIC_I
    assert verdict.content_size == 1


def test_tom_ran_refutation_witness():
    (verdict,) = evaluate(tom_ran("refuted"))
    assert [(w.actual.obs_id, w.relation, w.imaginary.obs_id) for w in verdict.witnesses] == [("o9", "refutes", "o4")]


@pytest.mark.parametrize(
    "n_green,expected",
    [(3, [T, T]), (2, [F, T]), (0, [F, F])],
)
def test_all_and_some_trees_turned_green(n_green, expected):
    assert values(evaluate(trees_scenario(3, n_green))) == expected


def test_most_with_high_threshold():
    assert values(evaluate(trees_scenario(10, 9, ("most",), 0.9))) == [F]
    assert values(evaluate(trees_scenario(10, 9, ("most",)))) == [T]


def test_quantified_verdict_kind():
    (verdict, _) = evaluate(trees_scenario(3, 3))
    assert verdict.kind is PropositionKind.QUANTIFIED
    assert len(verdict.children) == 3


def test_identity_sentences():
    verdicts = evaluate(identity_scenario())
    assert values(verdicts) == [T, F, V]
    assert all(v.kind is PropositionKind.ATOMIC_II for v in verdicts)


def test_modal_sentences():
    assert values(evaluate(modal_scenario())) == [T, F, T]


def test_possibility_of_impossible_clause():
    scenario = build_scenario(
        modal_model(),
        modal_lexicon(),
        modal_context(),
        document(trees=[modal_tree("u", "u", "possibly")]),
    )
    assert values(evaluate(scenario)) == [T]


def test_modal_clause_at_denotation_level():
    context = modal_context()
    context["modal_mode"] = "denotation"
    scenario = build_scenario(modal_model(), modal_lexicon(), context, document(trees=[modal_tree("u", "v")]))
    (verdict,) = evaluate(scenario)
    # Las dos lecturas cruzadas denotan la misma relación vacía
    assert len(verdict.children) == 3
    assert verdict.value is F
    assert verdict.kind is PropositionKind.MODAL


EXPECTED_MENTAL = {
    ("verified", True): (T, T),
    ("verified", False): (T, F),
    ("refuted", True): (F, F),
    ("refuted", False): (F, F),
    ("neither", True): (U, U),
    ("neither", False): (U, F),
}


@pytest.mark.parametrize("belief", BELIEF_STATUSES)
@pytest.mark.parametrize("clause_true", [True, False])
def test_believe_and_know(belief, clause_true):
    believes, knows = evaluate(mental_scenario(belief, clause_true))
    assert (believes.value, knows.value) == EXPECTED_MENTAL[(belief, clause_true)]
    assert believes.kind is PropositionKind.ATOMIC_M


def test_logic_choice_does_not_change_atomic_values():
    assert values(evaluate(tom_ran("imaginary"), logic=Logic.LUKASIEWICZ)) == [U]


def test_non_effective_interpretation_is_rejected():
    scenario = build_scenario(modal_model(), modal_lexicon(), document(), document(tree="u"))
    interp = Interpreter(scenario.model, scenario.lexicon, scenario.context).interpret(scenario.trees[0])
    with pytest.raises(NonEffectiveInterpretationError) as exc:
        Evaluator(scenario.model, scenario.context).eval_sentence(interp)
    assert exc.value.ambiguous_nodes == ("r",)


def test_noun_phrase_is_not_a_sentence():
    scenario = build_scenario(modal_model(), modal_lexicon(), document(directives={"r": "c1"}), document(tree="u"))
    (verdict,) = evaluate(scenario)
    assert verdict.value is TruthValue.UD
    assert verdict.kind is PropositionKind.NORMAL_PHRASE


def test_modal_clause_at_explanation_level():
    context = modal_context()
    by_sense = evaluate(modal_scenario())
    context["modal_mode"] = "explanation"
    scenario = build_scenario(
        modal_model(),
        modal_lexicon(),
        context,
        document(trees=[modal_tree("u", "u", "necessarily"), modal_tree("u", "v", "necessarily"), modal_tree("u", "v", "possibly")]),
    )
    by_explanation = evaluate(scenario)
    assert values(by_explanation) == values(by_sense) == [T, F, T]
    assert all(len(e.children) >= len(s.children) for e, s in zip(by_explanation, by_sense))


def _interpret(scenario, index=0):
    return Interpreter(scenario.model, scenario.lexicon, scenario.context).interpret(scenario.trees[index])


def test_red_flowers_denote_the_red_ones():
    scenario = red_flowers()
    (root,) = _interpret(scenario).root_meanings
    assert render_sense(root.sense) == "(basic-weak, red, flowers)"
    assert root.denotation == scenario.model.elements["red-flowers"]
    assert scenario.model.name_of(root.denotation) == "red-flowers"


def test_hamlet_lists_every_candidate():
    scenario = hamlet()
    interp = _interpret(scenario)
    assert [render_sense(t.sense) for t in interp.root_meanings] == sorted(HAMLET_DENOTATIONS)
    assert interp.candidates["r"] == 5
    assert not interp.is_effective
    assert world_of(scenario.model, "hamlet").ids() == ["h1", "h2"]


def test_hamlet_directive_picks_one_reading():
    interp = _interpret(hamlet({"r": "opera-run-7"}))
    assert [render_sense(t.sense) for t in interp.root_meanings] == ["opera-run-7"]
    assert interp.is_effective


@pytest.mark.parametrize("subject,expected", [("Tom", V), ("legs", T)])
def test_strong_match_needs_the_whole_subject(subject, expected):
    lexicon = tom_ran_lexicon()
    lexicon["entries"]["legs"] = ["run1"]
    scenario = build_scenario(
        tom_ran_model(),
        lexicon,
        document(conventions={"SUBJ+VERB": ["basic-strong"]}),
        document(tree={"mod": subject, "head": "ran", "pattern": "SUBJ+VERB"}),
    )
    (verdict,) = evaluate(scenario)
    assert verdict.value is expected


@pytest.mark.parametrize(
    "scenario",
    [tom_ran(), trees_scenario(3, 2), identity_scenario(), modal_scenario(), mental_scenario(), red_flowers(), hamlet()],
    ids=["tom_ran", "trees", "identity", "modal", "mental", "red_flowers", "hamlet"],
)
def test_sense_determines_denotation(scenario):
    env = Environment.of(scenario.model, scenario.context)
    for index in range(len(scenario.trees)):
        for triple in _interpret(scenario, index).all_triples():
            assert evaluate_sense(triple.sense, env) == triple.denotation
