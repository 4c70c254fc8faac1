#!/usr/bin/env python3
"""
Ejemplos trabajados - Escenarios completos construidos con el mismo formato
JSON que lee el CLI

Cada constructor devuelve los cuatro documentos (modelo, léxico, contexto y
árboles) como diccionarios; ``build_scenario`` los carga y ``evaluate`` corre
la interpretación y la evaluación de cada árbol.
"""

import os
import sys
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence

if __package__ in (None, ""):
    sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", ".."))

from cognitive_semantics.config.loaders import parse_context, parse_lexicon, parse_model, parse_trees
from cognitive_semantics.core.model import CognitiveModel
from cognitive_semantics.semantics.interp import DepTree, Interpreter
from cognitive_semantics.semantics.lexicon import Context, Lexicon
from cognitive_semantics.truth.evaluator import Evaluator, Verdict
from cognitive_semantics.truth.values import Logic, TruthValue

POWER = {
    "eye": {
        "state": [["t", "int"], ["s1", "tuple"], ["s0", "tuple"]],
        "resolution": [["aspect", "symbol"]],
        "result": ["value", "symbol"],
    }
}

WORLDS = {"real": {"dimension": 1}}


def obs(
    obs_id: str,
    t: int,
    s0: int,
    aspect: str,
    result: str,
    observer: str = "narrator",
    acim: str = "actual",
    s1: int = 0,
    world: str = "real",
) -> Dict[str, Any]:
    """Observación primitiva en formato de archivo"""
    return {
        "id": obs_id,
        "world": [world],
        "observer": {"labels": [observer], "power": "eye", "state": [t, [s1], [s0]], "acim": acim},
        "rpoint": [aspect],
        "result": result,
    }


def document(**body: Any) -> Dict[str, Any]:
    return {"version": 1, **body}


@dataclass
class Scenario:
    model: CognitiveModel
    lexicon: Lexicon
    context: Context
    trees: List[DepTree]


def build_scenario(model: Dict[str, Any], lexicon: Dict[str, Any], context: Dict[str, Any], trees: Dict[str, Any]) -> Scenario:
    m = parse_model(model)
    lex = parse_lexicon(lexicon, m)
    return Scenario(m, lex, parse_context(context, m, lex), parse_trees(trees))


def evaluate(
    scenario: Scenario,
    logic: "Logic | str" = Logic.KLEENE,
    most_threshold: float = 0.5,
    interp_handle=None,
) -> List[Verdict]:
    verdicts = []
    for tree in scenario.trees:
        interp = Interpreter(scenario.model, scenario.lexicon, scenario.context).interpret(tree)
        evaluator = Evaluator(scenario.model, scenario.context, logic, most_threshold, interp_handle=interp_handle)
        verdicts.append(evaluator.eval_sentence(interp))
    return verdicts


def values(verdicts: Sequence[Verdict]) -> List[TruthValue]:
    return [v.value for v in verdicts]


# ---------------------------------------------------------------------------
# Tom ran at school from 6:00 to 6:30 today
# ---------------------------------------------------------------------------

TOM_RAN_VARIANTS = ("actual", "imaginary", "refuted")


def tom_ran_model(variant: str = "actual") -> Dict[str, Any]:
    """8 observaciones; ``imaginary`` vuelve imaginaria o4 y ``refuted`` añade su refutación"""
    if variant not in TOM_RAN_VARIANTS:
        raise ValueError(f"Variante desconocida: {variant}")
    o4_acim = "actual" if variant == "actual" else "imaginary"
    observations = [
        obs("o1", 6, 0, "shape", "boy", s1=1),
        obs("o2", 7, 1, "shape", "boy", s1=1),
        obs("o3", 6, 0, "legs", "moving"),
        obs("o4", 7, 1, "legs", "moving", acim=o4_acim),
        obs("o5", 6, 5, "legs", "moving"),
        obs("o6", 7, 6, "legs", "moving"),
        obs("o7", 6, 5, "shape", "man", s1=1),
        obs("o8", 7, 6, "shape", "man", s1=1),
    ]
    if variant == "refuted":
        observations.append(obs("o9", 7, 1, "legs", "still", observer="mike"))
    return document(
        worlds=WORLDS,
        powers=POWER,
        observations=observations,
        elements={
            "tom": {"composite": ["o1", "o2", "o3", "o4"]},
            "mike": {"composite": ["o5", "o6", "o7", "o8"]},
            "run1": {"composite": ["o3", "o4"]},
            "run2": {"composite": ["o5", "o6"]},
            "ran": {"relation": [["run1"], ["run2"]]},
        },
        objects={
            "tom-body": {
                "process": {"world": "real", "segment": [6, 7], "regions": {"6": [[0]], "7": [[1]]}},
                "strict_start_end": True,
            }
        },
    )


def tom_ran_lexicon() -> Dict[str, Any]:
    return document(
        operations={"at-school-6-7": {"kind": "context-op", "segment": [6, 7], "region": "school"}},
        entries={
            "Tom": ["tom"],
            "Mike": ["mike"],
            "ran": ["ran"],
            "at-school-today": [{"op": "at-school-6-7"}],
        },
    )


def tom_ran_context() -> Dict[str, Any]:
    return document(regions={"school": [[0], [1]]}, conventions={"SUBJ+VERB": ["basic-weak"]})


def tom_ran_trees() -> Dict[str, Any]:
    return document(trees=[{"mod": "Tom", "head": ["ran", "at-school-today"], "pattern": "SUBJ+VERB"}])


def tom_ran(variant: str = "actual") -> Scenario:
    return build_scenario(tom_ran_model(variant), tom_ran_lexicon(), tom_ran_context(), tom_ran_trees())


# ---------------------------------------------------------------------------
# All trees turned green
# ---------------------------------------------------------------------------


def trees_model(n_trees: int = 3, n_green: int = 3) -> Dict[str, Any]:
    """``n_trees`` árboles; los primeros ``n_green`` cambian a verde, el resto a amarillo"""
    observations, elements, turned, green = [], {}, [], []
    for i in range(1, n_trees + 1):
        colour = "green" if i <= n_green else "yellow"
        observations.append(obs(f"tree{i}", 0, i, "shape", "tree", s1=1))
        observations.append(obs(f"leaves{i}", 1, i, "colour", colour))
        elements[f"t{i}"] = {"composite": [f"tree{i}"]}
        elements[f"c{i}"] = {"composite": [f"leaves{i}"]}
        turned.append([f"t{i}", f"c{i}"])
        if colour == "green":
            green.append(f"c{i}")
    elements["trees"] = {"set": [f"t{i}" for i in range(1, n_trees + 1)]}
    elements["green"] = {"set": green}
    elements["turned"] = {"relation": turned, "arity": 2}
    return document(worlds=WORLDS, powers=POWER, observations=observations, elements=elements)


def trees_lexicon(most_threshold: Optional[float] = None) -> Dict[str, Any]:
    most: Dict[str, Any] = {"op": "most"}
    if most_threshold is not None:
        most["threshold"] = most_threshold
    return document(
        entries={
            "trees": ["trees"],
            "green": ["green"],
            "turned": ["turned"],
            "all": [{"op": "forall"}],
            "some": [{"op": "exists"}],
            "most": [most],
        }
    )


def trees_context() -> Dict[str, Any]:
    return document(conventions={"ADJ+VERB": ["exists@2"]})


def trees_tree(determiner: str) -> Dict[str, Any]:
    return {"mod": {"mod": "green", "head": "turned", "pattern": "ADJ+VERB"}, "head": ["trees", determiner]}


def trees_scenario(n_trees: int, n_green: int, determiners: Sequence[str] = ("all", "some"), most_threshold: Optional[float] = None) -> Scenario:
    return build_scenario(
        trees_model(n_trees, n_green),
        trees_lexicon(most_threshold),
        trees_context(),
        document(trees=[trees_tree(d) for d in determiners]),
    )


# ---------------------------------------------------------------------------
# Tom is Mike
# ---------------------------------------------------------------------------


def identity_model() -> Dict[str, Any]:
    return document(
        worlds=WORLDS,
        powers=POWER,
        observations=[obs("p1", 0, 0, "shape", "boy"), obs("p2", 0, 3, "shape", "man")],
        elements={
            "tom": {"composite": ["p1"]},
            "mike": {"composite": ["p2"]},
            "nobody": {"set": []},
            "is": {"kind": "identity", "over": ["tom", "mike"]},
        },
    )


def identity_lexicon() -> Dict[str, Any]:
    return document(
        entries={
            "Tom": ["tom"],
            "Mike": ["mike"],
            "Michael": ["mike"],
            "nobody": ["nobody"],
            "is": ["is"],
        }
    )


def identity_context() -> Dict[str, Any]:
    return document(conventions={"SUBJ+COP": ["basic-exact"], "COP+OBJ": ["basic-exact@2"]})


def identity_tree(subject: str, obj: str) -> Dict[str, Any]:
    return {"mod": subject, "head": {"mod": obj, "head": "is", "pattern": "COP+OBJ"}, "pattern": "SUBJ+COP"}


def identity_scenario(pairs: Sequence[Sequence[str]] = (("Mike", "Michael"), ("Tom", "Mike"), ("nobody", "Mike"))) -> Scenario:
    return build_scenario(
        identity_model(),
        identity_lexicon(),
        identity_context(),
        document(trees=[identity_tree(s, o) for s, o in pairs]),
    )


# ---------------------------------------------------------------------------
# Necesidad y posibilidad sobre una cláusula ambigua
# ---------------------------------------------------------------------------


def modal_model() -> Dict[str, Any]:
    return document(
        worlds=WORLDS,
        powers=POWER,
        observations=[obs("q1", 0, 0, "shape", "circle"), obs("q2", 0, 4, "shape", "square")],
        elements={
            "c1": {"composite": ["q1"]},
            "c2": {"composite": ["q2"]},
            "=": {"kind": "identity", "over": ["c1", "c2"]},
        },
    )


def modal_lexicon() -> Dict[str, Any]:
    return document(
        entries={
            "u": ["c1", "c2"],
            "v": ["c1", "c2"],
            "=": ["="],
            "necessarily": [{"op": "necessary"}],
            "possibly": [{"op": "possible"}],
        }
    )


def modal_context() -> Dict[str, Any]:
    return document(conventions={"SUBJ+EQ": ["basic-exact"], "EQ+OBJ": ["basic-exact@2"]})


def modal_tree(left: str, right: str, modal: str = "necessarily") -> Dict[str, Any]:
    clause = {"mod": left, "head": {"mod": right, "head": "=", "pattern": "EQ+OBJ"}, "pattern": "SUBJ+EQ"}
    return {"mod": clause, "head": modal}


def modal_scenario(clauses: Sequence[Sequence[str]] = (("u", "u", "necessarily"), ("u", "v", "necessarily"), ("u", "v", "possibly"))) -> Scenario:
    return build_scenario(
        modal_model(),
        modal_lexicon(),
        modal_context(),
        document(trees=[modal_tree(*c) for c in clauses]),
    )


# ---------------------------------------------------------------------------
# M-proposiciones: believe / know
# ---------------------------------------------------------------------------

BELIEF_STATUSES = ("verified", "refuted", "neither")


def mental_model(belief: str = "verified", clause_true: bool = True) -> Dict[str, Any]:
    """El proceso mental es una observación imaginaria del narrador; su testigo
    es una observación actual de Tom sobre sí mismo. La verdad de la cláusula
    depende del testigo de ``fly1``.
    """
    if belief not in BELIEF_STATUSES:
        raise ValueError(f"Estado de creencia desconocido: {belief}")
    observations = [
        obs("body", 0, 0, "shape", "boy"),
        obs("fly1", 1, 0, "motion", "flying", acim="imaginary"),
        obs("bel1", 2, 0, "mind", "believes-flying", acim="imaginary"),
        obs("fly-w", 1, 0, "motion", "flying" if clause_true else "walking", observer="mike"),
    ]
    if belief != "neither":
        result = "believes-flying" if belief == "verified" else "doubts-flying"
        observations.append(obs("bel-w", 2, 0, "mind", result, observer="tom"))
    m_info = {"product_kind": "sense", "agent": "tom"}
    return document(
        worlds=WORLDS,
        powers=POWER,
        observations=observations,
        elements={
            "tom": {"composite": ["body", "fly1", "bel1"]},
            "tomfly": {"composite": ["fly1"]},
            "belief": {"composite": ["bel1"]},
            "flies": {"relation": [["tomfly"]]},
            "believes": {"relation": [["belief", "tomfly"]], "m_relation": {**m_info, "knowledge": False}},
            "knows": {"relation": [["belief", "tomfly"]], "m_relation": {**m_info, "knowledge": True}},
        },
    )


def mental_lexicon() -> Dict[str, Any]:
    return document(entries={"Tom": ["tom"], "flies": ["flies"], "believes": ["believes"], "knows": ["knows"]})


def mental_context() -> Dict[str, Any]:
    return document(conventions={"SUBJ+VERB": ["basic-weak"], "CLAUSE+MVERB": ["basic-weak@2"]})


def mental_tree(verb: str) -> Dict[str, Any]:
    clause = {"mod": "Tom", "head": "flies", "pattern": "SUBJ+VERB"}
    return {"mod": "Tom", "head": {"mod": clause, "head": verb, "pattern": "CLAUSE+MVERB"}, "pattern": "SUBJ+VERB"}


def mental_scenario(belief: str = "verified", clause_true: bool = True, verbs: Sequence[str] = ("believes", "knows")) -> Scenario:
    return build_scenario(
        mental_model(belief, clause_true),
        mental_lexicon(),
        mental_context(),
        document(trees=[mental_tree(v) for v in verbs]),
    )


# ---------------------------------------------------------------------------
# Red flowers
# ---------------------------------------------------------------------------


def red_flowers_model() -> Dict[str, Any]:
    """Tres flores; la primera y la tercera son rojas"""
    observations, colours = [], ("red", "yellow", "red")
    for i, colour in enumerate(colours, start=1):
        observations.append(obs(f"f{i}", 0, i, "shape", "flower"))
        observations.append(obs(f"k{i}", 0, i, "colour", colour))
    red = [f"k{i}" for i, colour in enumerate(colours, start=1) if colour == "red"]
    elements = {f"flower{i}": {"composite": [f"f{i}", f"k{i}"]} for i in range(1, 4)}
    elements.update(
        {
            "red": {"composite": red},
            "flowers": {"set": ["flower1", "flower2", "flower3"]},
            "red-flowers": {"set": ["flower1", "flower3"]},
        }
    )
    return document(worlds=WORLDS, powers=POWER, observations=observations, elements=elements)


def red_flowers() -> Scenario:
    return build_scenario(
        red_flowers_model(),
        document(entries={"red": ["red"], "flowers": ["flowers"]}),
        document(conventions={"ADJ+NOUN": ["basic-weak"]}),
        document(tree={"mod": "red", "head": "flowers", "pattern": "ADJ+NOUN"}),
    )


# ---------------------------------------------------------------------------
# Hamlet: cinco denotaciones posibles
# ---------------------------------------------------------------------------

HAMLET_DENOTATIONS = ("book-1600", "book-2000", "hamlet-world", "opera-run-7", "dvd-3")


def hamlet_model() -> Dict[str, Any]:
    observations = [
        obs("b1", 0, 0, "shape", "book"),
        obs("b2", 1, 0, "shape", "book"),
        obs("op7", 2, 3, "sound", "opera"),
        obs("d3", 3, 4, "shape", "disc"),
        obs("h1", 0, 0, "shape", "prince", world="hamlet"),
        obs("h2", 1, 0, "shape", "ghost", world="hamlet"),
    ]
    return document(
        worlds={"real": {"dimension": 1}, "hamlet": {"dimension": 1}},
        powers=POWER,
        observations=observations,
        elements={
            "book-1600": {"composite": ["b1"]},
            "book-2000": {"composite": ["b2"]},
            "hamlet-world": {"composite": ["h1", "h2"]},
            "opera-run-7": {"composite": ["op7"]},
            "dvd-3": {"composite": ["d3"]},
        },
    )


def hamlet(directives: Optional[Dict[str, Any]] = None) -> Scenario:
    context = document(directives=directives) if directives else document()
    return build_scenario(
        hamlet_model(),
        document(entries={"Hamlet": list(HAMLET_DENOTATIONS)}),
        context,
        document(tree="Hamlet"),
    )


def main():
    """Corre todos los ejemplos e imprime sus valores"""
    print("\n" + "=" * 60)
    print("🧠 EJEMPLOS TRABAJADOS")
    print("=" * 60)
    for variant in TOM_RAN_VARIANTS:
        print(f"Tom ran ({variant}): {values(evaluate(tom_ran(variant)))[0]}")
    for n_green in (3, 2, 0):
        result = values(evaluate(trees_scenario(3, n_green)))
        print(f"{n_green}/3 árboles verdes: all={result[0]} some={result[1]}")
    print(f"most(0.9), 9/10: {values(evaluate(trees_scenario(10, 9, ('most',), 0.9)))[0]}")
    print(f"Mike is Michael / Tom is Mike / nobody is Mike: {values(evaluate(identity_scenario()))}")
    print(f"necesario u=u / necesario u=v / posible u=v: {values(evaluate(modal_scenario()))}")
    for belief in BELIEF_STATUSES:
        for clause_true in (True, False):
            result = values(evaluate(mental_scenario(belief, clause_true)))
            print(f"creencia {belief}, cláusula {'T' if clause_true else 'F'}: believes={result[0]} knows={result[1]}")
    flowers = red_flowers()
    (root,) = Interpreter(flowers.model, flowers.lexicon, flowers.context).interpret(flowers.trees[0]).root_meanings
    print(f"red flowers: {flowers.model.name_of(root.denotation)}")
    play = hamlet()
    readings = Interpreter(play.model, play.lexicon, play.context).interpret(play.trees[0]).root_meanings
    print(f"Hamlet: {len(readings)} lecturas sin directiva")
    print("=" * 60)


if __name__ == "__main__":
    main()
