"""
Tests de observaciones: valores etiquetados, extracción, consistencia y verificación directa

Propiedades:
- Las violaciones de consistencia débil forman un subconjunto de las de consistencia fuerte.
- Con el mismo observador incluido, la consistencia débil contiene al axioma de observación.
- La verificación directa de una compuesta es la conjunción sobre sus miembros imaginarios.
- Filtrar por una conjunción equivale a filtrar dos veces; el filtrado es monótono.
- Ninguna observación verifica y refuta a la vez a otra.
"""

import pytest
from hypothesis import given, settings, strategies as st

from conftest import make_obs

from cognitive_semantics.core.errors import CrossTagComparisonError, InvalidObservationError
from cognitive_semantics.core.observation import (
    CompositeObservation,
    Membership,
    ParamTag,
    ParamValue,
    WitnessIndex,
    check_observation_axiom,
    check_strong_consistency,
    check_weak_consistency,
    directly_refutes,
    directly_verifies,
    extract_set,
    extract_value,
    filter_observations,
    find_witnesses,
    is_directly_refuted,
    is_directly_verified,
    is_sequence_verified,
)


# ---------------------------------------------------------------------------
# Valores
# ---------------------------------------------------------------------------


def test_param_value_of_infers_tag():
    assert ParamValue.of(3).tag is ParamTag.INT
    assert ParamValue.of("red").tag is ParamTag.SYMBOL
    assert ParamValue.of([1, 2]).value == (1, 2)
    assert ParamValue.of(None).tag is ParamTag.EMPTY


def test_param_value_rejects_booleans():
    with pytest.raises(InvalidObservationError):
        ParamValue.of(True)


def test_cross_tag_comparison_raises():
    with pytest.raises(CrossTagComparisonError):
        ParamValue.of(1) < ParamValue.of("a")


def test_same_tag_ordering():
    assert ParamValue.of(1) < ParamValue.of(2)
    assert ParamValue.of((0, 1)) < ParamValue.of((1, 0))


def test_state_length_must_match_power():
    from cognitive_semantics.core.observation import AcIm, ObserverSpec
    from conftest import EYE

    with pytest.raises(InvalidObservationError):
        ObserverSpec(("narrator",), EYE, (0, (0,)), AcIm.ACTUAL)


def test_identity_ignores_obs_id():
    assert make_obs("a", t=1) == make_obs("b", t=1)
    assert len({make_obs("a", t=1), make_obs("b", t=1)}) == 1


# ---------------------------------------------------------------------------
# Extracción
# ---------------------------------------------------------------------------


def test_extract_value_by_parameter():
    a = make_obs(t=4, s0=2, aspect="colour", result="red", observer="mike", world=("real", "dream"))
    assert extract_value(a, "w0").value == "real"
    assert extract_value(a, "w1").value == "dream"
    assert extract_value(a, "w2") is None
    assert extract_value(a, "o0").value == "mike"
    assert extract_value(a, "acim").value == "actual"
    assert extract_value(a, "t").value == 4
    assert extract_value(a, "s0").value == (2,)
    assert extract_value(a, "aspect").value == "colour"
    assert extract_value(a, "value").value == "red"
    assert extract_value(a, "re0").value == "red"
    assert extract_value(a, "pressure") is None


def test_extract_set_skips_undefined():
    A = CompositeObservation.of([make_obs(t=1, world=("real", "dream")), make_obs(t=2)])
    assert extract_set(A, "w1") == frozenset({ParamValue.of("dream")})
    assert extract_set(A, "t") == frozenset({ParamValue.of(1), ParamValue.of(2)})


def test_filter_with_connectives():
    red = make_obs("r", t=1, result="red")
    blue = make_obs("b", t=2, result="blue")
    A = CompositeObservation.of([red, blue])
    is_red = Membership.of("value", ["red"])
    assert filter_observations(A, is_red).ids() == ["r"]
    assert filter_observations(A, ~is_red).ids() == ["b"]
    assert len(filter_observations(A, is_red | Membership.of("t", [2]))) == 2
    assert filter_observations(A, is_red & Membership.of("t", [2])).is_empty


def test_negation_fails_on_undefined_parameter():
    a = make_obs(t=1)
    assert not (~Membership.of("w1", ["dream"])).holds(a)


# ---------------------------------------------------------------------------
# Axioma y consistencia
# ---------------------------------------------------------------------------


def test_violations_same_state_different_results():
    v1 = make_obs("v1", aspect="colour", result="red")
    v2 = make_obs("v2", aspect="colour", result="blue")
    v3 = make_obs("v3", aspect="colour", result="green", observer="mike")
    corpus = [v1, v2, v3]
    assert len(check_observation_axiom(corpus)) == 1
    assert len(check_weak_consistency(corpus)) == 2
    assert len(check_weak_consistency(corpus, include_same_observer=True)) == 3
    assert len(check_strong_consistency(corpus)) == 2


def test_consistent_corpus_has_no_violations():
    corpus = [make_obs(t=t, s0=t) for t in range(4)]
    assert check_observation_axiom(corpus) == []
    assert check_weak_consistency(corpus) == []
    assert check_strong_consistency(corpus) == []


def test_violation_pairs_are_deterministic():
    corpus = [make_obs(f"v{i}", result=r, observer=o) for i, (r, o) in enumerate([("a", "x"), ("b", "y"), ("c", "z")])]
    first = [(x.obs_id, y.obs_id) for x, y in check_weak_consistency(corpus)]
    second = [(x.obs_id, y.obs_id) for x, y in check_weak_consistency(list(reversed(corpus)))]
    assert first == second


VIOLATION_FIXTURES = {
    "same_observer_two_results": [make_obs("a", result="red"), make_obs("b", result="blue")],
    "two_observers_two_results": [make_obs("a", result="red"), make_obs("b", result="blue", observer="mike")],
    "two_observers_agree": [make_obs("a", result="red"), make_obs("b", result="red", observer="mike")],
    "same_w0_other_subworld": [
        make_obs("a", result="red", world=("real", "dream")),
        make_obs("b", result="blue", observer="mike"),
    ],
    "three_observers": [
        make_obs("a", result="red"),
        make_obs("b", result="red", observer="mike"),
        make_obs("c", result="blue", observer="tom"),
    ],
    "actual_against_imaginary": [make_obs("a", result="red"), make_obs("b", result="blue", observer="mike", actual=False)],
}


@pytest.mark.parametrize(
    "name,expected",
    [
        ("same_observer_two_results", (1, 0, 1, 0)),
        ("two_observers_two_results", (0, 1, 1, 1)),
        ("two_observers_agree", (0, 0, 0, 1)),
        ("same_w0_other_subworld", (0, 0, 0, 1)),
        ("three_observers", (0, 2, 2, 3)),
        ("actual_against_imaginary", (0, 0, 0, 0)),
    ],
)
def test_violation_fixture_counts(name, expected):
    corpus = VIOLATION_FIXTURES[name]
    counts = (
        len(check_observation_axiom(corpus)),
        len(check_weak_consistency(corpus)),
        len(check_weak_consistency(corpus, include_same_observer=True)),
        len(check_strong_consistency(corpus)),
    )
    assert counts == expected


observations = st.builds(
    make_obs,
    t=st.integers(0, 2),
    s0=st.integers(0, 1),
    aspect=st.sampled_from(["shape", "colour"]),
    result=st.sampled_from(["r1", "r2"]),
    observer=st.sampled_from(["narrator", "mike"]),
    actual=st.booleans(),
    world=st.sampled_from([("real",), ("real", "dream"), ("other",)]),
)

corpora = st.lists(observations, min_size=20, max_size=20)


@given(corpora)
@settings(max_examples=200, deadline=None)
def test_weak_violations_are_strong_violations(corpus):
    weak = set(check_weak_consistency(corpus))
    strong = set(check_strong_consistency(corpus))
    assert weak <= strong


@given(corpora)
@settings(max_examples=200, deadline=None)
def test_axiom_violations_are_weak_violations_with_same_observer(corpus):
    axiom = set(check_observation_axiom(corpus))
    weak = set(check_weak_consistency(corpus, include_same_observer=True))
    assert axiom <= weak


@given(corpora)
@settings(max_examples=200, deadline=None)
def test_strongly_consistent_implies_weakly_consistent(corpus):
    if not check_strong_consistency(corpus):
        assert not check_weak_consistency(corpus)


# ---------------------------------------------------------------------------
# Verificación directa
# ---------------------------------------------------------------------------


def test_direct_verification_and_refutation():
    imagined = make_obs("i", t=3, aspect="legs", result="moving", actual=False)
    seen = make_obs("s", t=3, aspect="legs", result="moving", observer="mike")
    other = make_obs("o", t=3, aspect="legs", result="still", observer="mike")
    assert directly_verifies(seen, imagined)
    assert not directly_refutes(seen, imagined)
    assert directly_refutes(other, imagined)
    assert not directly_verifies(imagined, seen)


def test_composite_verification_is_conjunction():
    i1 = make_obs("i1", t=1, result="a", actual=False)
    i2 = make_obs("i2", t=2, result="b", actual=False)
    w1 = make_obs("w1", t=1, result="a", observer="mike")
    index = WitnessIndex([w1])
    assert is_directly_verified([i1], index)
    assert not is_directly_verified([i1, i2], index)
    assert not is_directly_refuted([i1, i2], index)


def test_actual_only_composite_is_vacuously_verified():
    A = CompositeObservation.of([make_obs(t=1), make_obs(t=2)])
    assert is_directly_verified(A, [])
    assert is_directly_refuted(A, [])
    assert is_sequence_verified([A, A], [])


def test_find_witnesses_reports_relation():
    i1 = make_obs("i1", t=1, result="a", actual=False)
    i2 = make_obs("i2", t=2, result="b", actual=False)
    i3 = make_obs("i3", t=3, result="c", actual=False)
    witnesses = find_witnesses([i1, i2, i3], [make_obs("w1", t=1, result="a"), make_obs("w2", t=2, result="z")])
    assert [(w.imaginary.obs_id, w.actual.obs_id, w.relation) for w in witnesses] == [
        ("i1", "w1", "verifies"),
        ("i2", "w2", "refutes"),
    ]


# ---------------------------------------------------------------------------
# Propiedades del filtrado y de la verificación directa
# ---------------------------------------------------------------------------

memberships = st.one_of(
    st.builds(Membership.of, st.just("t"), st.lists(st.integers(0, 2), max_size=3)),
    st.builds(Membership.of, st.just("value"), st.lists(st.sampled_from(["r1", "r2"]), max_size=2)),
    st.builds(Membership.of, st.just("o0"), st.lists(st.sampled_from(["narrator", "mike"]), max_size=2)),
    st.builds(Membership.of, st.just("w1"), st.lists(st.just("dream"), max_size=1)),
)
predicates = st.one_of(memberships, memberships.map(lambda p: ~p))


@given(st.lists(observations, max_size=20), predicates, predicates)
@settings(max_examples=200, deadline=None)
def test_conjunction_filter_is_sequential_filter(corpus, p, q):
    A = CompositeObservation.of(corpus)
    assert filter_observations(A, p & q) == filter_observations(filter_observations(A, p), q)


@given(st.lists(observations, max_size=20), st.lists(observations, max_size=10), predicates)
@settings(max_examples=200, deadline=None)
def test_filter_is_monotone(corpus, extra, p):
    A = CompositeObservation.of(corpus)
    B = CompositeObservation.of(corpus + extra)
    assert filter_observations(A, p).issubset(filter_observations(B, p))
    assert filter_observations(A, p).issubset(A)


@given(observations, observations)
@settings(max_examples=300)
def test_verification_and_refutation_exclude_each_other(b, a):
    assert not (directly_verifies(b, a) and directly_refutes(b, a))
