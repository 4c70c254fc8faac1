"""
Tests del modelo cognitivo: procesos, regiones, objetos, identidad y constancia
"""

from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from conftest import make_obs

from cognitive_semantics.config.loaders import parse_model
from cognitive_semantics.core.errors import ConstancyError, IncompleteRegionMapError, SegmentError
from cognitive_semantics.core.model import (
    CognitiveModel,
    ObjectSpec,
    Relation,
    Segment,
    WorldInfo,
    check_constancy,
    check_object_conditions,
    check_similarity,
    identical,
    process_at,
    region_topology,
    state_of,
    subworld_of,
    validate_model,
    world_of,
)
from cognitive_semantics.core.observation import CompositeObservation
from cognitive_semantics.examples.worked_examples import mental_model


def _model(observations, objects=None):
    return CognitiveModel(frozenset(observations), {"real": WorldInfo(1)}, objects=objects or {})


# ---------------------------------------------------------------------------
# Tiempo y regiones
# ---------------------------------------------------------------------------


def test_malformed_segment():
    with pytest.raises(SegmentError):
        Segment(3, 1)


def test_region_topology_line():
    topo = region_topology([(0,), (1,), (2,)])
    assert topo.connected
    assert topo.interior == frozenset({(1,)})
    assert topo.boundary == frozenset({(0,), (2,)})


def test_region_topology_disconnected_and_empty():
    assert not region_topology([(0,), (2,)]).connected
    assert not region_topology([]).connected


def test_region_topology_square_interior():
    square = [(x, y) for x in range(3) for y in range(3)]
    topo = region_topology(square)
    assert topo.connected
    assert topo.interior == frozenset({(1, 1)})
    assert len(topo.boundary) == 8


# ---------------------------------------------------------------------------
# Procesos
# ---------------------------------------------------------------------------


def test_process_requires_complete_region_map():
    m = _model([make_obs(t=0)])
    with pytest.raises(IncompleteRegionMapError):
        process_at(m, "real", Segment(0, 1), {0: [(0,)]})


def test_state_of_outside_segment():
    m = _model([make_obs(t=0)])
    P = process_at(m, "real", Segment(0, 0), {0: [(0,)]})
    assert len(state_of(P, 0)) == 1
    with pytest.raises(SegmentError):
        state_of(P, 5)


corpus_strategy = st.lists(
    st.builds(make_obs, t=st.integers(0, 4), s0=st.integers(0, 4), aspect=st.sampled_from(["a", "b"])),
    max_size=20,
)
regions_strategy = st.lists(st.sets(st.integers(0, 4), max_size=5), min_size=5, max_size=5)


@given(corpus_strategy, regions_strategy, st.integers(0, 4), st.integers(0, 4))
@settings(max_examples=150)
def test_process_matches_brute_force(corpus, regions, a, b):
    start, end = min(a, b), max(a, b)
    m = _model(corpus)
    region_map = {t: [(p,) for p in regions[t]] for t in range(5)}
    P = process_at(m, "real", Segment(start, end), region_map)
    expected = {
        o for o in corpus
        if start <= o.t <= end and o.s0[0] in regions[o.t]
    }
    assert P.members.members == frozenset(expected)


@given(corpus_strategy, regions_strategy)
@settings(max_examples=50)
def test_process_is_a_function_of_its_arguments(corpus, regions):
    m = _model(corpus)
    region_map = {t: [(p,) for p in regions[t]] for t in range(5)}
    first = process_at(m, "real", Segment(0, 4), region_map)
    second = process_at(_model(list(reversed(corpus))), "real", Segment(0, 4), region_map)
    assert identical(first, second)


LARGE_CORPUS = [
    make_obs(f"o{i}", t=t, s0=s, aspect=aspect)
    for i, (t, s, aspect) in enumerate(product(range(10), range(10), "abcde"))
]
LARGE_MODEL = _model(LARGE_CORPUS)


@given(
    st.integers(0, 9),
    st.integers(0, 9),
    st.lists(st.sets(st.integers(0, 9), max_size=10), min_size=10, max_size=10),
)
@settings(max_examples=100, deadline=None)
def test_process_on_large_model(a, b, regions):
    start, end = min(a, b), max(a, b)
    region_map = {t: [(p,) for p in regions[t]] for t in range(10)}
    P = process_at(LARGE_MODEL, "real", Segment(start, end), region_map)
    expected = {o for o in LARGE_CORPUS if start <= o.t <= end and o.s0[0] in regions[o.t]}
    assert len(LARGE_MODEL.observations) == 500
    assert P.members.members == frozenset(expected)


points_2d = st.sets(st.tuples(st.integers(0, 5), st.integers(0, 5)), max_size=20)


@given(points_2d, st.integers(-3, 3), st.integers(-3, 3))
@settings(max_examples=200)
def test_region_topology_partition_and_translation(region, dx, dy):
    topo = region_topology(region)
    assert topo.interior | topo.boundary == frozenset(region)
    assert not topo.interior & topo.boundary
    moved = region_topology({(x + dx, y + dy) for x, y in region})
    assert moved.connected == topo.connected
    assert moved.interior == frozenset((x + dx, y + dy) for x, y in topo.interior)


def test_worlds_and_subworlds():
    dream = make_obs("d", t=1, world=("real", "dream"))
    plain = make_obs("p", t=2)
    other = make_obs("x", t=3, world=("other",))
    m = _model([dream, plain, other])
    assert world_of(m, "real").ids() == ["p", "d"]
    assert subworld_of(m, "real", "dream").ids() == ["d"]


# ---------------------------------------------------------------------------
# Identidad
# ---------------------------------------------------------------------------


def test_process_identical_to_its_members():
    a, b = make_obs("a", t=0), make_obs("b", t=1, s0=1)
    m = _model([a, b])
    P = process_at(m, "real", Segment(0, 1), {0: [(0,)], 1: [(1,)]})
    assert identical(P, CompositeObservation.of([a, b]))
    assert not identical(P, CompositeObservation.of([a]))


def test_relation_identity_ignores_name():
    A = CompositeObservation.of([make_obs(t=0)])
    assert identical(Relation(1, frozenset({(A,)}), name="x"), Relation(1, frozenset({(A,)}), name="y"))


# ---------------------------------------------------------------------------
# Objetos
# ---------------------------------------------------------------------------


def _moving_body():
    return [make_obs(t=0, s0=0), make_obs(t=1, s0=1), make_obs(t=0, s0=5, aspect="tree")]


def test_object_conditions_hold_for_connected_body():
    m = _model(_moving_body())
    P = process_at(m, "real", Segment(0, 1), {0: [(0,)], 1: [(1,)]})
    report = check_object_conditions(m, P, strict_start_end=True)
    assert report.all_hold


def test_object_without_strict_boundary():
    m = _model(_moving_body())
    P = process_at(m, "real", Segment(0, 0), {0: [(0,), (2,)]})
    report = check_object_conditions(m, P)
    assert not report.strict_boundary
    assert not report.all_hold


def test_overlapping_objects_break_disjointness():
    m0 = _model(_moving_body())
    P = process_at(m0, "real", Segment(0, 0), {0: [(0,), (1,)]})
    Q = process_at(m0, "real", Segment(0, 0), {0: [(1,), (2,)]})
    m = _model(_moving_body(), objects={"p": ObjectSpec(P), "q": ObjectSpec(Q)})
    assert not check_object_conditions(m, P, exclude="p").disjointness
    nested = process_at(m0, "real", Segment(0, 0), {0: [(1,)]})
    m2 = _model(_moving_body(), objects={"p": ObjectSpec(P), "n": ObjectSpec(nested)})
    assert check_object_conditions(m2, P, exclude="p").disjointness


def test_single_point_world_has_no_spatial_difference():
    m = _model([make_obs(t=0), make_obs(t=1)])
    P = process_at(m, "real", Segment(0, 1), {0: [(0,)], 1: [(0,)]})
    assert not check_object_conditions(m, P).spatial_difference


# ---------------------------------------------------------------------------
# Constancia y similitud
# ---------------------------------------------------------------------------


def test_constancy_under_change_of_time():
    early = CompositeObservation.of([make_obs(t=0, result="a"), make_obs(t=1, result="b")])
    late = CompositeObservation.of([make_obs(t=4, result="a"), make_obs(t=5, result="b")])
    assert check_constancy([early, late], "extent", v1=["size", "results"], v2=["t_min"])
    assert not check_constancy([early, late], "extent", v1=["t_min"], v2=["size"])


def test_similarity_within_ranges():
    small = CompositeObservation.of([make_obs(t=0)])
    big = CompositeObservation.of([make_obs(t=3), make_obs(t=4, s0=1)])
    assert check_similarity([small, big], "extent", {"size": (1, 2)}, v2=["t_min"])
    assert not check_similarity([small, big], "extent", {"size": (2, 3)}, v2=["t_min"])


def test_constancy_with_unknown_procedure():
    with pytest.raises(ConstancyError):
        check_constancy([CompositeObservation.of([make_obs()])], "colour-histogram", ["size"], [])


def test_constancy_undefined_on_empty_observation():
    with pytest.raises(ConstancyError):
        check_constancy([CompositeObservation()], "extent", ["size"], [])


# ---------------------------------------------------------------------------
# Validación
# ---------------------------------------------------------------------------


def test_validate_reports_all_violation_kinds():
    corpus = [
        make_obs("v1", aspect="colour", result="red"),
        make_obs("v2", aspect="colour", result="blue"),
        make_obs("v3", aspect="colour", result="green", observer="mike"),
    ]
    report = validate_model(_model(corpus))
    assert not report.ok
    assert (len(report.axiom), len(report.weak), len(report.strong)) == (1, 2, 2)
    assert report.summary["observations"] == 3


def test_strong_consistency_only_checks_actual_observations():
    corpus = [make_obs("a", result="x"), make_obs("b", result="x", observer="mike", actual=False)]
    report = validate_model(_model(corpus))
    assert report.strong == []


def test_mental_process_must_be_observed_by_its_agent():
    data = mental_model()
    assert validate_model(parse_model(data)).self_observation == []

    data["observations"][2]["observer"]["acim"] = "actual"
    found = validate_model(parse_model(data)).self_observation
    assert [(v.relation, v.agent, v.observation.obs_id) for v in found] == [
        ("believes", "tom", "bel1"),
        ("knows", "tom", "bel1"),
    ]
