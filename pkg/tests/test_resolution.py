from __future__ import annotations

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from domdim.algebra.bound import BoundQuiverAlgebra, EngineConfig
from domdim.algebra.representation import ResolutionError, direct_sum
from domdim.algebra.resolution import (
    INFINITY,
    dominant_dimension_algebra,
    dominant_dimension_module,
    dominant_dimension_of,
    format_value,
    minimal_injective_resolution,
)
from domdim.analysis.predict import truncated_formula
from domdim.field import FieldSpec
from domdim.quiver.arms import derive_core
from domdim.quiver.core import RelationSet, enumerate_paths
from domdim.quiver.families import FamilyError, linear, random_relations, truncated
from tests.conftest import random_trees

TRUNCATED_VALUES = [
    (3, 2, 2),
    (4, 3, 1),
    (5, 3, 2),
    (6, 3, 3),
    (7, 3, 3),
    (8, 3, 4),
    (9, 3, 5),
    (10, 3, 5),
    (5, 4, 1),
    (6, 4, 1),
    (7, 4, 2),
    (8, 4, 3),
]


@pytest.mark.parametrize(
    "name, expected",
    [
        ("long_relation_arm", 0),
        ("long_relation_core", 1),
        ("inner_socle_arms", 0),
        ("reverse_star", 0),
        ("linear1", INFINITY),
        ("linear5", 1),
        ("star", 0),
        ("truncated_4_3", 1),
        ("truncated_10_3", 5),
        ("arms_positive", 1),
        ("branch_no_arms", 0),
        ("branch_with_arms", 0),
    ],
)
def test_corpus_dominant_dimension(algebra_of, name, expected):
    assert dominant_dimension_of(algebra_of(name)).value == expected


def test_arm_vertex_breaks_projective_envelope(algebra_of):
    result = dominant_dimension_of(algebra_of("long_relation_arm"))
    (report,) = [r for r in result.reports if r.vertex == "3"]
    first = report.resolution.terms[0]
    assert not first.all_projective
    assert any(s.vertex == "6" and not s.projective for s in first.summands)
    assert "3" in result.weakest()


@pytest.mark.parametrize("n", range(2, 9))
def test_linear_regular_module_resolution_shape(n):
    quiver, relations = linear(n)
    algebra = BoundQuiverAlgebra(quiver, relations)
    resolution = minimal_injective_resolution(algebra, algebra.regular_module())
    assert resolution.length == 2 and not resolution.truncated
    (head,) = resolution.terms[0].summands
    assert (head.vertex, head.multiplicity, head.projective, head.partner) == (str(n), n, True, "1")
    tail = resolution.terms[1].summands
    assert [(s.vertex, s.multiplicity) for s in tail] == [(str(j), 1) for j in range(1, n)]
    assert not any(s.projective for s in tail)


@pytest.mark.parametrize("n, m, expected", TRUNCATED_VALUES)
def test_truncated_engine_matches_formula(n, m, expected):
    quiver, relations = truncated(n, m)
    assert dominant_dimension_algebra(quiver, relations).value == expected
    assert truncated_formula(n, m) == expected


def test_every_value_is_attained():
    values = [dominant_dimension_algebra(*linear(2)).value]
    values += [dominant_dimension_algebra(*truncated(n, 2)).value for n in range(3, 11)]
    assert values == list(range(1, 10))


def test_resolution_terms_render():
    quiver, relations = truncated(5, 2)
    algebra = BoundQuiverAlgebra(quiver, relations)
    resolution = minimal_injective_resolution(algebra, algebra.projective("5"))
    assert [str(t) for t in resolution.terms] == ["I(5)=P(4)", "I(4)=P(3)", "I(3)=P(2)", "I(2)=P(1)", "I(1)"]
    assert str(resolution).endswith("-> 0")


def test_cap_reached_with_projective_terms_raises():
    quiver, relations = truncated(5, 2)
    algebra = BoundQuiverAlgebra(quiver, relations)
    with pytest.raises(ResolutionError, match="undetermined"):
        dominant_dimension_module(algebra, algebra.projective("5"), max_steps=2)
    assert dominant_dimension_module(algebra, algebra.projective("5"), max_steps=5) == 4


def test_cap_reached_after_non_projective_term_still_decides():
    quiver, relations = truncated(4, 3)
    algebra = BoundQuiverAlgebra(quiver, relations)
    resolution = minimal_injective_resolution(algebra, algebra.projective("3"), max_steps=2)
    assert resolution.leading_projective() == 1


def test_invalid_cap():
    quiver, relations = linear(3)
    algebra = BoundQuiverAlgebra(quiver, relations)
    with pytest.raises(ValueError, match="cap"):
        minimal_injective_resolution(algebra, algebra.projective("1"), max_steps=0)
    with pytest.raises(ValueError, match="max_steps"):
        EngineConfig(max_steps=0)


def test_self_injective_point_has_infinite_dimension(algebra_of):
    result = dominant_dimension_of(algebra_of("linear1"))
    assert result.value == INFINITY
    assert format_value(result.value) == "infinity"


def test_prime_field_agrees(algebra_of):
    config = EngineConfig(field=FieldSpec("prime", 2))
    for name in ("long_relation_arm", "inner_socle_arms", "truncated_10_3", "arms_positive"):
        assert dominant_dimension_of(algebra_of(name, config)).value == dominant_dimension_of(algebra_of(name)).value


def test_last_term_of_every_finished_resolution_is_not_projective(algebra_of):
    for name in ("long_relation_arm", "inner_socle_arms", "reverse_star", "truncated_10_3", "arms_positive"):
        for report in dominant_dimension_of(algebra_of(name)).reports:
            terms = report.resolution.terms
            if len(terms) >= 2 and not report.resolution.truncated:
                assert not terms[-1].all_projective


def test_projective_injective_count_bounds_dimension(algebra_of):
    for name in ("long_relation_core", "truncated_10_3", "linear5", "arms_positive"):
        algebra = algebra_of(name)
        value = dominant_dimension_of(algebra).value
        assert value <= len(algebra.projective_injectives()) <= algebra.vertex_count - 1


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=3, max_value=7), st.data())
def test_direct_sum_takes_the_minimum(n, data):
    quiver, relations = truncated(n, 2)
    algebra = BoundQuiverAlgebra(quiver, relations)
    i = data.draw(st.sampled_from(quiver.vertices))
    j = data.draw(st.sampled_from(quiver.vertices))
    left = dominant_dimension_module(algebra, algebra.projective(i))
    right = dominant_dimension_module(algebra, algebra.projective(j))
    both = dominant_dimension_module(algebra, direct_sum([algebra.projective(i), algebra.projective(j)]))
    assert both == min(left, right)


@st.composite
def armed_trees_with_core_relations(draw):
    """A tree with non-trivial arms and random relations drawn on its core."""
    quiver, _ = draw(random_trees(sizes=(5, 6, 7)))
    derivation = derive_core(quiver, RelationSet())
    assume(not derivation.identity)
    core = derivation.core_quiver
    try:
        core_relations = random_relations(core, draw(st.integers(1, 2)), seed=draw(st.integers(0, 10**6)))
    except FamilyError:
        assume(False)
    return quiver, core, core_relations


@settings(max_examples=20, deadline=None)
@given(armed_trees_with_core_relations())
def test_relations_inside_the_core_keep_its_dimension(instance):
    quiver, core, core_relations = instance
    assert (
        dominant_dimension_algebra(quiver, core_relations).value
        == dominant_dimension_algebra(core, core_relations).value
    )


@settings(max_examples=20, deadline=None)
@given(armed_trees_with_core_relations(), st.data())
def test_zero_core_dimension_survives_relations_on_the_arms(instance, data):
    quiver, core, core_relations = instance
    on_arms = [
        path.arrows
        for path in enumerate_paths(quiver)
        if path.length >= 2 and not all(core.has_arrow(a) for a in path.arrows)
    ]
    assume(on_arms)
    extra = data.draw(st.lists(st.sampled_from(on_arms), min_size=1, max_size=2))
    relations = RelationSet(tuple(core_relations) + tuple(extra))
    assume(len(relations) > len(core_relations))
    assert set(derive_core(quiver, relations).core_relations) == set(core_relations)
    assume(dominant_dimension_algebra(core, core_relations).value == 0)
    assert dominant_dimension_algebra(quiver, relations).value == 0
