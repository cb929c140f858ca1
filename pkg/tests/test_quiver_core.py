from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from domdim.quiver.core import (
    Arrow,
    Quiver,
    RelationSet,
    ValidationError,
    degenerate_branching,
    enumerate_paths,
    longest_paths,
    normalize_relations,
    validate,
)
from domdim.quiver.families import disjoint, linear_quiver
from tests.conftest import build


def test_duplicate_vertex_rejected():
    with pytest.raises(ValidationError, match="Duplicate vertex"):
        Quiver("q", ("1", "1"))


def test_arrow_to_unknown_vertex_rejected():
    with pytest.raises(ValidationError, match="unknown vertices"):
        Quiver("q", ("1",), (Arrow("a", "1", "2"),))


def test_disconnected_quiver_reports_components():
    quiver, _ = build("split", [("a", "1", "2"), ("b", "3", "4")])
    with pytest.raises(ValidationError, match="disconnected: 2 components") as info:
        validate(quiver)
    assert info.value.components == (("1", "2"), ("3", "4"))


def test_cycle_reports_witness():
    quiver, _ = build("loop", [("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1")])
    with pytest.raises(ValidationError, match="cycle detected") as info:
        validate(quiver)
    witness = info.value.cycle
    assert witness[0] == witness[-1]
    assert set(witness) == {"1", "2", "3"}


def test_relation_of_length_one_rejected():
    with pytest.raises(ValidationError, match="relation length < 2"):
        RelationSet((("a",),))


def test_relation_must_be_a_path():
    quiver, relations = build("q", [("a", "1", "2"), ("b", "3", "2")], relations=[("a", "b")])
    with pytest.raises(ValidationError, match="do not compose"):
        validate(quiver, relations)


def test_normalize_drops_duplicates_and_longer_generators():
    normalized = normalize_relations([("a", "b"), ("a", "b"), ("a", "b", "c"), ("b", "c")])
    assert normalized == (("a", "b"), ("b", "c"))


def test_classification_of_branching_tree(corpus):
    document = corpus("long_relation_arm")
    info = validate(document.quiver, document.relations)
    assert info.is_tree and not info.is_linear_An
    assert info.sources == ("1", "2")
    assert info.sinks == ("4", "6")
    assert [(b.vertex, b.in_degree, b.out_degree) for b in info.branching_vertices] == [("3", 2, 2)]


def test_linear_quiver_is_linear():
    info = validate(linear_quiver(5))
    assert info.is_linear_An
    assert info.sources == ("1",) and info.sinks == ("5",)


def test_single_vertex_is_linear():
    assert validate(Quiver("point", ("1",))).is_linear_An


def test_degenerate_branching_finds_multi_source():
    quiver, _ = build("fork", [("a", "1", "2"), ("b", "1", "3"), ("c", "3", "4")])
    assert [b.vertex for b in degenerate_branching(quiver)] == ["1"]


def test_degenerate_branching_ignores_through_vertices(corpus):
    assert degenerate_branching(corpus("long_relation_arm").quiver) == ()


def test_longest_path_of_two_branch_tree(corpus):
    (path,) = longest_paths(corpus("inner_socle_arms").quiver)
    assert path.vertices == ("1", "2", "4", "5", "6", "7", "8")
    assert path.length == 6


def test_relation_endpoints_and_free_vertices():
    quiver, relations = disjoint(7, [(1, 2), (3, 2), (5, 2)])
    assert relations.sources(quiver) == ("1", "3", "5")
    assert relations.targets(quiver) == ("3", "5", "7")
    assert relations.free_vertices(quiver) == ("2", "4", "6")


def test_path_label_and_contains():
    quiver = linear_quiver(4)
    path = quiver.path(["a1", "a2", "a3"])
    assert path.label() == "1->2->3->4"
    assert quiver.trivial_path("2").label() == "e2"
    assert path.contains(["a2", "a3"])
    assert not path.contains(["a1", "a3"])


@settings(max_examples=20, deadline=None)
@given(st.integers(min_value=1, max_value=9))
def test_linear_path_count(n):
    assert len(enumerate_paths(linear_quiver(n))) == n * (n + 1) // 2
