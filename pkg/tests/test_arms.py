from __future__ import annotations

import pytest

from domdim.quiver.arms import arms, derive_core
from domdim.quiver.core import ValidationError
from domdim.quiver.families import linear_quiver
from tests.conftest import build


def test_branching_tree_without_arms(corpus):
    decomposition = arms(corpus("branch_no_arms").quiver)
    assert decomposition.without_arms
    assert decomposition.left_vertices() == ("1", "2")
    assert decomposition.right_vertices() == ("4", "5")


def test_branching_tree_with_two_arms(corpus):
    decomposition = arms(corpus("branch_with_arms").quiver)
    assert not decomposition.without_arms
    long_left = [arm.vertices for arm in decomposition.left_arms if not arm.trivial]
    long_right = [arm.vertices for arm in decomposition.right_arms if not arm.trivial]
    assert long_left == [("a", "1")]
    assert long_right == [("5", "b")]


def test_single_right_arm(corpus):
    decomposition = arms(corpus("long_relation_arm").quiver)
    assert [a.vertices for a in decomposition.left_arms] == [("1",), ("2",)]
    assert [a.vertices for a in decomposition.right_arms] == [("4",), ("5", "6")]
    assert all(arm.branching == "3" for arm in decomposition.all_arms)


def test_two_branching_vertices(corpus):
    decomposition = arms(corpus("inner_socle_arms").quiver)
    assert [a.vertices for a in decomposition.left_arms] == [("1", "2"), ("3",)]
    assert [a.vertices for a in decomposition.right_arms] == [("7", "8"), ("9",)]
    assert [a.branching for a in decomposition.left_arms] == ["4", "4"]
    assert [a.branching for a in decomposition.right_arms] == ["6", "6"]


def test_core_of_single_arm_tree(corpus):
    document = corpus("long_relation_arm")
    derivation = derive_core(document.quiver, document.relations)
    assert derivation.core_quiver.vertices == ("1", "2", "3", "4", "5")
    assert list(derivation.core_relations) == [("a", "t"), ("d", "b")]
    assert derivation.inner_vertices == frozenset({"3"})
    assert not derivation.identity


def test_core_of_two_branch_tree(corpus):
    document = corpus("inner_socle_arms")
    derivation = derive_core(document.quiver, document.relations)
    assert derivation.core_quiver.vertices == ("2", "3", "4", "5", "6", "7", "9")
    assert derivation.inner_vertices == frozenset({"4", "5", "6"})
    assert list(derivation.core_relations) == [("a2", "a4", "a5", "b6"), ("a3", "a4", "a5", "a6")]


def test_core_matches_hand_written_core_file(corpus):
    full = corpus("long_relation_arm")
    core = corpus("long_relation_core")
    derivation = derive_core(full.quiver, full.relations)
    assert derivation.core_quiver.vertices == core.quiver.vertices
    assert derivation.core_quiver.arrows == core.quiver.arrows
    assert derivation.core_relations == core.relations


def test_tree_without_arms_is_its_own_core(corpus):
    document = corpus("reverse_star")
    derivation = derive_core(document.quiver, document.relations)
    assert derivation.identity
    assert derivation.core_quiver is document.quiver
    assert derivation.inner_vertices == frozenset({"2", "5"})


def test_linear_quiver_has_no_arms():
    with pytest.raises(ValidationError, match="linearly oriented"):
        arms(linear_quiver(4))


def test_non_tree_has_no_arms():
    quiver, _ = build("diamond", [("a", "1", "2"), ("b", "1", "3"), ("c", "2", "4"), ("d", "3", "4")])
    with pytest.raises(ValidationError, match="trees only"):
        arms(quiver)
