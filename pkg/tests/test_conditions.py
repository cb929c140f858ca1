from __future__ import annotations

import pytest

from domdim.analysis.conditions import (
    check_conditions,
    check_conditions_doublestar,
    check_conditions_star,
)
from domdim.quiver.core import RelationSet, ValidationError


def witnesses(report, clause):
    (result,) = [c for c in report.doublestar + report.star if c.clause == clause]
    return [(w.vertex, w.summand) for w in result.witnesses]


def test_core_relations_satisfy_star(corpus):
    document = corpus("long_relation_core")
    report = check_conditions_star(document.quiver, document.relations)
    assert report.holds()
    assert report.failures() == []


def test_reverse_example_fails_socle_clause(corpus):
    document = corpus("reverse_star")
    report = check_conditions_star(document.quiver, document.relations)
    assert not report.holds()
    assert ("2", "S(5)") in witnesses(report, "star.ii")


def test_long_relation_fails_right_arm_clause(corpus):
    document = corpus("long_relation_arm")
    report = check_conditions_doublestar(document.quiver, document.relations)
    assert report.hypothesis_holds
    assert report.star_holds
    assert witnesses(report, "doublestar.i") == []
    assert witnesses(report, "doublestar.ii") == []
    assert witnesses(report, "doublestar.iii") == [("6", "S(3)")]
    assert report.inner_vertices == ("3",)
    assert not report.holds()


def test_inner_socle_fails_left_arm_clause(corpus):
    document = corpus("inner_socle_arms")
    report = check_conditions_doublestar(document.quiver, document.relations)
    assert report.hypothesis_holds
    assert ("1", "S(5)") in witnesses(report, "doublestar.ii")
    assert set(report.inner_vertices) == {"4", "5", "6"}
    assert not report.holds()


def test_armed_tree_meeting_every_condition(corpus):
    document = corpus("arms_positive")
    report = check_conditions(document.quiver, document.relations)
    assert report.doublestar
    assert report.holds()


def test_dispatch_picks_single_star(corpus):
    document = corpus("reverse_star")
    report = check_conditions(document.quiver, document.relations)
    assert report.doublestar == ()
    assert report.hypothesis is None


def test_single_star_rejects_armed_tree(corpus):
    document = corpus("long_relation_arm")
    with pytest.raises(ValidationError, match="non-trivial arms"):
        check_conditions_star(document.quiver, document.relations)


def test_double_star_rejects_tree_without_arms(corpus):
    document = corpus("long_relation_core")
    with pytest.raises(ValidationError, match="no non-trivial arms"):
        check_conditions_doublestar(document.quiver, document.relations)


def test_overridden_core_relations_break_hypothesis(corpus):
    document = corpus("long_relation_arm")
    report = check_conditions_doublestar(
        document.quiver, document.relations, core_relations=RelationSet((("a", "t"),))
    )
    assert not report.hypothesis_holds
    (witness,) = report.hypothesis.witnesses
    assert witness.summand == "d b"


def test_report_serializes(corpus):
    document = corpus("inner_socle_arms")
    data = check_conditions(document.quiver, document.relations).to_dict()
    assert [c["clause"] for c in data["doublestar"]] == ["doublestar.i", "doublestar.ii", "doublestar.iii"]
    assert data["hypothesis_RcapS"]["passed"] is True


def test_linear_quiver_is_not_checked(corpus):
    document = corpus("truncated_4_3")
    with pytest.raises(ValidationError, match="branching vertex"):
        check_conditions(document.quiver, document.relations)
