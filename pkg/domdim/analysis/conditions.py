"""Combinatorial conditions on relation sets of trees, with failure witnesses."""

from __future__ import annotations

from dataclasses import dataclass, field

from domdim.algebra.bound import BoundQuiverAlgebra, EngineConfig
from domdim.algebra.representation import is_uniserial, socle, top
from domdim.quiver.arms import CoreDerivation, arms, derive_core
from domdim.quiver.core import Quiver, RelationSet, ValidationError, validate


@dataclass(frozen=True)
class Witness:
    """Where a clause fails: a vertex, the module inspected and the offending part."""

    vertex: str | None
    module: str
    summand: str | None = None
    detail: str = ""

    def to_dict(self) -> dict:
        return {"vertex": self.vertex, "module": self.module, "summand": self.summand, "detail": self.detail}

    def __str__(self) -> str:
        where = f" at {self.vertex}" if self.vertex is not None else ""
        part = f" ({self.summand})" if self.summand else ""
        return f"{self.module}{part}{where}: {self.detail}"


@dataclass(frozen=True)
class ClauseResult:
    clause: str
    witnesses: tuple[Witness, ...] = ()
    description: str = ""

    @property
    def passed(self) -> bool:
        return not self.witnesses

    def to_dict(self) -> dict:
        return {
            "clause": self.clause,
            "passed": self.passed,
            "witnesses": [w.to_dict() for w in self.witnesses],
        }


@dataclass(frozen=True)
class ConditionReport:
    """Clause results for the single-star conditions, and for the double-star ones on armed trees."""

    star: tuple[ClauseResult, ...]
    doublestar: tuple[ClauseResult, ...] = ()
    hypothesis: ClauseResult | None = None
    inner_vertices: tuple[str, ...] = field(default=())

    @property
    def star_holds(self) -> bool:
        return all(c.passed for c in self.star)

    @property
    def doublestar_holds(self) -> bool:
        return bool(self.doublestar) and all(c.passed for c in self.doublestar)

    @property
    def hypothesis_holds(self) -> bool:
        return self.hypothesis is None or self.hypothesis.passed

    def holds(self) -> bool:
        """Whether the conditions that apply to this tree are met."""
        return self.doublestar_holds if self.doublestar else self.star_holds

    def failures(self) -> list[Witness]:
        clauses = self.doublestar or self.star
        return [w for c in clauses for w in c.witnesses]

    def to_dict(self) -> dict:
        return {
            "star": [c.to_dict() for c in self.star],
            "doublestar": [c.to_dict() for c in self.doublestar],
            "hypothesis_RcapS": None if self.hypothesis is None else self.hypothesis.to_dict(),
            "inner_vertices": list(self.inner_vertices),
        }


def _star_clauses(algebra: BoundQuiverAlgebra, label: str = "star") -> tuple[ClauseResult, ...]:
    info = algebra.info
    sources, sinks = set(info.sources), set(info.sinks)

    uniserial = []
    for a in info.sources:
        if not is_uniserial(algebra.projective(a)):
            uniserial.append(Witness(a, f"P({a})", None, "projective at a source is not uniserial"))
    for c in info.sinks:
        if not is_uniserial(algebra.injective(c)):
            uniserial.append(Witness(c, f"I({c})", None, "injective at a sink is not uniserial"))

    socles = []
    tops = []
    for i in algebra.quiver.vertices:
        for c in socle(algebra.projective(i))[0].support:
            if c not in sinks:
                socles.append(Witness(i, f"soc P({i})", f"S({c})", f"{c} is not a sink"))
        for a in top(algebra.injective(i)).support:
            if a not in sources:
                tops.append(Witness(i, f"top I({i})", f"S({a})", f"{a} is not a source"))

    return (
        ClauseResult(f"{label}.i", tuple(uniserial), "P(source) and I(sink) uniserial"),
        ClauseResult(f"{label}.ii", tuple(socles), "socles of projectives supported on sinks"),
        ClauseResult(f"{label}.iii", tuple(tops), "tops of injectives supported on sources"),
    )


def check_conditions_star(
    quiver: Quiver, relations: RelationSet, *, config: EngineConfig | None = None
) -> ConditionReport:
    """Evaluate the single-star conditions on a tree without non-trivial arms.

    Parameters
    ----------
    quiver:
        A tree with a branching vertex whose arms are all single vertices.
    relations:
        Monomial relations on ``quiver``.

    Returns
    -------
    ConditionReport
        Clauses ``star.i`` (uniserial end modules), ``star.ii`` (socles on
        sinks) and ``star.iii`` (tops on sources), each with witnesses.
    """
    if not arms(quiver).without_arms:
        raise ValidationError(f"{quiver.name} has non-trivial arms; check the double-star conditions")
    algebra = BoundQuiverAlgebra(quiver, relations, config=config)
    return ConditionReport(star=_star_clauses(algebra))


def _hypothesis(relations: RelationSet, derivation: CoreDerivation, core_relations: RelationSet) -> ClauseResult:
    inside = set(relations.restricted_to(derivation.core_quiver))
    given = set(core_relations)
    witnesses = [
        Witness(None, "R", " ".join(rel), "core relation missing from R")
        for rel in core_relations
        if rel not in set(relations)
    ]
    witnesses += [
        Witness(None, "R", " ".join(rel), "relation of R inside the core but not in R'")
        for rel in sorted(inside - given)
    ]
    return ClauseResult("hypothesis", tuple(witnesses), "R' contained in R and R meets the core in R'")


def check_conditions_doublestar(
    quiver: Quiver,
    relations: RelationSet,
    *,
    config: EngineConfig | None = None,
    core_relations: RelationSet | None = None,
) -> ConditionReport:
    """Evaluate the double-star conditions on a tree with non-trivial arms.

    The core and its relations come from :func:`derive_core` unless
    ``core_relations`` overrides them.
    """
    derivation = derive_core(quiver, relations)
    if derivation.identity:
        raise ValidationError(f"{quiver.name} has no non-trivial arms; check the single-star conditions")
    core_relations = derivation.core_relations if core_relations is None else core_relations
    core_relations.check(derivation.core_quiver)

    hypothesis = _hypothesis(relations, derivation, core_relations)
    core_algebra = BoundQuiverAlgebra(derivation.core_quiver, core_relations, config=config)
    star = _star_clauses(core_algebra)
    inner = derivation.inner_vertices

    algebra = BoundQuiverAlgebra(quiver, relations, config=config)
    decomposition = derivation.decomposition

    left = []
    for i in decomposition.left_vertices():
        profile = socle(algebra.projective(i))[0]
        vertex = profile.simple_vertex()
        if vertex is None:
            left.append(Witness(i, f"soc P({i})", str(profile), "socle is not simple"))
        elif vertex in inner:
            left.append(Witness(i, f"soc P({i})", f"S({vertex})", f"{vertex} is an inner core vertex"))

    right = []
    for j in decomposition.right_vertices():
        profile = top(algebra.injective(j))
        vertex = profile.simple_vertex()
        if vertex is None:
            right.append(Witness(j, f"top I({j})", str(profile), "top is not simple"))
        elif vertex in inner:
            right.append(Witness(j, f"top I({j})", f"S({vertex})", f"{vertex} is an inner core vertex"))

    core_witnesses = tuple(w for clause in star for w in clause.witnesses)
    doublestar = (
        ClauseResult("doublestar.i", core_witnesses, "core relations satisfy the single-star conditions"),
        ClauseResult("doublestar.ii", tuple(left), "left-arm socles simple and outside the inner core"),
        ClauseResult("doublestar.iii", tuple(right), "right-arm tops simple and outside the inner core"),
    )
    return ConditionReport(
        star=star,
        doublestar=doublestar,
        hypothesis=hypothesis,
        inner_vertices=tuple(v for v in derivation.core_quiver.vertices if v in inner),
    )


def check_conditions(
    quiver: Quiver, relations: RelationSet, *, config: EngineConfig | None = None
) -> ConditionReport:
    """Dispatch to the single- or double-star check depending on the arms of ``quiver``."""
    info = validate(quiver, relations)
    if not info.is_tree or info.is_linear_An:
        raise ValidationError(f"{quiver.name} is not a tree with a branching vertex")
    if arms(quiver).without_arms:
        return check_conditions_star(quiver, relations, config=config)
    return check_conditions_doublestar(quiver, relations, config=config)
