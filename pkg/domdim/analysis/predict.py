"""Closed-form dominant dimension predictions and their reconciliation with the engine."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Any

from domdim.algebra.bound import BoundQuiverAlgebra, EngineConfig
from domdim.algebra.resolution import INFINITY, format_value
from domdim.analysis.conditions import check_conditions_doublestar, check_conditions_star
from domdim.quiver.arms import derive_core
from domdim.quiver.core import Quiver, RelationSet, degenerate_branching, validate

logger = logging.getLogger(__name__)

EXACT = "exact"
INTERVAL = "interval"
INFINITE = "infinity"

AGREE = "agree"
WITHIN = "within-interval"
MISMATCH = "MISMATCH"


@dataclass(frozen=True)
class Prediction:
    """A theorem-attributed value or range for the dominant dimension."""

    kind: str
    theorem: str
    value: int | None = None
    lo: int | None = None
    hi: int | None = None
    evidence: dict[str, Any] = field(default_factory=dict)
    notes: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.kind == INTERVAL and (self.lo is None or self.hi is None or self.lo > self.hi):
            raise ValueError(f"Invalid interval [{self.lo}, {self.hi}]")
        if self.kind == EXACT and (self.value is None or self.value < 0):
            raise ValueError(f"Invalid exact value {self.value}")

    @classmethod
    def exact(cls, value: int, theorem: str, evidence: dict | None = None, notes: tuple[str, ...] = ()) -> Prediction:
        return cls(EXACT, theorem, value=value, lo=value, hi=value, evidence=evidence or {}, notes=notes)

    @classmethod
    def interval(
        cls, lo: int, hi: int, theorem: str, evidence: dict | None = None, notes: tuple[str, ...] = ()
    ) -> Prediction:
        return cls(INTERVAL, theorem, lo=lo, hi=hi, evidence=evidence or {}, notes=notes)

    @classmethod
    def infinity(cls, theorem: str, evidence: dict | None = None, notes: tuple[str, ...] = ()) -> Prediction:
        return cls(INFINITE, theorem, evidence=evidence or {}, notes=notes)

    def contains(self, value: float | int) -> bool:
        if self.kind == INFINITE:
            return value == INFINITY
        if value == INFINITY:
            return False
        return self.lo <= value <= self.hi

    def describe(self) -> str:
        if self.kind == EXACT:
            return str(self.value)
        if self.kind == INFINITE:
            return "infinity"
        return f"[{self.lo}, {self.hi}]"

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "theorem": self.theorem,
            "value": self.value if self.kind == EXACT else ("infinity" if self.kind == INFINITE else None),
            "interval": [self.lo, self.hi] if self.kind == INTERVAL else None,
            "evidence": self.evidence,
            "notes": list(self.notes),
        }


class ScopeError(ValueError):
    """The quiver lies outside every closed-form result; ``fallback`` holds the generic bound."""

    def __init__(self, message: str, fallback: Prediction | None = None) -> None:
        super().__init__(message)
        self.fallback = fallback


def generic_bound(quiver: Quiver, relations: RelationSet, *, config: EngineConfig | None = None) -> Prediction:
    """``dom.dim A <= d <= n - 1`` with ``d`` the number of projective-injective indecomposables."""
    algebra = BoundQuiverAlgebra(quiver, relations, config=config)
    n = algebra.vertex_count
    if n == 1:
        return Prediction.infinity("projective-injective-bound", notes=("one vertex: the field is self-injective",))
    pairs = algebra.projective_injectives()
    return Prediction.interval(
        0,
        min(len(pairs), n - 1),
        "projective-injective-bound",
        evidence={"projective_injectives": [list(p) for p in pairs]},
    )


def predict_hereditary(quiver: Quiver) -> Prediction:
    """1 for linearly oriented quivers, 0 for every other connected acyclic quiver."""
    info = validate(quiver)
    if len(quiver.vertices) == 1:
        return Prediction.infinity(
            "hereditary-dichotomy",
            notes=("outside theorem scope (n = 1): the algebra is the field, which is self-injective",),
        )
    if info.is_linear_An:
        return Prediction.exact(1, "hereditary-dichotomy", {"linear": True})
    return Prediction.exact(
        0,
        "hereditary-dichotomy",
        {"linear": False, "branching": [b.vertex for b in info.branching_vertices]},
    )


def linear_order(quiver: Quiver) -> list[str]:
    """Vertices of a linearly oriented quiver from its source to its sink."""
    info = validate(quiver)
    if not info.is_linear_An:
        raise ValueError(f"{quiver.name} is not linearly oriented")
    chain = [info.sources[0]]
    while quiver.outgoing(chain[-1]):
        chain.append(quiver.outgoing(chain[-1])[0].target)
    return chain


def truncated_formula(n: int, m: int) -> int:
    """Dominant dimension of the linear quiver on ``n`` vertices modulo all paths of length ``m``.

    With ``n = q*m + j`` and ``j`` in ``1..m``::

        m = 2            ->  n - 1
        j <= m - 2       ->  (2n - (m + 2j)) / m
        j == m - 1       ->  (2n - 2j) / m
        j == m           ->  (2n - j) / m
    """
    if n < 3 or not 2 <= m <= n - 1:
        raise ValueError(f"truncated formula needs n >= 3 and 2 <= m <= n-1, got n={n}, m={m}")
    if m == 2:
        return n - 1
    j = (n - 1) % m + 1
    if j <= m - 2:
        numerator = 2 * n - (m + 2 * j)
    elif j == m - 1:
        numerator = 2 * n - 2 * j
    else:
        numerator = 2 * n - j
    value, remainder = divmod(numerator, m)
    if remainder:
        raise ArithmeticError(f"non-integral formula value for n={n}, m={m}")
    return value


def _truncation_length(chain: list[str], quiver: Quiver, relations: RelationSet) -> int | None:
    """``m`` when ``relations`` are exactly the paths of length ``m`` of the chain."""
    lengths = {len(rel) for rel in relations}
    if len(lengths) != 1:
        return None
    m = lengths.pop()
    labels = [quiver.outgoing(v)[0].label for v in chain[:-1]]
    expected = {tuple(labels[s : s + m]) for s in range(len(labels) - m + 1)}
    return m if set(relations) == expected else None


def predict_An_quotient(
    quiver: Quiver, relations: RelationSet, *, config: EngineConfig | None = None
) -> Prediction:
    """Sharpest closed form for a quotient of the linear quiver by monomial relations.

    Priority: free end vertex, free neighbour pair, truncation formula, free
    vertex, then the general bounds ``[1, n - 1]``.
    """
    info = validate(quiver, relations)
    if not info.is_linear_An:
        raise ScopeError(f"{quiver.name} is not linearly oriented", generic_bound(quiver, relations, config=config))
    n = len(quiver.vertices)
    if n < 3 or not relations:
        raise ScopeError(
            f"{quiver.name} needs n >= 3 and at least one relation", generic_bound(quiver, relations, config=config)
        )

    chain = linear_order(quiver)
    starts = set(relations.sources(quiver))
    ends = set(relations.targets(quiver))
    evidence: dict[str, Any] = {"relation_sources": relations.sources(quiver), "relation_targets": relations.targets(quiver)}

    if chain[0] not in starts or chain[-1] not in ends:
        free = chain[0] if chain[0] not in starts else chain[-1]
        return Prediction.exact(1, "linear-free-endpoint", {**evidence, "free_endpoint": free})

    for a, successor in zip(chain, chain[1:]):
        if a not in starts and successor not in ends:
            return Prediction.exact(1, "linear-free-neighbours", {**evidence, "vertex": a, "successor": successor})

    m = _truncation_length(chain, quiver, relations)
    if m is not None:
        return Prediction.exact(truncated_formula(n, m), "linear-truncated-formula", {**evidence, "n": n, "m": m})

    free_vertices = relations.free_vertices(quiver)
    if free_vertices:
        return Prediction.interval(1, 2, "linear-free-vertex-bound", {**evidence, "free_vertices": list(free_vertices)})
    return Prediction.interval(1, n - 1, "linear-quotient-bounds", evidence)


def predict_tree(
    quiver: Quiver,
    relations: RelationSet,
    *,
    config: EngineConfig | None = None,
    core_relations: RelationSet | None = None,
) -> Prediction:
    """0/1 dichotomy for non-linear trees via the degenerate-branching screen and the arm conditions.

    ``core_relations`` replaces the relations derived on the arm-free core. When
    ``relations`` does not meet the core in exactly those, no closed form applies
    and the prediction widens to ``[0, 1]``.
    """
    info = validate(quiver, relations)
    if not info.is_tree or info.is_linear_An:
        raise ScopeError(
            f"{quiver.name} is not a non-linear tree", generic_bound(quiver, relations, config=config)
        )

    degenerate = degenerate_branching(quiver)
    if degenerate:
        return Prediction.exact(
            0,
            "tree-degenerate-branching",
            {"branching": [[b.vertex, b.in_degree, b.out_degree] for b in degenerate]},
        )

    derivation = derive_core(quiver, relations)
    if derivation.identity:
        if core_relations is not None:
            logger.warning("%s has no non-trivial arms; core relations ignored", quiver.name)
        report = check_conditions_star(quiver, relations, config=config)
        evidence = {"conditions": report.to_dict(), "failures": [str(w) for w in report.failures()]}
        return Prediction.exact(1 if report.holds() else 0, "tree-single-star", evidence)

    if core_relations is None:
        core_relations = derivation.core_relations
    report = check_conditions_doublestar(quiver, relations, config=config, core_relations=core_relations)
    evidence = {
        "core_vertices": list(derivation.core_quiver.vertices),
        "core_relations": [list(rel) for rel in core_relations],
        "conditions": report.to_dict(),
        "failures": [str(w) for w in report.failures()],
    }
    if not report.hypothesis_holds:
        return Prediction.interval(
            0, 1, "tree-hypothesis-unmet", evidence, notes=("R does not meet the core in R'; theorem silent",)
        )
    return Prediction.exact(1 if report.holds() else 0, "tree-double-star", evidence)


def predict(
    quiver: Quiver,
    relations: RelationSet,
    *,
    config: EngineConfig | None = None,
    core_relations: RelationSet | None = None,
) -> Prediction:
    """Route to the closed form that covers ``quiver``; raise ``ScopeError`` if none does."""
    info = validate(quiver, relations)
    if len(quiver.vertices) == 1 or not relations:
        return predict_hereditary(quiver)
    if info.is_linear_An:
        return predict_An_quotient(quiver, relations, config=config)
    if info.is_tree:
        return predict_tree(quiver, relations, config=config, core_relations=core_relations)
    raise ScopeError(
        f"{quiver.name} is neither hereditary, linear nor a tree",
        generic_bound(quiver, relations, config=config),
    )


@dataclass(frozen=True)
class Verdict:
    status: str
    prediction: Prediction
    engine_value: float | int
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.status != MISMATCH

    def to_dict(self) -> dict:
        report = {"status": self.status, "engine": format_value(self.engine_value), "predicted": self.prediction.describe()}
        if self.detail:
            report["detail"] = self.detail
        if self.status == MISMATCH:
            report["prediction"] = self.prediction.to_dict()
        return report


def reconcile(prediction: Prediction, engine_value: float | int) -> Verdict:
    """Compare a prediction with the engine: agree, within-interval or MISMATCH."""
    if prediction.contains(engine_value):
        status = WITHIN if prediction.kind == INTERVAL and prediction.lo != prediction.hi else AGREE
        return Verdict(status, prediction, engine_value)
    detail = (
        f"{prediction.theorem} predicts {prediction.describe()}, engine computed "
        f"{'infinity' if math.isinf(engine_value) else int(engine_value)}"
    )
    logger.error("mismatch: %s", detail)
    return Verdict(MISMATCH, prediction, engine_value, detail)
