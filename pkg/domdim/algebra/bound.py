"""Bound quiver algebras KQ/I with monomial I and their indecomposable modules."""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from functools import cached_property

from sympy.polys.matrices import DomainMatrix

from domdim.algebra import linalg
from domdim.algebra.paths import PathBasis
from domdim.algebra.representation import (
    ModuleMap,
    Representation,
    ResolutionError,
    are_isomorphic,
    direct_sum,
    is_uniserial,
    socle_basis,
    top,
    zero_module,
)
from domdim.field import RATIONAL, FieldSpec
from domdim.quiver.core import Path, Quiver, QuiverClass, RelationSet, validate

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EngineConfig:
    """Engine settings; ``max_steps=None`` caps resolutions at ``n + 2`` terms."""

    field: FieldSpec = RATIONAL
    max_steps: int | None = None
    seed: int = 0
    iso_retries: int = 8

    def __post_init__(self) -> None:
        if self.max_steps is not None and self.max_steps < 1:
            raise ValueError(f"max_steps must be >= 1, got {self.max_steps}")
        if self.iso_retries < 0:
            raise ValueError(f"iso_retries must be >= 0, got {self.iso_retries}")

    def cap(self, vertex_count: int) -> int:
        return self.max_steps if self.max_steps is not None else vertex_count + 2


def _engine_config(config: EngineConfig | None = None, **overrides) -> EngineConfig:
    base = config or EngineConfig()
    return replace(base, **overrides) if overrides else base


@dataclass(frozen=True)
class EnvelopeSummand:
    vertex: str
    multiplicity: int


@dataclass(frozen=True, eq=False)
class InjectiveEnvelope:
    """``module`` embedded in the direct sum of the listed indecomposable injectives."""

    summands: tuple[EnvelopeSummand, ...]
    module: Representation
    inclusion: ModuleMap

    @property
    def is_zero(self) -> bool:
        return not self.summands


class BoundQuiverAlgebra:
    """Algebra context: path basis plus cached simple, projective and injective modules."""

    def __init__(
        self,
        quiver: Quiver,
        relations: RelationSet | None = None,
        *,
        config: EngineConfig | None = None,
    ) -> None:
        self.quiver = quiver
        self.relations = relations or RelationSet()
        self.config = _engine_config(config)
        self.info: QuiverClass = validate(quiver, self.relations)
        self.basis = PathBasis(quiver, self.relations)
        self.domain = self.config.field.domain
        self._projectives: dict[str, Representation] = {}
        self._injectives: dict[str, Representation] = {}
        self._partners: dict[str, str | None] = {}

    def __repr__(self) -> str:
        return f"BoundQuiverAlgebra({self.quiver.name}, relations={list(self.relations)})"

    @property
    def vertex_count(self) -> int:
        return len(self.quiver.vertices)

    @property
    def resolution_cap(self) -> int:
        return self.config.cap(self.vertex_count)

    def simple(self, vertex: str) -> Representation:
        self.quiver.order(vertex)
        return Representation(
            self.quiver, self.relations, self.domain, {vertex: 1}, {}, {vertex: (f"e{vertex}",)}, f"S({vertex})"
        )

    def _path_module(self, paths: list[Path], placed_at: str, name: str) -> tuple[dict, dict]:
        grouped: dict[str, list[Path]] = {v: [] for v in self.quiver.vertices}
        for path in paths:
            grouped[getattr(path, placed_at)].append(path)
        dims = {v: len(ps) for v, ps in grouped.items()}
        labels = {v: tuple(p.label() for p in ps) for v, ps in grouped.items()}
        return grouped, {"dims": dims, "labels": labels, "name": name}

    def projective(self, vertex: str) -> Representation:
        """P(i): nonzero paths from ``i`` placed at their targets; arrows append."""
        if vertex not in self._projectives:
            grouped, meta = self._path_module(self.basis.nonzero_paths_from(vertex), "target", f"P({vertex})")
            index = {p.arrows: k for ps in grouped.values() for k, p in enumerate(ps)}
            maps = {}
            for arrow in self.quiver.arrows:
                rows = [[0] * len(grouped[arrow.source]) for _ in grouped[arrow.target]]
                for col, path in enumerate(grouped[arrow.source]):
                    extended = path.arrows + (arrow.label,)
                    if self.basis.is_nonzero(extended):
                        rows[index[extended]][col] = 1
                maps[arrow.label] = linalg.matrix(
                    rows, (len(grouped[arrow.target]), len(grouped[arrow.source])), self.domain
                )
            self._projectives[vertex] = Representation(
                self.quiver, self.relations, self.domain, meta["dims"], maps, meta["labels"], meta["name"]
            )
        return self._projectives[vertex]

    def injective(self, vertex: str) -> Representation:
        """I(j): nonzero paths into ``j`` placed at their sources; arrows strip a leading arrow."""
        if vertex not in self._injectives:
            grouped, meta = self._path_module(self.basis.nonzero_paths_into(vertex), "source", f"I({vertex})")
            index = {p.arrows: k for ps in grouped.values() for k, p in enumerate(ps)}
            maps = {}
            for arrow in self.quiver.arrows:
                rows = [[0] * len(grouped[arrow.source]) for _ in grouped[arrow.target]]
                for col, path in enumerate(grouped[arrow.source]):
                    if path.arrows[:1] == (arrow.label,):
                        rows[index[path.arrows[1:]]][col] = 1
                maps[arrow.label] = linalg.matrix(
                    rows, (len(grouped[arrow.target]), len(grouped[arrow.source])), self.domain
                )
            self._injectives[vertex] = Representation(
                self.quiver, self.relations, self.domain, meta["dims"], maps, meta["labels"], meta["name"]
            )
        return self._injectives[vertex]

    def regular_module(self) -> Representation:
        return direct_sum([self.projective(v) for v in self.quiver.vertices], name="A")

    def zero_module(self) -> Representation:
        return zero_module(self.quiver, self.relations, self.domain)

    def _functional_component(self, module: Representation, phi: DomainMatrix, vertex: str, at: str) -> DomainMatrix:
        """Component at ``at`` of the map ``module -> I(vertex)`` induced by ``phi`` on ``module_vertex``."""
        paths = [p for p in self.basis.nonzero_paths_into(vertex) if p.source == at]
        rows = [linalg.rows_of(linalg.matmul(phi, module.path_matrix(p)))[0] for p in paths]
        return linalg.matrix(rows, (len(paths), module.dims[at]), self.domain)

    def injective_envelope(self, module: Representation) -> InjectiveEnvelope:
        """Embed ``module`` into the sum of I(v) over a socle basis.

        Each socle basis vector at ``v`` has a dual functional on ``module_v``
        vanishing on a fixed complement; it induces ``module -> I(v)``.
        """
        if module.is_zero:
            zero = self.zero_module()
            empty = {v: linalg.zeros(0, 0, self.domain) for v in self.quiver.vertices}
            return InjectiveEnvelope((), zero, ModuleMap(module, zero, empty))

        socle = socle_basis(module)
        summands: list[EnvelopeSummand] = []
        copies: list[Representation] = []
        blocks: dict[str, list[DomainMatrix]] = {u: [] for u in self.quiver.vertices}
        for v in self.quiver.vertices:
            functionals = linalg.dual_functionals(socle[v])
            count = functionals.shape[0]
            if not count:
                continue
            summands.append(EnvelopeSummand(v, count))
            for t in range(count):
                phi = linalg.select_rows(functionals, [t])
                copies.append(self.injective(v))
                for u in self.quiver.vertices:
                    blocks[u].append(self._functional_component(module, phi, v, u))

        envelope = direct_sum(copies, name="+".join(f"I({s.vertex})^{s.multiplicity}" for s in summands))
        inclusion = ModuleMap(
            module,
            envelope,
            {u: linalg.vstack(*blocks[u], cols=module.dims[u], domain=self.domain) for u in self.quiver.vertices},
        )
        if not inclusion.is_injective():
            raise ResolutionError(f"Envelope inclusion of {module.name} is not injective")
        if not inclusion.is_intertwining():
            raise ResolutionError(f"Envelope inclusion of {module.name} is not a module map")
        return InjectiveEnvelope(tuple(summands), envelope, inclusion)

    @cached_property
    def _maximal_pairs(self) -> frozenset[tuple[str, str]]:
        return frozenset((p.source, p.target) for p in self.basis.maximal_paths())

    def tree_iso_criterion(self, source: str, sink: str) -> bool:
        """P(a) ~ I(b) on trees: a maximal nonzero path a -> b with both modules uniserial."""
        if not self.info.is_tree:
            raise ValueError(f"{self.quiver.name} is not a tree")
        if source == sink:
            return self.vertex_count == 1
        return (
            (source, sink) in self._maximal_pairs
            and is_uniserial(self.projective(source))
            and is_uniserial(self.injective(sink))
        )

    def projective_partner(self, vertex: str) -> str | None:
        """The vertex ``i`` with P(i) ~ I(vertex), or ``None`` if I(vertex) is not projective."""
        if vertex not in self._partners:
            injective = self.injective(vertex)
            candidate = top(injective).simple_vertex()
            partner = None
            if candidate is not None:
                projective = self.projective(candidate)
                if projective.dims == injective.dims and are_isomorphic(
                    projective, injective, seed=self.config.seed, retries=self.config.iso_retries
                ):
                    partner = candidate
            if self.info.is_tree:
                criterion = candidate is not None and self.tree_iso_criterion(candidate, vertex)
                if criterion != (partner is not None):
                    raise ResolutionError(
                        f"Isomorphism test and path criterion disagree on I({vertex}) in {self.quiver.name}"
                    )
            self._partners[vertex] = partner
            logger.debug("I(%s) projective partner: %s", vertex, partner)
        return self._partners[vertex]

    def is_projective_injective(self, vertex: str) -> bool:
        return self.projective_partner(vertex) is not None

    def projective_injectives(self) -> list[tuple[str, str]]:
        """Pairs (i, j) with P(i) ~ I(j), in vertex order of j."""
        pairs = []
        for j in self.quiver.vertices:
            partner = self.projective_partner(j)
            if partner is not None:
                pairs.append((partner, j))
        return pairs


def projective_injectives(
    quiver: Quiver, relations: RelationSet, config: EngineConfig | None = None
) -> list[tuple[str, str]]:
    return BoundQuiverAlgebra(quiver, relations, config=config).projective_injectives()
