"""Minimal injective resolutions and dominant dimensions."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

from domdim.algebra import linalg
from domdim.algebra.bound import BoundQuiverAlgebra, EngineConfig
from domdim.algebra.representation import ModuleMap, Representation, ResolutionError, cokernel
from domdim.quiver.core import Quiver, RelationSet

logger = logging.getLogger(__name__)

INFINITY = math.inf


@dataclass(frozen=True)
class Summand:
    vertex: str
    multiplicity: int
    projective: bool
    partner: str | None = None

    def to_dict(self) -> dict:
        return {
            "vertex": self.vertex,
            "multiplicity": self.multiplicity,
            "projective": self.projective,
            "partner": self.partner,
        }

    def __str__(self) -> str:
        power = f"^{self.multiplicity}" if self.multiplicity > 1 else ""
        mark = f"=P({self.partner})" if self.projective else ""
        return f"I({self.vertex}){power}{mark}"


@dataclass(frozen=True, eq=False)
class ResolutionTerm:
    summands: tuple[Summand, ...]
    module: Representation

    @property
    def all_projective(self) -> bool:
        return all(s.projective for s in self.summands)

    def to_dict(self) -> dict:
        return {"summands": [s.to_dict() for s in self.summands], "projective": self.all_projective}

    def __str__(self) -> str:
        return " + ".join(str(s) for s in self.summands) or "0"


@dataclass(frozen=True, eq=False)
class InjectiveResolution:
    """``0 -> M -> E_0 -> E_1 -> ...``; ``maps[0]`` is the inclusion of ``M``."""

    resolved: Representation
    terms: tuple[ResolutionTerm, ...]
    maps: tuple[ModuleMap, ...]
    exact: bool
    truncated: bool

    @property
    def length(self) -> int:
        return len(self.terms)

    def leading_projective(self) -> int:
        count = 0
        for term in self.terms:
            if not term.all_projective:
                break
            count += 1
        return count

    def to_dict(self) -> dict:
        return {
            "terms": [term.to_dict() for term in self.terms],
            "exact": self.exact,
            "truncated": self.truncated,
        }

    def __str__(self) -> str:
        chain = " -> ".join(str(term) for term in self.terms)
        tail = " -> ..." if self.truncated else " -> 0"
        return f"0 -> {self.resolved.name} -> {chain}{tail}" if self.terms else "0"


def _check_stage(incoming: ModuleMap, outgoing: ModuleMap) -> bool:
    """Image of ``incoming`` equals kernel of ``outgoing`` at every vertex."""
    middle = incoming.target
    for v in middle.quiver.vertices:
        composite = linalg.matmul(outgoing.components[v], incoming.components[v])
        if not linalg.is_zero(composite):
            return False
        if linalg.rank(incoming.components[v]) + linalg.rank(outgoing.components[v]) != middle.dims[v]:
            return False
    return True


def minimal_injective_resolution(
    algebra: BoundQuiverAlgebra,
    module: Representation,
    *,
    max_steps: int | None = None,
) -> InjectiveResolution:
    """Iterate envelope and cokernel until the cokernel vanishes or the cap is hit."""
    cap = max_steps if max_steps is not None else algebra.resolution_cap
    if cap < 1:
        raise ValueError(f"resolution cap must be >= 1, got {cap}")

    terms: list[ResolutionTerm] = []
    maps: list[ModuleMap] = []
    previous_projection: ModuleMap | None = None
    current = module
    for step in range(cap):
        if current.is_zero:
            break
        envelope = algebra.injective_envelope(current)
        summands = []
        for part in envelope.summands:
            partner = algebra.projective_partner(part.vertex)
            summands.append(Summand(part.vertex, part.multiplicity, partner is not None, partner))
        terms.append(ResolutionTerm(tuple(summands), envelope.module))

        differential = (
            envelope.inclusion if previous_projection is None else previous_projection.then(envelope.inclusion)
        )
        if maps and not _check_stage(maps[-1], differential):
            raise ResolutionError(f"Resolution of {module.name} is not exact at term {step - 1}")
        maps.append(differential)
        current, previous_projection = cokernel(envelope.inclusion)
        logger.debug("%s step %d: %s, cokernel dims %s", module.name, step, terms[-1], current.dims)

    truncated = not current.is_zero
    if maps and not truncated:
        last = maps[-1]
        surjective = all(linalg.rank(c) == last.target.dims[v] for v, c in last.components.items())
        if not surjective:
            raise ResolutionError(f"Resolution of {module.name} does not close at its last term")
    if maps and not maps[0].is_injective():
        raise ResolutionError(f"Resolution of {module.name} does not start with an inclusion")

    if len(terms) >= 2 and not truncated and terms[-1].all_projective:
        raise ResolutionError(f"Last term of the resolution of {module.name} is projective; not minimal")
    if truncated:
        logger.warning("resolution of %s reached the cap of %d terms", module.name, cap)
    return InjectiveResolution(module, tuple(terms), tuple(maps), True, truncated)


def dominant_dimension_of_resolution(resolution: InjectiveResolution) -> float | int:
    leading = resolution.leading_projective()
    if leading < resolution.length:
        return leading
    if resolution.truncated:
        raise ResolutionError(
            f"dominant dimension of {resolution.resolved.name} undetermined: "
            f"all {leading} computed terms are projective and the cap was reached"
        )
    return INFINITY


def dominant_dimension_module(
    algebra: BoundQuiverAlgebra, module: Representation, *, max_steps: int | None = None
) -> float | int:
    """Leading projective-injective terms of the minimal injective resolution, or infinity."""
    resolution = minimal_injective_resolution(algebra, module, max_steps=max_steps)
    return dominant_dimension_of_resolution(resolution)


@dataclass(frozen=True, eq=False)
class ProjectiveReport:
    vertex: str
    value: float | int
    resolution: InjectiveResolution

    def to_dict(self, *, include_resolution: bool = False) -> dict:
        report = {"vertex": self.vertex, "dd": format_value(self.value)}
        report["terms"] = [str(term) for term in self.resolution.terms]
        if include_resolution:
            module = self.resolution.resolved
            report["basis"] = [label for v in module.quiver.vertices for label in module.labels(v)]
            report["resolution"] = self.resolution.to_dict()
        return report


@dataclass(frozen=True, eq=False)
class AlgebraDominantDimension:
    value: float | int
    reports: tuple[ProjectiveReport, ...]

    def weakest(self) -> list[str]:
        """Vertices whose projective attains the minimum."""
        return [r.vertex for r in self.reports if r.value == self.value]


def dominant_dimension_of(algebra: BoundQuiverAlgebra) -> AlgebraDominantDimension:
    """``dom.dim A = min_i dd P(i)``; projective-injective P(i) contribute infinity."""
    reports = []
    for vertex in algebra.quiver.vertices:
        resolution = minimal_injective_resolution(algebra, algebra.projective(vertex))
        value = dominant_dimension_of_resolution(resolution)
        reports.append(ProjectiveReport(vertex, value, resolution))
        logger.debug("dd P(%s) = %s", vertex, value)
    value = min((r.value for r in reports), default=INFINITY)
    return AlgebraDominantDimension(value, tuple(reports))


def dominant_dimension_algebra(
    quiver: Quiver, relations: RelationSet, *, config: EngineConfig | None = None
) -> AlgebraDominantDimension:
    return dominant_dimension_of(BoundQuiverAlgebra(quiver, relations, config=config))


def format_value(value: float | int) -> int | str:
    """JSON-friendly dominant dimension: integers stay, infinity becomes ``"infinity"``."""
    return "infinity" if value == INFINITY else int(value)
