"""Finite-dimensional modules of bound quiver algebras as quiver representations."""

from __future__ import annotations

import itertools
import logging
import random
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field

from sympy.polys.matrices import DomainMatrix

from domdim.algebra import linalg
from domdim.quiver.core import Path, Quiver, RelationSet

logger = logging.getLogger(__name__)

ISO_SCAN_LIMIT = 4096


class ResolutionError(RuntimeError):
    """Internal consistency failure of the module engine."""


@dataclass(frozen=True, eq=False)
class Representation:
    """One vector space per vertex and one matrix per arrow.

    ``maps[a]`` has shape ``(dims[target], dims[source])`` and acts on column
    vectors. Every relation must compose to the zero matrix.
    """

    quiver: Quiver
    relations: RelationSet
    domain: object
    dims: Mapping[str, int]
    maps: Mapping[str, DomainMatrix]
    basis_labels: Mapping[str, tuple[str, ...]] | None = None
    name: str = ""

    def __post_init__(self) -> None:
        dims = {v: int(self.dims.get(v, 0)) for v in self.quiver.vertices}
        unknown = set(self.dims) - set(dims)
        if unknown:
            raise ValueError(f"Dimensions given for unknown vertices: {sorted(unknown)}")
        negative = {v: d for v, d in dims.items() if d < 0}
        if negative:
            raise ValueError(f"Negative dimensions: {negative}")
        object.__setattr__(self, "dims", dims)

        maps = {}
        for arrow in self.quiver.arrows:
            shape = (dims[arrow.target], dims[arrow.source])
            matrix = self.maps.get(arrow.label)
            if matrix is None:
                matrix = linalg.zeros(*shape, self.domain)
            elif matrix.shape != shape:
                raise ValueError(f"Map for {arrow.label} has shape {matrix.shape}, expected {shape}")
            maps[arrow.label] = matrix
        object.__setattr__(self, "maps", maps)

        violated = self.violated_relations()
        if violated:
            raise ValueError(f"Representation {self.name!r} violates relations: {violated}")

    def violated_relations(self) -> list[tuple[str, ...]]:
        return [
            relation
            for relation in self.relations
            if not linalg.is_zero(self.path_matrix(self.quiver.path(relation)))
        ]

    def path_matrix(self, path: Path) -> DomainMatrix:
        """The action of ``path``: from ``dims[path.source]`` to ``dims[path.target]``."""
        if path.is_trivial:
            return linalg.identity(self.dims[path.source], self.domain)
        return linalg.chain([self.maps[label] for label in path.arrows])

    def dimension_vector(self) -> dict[str, int]:
        return dict(self.dims)

    @property
    def total_dimension(self) -> int:
        return sum(self.dims.values())

    @property
    def is_zero(self) -> bool:
        return self.total_dimension == 0

    def labels(self, vertex: str) -> tuple[str, ...]:
        if self.basis_labels and vertex in self.basis_labels:
            return tuple(self.basis_labels[vertex])
        return tuple(f"{vertex}.{k}" for k in range(self.dims[vertex]))

    def same_algebra(self, other: Representation) -> bool:
        return self.quiver == other.quiver and self.relations == other.relations

    def __repr__(self) -> str:
        support = {v: d for v, d in self.dims.items() if d}
        return f"Representation({self.name or '?'}, dims={support})"


def zero_module(quiver: Quiver, relations: RelationSet, domain: object, name: str = "0") -> Representation:
    return Representation(quiver, relations, domain, {}, {}, name=name)


@dataclass(frozen=True, eq=False)
class ModuleMap:
    """Per-vertex matrices ``f_v: source_v -> target_v``."""

    source: Representation
    target: Representation
    components: Mapping[str, DomainMatrix]

    def __post_init__(self) -> None:
        if not self.source.same_algebra(self.target):
            raise ValueError("Module map between modules of different algebras")
        for v in self.source.quiver.vertices:
            shape = (self.target.dims[v], self.source.dims[v])
            if self.components[v].shape != shape:
                raise ValueError(f"Component at {v} has shape {self.components[v].shape}, expected {shape}")

    def is_intertwining(self) -> bool:
        for arrow in self.source.quiver.arrows:
            s, t = arrow.source, arrow.target
            left = linalg.matmul(self.target.maps[arrow.label], self.components[s])
            right = linalg.matmul(self.components[t], self.source.maps[arrow.label])
            if not linalg.equal(left, right):
                return False
        return True

    def is_injective(self) -> bool:
        return all(
            linalg.rank(self.components[v]) == self.source.dims[v] for v in self.source.quiver.vertices
        )

    def is_zero(self) -> bool:
        return all(linalg.is_zero(c) for c in self.components.values())

    def rank_vector(self) -> dict[str, int]:
        return {v: linalg.rank(c) for v, c in self.components.items()}

    def then(self, other: ModuleMap) -> ModuleMap:
        """The composite ``other o self``."""
        return ModuleMap(
            self.source,
            other.target,
            {v: linalg.matmul(other.components[v], self.components[v]) for v in self.source.quiver.vertices},
        )


def identity_map(module: Representation) -> ModuleMap:
    return ModuleMap(
        module, module, {v: linalg.identity(d, module.domain) for v, d in module.dims.items()}
    )


@dataclass(frozen=True)
class SemisimpleProfile:
    """Multiplicities of simple modules S(v) in a semisimple module."""

    multiplicities: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "multiplicities", {v: m for v, m in self.multiplicities.items() if m > 0}
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SemisimpleProfile):
            return NotImplemented
        return dict(self.multiplicities) == dict(other.multiplicities)

    def __hash__(self) -> int:
        return hash(frozenset(self.multiplicities.items()))

    @property
    def total(self) -> int:
        return sum(self.multiplicities.values())

    @property
    def support(self) -> tuple[str, ...]:
        return tuple(self.multiplicities)

    @property
    def is_simple(self) -> bool:
        return self.total == 1

    def simple_vertex(self) -> str | None:
        return next(iter(self.multiplicities)) if self.is_simple else None

    def __str__(self) -> str:
        if not self.multiplicities:
            return "0"
        parts = []
        for v, m in self.multiplicities.items():
            parts.append(f"S({v})" if m == 1 else f"S({v})^{m}")
        return "+".join(parts)


def direct_sum(modules: Sequence[Representation], name: str = "") -> Representation:
    if not modules:
        raise ValueError("direct_sum needs at least one module")
    first = modules[0]
    if any(not first.same_algebra(m) for m in modules[1:]):
        raise ValueError("direct_sum of modules over different algebras")
    dims = {v: sum(m.dims[v] for m in modules) for v in first.quiver.vertices}
    maps = {
        a.label: linalg.block_diag([m.maps[a.label] for m in modules], first.domain)
        for a in first.quiver.arrows
    }
    labels = {v: tuple(label for m in modules for label in m.labels(v)) for v in first.quiver.vertices}
    return Representation(
        first.quiver,
        first.relations,
        first.domain,
        dims,
        maps,
        labels,
        name or "+".join(m.name or "?" for m in modules),
    )


def socle_basis(module: Representation) -> dict[str, DomainMatrix]:
    """Per vertex, columns spanning the intersection of kernels of outgoing arrows."""
    basis = {}
    for v in module.quiver.vertices:
        outgoing = [module.maps[a.label] for a in module.quiver.outgoing(v)]
        stacked = linalg.vstack(*outgoing, cols=module.dims[v], domain=module.domain)
        basis[v] = linalg.kernel(stacked) if outgoing else linalg.identity(module.dims[v], module.domain)
    return basis


def socle(module: Representation) -> tuple[SemisimpleProfile, ModuleMap]:
    basis = socle_basis(module)
    sub = Representation(
        module.quiver,
        module.relations,
        module.domain,
        {v: b.shape[1] for v, b in basis.items()},
        {},
        name=f"soc {module.name}",
    )
    profile = SemisimpleProfile({v: b.shape[1] for v, b in basis.items()})
    return profile, ModuleMap(sub, module, basis)


def _radical_image(module: Representation, v: str, subspaces: Mapping[str, DomainMatrix]) -> DomainMatrix:
    images = [
        linalg.matmul(module.maps[a.label], subspaces[a.source]) for a in module.quiver.incoming(v)
    ]
    return linalg.hstack(*images, rows=module.dims[v], domain=module.domain)


def top(module: Representation) -> SemisimpleProfile:
    whole = {v: linalg.identity(d, module.domain) for v, d in module.dims.items()}
    return SemisimpleProfile(
        {
            v: module.dims[v] - linalg.rank(_radical_image(module, v, whole))
            for v in module.quiver.vertices
        }
    )


def radical_layers(module: Representation) -> list[dict[str, int]]:
    """Dimension vectors of ``rad^k M / rad^(k+1) M`` for k = 0, 1, ..."""
    current = {v: linalg.identity(d, module.domain) for v, d in module.dims.items()}
    layers = []
    while any(b.shape[1] for b in current.values()):
        following = {
            v: linalg.column_basis(_radical_image(module, v, current)) for v in module.quiver.vertices
        }
        layers.append(
            {v: current[v].shape[1] - following[v].shape[1] for v in module.quiver.vertices}
        )
        current = following
    return layers


def is_uniserial(module: Representation) -> bool:
    return all(sum(layer.values()) == 1 for layer in radical_layers(module))


def hom_space(source: Representation, target: Representation) -> list[ModuleMap]:
    """A basis of the intertwining maps ``source -> target``."""
    if not source.same_algebra(target):
        raise ValueError("Hom between modules of different algebras")
    quiver, domain = source.quiver, source.domain

    offsets: dict[str, int] = {}
    count = 0
    for v in quiver.vertices:
        offsets[v] = count
        count += target.dims[v] * source.dims[v]
    if count == 0:
        return []

    def index(v: str, i: int, j: int) -> int:
        return offsets[v] + i * source.dims[v] + j

    equations: list[list] = []
    for arrow in quiver.arrows:
        s, t = arrow.source, arrow.target
        n_arrow = linalg.rows_of(target.maps[arrow.label])
        m_arrow = linalg.rows_of(source.maps[arrow.label])
        # N(a) f_s - f_t M(a) = 0, entry (i, j) with i in target_t, j in source_s
        for i in range(target.dims[t]):
            for j in range(source.dims[s]):
                row = [domain.zero] * count
                for k in range(target.dims[s]):
                    row[index(s, k, j)] += n_arrow[i][k]
                for l in range(source.dims[t]):
                    row[index(t, i, l)] -= m_arrow[l][j]
                equations.append(row)

    system = linalg.matrix(equations, (len(equations), count), domain)
    solutions = linalg.rows_of(linalg.transpose(linalg.kernel(system)))
    maps = []
    for vector in solutions:
        components = {
            v: linalg.matrix(
                [
                    [vector[index(v, i, j)] for j in range(source.dims[v])]
                    for i in range(target.dims[v])
                ],
                (target.dims[v], source.dims[v]),
                domain,
            )
            for v in quiver.vertices
        }
        maps.append(ModuleMap(source, target, components))
    return maps


def combine_maps(coefficients: Sequence[int], basis: Sequence[ModuleMap]) -> ModuleMap:
    first = basis[0]
    components = {
        v: linalg.combine(
            zip(coefficients, (f.components[v] for f in basis)),
            first.components[v].shape,
            first.source.domain,
        )
        for v in first.source.quiver.vertices
    }
    return ModuleMap(first.source, first.target, components)


def is_isomorphism(f: ModuleMap) -> bool:
    return all(linalg.is_invertible(c) for c in f.components.values())


def _scan_side(module: Representation) -> int:
    # det of a combination has degree total_dimension in the coefficients
    side = module.total_dimension + 1
    if module.domain.is_FiniteField:
        side = min(side, module.domain.characteristic())
    return side


def are_isomorphic(
    left: Representation,
    right: Representation,
    *,
    seed: int = 0,
    retries: int = 8,
    scan_limit: int = ISO_SCAN_LIMIT,
) -> bool:
    """Decide ``left ~ right`` by searching the hom space for an invertible map.

    Cheap invariants go first. Random combinations are drawn from a generator
    seeded with ``seed``. When they all fail, the coefficient grid that settles
    the question exactly is scanned if it has at most ``scan_limit`` points;
    past that the answer False is one-sided and logged as such.
    """
    if not left.same_algebra(right):
        return False
    if left.dims != right.dims:
        return False
    if left.is_zero:
        return True
    if top(left) != top(right) or socle(left)[0] != socle(right)[0]:
        return False

    basis = hom_space(left, right)
    if not basis:
        return False
    rng = random.Random(seed)
    for attempt in range(retries):
        coefficients = [rng.randint(-(10**6), 10**6) for _ in basis]
        if is_isomorphism(combine_maps(coefficients, basis)):
            logger.debug("isomorphism %s ~ %s found on attempt %d", left.name, right.name, attempt)
            return True

    side = _scan_side(left)
    if side ** len(basis) > scan_limit:
        logger.warning(
            "isomorphism %s ~ %s undecided: hom dimension %d needs %d grid points, limit %d",
            left.name, right.name, len(basis), side ** len(basis), scan_limit,
        )
        return False
    return any(
        is_isomorphism(combine_maps(coefficients, basis))
        for coefficients in itertools.product(range(side), repeat=len(basis))
        if any(coefficients)
    )


def cokernel(f: ModuleMap) -> tuple[Representation, ModuleMap]:
    """Quotient ``target / im f`` with induced arrow maps and the projection."""
    target = f.target
    domain = target.domain
    projections: dict[str, DomainMatrix] = {}
    sections: dict[str, DomainMatrix] = {}
    labels: dict[str, tuple[str, ...]] = {}
    for v in target.quiver.vertices:
        image = linalg.column_basis(f.components[v])
        projection, indices = linalg.quotient(image)
        projections[v] = projection
        sections[v] = linalg.unit_columns(target.dims[v], indices, domain)
        names = target.labels(v)
        labels[v] = tuple(names[i] for i in indices)

    maps = {
        a.label: linalg.chain([sections[a.source], target.maps[a.label], projections[a.target]])
        for a in target.quiver.arrows
    }
    try:
        quotient = Representation(
            target.quiver,
            target.relations,
            domain,
            {v: p.shape[0] for v, p in projections.items()},
            maps,
            labels,
            name=f"coker({target.name})",
        )
    except ValueError as exc:
        raise ResolutionError(f"Cokernel construction failed: {exc}") from exc
    return quotient, ModuleMap(target, quotient, projections)
