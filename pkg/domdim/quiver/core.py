"""Quivers, monomial relation sets and their structural classification."""

from __future__ import annotations

from collections.abc import Callable, Iterable, Iterator, Sequence
from dataclasses import dataclass
from functools import cached_property

import networkx as nx


class ValidationError(ValueError):
    """Raised when a quiver or relation set violates a structural requirement."""

    def __init__(
        self,
        message: str,
        *,
        cycle: Sequence[str] | None = None,
        components: Sequence[Sequence[str]] | None = None,
    ) -> None:
        super().__init__(message)
        self.cycle = tuple(cycle or ())
        self.components = tuple(tuple(part) for part in components or ())


@dataclass(frozen=True)
class Arrow:
    label: str
    source: str
    target: str


@dataclass(frozen=True)
class Path:
    """A path of a quiver: visited vertices plus arrow labels in traversal order.

    The trivial path at ``v`` has ``vertices == (v,)`` and no arrows.
    """

    vertices: tuple[str, ...]
    arrows: tuple[str, ...] = ()

    @property
    def source(self) -> str:
        return self.vertices[0]

    @property
    def target(self) -> str:
        return self.vertices[-1]

    @property
    def length(self) -> int:
        return len(self.arrows)

    @property
    def is_trivial(self) -> bool:
        return not self.arrows

    def extend(self, arrow: Arrow) -> Path:
        if arrow.source != self.target:
            raise ValueError(f"Arrow {arrow.label} does not start at {self.target}")
        return Path(self.vertices + (arrow.target,), self.arrows + (arrow.label,))

    def contains(self, run: Sequence[str]) -> bool:
        """True iff ``run`` occurs as a contiguous block of arrows."""
        return contains_run(self.arrows, run)

    def label(self) -> str:
        if self.is_trivial:
            return f"e{self.source}"
        return "->".join(self.vertices)


def contains_run(sequence: Sequence[str], run: Sequence[str]) -> bool:
    width = len(run)
    if width == 0 or width > len(sequence):
        return False
    head = run[0]
    return any(
        sequence[start] == head and tuple(sequence[start : start + width]) == tuple(run)
        for start in range(len(sequence) - width + 1)
    )


@dataclass(frozen=True)
class Quiver:
    """A finite quiver with named vertices and labelled arrows."""

    name: str
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(str(v) for v in self.vertices))
        object.__setattr__(self, "arrows", tuple(self.arrows))

        seen: set[str] = set()
        for vertex in self.vertices:
            if vertex in seen:
                raise ValidationError(f"Duplicate vertex identifier: {vertex}")
            seen.add(vertex)

        labels: set[str] = set()
        for arrow in self.arrows:
            if arrow.label in labels:
                raise ValidationError(f"Duplicate arrow label: {arrow.label}")
            labels.add(arrow.label)
            missing = {arrow.source, arrow.target} - seen
            if missing:
                raise ValidationError(
                    f"Arrow {arrow.label} references unknown vertices: {sorted(missing)}"
                )

    @cached_property
    def _arrow_index(self) -> dict[str, Arrow]:
        return {arrow.label: arrow for arrow in self.arrows}

    @cached_property
    def _vertex_order(self) -> dict[str, int]:
        return {vertex: index for index, vertex in enumerate(self.vertices)}

    @cached_property
    def _outgoing(self) -> dict[str, tuple[Arrow, ...]]:
        table: dict[str, list[Arrow]] = {vertex: [] for vertex in self.vertices}
        for arrow in self.arrows:
            table[arrow.source].append(arrow)
        return {vertex: tuple(arrows) for vertex, arrows in table.items()}

    @cached_property
    def _incoming(self) -> dict[str, tuple[Arrow, ...]]:
        table: dict[str, list[Arrow]] = {vertex: [] for vertex in self.vertices}
        for arrow in self.arrows:
            table[arrow.target].append(arrow)
        return {vertex: tuple(arrows) for vertex, arrows in table.items()}

    @cached_property
    def graph(self) -> nx.MultiDiGraph:
        graph = nx.MultiDiGraph()
        graph.add_nodes_from(self.vertices)
        for arrow in self.arrows:
            graph.add_edge(arrow.source, arrow.target, key=arrow.label)
        return graph

    def has_vertex(self, vertex: str) -> bool:
        return vertex in self._vertex_order

    def has_arrow(self, label: str) -> bool:
        return label in self._arrow_index

    def arrow(self, label: str) -> Arrow:
        try:
            return self._arrow_index[label]
        except KeyError:
            raise ValidationError(f"Unknown arrow label: {label}") from None

    def order(self, vertex: str) -> int:
        try:
            return self._vertex_order[vertex]
        except KeyError:
            raise ValidationError(f"Unknown vertex: {vertex}") from None

    def outgoing(self, vertex: str) -> tuple[Arrow, ...]:
        self.order(vertex)
        return self._outgoing[vertex]

    def incoming(self, vertex: str) -> tuple[Arrow, ...]:
        self.order(vertex)
        return self._incoming[vertex]

    def trivial_path(self, vertex: str) -> Path:
        self.order(vertex)
        return Path((vertex,))

    def path(self, labels: Sequence[str]) -> Path:
        """Build the path traversing ``labels`` in order; they must compose."""
        if not labels:
            raise ValueError("Use trivial_path for paths without arrows.")
        first = self.arrow(labels[0])
        path = Path((first.source, first.target), (first.label,))
        for label in labels[1:]:
            arrow = self.arrow(label)
            if arrow.source != path.target:
                raise ValidationError(
                    f"Arrows {path.arrows[-1]} and {label} do not compose: "
                    f"{path.target} != {arrow.source}"
                )
            path = path.extend(arrow)
        return path

    def subquiver(self, vertices: Iterable[str], name: str | None = None) -> Quiver:
        """Full subquiver on ``vertices`` (kept in this quiver's order)."""
        keep = set(vertices)
        return Quiver(
            name=name or self.name,
            vertices=tuple(v for v in self.vertices if v in keep),
            arrows=tuple(a for a in self.arrows if a.source in keep and a.target in keep),
        )


def normalize_relations(relations: Iterable[Sequence[str]]) -> tuple[tuple[str, ...], ...]:
    """Drop duplicate generators and generators containing another one."""
    unique: list[tuple[str, ...]] = []
    for relation in relations:
        relation = tuple(relation)
        if relation not in unique:
            unique.append(relation)
    return tuple(
        relation
        for relation in unique
        if not any(other != relation and contains_run(relation, other) for other in unique)
    )


@dataclass(frozen=True)
class RelationSet:
    """Monomial zero relations, each an arrow-label sequence in traversal order."""

    relations: tuple[tuple[str, ...], ...] = ()

    def __post_init__(self) -> None:
        relations = tuple(tuple(str(label) for label in rel) for rel in self.relations)
        for relation in relations:
            if len(relation) < 2:
                raise ValidationError(f"relation length < 2: {list(relation)}")
        object.__setattr__(self, "relations", normalize_relations(relations))

    def __iter__(self) -> Iterator[tuple[str, ...]]:
        return iter(self.relations)

    def __len__(self) -> int:
        return len(self.relations)

    def __bool__(self) -> bool:
        return bool(self.relations)

    def check(self, quiver: Quiver) -> None:
        """Raise ``ValidationError`` unless every relation is a path of ``quiver``."""
        for relation in self.relations:
            quiver.path(relation)

    def paths(self, quiver: Quiver) -> tuple[Path, ...]:
        return tuple(quiver.path(relation) for relation in self.relations)

    def sources(self, quiver: Quiver) -> tuple[str, ...]:
        starts = {quiver.arrow(relation[0]).source for relation in self.relations}
        return tuple(v for v in quiver.vertices if v in starts)

    def targets(self, quiver: Quiver) -> tuple[str, ...]:
        ends = {quiver.arrow(relation[-1]).target for relation in self.relations}
        return tuple(v for v in quiver.vertices if v in ends)

    def free_vertices(self, quiver: Quiver) -> tuple[str, ...]:
        bound = set(self.sources(quiver)) | set(self.targets(quiver))
        return tuple(v for v in quiver.vertices if v not in bound)

    def restricted_to(self, quiver: Quiver) -> RelationSet:
        """Relations lying entirely inside ``quiver``."""
        return RelationSet(
            tuple(rel for rel in self.relations if all(quiver.has_arrow(a) for a in rel))
        )


@dataclass(frozen=True)
class BranchingVertex:
    vertex: str
    in_degree: int
    out_degree: int


@dataclass(frozen=True)
class QuiverClass:
    is_tree: bool
    is_linear_An: bool
    sources: tuple[str, ...]
    sinks: tuple[str, ...]
    branching_vertices: tuple[BranchingVertex, ...]

    def to_dict(self) -> dict:
        return {
            "is_tree": self.is_tree,
            "is_linear": self.is_linear_An,
            "sources": list(self.sources),
            "sinks": list(self.sinks),
            "branching": [[b.vertex, b.in_degree, b.out_degree] for b in self.branching_vertices],
        }


def validate(quiver: Quiver, relations: RelationSet | None = None) -> QuiverClass:
    """Check connectivity and acyclicity, then classify the quiver."""
    if not quiver.vertices:
        raise ValidationError("Quiver has no vertices.")

    graph = quiver.graph
    if not nx.is_weakly_connected(graph):
        components = sorted(
            (sorted(part, key=quiver.order) for part in nx.weakly_connected_components(graph)),
            key=lambda part: quiver.order(part[0]),
        )
        raise ValidationError(
            f"quiver is disconnected: {len(components)} components",
            components=components,
        )

    try:
        cycle = nx.find_cycle(graph, orientation="original")
    except nx.NetworkXNoCycle:
        cycle = None
    if cycle:
        witness = [edge[0] for edge in cycle] + [cycle[0][0]]
        raise ValidationError(f"cycle detected: {' -> '.join(witness)}", cycle=witness)

    if relations is not None:
        relations.check(quiver)

    in_degree = {v: len(quiver.incoming(v)) for v in quiver.vertices}
    out_degree = {v: len(quiver.outgoing(v)) for v in quiver.vertices}
    is_tree = len(quiver.arrows) == len(quiver.vertices) - 1
    branching = tuple(
        BranchingVertex(v, in_degree[v], out_degree[v])
        for v in quiver.vertices
        if in_degree[v] >= 2 or out_degree[v] >= 2
    )
    return QuiverClass(
        is_tree=is_tree,
        is_linear_An=is_tree and not branching,
        sources=tuple(v for v in quiver.vertices if in_degree[v] == 0),
        sinks=tuple(v for v in quiver.vertices if out_degree[v] == 0),
        branching_vertices=branching,
    )


def degenerate_branching(quiver: Quiver) -> tuple[BranchingVertex, ...]:
    """Branching vertices that are sinks or sources: b(k,0), b(0,l) with k, l >= 2."""
    return tuple(
        b
        for b in validate(quiver).branching_vertices
        if b.out_degree == 0 or b.in_degree == 0
    )


def walk_paths(
    quiver: Quiver,
    start: str,
    keep: Callable[[Path], bool] | None = None,
) -> Iterator[Path]:
    """Depth-first walk over paths leaving ``start``.

    A path failing ``keep`` is neither yielded nor extended, so ``keep`` must be
    closed under taking prefixes.
    """
    stack = [quiver.trivial_path(start)]
    while stack:
        path = stack.pop()
        if keep is not None and not keep(path):
            continue
        yield path
        for arrow in reversed(quiver.outgoing(path.target)):
            stack.append(path.extend(arrow))


def path_sort_key(quiver: Quiver) -> Callable[[Path], tuple]:
    return lambda path: (quiver.order(path.source), path.length, path.arrows)


def _require_acyclic(quiver: Quiver) -> None:
    if not nx.is_directed_acyclic_graph(quiver.graph):
        raise ValidationError("Path enumeration requires an acyclic quiver.")


def enumerate_paths(quiver: Quiver) -> list[Path]:
    """All paths of an acyclic quiver, trivial paths included."""
    _require_acyclic(quiver)
    paths = [path for vertex in quiver.vertices for path in walk_paths(quiver, vertex)]
    return sorted(paths, key=path_sort_key(quiver))


def longest_paths(quiver: Quiver) -> list[Path]:
    paths = enumerate_paths(quiver)
    longest = max(path.length for path in paths)
    return [path for path in paths if path.length == longest]
