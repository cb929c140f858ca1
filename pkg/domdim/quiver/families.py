"""Generators for the quiver and relation families used in sweeps."""

from __future__ import annotations

import itertools
import random
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field

import networkx as nx

from domdim.quiver.arms import arms
from domdim.quiver.core import Arrow, Quiver, RelationSet, enumerate_paths, validate

FAMILY_KINDS = ("linear", "truncated", "disjoint", "monotone", "random-tree", "random-relations", "matched-tree")
RELATION_BASES = ("linear", "tree")
MAX_ATTEMPTS = 1000


class FamilyError(ValueError):
    """Raised for descriptors that describe no valid instance."""


@dataclass(frozen=True)
class FamilyDescriptor:
    """Parameters of a generated family member.

    ``relations`` lists ``(start, length)`` pairs on the linear quiver for the
    ``disjoint`` family; ``lengths`` lists relation lengths for ``monotone``.
    ``base`` picks the quiver ``random-relations`` draws on: the linear quiver
    on ``n`` vertices or a random tree on ``v``. ``with_arms`` selects matched
    trees with non-trivial arms, and ``count`` adds random relations to them.
    """

    kind: str
    n: int | None = None
    m: int | None = None
    v: int | None = None
    seed: int = 0
    count: int = 0
    lengths: tuple[int, ...] = ()
    relations: tuple[tuple[int, int], ...] = field(default=())
    require_source: bool = False
    require_sink: bool = False
    allow_linear: bool = False
    base: str = "linear"
    with_arms: bool = False

    def __post_init__(self) -> None:
        if self.kind not in FAMILY_KINDS:
            raise FamilyError(f"Unknown family {self.kind!r}; expected one of {list(FAMILY_KINDS)}")
        if self.base not in RELATION_BASES:
            raise FamilyError(f"Unknown relation base {self.base!r}; expected one of {list(RELATION_BASES)}")


def _arrow_label(index: int) -> str:
    return f"a{index}"


def linear_quiver(n: int, name: str | None = None) -> Quiver:
    """The linearly oriented quiver 1 -> 2 -> ... -> n with arrows a_i: i -> i+1."""
    if n < 1:
        raise FamilyError(f"linear quiver needs n >= 1, got {n}")
    vertices = tuple(str(i) for i in range(1, n + 1))
    arrows = tuple(Arrow(_arrow_label(i), str(i), str(i + 1)) for i in range(1, n))
    return Quiver(name=name or f"linear_{n}", vertices=vertices, arrows=arrows)


def _segment(start: int, length: int) -> tuple[str, ...]:
    return tuple(_arrow_label(i) for i in range(start, start + length))


def linear(n: int) -> tuple[Quiver, RelationSet]:
    return linear_quiver(n), RelationSet()


def truncated(n: int, m: int) -> tuple[Quiver, RelationSet]:
    """Linear quiver modulo every path of length ``m``."""
    if n < 3 or not 2 <= m <= n - 1:
        raise FamilyError(f"truncated family needs 2 <= m <= n-1 and n >= 3, got n={n}, m={m}")
    relations = tuple(_segment(start, m) for start in range(1, n - m + 1))
    return linear_quiver(n, f"truncated_{n}_{m}"), RelationSet(relations)


def disjoint(n: int, relations: Sequence[tuple[int, int]]) -> tuple[Quiver, RelationSet]:
    """Linear quiver with pairwise arrow-disjoint relations given as (start, length)."""
    used: set[int] = set()
    segments = []
    for start, length in relations:
        if length < 2:
            raise FamilyError(f"relation at {start} has length {length} < 2")
        if start < 1 or start + length > n:
            raise FamilyError(f"relation ({start}, {length}) does not fit in A_{n}")
        span = set(range(start, start + length))
        if span & used:
            raise FamilyError(f"relation ({start}, {length}) overlaps an earlier relation")
        used |= span
        segments.append(_segment(start, length))
    return linear_quiver(n, f"disjoint_{n}"), RelationSet(tuple(segments))


def monotone_starts(lengths: Sequence[int]) -> list[int]:
    """Start vertices so that no relation contains another."""
    starts = [1]
    for previous, current in itertools.pairwise(lengths):
        starts.append(starts[-1] + max(1, previous - current + 1))
    return starts


def monotone(n: int, lengths: Sequence[int]) -> tuple[Quiver, RelationSet]:
    """Linear quiver with relations of strictly increasing or decreasing length."""
    if not lengths:
        raise FamilyError("monotone family needs at least one length")
    if any(length < 2 for length in lengths):
        raise FamilyError(f"relation lengths must be >= 2, got {list(lengths)}")
    steps = [b - a for a, b in itertools.pairwise(lengths)]
    if not (all(s > 0 for s in steps) or all(s < 0 for s in steps)):
        raise FamilyError(f"lengths must be strictly monotone, got {list(lengths)}")
    starts = monotone_starts(lengths)
    if starts[-1] + lengths[-1] > n:
        raise FamilyError(f"lengths {list(lengths)} need at least {starts[-1] + lengths[-1]} vertices")
    relations = tuple(_segment(s, length) for s, length in zip(starts, lengths))
    return linear_quiver(n, f"monotone_{n}"), RelationSet(relations)


def _orient_tree(tree: nx.Graph, rng: random.Random, name: str) -> Quiver:
    arrows = []
    for index, (u, w) in enumerate(sorted(tree.edges()), start=1):
        if rng.random() < 0.5:
            u, w = w, u
        arrows.append(Arrow(_arrow_label(index), str(u + 1), str(w + 1)))
    vertices = tuple(str(i + 1) for i in range(tree.number_of_nodes()))
    return Quiver(name=name, vertices=vertices, arrows=tuple(arrows))


def random_tree(
    v: int, seed: int, *, allow_linear: bool = False, rng: random.Random | None = None
) -> Quiver:
    """Random labelled tree shape (Pruefer decoded) with random arrow orientations."""
    if v < 3 and not allow_linear:
        raise FamilyError(f"a non-linear tree needs at least 3 vertices, got {v}")
    if v < 1:
        raise FamilyError(f"tree needs at least one vertex, got {v}")
    rng = rng or random.Random(seed)
    name = f"random_tree_{v}_s{seed}"
    for _ in range(MAX_ATTEMPTS):
        if v <= 2:
            tree = nx.path_graph(v)
        else:
            tree = nx.from_prufer_sequence([rng.randrange(v) for _ in range(v - 2)])
        quiver = _orient_tree(tree, rng, name)
        if allow_linear or not validate(quiver).is_linear_An:
            return quiver
    raise FamilyError(f"could not draw a non-linear tree on {v} vertices")


def random_acyclic_quiver(
    v: int, seed: int, *, extra_arrows: int = 2, rng: random.Random | None = None
) -> Quiver:
    """Random connected acyclic quiver: a random tree plus up to ``extra_arrows`` chords.

    Every edge points along a random vertex ranking, so no cycle can form.
    """
    if v < 2:
        raise FamilyError(f"acyclic quiver needs at least 2 vertices, got {v}")
    rng = rng or random.Random(seed)
    tree = nx.path_graph(v) if v == 2 else nx.from_prufer_sequence([rng.randrange(v) for _ in range(v - 2)])
    graph = nx.Graph(tree)
    chords = [pair for pair in itertools.combinations(range(v), 2) if not graph.has_edge(*pair)]
    graph.add_edges_from(rng.sample(chords, min(extra_arrows, len(chords))))
    ranking = list(range(v))
    rng.shuffle(ranking)
    arrows = []
    for index, (u, w) in enumerate(sorted(graph.edges()), start=1):
        if ranking[u] > ranking[w]:
            u, w = w, u
        arrows.append(Arrow(_arrow_label(index), str(u + 1), str(w + 1)))
    return Quiver(
        name=f"random_acyclic_{v}_s{seed}",
        vertices=tuple(str(i + 1) for i in range(v)),
        arrows=tuple(arrows),
    )


def random_relations(
    quiver: Quiver,
    count: int,
    *,
    seed: int,
    require_source: bool = False,
    require_sink: bool = False,
    rng: random.Random | None = None,
) -> RelationSet:
    """Draw ``count`` paths of length >= 2 as relations, then normalize.

    ``require_source`` (``require_sink``) resamples until every source (sink)
    of the quiver starts (ends) some relation.
    """
    if count < 0:
        raise FamilyError(f"relation count must be >= 0, got {count}")
    candidates = [path.arrows for path in enumerate_paths(quiver) if path.length >= 2]
    if count and not candidates:
        raise FamilyError(f"{quiver.name} has no path of length >= 2")
    if count == 0:
        if require_source or require_sink:
            raise FamilyError("endpoint constraints need at least one relation")
        return RelationSet()

    info = validate(quiver)
    rng = rng or random.Random(seed)
    for _ in range(MAX_ATTEMPTS):
        relations = RelationSet(tuple(rng.choice(candidates) for _ in range(count)))
        if require_source and not set(info.sources) <= set(relations.sources(quiver)):
            continue
        if require_sink and not set(info.sinks) <= set(relations.targets(quiver)):
            continue
        return relations
    raise FamilyError(f"no relation set of size {count} meets the endpoint constraints")


def _spine_lengths(v: int, with_arms: bool) -> list[int]:
    if with_arms:
        return list(range(2, v - 2))
    # every interior spine vertex is crossed once by a two-leaf route
    return [k for k in range(2, v) if (v - k - 1) % 2 == 0 and (v - k - 1) // 2 >= k - 1]


def _draw_routes(v: int, with_arms: bool, max_chain: int, rng: random.Random) -> list[list[int]]:
    k = rng.choice(_spine_lengths(v, with_arms))
    routes = [list(range(k + 1))]
    interior = list(range(1, k))
    size = k + 1
    if not with_arms:
        extra = (v - size) // 2 - len(interior)
        for x in interior + [rng.choice(interior) for _ in range(extra)]:
            routes.append([size, x, size + 1])
            size += 2
        return routes

    while v - size >= 2:
        x = rng.choice(interior)
        into = rng.randint(1, min(max_chain, v - size - 1))
        out = rng.randint(1, min(max_chain, v - size - into))
        sources = list(range(size, size + into))
        sinks = list(range(size + into, size + into + out))
        routes.append(sources + [x] + sinks)
        interior.extend(sources[1:] + sinks[:-1])
        size += into + out
    while size < v:
        route = rng.choice(routes)
        if rng.random() < 0.5:
            route.insert(0, size)
        else:
            route.append(size)
        size += 1
    return routes


def _route_quiver(routes: list[list[int]], name: str) -> tuple[Quiver, RelationSet]:
    arrows: list[Arrow] = []
    entering: dict[int, list[tuple[str, int]]] = {}
    leaving: dict[int, list[tuple[str, int]]] = {}
    for index, route in enumerate(routes):
        for u, w in itertools.pairwise(route):
            label = _arrow_label(len(arrows) + 1)
            arrows.append(Arrow(label, str(u + 1), str(w + 1)))
            leaving.setdefault(u, []).append((label, index))
            entering.setdefault(w, []).append((label, index))
    relations = tuple(
        (alpha, beta)
        for x in sorted(entering)
        for alpha, r1 in entering[x]
        for beta, r2 in leaving.get(x, [])
        if r1 != r2
    )
    vertices = tuple(str(i + 1) for i in range(max(max(route) for route in routes) + 1))
    return Quiver(name=name, vertices=vertices, arrows=tuple(arrows)), RelationSet(relations)


def matched_tree(
    v: int,
    seed: int,
    *,
    with_arms: bool = False,
    max_chain: int = 3,
    rng: random.Random | None = None,
) -> tuple[Quiver, RelationSet]:
    """Tree built from source-to-sink routes that cross at shared vertices.

    At every crossing the relations kill each length-two path that switches
    routes, so every nonzero path stays on one route. Every branching vertex
    has as many incoming as outgoing arrows. Without ``with_arms`` every arm
    is a single vertex, which needs ``v`` in 5, 7, 8, 9 or more; with it at
    least one arm is longer and ``v >= 6``.
    """
    if v < (6 if with_arms else 5):
        raise FamilyError(f"matched tree {'with' if with_arms else 'without'} arms needs more than {v} vertices")
    if not _spine_lengths(v, with_arms):
        raise FamilyError(f"no matched tree without arms on {v} vertices")
    rng = rng or random.Random(seed)
    name = f"matched_tree_{v}_s{seed}"
    for _ in range(MAX_ATTEMPTS):
        quiver, relations = _route_quiver(_draw_routes(v, with_arms, max_chain, rng), name)
        if arms(quiver).without_arms != with_arms:
            return quiver, relations
    raise FamilyError(f"could not draw a matched tree on {v} vertices")


def generate_family(descriptor: FamilyDescriptor) -> tuple[Quiver, RelationSet]:
    """Build the instance a descriptor names; deterministic in the seed."""
    d = descriptor
    if d.kind == "linear":
        return linear(_need(d.n, "n"))
    if d.kind == "truncated":
        return truncated(_need(d.n, "n"), _need(d.m, "m"))
    if d.kind == "disjoint":
        return disjoint(_need(d.n, "n"), d.relations)
    if d.kind == "monotone":
        return monotone(_need(d.n, "n"), d.lengths)

    rng = random.Random(d.seed)
    if d.kind == "matched-tree":
        quiver, matched = matched_tree(_need(d.v, "v"), d.seed, with_arms=d.with_arms, rng=rng)
        extra = random_relations(quiver, d.count, seed=d.seed, rng=rng)
        return quiver, RelationSet(tuple(matched) + tuple(extra))
    if d.kind == "random-tree":
        quiver = random_tree(_need(d.v, "v"), d.seed, allow_linear=d.allow_linear, rng=rng)
    elif d.base == "tree":
        quiver = random_tree(_need(d.v, "v"), d.seed, allow_linear=d.allow_linear, rng=rng)
        quiver = Quiver(f"random_relations_tree_{d.v}_s{d.seed}", quiver.vertices, quiver.arrows)
    else:
        quiver = linear_quiver(_need(d.n, "n"), f"random_relations_{d.n}_s{d.seed}")
    relations = random_relations(
        quiver,
        d.count,
        seed=d.seed,
        require_source=d.require_source,
        require_sink=d.require_sink,
        rng=rng,
    )
    return quiver, relations


def _need(value: int | None, name: str) -> int:
    if value is None:
        raise FamilyError(f"family parameter {name!r} is required")
    return value


_INT_KEYS = {"n", "m", "v", "seed", "count"}
_FLAG_KEYS = {
    "source": "require_source",
    "sink": "require_sink",
    "allow-linear": "allow_linear",
    "arms": "with_arms",
}


def parse_family(text: str) -> FamilyDescriptor:
    """Read descriptors such as ``truncated:n=6,m=3`` or ``monotone:n=9,lengths=2+3+4``.

    ``disjoint`` relations are written ``relations=1@2+4@2`` (start@length);
    ``random-relations:base=tree,v=7,count=3`` draws relations on a random tree.
    """
    kind, _, params = text.strip().partition(":")
    values: dict = {}
    for item in filter(None, (part.strip() for part in params.split(","))):
        key, sep, raw = item.partition("=")
        if not sep:
            raise FamilyError(f"expected key=value in family descriptor, got {item!r}")
        try:
            if key in _INT_KEYS:
                values[key] = int(raw)
            elif key == "base":
                values["base"] = raw
            elif key == "lengths":
                values["lengths"] = tuple(int(x) for x in raw.split("+"))
            elif key == "relations":
                values["relations"] = tuple(
                    (int(start), int(length))
                    for start, length in (pair.split("@") for pair in raw.split("+"))
                )
            elif key in _FLAG_KEYS:
                values[_FLAG_KEYS[key]] = raw.lower() in ("1", "true", "yes")
            else:
                raise FamilyError(f"unknown family parameter {key!r}")
        except ValueError as exc:
            if isinstance(exc, FamilyError):
                raise
            raise FamilyError(f"invalid value for {key!r}: {raw!r}") from exc
    return FamilyDescriptor(kind=kind, **values)


def acyclic_quivers(n: int) -> Iterator[Quiver]:
    """Connected acyclic quivers without multiple arrows on ``n`` vertices, up to isomorphism.

    Every acyclic quiver has a topological labelling, so arrows only need to
    run from smaller to larger labels.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    pairs = list(itertools.combinations(range(n), 2))
    seen: dict[str, list[nx.DiGraph]] = {}
    index = 0
    for mask in range(1 << len(pairs)):
        chosen = [pair for bit, pair in enumerate(pairs) if mask >> bit & 1]
        if len(chosen) < n - 1:
            continue
        graph = nx.DiGraph()
        graph.add_nodes_from(range(n))
        graph.add_edges_from(chosen)
        if not nx.is_weakly_connected(graph):
            continue
        key = nx.weisfeiler_lehman_graph_hash(graph)
        bucket = seen.setdefault(key, [])
        if any(nx.is_isomorphic(graph, other) for other in bucket):
            continue
        bucket.append(graph)
        index += 1
        arrows = tuple(
            Arrow(_arrow_label(k), str(u + 1), str(w + 1)) for k, (u, w) in enumerate(chosen, start=1)
        )
        yield Quiver(
            name=f"acyclic_{n}_{index}",
            vertices=tuple(str(i + 1) for i in range(n)),
            arrows=arrows,
        )
