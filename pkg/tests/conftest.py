"""Shared fixtures: corpus documents, small quiver builders and instance strategies."""

from __future__ import annotations

from pathlib import Path

import pytest
from hypothesis import assume
from hypothesis import strategies as st

from domdim.algebra.bound import BoundQuiverAlgebra, EngineConfig
from domdim.quiver.core import Arrow, Quiver, RelationSet
from domdim.quiver.dsl import QuiverDocument, parse_document
from domdim.quiver.families import FamilyDescriptor, FamilyError, generate_family, linear_quiver

CORPUS = Path(__file__).resolve().parents[1] / "corpus"


def load_corpus(name: str) -> QuiverDocument:
    return parse_document((CORPUS / f"{name}.qv").read_text(encoding="utf-8"))


def build(name: str, arrows: list[tuple[str, str, str]], relations=(), vertices=None) -> tuple[Quiver, RelationSet]:
    """Quiver from ``(label, source, target)`` triples, vertices in first-seen order."""
    if vertices is None:
        seen: list[str] = []
        for _, s, t in arrows:
            for v in (s, t):
                if v not in seen:
                    seen.append(v)
        vertices = seen
    quiver = Quiver(name, tuple(vertices), tuple(Arrow(*a) for a in arrows))
    return quiver, RelationSet(tuple(tuple(r) for r in relations))


def segments(n: int, pairs) -> tuple[Quiver, RelationSet]:
    """Linear quiver on ``n`` vertices with the relation ``start -> start + length`` per pair."""
    relations = tuple(tuple(f"a{i}" for i in range(start, start + length)) for start, length in pairs)
    return linear_quiver(n), RelationSet(relations)


@st.composite
def linear_segments(draw, n: int, *, avoid_starts=(), avoid_ends=()):
    """``(start, length)`` pairs fitting in A_n whose endpoints avoid the given vertices."""
    pairs = draw(
        st.lists(st.tuples(st.integers(1, n - 2), st.integers(2, n - 1)), min_size=1, max_size=4)
    )
    kept = [
        (start, min(length, n - start))
        for start, length in pairs
        if start not in avoid_starts and start + min(length, n - start) not in avoid_ends
    ]
    assume(kept)
    return kept


@st.composite
def matched_trees(draw, *, with_arms: bool, sizes=None, noise: int = 0):
    """Matched trees, optionally with ``noise`` extra random relations."""
    if sizes is None:
        sizes = (6, 7, 8, 9) if with_arms else (5, 7, 8, 9)
    v = draw(st.sampled_from(sizes))
    seed = draw(st.integers(0, 10**6))
    count = draw(st.integers(1, noise)) if noise else 0
    descriptor = FamilyDescriptor("matched-tree", v=v, seed=seed, with_arms=with_arms, count=count)
    return generate_family(descriptor)


@st.composite
def random_trees(draw, sizes=(4, 5, 6, 7), max_count: int = 3):
    v = draw(st.sampled_from(sizes))
    count = draw(st.integers(1, max_count))
    seed = draw(st.integers(0, 10**6))
    try:
        return generate_family(FamilyDescriptor("random-tree", v=v, count=count, seed=seed))
    except FamilyError:
        assume(False)


@pytest.fixture
def corpus_dir() -> Path:
    return CORPUS


@pytest.fixture
def corpus():
    return load_corpus


@pytest.fixture
def algebra_of():
    def make(name: str, config: EngineConfig | None = None) -> BoundQuiverAlgebra:
        document = load_corpus(name)
        return BoundQuiverAlgebra(document.quiver, document.relations, config=config)

    return make
