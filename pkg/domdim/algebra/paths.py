"""Nonzero-path bases of monomial bound quiver algebras."""

from __future__ import annotations

from collections.abc import Sequence
from functools import cached_property

from domdim.quiver.core import (
    Path,
    Quiver,
    RelationSet,
    contains_run,
    path_sort_key,
    validate,
    walk_paths,
)


def is_zero_path(path: Path | Sequence[str], relations: RelationSet) -> bool:
    """True iff some relation occurs as a contiguous block of the path's arrows."""
    arrows = path.arrows if isinstance(path, Path) else tuple(path)
    return any(contains_run(arrows, relation) for relation in relations)


class PathBasis:
    """The nonzero paths of ``quiver`` modulo ``relations``, indexed by endpoints."""

    def __init__(self, quiver: Quiver, relations: RelationSet) -> None:
        validate(quiver, relations)
        self.quiver = quiver
        self.relations = relations

    def __repr__(self) -> str:
        return f"PathBasis({self.quiver.name}, {len(self.relations)} relations)"

    @cached_property
    def nonzero_paths(self) -> tuple[Path, ...]:
        keep = lambda path: not is_zero_path(path, self.relations)  # noqa: E731
        found = [p for v in self.quiver.vertices for p in walk_paths(self.quiver, v, keep)]
        return tuple(sorted(found, key=path_sort_key(self.quiver)))

    @cached_property
    def _arrow_sequences(self) -> frozenset[tuple[str, ...]]:
        return frozenset(p.arrows for p in self.nonzero_paths if not p.is_trivial)

    @cached_property
    def _by_endpoints(self) -> dict[tuple[str, str], tuple[Path, ...]]:
        table: dict[tuple[str, str], list[Path]] = {}
        for path in self.nonzero_paths:
            table.setdefault((path.source, path.target), []).append(path)
        return {key: tuple(paths) for key, paths in table.items()}

    @property
    def dimension(self) -> int:
        return len(self.nonzero_paths)

    def nonzero_paths_from(self, vertex: str) -> list[Path]:
        self.quiver.order(vertex)
        return [p for p in self.nonzero_paths if p.source == vertex]

    def nonzero_paths_into(self, vertex: str) -> list[Path]:
        self.quiver.order(vertex)
        return [p for p in self.nonzero_paths if p.target == vertex]

    def between(self, source: str, target: str) -> tuple[Path, ...]:
        return self._by_endpoints.get((source, target), ())

    def is_nonzero(self, path: Path | Sequence[str]) -> bool:
        arrows = path.arrows if isinstance(path, Path) else tuple(path)
        return not arrows or arrows in self._arrow_sequences

    def maximal_paths(self) -> list[Path]:
        """Nonzero paths of positive length that no arrow extends at either end."""
        maximal = []
        for path in self.nonzero_paths:
            if path.is_trivial:
                continue
            forward = any(
                self.is_nonzero(path.arrows + (a.label,)) for a in self.quiver.outgoing(path.target)
            )
            backward = any(
                self.is_nonzero((a.label,) + path.arrows) for a in self.quiver.incoming(path.source)
            )
            if not forward and not backward:
                maximal.append(path)
        return maximal
