"""Arms of tree quivers and the arm-free core obtained by truncating them."""

from __future__ import annotations

from dataclasses import dataclass

from domdim.quiver.core import Quiver, QuiverClass, RelationSet, ValidationError, validate

LEFT = "left"
RIGHT = "right"


@dataclass(frozen=True)
class Arm:
    """A linearly oriented segment attached to a branching vertex.

    Left arms run from a source to an immediate predecessor of ``branching``;
    right arms run from an immediate successor of ``branching`` to a sink.
    """

    side: str
    vertices: tuple[str, ...]
    branching: str

    @property
    def trivial(self) -> bool:
        return len(self.vertices) == 1

    @property
    def anchor(self) -> str:
        """The vertex kept in the core: the one adjacent to the branching vertex."""
        return self.vertices[-1] if self.side == LEFT else self.vertices[0]


@dataclass(frozen=True)
class ArmDecomposition:
    left_arms: tuple[Arm, ...]
    right_arms: tuple[Arm, ...]

    @property
    def all_arms(self) -> tuple[Arm, ...]:
        return self.left_arms + self.right_arms

    @property
    def without_arms(self) -> bool:
        return all(arm.trivial for arm in self.all_arms)

    def left_vertices(self) -> tuple[str, ...]:
        return tuple(v for arm in self.left_arms for v in arm.vertices)

    def right_vertices(self) -> tuple[str, ...]:
        return tuple(v for arm in self.right_arms for v in arm.vertices)


@dataclass(frozen=True)
class CoreDerivation:
    core_quiver: Quiver
    core_relations: RelationSet
    vertex_map: dict[str, str]
    inner_vertices: frozenset[str]
    decomposition: ArmDecomposition

    @property
    def identity(self) -> bool:
        return self.decomposition.without_arms


def _require_branching_tree(quiver: Quiver) -> QuiverClass:
    info = validate(quiver)
    if not info.is_tree:
        raise ValidationError(f"Arms are defined for trees only; {quiver.name} is not a tree.")
    if info.is_linear_An:
        raise ValidationError(f"{quiver.name} is linearly oriented and has no branching vertex.")
    return info


def _walk(quiver: Quiver, start: str, branching: set[str], side: str) -> Arm:
    vertices = [start]
    current = start
    while True:
        step = quiver.outgoing(current) if side == LEFT else quiver.incoming(current)
        if len(step) != 1:
            raise ValidationError(f"Arm walk from {start} stalled at {current}.")
        following = step[0].target if side == LEFT else step[0].source
        if following in branching:
            ordered = tuple(vertices) if side == LEFT else tuple(reversed(vertices))
            return Arm(side, ordered, following)
        vertices.append(following)
        current = following


def arms(quiver: Quiver) -> ArmDecomposition:
    """All left and right arms of a tree with at least one branching vertex."""
    info = _require_branching_tree(quiver)
    branching = {b.vertex for b in info.branching_vertices}
    left = tuple(_walk(quiver, s, branching, LEFT) for s in info.sources if s not in branching)
    right = tuple(_walk(quiver, t, branching, RIGHT) for t in info.sinks if t not in branching)
    return ArmDecomposition(left, right)


def derive_core(quiver: Quiver, relations: RelationSet) -> CoreDerivation:
    """Truncate every non-trivial arm to the vertex next to its branching vertex."""
    decomposition = arms(quiver)
    dropped = {
        v for arm in decomposition.all_arms for v in arm.vertices if v != arm.anchor
    }
    if dropped:
        core = quiver.subquiver(
            (v for v in quiver.vertices if v not in dropped), name=f"{quiver.name}_core"
        )
        core_relations = relations.restricted_to(core)
    else:
        core, core_relations = quiver, relations

    core_info = validate(core)
    boundary = set(core_info.sources) | set(core_info.sinks)
    return CoreDerivation(
        core_quiver=core,
        core_relations=core_relations,
        vertex_map={v: v for v in core.vertices},
        inner_vertices=frozenset(v for v in core.vertices if v not in boundary),
        decomposition=decomposition,
    )
