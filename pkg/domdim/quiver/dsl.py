"""Line-oriented text format for quivers with monomial relations.

Relations are written in traversal order: ``rel a b`` is the path that runs
through arrow ``a`` first and ``b`` second (the composite usually written
``ba``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from domdim.field import RATIONAL, FieldSpec
from domdim.quiver.core import Arrow, Quiver, RelationSet, ValidationError

IDENTIFIER = re.compile(r"[A-Za-z0-9_][A-Za-z0-9_.']*")
TOKEN = re.compile(r"\S+")
DIRECTIVES = ("quiver", "field", "vertices", "arrow", "rel")


class ParseError(ValueError):
    """Raised for malformed documents; ``line`` and ``column`` are 1-based."""

    def __init__(self, message: str, line: int, column: int = 1) -> None:
        super().__init__(f"line {line}, column {column}: {message}")
        self.reason = message
        self.line = line
        self.column = column


@dataclass(frozen=True)
class QuiverDocument:
    quiver: Quiver
    relations: RelationSet
    field: FieldSpec = RATIONAL


@dataclass(frozen=True)
class _Token:
    text: str
    line: int
    column: int


def _tokenize(text: str) -> list[list[_Token]]:
    lines: list[list[_Token]] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0]
        tokens = [_Token(m.group(), number, m.start() + 1) for m in TOKEN.finditer(content)]
        if tokens:
            lines.append(tokens)
    return lines


def _identifier(token: _Token, what: str) -> str:
    if not IDENTIFIER.fullmatch(token.text):
        raise ParseError(f"invalid {what} identifier {token.text!r}", token.line, token.column)
    return token.text


def parse_document(text: str) -> QuiverDocument:
    """Parse a document, keeping its ``field`` directive."""
    name: str | None = None
    field: FieldSpec | None = None
    vertices: list[str] = []
    vertex_tokens: dict[str, _Token] = {}
    arrows: list[Arrow] = []
    arrow_tokens: dict[str, _Token] = {}
    relations: list[list[_Token]] = []

    for tokens in _tokenize(text):
        head, args = tokens[0], tokens[1:]
        directive = head.text
        if directive not in DIRECTIVES:
            raise ParseError(f"unknown directive {directive!r}", head.line, head.column)

        if directive == "quiver":
            if name is not None:
                raise ParseError("duplicate 'quiver' header", head.line, head.column)
            if len(args) != 1:
                raise ParseError("expected 'quiver <name>'", head.line, head.column)
            name = _identifier(args[0], "quiver")

        elif directive == "field":
            if field is not None:
                raise ParseError("duplicate 'field' directive", head.line, head.column)
            words = [token.text for token in args]
            if words == ["rational"]:
                field = RATIONAL
            elif len(words) == 2 and words[0] == "prime" and words[1].isdigit():
                try:
                    field = FieldSpec("prime", int(words[1]))
                except ValueError as exc:
                    raise ParseError(str(exc), args[1].line, args[1].column) from exc
            else:
                raise ParseError("expected 'field rational' or 'field prime <p>'", head.line, head.column)

        elif directive == "vertices":
            if not args:
                raise ParseError("expected at least one vertex", head.line, head.column)
            for token in args:
                vertex = _identifier(token, "vertex")
                if vertex in vertex_tokens:
                    raise ParseError(f"duplicate vertex {vertex!r}", token.line, token.column)
                vertex_tokens[vertex] = token
                vertices.append(vertex)

        elif directive == "arrow":
            if len(args) != 4 or args[2].text != "->":
                raise ParseError("expected 'arrow <label> <src> -> <tgt>'", head.line, head.column)
            label = _identifier(args[0], "arrow")
            if label in arrow_tokens:
                raise ParseError(f"duplicate arrow label {label!r}", args[0].line, args[0].column)
            for token in (args[1], args[3]):
                if token.text not in vertex_tokens:
                    raise ParseError(f"unknown vertex {token.text!r}", token.line, token.column)
            arrow_tokens[label] = args[0]
            arrows.append(Arrow(label, args[1].text, args[3].text))

        else:
            relations.append(tokens)

    if name is None:
        raise ParseError("missing 'quiver <name>' header", 1, 1)
    if not vertices:
        raise ParseError("missing 'vertices' directive", 1, 1)

    quiver = Quiver(name=name, vertices=tuple(vertices), arrows=tuple(arrows))
    sequences = [_relation(quiver, tokens) for tokens in relations]
    try:
        relation_set = RelationSet(tuple(sequences))
    except ValidationError as exc:
        raise ParseError(str(exc), 1, 1) from exc
    return QuiverDocument(quiver, relation_set, field or RATIONAL)


def _relation(quiver: Quiver, tokens: list[_Token]) -> tuple[str, ...]:
    head, args = tokens[0], tokens[1:]
    if len(args) < 2:
        raise ParseError("relation length < 2", head.line, head.column)
    previous: Arrow | None = None
    for token in args:
        if not quiver.has_arrow(token.text):
            raise ParseError(f"unknown arrow {token.text!r}", token.line, token.column)
        arrow = quiver.arrow(token.text)
        if previous is not None and previous.target != arrow.source:
            raise ParseError(
                f"relation is not composable: {previous.label} ends at {previous.target}, "
                f"{arrow.label} starts at {arrow.source}",
                token.line,
                token.column,
            )
        previous = arrow
    return tuple(token.text for token in args)


def parse(text: str) -> tuple[Quiver, RelationSet]:
    document = parse_document(text)
    return document.quiver, document.relations


def serialize(quiver: Quiver, relations: RelationSet, field: FieldSpec | None = None) -> str:
    """Render ``quiver`` and ``relations`` in the text format."""
    lines = [f"quiver {quiver.name}"]
    if field is not None:
        lines.append(f"field {field.to_dsl()}")
    lines.append("vertices " + " ".join(quiver.vertices))
    lines.extend(f"arrow {a.label} {a.source} -> {a.target}" for a in quiver.arrows)
    lines.extend("rel " + " ".join(relation) for relation in relations)
    return "\n".join(lines) + "\n"
