"""Ground field selection shared by the DSL, the engine and the CLI."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from sympy import GF, QQ, isprime

FIELD_KINDS = ("rational", "prime")


@dataclass(frozen=True)
class FieldSpec:
    """Exact ground field: the rationals or a prime field F_p."""

    kind: str = "rational"
    prime: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in FIELD_KINDS:
            raise ValueError(f"Unknown field kind: {self.kind!r}")
        if self.kind == "rational" and self.prime is not None:
            raise ValueError("The rational field takes no characteristic.")
        if self.kind == "prime":
            if self.prime is None or not isprime(self.prime):
                raise ValueError(f"Field characteristic must be prime, got {self.prime}")

    @classmethod
    def parse(cls, text: str) -> FieldSpec:
        """Read ``rational``, ``prime:<p>`` or ``prime <p>``."""
        normalized = text.strip().replace(":", " ")
        parts = normalized.split()
        if parts == ["rational"]:
            return cls()
        if len(parts) == 2 and parts[0] == "prime":
            try:
                return cls("prime", int(parts[1]))
            except ValueError as exc:
                raise ValueError(f"Invalid field specification {text!r}: {exc}") from exc
        raise ValueError(f"Invalid field specification {text!r}")

    @property
    def domain(self) -> Any:
        return QQ if self.kind == "rational" else GF(self.prime)

    def to_dsl(self) -> str:
        return "rational" if self.kind == "rational" else f"prime {self.prime}"

    def __str__(self) -> str:
        return "rational" if self.kind == "rational" else f"prime:{self.prime}"


RATIONAL = FieldSpec()
