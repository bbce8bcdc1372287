"""Per-parameter scores: concept degree of match and datatype compatibility."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping

from .taxonomy import Taxonomy


class DegreeScore(enum.IntEnum):
    """Semantic compatibility of a requester concept with a candidate concept."""

    EXACT = 10  # same concept, or candidate is the immediate parent
    GENERAL = 7  # candidate is a more distant ancestor
    SPECIFIC = 3  # candidate is a descendant
    FAIL = 0


SEMANTIC_LEVELS = (DegreeScore.EXACT, DegreeScore.GENERAL, DegreeScore.SPECIFIC)


class DataType(str, enum.Enum):
    INTEGER = "Integer"
    REAL = "Real"
    STRING = "String"
    DATE = "Date"
    BOOLEAN = "Boolean"

    @classmethod
    def parse(cls, name: str) -> "DataType":
        try:
            return cls(name)
        except ValueError:
            known = ", ".join(t.value for t in cls)
            raise ValueError(f"unknown datatype {name!r} (expected one of {known})") from None

    def __str__(self) -> str:
        return self.value


def case_score(t: Taxonomy, a: str, b: str) -> DegreeScore:
    """Score requester concept ``a`` against candidate concept ``b``.

    Branches are tried in order; the first that holds decides the score.
    """
    if t.same_class(a, b) or t.is_direct_subclass(a, b):
        return DegreeScore.EXACT
    if t.subsumes(b, a):
        return DegreeScore.GENERAL
    if t.subsumes(a, b):
        return DegreeScore.SPECIFIC
    return DegreeScore.FAIL


class TypeMatrixError(ValueError):
    pass


_I, _R, _S, _D, _B = DataType
_DEFAULT = {
    _I: (10, 5, 3, 1, 1),
    _R: (10, 10, 1, 0, 1),
    _S: (7, 7, 10, 8, 3),
    _D: (1, 0, 1, 10, 0),
    _B: (1, 0, 1, 0, 10),
}


@dataclass(frozen=True)
class TypeMatrix:
    """Total score table over ordered (requester type, candidate type) pairs."""

    table: Mapping[tuple[DataType, DataType], int]

    def __post_init__(self):
        for a in DataType:
            for b in DataType:
                if (a, b) not in self.table:
                    raise TypeMatrixError(f"missing pair ({a}, {b})")
                v = self.table[a, b]
                if isinstance(v, bool) or not isinstance(v, int) or not 0 <= v <= 10:
                    raise TypeMatrixError(f"score for ({a}, {b}) must be an integer in [0, 10], got {v!r}")
            if self.table[a, a] != 10:
                raise TypeMatrixError(f"self-match ({a}, {a}) must score 10, got {self.table[a, a]}")

    def score(self, a: DataType, b: DataType) -> int:
        return self.table[a, b]

    def levels(self) -> tuple[int, ...]:
        """Distinct positive scores, highest first."""
        return tuple(sorted({v for v in self.table.values() if v > 0}, reverse=True))

    def to_dict(self) -> dict[str, dict[str, int]]:
        return {str(a): {str(b): self.table[a, b] for b in DataType} for a in DataType}


def default_type_matrix() -> TypeMatrix:
    return TypeMatrix({(a, b): row[j] for a, row in _DEFAULT.items() for j, b in enumerate(DataType)})


def type_matrix_from_dict(doc: object) -> TypeMatrix:
    if not isinstance(doc, dict):
        raise TypeMatrixError("type matrix document must be an object of rows")
    table = {}
    for row_name, row in doc.items():
        if not isinstance(row, dict):
            raise TypeMatrixError(f"row {row_name!r} must be an object")
        try:
            a = DataType.parse(row_name)
            for col_name, v in row.items():
                table[a, DataType.parse(col_name)] = v
        except ValueError as exc:
            raise TypeMatrixError(str(exc)) from None
    return TypeMatrix(table)


def load_type_matrix(source: str | bytes) -> TypeMatrix:
    try:
        doc = json.loads(source)
    except json.JSONDecodeError as exc:
        raise TypeMatrixError(f"invalid JSON: {exc}") from exc
    return type_matrix_from_dict(doc)


def read_type_matrix(path: str | Path) -> TypeMatrix:
    return load_type_matrix(Path(path).read_text(encoding="utf-8"))


def type_score(m: TypeMatrix, a: DataType, b: DataType) -> int:
    return m.score(a, b)
