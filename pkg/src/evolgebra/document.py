"""Algebra documents and command reports.

An algebra document is a JSON (or TOML) object::

    {"dimension": 3, "field": "rational", "name": "E3",
     "matrix": [["0", "1", "1"], ["0", "0", "1"], ["0", "0", "0"]]}

Scalars are strings so rationals stay exact; plain integers are accepted.
"""

import json
import logging
from dataclasses import dataclass
from dataclasses import field
from pathlib import Path
from typing import Any
from typing import Dict
from typing import List
from typing import Optional
from typing import Union

import toml

from evolgebra.algebra import EvolutionAlgebra
from evolgebra.errors import AlgebraParseError
from evolgebra.errors import DomainError
from evolgebra.numeric import NEAR_ZERO_WARN
from evolgebra.numeric import FieldTag


logger = logging.getLogger(__name__)

_WIDTH = {FieldTag.RATIONAL: 0, FieldTag.REAL: 1, FieldTag.COMPLEX: 2}


def _field_tag(value: Any, name: str = "field") -> FieldTag:
    try:
        return FieldTag(value)
    except ValueError:
        choices = ", ".join(tag.value for tag in FieldTag)
        raise AlgebraParseError(
            f"unknown field tag {value!r} (expected one of {choices})", field=name
        ) from None


@dataclass(frozen=True)
class AlgebraDocument:
    """The structured-text form of an algebra.

    Attributes:
        dimension: Number of basis vectors.
        field: Field tag text.
        matrix: Structural constants as scalar strings, row by row.
        name: Optional label.
    """

    dimension: int
    field: str
    matrix: List[List[str]]
    name: Optional[str] = None

    @classmethod
    def from_mapping(cls, data: Any) -> "AlgebraDocument":
        """Validate the shape of a decoded document."""
        if not isinstance(data, dict):
            raise AlgebraParseError("the document must be an object")
        for key in ("dimension", "field", "matrix"):
            if key not in data:
                raise AlgebraParseError("missing key", field=key)

        dimension = data["dimension"]
        if isinstance(dimension, bool) or not isinstance(dimension, int):
            raise AlgebraParseError("dimension must be an integer", field="dimension")
        if dimension < 2:
            raise AlgebraParseError(
                f"dimension must be at least 2, got {dimension}", field="dimension"
            )
        tag = _field_tag(data["field"])

        matrix = data["matrix"]
        if not isinstance(matrix, list):
            raise AlgebraParseError("matrix must be a list of rows", field="matrix")
        if len(matrix) != dimension:
            raise AlgebraParseError(
                f"matrix has {len(matrix)} rows, dimension is {dimension}",
                field="matrix",
            )
        rows: List[List[str]] = []
        for i, row in enumerate(matrix, start=1):
            if not isinstance(row, list) or len(row) != dimension:
                length = len(row) if isinstance(row, list) else "no"
                raise AlgebraParseError(
                    f"row {i} has {length} entries, expected {dimension}",
                    field=f"matrix[{i}]",
                )
            rows.append(
                [
                    _scalar_text(v, f"matrix[{i}][{j}]")
                    for j, v in enumerate(row, start=1)
                ]
            )

        name = data.get("name")
        if name is not None and not isinstance(name, str):
            raise AlgebraParseError("name must be a string", field="name")
        return cls(dimension, tag.value, rows, name)

    @classmethod
    def loads(cls, text: str, fmt: str = "json") -> "AlgebraDocument":
        """Decode JSON or TOML text.

        Raises:
            AlgebraParseError: With the line of a syntax error, or the
                field at fault.
        """
        if fmt == "toml":
            try:
                data = toml.loads(text)
            except toml.TomlDecodeError as exc:
                raise AlgebraParseError(exc.msg, line=exc.lineno) from exc
        else:
            try:
                data = json.loads(text)
            except json.JSONDecodeError as exc:
                raise AlgebraParseError(exc.msg, line=exc.lineno) from exc
        return cls.from_mapping(data)

    @classmethod
    def load(cls, path: Union[str, Path]) -> "AlgebraDocument":
        """Read a document; a ``.toml`` suffix selects TOML."""
        path = Path(path)
        try:
            text = path.read_text()
        except OSError as exc:
            raise AlgebraParseError(f"cannot read {path}: {exc.strerror}") from exc
        return cls.loads(text, "toml" if path.suffix == ".toml" else "json")

    @classmethod
    def from_algebra(cls, E: EvolutionAlgebra) -> "AlgebraDocument":
        """The document describing an algebra."""
        return cls(E.n, E.field.value, E.structure.to_strings(), E.name)

    def to_dict(self) -> Dict[str, Any]:
        """Plain data, in the key order documents are written in."""
        data: Dict[str, Any] = {"dimension": self.dimension, "field": self.field}
        if self.name is not None:
            data["name"] = self.name
        data["matrix"] = self.matrix
        return data

    def to_algebra(self, field_override: Optional[FieldTag] = None) -> EvolutionAlgebra:
        """Parse every scalar and build the algebra.

        A wider override field promotes the parsed values; a narrower one
        reparses the strings, so ``0.5`` does not become rational.
        """
        declared = FieldTag(self.field)
        target = field_override or declared
        parse_in = declared if _WIDTH[target] >= _WIDTH[declared] else target
        rows = []
        for i, row in enumerate(self.matrix, start=1):
            parsed = []
            for j, text in enumerate(row, start=1):
                try:
                    parsed.append(parse_in.parse(text))
                except DomainError as exc:
                    raise AlgebraParseError(
                        str(exc), field=f"matrix[{i}][{j}]"
                    ) from exc
            rows.append(parsed)
        E = EvolutionAlgebra.from_rows(rows, parse_in, self.name)
        return E.astype(target)


def _scalar_text(value: Any, name: str) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return str(value)
    raise AlgebraParseError(
        f"scalars must be strings or integers, got {type(value).__name__}", field=name
    )


def algebra_warnings(E: EvolutionAlgebra) -> List[str]:
    """Warnings about float entries close enough to zero to flip the classification."""
    return [
        f"a_{i}{j} = {E.field.format(E.a(i, j))} is below {NEAR_ZERO_WARN:g}; "
        "the classification may be sensitive to it"
        for i, j in E.near_zero_entries()
    ]


def parse_algebra(
    source: Union[str, Path], field_override: Optional[FieldTag] = None
) -> EvolutionAlgebra:
    """Build an algebra from a document path, or from JSON text.

    Text starting with ``{`` is decoded directly; anything else is a path.
    Near-zero entries are logged as warnings.
    """
    if isinstance(source, str) and source.lstrip().startswith("{"):
        document = AlgebraDocument.loads(source)
    else:
        document = AlgebraDocument.load(source)
    E = document.to_algebra(field_override)
    for warning in algebra_warnings(E):
        logger.warning(warning)
    return E


@dataclass
class Report:
    """The machine-readable outcome of one command.

    Serialization is deterministic: keys keep the order they were added
    in and floats print with full precision.
    """

    command: str
    inputs: Dict[str, Any] = field(default_factory=dict)
    results: Dict[str, Any] = field(default_factory=dict)
    warnings: List[str] = field(default_factory=list)
    error: Optional[Dict[str, str]] = None

    def fail(self, exc: Exception) -> "Report":
        """Record an error."""
        self.error = {"type": type(exc).__name__, "message": str(exc)}
        return self

    def to_dict(self) -> Dict[str, Any]:
        """Plain data for serialization."""
        data: Dict[str, Any] = {
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "warnings": self.warnings,
        }
        if self.error is not None:
            data["error"] = self.error
        return data

    def to_json(self, indent: int = 2) -> str:
        """The report as JSON text."""
        return json.dumps(self.to_dict(), indent=indent, allow_nan=False)
