from pydantic import BaseModel, validator
from typing import Optional, List, Dict, Union

from models.errors import DivisionByZero, LeonardError, ParseError
from models.exactfield import FieldKind, FieldSpec, Matrix

# A field value on the wire: "a", "a/b", or a bare integer
FieldValue = Union[int, str]
FieldLabel = Union[str, Dict[str, int]]


def parse_field_label(label: FieldLabel) -> FieldSpec:
    """``"rational"``, ``"p:7"`` or ``{"prime": 7}``."""
    if isinstance(label, dict):
        if set(label) != {"prime"}:
            raise ValueError('field object must look like {"prime": p}')
        return FieldSpec.prime(label["prime"])
    return FieldSpec.from_label(label)


def field_label(field: FieldSpec) -> FieldLabel:
    if field.kind is FieldKind.rational:
        return "rational"
    return {"prime": field.modulus}


def to_value(field: FieldSpec, value: FieldValue):
    try:
        return field(str(value))
    except DivisionByZero as exc:
        raise ParseError(f"{value!r} has a zero denominator in {field}") from exc


def to_values(field: FieldSpec, values: List[FieldValue]) -> tuple:
    return tuple(to_value(field, v) for v in values)


def to_strings(field: FieldSpec, values) -> List[str]:
    return [field.format(v) for v in values]


class FieldBase(BaseModel):
    field: Optional[FieldLabel] = None

    @validator('field')
    def validate_field(cls, v):
        if v is None:
            return v
        try:
            parse_field_label(v)
        except LeonardError as exc:
            raise ValueError(exc.detail)
        return v

    def resolve_field(self, override: Optional[FieldSpec], default: FieldSpec) -> FieldSpec:
        """Command-line override first, then the file's own field, then the default."""
        if override is not None:
            return override
        if self.field is not None:
            return parse_field_label(self.field)
        return default


class MatrixBase(FieldBase):
    n: int
    entries: List[List[FieldValue]]

    @validator('n')
    def validate_n(cls, v):
        if v < 1:
            raise ValueError('Matrix dimension must be at least 1')
        return v

    @validator('entries')
    def validate_square(cls, v, values):
        n = values.get('n')
        if n is not None and (len(v) != n or any(len(row) != n for row in v)):
            raise ValueError(f'entries must form a {n}x{n} array')
        return v


class MatrixCreate(MatrixBase):
    def to_matrix(self, field: FieldSpec) -> Matrix:
        return Matrix(field, tuple(to_values(field, row) for row in self.entries))


class MatrixResponse(BaseModel):
    field: FieldLabel
    n: int
    entries: List[List[str]]

    @classmethod
    def from_matrix(cls, m: Matrix) -> "MatrixResponse":
        return cls(
            field=field_label(m.field),
            n=m.n,
            entries=[to_strings(m.field, row) for row in m.rows],
        )
