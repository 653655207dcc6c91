from pydantic import BaseModel, validator
from typing import Optional, List

from models.exactfield import FieldSpec
from models.params import (
    ConditionStatus, ParameterData, QRacahInput, RecurrenceClass, RecurrenceKind, ValidationReport,
)
from schemas.field_schemas import FieldBase, FieldLabel, FieldValue, field_label, to_strings, to_value, to_values


class ParameterBase(FieldBase):
    d: int
    theta: List[FieldValue]
    theta_star: List[FieldValue]
    varphi: List[FieldValue]
    phi: List[FieldValue]

    @validator('d')
    def validate_d(cls, v):
        if v < 0:
            raise ValueError('Diameter must be nonnegative')
        return v

    @validator('theta', 'theta_star')
    def validate_eigenvalue_length(cls, v, values):
        d = values.get('d')
        if d is not None and len(v) != d + 1:
            raise ValueError(f'expected {d + 1} entries for d={d}')
        return v

    @validator('varphi', 'phi')
    def validate_split_length(cls, v, values):
        d = values.get('d')
        if d is not None and len(v) != d:
            raise ValueError(f'expected {d} entries for d={d}')
        return v


class ParameterCreate(ParameterBase):
    def to_params(self, field: FieldSpec) -> ParameterData:
        return ParameterData(
            field, self.d,
            to_values(field, self.theta), to_values(field, self.theta_star),
            to_values(field, self.varphi), to_values(field, self.phi),
        )


class ParameterResponse(BaseModel):
    field: FieldLabel
    d: int
    theta: List[str]
    theta_star: List[str]
    varphi: List[str]
    phi: List[str]

    @classmethod
    def from_params(cls, p: ParameterData) -> "ParameterResponse":
        return cls(
            field=field_label(p.field),
            d=p.d,
            theta=to_strings(p.field, p.theta),
            theta_star=to_strings(p.field, p.theta_star),
            varphi=to_strings(p.field, p.varphi),
            phi=to_strings(p.field, p.phi),
        )


class ConditionResponse(BaseModel):
    name: str
    status: ConditionStatus
    indices: List[int] = []
    failures: List[str] = []


class ValidationResponse(BaseModel):
    valid: bool
    conditions: List[ConditionResponse]
    common_value: Optional[str] = None

    @classmethod
    def from_report(cls, report: ValidationReport, field: FieldSpec) -> "ValidationResponse":
        return cls(
            valid=report.valid,
            conditions=[
                ConditionResponse(name=c.name, status=c.status, indices=list(c.indices), failures=list(c.failures))
                for c in report.conditions
            ],
            common_value=None if report.common_value is None else field.format(report.common_value),
        )


class RecurrenceResponse(BaseModel):
    kind: RecurrenceKind
    beta: Optional[str] = None
    gamma: Optional[str] = None
    rho: Optional[str] = None
    satisfies: List[RecurrenceKind] = []

    @classmethod
    def from_class(cls, rc: RecurrenceClass, field: FieldSpec) -> "RecurrenceResponse":
        fmt = lambda v: None if v is None else field.format(v)  # noqa: E731
        return cls(
            kind=rc.kind, beta=fmt(rc.beta), gamma=fmt(rc.gamma), rho=fmt(rc.rho),
            satisfies=[w.kind for w in rc.witnesses],
        )


class ParameterReport(BaseModel):
    parameters: ParameterResponse
    validation: ValidationResponse
    theta_recurrence: RecurrenceResponse
    theta_star_recurrence: RecurrenceResponse


class RelativeResponse(BaseModel):
    element: str
    parameters: ParameterResponse
    valid: bool
    matrix_check: Optional[bool] = None


class RelativesResponse(BaseModel):
    field: FieldLabel
    relatives: List[RelativeResponse]


class QRacahBase(FieldBase):
    d: int
    q: FieldValue
    h: FieldValue
    h_star: FieldValue
    r1: FieldValue
    r2: FieldValue
    s: FieldValue
    s_star: FieldValue
    theta0: FieldValue = "0"
    theta_star0: FieldValue = "0"

    @validator('d')
    def validate_d(cls, v):
        if v < 0:
            raise ValueError('Diameter must be nonnegative')
        return v


class QRacahCreate(QRacahBase):
    def to_input(self, field: FieldSpec) -> QRacahInput:
        values = {name: to_value(field, getattr(self, name)) for name in (
            'q', 'h', 'h_star', 'r1', 'r2', 's', 's_star', 'theta0', 'theta_star0')}
        return QRacahInput(field, self.d, **values)


class QRacahResponse(BaseModel):
    parameters: ParameterResponse
    validation: ValidationResponse
    u_table: Optional[List[List[str]]] = None
    hypergeometric_table: Optional[List[List[str]]] = None
    tables_agree: Optional[bool] = None
