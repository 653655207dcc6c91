from pydantic import BaseModel
from typing import List

from models.system import LeonardSystemRep, RecognitionResult, TraceCoeffs
from schemas.field_schemas import FieldLabel, MatrixCreate, MatrixResponse, field_label, to_strings
from schemas.parameter_schemas import ParameterResponse


class TraceResponse(BaseModel):
    a: List[str]
    a_star: List[str]


class SystemResponse(BaseModel):
    field: FieldLabel
    d: int
    A: MatrixResponse
    A_star: MatrixResponse
    E: List[MatrixResponse]
    E_star: List[MatrixResponse]
    theta: List[str]
    theta_star: List[str]

    @classmethod
    def from_rep(cls, rep: LeonardSystemRep) -> "SystemResponse":
        return cls(
            field=field_label(rep.field),
            d=rep.d,
            A=MatrixResponse.from_matrix(rep.A),
            A_star=MatrixResponse.from_matrix(rep.A_star),
            E=[MatrixResponse.from_matrix(m) for m in rep.E],
            E_star=[MatrixResponse.from_matrix(m) for m in rep.E_star],
            theta=to_strings(rep.field, rep.theta),
            theta_star=to_strings(rep.field, rep.theta_star),
        )


class BuildResponse(BaseModel):
    parameters: ParameterResponse
    system: SystemResponse
    traces: TraceResponse
    system_check: bool
    split_transforms: bool

    @staticmethod
    def traces_from(coeffs: TraceCoeffs, rep: LeonardSystemRep) -> TraceResponse:
        return TraceResponse(a=to_strings(rep.field, coeffs.a), a_star=to_strings(rep.field, coeffs.a_star))


class OrderingResponse(BaseModel):
    label: str
    theta: List[str]
    theta_star: List[str]
    parameters: ParameterResponse


class RecognitionResponse(BaseModel):
    field: FieldLabel
    d: int
    leonard_pair: bool
    orderings: List[OrderingResponse]

    @classmethod
    def from_result(cls, result: RecognitionResult) -> "RecognitionResponse":
        return cls(
            field=field_label(result.field),
            d=result.d,
            leonard_pair=True,
            orderings=[
                OrderingResponse(
                    label=o.label,
                    theta=to_strings(result.field, o.system.theta),
                    theta_star=to_strings(result.field, o.system.theta_star),
                    parameters=ParameterResponse.from_params(o.params),
                )
                for o in result.orderings
            ],
        )


class PairCreate(BaseModel):
    A: MatrixCreate
    A_star: MatrixCreate


class BuildOutputCreate(BaseModel):
    """A ``build`` report read back in; only the matrices are used."""
    system: PairCreate
