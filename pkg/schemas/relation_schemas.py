from pydantic import BaseModel
from typing import Optional, List

from models.relations import CommutatorReport, RelationScalars, VanishingReport
from schemas.field_schemas import MatrixResponse, to_strings


class RelationScalarsResponse(BaseModel):
    beta: str
    gamma: str
    gamma_star: str
    rho: str
    rho_star: str
    unique: bool

    @classmethod
    def from_scalars(cls, s: RelationScalars) -> "RelationScalarsResponse":
        fmt = s.field.format
        return cls(
            beta=fmt(s.beta), gamma=fmt(s.gamma), gamma_star=fmt(s.gamma_star),
            rho=fmt(s.rho), rho_star=fmt(s.rho_star), unique=s.unique,
        )


class CommutatorResponse(BaseModel):
    holds: bool
    residual: MatrixResponse
    residual_star: MatrixResponse
    nonzero: List[List[int]] = []
    nonzero_star: List[List[int]] = []

    @classmethod
    def from_report(cls, report: CommutatorReport) -> "CommutatorResponse":
        return cls(
            holds=report.holds,
            residual=MatrixResponse.from_matrix(report.residual),
            residual_star=MatrixResponse.from_matrix(report.residual_star),
            nonzero=[list(pos) for pos in report.nonzero],
            nonzero_star=[list(pos) for pos in report.nonzero_star],
        )


class VanishingResponse(BaseModel):
    vacuous: bool
    matrix_side: bool
    recursion_side: bool
    single_product: bool
    agree: bool
    recursion_residuals: List[str] = []

    @classmethod
    def from_report(cls, report: VanishingReport, field) -> "VanishingResponse":
        return cls(
            vacuous=report.vacuous,
            matrix_side=report.matrix_side,
            recursion_side=report.recursion_side,
            single_product=report.single_product,
            agree=report.agree,
            recursion_residuals=to_strings(field, report.recursion_residuals),
        )


class RelationsResponse(BaseModel):
    scalars: RelationScalarsResponse
    relations: CommutatorResponse
    entry_formulas_match: bool
    vanishing_products: VanishingResponse
    preset: Optional[str] = None
    preset_scalars: Optional[RelationScalarsResponse] = None
    preset_relations: Optional[CommutatorResponse] = None
