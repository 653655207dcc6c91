from pydantic import BaseModel
from typing import List

from models.exactfield import FieldSpec, Poly
from models.polys import PolySeqBundle, RecurrenceData


def poly_strings(field: FieldSpec, poly: Poly) -> List[str]:
    """Coefficients lowest degree first; the zero polynomial is ["0"]."""
    return [field.format(c) for c in poly.coeffs] or ["0"]


class BundleResponse(BaseModel):
    p: List[List[str]]
    p_star: List[List[str]]
    u: List[List[str]]
    u_star: List[List[str]]

    @classmethod
    def from_bundle(cls, bundle: PolySeqBundle, field: FieldSpec) -> "BundleResponse":
        convert = lambda seq: [poly_strings(field, poly) for poly in seq]  # noqa: E731
        return cls(p=convert(bundle.p), p_star=convert(bundle.p_star), u=convert(bundle.u),
                   u_star=convert(bundle.u_star))


class RecurrenceDataResponse(BaseModel):
    a: List[str]
    x: List[str]
    b: List[str]
    c: List[str]
    k: List[str]
    m: List[str]
    n: str
    a_star: List[str]
    x_star: List[str]
    b_star: List[str]
    c_star: List[str]
    k_star: List[str]
    m_star: List[str]

    @classmethod
    def from_data(cls, rec: RecurrenceData, field: FieldSpec) -> "RecurrenceDataResponse":
        fmt = lambda seq: [field.format(v) for v in seq]  # noqa: E731
        return cls(
            a=fmt(rec.a), x=fmt(rec.x), b=fmt(rec.b), c=fmt(rec.c), k=fmt(rec.k), m=fmt(rec.m),
            n=field.format(rec.n),
            a_star=fmt(rec.a_star), x_star=fmt(rec.x_star), b_star=fmt(rec.b_star),
            c_star=fmt(rec.c_star), k_star=fmt(rec.k_star), m_star=fmt(rec.m_star),
        )


class PolysResponse(BaseModel):
    polynomials: BundleResponse
    recurrence: RecurrenceDataResponse
    duality_table: List[List[str]]
    duality_holds: bool
    recurrences_hold: bool
    orthogonality_holds: bool
    matrix_identities_hold: bool
