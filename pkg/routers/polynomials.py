import argparse
import logging
from typing import Optional

from main import read_params
from models.exactfield import FieldSpec
from models.polys import (
    build_poly_bundle, duality_table, matrix_identity_residuals, orthogonality_check, recurrence_data,
    recurrence_residuals,
)
from models.system import build_split_form
from schemas.field_schemas import to_strings
from schemas.poly_schemas import BundleResponse, PolysResponse, RecurrenceDataResponse

logger = logging.getLogger(__name__)


def polys(args: argparse.Namespace, field_override: Optional[FieldSpec]):
    """Polynomial sequences of the system with their recurrence and orthogonality checks"""
    p = read_params(args.params, field_override)
    bundle = build_poly_bundle(p)
    rep = build_split_form(p)
    rec = recurrence_data(rep, p)
    table = duality_table(bundle, p)
    checks = dict(
        duality_holds=table.symmetric,
        recurrences_hold=recurrence_residuals(bundle, rec, p).ok,
        orthogonality_holds=orthogonality_check(bundle, rec, p).ok,
        matrix_identities_hold=matrix_identity_residuals(bundle, rep).ok,
    )
    logger.info("polynomials for d=%d over %s: %s", p.d, p.field, checks)
    payload = PolysResponse(
        polynomials=BundleResponse.from_bundle(bundle, p.field),
        recurrence=RecurrenceDataResponse.from_data(rec, p.field),
        duality_table=[to_strings(p.field, row) for row in table.u_values],
        **checks,
    )
    return (0 if all(checks.values()) else 1), payload


def register(subparsers):
    parser = subparsers.add_parser("polys", help="polynomial sequences of the split system")
    parser.add_argument("params")
    parser.set_defaults(handler=polys)
