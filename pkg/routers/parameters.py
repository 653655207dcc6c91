import argparse
import logging
from typing import Optional

from main import default_field, parse_input, read_params
from models.errors import InvalidParameters
from models.exactfield import FieldSpec
from models.params import (
    D4Element, classify_recurrence, d4_elements, d4_transform, qracah_params, validate_parameter_array,
)
from models.polys import build_poly_bundle, duality_table, qracah_u_table
from models.system import build_split_form, extract_parameters, relative_system
from schemas.field_schemas import field_label, to_strings
from schemas.parameter_schemas import (
    ParameterReport, ParameterResponse, QRacahCreate, QRacahResponse, RecurrenceResponse,
    RelativeResponse, RelativesResponse, ValidationResponse,
)

logger = logging.getLogger(__name__)


def validate(args: argparse.Namespace, field_override: Optional[FieldSpec]):
    """Check conditions (i)-(v) and classify both eigenvalue sequences"""
    p = read_params(args.params, field_override)
    report = validate_parameter_array(p)
    logger.info("validate d=%d over %s: valid=%s", p.d, p.field, report.valid)
    payload = ParameterReport(
        parameters=ParameterResponse.from_params(p),
        validation=ValidationResponse.from_report(report, p.field),
        theta_recurrence=RecurrenceResponse.from_class(classify_recurrence(p.theta, p.field), p.field),
        theta_star_recurrence=RecurrenceResponse.from_class(classify_recurrence(p.theta_star, p.field), p.field),
    )
    return (0 if report.valid else 1), payload


def relatives(args: argparse.Namespace, field_override: Optional[FieldSpec]):
    """Parameter arrays of the relatives, optionally rebuilt at matrix level"""
    p = read_params(args.params, field_override)
    report = validate_parameter_array(p)
    if not report.valid:
        raise InvalidParameters("parameter array fails validation", report, p.field)
    elements = [D4Element.from_label(args.element)] if args.element else d4_elements()
    rep = build_split_form(p) if args.check else None
    results = []
    for g in elements:
        q = d4_transform(p, g)
        matrix_check = None
        if rep is not None:
            matrix_check = extract_parameters(relative_system(rep, g.inverse())) == q
        results.append(RelativeResponse(
            element=g.label,
            parameters=ParameterResponse.from_params(q),
            valid=validate_parameter_array(q).valid,
            matrix_check=matrix_check,
        ))
    logger.info("computed %d relatives for d=%d", len(results), p.d)
    ok = all(r.valid and r.matrix_check is not False for r in results)
    return (0 if ok else 1), RelativesResponse(field=field_label(p.field), relatives=results)


def qracah(args: argparse.Namespace, field_override: Optional[FieldSpec]):
    """Generate the q-Racah parameter array and optionally check the 4phi3 grid"""
    data = parse_input({
        "d": args.d, "q": args.q, "h": args.h, "h_star": args.hstar, "r1": args.r1, "r2": args.r2,
        "s": args.s, "s_star": args.sstar, "theta0": args.theta0, "theta_star0": args.theta_star0,
    }, QRacahCreate, "qracah arguments")
    field = data.resolve_field(field_override, default_field())
    inp = data.to_input(field)
    p = qracah_params(inp)
    report = validate_parameter_array(p)
    tables = {}
    ok = report.valid
    if args.check_4phi3 and report.valid:
        u_values = duality_table(build_poly_bundle(p), p).u_values
        grid = qracah_u_table(inp)
        agree = [list(row) for row in grid] == [list(row) for row in u_values]
        tables = dict(
            u_table=[to_strings(field, row) for row in u_values],
            hypergeometric_table=[to_strings(field, row) for row in grid],
            tables_agree=agree,
        )
        ok = agree
    payload = QRacahResponse(
        parameters=ParameterResponse.from_params(p),
        validation=ValidationResponse.from_report(report, field),
        **tables,
    )
    logger.info("q-Racah d=%d over %s: valid=%s", p.d, field, report.valid)
    return (0 if ok else 1), payload


def register(subparsers):
    parser = subparsers.add_parser("validate", help="check a parameter array")
    parser.add_argument("params", help='parameter JSON file, or "-" for stdin')
    parser.set_defaults(handler=validate)

    parser = subparsers.add_parser("relatives", help="parameter arrays of the eight relatives")
    parser.add_argument("params")
    parser.add_argument("--element", help="one group element, e.g. d, D*, dD*")
    parser.add_argument("--check", action="store_true", help="rebuild each relative from matrices")
    parser.set_defaults(handler=relatives)

    parser = subparsers.add_parser("qracah", help="q-Racah parameter array")
    parser.add_argument("--d", type=int, required=True)
    for name in ("q", "h", "hstar", "s", "sstar", "r1", "r2"):
        parser.add_argument(f"--{name}", required=True)
    parser.add_argument("--theta0", default="0")
    parser.add_argument("--theta-star0", dest="theta_star0", default="0")
    parser.add_argument("--check-4phi3", dest="check_4phi3", action="store_true")
    parser.set_defaults(handler=qracah)
