import argparse
import logging
from typing import Optional

from main import default_field, load_input, read_params
from models.errors import FieldMismatch
from models.exactfield import FieldSpec
from models.system import (
    build_split_form, check_system, recognize_leonard_pair, split_form_transforms, trace_coefficients,
)
from schemas.field_schemas import MatrixCreate, parse_field_label
from schemas.parameter_schemas import ParameterResponse
from schemas.system_schemas import BuildOutputCreate, BuildResponse, RecognitionResponse, SystemResponse

logger = logging.getLogger(__name__)


def build(args: argparse.Namespace, field_override: Optional[FieldSpec]):
    """Split-form Leonard system of a valid parameter array"""
    p = read_params(args.params, field_override)
    rep = build_split_form(p)
    system_ok = check_system(rep).ok
    transforms_ok = all(t.holds for t in split_form_transforms(p))
    logger.info("built d=%d system over %s", p.d, p.field)
    payload = BuildResponse(
        parameters=ParameterResponse.from_params(p),
        system=SystemResponse.from_rep(rep),
        traces=BuildResponse.traces_from(trace_coefficients(rep), rep),
        system_check=system_ok,
        split_transforms=transforms_ok,
    )
    return (0 if system_ok and transforms_ok else 1), payload


# Helper function to settle the field of two matrix files
def pair_field(first: MatrixCreate, second: MatrixCreate, field_override: Optional[FieldSpec]) -> FieldSpec:
    """The override wins; otherwise the files must not name different fields"""
    if field_override is not None:
        return field_override
    named = {parse_field_label(m.field) for m in (first, second) if m.field is not None}
    if len(named) > 1:
        raise FieldMismatch("the two matrices name different fields")
    return named.pop() if named else default_field()


def recognize(args: argparse.Namespace, field_override: Optional[FieldSpec]):
    """Decide whether two matrices form a Leonard pair and list its orderings"""
    if args.a_star is None:
        pair = load_input(args.a, BuildOutputCreate).system
        first, second = pair.A, pair.A_star
    else:
        first, second = load_input(args.a, MatrixCreate), load_input(args.a_star, MatrixCreate)
    field = pair_field(first, second, field_override)
    result = recognize_leonard_pair(first.to_matrix(field), second.to_matrix(field))
    logger.info("recognized a Leonard pair with d=%d and %d orderings", result.d, len(result.orderings))
    return 0, RecognitionResponse.from_result(result)


def register(subparsers):
    parser = subparsers.add_parser("build", help="split-form Leonard system from parameters")
    parser.add_argument("params")
    parser.set_defaults(handler=build)

    parser = subparsers.add_parser("recognize", help="recognize a Leonard pair from matrices")
    parser.add_argument("a", metavar="A", help="matrix file for A, or a build report")
    parser.add_argument("a_star", metavar="A_STAR", nargs="?", help="matrix file for A*")
    parser.set_defaults(handler=recognize)
