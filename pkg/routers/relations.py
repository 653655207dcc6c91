import argparse
import logging
from typing import Optional

from main import read_params
from models.exactfield import FieldSpec
from models.relations import (
    commutator_entry_formulas, compute_relation_scalars, preset_scalars, vanishing_products_check,
    verify_tridiagonal_relations,
)
from models.system import build_split_form
from schemas.field_schemas import to_value
from schemas.relation_schemas import (
    CommutatorResponse, RelationScalarsResponse, RelationsResponse, VanishingResponse,
)

logger = logging.getLogger(__name__)

PRESETS = ("q-serre", "dolan-grady")


def relations(args: argparse.Namespace, field_override: Optional[FieldSpec]):
    """Relation scalars, both commutators and the entrywise formulas on the split pair"""
    p = read_params(args.params, field_override)
    scalars = compute_relation_scalars(p)
    rep = build_split_form(p)
    report = verify_tridiagonal_relations(rep, scalars)
    table = commutator_entry_formulas(p, scalars.beta, scalars.gamma, scalars.rho)
    vanishing = vanishing_products_check(rep, p)
    preset = {}
    if args.preset:
        q = to_value(p.field, args.q) if args.q is not None else None
        other = preset_scalars(args.preset, p.field, q)
        preset = dict(
            preset=args.preset,
            preset_scalars=RelationScalarsResponse.from_scalars(other),
            preset_relations=CommutatorResponse.from_report(verify_tridiagonal_relations(rep, other)),
        )
    logger.info("relations for d=%d over %s: hold=%s", p.d, p.field, report.holds)
    payload = RelationsResponse(
        scalars=RelationScalarsResponse.from_scalars(scalars),
        relations=CommutatorResponse.from_report(report),
        entry_formulas_match=table.all_match,
        vanishing_products=VanishingResponse.from_report(vanishing, p.field),
        **preset,
    )
    return (0 if report.holds and table.all_match else 1), payload


def register(subparsers):
    parser = subparsers.add_parser("relations", help="tridiagonal relations of the split pair")
    parser.add_argument("params")
    parser.add_argument("--preset", choices=PRESETS, help="also test the pair against preset scalars")
    parser.add_argument("--q", help="q for the q-serre preset")
    parser.set_defaults(handler=relations)
