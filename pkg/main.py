"""Command-line entry point for the Leonard system toolkit."""
import argparse
import json
import logging
import os
import sys
from typing import List, Optional, Tuple, Type

from pydantic import BaseModel, ValidationError

from models.errors import InvalidInput, InvalidParameters, LeonardError, ParseError
from models.exactfield import FieldSpec
from models.params import ParameterData
from schemas.error_schemas import ErrorResponse
from schemas.parameter_schemas import ParameterCreate, ValidationResponse

logger = logging.getLogger(__name__)

# Configuration
DEFAULT_FIELD = "rational"
DEFAULT_LOG_LEVEL = "WARNING"
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def default_field() -> FieldSpec:
    """The field used when neither the command line nor the input file names one."""
    return FieldSpec.from_label(os.environ.get("LEONARD_FIELD", DEFAULT_FIELD))


def configure_logging(verbose: bool = False):
    level = "DEBUG" if verbose else os.environ.get("LEONARD_LOG_LEVEL", DEFAULT_LOG_LEVEL).upper()
    root = logging.getLogger()
    root.handlers.clear()
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    root.addHandler(handler)
    root.setLevel(getattr(logging, level, logging.WARNING))


def load_input(path: str, schema: Type[BaseModel]) -> BaseModel:
    """Read a JSON file ("-" for stdin) and parse it through ``schema``."""
    try:
        if path == "-":
            data = json.load(sys.stdin)
        else:
            with open(path, encoding="utf-8") as handle:
                data = json.load(handle)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path}: invalid JSON ({exc.msg})", schema.model_json_schema()) from exc
    except UnicodeDecodeError as exc:
        raise InvalidInput(f"{path}: not UTF-8 text ({exc.reason})", schema.model_json_schema()) from exc
    return parse_input(data, schema, path)


def parse_input(data, schema: Type[BaseModel], source: str = "input") -> BaseModel:
    try:
        return schema.model_validate(data)
    except ValidationError as exc:
        raise InvalidInput(f"{source}: {exc.error_count()} validation error(s): {exc}",
                           schema.model_json_schema()) from exc


def read_params(path: str, field_override: Optional[FieldSpec]) -> ParameterData:
    """Parse a parameter file and convert it into the resolved field."""
    data = load_input(path, ParameterCreate)
    field = data.resolve_field(field_override, default_field())
    return data.to_params(field)


def render(payload: BaseModel) -> str:
    return json.dumps(payload.model_dump(mode="json"), sort_keys=True, indent=2)


# Helper function to write a report file
def write_output(path: str, text: str):
    """Write ``text`` to ``path``; an unwritable path is a usage error."""
    try:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")
    except OSError as exc:
        raise ParseError(f"cannot write {path}: {exc.strerror}") from exc


def error_payload(exc: LeonardError) -> ErrorResponse:
    report = None
    if isinstance(exc, InvalidParameters) and exc.report is not None and exc.field is not None:
        report = ValidationResponse.from_report(exc.report, exc.field)
    return ErrorResponse(
        error=type(exc).__name__,
        detail=exc.detail,
        expected_schema=getattr(exc, "schema", None),
        report=report,
    )


# Import and include routers
from routers import parameters, systems, relations, polynomials  # noqa: E402

ROUTERS = (parameters, systems, relations, polynomials)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="leonard",
        description="Construct, validate and recognize Leonard pairs and systems in exact arithmetic.",
    )
    parser.add_argument("--field", help='field override: "rational" or "p:<prime>"')
    parser.add_argument("--output", help="write the JSON report here instead of stdout")
    parser.add_argument("--verbose", action="store_true", help="debug logging on stderr")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for router in ROUTERS:
        router.register(subparsers)
    return parser


def dispatch(args: argparse.Namespace) -> Tuple[int, BaseModel]:
    try:
        override = FieldSpec.from_label(args.field) if args.field else None
        return args.handler(args, override)
    except LeonardError as exc:
        logger.info("%s rejected: %s", args.command, exc.detail)
        return exc.exit_code, error_payload(exc)


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    configure_logging(args.verbose)
    code, payload = dispatch(args)
    text = render(payload)
    if args.output:
        try:
            write_output(args.output, text)
        except ParseError as exc:
            code, text = exc.exit_code, render(error_payload(exc))
            print(text)
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(run())
