from pydantic import BaseModel
from typing import Optional, Dict, Any

from schemas.parameter_schemas import ValidationResponse


class ErrorResponse(BaseModel):
    error: str
    detail: str
    expected_schema: Optional[Dict[str, Any]] = None
    report: Optional[ValidationResponse] = None
