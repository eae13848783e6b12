from typing import Optional

from pydantic import BaseModel


class ErrorReport(BaseModel):
    """Standard error document written when a command fails."""
    detail: str
    error_code: Optional[str] = None
