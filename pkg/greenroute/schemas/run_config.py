from pathlib import Path
from typing import Literal, Optional

from pydantic import BaseModel, Field, model_validator

from greenroute.services.formulation.builders import Variant

Command = Literal["validate", "solve", "export", "demo", "gen"]


class RunConfig(BaseModel):
    """Resolved command-line options of one invocation."""
    command: Command
    instance_path: Optional[Path] = None
    variant: Variant = Variant.CORRECTED
    budget: Optional[int] = Field(default=None, ge=1)
    seed: Optional[int] = None
    threads: Optional[int] = Field(default=None, ge=1)
    output_path: Optional[Path] = None
    solution_path: Optional[Path] = None

    @model_validator(mode="after")
    def _command_fields(self) -> "RunConfig":
        if self.command == "gen":
            if self.seed is None:
                raise ValueError("gen needs --seed")
        elif self.instance_path is None:
            raise ValueError(f"{self.command} needs an instance file")
        if self.solution_path is not None and self.command != "validate":
            raise ValueError("--solution is only accepted by validate")
        return self
