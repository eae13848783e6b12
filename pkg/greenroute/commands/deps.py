"""Shared plumbing for the command modules."""
import sys
from pathlib import Path
from typing import Optional

from pydantic import BaseModel

from greenroute.core.logging import get_logger
from greenroute.models.instance import Instance
from greenroute.services.ingest.instance_loader import build_instance, load_instance_file

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_VIOLATIONS = 2
EXIT_INFEASIBLE = 3
EXIT_BUDGET = 4


def get_instance(path: Path) -> Instance:
    """Read, schema-check and validate an instance file."""
    instance = build_instance(load_instance_file(path))
    logger.info(
        f"Loaded {path}: {instance.router_count} routers, "
        f"{instance.link_count} links, {instance.demand_count} demands"
    )
    return instance


def write_text(text: str, output_path: Optional[Path]) -> None:
    if output_path is None:
        sys.stdout.write(text)
        return
    output_path.write_text(text, encoding="utf-8")
    logger.info(f"Wrote {output_path}")


def write_document(document: BaseModel, output_path: Optional[Path]) -> None:
    write_text(document.model_dump_json(indent=2) + "\n", output_path)
