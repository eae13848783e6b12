from decimal import Decimal
from typing import List, Optional

from pydantic import BaseModel, Field


class PortEntry(BaseModel):
    """Port of a line card."""
    id: str


class CardEntry(BaseModel):
    """Line card with its power cost W."""
    id: str
    power_W: Decimal = Decimal(0)
    ports: List[PortEntry] = Field(default_factory=list)


class RouterEntry(BaseModel):
    """Router with its power cost T."""
    id: str
    power_T: Decimal = Decimal(0)
    cards: List[CardEntry] = Field(default_factory=list)


class EdgeStateEntry(BaseModel):
    """One energy state of an edge, per direction."""
    capacity_fwd: Decimal
    capacity_rev: Decimal
    power_fwd: Decimal
    power_rev: Decimal


class EdgeEntry(BaseModel):
    """Bidirectional edge; expands to port_a->port_b and port_b->port_a."""
    port_a: str
    port_b: str
    states: List[EdgeStateEntry]


class LinkStateEntry(BaseModel):
    """One energy state of a single directed link."""
    capacity: Decimal
    power: Decimal


class LinkEntry(BaseModel):
    """Single directed link, for incidence-level descriptions."""
    source_port: str
    target_port: str
    states: List[LinkStateEntry]


class DemandEntry(BaseModel):
    """Traffic demand between two routers."""
    source_router: str
    target_router: str
    volume: Decimal


class InstanceFile(BaseModel):
    """Instance file document (UTF-8 JSON)."""
    routers: List[RouterEntry]
    edges: List[EdgeEntry] = Field(default_factory=list)
    links: List[LinkEntry] = Field(default_factory=list)
    demands: List[DemandEntry] = Field(default_factory=list)
    state_count: Optional[int] = Field(default=None, ge=1)
