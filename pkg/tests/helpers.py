import copy
import json
from pathlib import Path
from typing import Any, Dict, List

from greenroute.models.instance import Instance
from greenroute.models.linear import LinearModel, VariableIndex, VariableKind
from greenroute.models.solution import Solution
from greenroute.services.ingest.instance_loader import build_instance

FIXTURES = Path(__file__).parent / "fixtures"


def fixture_path(name: str) -> Path:
    return FIXTURES / name


def fixture_spec(name: str) -> Dict[str, Any]:
    """Raw instance document from tests/fixtures, safe to mutate."""
    return copy.deepcopy(json.loads(fixture_path(name).read_text(encoding="utf-8")))


def fixture_instance(name: str) -> Instance:
    return build_instance(fixture_spec(name))


def t1_with_demands(*demands) -> Instance:
    """T1 with its demand list replaced by (source, target, volume) triples."""
    spec = fixture_spec("t1.json")
    spec["demands"] = [
        {"source_router": source, "target_router": target, "volume": str(volume)}
        for source, target, volume in demands
    ]
    return build_instance(spec)


def flip_bit(solution: Solution, variable: VariableIndex) -> Solution:
    """Copy of ``solution`` with one bit flipped; the stored objective is kept."""
    x, z = list(solution.x), list(solution.z)
    y, u = [list(row) for row in solution.y], [list(row) for row in solution.u]
    index = variable.indices
    if variable.kind is VariableKind.X_CARD:
        x[index[0]] ^= 1
    elif variable.kind is VariableKind.Y_LINK_STATE:
        y[index[0]][index[1]] ^= 1
    elif variable.kind is VariableKind.Z_ROUTER:
        z[index[0]] ^= 1
    else:
        u[index[0]][index[1]] ^= 1
    return Solution(
        x=tuple(x),
        y=tuple(tuple(row) for row in y),
        z=tuple(z),
        u=tuple(tuple(row) for row in u),
        objective_value=solution.objective_value,
    )


def links_of_demand(solution: Solution, demand: int) -> List[int]:
    return [e for e, row in enumerate(solution.u) if row[demand]]


def constraint_names(model: LinearModel) -> List[str]:
    return [row.name for row in model.constraints]
