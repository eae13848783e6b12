"""JSON documents written and read by the commands.

Assignments are keyed by the LP variable names (``x_c0``, ``u_e1_d0``) so a
report can be read side by side with the exported ``.lp`` file; the index
map translates the dense indices back to file ids.
"""
from fractions import Fraction
from typing import Dict, List, Optional

from pydantic import BaseModel, Field, field_validator

from greenroute.core.errors import DimensionMismatch
from greenroute.core.rational import format_rational, to_fraction
from greenroute.models.instance import EdgePair, Instance
from greenroute.models.linear import StructuralDefect, VariableIndex, VariableKind, evaluate_terms
from greenroute.models.solution import CheckReport, DefectReport, Solution, SolveResult, SymmetryGap
from greenroute.services.formulation.builders import build_objective


class LinkRef(BaseModel):
    """Directed link e<index> and the ports it joins."""
    index: int
    source_port: str
    target_port: str


class DemandRef(BaseModel):
    index: int
    source_router: str
    target_router: str
    volume: str


class IndexMap(BaseModel):
    """Position i of each list is dense index i in variable names."""
    routers: List[str]
    cards: List[str]
    ports: List[str]
    links: List[LinkRef]
    demands: List[DemandRef]
    state_count: int

    @classmethod
    def from_instance(cls, instance: Instance) -> "IndexMap":
        return cls(
            routers=list(instance.router_ids),
            cards=list(instance.card_ids),
            ports=list(instance.port_ids),
            links=[
                LinkRef(
                    index=link,
                    source_port=instance.port_ids[instance.source_port_of_link[link]],
                    target_port=instance.port_ids[instance.target_port_of_link[link]],
                )
                for link in range(instance.link_count)
            ],
            demands=[
                DemandRef(
                    index=d,
                    source_router=instance.router_ids[demand.source],
                    target_router=instance.router_ids[demand.target],
                    volume=format_rational(demand.volume),
                )
                for d, demand in enumerate(instance.demands)
            ],
            state_count=instance.state_count,
        )


def assignment_of(solution: Solution) -> Dict[str, int]:
    return {variable.lp_name: bit for variable, bit in solution.values().items()}


class RouteEntry(BaseModel):
    demand: int
    links: List[int]
    routers: List[str]


class SolutionReport(BaseModel):
    """Output of ``solve``; also accepted as a solution file by ``validate``."""
    variant: str
    status: str
    objective: Optional[str] = None
    nodes: int = 0
    assignment: Dict[str, int] = Field(default_factory=dict)
    routes: List[RouteEntry] = Field(default_factory=list)
    index_map: IndexMap

    @classmethod
    def from_result(cls, instance: Instance, variant: str, result: SolveResult) -> "SolutionReport":
        solution = result.solution
        return cls(
            variant=variant,
            status=result.status.value,
            objective=None if solution is None else format_rational(solution.objective_value),
            nodes=result.nodes,
            assignment={} if solution is None else assignment_of(solution),
            routes=[
                RouteEntry(
                    demand=path.demand,
                    links=list(path.links),
                    routers=[instance.router_ids[r] for r in path.routers(instance)],
                )
                for path in result.paths
            ],
            index_map=IndexMap.from_instance(instance),
        )


class SolutionFile(BaseModel):
    """Hand-written or solver-produced assignment; missing variables are 0.

    ``objective`` is optional; when given it is checked against the value
    recomputed from the assignment.
    """
    assignment: Dict[str, int] = Field(default_factory=dict)
    objective: Optional[str] = None

    @field_validator("assignment")
    @classmethod
    def _binary(cls, assignment: Dict[str, int]) -> Dict[str, int]:
        bad = [name for name, bit in assignment.items() if bit not in (0, 1)]
        if bad:
            raise ValueError(f"assignment entries must be 0 or 1: {', '.join(bad)}")
        return assignment

    def to_solution(self, instance: Instance) -> Solution:
        x = [0] * instance.card_count
        z = [0] * instance.router_count
        y = [[0] * instance.state_count for _ in range(instance.link_count)]
        u = [[0] * instance.demand_count for _ in range(instance.link_count)]
        for name, bit in self.assignment.items():
            variable = VariableIndex.from_lp_name(name)
            index = variable.indices
            try:
                if variable.kind is VariableKind.X_CARD:
                    x[index[0]] = bit
                elif variable.kind is VariableKind.Z_ROUTER:
                    z[index[0]] = bit
                elif variable.kind is VariableKind.Y_LINK_STATE:
                    y[index[0]][index[1]] = bit
                else:
                    u[index[0]][index[1]] = bit
            except IndexError:
                raise DimensionMismatch(f"variable {name} is outside the instance dimensions")
        draft = Solution(
            x=tuple(x),
            y=tuple(tuple(row) for row in y),
            z=tuple(z),
            u=tuple(tuple(row) for row in u),
            objective_value=Fraction(0),
        )
        if self.objective is None:
            objective = evaluate_terms(build_objective(instance), draft.values())
        else:
            objective = to_fraction(self.objective)
        return draft.model_copy(update={"objective_value": objective})


class ViolationEntry(BaseModel):
    constraint_name: str
    lhs: str
    relation: str
    rhs: str


class CheckReportFile(BaseModel):
    variant: str
    passed: bool
    violations: List[ViolationEntry]
    index_map: IndexMap

    @classmethod
    def from_report(cls, instance: Instance, report: CheckReport) -> "CheckReportFile":
        return cls(
            variant=report.variant,
            passed=report.passed,
            violations=[
                ViolationEntry(
                    constraint_name=v.constraint_name,
                    lhs=format_rational(v.lhs),
                    relation=v.relation.value,
                    rhs=format_rational(v.rhs),
                )
                for v in report.violations
            ],
            index_map=IndexMap.from_instance(instance),
        )


class EdgePairEntry(BaseModel):
    forward: int
    reverse: int
    port_a: str
    port_b: str

    @classmethod
    def from_pair(cls, instance: Instance, pair: EdgePair) -> "EdgePairEntry":
        return cls(
            forward=pair.forward,
            reverse=pair.reverse,
            port_a=instance.port_ids[pair.port_a],
            port_b=instance.port_ids[pair.port_b],
        )


class InstanceSummary(BaseModel):
    """Written by ``validate`` when no solution file is given."""
    valid: bool = True
    routers: int
    cards: int
    ports: int
    links: int
    states: int
    demands: int
    edge_pairs: List[EdgePairEntry]
    index_map: IndexMap

    @classmethod
    def from_instance(cls, instance: Instance) -> "InstanceSummary":
        return cls(
            routers=instance.router_count,
            cards=instance.card_count,
            ports=instance.port_count,
            links=instance.link_count,
            states=instance.state_count,
            demands=instance.demand_count,
            edge_pairs=[EdgePairEntry.from_pair(instance, pair) for pair in instance.edge_pairs],
            index_map=IndexMap.from_instance(instance),
        )


class DefectEntry(BaseModel):
    family: str
    description: str
    witness: Dict[str, int]

    @classmethod
    def from_defect(cls, defect: StructuralDefect) -> "DefectEntry":
        return cls(
            family=defect.family,
            description=defect.description,
            witness=dict(zip(defect.axes, defect.witness)),
        )


class GapEntry(BaseModel):
    corrected_objective: str
    relaxed_objective: str
    gap: str
    witness_assignment: Dict[str, int]
    asymmetric_pairs: List[EdgePairEntry]

    @classmethod
    def from_gap(cls, instance: Instance, gap: SymmetryGap) -> "GapEntry":
        return cls(
            corrected_objective=format_rational(gap.corrected_objective),
            relaxed_objective=format_rational(gap.relaxed_objective),
            gap=format_rational(gap.gap),
            witness_assignment=assignment_of(gap.witness_solution),
            asymmetric_pairs=[EdgePairEntry.from_pair(instance, pair) for pair in gap.asymmetric_pairs],
        )


class DefectReportFile(BaseModel):
    error1: List[DefectEntry]
    error2: Optional[GapEntry] = None
    index_map: IndexMap

    @classmethod
    def from_report(cls, instance: Instance, report: DefectReport) -> "DefectReportFile":
        return cls(
            error1=[DefectEntry.from_defect(defect) for defect in report.error1],
            error2=None if report.error2 is None else GapEntry.from_gap(instance, report.error2),
            index_map=IndexMap.from_instance(instance),
        )
