"""Generic indexed 0/1 linear model produced by the formulation builders."""
import re
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple

from pydantic import BaseModel, ConfigDict, field_validator, model_validator


class VariableKind(str, Enum):
    X_CARD = "x"
    Y_LINK_STATE = "y"
    Z_ROUTER = "z"
    U_LINK_DEMAND = "u"


# Index axes per kind, as they appear in LP names
_AXES: Dict[VariableKind, Tuple[str, ...]] = {
    VariableKind.X_CARD: ("c",),
    VariableKind.Y_LINK_STATE: ("e", "k"),
    VariableKind.Z_ROUTER: ("r",),
    VariableKind.U_LINK_DEMAND: ("e", "d"),
}

_NAME_PATTERN = re.compile(r"^(?P<kind>[xyzu])_(?P<rest>[a-z]\d+(?:_[a-z]\d+)?)$")


class VariableIndex(BaseModel):
    """One binary decision variable; indices are 0-based dense positions."""
    model_config = ConfigDict(frozen=True)

    kind: VariableKind
    indices: Tuple[int, ...]

    @model_validator(mode="after")
    def _check_arity(self) -> "VariableIndex":
        if len(self.indices) != len(_AXES[self.kind]):
            raise ValueError(f"{self.kind.value} takes {len(_AXES[self.kind])} indices")
        if any(index < 0 for index in self.indices):
            raise ValueError("indices must be non-negative")
        return self

    @property
    def lp_name(self) -> str:
        parts = [f"{axis}{index}" for axis, index in zip(_AXES[self.kind], self.indices)]
        return f"{self.kind.value}_{'_'.join(parts)}"

    @classmethod
    def from_lp_name(cls, name: str) -> "VariableIndex":
        match = _NAME_PATTERN.match(name)
        if not match:
            raise ValueError(f"not a variable name: {name!r}")
        kind = VariableKind(match.group("kind"))
        parts = match.group("rest").split("_")
        axes = tuple(part[0] for part in parts)
        if axes != _AXES[kind]:
            raise ValueError(f"bad index axes in {name!r}")
        return cls(kind=kind, indices=tuple(int(part[1:]) for part in parts))


def x_card(card: int) -> VariableIndex:
    return VariableIndex(kind=VariableKind.X_CARD, indices=(card,))


def y_link_state(link: int, state: int) -> VariableIndex:
    return VariableIndex(kind=VariableKind.Y_LINK_STATE, indices=(link, state))


def z_router(router: int) -> VariableIndex:
    return VariableIndex(kind=VariableKind.Z_ROUTER, indices=(router,))


def u_link_demand(link: int, demand: int) -> VariableIndex:
    return VariableIndex(kind=VariableKind.U_LINK_DEMAND, indices=(link, demand))


Term = Tuple[Fraction, VariableIndex]


class Relation(str, Enum):
    LE = "<="
    EQ = "="
    GE = ">="

    def holds(self, lhs: Fraction, rhs: Fraction) -> bool:
        if self is Relation.LE:
            return lhs <= rhs
        if self is Relation.GE:
            return lhs >= rhs
        return lhs == rhs


class Constraint(BaseModel):
    """Canonical row ``sum(terms) relation rhs`` with no zero coefficients."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    name: str
    terms: Tuple[Term, ...]
    relation: Relation
    rhs: Fraction

    @field_validator("terms")
    @classmethod
    def _no_zero_terms(cls, terms: Tuple[Term, ...]) -> Tuple[Term, ...]:
        if any(coefficient == 0 for coefficient, _ in terms):
            raise ValueError("constraint terms must have non-zero coefficients")
        return terms

    @property
    def family(self) -> str:
        return self.name.split("[", 1)[0]

    def lhs(self, values: Mapping[VariableIndex, int]) -> Fraction:
        return evaluate_terms(self.terms, values)

    def is_satisfied(self, values: Mapping[VariableIndex, int]) -> bool:
        return self.relation.holds(self.lhs(values), self.rhs)


class StructuralDefect(BaseModel):
    """A constraint family that cannot be instantiated as written."""
    model_config = ConfigDict(frozen=True)

    family: str
    description: str
    axes: Tuple[str, ...]
    witness: Tuple[int, ...]

    @model_validator(mode="after")
    def _check_witness(self) -> "StructuralDefect":
        if not self.description:
            raise ValueError("description must not be empty")
        if len(self.axes) != len(self.witness):
            raise ValueError("witness and axes differ in length")
        return self


class LinearModel(BaseModel):
    """Minimisation model over declared binary variables."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    name: str
    variables: Tuple[VariableIndex, ...]
    objective: Tuple[Term, ...]
    constraints: Tuple[Constraint, ...]
    sense: str = "minimize"

    @model_validator(mode="after")
    def _check_references(self) -> "LinearModel":
        declared = set(self.variables)
        if len(declared) != len(self.variables):
            raise ValueError("variables declared twice")
        names = set()
        for row in self.constraints:
            if row.name in names:
                raise ValueError(f"duplicate constraint name {row.name}")
            names.add(row.name)
            for _, variable in row.terms:
                if variable not in declared:
                    raise ValueError(f"{row.name} uses undeclared {variable.lp_name}")
        for _, variable in self.objective:
            if variable not in declared:
                raise ValueError(f"objective uses undeclared {variable.lp_name}")
        return self

    def family_counts(self) -> Dict[str, int]:
        counts: Dict[str, int] = {}
        for row in self.constraints:
            counts[row.family] = counts.get(row.family, 0) + 1
        return counts

    def objective_value(self, values: Mapping[VariableIndex, int]) -> Fraction:
        return evaluate_terms(self.objective, values)

    def without_family(self, family: str, name: str) -> "LinearModel":
        return LinearModel(
            name=name,
            variables=self.variables,
            objective=self.objective,
            constraints=tuple(row for row in self.constraints if row.family != family),
        )


def evaluate_terms(terms: Iterable[Term], values: Mapping[VariableIndex, int]) -> Fraction:
    return sum((coefficient * values.get(variable, 0) for coefficient, variable in terms), Fraction(0))
