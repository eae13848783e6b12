"""LP text export.

Layout::

    \\ Problem name: corrected
    Minimize
     obj: 1 y_e0_k0 + 4 y_e0_k1 ...
    Subject To
     capacity[e=1]: 5 u_e0_d0 - 10 y_e0_k0 - 100 y_e0_k1 <= 0
    Bounds
     0 <= x_c0 <= 1
    Binary
     x_c0
    End

Statements start with one space; continuation lines start with four and
carry at most ``TERMS_PER_LINE`` terms each. A coefficient without a finite
decimal expansion is written rounded, preceded by an
``\\ exact <row> <variable> p/q`` comment the reader uses to restore it.
"""
from fractions import Fraction
from typing import List, Sequence

from greenroute.core.errors import NonRepresentableCoefficient
from greenroute.core.logging import get_logger
from greenroute.core.rational import format_decimal, is_terminating
from greenroute.models.linear import LinearModel, Term, VariableIndex

logger = get_logger(__name__)

MAX_NAME_LENGTH = 255
TERMS_PER_LINE = 8
OBJECTIVE_NAME = "obj"
RHS_MARKER = "rhs"
CONTINUATION = "    "


class LpWriter:
    """Renders one LinearModel; output is a pure function of the model."""

    def __init__(self, model: LinearModel):
        self.model = model
        self.lines: List[str] = []

    @classmethod
    def _check_name(cls, name: str) -> str:
        if len(name) > MAX_NAME_LENGTH:
            raise NonRepresentableCoefficient(f"name longer than {MAX_NAME_LENGTH} characters: {name[:40]}...")
        if "\n" in name or "\\" in name:
            raise NonRepresentableCoefficient(f"name contains a line break or backslash: {name!r}")
        return name

    def _exact_comment(self, row: str, target: str, value: Fraction) -> None:
        if not is_terminating(value):
            self.lines.append(f"\\ exact {row} {target} {value.numerator}/{value.denominator}")

    @classmethod
    def _write_term(cls, coefficient: Fraction, variable: VariableIndex, first: bool) -> str:
        if first:
            return f"{format_decimal(coefficient)} {variable.lp_name}"
        sign = "-" if coefficient < 0 else "+"
        return f"{sign} {format_decimal(abs(coefficient))} {variable.lp_name}"

    def _write_statement(self, name: str, terms: Sequence[Term], tail: str = "") -> None:
        for coefficient, variable in terms:
            self._exact_comment(name, variable.lp_name, coefficient)
        rendered = [self._write_term(c, v, i == 0) for i, (c, v) in enumerate(terms)]
        chunks = [rendered[i:i + TERMS_PER_LINE] for i in range(0, len(rendered), TERMS_PER_LINE)] or [[]]
        for i, chunk in enumerate(chunks):
            body = " ".join(chunk + ([tail] if tail and i == len(chunks) - 1 else []))
            if i == 0:
                self.lines.append(f" {name}: {body}".rstrip() if body else f" {name}:")
            else:
                self.lines.append(f"{CONTINUATION}{body}")

    def _write_rows(self) -> None:
        for row in self.model.constraints:
            name = self._check_name(row.name)
            terms: Sequence[Term] = row.terms
            if not terms:
                if not self.model.variables:
                    raise NonRepresentableCoefficient(f"row {name} has no terms and the model declares no variables")
                terms = [(Fraction(0), self.model.variables[0])]
            self._exact_comment(name, RHS_MARKER, row.rhs)
            self._write_statement(name, terms, f"{row.relation.value} {format_decimal(row.rhs)}")

    def write(self) -> str:
        self.lines = [f"\\ Problem name: {self._check_name(self.model.name)}", "Minimize"]
        self._write_statement(OBJECTIVE_NAME, self.model.objective)
        self.lines.append("Subject To")
        self._write_rows()
        self.lines.append("Bounds")
        self.lines += [f" 0 <= {variable.lp_name} <= 1" for variable in self.model.variables]
        self.lines.append("Binary")
        self.lines += [f" {variable.lp_name}" for variable in self.model.variables]
        self.lines.append("End")
        return "\n".join(self.lines) + "\n"


def export_lp(model: LinearModel) -> str:
    text = LpWriter(model).write()
    logger.debug(f"Exported {model.name}: {len(model.variables)} variables, {len(model.constraints)} rows")
    return text
