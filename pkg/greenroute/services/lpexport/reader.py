"""Reads back the LP documents written by ``export_lp``.

Only the writer's own layout is accepted; anything else is a ``ParseError``
carrying the 1-based line and column of the offending token.
"""
import re
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from greenroute.core.errors import ParseError
from greenroute.core.logging import get_logger
from greenroute.core.rational import to_fraction
from greenroute.models.linear import Constraint, LinearModel, Relation, Term, VariableIndex
from greenroute.services.lpexport.writer import CONTINUATION, OBJECTIVE_NAME, RHS_MARKER

logger = get_logger(__name__)

SECTIONS = ("Minimize", "Subject To", "Bounds", "Binary", "End")
_HEADER = re.compile(r"^\\ Problem name: (?P<name>.*)$")
_EXACT = re.compile(r"^\\ exact (?P<rest>.+)$")
_TOKEN = re.compile(r"\S+")

Token = Tuple[str, int, int]  # text, line, column


class _Statement:
    def __init__(self, name: str, line: int, tokens: List[Token]):
        self.name = name
        self.line = line
        self.tokens = tokens


def _tokens(text: str, line: int, offset: int = 0) -> List[Token]:
    return [(m.group(), line, offset + m.start() + 1) for m in _TOKEN.finditer(text)]


def _number(token: Token) -> Fraction:
    text, line, column = token
    try:
        return to_fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"expected a number, got {text!r}", line, column, text)


def _variable(token: Token) -> VariableIndex:
    text, line, column = token
    try:
        return VariableIndex.from_lp_name(text)
    except ValueError:
        raise ParseError(f"expected a variable name, got {text!r}", line, column, text)


class LpReader:
    """Section-by-section parser for one document."""

    def __init__(self, text: str):
        self.lines = text.splitlines()
        self.name = "unnamed"
        self.objective: Optional[_Statement] = None
        self.rows: List[_Statement] = []
        self.bounds: List[Token] = []
        self.binaries: List[Token] = []
        # (section, statement, target) -> exact value
        self.exact: Dict[Tuple[str, str, str], Tuple[Fraction, int]] = {}

    def _split_statements(self) -> None:
        section: Optional[str] = None
        current: Optional[_Statement] = None
        ended = False
        for number, raw in enumerate(self.lines, start=1):
            if ended:
                if raw.strip():
                    raise ParseError("content after End", number, 1, raw)
                continue
            header = _HEADER.match(raw)
            if header and section is None:
                self.name = header.group("name")
                continue
            exact = _EXACT.match(raw)
            if exact:
                self._read_exact(section, exact.group("rest"), number)
                continue
            if not raw.strip() or raw.startswith("\\"):
                continue
            if raw in SECTIONS:
                expected = SECTIONS[SECTIONS.index(section) + 1] if section else SECTIONS[0]
                if raw != expected:
                    raise ParseError(f"expected section {expected!r}, got {raw!r}", number, 1, raw)
                section, current = raw, None
                ended = raw == "End"
                continue
            if section is None:
                raise ParseError(f"statement before the Minimize section: {raw!r}", number, 1, raw)
            if raw.startswith(CONTINUATION):
                if current is None or section not in ("Minimize", "Subject To"):
                    raise ParseError("continuation line without a statement", number, 1, raw)
                current.tokens += _tokens(raw, number)
                continue
            if not raw.startswith(" "):
                raise ParseError(f"unknown section {raw.strip()!r}", number, 1, raw)
            current = self._start_statement(section, raw, number)
        if not ended:
            raise ParseError("missing End marker", len(self.lines) + 1, 1)

    def _start_statement(self, section: str, raw: str, number: int) -> Optional[_Statement]:
        if section == "Bounds":
            self.bounds += _tokens(raw, number)
            return None
        if section == "Binary":
            tokens = _tokens(raw, number)
            if len(tokens) != 1:
                raise ParseError("expected one variable per Binary line", number, tokens[1][2], raw)
            self.binaries.append(tokens[0])
            return None
        colon = raw.rfind(":")
        if colon < 0:
            raise ParseError("statement without a name", number, 2, raw)
        statement = _Statement(raw[:colon].strip(), number, _tokens(raw[colon + 1:], number, colon + 1))
        if section == "Minimize":
            if self.objective is not None or statement.name != OBJECTIVE_NAME:
                raise ParseError("expected a single 'obj:' statement", number, 2, raw)
            self.objective = statement
        else:
            self.rows.append(statement)
        return statement

    def _read_exact(self, section: Optional[str], rest: str, number: int) -> None:
        parts = rest.rsplit(" ", 2)
        if len(parts) != 3 or section not in ("Minimize", "Subject To"):
            raise ParseError("malformed exact-value comment", number, 1, rest)
        row, target, value = parts
        try:
            self.exact[(section, row, target)] = (Fraction(value), number)
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad exact value {value!r}", number, len(rest) - len(value) + 9, value)

    def _exact_or(self, section: str, row: str, target: str, value: Fraction) -> Fraction:
        entry = self.exact.pop((section, row, target), None)
        return value if entry is None else entry[0]

    def _expression(self, section: str, statement: _Statement, with_relation: bool):
        tokens = statement.tokens
        terms: List[Term] = []
        relation: Optional[Relation] = None
        rhs = Fraction(0)
        i = 0
        while i < len(tokens):
            text = tokens[i][0]
            if with_relation and text in ("<=", ">=", "="):
                if i + 2 != len(tokens):
                    at = tokens[i + 1] if i + 1 < len(tokens) else tokens[i]
                    raise ParseError("expected exactly one right-hand side", at[1], at[2], at[0])
                relation = Relation(text)
                rhs = self._exact_or(section, statement.name, RHS_MARKER, _number(tokens[i + 1]))
                break
            sign = Fraction(1)
            if text in ("+", "-"):
                if not terms and text == "+":
                    raise ParseError("leading '+'", tokens[i][1], tokens[i][2], text)
                sign = Fraction(-1) if text == "-" else sign
                i += 1
            elif terms:
                raise ParseError(f"expected '+' or '-', got {text!r}", tokens[i][1], tokens[i][2], text)
            if i + 1 >= len(tokens):
                last = tokens[-1]
                raise ParseError("incomplete term", last[1], last[2], last[0])
            coefficient = sign * _number(tokens[i])
            variable = _variable(tokens[i + 1])
            coefficient = self._exact_or(section, statement.name, variable.lp_name, coefficient)
            terms.append((coefficient, variable))
            i += 2
        if with_relation and relation is None:
            raise ParseError("constraint without a relation", statement.line, 1, statement.name)
        return terms, relation, rhs

    def _declared(self) -> Tuple[VariableIndex, ...]:
        variables = [_variable(token) for token in self.binaries]
        declared = set(variables)
        if len(declared) != len(variables):
            raise ParseError("variable declared twice in Binary", self.binaries[-1][1], 2)
        bounds = self.bounds
        if len(bounds) % 5:
            raise ParseError("malformed bound", bounds[-1][1], bounds[-1][2], bounds[-1][0])
        for i in range(0, len(bounds), 5):
            low, le1, name, le2, high = bounds[i:i + 5]
            if (low[0], le1[0], le2[0], high[0]) != ("0", "<=", "<=", "1"):
                raise ParseError("expected a 0 <= v <= 1 bound", low[1], low[2], low[0])
            if _variable(name) not in declared:
                raise ParseError(f"bound on undeclared variable {name[0]}", name[1], name[2], name[0])
        return tuple(variables)

    def _check_declared(self, statement: _Statement, terms: List[Term], declared: set) -> None:
        for _, variable in terms:
            if variable not in declared:
                token = next(
                    (t for t in statement.tokens if t[0] == variable.lp_name),
                    (variable.lp_name, statement.line, 1),
                )
                raise ParseError(
                    f"undeclared variable {variable.lp_name}", token[1], token[2], token[0]
                )

    def read(self) -> LinearModel:
        self._split_statements()
        variables = self._declared()
        declared = set(variables)

        objective: List[Term] = []
        if self.objective is not None:
            objective, _, _ = self._expression("Minimize", self.objective, with_relation=False)
            self._check_declared(self.objective, objective, declared)

        constraints = []
        seen = set()
        for statement in self.rows:
            terms, relation, rhs = self._expression("Subject To", statement, with_relation=True)
            self._check_declared(statement, terms, declared)
            if statement.name in seen:
                raise ParseError(f"duplicate constraint name {statement.name}", statement.line, 2, statement.name)
            seen.add(statement.name)
            constraints.append(Constraint(
                name=statement.name,
                terms=tuple(term for term in terms if term[0] != 0),
                relation=relation,
                rhs=rhs,
            ))

        if self.exact:
            (_, row, target), (_, number) = next(iter(self.exact.items()))
            raise ParseError(f"exact value for unknown {row} {target}", number, 1)

        return LinearModel(
            name=self.name,
            variables=variables,
            objective=tuple(objective),
            constraints=tuple(constraints),
        )


def parse_lp(text: str) -> LinearModel:
    return LpReader(text).read()
