"""Quantified formulas: prefix syntax, free variables, evaluation.

Concrete syntax puts the prefix before a ':', e.g.

    A x3 E x4 : and(x1,or(x3,x4))

All variables share the xN namespace; a variable is bound iff it appears
in the prefix.  The solution graph ranges over the free variables taken
in index order.
"""

from __future__ import annotations

from dataclasses import dataclass

from .clones import BaseSet
from .errors import BudgetExceeded, FormulaSyntaxError, UsageError
from .formulas import FormulaAst, evaluate_formula_env, formula_vars, parse_formula, print_formula
from .truthtable import BitVector

DEFAULT_EXPANSION_BUDGET = 20

EXISTS = "E"
FORALL = "A"


@dataclass(frozen=True)
class QuantifiedFormula:
    prefix: tuple[tuple[str, int], ...]  # (quantifier, variable index)
    matrix: FormulaAst

    def __post_init__(self):
        seen = set()
        for q, j in self.prefix:
            if q not in (EXISTS, FORALL):
                raise UsageError(f"bad quantifier {q!r}")
            if j in seen:
                raise UsageError(f"x{j} quantified twice")
            seen.add(j)

    def bound_vars(self) -> set[int]:
        return {j for _, j in self.prefix}

    def free_vars(self) -> list[int]:
        return sorted(formula_vars(self.matrix) - self.bound_vars())


def parse_qbf(text: str, base: BaseSet) -> QuantifiedFormula:
    head, sep, body = text.partition(":")
    if not sep:
        return QuantifiedFormula((), parse_formula(text, base))
    prefix = []
    toks = head.split()
    if len(toks) % 2 != 0:
        raise FormulaSyntaxError("prefix must be quantifier/variable pairs")
    for q, v in zip(toks[::2], toks[1::2]):
        if q not in (EXISTS, FORALL):
            raise FormulaSyntaxError(f"bad quantifier {q!r}")
        if not (v.startswith("x") and v[1:].isdigit() and v[1] != "0"):
            raise FormulaSyntaxError(f"bad quantified variable {v!r}")
        prefix.append((q, int(v[1:])))
    return QuantifiedFormula(tuple(prefix), parse_formula(body, base))


def print_qbf(q: QuantifiedFormula) -> str:
    matrix = print_formula(q.matrix)
    if not q.prefix:
        return matrix
    head = " ".join(f"{quant} x{j}" for quant, j in q.prefix)
    return f"{head} : {matrix}"


def eval_qbf(
    q: QuantifiedFormula,
    base: BaseSet,
    free_assignment: BitVector | None = None,
    budget: int = DEFAULT_EXPANSION_BUDGET,
) -> int:
    """Recursive expansion, leftmost quantifier outermost."""
    if len(q.prefix) > budget:
        raise BudgetExceeded(f"{len(q.prefix)} quantifiers exceed budget {budget}")
    free = q.free_vars()
    env: dict[int, int] = {}
    if free:
        if free_assignment is None or free_assignment.n != len(free):
            got = 0 if free_assignment is None else free_assignment.n
            raise UsageError(f"need {len(free)} free-variable bits, got {got}")
        for pos, j in enumerate(free, start=1):
            env[j] = free_assignment.bit(pos)

    def rec(i: int) -> int:
        if i == len(q.prefix):
            return evaluate_formula_env(q.matrix, base, env)
        quant, j = q.prefix[i]
        env[j] = 0
        v0 = rec(i + 1)
        if quant == EXISTS and v0 == 1:
            del env[j]
            return 1
        if quant == FORALL and v0 == 0:
            del env[j]
            return 0
        env[j] = 1
        v1 = rec(i + 1)
        del env[j]
        return v1

    return rec(0)
