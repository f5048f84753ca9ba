"""Polynomial connectivity algorithms for the tractable base classes.

Monotone bases have connected solution graphs with geodesic witness
paths; 0-separating bases connect any two solutions by a detour through
assignments with one coordinate pinned to 1; affine bases reduce to the
GF(2) form of the composite function, where connectivity is a question
about the non-fictive support.  Quantified formulas stay tractable for
the monotone and affine cases only.
"""

from __future__ import annotations

from dataclasses import dataclass

from .circuits import CircuitDag
from .clones import BaseSet
from .errors import (
    NonAffineBaseFunction,
    NotASolution,
    UsageError,
    WrongClass,
)
from .formulas import Apply, Var
from .properties import (
    affine_form_of,
    is_affine,
    is_monotone,
    is_separating,
    separating_coordinate,
)
from .qbf import EXISTS, QuantifiedFormula
from .semantics import evaluate, truth_table_of
from .truthtable import BitVector, LinearForm, TruthTable, var_mask

DEFAULT_SEARCH_BUDGET = 20


@dataclass(frozen=True)
class EasyAnswer:
    """Connectivity verdicts plus an optional eval-verified witness path."""

    connected: bool
    st_connected: bool | None
    witness_path: list[BitVector] | None
    rationale: str


def _check_pair(obj, base: BaseSet, s: BitVector | None, t: BitVector | None):
    if (s is None) != (t is None):
        raise UsageError("s and t must be given together")
    if s is None:
        return
    if s.n != t.n:
        raise UsageError("s and t must have the same dimension")
    for v in (s, t):
        if evaluate(obj, base, v) != 1:
            raise NotASolution(f"{v.text} is not a solution")


def _verify_path(obj, base: BaseSet, path: list[BitVector]):
    for a, b in zip(path, path[1:]):
        if a.hamming(b) != 1:
            raise AssertionError("witness step is not a single flip")
    for v in path:
        if evaluate(obj, base, v) != 1:
            raise AssertionError(f"witness vertex {v.text} is not a solution")


def _monotone_path(s: BitVector, t: BitVector) -> list[BitVector]:
    path = [s]
    cur = s
    for j in range(1, s.n + 1):
        if s.bit(j) == 0 and t.bit(j) == 1:
            cur = cur.with_bit(j, 1)
            path.append(cur)
    for j in range(1, s.n + 1):
        if s.bit(j) == 1 and t.bit(j) == 0:
            cur = cur.with_bit(j, 0)
            path.append(cur)
    return path


def _flip_ascending(s: BitVector, t: BitVector) -> list[BitVector]:
    path = [s]
    cur = s
    for j in range(1, s.n + 1):
        if cur.bit(j) != t.bit(j):
            cur = cur.with_bit(j, t.bit(j))
            path.append(cur)
    return path


def monotone_decide(
    obj, base: BaseSet, s: BitVector | None = None, t: BitVector | None = None
) -> EasyAnswer:
    """Connectivity for bases of monotone functions.

    The composite function is monotone, so the solution graph is
    connected and s reaches t in exactly Hamming(s, t) steps by flipping
    the 0-to-1 differences first (staying below s OR t) and the 1-to-0
    differences after (staying above t).
    """
    if not all(is_monotone(f) for f in base.tables):
        raise WrongClass("base contains a non-monotone function")
    _check_pair(obj, base, s, t)
    rationale = (
        "monotone base: the solution graph is connected; witness flips "
        "0-to-1 differences before 1-to-0 differences"
    )
    if s is None:
        return EasyAnswer(True, None, None, rationale)
    path = _monotone_path(s, t)
    _verify_path(obj, base, path)
    return EasyAnswer(True, True, path, rationale)


def _syntactic_coordinate(obj, base: BaseSet) -> int | None:
    """A separating coordinate read off the outermost application, if any.

    When the top function is 0-separating in its i-th argument and that
    argument is literally a variable x_j, setting x_j = 1 forces the
    output to 1 regardless of the rest of the object.
    """
    if isinstance(obj, TruthTable):
        return separating_coordinate(obj, 0)
    if isinstance(obj, Var):
        return obj.index
    if isinstance(obj, Apply):
        f = base[obj.name]
        i = separating_coordinate(f, 0)
        if i is not None and f.n >= 1 and isinstance(obj.args[i - 1], Var):
            return obj.args[i - 1].index
        return None
    if isinstance(obj, CircuitDag):
        if obj.output.startswith("x") and obj.output[1:].isdigit():
            return int(obj.output[1:])
        gate = next(g for g in obj.gates if g.name == obj.output)
        f = base[gate.fn]
        i = separating_coordinate(f, 0)
        if i is not None and f.n >= 1:
            arg = gate.args[i - 1]
            if arg.startswith("x") and arg[1:].isdigit():
                return int(arg[1:])
        return None
    return None


def _semantic_coordinate(obj, base: BaseSet, n: int) -> int:
    table = truth_table_of(obj, base, n)
    for i in range(1, n + 1):
        vm = var_mask(n, i)
        if table.bits & vm == vm:
            return i
    raise AssertionError("0-separating composite lacks a pinning coordinate")


def zerosep_decide(
    obj,
    base: BaseSet,
    n: int,
    s: BitVector | None = None,
    t: BitVector | None = None,
    search_budget: int = DEFAULT_SEARCH_BUDGET,
) -> EasyAnswer:
    """Connectivity for bases of 0-separating functions.

    The composite function is 0-separating: some coordinate i has every
    non-solution assigning x_i = 0, so every assignment with x_i = 1
    satisfies it.  Any two solutions connect in at most Hamming + 2
    steps: set x_i if needed, flip the other differences, reset x_i if
    needed.  Locating i may need a semantic scan; when n exceeds the
    search budget and no syntactic coordinate is visible, the verdicts
    are still returned and only the path is withheld.
    """
    if not all(is_separating(f, 0) for f in base.tables):
        raise WrongClass("base contains a function that is not 0-separating")
    _check_pair(obj, base, s, t)
    rationale = (
        "0-separating base: the solution graph is connected; solutions "
        "meet through assignments with the pinning coordinate set to 1"
    )
    if s is None:
        return EasyAnswer(True, None, None, rationale)
    if s.n != n or t.n != n:
        raise UsageError(f"endpoints must have dimension {n}")
    if s.word == t.word:
        return EasyAnswer(True, True, [s], rationale)
    i = _syntactic_coordinate(obj, base)
    if i is not None and i > n:
        i = None
    if i is None and n <= search_budget:
        i = _semantic_coordinate(obj, base, n)
    if i is None:
        return EasyAnswer(
            True,
            True,
            None,
            rationale + " (witness path withheld: coordinate search over "
            f"{n} variables exceeds budget {search_budget})",
        )
    path = [s]
    cur = s
    if cur.bit(i) == 0:
        cur = cur.with_bit(i, 1)
        path.append(cur)
    for j in range(1, n + 1):
        if j != i and cur.bit(j) != t.bit(j):
            cur = cur.with_bit(j, t.bit(j))
            path.append(cur)
    if cur.bit(i) != t.bit(i):
        cur = cur.with_bit(i, 0)
        path.append(cur)
    _verify_path(obj, base, path)
    return EasyAnswer(True, True, path, rationale)


def _base_forms(base: BaseSet) -> dict[str, LinearForm]:
    forms = {}
    for name, f in base:
        form = affine_form_of(f)
        if form is None:
            raise NonAffineBaseFunction(f"base function {name} is not affine")
        forms[name] = form
    return forms


def _combine(form: LinearForm, children: list[LinearForm]) -> LinearForm:
    support: set[int] = set()
    c = form.c
    for k in form.support:
        support.symmetric_difference_update(children[k - 1].support)
        c ^= children[k - 1].c
    return LinearForm(frozenset(support), c)


def linear_form_of(obj, base: BaseSet) -> LinearForm:
    """GF(2) form of a composite over an affine base.

    Forward propagation: each node carries (support, constant); applying
    an affine base function takes the symmetric difference of the
    selected children's supports and XORs their constants.  The result
    equals the parity of backward paths from the output to each input.
    """
    forms = _base_forms(base)

    def walk(ast) -> LinearForm:
        if isinstance(ast, Var):
            return LinearForm(frozenset([ast.index]), 0)
        return _combine(forms[ast.name], [walk(a) for a in ast.args])

    if isinstance(obj, (Var, Apply)):
        return walk(obj)
    if isinstance(obj, CircuitDag):
        values: dict[str, LinearForm] = {
            f"x{i}": LinearForm(frozenset([i]), 0) for i in obj.inputs
        }
        for g in obj.gates:
            values[g.name] = _combine(forms[g.fn], [values[a] for a in g.args])
        return values[obj.output]
    if isinstance(obj, TruthTable):
        form = affine_form_of(obj)
        if form is None:
            raise WrongClass("truth table is not affine")
        return form
    raise UsageError(f"no linear form for {type(obj).__name__}")


def _linear_verdict(
    obj,
    base: BaseSet,
    support: frozenset[int],
    s: BitVector | None,
    t: BitVector | None,
    rationale: str,
) -> EasyAnswer:
    connected = len(support) <= 1
    if s is None:
        return EasyAnswer(connected, None, None, rationale)
    if any(s.bit(j) != t.bit(j) for j in support):
        return EasyAnswer(connected, False, None, rationale)
    path = _flip_ascending(s, t)
    _verify_path(obj, base, path)
    return EasyAnswer(connected, True, path, rationale)


def linear_decide(
    obj, base: BaseSet, s: BitVector | None = None, t: BitVector | None = None
) -> EasyAnswer:
    """Connectivity for bases of affine functions.

    The composite equals x_{i1} xor .. xor x_{im} xor c.  Its solution
    graph is connected iff m <= 1 (the unsatisfiable constant-0 case is
    connected by convention), and two solutions are connected iff they
    agree on the support, with fictive flips as a witness path.
    """
    if not all(is_affine(f) for f in base.tables):
        raise WrongClass("base contains a non-affine function")
    if isinstance(obj, QuantifiedFormula):
        raise UsageError("use qbf_easy_decide for quantified formulas")
    _check_pair(obj, base, s, t)
    form = linear_form_of(obj, base)
    rationale = (
        f"affine base: GF(2) form is {form}; connected iff at most one "
        "non-fictive variable; solutions connect iff they agree on the support"
    )
    return _linear_verdict(obj, base, form.support, s, t, rationale)


def qbf_easy_decide(
    q: QuantifiedFormula,
    base: BaseSet,
    s: BitVector | None = None,
    t: BitVector | None = None,
) -> EasyAnswer:
    """Connectivity over the free variables of a quantified formula.

    Monotone bases: quantification preserves monotonicity, so the
    monotone witness argument applies to the free-variable function.
    Affine bases: quantifiers over fictive variables are dropped; if a
    quantifier survives, the formula is a tautology (rightmost remaining
    quantifier existential) or unsatisfiable (universal); otherwise the
    matrix form restricted to the free variables decides as usual.
    """
    if not isinstance(q, QuantifiedFormula):
        raise UsageError("qbf_easy_decide needs a quantified formula")
    if all(is_monotone(f) for f in base.tables):
        _check_pair(q, base, s, t)
        rationale = (
            "monotone base: quantification preserves monotonicity, so the "
            "free-variable solution graph is connected"
        )
        if s is None:
            return EasyAnswer(True, None, None, rationale)
        path = _monotone_path(s, t)
        _verify_path(q, base, path)
        return EasyAnswer(True, True, path, rationale)
    if not all(is_affine(f) for f in base.tables):
        raise WrongClass(
            "quantified connectivity is polynomial only for monotone or affine bases"
        )
    _check_pair(q, base, s, t)
    form = linear_form_of(q.matrix, base)
    kept = [(quant, j) for quant, j in q.prefix if j in form.support]
    free = q.free_vars()
    if kept:
        if kept[-1][0] == EXISTS:
            rationale = (
                "affine base: after dropping quantifiers on fictive variables "
                "the rightmost quantifier is existential, so the formula is a "
                "tautology over its free variables"
            )
            if s is None:
                return EasyAnswer(True, None, None, rationale)
            path = _flip_ascending(s, t)
            _verify_path(q, base, path)
            return EasyAnswer(True, True, path, rationale)
        rationale = (
            "affine base: after dropping quantifiers on fictive variables "
            "the rightmost quantifier is universal, so the formula is "
            "unsatisfiable and its empty solution graph counts as connected"
        )
        return EasyAnswer(True, None, None, rationale)
    positions = frozenset(free.index(j) + 1 for j in form.support)
    rationale = (
        f"affine base: residual GF(2) form over the free variables is "
        f"{LinearForm(positions, form.c)}; connected iff at most one "
        "non-fictive variable"
    )
    return _linear_verdict(q, base, positions, s, t, rationale)
