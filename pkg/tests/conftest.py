"""Shared oracles and instance generators for the test suite.

The oracles here deliberately avoid the library's bigint mask pipeline:
formulas and circuits are evaluated row by row against printed truth-table
text, quantifiers by naive recursion, and graphs by plain BFS over word
sets.  Agreement between these and the library is what the tests check.
"""

from __future__ import annotations

import random
from collections import deque

from bconn import (
    Apply,
    BaseSet,
    CircuitDag,
    CnfFormula,
    EXISTS,
    FORALL,
    Gate,
    QuantifiedFormula,
    Var,
    formula_vars,
    tt_parse,
)

TABLES = {
    "c0": "0",
    "c1": "1",
    "id": "01",
    "not": "10",
    "and": "0001",
    "or": "0111",
    "xor": "0110",
    "eqv": "1001",
    "imp": "1101",
    "nimp": "0010",
    "nand": "1110",
    "maj": "00010111",
}


def tt_of(text: str):
    return tt_parse(text, len(text).bit_length() - 1)


def mk_base(names) -> BaseSet:
    if not isinstance(names, dict):
        names = {nm: TABLES[nm] for nm in names}
    return BaseSet({nm: tt_of(text) for nm, text in names.items()})


MONO_BASE = mk_base(["and", "or"])
IMP_BASE = mk_base(["imp"])
LIN_BASE = mk_base(["xor", "eqv", "not"])
STD_BASE = mk_base(["and", "or", "not"])

MONO_OPS = (("and", 2), ("or", 2))
IMP_OPS = (("imp", 2),)
LIN_OPS = (("xor", 2), ("eqv", 2), ("not", 1))


# ---------------------------------------------------------------------------
# Row-at-a-time evaluation oracles.


def env_of(word: int, n: int) -> dict[int, int]:
    return {j: (word >> (n - j)) & 1 for j in range(1, n + 1)}


def eval_ast_slow(ast, tables: dict[str, str], env: dict[int, int]) -> int:
    if isinstance(ast, Var):
        return env[ast.index]
    row = 0
    for arg in ast.args:
        row = row * 2 + eval_ast_slow(arg, tables, env)
    return int(tables[ast.name][row])


def eval_circuit_slow(dag: CircuitDag, tables: dict[str, str], env: dict[int, int]) -> int:
    val = {f"x{j}": env[j] for j in dag.inputs}
    for g in dag.gates:
        row = 0
        for a in g.args:
            row = row * 2 + val[a]
        val[g.name] = int(tables[g.fn][row])
    return val[dag.output]


def eval_qbf_slow(q: QuantifiedFormula, tables: dict[str, str], free_env: dict[int, int]) -> int:
    def rec(i: int, env: dict[int, int]) -> int:
        if i == len(q.prefix):
            return eval_ast_slow(q.matrix, tables, env)
        quant, j = q.prefix[i]
        low = rec(i + 1, {**env, j: 0})
        if quant == EXISTS and low:
            return 1
        if quant == FORALL and not low:
            return 0
        return rec(i + 1, {**env, j: 1})

    return rec(0, dict(free_env))


def ast_solutions_slow(ast, tables: dict[str, str], n: int) -> set[int]:
    return {w for w in range(1 << n) if eval_ast_slow(ast, tables, env_of(w, n))}


def circuit_solutions_slow(dag: CircuitDag, tables: dict[str, str], n: int) -> set[int]:
    return {w for w in range(1 << n) if eval_circuit_slow(dag, tables, env_of(w, n))}


def qbf_solutions_slow(q: QuantifiedFormula, tables: dict[str, str]) -> set[int]:
    free = q.free_vars()
    n = len(free)
    out = set()
    for w in range(1 << n):
        env = {j: (w >> (n - 1 - p)) & 1 for p, j in enumerate(free)}
        if eval_qbf_slow(q, tables, env):
            out.add(w)
    return out


def base_texts(base: BaseSet) -> dict[str, str]:
    from bconn import tt_print

    return {nm: tt_print(f) for nm, f in base}


# ---------------------------------------------------------------------------
# Plain BFS graph oracles over word sets.


def cube_labels(words, n: int) -> dict[int, int]:
    members = set(words)
    labels: dict[int, int] = {}
    nxt = 0
    for w0 in sorted(members):
        if w0 in labels:
            continue
        labels[w0] = nxt
        dq = deque([w0])
        while dq:
            w = dq.popleft()
            for b in range(n):
                u = w ^ (1 << b)
                if u in members and u not in labels:
                    labels[u] = nxt
                    dq.append(u)
        nxt += 1
    return labels


def cube_component_count(words, n: int) -> int:
    labels = cube_labels(words, n)
    return len(set(labels.values()))


def cube_dist_from(words, n: int, src: int) -> dict[int, int]:
    members = set(words)
    dist = {src: 0}
    dq = deque([src])
    while dq:
        w = dq.popleft()
        for b in range(n):
            u = w ^ (1 << b)
            if u in members and u not in dist:
                dist[u] = dist[w] + 1
                dq.append(u)
    return dist


def cube_diameter(words, n: int) -> int:
    best = 0
    for w in words:
        dist = cube_dist_from(words, n, w)
        if dist:
            best = max(best, max(dist.values()))
    return best


def same_partition(a: dict, b: dict) -> bool:
    """True iff the two labelings induce the same partition of a shared key set."""
    if a.keys() != b.keys():
        return False
    fwd: dict = {}
    rev: dict = {}
    for k, va in a.items():
        vb = b[k]
        if fwd.setdefault(va, vb) != vb:
            return False
        if rev.setdefault(vb, va) != va:
            return False
    return True


def check_path_words(path, members: set[int], n: int, s: int, t: int) -> None:
    words = [v.word for v in path]
    assert words[0] == s and words[-1] == t
    for w in words:
        assert w in members
    for u, v in zip(words, words[1:]):
        assert bin(u ^ v).count("1") == 1


# ---------------------------------------------------------------------------
# Seeded random instance generators.


def rand_ast(rng: random.Random, ops, n: int, budget: int):
    def go(room: int):
        if room <= 1 or rng.random() < 0.3:
            return Var(rng.randint(1, n)), 1
        name, ar = ops[rng.randrange(len(ops))]
        if ar == 0:
            return Apply(name, ()), 1
        used, args = 1, []
        for i in range(ar):
            child, sz = go(max(1, (room - used) // (ar - i)))
            args.append(child)
            used += sz
        return Apply(name, tuple(args)), used

    return go(budget)[0]


def rand_linear_circuit(rng: random.Random, n: int, gate_count: int) -> CircuitDag:
    wires = [f"x{j}" for j in range(1, n + 1)]
    gates = []
    for g in range(gate_count):
        fn = ("xor", "eqv", "not")[rng.randrange(3)]
        ar = 1 if fn == "not" else 2
        args = tuple(wires[rng.randrange(len(wires))] for _ in range(ar))
        gates.append(Gate(f"g{g}", fn, args))
        wires.append(f"g{g}")
    output = wires[-1] if gates else "x1"
    return CircuitDag(tuple(range(1, n + 1)), tuple(gates), output)


def compact_cnf(phi: CnfFormula) -> CnfFormula:
    """Relabel so every ambient variable occurs in some clause."""
    used = sorted({abs(lit) for c in phi.clauses for lit in c})
    ren = {v: p for p, v in enumerate(used, start=1)}
    clauses = tuple(
        tuple((1 if lit > 0 else -1) * ren[abs(lit)] for lit in c) for c in phi.clauses
    )
    return CnfFormula(len(used), clauses)


def rand_three_cnf(rng: random.Random, n: int, m: int) -> CnfFormula:
    """Random 3-CNF where every clause keeps a positive literal."""
    clauses = []
    for _ in range(m):
        width = min(rng.choice((1, 2, 2, 3, 3)), n)
        chosen = rng.sample(range(1, n + 1), width)
        lits = [v if rng.random() < 0.55 else -v for v in chosen]
        if all(l < 0 for l in lits):
            i = rng.randrange(len(lits))
            lits[i] = -lits[i]
        clauses.append(tuple(lits))
    return CnfFormula(n, tuple(clauses))


def rand_qbf(rng: random.Random, ops, n_total: int, bound_count: int, budget: int) -> QuantifiedFormula:
    matrix = rand_ast(rng, ops, n_total, budget)
    bound = rng.sample(range(1, n_total + 1), min(bound_count, n_total))
    rng.shuffle(bound)
    prefix = tuple((EXISTS if rng.random() < 0.5 else FORALL, j) for j in bound)
    return QuantifiedFormula(prefix, matrix)


def qbf_free_count(q: QuantifiedFormula) -> int:
    return len(q.free_vars())


def ast_vars_sorted(ast) -> list[int]:
    return sorted(formula_vars(ast))
