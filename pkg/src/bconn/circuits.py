"""Circuits over a base: line-format parsing and evaluation.

File format, one statement per line ('#' comments, blank lines ignored):

    input xN
    gate NAME fn arg ...     # args are earlier inputs or gates
    output NAME
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .clones import BaseSet
from .errors import (
    ArityMismatch,
    DuplicateName,
    ForwardReference,
    MissingOutput,
    MissingVariable,
    UnknownFunction,
    UsageError,
)
from .truthtable import BitVector

_VAR_RE = re.compile(r"x([1-9][0-9]*)\Z")


@dataclass(frozen=True)
class Gate:
    name: str
    fn: str
    args: tuple[str, ...]


@dataclass(frozen=True)
class CircuitDag:
    """Acyclic gate list in topological order with one designated output."""

    inputs: tuple[int, ...]  # variable indices, file order
    gates: tuple[Gate, ...]
    output: str

    def var_indices(self) -> set[int]:
        return set(self.inputs)

    def max_var(self) -> int:
        return max(self.inputs, default=0)


def parse_circuit(text: str, base: BaseSet) -> CircuitDag:
    inputs: list[int] = []
    gates: list[Gate] = []
    defined: set[str] = set()
    output: str | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kind = parts[0]
        if kind == "input":
            if len(parts) != 2:
                raise UsageError(f"line {lineno}: expected `input xN`")
            m = _VAR_RE.match(parts[1])
            if not m:
                raise UsageError(f"line {lineno}: bad input name {parts[1]!r}")
            if parts[1] in defined:
                raise DuplicateName(f"line {lineno}: duplicate input {parts[1]!r}")
            if gates or output is not None:
                raise UsageError(f"line {lineno}: inputs must come first")
            inputs.append(int(m.group(1)))
            defined.add(parts[1])
        elif kind == "gate":
            if len(parts) < 3:
                raise UsageError(f"line {lineno}: expected `gate NAME fn arg...`")
            name, fn = parts[1], parts[2]
            args = tuple(parts[3:])
            if name in defined:
                raise DuplicateName(f"line {lineno}: duplicate gate {name!r}")
            if fn not in base:
                raise UnknownFunction(f"line {lineno}: unknown function {fn!r}")
            want = base[fn].n
            if len(args) != want:
                raise ArityMismatch(
                    f"line {lineno}: {fn} takes {want} args, got {len(args)}"
                )
            for a in args:
                if a not in defined:
                    raise ForwardReference(f"line {lineno}: {a!r} not yet defined")
            gates.append(Gate(name, fn, args))
            defined.add(name)
        elif kind == "output":
            if len(parts) != 2:
                raise UsageError(f"line {lineno}: expected `output NAME`")
            if parts[1] not in defined:
                raise ForwardReference(f"line {lineno}: output {parts[1]!r} undefined")
            if output is not None:
                raise UsageError(f"line {lineno}: second output")
            output = parts[1]
        else:
            raise UsageError(f"line {lineno}: unknown statement {kind!r}")
    if output is None:
        raise MissingOutput("no output line")
    return CircuitDag(tuple(inputs), tuple(gates), output)


def print_circuit(c: CircuitDag) -> str:
    lines = [f"input x{i}" for i in c.inputs]
    lines += [f"gate {g.name} {g.fn} {' '.join(g.args)}" for g in c.gates]
    lines.append(f"output {c.output}")
    return "\n".join(lines) + "\n"


def evaluate_circuit(c: CircuitDag, base: BaseSet, a: BitVector) -> int:
    values: dict[str, int] = {}
    for i in c.inputs:
        if i > a.n:
            raise MissingVariable(f"assignment has no value for x{i}")
        values[f"x{i}"] = a.bit(i)
    for g in c.gates:
        f = base[g.fn]
        row = 0
        for arg in g.args:
            row = (row << 1) | values[arg]
        values[g.name] = f.value(row)
    return values[c.output]
