"""Circuit netlist format and DAG evaluation."""

import random

import pytest

from bconn import (
    ArityMismatch,
    BitVector,
    DuplicateName,
    ForwardReference,
    MissingOutput,
    UnknownFunction,
    UsageError,
    evaluate_circuit,
    parse_circuit,
    print_circuit,
)

from conftest import LIN_BASE, STD_BASE, base_texts, env_of, eval_circuit_slow, rand_linear_circuit

SAMPLE = """\
# half adder, sum output
input x1
input x2
gate s xor x1 x2
output s
"""


def test_parse_and_evaluate_sample():
    dag = parse_circuit(SAMPLE, LIN_BASE)
    assert dag.inputs == (1, 2)
    assert dag.output == "s"
    assert evaluate_circuit(dag, LIN_BASE, BitVector.parse("10")) == 1
    assert evaluate_circuit(dag, LIN_BASE, BitVector.parse("11")) == 0


def test_gate_reuse_is_shared_not_copied():
    text = """\
input x1
input x2
gate a and x1 x2
gate b or a a
output b
"""
    dag = parse_circuit(text, STD_BASE)
    assert evaluate_circuit(dag, STD_BASE, BitVector.parse("11")) == 1
    assert evaluate_circuit(dag, STD_BASE, BitVector.parse("01")) == 0


def test_print_parse_round_trip():
    rng = random.Random(5150)
    for _ in range(20):
        dag = rand_linear_circuit(rng, rng.randint(1, 5), rng.randint(0, 8))
        assert parse_circuit(print_circuit(dag), LIN_BASE) == dag


def test_evaluate_matches_row_oracle():
    rng = random.Random(99)
    texts = base_texts(LIN_BASE)
    for _ in range(40):
        n = rng.randint(1, 6)
        dag = rand_linear_circuit(rng, n, rng.randint(1, 10))
        for w in range(1 << n):
            got = evaluate_circuit(dag, LIN_BASE, BitVector(n, w))
            assert got == eval_circuit_slow(dag, texts, env_of(w, n))


def test_parse_errors():
    with pytest.raises(ForwardReference):
        parse_circuit("input x1\ngate a and x1 b\ngate b and x1 x1\noutput a", STD_BASE)
    with pytest.raises(DuplicateName):
        parse_circuit("input x1\ninput x1\noutput x1", STD_BASE)
    with pytest.raises(MissingOutput):
        parse_circuit("input x1\ngate a not x1", STD_BASE)
    with pytest.raises(UnknownFunction):
        parse_circuit("input x1\ngate a nor x1 x1\noutput a", STD_BASE)
    with pytest.raises(ArityMismatch):
        parse_circuit("input x1\ngate a and x1\noutput a", STD_BASE)
    with pytest.raises(UsageError):
        parse_circuit("input x1\ngate a not x1\ninput x2\noutput a", STD_BASE)
    with pytest.raises(UsageError):
        parse_circuit("input y1\noutput y1", STD_BASE)


def test_output_may_be_an_input_wire():
    dag = parse_circuit("input x2\noutput x2", STD_BASE)
    assert evaluate_circuit(dag, STD_BASE, BitVector.parse("01")) == 1
