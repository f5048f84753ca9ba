"""Truth tables, assignment vectors, and linear forms.

Conventions pinned here and used everywhere else:

* An assignment over x_1..x_n is encoded as the row index
  i = sum_j a_j * 2^(n-j), so x_1 is the most significant bit.
* A truth table of arity n is a 2^n-bit integer; bit i (LSB = row 0)
  is the output on row i.  Its text form writes row 0 leftmost, so
  tt_parse/tt_print treat character position i as row i.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    ArityMismatch,
    BadCharacter,
    BadThreshold,
    LengthMismatch,
)

N_MAX = 30


@dataclass(frozen=True, order=True)
class BitVector:
    """An assignment a_1..a_n, stored in row-index encoding."""

    n: int
    word: int

    def __post_init__(self):
        if not 1 <= self.n <= N_MAX:
            raise ArityMismatch(f"dimension {self.n} outside [1, {N_MAX}]")
        if not 0 <= self.word < (1 << self.n):
            raise ArityMismatch(f"word {self.word} does not fit {self.n} bits")

    @classmethod
    def parse(cls, text: str) -> "BitVector":
        if not text or any(c not in "01" for c in text):
            raise BadCharacter(f"bit vector must be nonempty over 0/1: {text!r}")
        return cls(len(text), int(text, 2))

    @classmethod
    def from_bits(cls, bits) -> "BitVector":
        bits = list(bits)
        word = 0
        for b in bits:
            word = (word << 1) | (b & 1)
        return cls(len(bits), word)

    @property
    def text(self) -> str:
        return format(self.word, f"0{self.n}b")

    def bit(self, j: int) -> int:
        """Value of x_j, 1-based."""
        if not 1 <= j <= self.n:
            raise ArityMismatch(f"index {j} outside [1, {self.n}]")
        return (self.word >> (self.n - j)) & 1

    def with_bit(self, j: int, value: int) -> "BitVector":
        mask = 1 << (self.n - j)
        word = (self.word | mask) if value else (self.word & ~mask)
        return BitVector(self.n, word)

    def hamming(self, other: "BitVector") -> int:
        if other.n != self.n:
            raise ArityMismatch("dimension mismatch")
        return (self.word ^ other.word).bit_count()

    @property
    def weight(self) -> int:
        return self.word.bit_count()

    def __str__(self) -> str:
        return self.text


@dataclass(frozen=True)
class TruthTable:
    """Complete semantics of an n-ary Boolean function."""

    n: int
    bits: int

    def __post_init__(self):
        if self.n < 0:
            raise ArityMismatch("arity must be >= 0")
        if not 0 <= self.bits < (1 << (1 << self.n)):
            raise LengthMismatch(f"table does not fit 2^{self.n} rows")

    @property
    def size(self) -> int:
        return 1 << self.n

    def value(self, row: int) -> int:
        return (self.bits >> row) & 1

    def one_rows(self):
        """Row indices mapped to 1, ascending."""
        bits = self.bits
        while bits:
            low = bits & -bits
            yield low.bit_length() - 1
            bits ^= low

    def __str__(self) -> str:
        return tt_print(self)


def tt_parse(text: str, n: int) -> TruthTable:
    if len(text) != (1 << n):
        raise LengthMismatch(
            f"expected {1 << n} characters for arity {n}, got {len(text)}"
        )
    bits = 0
    for i, c in enumerate(text):
        if c == "1":
            bits |= 1 << i
        elif c != "0":
            raise BadCharacter(f"bad character {c!r} at position {i}")
    return TruthTable(n, bits)


def tt_print(f: TruthTable) -> str:
    return "".join("1" if f.value(i) else "0" for i in range(f.size))


def tt_eval(f: TruthTable, a: BitVector) -> int:
    if a.n != f.n:
        raise ArityMismatch(f"arity {f.n} function applied to {a.n} bits")
    return f.value(a.word)


def threshold_tt(n: int, k: int, dualize: bool = False) -> TruthTable:
    """T^n_k: 1 iff the assignment has at least k ones (dual on request)."""
    if not 0 <= k <= n + 1:
        raise BadThreshold(f"threshold {k} outside [0, {n + 1}]")
    bits = 0
    for i in range(1 << n):
        if i.bit_count() >= k:
            bits |= 1 << i
    f = TruthTable(n, bits)
    return dual(f) if dualize else f


def dual(f: TruthTable) -> TruthTable:
    """dual(f)(x_1..x_n) = NOT f(NOT x_1, .., NOT x_n)."""
    # complementing every input reverses the row order; then negate
    bits = 0
    for i in range(f.size):
        if not f.value(f.size - 1 - i):
            bits |= 1 << i
    return TruthTable(f.n, bits)


def var_mask(n: int, j: int) -> int:
    """2^n-bit mask whose row-i bit equals the value of x_j on row i."""
    if not 1 <= j <= n:
        raise ArityMismatch(f"variable index {j} outside [1, {n}]")
    stride = 1 << (n - j)
    mask = ((1 << stride) - 1) << stride
    width = 2 * stride
    total = 1 << n
    while width < total:
        mask |= mask << width
        width *= 2
    return mask


def apply_masks(f: TruthTable, children: list[int], n: int) -> int:
    """Output mask of f applied to child masks in a 2^n-row ambient space.

    Classic cofactor trick: OR, over every row r with f(r)=1, the AND of
    each child mask taken positive or complemented per r's bits.
    """
    if len(children) != f.n:
        raise ArityMismatch(f"{f.n}-ary function given {len(children)} children")
    full = (1 << (1 << n)) - 1
    out = 0
    for r in f.one_rows():
        term = full
        for j, child in enumerate(children, start=1):
            if (r >> (f.n - j)) & 1:
                term &= child
            else:
                term &= full ^ child
            if not term:
                break
        out |= term
    return out


@dataclass(frozen=True)
class LinearForm:
    """x_{i1} XOR ... XOR x_{im} XOR c."""

    support: frozenset[int]
    c: int

    def truth_table(self, n: int) -> TruthTable:
        if self.support and max(self.support) > n:
            raise ArityMismatch("support exceeds requested arity")
        mask = 0
        for j in self.support:
            mask |= 1 << (n - j)
        bits = 0
        for i in range(1 << n):
            if ((i & mask).bit_count() & 1) ^ self.c:
                bits |= 1 << i
        return TruthTable(n, bits)

    def __str__(self) -> str:
        terms = [f"x{j}" for j in sorted(self.support)]
        if self.c or not terms:
            terms.append(str(self.c))
        return " + ".join(terms)
