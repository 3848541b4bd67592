"""Parity normalization of square matrices over Z2 with an auditable operation log.

Both algorithms bring a singular matrix to a form in which every row and
column sum is even. The general version uses independent row and column
operations; the symmetric version uses congruences only (the same operation on
rows and on columns), so the result is ``P A P^T``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from eventri.errors import (
    InvalidMatrix,
    NonSquare,
    NonsingularInput,
    NonzeroDiagonal,
    NotSymmetric,
)

OP_KINDS = ("addrow", "addcol", "swaprows", "swapcols")


@dataclass(frozen=True)
class Op:
    kind: str
    src: int
    dst: int

    def to_json(self) -> dict:
        return {"kind": self.kind, "from": self.src, "to": self.dst}

    @classmethod
    def from_json(cls, data: dict) -> "Op":
        if data.get("kind") not in OP_KINDS:
            raise ValueError(f"unknown op kind {data.get('kind')!r}")
        return cls(data["kind"], int(data["from"]), int(data["to"]))


@dataclass(frozen=True)
class BinaryMatrix:
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(v) & 1 for v in row) for row in self.entries)
        if rows and len({len(r) for r in rows}) != 1:
            raise InvalidMatrix("rows have different lengths")
        object.__setattr__(self, "entries", rows)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    @classmethod
    def identity(cls, n: int) -> "BinaryMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols, "entries": self.to_lists()}

    def transpose(self) -> "BinaryMatrix":
        return BinaryMatrix(tuple(zip(*self.entries)) if self.entries else ())

    def __matmul__(self, other: "BinaryMatrix") -> "BinaryMatrix":
        cols = list(zip(*other.entries))
        return BinaryMatrix(tuple(tuple(sum(a & b for a, b in zip(r, c)) & 1 for c in cols) for r in self.entries))

    def row_sums(self) -> list[int]:
        return [sum(r) & 1 for r in self.entries]

    def col_sums(self) -> list[int]:
        return [sum(c) & 1 for c in zip(*self.entries)]

    def all_sums_even(self) -> bool:
        return not any(self.row_sums()) and not any(self.col_sums())

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and all(
            self.entries[i][j] == self.entries[j][i] for i in range(self.rows) for j in range(i)
        )

    def rank(self) -> int:
        return rank(self.entries)

    def is_singular(self) -> bool:
        return self.rank() < self.rows


def rank(rows) -> int:
    """Rank over Z2 by elimination on integer bit masks."""
    basis: list[int] = []
    for row in rows:
        v = int("".join(str(b) for b in row) or "0", 2)
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
    return len(basis)


def parse_matrix(text: str | bytes) -> tuple[BinaryMatrix, bool]:
    """Read the matrix JSON format; integer entries are reduced mod 2.

    Returns the matrix and whether any entry was changed by the reduction.
    """
    try:
        data = json.loads(text)
        r, c, entries = data["rows"], data["cols"], data["entries"]
        ints = [[int(v) for v in row] for row in entries]
        if any(isinstance(v, bool) or not isinstance(v, int) for row in entries for v in row):
            raise TypeError("entries must be integers")
    except (ValueError, KeyError, TypeError) as exc:
        raise InvalidMatrix(f"bad matrix file: {exc}") from None
    if len(ints) != r or any(len(row) != c for row in ints):
        raise InvalidMatrix(f"declared shape {r}x{c} does not match the entries")
    reduced = any(v not in (0, 1) for row in ints for v in row)
    return BinaryMatrix(tuple(tuple(v % 2 for v in row) for row in ints)), reduced


class _Work:
    """Mutable copy that records every operation applied to it."""

    def __init__(self, M: BinaryMatrix):
        self.a = [list(r) for r in M.entries]
        self.ops: list[Op] = []

    def addrow(self, i, j):
        self.a[j] = [x ^ y for x, y in zip(self.a[j], self.a[i])]
        self.ops.append(Op("addrow", i, j))

    def addcol(self, i, j):
        for row in self.a:
            row[j] ^= row[i]
        self.ops.append(Op("addcol", i, j))

    def swaprows(self, i, j):
        if i != j:
            self.a[i], self.a[j] = self.a[j], self.a[i]
            self.ops.append(Op("swaprows", i, j))

    def swapcols(self, i, j):
        if i != j:
            for row in self.a:
                row[i], row[j] = row[j], row[i]
            self.ops.append(Op("swapcols", i, j))

    def congruent_add(self, i, j):
        self.addrow(i, j)
        self.addcol(i, j)

    def congruent_swap(self, i, j):
        self.swaprows(i, j)
        self.swapcols(i, j)

    def matrix(self) -> BinaryMatrix:
        return BinaryMatrix(tuple(tuple(r) for r in self.a))


def apply_ops(M: BinaryMatrix, ops) -> BinaryMatrix:
    w = _Work(M)
    for op in ops:
        getattr(w, op.kind)(op.src, op.dst)
    return w.matrix()


def row_transform(ops, n: int) -> BinaryMatrix:
    """``R`` with ``R @ A`` equal to the effect of the logged row operations."""
    return apply_ops(BinaryMatrix.identity(n), [op for op in ops if op.kind in ("addrow", "swaprows")])


def col_transform(ops, n: int) -> BinaryMatrix:
    """``C`` with ``A @ C`` equal to the effect of the logged column operations."""
    return apply_ops(BinaryMatrix.identity(n), [op for op in ops if op.kind in ("addcol", "swapcols")])


@dataclass(frozen=True)
class Normalized:
    matrix: BinaryMatrix
    ops: tuple[Op, ...]

    def to_json(self) -> dict:
        return {"matrix": self.matrix.to_json(), "ops": [op.to_json() for op in self.ops]}


def _require_square_singular(A: BinaryMatrix) -> None:
    if A.rows != A.cols:
        raise NonSquare(f"matrix is {A.rows}x{A.cols}")
    if not A.is_singular():
        raise NonsingularInput("matrix is nonsingular over Z2; no sequence of operations makes all sums even")


def parity_normalize(A: BinaryMatrix) -> Normalized:
    """Row and column operations giving all-even row and column sums.

    Reduce to ``diag(1, .., 1, 0, .., 0)``, then fold every row into the last
    row and every column into the last column.
    """
    _require_square_singular(A)
    if A.all_sums_even():
        return Normalized(A, ())
    n = A.rows
    w = _Work(A)
    a = w.a
    r = 0
    for c in range(n):
        pivot = next(((i, j) for i in range(r, n) for j in range(r, n) if a[i][j]), None)
        if pivot is None:
            break
        w.swaprows(pivot[0], r)
        w.swapcols(pivot[1], r)
        for i in range(n):
            if i != r and a[i][r]:
                w.addrow(r, i)
        for j in range(n):
            if j != r and a[r][j]:
                w.addcol(r, j)
        r += 1
    last = n - 1
    for i in range(last):
        if any(a[i]):
            w.addrow(i, last)
    for j in range(last):
        if any(row[j] for row in a):
            w.addcol(j, last)
    out = w.matrix()
    assert out.all_sums_even()
    return Normalized(out, tuple(w.ops))


def tridiagonalize(w: _Work) -> None:
    """Congruences clearing every entry not adjacent to the main diagonal."""
    a = w.a
    n = len(a)
    for c in range(n - 2):
        r = next((i for i in range(c + 1, n) if a[i][c]), None)
        if r is None:
            continue
        w.congruent_swap(r, c + 1)
        for i in range(c + 2, n):
            if a[i][c]:
                w.congruent_add(c + 1, i)
    for i, row in enumerate(a):
        if sum(row) > 2 or any(row[j] for j in range(n) if abs(i - j) != 1):
            raise AssertionError(f"row {i} is not tridiagonal after reduction: {row}")


def _blocks(a) -> list[list[int]]:
    n = len(a)
    out, cur = [], [0] if n else []
    for i in range(1, n):
        if a[i - 1][i]:
            cur.append(i)
        else:
            out.append(cur)
            cur = [i]
    if cur:
        out.append(cur)
    return out


def symmetric_parity_normalize(A: BinaryMatrix) -> Normalized:
    """Congruence ``P A P^T`` with every row sum even, for symmetric zero-diagonal singular ``A``.

    After tridiagonalizing, the matrix splits into zero blocks and path blocks.
    A kernel vector is read off the blocks (ones on zero blocks, alternating
    ones on odd paths); folding every row outside its support into one pivot
    inside its support makes all row sums even.
    """
    if A.rows != A.cols:
        raise NonSquare(f"matrix is {A.rows}x{A.cols}")
    if not A.is_symmetric():
        raise NotSymmetric("matrix is not symmetric")
    if any(A.entries[i][i] for i in range(A.rows)):
        raise NonzeroDiagonal("diagonal entries must be zero")
    _require_square_singular(A)
    if A.all_sums_even():
        return Normalized(A, ())
    w = _Work(A)
    tridiagonalize(w)
    n = len(w.a)
    kernel = [0] * n
    zero_blocks = []
    for block in _blocks(w.a):
        if len(block) == 1:
            kernel[block[0]] = 1
            zero_blocks.append(block[0])
        elif len(block) % 2:
            for idx in block[::2]:
                kernel[idx] = 1
    if not any(kernel):
        raise AssertionError("no kernel vector found for a singular matrix")
    pivot = zero_blocks[0] if zero_blocks else kernel.index(1)
    for i in range(n):
        if i != pivot and not kernel[i]:
            w.congruent_add(i, pivot)
    out = w.matrix()
    assert not any(out.row_sums()) and out.is_symmetric()
    return Normalized(out, tuple(w.ops))
