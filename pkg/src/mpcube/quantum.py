"""Two-qubit Pauli operators in exact Gaussian-integer arithmetic.

Used as an independent cross-check of the magic-square sign pattern:
commutation inside each row and column, and each triple product equal to
plus or minus the identity.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .sequences import Context
from .verifier import EXPECTED_PRODUCTS, VerificationReport


@dataclass(frozen=True)
class GaussianInt:
    re: int = 0
    im: int = 0

    def __add__(self, other: "GaussianInt") -> "GaussianInt":
        return GaussianInt(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "GaussianInt") -> "GaussianInt":
        return GaussianInt(self.re - other.re, self.im - other.im)

    def __mul__(self, other: "GaussianInt") -> "GaussianInt":
        return GaussianInt(self.re * other.re - self.im * other.im, self.re * other.im + self.im * other.re)

    def __neg__(self) -> "GaussianInt":
        return GaussianInt(-self.re, -self.im)

    def conjugate(self) -> "GaussianInt":
        return GaussianInt(self.re, -self.im)

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return {1: "i", -1: "-i"}.get(self.im, f"{self.im}i")
        return f"{self.re}{self.im:+d}i"


ZERO, ONE, I_UNIT = GaussianInt(0), GaussianInt(1), GaussianInt(0, 1)


@dataclass(frozen=True)
class Matrix:
    """Square matrix of :class:`GaussianInt`, stored row-major."""

    rows: tuple[tuple[GaussianInt, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        n = self.dim
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = ZERO
                for k in range(n):
                    acc = acc + self.rows[i][k] * other.rows[k][j]
                row.append(acc)
            out.append(tuple(row))
        return Matrix(tuple(out))

    def __neg__(self) -> "Matrix":
        return Matrix(tuple(tuple(-x for x in row) for row in self.rows))

    def kron(self, other: "Matrix") -> "Matrix":
        n, m = self.dim, other.dim
        return Matrix(tuple(
            tuple(self.rows[i // m][j // m] * other.rows[i % m][j % m] for j in range(n * m))
            for i in range(n * m)
        ))

    def dagger(self) -> "Matrix":
        n = self.dim
        return Matrix(tuple(tuple(self.rows[j][i].conjugate() for j in range(n)) for i in range(n)))

    def is_real(self) -> bool:
        return all(x.im == 0 for row in self.rows for x in row)

    def to_json(self) -> list:
        return [[str(x) for x in row] for row in self.rows]


# Matrix4 in the two-qubit sense
Matrix4 = Matrix

_G = GaussianInt
PAULI = {
    "I": Matrix(((_G(1), _G(0)), (_G(0), _G(1)))),
    "X": Matrix(((_G(0), _G(1)), (_G(1), _G(0)))),
    "Y": Matrix(((_G(0), _G(0, -1)), (_G(0, 1), _G(0)))),
    "Z": Matrix(((_G(1), _G(0)), (_G(0), _G(-1)))),
}


def pauli_tensor(a: str, b: str) -> Matrix:
    return PAULI[a].kron(PAULI[b])


def commutes(m: Matrix, n: Matrix) -> bool:
    return m @ n == n @ m


def product_of(ms: Sequence[Matrix]) -> Matrix:
    out = Matrix.identity(ms[0].dim)
    for m in ms:
        out = out @ m
    return out


# Pauli labels (cube 1 factor, cube 2 factor) for each cell; row r, column c.
SQUARE_CELLS: tuple[tuple[str, ...], ...] = (
    ("XI", "IX", "XX"),
    ("IY", "YI", "YY"),
    ("XY", "YX", "ZZ"),
)


def context_cells(context: Context) -> tuple[str, str, str]:
    k = int(context.value[1]) - 1
    if context.value[0] == "R":
        return SQUARE_CELLS[k]
    return tuple(SQUARE_CELLS[r][k] for r in range(3))


def _op(label: str) -> Matrix:
    return pauli_tensor(label[0], label[1])


def quantum_signature() -> dict[Context, int]:
    """Sign s with product = s * identity, per context (raises if not a signed identity)."""
    ident = Matrix.identity(4)
    out = {}
    for c in Context:
        p = product_of([_op(label) for label in context_cells(c)])
        if p == ident:
            out[c] = 1
        elif p == -ident:
            out[c] = -1
        else:
            raise ValueError(f"{c.value} product is not +/- identity")
    return out


def verify_quantum_square() -> VerificationReport:
    """Report on the quantum square: involution, Hermiticity, commutation and products."""
    ident = Matrix.identity(4)
    cex = []
    cases = 0
    for row in SQUARE_CELLS:
        for label in row:
            m = _op(label)
            cases += 1
            if m @ m != ident or m.dagger() != m:
                cex.append({"operator": label, "problem": "not a Hermitian involution"})
    products = {}
    for c in Context:
        labels = context_cells(c)
        ops = [_op(lbl) for lbl in labels]
        for i in range(3):
            for j in range(i + 1, 3):
                cases += 1
                if not commutes(ops[i], ops[j]):
                    cex.append({"context": c.value, "pair": [labels[i], labels[j]], "problem": "do not commute"})
        cases += 1
        p = product_of(ops)
        if p == ident:
            products[c.value] = 1
        elif p == -ident:
            products[c.value] = -1
        else:
            products[c.value] = None
            cex.append({"context": c.value, "problem": "product is not +/- identity", "product": p.to_json()})
        if products[c.value] is not None and products[c.value] != EXPECTED_PRODUCTS[c]:
            cex.append({"context": c.value, "problem": "unexpected product sign", "product": products[c.value]})
    return VerificationReport(
        check="quantum_square",
        universe="9 operators + 18 commuting pairs + 6 triple products",
        universe_size=cases,
        counterexamples=cex,
        details={"cells": [list(r) for r in SQUARE_CELLS], "products": products},
    )
