import numpy as np
import pytest

from mpcube.quantum import (
    SQUARE_CELLS,
    GaussianInt,
    Matrix,
    commutes,
    context_cells,
    pauli_tensor,
    product_of,
    quantum_signature,
    verify_quantum_square,
)
from mpcube.sequences import Context
from mpcube.verifier import classical_signature

# floating-point oracle, independent of the Gaussian-integer code
NP_PAULI = {
    "I": np.eye(2),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]]),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def as_numpy(m: Matrix) -> np.ndarray:
    return np.array([[complex(x.re, x.im) for x in row] for row in m.rows])


I4 = Matrix.identity(4)


class TestGaussianInt:
    def test_i_squared(self):
        i = GaussianInt(0, 1)
        assert i * i == GaussianInt(-1, 0)

    def test_arithmetic(self):
        a, b = GaussianInt(2, -3), GaussianInt(-1, 4)
        assert complex((a * b).re, (a * b).im) == complex(2, -3) * complex(-1, 4)
        assert a + b == GaussianInt(1, 1)
        assert a - b == GaussianInt(3, -7)
        assert str(GaussianInt(0, -1)) == "-i"


class TestPauliTensor:
    def test_identity(self):
        assert pauli_tensor("I", "I") == I4

    @pytest.mark.parametrize("a", "IXYZ")
    @pytest.mark.parametrize("b", "IXYZ")
    def test_against_numpy(self, a, b):
        m = pauli_tensor(a, b)
        assert np.array_equal(as_numpy(m), np.kron(NP_PAULI[a], NP_PAULI[b]))
        assert m @ m == I4
        assert m.dagger() == m

    def test_yy_is_real(self):
        assert pauli_tensor("Y", "Y").is_real()
        assert not pauli_tensor("Y", "I").is_real()


class TestCommutes:
    def test_examples(self):
        assert commutes(pauli_tensor("X", "I"), pauli_tensor("I", "X"))
        assert not commutes(pauli_tensor("X", "I"), pauli_tensor("Y", "I"))
        assert commutes(pauli_tensor("X", "X"), pauli_tensor("Y", "Y"))

    @pytest.mark.parametrize("context", list(Context), ids=lambda c: c.value)
    def test_contexts_commute(self, context):
        ops = [pauli_tensor(*label) for label in context_cells(context)]
        for i in range(3):
            for j in range(3):
                assert commutes(ops[i], ops[j])


class TestSquare:
    def test_layout_matches_contexts(self):
        for ctx in Context:
            labels = context_cells(ctx)
            observables = []
            for a, b in labels:
                observables.append(("" if a == "I" else a + "1") + ("" if b == "I" else b + "2"))
            assert sorted(observables) == sorted(o.name for o in ctx.observables)

    def test_products(self):
        assert product_of([pauli_tensor(*c) for c in context_cells(Context.R1)]) == I4
        assert product_of([pauli_tensor(*c) for c in context_cells(Context.C3)]) == -I4

    def test_products_against_numpy(self):
        for ctx in Context:
            p = np.eye(4)
            for a, b in context_cells(ctx):
                p = p @ np.kron(NP_PAULI[a], NP_PAULI[b])
            sign = quantum_signature()[ctx]
            assert np.allclose(p, sign * np.eye(4))

    def test_report(self):
        r = verify_quantum_square()
        assert r.passed
        assert r.universe_size == 9 + 18 + 6
        assert r.details["cells"] == [list(row) for row in SQUARE_CELLS]

    def test_matches_classical(self):
        assert quantum_signature() == classical_signature()
