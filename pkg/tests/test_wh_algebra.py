import numpy as np
import pytest

from ebi_forge import DimensionError, TraceError
from ebi_forge.wh_algebra import (
    alice_basis,
    alice_observable,
    basis_row,
    check_dim,
    clock,
    expand_traceless,
    reconstruct,
    shift,
    weyl_operator,
)

W3 = np.exp(2j * np.pi / 3)
TAU = 1e-9


def _explicit_weyl(d, p, q):
    # independent construction: powers of hand-built X and Z
    w = np.exp(2j * np.pi / d)
    X = np.zeros((d, d), dtype=complex)
    for a in range(d):
        X[(a + 1) % d, a] = 1
    Z = np.diag([w**a for a in range(d)])
    return np.linalg.matrix_power(X, p) @ np.linalg.matrix_power(Z, q)


class TestWeylOperator:
    def test_identity(self):
        np.testing.assert_allclose(weyl_operator(3, 0), np.eye(3), atol=1e-15)

    def test_clock(self):
        np.testing.assert_allclose(weyl_operator(3, 1), np.diag([1, W3, W3**2]), atol=1e-15)

    def test_qubit_shift_is_sigma_x(self):
        np.testing.assert_allclose(weyl_operator(2, 2), [[0, 1], [1, 0]], atol=1e-15)

    def test_tuple_label(self):
        np.testing.assert_allclose(weyl_operator(3, (1, 2)), weyl_operator(3, 5))

    @pytest.mark.parametrize("d", [2, 3, 5, 7])
    def test_matches_matrix_powers(self, d):
        for j in range(d * d):
            p, q = divmod(j, d)
            np.testing.assert_allclose(weyl_operator(d, j), _explicit_weyl(d, p, q), atol=1e-12)

    @pytest.mark.parametrize("d", [4, 6, 9, 1, 0])
    def test_non_prime_rejected(self, d):
        with pytest.raises(DimensionError):
            weyl_operator(d, 0)

    def test_check_dim_rejects_float(self):
        with pytest.raises(DimensionError):
            check_dim(2.5)

    def test_label_out_of_range(self):
        with pytest.raises(IndexError):
            weyl_operator(3, 9)

    @pytest.mark.parametrize("d", [2, 3, 5, 7])
    def test_unitary_and_traceless(self, d):
        for j in range(d * d):
            W = weyl_operator(d, j)
            assert np.abs(W.conj().T @ W - np.eye(d)).max() < TAU
            if j:
                assert abs(np.trace(W)) < TAU


class TestAliceObservables:
    def test_qubit_sigma_y(self):
        np.testing.assert_allclose(alice_observable(2, 3), [[0, -1j], [1j, 0]], atol=1e-15)

    def test_qubit_set(self):
        Z, X, Y = (alice_observable(2, x) for x in (1, 2, 3))
        np.testing.assert_allclose(Z, np.diag([1, -1]), atol=1e-15)
        np.testing.assert_allclose(X, [[0, 1], [1, 0]], atol=1e-15)
        for A in (Z, X, Y):
            np.testing.assert_allclose(A, A.conj().T, atol=1e-15)

    def test_qutrit_reduces_to_weyl(self):
        for x in range(1, 9):
            np.testing.assert_allclose(alice_observable(3, x), weyl_operator(3, x))
        np.testing.assert_allclose(alice_observable(3, 1), np.diag([1, W3, W3**2]), atol=1e-15)

    def test_qutrit_x5_entrywise(self):
        # X Z^2: column a has w^(2a) in row a+1
        expected = np.zeros((3, 3), dtype=complex)
        for a in range(3):
            expected[(a + 1) % 3, a] = W3 ** (2 * a)
        np.testing.assert_allclose(alice_observable(3, 5), expected, atol=1e-15)

    def test_identity_excluded(self):
        with pytest.raises(IndexError):
            alice_observable(3, 0)

    @pytest.mark.parametrize("d", [3, 5])
    def test_odd_unitary_not_hermitian(self, d):
        A = alice_observable(d, 1)
        assert np.abs(A.conj().T @ A - np.eye(d)).max() < TAU
        assert np.abs(A - A.conj().T).max() > 0.1


class TestBasisRow:
    def test_first_power(self):
        np.testing.assert_allclose(basis_row(3, 1, 3), shift(3))

    def test_square(self):
        np.testing.assert_allclose(basis_row(3, 2, 1), np.diag([1, W3**2, W3]), atol=1e-15)

    def test_qubit(self):
        np.testing.assert_allclose(basis_row(2, 1, 2), [[0, 1], [1, 0]])

    @pytest.mark.parametrize("n", [0, 3])
    def test_power_out_of_range(self, n):
        with pytest.raises(IndexError):
            basis_row(3, n, 1)

    @pytest.mark.parametrize("d", [2, 3, 5])
    def test_hilbert_schmidt_orthogonal(self, d):
        for n in range(1, d):
            B = alice_basis(d, n)
            gram = np.einsum("aij,xij->ax", B.conj(), B)
            np.testing.assert_allclose(gram, d * np.eye(d * d - 1), atol=TAU)


class TestCommutation:
    @pytest.mark.parametrize("d", [2, 3, 5, 7])
    def test_canonical_commutation(self, d):
        X, Z = shift(d), clock(d)
        w = np.exp(2j * np.pi / d)
        for p in range(d):
            for q in range(d):
                Xp = np.linalg.matrix_power(X, p)
                Zq = np.linalg.matrix_power(Z, q)
                assert np.abs(Zq @ Xp - w ** (p * q) * Xp @ Zq).max() < TAU

    @pytest.mark.parametrize("d", [2, 3, 5])
    def test_full_hs_orthogonality(self, d):
        Ws = np.array([weyl_operator(d, j) for j in range(d * d)])
        gram = np.einsum("aij,xij->ax", Ws.conj(), Ws)
        np.testing.assert_allclose(gram, d * np.eye(d * d), atol=TAU)


class TestExpansion:
    def test_basis_element(self):
        np.testing.assert_allclose(expand_traceless(clock(3), 3, 1), np.eye(8)[0], atol=1e-15)

    def test_rejects_trace(self):
        with pytest.raises(TraceError) as err:
            expand_traceless(np.eye(3), 3, 1)
        assert err.value.trace_abs == pytest.approx(3.0)

    def test_shape_mismatch(self):
        with pytest.raises(DimensionError):
            expand_traceless(np.zeros((2, 2)), 3, 1)

    @pytest.mark.parametrize("d", [2, 3, 5])
    def test_round_trip_and_parseval(self, d, rng):
        for _ in range(100):
            M = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
            M -= np.trace(M) / d * np.eye(d)
            for n in range(1, d):
                c = expand_traceless(M, d, n)
                assert np.abs(reconstruct(c, d, n) - M).max() < TAU
                assert np.sum(np.abs(c) ** 2) == pytest.approx(np.sum(np.abs(M) ** 2) / d, rel=1e-12)
