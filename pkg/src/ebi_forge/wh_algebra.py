"""Weyl-Heisenberg operators in prime dimension.

The shift and clock matrices are ``X|a> = |a+1>`` and ``Z|a> = w^a |a>`` with
``w = exp(2 pi i / d)``.  Operators are labelled by a flat index
``j = d*p + q`` standing for ``X^p Z^q``.  Index 0 is the identity and is not
one of Alice's observables.
"""

from functools import lru_cache

import numpy as np

from .errors import DimensionError, TraceError

TAU_MAT = 1e-9


def is_prime(d):
    if d < 2:
        return False
    k = 2
    while k * k <= d:
        if d % k == 0:
            return False
        k += 1
    return True


def check_dim(d):
    """Return ``d`` as an int, raising DimensionError unless it is prime."""
    if isinstance(d, bool) or int(d) != d:
        raise DimensionError(f"d must be an integer, got {d!r}")
    d = int(d)
    if not is_prime(d):
        raise DimensionError(f"d must be prime, got {d}")
    return d


def omega_power(d, k):
    """``w^k`` with the exponent reduced mod d, so integer powers never drift."""
    if float(k).is_integer():
        k = int(k) % d
    return np.exp(2j * np.pi * k / d)


def omega(d):
    return omega_power(d, 1)


def split_label(d, j):
    """Flat label ``j = d*p + q`` -> ``(p, q)``."""
    if not 0 <= j < d * d:
        raise IndexError(f"label {j} outside [0, {d * d})")
    return divmod(int(j), d)


def flat_label(d, p, q):
    if not (0 <= p < d and 0 <= q < d):
        raise IndexError(f"(p, q) = ({p}, {q}) outside [0, {d})^2")
    return d * p + q


@lru_cache(maxsize=None)
def _shift_clock(d):
    X = np.roll(np.eye(d, dtype=complex), 1, axis=0)
    Z = np.diag([omega_power(d, a) for a in range(d)])
    X.setflags(write=False)
    Z.setflags(write=False)
    return X, Z


def shift(d):
    return _shift_clock(check_dim(d))[0].copy()


def clock(d):
    return _shift_clock(check_dim(d))[1].copy()


def weyl_operator(d, label):
    """``X^p Z^q`` for ``label = d*p + q`` (or a ``(p, q)`` tuple)."""
    d = check_dim(d)
    if isinstance(label, tuple):
        p, q = label
        label = flat_label(d, p, q)
    p, q = split_label(d, label)
    # (X^p Z^q)[a + p, a] = w^(q a)
    W = np.zeros((d, d), dtype=complex)
    for a in range(d):
        W[(a + p) % d, a] = omega_power(d, q * a)
    return W


def _tau(d, p, q):
    # the phase factor only matters for qubits, where it makes A_3 = sigma_y
    return 1j ** (p * q) if d == 2 else 1.0


def alice_observable(d, x):
    """Alice's x-th observable ``tau * W_x``; ``x`` ranges over ``[1, d^2)``."""
    d = check_dim(d)
    if not 1 <= x < d * d:
        raise IndexError(f"Alice setting x={x} outside [1, {d * d})")
    p, q = split_label(d, x)
    return _tau(d, p, q) * weyl_operator(d, x)


def basis_row(d, n, x):
    """The x-th element of the operator basis used at power ``n``: ``(A_x)^n``."""
    d = check_dim(d)
    if not 1 <= n < d:
        raise IndexError(f"power n={n} outside [1, {d})")
    return np.linalg.matrix_power(alice_observable(d, x), n)


def alice_basis(d, n):
    """Stack of ``(A_x)^n`` for ``x = 1..d^2-1``, shape ``(d^2-1, d, d)``."""
    d = check_dim(d)
    return np.array([basis_row(d, n, x) for x in range(1, d * d)])


def expand_traceless(M, d, n, tol=TAU_MAT):
    """Coefficients of a traceless operator in the basis ``{(A_x)^n}``.

    Returns ``c`` with ``c[x-1] = Tr[(A_x^n)^dag M] / d`` so that
    ``sum_x c[x-1] A_x^n == M``.
    """
    d = check_dim(d)
    M = np.asarray(M, dtype=complex)
    if M.shape != (d, d):
        raise DimensionError(f"expected a {d}x{d} matrix, got shape {M.shape}")
    tr = abs(np.trace(M))
    if tr >= tol:
        raise TraceError(tr)
    basis = alice_basis(d, n)
    return np.einsum("xab,ab->x", basis.conj(), M) / d


def reconstruct(c, d, n):
    """Inverse of :func:`expand_traceless`."""
    basis = alice_basis(d, n)
    return np.einsum("x,xab->ab", np.asarray(c, dtype=complex), basis)
