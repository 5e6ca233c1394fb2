"""Coefficient matrices F_n and the real probability weights g of the Bell expression.

``F_n`` has shape ``(d^2-1, d^2)``: row ``x-1`` for Alice's setting
``x in [1, d^2)``, column ``y`` for Bob's setting ``y in [0, d^2)``.  Only column 0
(the seed) is solved for; every other column follows from it by a WH phase.
"""

import csv
import json
from dataclasses import dataclass

import numpy as np

from .errors import ConsistencyError, DimensionError
from .wh_algebra import TAU_MAT, check_dim, expand_traceless, omega_power


def column_phases(d, n):
    """``w^{-n(ps+qr)}`` as a ``(d^2-1, d^2)`` array, rows x = dp+q, cols y = dr+s."""
    x = np.arange(1, d * d)
    y = np.arange(d * d)
    p, q = np.divmod(x, d)
    r, s = np.divmod(y, d)
    expo = (-n * (np.outer(p, s) + np.outer(q, r))) % d
    return np.exp(2j * np.pi * expo / d)


@dataclass(frozen=True)
class CoefficientTensor:
    d: int
    F: dict  # n -> complex array (d^2-1, d^2)

    @property
    def powers(self):
        return sorted(self.F)

    def seed(self, n):
        return self.F[n][:, 0]

    def squared_norms(self):
        return {n: float(np.sum(np.abs(Fn) ** 2)) for n, Fn in self.F.items()}

    def real_valuedness_residual(self):
        d = self.d
        return max(float(np.abs(self.F[n] - self.F[d - n].conj()).max()) for n in self.powers)

    def row_orthogonality_residual(self):
        """Largest ``|sum_y conj(f_{a,y}) f_{x,y}|`` over ``a != x`` and all n."""
        worst = 0.0
        for Fn in self.F.values():
            G = Fn.conj() @ Fn.T
            np.fill_diagonal(G, 0)
            worst = max(worst, float(np.abs(G).max()))
        return worst

    def column_law_residual(self):
        worst = 0.0
        for n, Fn in self.F.items():
            expected = column_phases(self.d, n) * Fn[:, :1]
            worst = max(worst, float(np.abs(Fn - expected).max()))
        return worst


def seed_column(B0, d, n):
    """Solve ``(B_0^n)^* = sum_x c_x (A_x)^n`` for ``c``."""
    d = check_dim(d)
    Bn = np.linalg.matrix_power(np.asarray(B0, dtype=complex), n)
    return expand_traceless(Bn.conj(), d, n)


def expand_tensor(seeds, d, tol=TAU_MAT):
    """Generate every column from the seed: ``f_{dp+q, dr+s} = w^{-n(ps+qr)} f_{dp+q, 0}``."""
    d = check_dim(d)
    want = set(range(1, d))
    if set(seeds) != want:
        raise DimensionError(f"need one seed for every n in {sorted(want)}, got {sorted(seeds)}")
    F = {}
    for n in sorted(seeds):
        c = np.asarray(seeds[n], dtype=complex)
        if c.shape != (d * d - 1,):
            raise DimensionError(f"seed for n={n} must have length {d * d - 1}")
        F[n] = column_phases(d, n) * c[:, None]
    T = CoefficientTensor(d, F)
    res = T.real_valuedness_residual()
    if res >= tol:
        raise ConsistencyError(f"seeds violate F_n = conj(F_(d-n)): residual {res:.3e}")
    return T


def build_tensor(B0, d):
    d = check_dim(d)
    return expand_tensor({n: seed_column(B0, d, n) for n in range(1, d)}, d)


def functional_form_seed(n):
    """Closed-form qutrit seed: 1/2 on the Z-type rows, ``w^{-n(pq+3/2)+3/4}/(2 sqrt 3)`` otherwise."""
    c = np.empty(8, dtype=complex)
    for x in range(1, 9):
        p, q = divmod(x, 3)
        if p == 0:
            c[x - 1] = 0.5
        else:
            c[x - 1] = omega_power(3, -n * (p * q + 1.5) + 0.75) / (2 * np.sqrt(3))
    return c


def functional_form_check(T, tol=TAU_MAT):
    if T.d != 3:
        return False
    return all(np.abs(T.seed(n) - functional_form_seed(n)).max() < tol for n in T.powers)


@dataclass(frozen=True)
class GTensor:
    d: int
    g: np.ndarray  # real, shape (d^2-1, d^2, d, d) indexed [x-1, y, alpha, beta]


def g_tensor(T, tol=TAU_MAT):
    """``g_{x,y}^{a,b} = sum_n f_{x,y}^n w^{n(a+b)}``."""
    d = T.d
    k = np.arange(d)
    ab = (k[:, None] + k[None, :]) % d
    g = np.zeros((d * d - 1, d * d, d, d), dtype=complex)
    for n, Fn in T.F.items():
        g += Fn[:, :, None, None] * np.exp(2j * np.pi * ((n * ab) % d) / d)[None, None]
    imag = float(np.abs(g.imag).max())
    if imag >= tol:
        raise ConsistencyError(f"g tensor has imaginary residue {imag:.3e}")
    return GTensor(d, g.real.copy())


def tensor_to_dict(T, seed_only=False):
    """JSON-ready dict; floats are written at full precision so a reload is bit-exact."""
    out = []
    for n in T.powers:
        Fn = T.F[n][:, :1] if seed_only else T.F[n]
        out.append({"n": n, "rows": [[[float(z.real), float(z.imag)] for z in row] for row in Fn]})
    return {"d": T.d, "F": out, "seedOnly": bool(seed_only)}


def tensor_from_dict(data):
    """Inverse of :func:`tensor_to_dict`.  No invariants are enforced here;
    loaded tensors are checked by the certification routines."""
    d = check_dim(data["d"])
    F = {}
    for block in data["F"]:
        n = int(block["n"])
        rows = np.array([[complex(re, im) for re, im in row] for row in block["rows"]])
        if data.get("seedOnly", False):
            rows = column_phases(d, n) * rows[:, :1]
        if rows.shape != (d * d - 1, d * d):
            raise DimensionError(f"F_{n} has shape {rows.shape}, expected {(d * d - 1, d * d)}")
        F[n] = rows
    if set(F) != set(range(1, d)):
        raise DimensionError(f"tensor must carry F_n for n = 1..{d - 1}")
    return CoefficientTensor(d, F)


def save_tensor(T, path, seed_only=False, extra=None):
    data = tensor_to_dict(T, seed_only)
    if extra:
        data.update(extra)
    with open(path, "w") as fh:
        json.dump(data, fh, indent=1)


def load_tensor(path):
    with open(path) as fh:
        data = json.load(fh)
    return tensor_from_dict(data), data


def write_g_csv(G, fh):
    """One row per entry, header ``x,y,alpha,beta,g``; x is 1-based, the rest 0-based."""
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["x", "y", "alpha", "beta", "g"])
    for idx in np.ndindex(G.g.shape):
        x, y, a, b = idx
        w.writerow([x + 1, y, a, b, f"{G.g[idx]:.15g}"])
