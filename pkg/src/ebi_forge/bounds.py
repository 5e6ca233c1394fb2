"""Local and quantum bounds of the constructed Bell expressions, with certificates."""

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    CertificateError,
    DimensionError,
    InfeasibleError,
    NoViolationError,
    ProbabilityError,
    StateError,
)
from .wh_algebra import TAU_MAT, omega_power

TAU_PSD = 1e-7
# ties between deterministic strategies closer than this count as equal
TIE_TOL = 1e-9
MAX_EXACT_DIM = 3


@dataclass(frozen=True)
class DeterministicStrategy:
    alice: tuple  # output for x = 1..d^2-1
    bob: tuple  # output for y = 0..d^2-1


def quantum_bound(T, tol=TAU_MAT):
    """``(sum_n ||F_n||^2 + d^2 (d-1)) / 2``; valid only when rows are orthogonal."""
    res = T.row_orthogonality_residual()
    if res >= tol:
        raise CertificateError(f"rows of F_n are not orthogonal (residual {res:.3e})")
    return _qtilde(T)


def _qtilde(T):
    d = T.d
    return 0.5 * (sum(T.squared_norms().values()) + d * d * (d - 1))


def _powers(ops, n):
    return np.array([np.linalg.matrix_power(U, n) for U in ops])


def _check_dims(T, R):
    if T.d != R.d or R.alice.shape[0] != T.d**2 - 1 or R.bob.shape[0] != T.d**2:
        raise DimensionError(f"tensor (d={T.d}) and realization (d={R.d}) do not match")


def alice_combinations(T, R):
    """``D_y^n = sum_x f_{x,y}^n A_x^n`` for every n and y, as ``{n: (d^2, d, d)}``."""
    return {n: np.einsum("xy,xab->yab", T.F[n], _powers(R.alice, n)) for n in T.powers}


def bell_operator(T, R):
    """``sum_n sum_{x,y} f_{x,y}^n A_x^n (x) B_y^n`` on the d^2-dimensional joint space."""
    _check_dims(T, R)
    d = T.d
    D = alice_combinations(T, R)
    out = np.zeros((d * d, d * d), dtype=complex)
    for n in T.powers:
        Bn = _powers(R.bob, n)
        for y in range(d * d):
            out += np.kron(D[n][y], Bn[y])
    return out


def _as_density(rho, dim):
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim == 1:
        if rho.shape != (dim,) or abs(np.linalg.norm(rho) - 1) > TAU_MAT:
            raise StateError("state vector must be normalized with length d^2")
        return np.outer(rho, rho.conj())
    if rho.shape != (dim, dim):
        raise StateError(f"density matrix must be {dim}x{dim}")
    if np.abs(rho - rho.conj().T).max() > TAU_MAT or abs(np.trace(rho) - 1) > TAU_MAT:
        raise StateError("density matrix must be Hermitian with unit trace")
    if np.linalg.eigvalsh((rho + rho.conj().T) / 2).min() < -TAU_PSD:
        raise StateError("density matrix is not positive semidefinite")
    return rho


def quantum_value(T, R, rho=None, operator=None):
    """``Tr[rho B]``; ``rho`` is a state vector or density matrix (default: R.state)."""
    B = bell_operator(T, R) if operator is None else operator
    rho = _as_density(R.state if rho is None else rho, B.shape[0])
    return float(np.real(np.trace(rho @ B)))


def isotropic_state(d, visibility):
    phi = np.eye(d, dtype=complex).reshape(d * d) / np.sqrt(d)
    return visibility * np.outer(phi, phi.conj()) + (1 - visibility) * np.eye(d * d) / d**2


def strategy_value(G, strategy):
    g = G.g
    x = np.arange(g.shape[0])
    return float(sum(g[x, y, list(strategy.alice), strategy.bob[y]].sum() for y in range(g.shape[1])))


def _decode(indices, d, nx):
    """Base-d digits, most significant first, so index order is lexicographic."""
    digits = np.empty((indices.size, nx), dtype=np.int64)
    rem = indices.copy()
    for x in range(nx - 1, -1, -1):
        digits[:, x] = rem % d
        rem //= d
    return digits


def _block_values(g, start, stop):
    nx, ny, d, _ = g.shape
    assign = _decode(np.arange(start, stop, dtype=np.int64), d, nx)
    acc = np.zeros((stop - start, ny, d))
    for x in range(nx):
        # g[x][:, a_x, :] for every assignment, fixed summation order over x
        acc += np.transpose(g[x][:, assign[:, x], :], (1, 0, 2))
    return acc.max(axis=2).sum(axis=1)


def _thread_cap():
    env = os.environ.get("EBI_FORGE_THREADS")
    cap = int(env) if env else (os.cpu_count() or 1)
    return max(1, cap)


def _bob_best(g, alice):
    nx = g.shape[0]
    acc = g[np.arange(nx), :, list(alice), :].sum(axis=0)  # (y, beta)
    hits = acc >= acc.max(axis=1, keepdims=True) - TIE_TOL
    return tuple(int(b) for b in hits.argmax(axis=1))


def lhv_bound(G, parallel=False, threads=None, block=4096):
    """Exact local bound by enumerating Alice's deterministic assignments.

    For fixed Alice outputs Bob's best response decouples per setting, so
    ``L = max_a sum_y max_b sum_x g[x, y, a_x, b]``.  Returns ``(L, strategy)``
    where the strategy is the lexicographically first optimum.
    """
    d = G.d
    if d > MAX_EXACT_DIM:
        raise InfeasibleError(f"exact enumeration needs d^(d^2-1) steps, too many for d={d}; use lhv_heuristic")
    g = G.g
    nx = g.shape[0]
    total = d**nx
    bounds = [(s, min(s + block, total)) for s in range(0, total, block)]
    if parallel:
        workers = min(threads or _thread_cap(), _thread_cap(), len(bounds))
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda b: _block_values(g, *b), bounds))
    else:
        parts = [_block_values(g, *b) for b in bounds]
    values = np.concatenate(parts)
    best = values.max()
    idx = int(np.argmax(values >= best - TIE_TOL))
    alice = tuple(int(a) for a in _decode(np.array([idx]), d, nx)[0])
    return float(best), DeterministicStrategy(alice, _bob_best(g, alice))


def optimal_alice_set(G):
    """All Alice assignments reaching the exact bound (within the tie tolerance)."""
    d = G.d
    nx = G.g.shape[0]
    values = _block_values(G.g, 0, d**nx)
    hits = np.nonzero(values >= values.max() - TIE_TOL)[0]
    return {tuple(int(a) for a in row) for row in _decode(hits, d, nx)}


def _alice_objective(g, alice):
    nx = g.shape[0]
    return float(g[np.arange(nx), :, list(alice), :].sum(axis=0).max(axis=1).sum())


def lhv_heuristic(G, restarts=10, seed=0):
    """Lower bound on L by coordinate ascent over Alice's outputs with Bob's
    best response recomputed at each step.  Works for any d."""
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    g = G.g
    nx, _, d, _ = g.shape
    rng = np.random.default_rng(seed)
    best_val, best_alice = -np.inf, None
    for _ in range(restarts):
        alice = list(rng.integers(0, d, size=nx))
        val = _alice_objective(g, alice)
        improved = True
        while improved:
            improved = False
            for x in rng.permutation(nx):
                keep = alice[x]
                for a in range(d):
                    if a == keep:
                        continue
                    alice[x] = a
                    v = _alice_objective(g, alice)
                    if v > val + TIE_TOL:
                        val, keep, improved = v, a, True
                alice[x] = keep
        if val > best_val + TIE_TOL:
            best_val, best_alice = val, tuple(int(a) for a in alice)
    return best_val, DeterministicStrategy(best_alice, _bob_best(g, best_alice))


@dataclass
class CertificateReport:
    qtilde: float
    sos_identity_residual: float
    min_eigenvalue: float
    saturation_residuals: dict  # (n, y) -> ||P_y^n |phi+>||
    conjugate_relation_residual: float  # max |D_y^n - conj(B_y^n)|
    row_orthogonality_residual: float
    quantum_value_at_optimum: float
    tau_mat: float = TAU_MAT
    tau_psd: float = TAU_PSD
    checks: dict = field(default_factory=dict)

    def __post_init__(self):
        tm = self.tau_mat
        self.checks = {
            "sos_identity": self.sos_identity_residual < tm,
            "psd": self.min_eigenvalue >= -self.tau_psd,
            "saturation": max(self.saturation_residuals.values()) < tm,
            "conjugate_relation": self.conjugate_relation_residual < tm,
            "row_orthogonality": self.row_orthogonality_residual < tm,
            "attains_bound": abs(self.quantum_value_at_optimum - self.qtilde) < tm * max(1.0, self.qtilde),
        }

    @property
    def passed(self):
        return all(self.checks.values())

    def failures(self):
        return [k for k, ok in self.checks.items() if not ok]

    def to_dict(self):
        s3 = lambda v: float(f"{v:.3g}")
        return {
            "pass": self.passed,
            "checks": dict(self.checks),
            "qtilde": s3(self.qtilde),
            "sosIdentityResidual": s3(self.sos_identity_residual),
            "minEigenvalue": s3(self.min_eigenvalue),
            "maxSaturationResidual": s3(max(self.saturation_residuals.values())),
            "saturationResiduals": {f"{n},{y}": s3(v) for (n, y), v in self.saturation_residuals.items()},
            "conjugateRelationResidual": s3(self.conjugate_relation_residual),
            "rowOrthogonalityResidual": s3(self.row_orthogonality_residual),
            "quantumValueAtOptimum": s3(self.quantum_value_at_optimum),
            "tolerances": {"tau_mat": self.tau_mat, "tau_psd": self.tau_psd},
        }


def sos_certificate(T, R, tau_mat=TAU_MAT, tau_psd=TAU_PSD):
    """Check ``Q I - B = (1/2) sum_{n,y} P^dag P`` with ``P = D_y^n (x) 1 - 1 (x) (B_y^n)^dag``,
    its positivity, and saturation on the realization's state."""
    _check_dims(T, R)
    d = T.d
    eye = np.eye(d)
    q = _qtilde(T)
    B = bell_operator(T, R)
    D = alice_combinations(T, R)
    sos = np.zeros_like(B)
    sat, conj_res = {}, 0.0
    for n in T.powers:
        Bn = _powers(R.bob, n)
        for y in range(d * d):
            P = np.kron(D[n][y], eye) - np.kron(eye, Bn[y].conj().T)
            sos += P.conj().T @ P
            sat[(n, y)] = float(np.linalg.norm(P @ R.state))
            conj_res = max(conj_res, float(np.abs(D[n][y] - Bn[y].conj()).max()))
    shifted = q * np.eye(d * d) - B
    identity_res = float(np.abs(shifted - 0.5 * sos).max())
    min_ev = float(np.linalg.eigvalsh((shifted + shifted.conj().T) / 2).min())
    return CertificateReport(
        qtilde=q,
        sos_identity_residual=identity_res,
        min_eigenvalue=min_ev,
        saturation_residuals=sat,
        conjugate_relation_residual=conj_res,
        row_orthogonality_residual=T.row_orthogonality_residual(),
        quantum_value_at_optimum=quantum_value(T, R, operator=B),
        tau_mat=tau_mat,
        tau_psd=tau_psd,
    )


def critical_visibility(L, qtilde):
    """Smallest isotropic-state visibility that still violates ``S <= L``.

    The expressions carry no marginals, so the maximally mixed part contributes
    nothing and the threshold is ``L / Q``.
    """
    if not 0 < L < qtilde:
        raise NoViolationError(f"no violation: L={L} is not below Q={qtilde}")
    return L / qtilde


def visibility_straddle(T, R, L, qtilde, eps=1e-6):
    """Bell values of isotropic states just below and just above the critical visibility."""
    nu = critical_visibility(L, qtilde)
    B = bell_operator(T, R)
    lo = quantum_value(T, R, isotropic_state(T.d, nu - eps), operator=B)
    hi = quantum_value(T, R, isotropic_state(T.d, nu + eps), operator=B)
    return lo, hi


def spectral_projectors(U):
    """Projectors onto the ``w^k`` eigenspaces of a unitary with ``U^d = I``."""
    d = U.shape[0]
    powers = [np.linalg.matrix_power(U, j) for j in range(d)]
    return np.array([sum(omega_power(d, -k * j) * powers[j] for j in range(d)) / d for k in range(d)])


def born_table(R, rho=None):
    """``P[x-1, y, a, b] = Tr[rho (G_a^x (x) H_b^y)]`` for the realization."""
    d = R.d
    rho = _as_density(R.state if rho is None else rho, d * d)
    GA = np.array([spectral_projectors(A) for A in R.alice])
    HB = np.array([spectral_projectors(B) for B in R.bob])
    r4 = rho.reshape(d, d, d, d)
    # Tr[rho (G (x) H)] = sum rho[i k, j l] G[j, i] H[l, k]
    P = np.einsum("ikjl,xaji,yblk->xyab", r4, GA, HB, optimize=True)
    return P.real


def evaluate_expression(G, P, tol=TAU_MAT):
    """``S = sum g_{x,y}^{a,b} P(ab|xy)`` for a table shaped like ``G.g``."""
    P = np.asarray(P, dtype=float)
    if P.shape != G.g.shape:
        raise ProbabilityError(f"probability table must have shape {G.g.shape}")
    if P.min() < -tol:
        raise ProbabilityError("probability table has negative entries")
    sums = P.sum(axis=(2, 3))
    if np.abs(sums - 1).max() > tol:
        raise ProbabilityError("probabilities are not normalized for every (x, y)")
    return float(np.sum(G.g * P))


def deterministic_table(strategy, d):
    nx, ny = len(strategy.alice), len(strategy.bob)
    P = np.zeros((nx, ny, d, d))
    for x, a in enumerate(strategy.alice):
        for y, b in enumerate(strategy.bob):
            P[x, y, a, b] = 1.0
    return P


def correlator_value(T, P):
    """``sum_n sum_{x,y} f_{x,y}^n <A_x^n B_y^n>`` with correlators read off a probability table."""
    d = T.d
    k = np.arange(d)
    total = 0j
    for n, Fn in T.F.items():
        phase = np.exp(2j * np.pi * ((n * (k[:, None] + k[None, :])) % d) / d)
        corr = np.einsum("xyab,ab->xy", P, phase)
        total += np.sum(Fn * corr)
    return total
