"""Fiducial vectors, WH-covariant SICs, Bob's observables and MUBs."""

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError, FiducialError, StateError
from .wh_algebra import TAU_MAT, alice_observable, check_dim, omega_power, weyl_operator

TAU_SIC = 1e-8


@dataclass(frozen=True)
class Fiducial:
    d: int
    amplitudes: np.ndarray
    source: str = "file"
    # explicit completion to an orthonormal frame (fiducial last); None -> default rule
    frame: np.ndarray | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        amp = np.array(self.amplitudes, dtype=complex)
        amp.setflags(write=False)
        object.__setattr__(self, "amplitudes", amp)
        if self.frame is not None:
            fr = np.array(self.frame, dtype=complex)
            fr.setflags(write=False)
            object.__setattr__(self, "frame", fr)


@dataclass(frozen=True)
class SICReport:
    max_deviation: float
    overlaps: np.ndarray  # |<phi|W_y|phi>|^2 for y = 0..d^2-1
    tol: float = TAU_SIC

    @property
    def passed(self):
        return self.max_deviation < self.tol


@dataclass(frozen=True)
class EigenFrame:
    """Orthonormal vectors ``phi_0..phi_{d-1}`` as columns; the fiducial is last."""

    vectors: np.ndarray

    @property
    def d(self):
        return self.vectors.shape[0]

    @property
    def fiducial(self):
        return self.vectors[:, -1]


@dataclass(frozen=True)
class Realization:
    d: int
    state: np.ndarray
    alice: np.ndarray  # (d^2-1, d, d), alice[x-1] = A_x
    bob: np.ndarray  # (d^2, d, d), bob[y] = B_y

    def check(self, tol=TAU_MAT):
        """Raise StateError unless the state is normalized and every observable is
        unitary with spectrum in the d-th roots of unity."""
        d = self.d
        if abs(np.linalg.norm(self.state) - 1) > tol:
            raise StateError("realization state is not normalized")
        roots = np.array([omega_power(d, k) for k in range(d)])
        for U in list(self.alice) + list(self.bob):
            if np.abs(U.conj().T @ U - np.eye(d)).max() > tol:
                raise StateError("observable is not unitary")
            ev = np.linalg.eigvals(U)
            if np.abs(ev[:, None] - roots[None, :]).min(axis=1).max() > 1e3 * tol:
                raise StateError("observable eigenvalue is not a d-th root of unity")
        return self


def _normalize(v):
    v = np.asarray(v, dtype=complex)
    return v / np.linalg.norm(v)


def validate_sic(phi, d):
    """SIC test: ``|<phi|W_y|phi>|^2 = 1/(d+1)`` for every ``y != 0``."""
    d = check_dim(d)
    phi = np.asarray(phi, dtype=complex)
    if phi.shape != (d,):
        raise DimensionError(f"fiducial must have length {d}, got shape {phi.shape}")
    overlaps = np.array([abs(np.vdot(phi, weyl_operator(d, y) @ phi)) ** 2 for y in range(d * d)])
    dev = np.abs(overlaps[1:] - 1.0 / (d + 1)).max()
    return SICReport(max_deviation=float(dev), overlaps=overlaps)


def _admit(fid):
    if abs(np.linalg.norm(fid.amplitudes) - 1) > TAU_MAT:
        raise FiducialError("fiducial is not normalized")
    rep = validate_sic(fid.amplitudes, fid.d)
    if not rep.passed:
        raise FiducialError(
            f"vector does not generate a SIC (worst overlap deviation {rep.max_deviation:.3e})",
            rep.max_deviation,
        )
    return fid


def theta_fiducial(theta):
    """Qutrit family ``(0, 1, -w^theta)/sqrt(2)``; theta = 0 is the Hesse fiducial."""
    if not 0 <= theta <= 0.5:
        raise FiducialError(f"theta must lie in [0, 1/2], got {theta}")
    return _normalize([0, 1, -omega_power(3, theta)])


def builtin_fiducial(d, selector="default", theta=None):
    """Return one of the shipped fiducials.

    ``selector`` is ``"d2-default"`` (d=2), ``"hesse"`` or ``"theta"`` (d=3);
    ``"default"`` picks the shipped choice for ``d``.
    """
    d = check_dim(d)
    if selector == "default":
        selector = {2: "d2-default", 3: "hesse"}.get(d)
        if selector is None:
            raise FiducialError(f"no built-in fiducial for d={d}; supply a fiducial file")
    if selector == "d2-default":
        if d != 2:
            raise FiducialError("d2-default fiducial requires d=2")
        s3 = np.sqrt(3.0)
        phase = np.exp(-1j * np.pi / 4)
        phi1 = _normalize([phase, np.sqrt(2) / (1 + s3)])
        phi0 = _normalize([phase, np.sqrt(2) / (1 - s3)])
        fid = Fiducial(2, phi1, "builtin-d2", frame=np.column_stack([phi0, phi1]))
    elif selector in ("hesse", "theta"):
        if d != 3:
            raise FiducialError(f"{selector} fiducial requires d=3")
        if selector == "hesse":
            theta, source = 0.0, "hesse"
        else:
            if theta is None:
                raise FiducialError("theta selector needs a theta value")
            source = f"theta({theta:g})"
        fid = Fiducial(3, theta_fiducial(theta), source)
        if selector == "hesse":
            r2 = np.sqrt(0.5)
            frame = np.array([[1, 0, 0], [0, r2, r2], [0, r2, -r2]], dtype=complex)
            fid = Fiducial(3, fid.amplitudes, source, frame=frame)
    else:
        raise FiducialError(f"unknown fiducial selector {selector!r}")
    return _admit(fid)


def fiducial_from_dict(data):
    d = check_dim(data["d"])
    amp = np.array([complex(re, im) for re, im in data["amplitudes"]])
    if amp.shape != (d,):
        raise FiducialError(f"expected {d} amplitudes, got {amp.size}")
    norm = np.linalg.norm(amp)
    if abs(norm - 1) > 1e-6:
        raise FiducialError(f"fiducial norm {norm:.8f} is not within 1e-6 of 1")
    return _admit(Fiducial(d, amp / norm, "file"))


def load_fiducial(path):
    with open(path) as fh:
        return fiducial_from_dict(json.load(fh))


def fiducial_to_dict(fid):
    return {"d": fid.d, "amplitudes": [[float(z.real), float(z.imag)] for z in fid.amplitudes]}


def save_fiducial(fid, path):
    with open(path, "w") as fh:
        json.dump(fiducial_to_dict(fid), fh, indent=2)


def complete_frame(fid):
    """Orthonormal frame with the fiducial as its last vector.

    Built-ins carry an explicit frame.  Otherwise the canonical basis vector
    most aligned with the fiducial is dropped and the rest are Gram-Schmidt
    orthogonalized against it in index order.
    """
    if fid.frame is not None:
        return EigenFrame(np.array(fid.frame))
    d = fid.d
    phi = np.array(fid.amplitudes)
    drop = int(np.argmax(np.abs(phi)))
    vecs = [phi]
    for k in range(d):
        if k == drop:
            continue
        v = np.zeros(d, dtype=complex)
        v[k] = 1.0
        for u in vecs:
            v = v - np.vdot(u, v) * u
        vecs.append(v / np.linalg.norm(v))
    return EigenFrame(np.column_stack(vecs[1:] + [phi]))


def bob_reference(frame):
    """``B_0 = sum_b w^b |phi_b><phi_b|``."""
    d = frame.d
    V = frame.vectors
    phases = np.array([omega_power(d, b) for b in range(d)])
    return (V * phases) @ V.conj().T


def bob_observable(B0, y, d):
    """``B_y = W_y B_0 W_y^dag``."""
    d = check_dim(d)
    W = weyl_operator(d, y)
    return W @ B0 @ W.conj().T


def bob_observables(B0, d):
    return np.array([bob_observable(B0, y, d) for y in range(d * d)])


def sic_orbit(fid):
    """The d^2 vectors ``W_y |phi>`` as columns, in label order y = 0..d^2-1."""
    d = fid.d
    phi = np.array(fid.amplitudes)
    return np.column_stack([weyl_operator(d, y) @ phi for y in range(d * d)])


def eigenbasis(U):
    """Eigenvectors of a unitary with non-degenerate spectrum, as columns.

    Columns are sorted by eigenvalue phase in [0, 2 pi) and each is rephased so
    that its last non-negligible component is real and positive.
    """
    ev, vecs = np.linalg.eig(U)
    order = np.argsort(np.mod(np.angle(ev) + 1e-12, 2 * np.pi))
    vecs = vecs[:, order]
    for k in range(vecs.shape[1]):
        v = vecs[:, k]
        idx = np.nonzero(np.abs(v) > 1e-9)[0][-1]
        v = v * np.exp(-1j * np.angle(v[idx]))
        vecs[:, k] = v / np.linalg.norm(v)
    return vecs


def mub_family(d):
    """Eigenbases of ``Z, X, XZ, ..., XZ^{d-1}``: a complete set of d+1 MUBs."""
    d = check_dim(d)
    labels = [1] + [d + k for k in range(d)]
    return [eigenbasis(alice_observable(d, x)) for x in labels]


def max_entangled(d):
    """``(1/sqrt d) sum_a |aa>`` as a length-d^2 vector."""
    d = check_dim(d)
    return np.eye(d, dtype=complex).reshape(d * d) / np.sqrt(d)


def optimal_realization(fid):
    """Maximally entangled state, Alice's WH observables, Bob's SIC observables."""
    d = fid.d
    B0 = bob_reference(complete_frame(fid))
    alice = np.array([alice_observable(d, x) for x in range(1, d * d)])
    return Realization(d, max_entangled(d), alice, bob_observables(B0, d))


def same_basis(U, V, tol=TAU_SIC):
    """True if the columns of U and V span the same rays (any order, any phases)."""
    G = np.abs(U.conj().T @ V) ** 2
    return bool(np.all(np.abs(G.max(axis=1) - 1) < tol) and np.all(np.abs(G.max(axis=0) - 1) < tol))


def unbiased(U, V, tol=TAU_SIC):
    d = U.shape[0]
    return bool(np.abs(np.abs(U.conj().T @ V) ** 2 - 1.0 / d).max() < tol)
