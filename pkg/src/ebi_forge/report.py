"""Structure checks and the plain-text reproduction report."""

import io

import numpy as np

from . import bounds, inequality, reference, sic_states
from .wh_algebra import TAU_MAT, alice_observable

ALL_CHECKS = ("sos", "psd", "saturation", "rows", "columns", "real", "bound", "sic", "mub")


def _match_up_to_phase(computed, table):
    """Largest ``| |<c_j|t_j>| - 1 |`` over paired columns."""
    return float(max(abs(abs(np.vdot(computed[:, j], table[:, j])) - 1) for j in range(table.shape[1])))


def bob_eigen_orbit(R, beta):
    """Eigenvectors of every B_y for eigenvalue ``w^beta``, from numerical diagonalization."""
    d = R.d
    target = np.exp(2j * np.pi * beta / d)
    cols = []
    for B in R.bob:
        ev, vecs = np.linalg.eig(B)
        cols.append(vecs[:, np.argmin(np.abs(ev - target))])
    return np.column_stack(cols)


def sic_checks(inst):
    """Residuals for the SIC structure on Bob's side."""
    d = inst.d
    out = {"fiducial_sic_deviation": sic_states.validate_sic(inst.fiducial.amplitudes, d).max_deviation}
    orbit = bob_eigen_orbit(inst.realization, d - 1)
    gram = np.abs(orbit.conj().T @ orbit) ** 2
    off = gram[~np.eye(d * d, dtype=bool)]
    out["orbit_overlap_deviation"] = float(np.abs(off - 1 / (d + 1)).max())
    if inst.fiducial.source == "hesse":
        order = [reference.sic_column_label(j) for j in range(9)]
        out["sic2_table_deviation"] = _match_up_to_phase(orbit[:, order], reference.SIC2)
        sic1 = bob_eigen_orbit(inst.realization, 1)
        out["sic1_table_deviation"] = _match_up_to_phase(sic1[:, order], reference.SIC1)
    return out


def mub_checks(d):
    """Cross-basis overlap deviation of the d+1 MUBs and, for d=3, table deviation."""
    mubs = sic_states.mub_family(d)
    worst = 0.0
    for i in range(len(mubs)):
        for j in range(i + 1, len(mubs)):
            ov = np.abs(mubs[i].conj().T @ mubs[j]) ** 2
            worst = max(worst, float(np.abs(ov - 1 / d).max()))
    out = {"mub_overlap_deviation": worst}
    if d == 3:
        dev = 0.0
        for M, T in zip(mubs, reference.MUB):
            G = np.abs(M.conj().T @ T) ** 2
            dev = max(dev, float(np.abs(G.max(axis=0) - 1).max()))
        out["mub_table_deviation"] = dev
        partner_ok = all(
            sic_states.same_basis(
                sic_states.eigenbasis(alice_observable(3, a)), sic_states.eigenbasis(alice_observable(3, b))
            )
            for a, b in zip(reference.MUB_SETTINGS, reference.MUB_PARTNERS)
        )
        out["partner_bases_mismatch"] = 0.0 if partner_ok else 1.0
    return out


def run_checks(inst, tensor=None, checks=ALL_CHECKS, tau_mat=TAU_MAT, tau_psd=bounds.TAU_PSD):
    """Run the named checks; returns ``(results, certificate)`` where results
    maps check name -> (passed, detail dict)."""
    T = inst.tensor if tensor is None else tensor
    results = {}
    cert = None
    if {"sos", "psd", "saturation", "rows", "bound"} & set(checks):
        cert = bounds.sos_certificate(T, inst.realization, tau_mat=tau_mat, tau_psd=tau_psd)
        c = cert.checks
        mapping = {
            "sos": ("sos_identity", {"residual": cert.sos_identity_residual}),
            "psd": ("psd", {"min_eigenvalue": cert.min_eigenvalue}),
            "saturation": (
                "saturation",
                {
                    "max_norm": max(cert.saturation_residuals.values()),
                    "conjugate_relation": cert.conjugate_relation_residual,
                },
            ),
            "rows": ("row_orthogonality", {"residual": cert.row_orthogonality_residual}),
            "bound": ("attains_bound", {"value": cert.quantum_value_at_optimum, "qtilde": cert.qtilde}),
        }
        for name, (key, detail) in mapping.items():
            if name in checks:
                ok = c[key] and (name != "saturation" or c["conjugate_relation"])
                results[name] = (ok, detail)
    if "columns" in checks:
        r = T.column_law_residual()
        results["columns"] = (r < tau_mat, {"residual": r})
    if "real" in checks:
        r = T.real_valuedness_residual()
        results["real"] = (r < tau_mat, {"residual": r})
    if "sic" in checks:
        det = sic_checks(inst)
        results["sic"] = (all(v < sic_states.TAU_SIC for v in det.values()), det)
    if "mub" in checks:
        det = mub_checks(inst.d)
        results["mub"] = (all(v < sic_states.TAU_SIC for v in det.values()), det)
    return results, cert


def _fmt(z):
    z = complex(z)
    if abs(z.imag) < 5e-13:
        return f"{z.real:+.4f}"
    return f"{z.real:+.4f}{z.imag:+.4f}i"


def _table(M):
    return "\n".join("  " + " ".join(f"{_fmt(v):>16}" for v in row) for row in M)


def text_report(inst):
    d = inst.d
    T = inst.tensor
    buf = io.StringIO()
    p = lambda *a: print(*a, file=buf)
    pub = reference.REFERENCE_VALUES.get(d, {})
    p(f"Bell inequality reproduction report, d={d}, fiducial={inst.fiducial.source}")
    p("=" * 72)
    p("quantity             computed            reference           delta")

    def row(name, value, ref):
        if ref is None:
            p(f"{name:<20} {value:<19.12g} {'-':<19} -")
        else:
            p(f"{name:<20} {value:<19.12g} {ref:<19.12g} {value - ref:+.3e}")

    builtin = inst.fiducial.source in ("hesse", "builtin-d2")
    ref_or_none = lambda key: pub.get(key) if builtin else None
    row("L (local bound)", inst.L, ref_or_none("L"))
    row("Q (quantum bound)", inst.qtilde, ref_or_none("Q"))
    row("critical visibility", inst.visibility, ref_or_none("visibility"))
    norms = T.squared_norms()
    for n in T.powers:
        p(f"||F_{n}||^2 = {norms[n]:.12g}   ||F_{n}|| = {np.sqrt(norms[n]):.12g}")
    p(f"local bound is {'exact' if inst.exact_L else 'a heuristic lower bound'}")
    p(f"optimal strategy: alice={inst.strategy.alice} bob={inst.strategy.bob}")
    p("")
    p("F_1 (rows x = 1..d^2-1, columns y = 0..d^2-1):")
    p(_table(T.F[1]))
    golden = {2: reference.F1_QUBIT, 3: reference.F1_QUTRIT}.get(d) if builtin else None
    if golden is not None:
        p(f"max |F_1 - reference F_1| = {np.abs(T.F[1] - golden).max():.3e}")
    if d == 2 and builtin:
        ebi = np.sqrt(3) * T.F[1][:, ::-1]
        p("")
        p("Correspondence with Gisin's elegant Bell inequality:")
        p("  sqrt(3) * F_1 with Bob's settings relabelled y -> 3 - y gives the EBI signs")
        p(_table(ebi))
        p(f"  hence L = 6 / sqrt(3) = {6 / np.sqrt(3):.6f}, Q = 4 sqrt(3) / sqrt(3) = 4")
    if d == 3:
        p("")
        p(f"seed matches the closed functional form: {inequality.functional_form_check(T)}")
    p("")
    results, cert = run_checks(inst)
    p("Certificate and structure checks:")
    for name, (ok, detail) in results.items():
        det = ", ".join(f"{k}={v:.3e}" for k, v in detail.items())
        p(f"  [{'PASS' if ok else 'FAIL'}] {name:<11} {det}")
    if d == 3 and inst.fiducial.source == "hesse":
        p("")
        p("SIC_2 (eigenvalue w^2 eigenvectors of B_y; printed column order):")
        orbit = bob_eigen_orbit(inst.realization, 2)
        order = [reference.sic_column_label(j) for j in range(9)]
        fixed = orbit[:, order]
        for j in range(9):
            k = np.argmax(np.abs(reference.SIC2[:, j]))
            fixed[:, j] *= np.exp(1j * (np.angle(reference.SIC2[k, j]) - np.angle(fixed[k, j])))
        p(_table(fixed))
        p("MUB_1..MUB_4 (eigenbases of A_1, A_3, A_4, A_5):")
        for M in sic_states.mub_family(3):
            p(_table(M))
            p("")
    return buf.getvalue()
