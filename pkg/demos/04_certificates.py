"""Sum-of-squares certificate and the isotropic-state threshold."""

import numpy as np

from ebi_forge import bell_operator, build_instance, quantum_value, sos_certificate
from ebi_forge.bounds import isotropic_state

for d in (2, 3):
    inst = build_instance(d)
    rep = sos_certificate(inst.tensor, inst.realization)
    print(f"d={d}: certificate passed={rep.passed}")
    print(f"  identity residual {rep.sos_identity_residual:.2e}, min eigenvalue {rep.min_eigenvalue:.2e}")
    print(f"  worst saturation norm {max(rep.saturation_residuals.values()):.2e}")
    B = bell_operator(inst.tensor, inst.realization)
    for v in (inst.visibility - 1e-3, inst.visibility + 1e-3):
        val = quantum_value(inst.tensor, inst.realization, isotropic_state(d, v), operator=B)
        print(f"  visibility {v:.4f}: value {val:.5f} vs L {inst.L:.5f} -> violates: {val > inst.L}")
