"""Every member of the qutrit fiducial family gives Q = 18 but a different local bound."""

import numpy as np

from ebi_forge import build_instance, sos_certificate

for theta in np.linspace(0, 0.5, 6):
    inst = build_instance(3, "theta", float(theta))
    ok = sos_certificate(inst.tensor, inst.realization).passed
    print(f"theta={theta:.1f}  L={inst.L:.6f}  Q={inst.qtilde:.6f}  visibility={inst.visibility:.6f}  certificate={ok}")
