"""SIC orbit of the Hesse fiducial and the four qutrit MUBs."""

import numpy as np

from ebi_forge import builtin_fiducial, mub_family, sic_orbit, validate_sic

fid = builtin_fiducial(3, "hesse")
print("fiducial:", np.round(fid.amplitudes, 4))
rep = validate_sic(fid.amplitudes, 3)
print("|<phi|W_y|phi>|^2:", np.round(rep.overlaps, 6), "passed:", rep.passed)

orbit = sic_orbit(fid)
gram = np.abs(orbit.conj().T @ orbit) ** 2
print("distinct pairwise overlaps:", np.unique(np.round(gram, 10)))

mubs = mub_family(3)
for i in range(len(mubs)):
    for j in range(i + 1, len(mubs)):
        ov = np.abs(mubs[i].conj().T @ mubs[j]) ** 2
        print(f"MUB_{i + 1} vs MUB_{j + 1}: max |overlap^2 - 1/3| = {np.abs(ov - 1 / 3).max():.2e}")
