"""Weyl-Heisenberg operators for a qutrit: commutation, orthogonality and traceless expansions."""

import numpy as np

from ebi_forge import alice_observable, expand_traceless, weyl_operator
from ebi_forge.wh_algebra import reconstruct

d = 3
W = np.array([weyl_operator(d, j) for j in range(d * d)])

# Hilbert-Schmidt Gram matrix of the nine operators is d * identity
gram = np.einsum("aij,bij->ab", W.conj(), W)
print("max |<W_a, W_b> - d delta_ab| =", np.abs(gram - d * np.eye(d * d)).max())

# Alice's observables have spectrum {1, w, w^2}
print("A_4 eigenvalue phases / (2 pi / 3):",
      np.sort(np.round(np.angle(np.linalg.eigvals(alice_observable(d, 4))) / (2 * np.pi / 3)) % 3))

# any traceless matrix expands in the powers of A_x
rng = np.random.default_rng(1)
M = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
M -= np.trace(M) / d * np.eye(d)
c = expand_traceless(M, d, 1)
print("expansion coefficients:", np.round(c, 4))
print("reconstruction error:", np.abs(reconstruct(c, d, 1) - M).max())
