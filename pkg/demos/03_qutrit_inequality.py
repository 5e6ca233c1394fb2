"""Build the qutrit inequality and compute its local and quantum bounds."""

import numpy as np

from ebi_forge import build_instance

inst = build_instance(3, "hesse")
T = inst.tensor
print("seed column of F_1:")
print(np.round(T.seed(1), 4))
print("||F_n||^2:", T.squared_norms())
print(f"local bound L = {inst.L:.6f} (exact: {inst.exact_L})")
print(f"quantum bound Q = {inst.qtilde:.6f}")
print(f"critical visibility = {inst.visibility:.6f}")
print("an optimal deterministic strategy:", inst.strategy)

qubit = build_instance(2)
print(f"\nqubit case: L = {qubit.L:.6f} (2 sqrt 3 = {2 * np.sqrt(3):.6f}), Q = {qubit.qtilde:.6f}")
