"""End-to-end construction of a Bell inequality from a fiducial."""

from dataclasses import dataclass

import numpy as np

from . import bounds, inequality, sic_states
from .errors import DimensionError
from .wh_algebra import check_dim


@dataclass(frozen=True)
class BellInstance:
    d: int
    fiducial: sic_states.Fiducial
    frame: sic_states.EigenFrame
    B0: np.ndarray
    realization: sic_states.Realization
    tensor: inequality.CoefficientTensor
    gtensor: inequality.GTensor
    L: float
    qtilde: float
    visibility: float
    strategy: bounds.DeterministicStrategy
    exact_L: bool = True


def build_instance(d, selector="default", theta=None, fiducial=None, parallel=False, restarts=100):
    """Build tensor, g-weights, both bounds and the critical visibility.

    For ``d > 3`` the local bound comes from the seeded heuristic and is only
    a lower bound on L (``exact_L=False``).
    """
    d = check_dim(d)
    if fiducial is None:
        fiducial = sic_states.builtin_fiducial(d, selector, theta)
    elif fiducial.d != d:
        raise DimensionError(f"fiducial has d={fiducial.d}, requested d={d}")
    frame = sic_states.complete_frame(fiducial)
    B0 = sic_states.bob_reference(frame)
    R = sic_states.optimal_realization(fiducial)
    T = inequality.build_tensor(B0, d)
    G = inequality.g_tensor(T)
    Q = bounds.quantum_bound(T)
    if d <= bounds.MAX_EXACT_DIM:
        L, strat = bounds.lhv_bound(G, parallel=parallel)
        exact = True
    else:
        L, strat = bounds.lhv_heuristic(G, restarts=restarts)
        exact = False
    nu = bounds.critical_visibility(L, Q)
    return BellInstance(d, fiducial, frame, B0, R, T, G, L, Q, nu, strat, exact)
