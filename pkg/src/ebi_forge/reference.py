"""Reference values and tables for the qubit and qutrit inequalities.

Used by the reproduction report and the golden-data tests.  Tables are
transcribed as printed; SIC columns are listed in the printed column order.
"""

import numpy as np

W3 = np.exp(2j * np.pi / 3)
LAM = -1j / np.sqrt(3)
MU = W3 * LAM
NU = W3**2 * LAM

F1_QUBIT = np.array(
    [[-1, -1, 1, 1], [-1, 1, -1, 1], [1, -1, -1, 1]], dtype=complex
) / np.sqrt(3)

SEED_QUBIT = np.array([-1, -1, 1]) / np.sqrt(3)

_w, _w2 = W3, W3**2
F1_QUTRIT = 0.5 * np.array(
    [
        [1, 1, 1, _w2, _w2, _w2, _w, _w, _w],
        [1, 1, 1, _w, _w, _w, _w2, _w2, _w2],
        [LAM, NU, MU, LAM, NU, MU, LAM, NU, MU],
        [NU, MU, LAM, MU, LAM, NU, LAM, NU, MU],
        [MU, LAM, NU, NU, MU, LAM, LAM, NU, MU],
        [LAM, MU, NU, LAM, MU, NU, LAM, MU, NU],
        [MU, NU, LAM, LAM, MU, NU, NU, LAM, MU],
        [NU, LAM, MU, LAM, MU, NU, MU, NU, LAM],
    ]
)

SEED_QUTRIT = 0.5 * np.array([1, 1, LAM, NU, MU, LAM, MU, NU])

B0_QUTRIT = np.array(
    [[1, 0, 0], [0, -0.5, 1j * np.sqrt(3) / 2], [0, 1j * np.sqrt(3) / 2, -0.5]]
)

SIC1 = np.array(
    [
        [0, 1, 1, 0, _w2, _w, 0, _w, _w2],
        [1, 0, 1, _w, 0, _w2, _w2, 0, _w],
        [1, 1, 0, _w2, _w, 0, _w, _w2, 0],
    ]
) / np.sqrt(2)

SIC2 = np.array(
    [
        [0, -1, 1, 0, -_w2, _w, 0, -_w, _w2],
        [1, 0, -1, _w, 0, -_w2, _w2, 0, -_w],
        [-1, 1, 0, -_w2, _w, 0, -_w, _w2, 0],
    ]
) / np.sqrt(2)

MUB = [
    np.eye(3, dtype=complex),
    np.array([[1, _w2, _w], [1, _w, _w2], [1, 1, 1]]) / np.sqrt(3),
    np.array([[_w2, _w, 1], [_w2, 1, _w], [1, 1, 1]]) / np.sqrt(3),
    np.array([[_w, 1, _w2], [_w, _w2, 1], [1, 1, 1]]) / np.sqrt(3),
]
# Alice settings whose eigenbases give MUB_1..MUB_4, and their squared partners
MUB_SETTINGS = (1, 3, 4, 5)
MUB_PARTNERS = (2, 6, 8, 7)

# deterministic optimum for the qutrit inequality: Alice always outputs 0
QUTRIT_STRATEGY_BOB = (0, 0, 0, 1, 2, 2, 1, 2, 2)

REFERENCE_VALUES = {
    2: {"L": 2 * np.sqrt(3), "Q": 4.0, "visibility": 0.866, "F_norm": 2.0},
    3: {"L": 15.0, "Q": 18.0, "visibility": 0.8333, "F_norm_sq": 9.0},
}


def sic_column_label(j, d=3):
    """Printed SIC column j holds ``X^(j mod d) Z^(j div d) |phi>``, i.e. WH label
    ``d*(j mod d) + j div d``."""
    return d * (j % d) + j // d
