"""Construction of geometric two-qubit gates as explicit 4x4 matrices.

A gate anchored at Schmidt coordinates (alpha0, beta0) with loop solid
angle omega acts as identity on its invariant product pair and multiplies
the entangled pair by exp(-+ i omega / 2). The gamma sector entangles
span{|01>, |10>}, the lambda sector span{|00>, |11>} (standard frame).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import tensor_product
from .sphere import _check_frame, _perp_a, _perp_b, assemble_state


def frame_unitaries(frame) -> tuple[np.ndarray, np.ndarray]:
    """Local unitaries (A, B) carrying the standard frame to `frame`.

    A maps (|0>, |1>) to (|n>, |-n>); B maps (|0>, |1>) to (|-m>, |m>).
    With frame = (|0>, |1>) both are the identity.
    """
    n_state, m_state = _check_frame(frame)
    a = np.column_stack([n_state, _perp_a(n_state)])
    b = np.column_stack([_perp_b(m_state), m_state])
    return a, b


def _standard_gate(alpha0: float, beta0: float, omega: float,
                   entangled_pair: str) -> np.ndarray:
    plus = assemble_state(alpha0, beta0, entangled_pair + "+")
    minus = assemble_state(alpha0, beta0, entangled_pair + "-")
    u = np.outer(plus, plus.conj()) * np.exp(-0.5j * omega)
    u += np.outer(minus, minus.conj()) * np.exp(+0.5j * omega)
    if entangled_pair == "gamma":
        idx = (0, 3)  # |00>, |11> untouched
    else:
        idx = (1, 2)  # |01>, |10> untouched
    for k in idx:
        u[k, k] += 1.0
    return u


def _in_frame(u: np.ndarray, frame) -> np.ndarray:
    if frame is None:
        return u
    a, b = frame_unitaries(frame)
    local = tensor_product(a, b)
    return local @ u @ local.conj().T


def schmidt_gate(alpha0: float, beta0: float, omega: float,
                 frame=None) -> np.ndarray:
    """Geometric gate of the gamma sector.

    Identity on |n,-m> and |-n,m>; phases exp(-+ i omega/2) on the
    entangled pair anchored at (alpha0, beta0). The arbitrary-frame gate is
    the standard-frame gate conjugated by the frame's local unitaries.
    """
    return _in_frame(_standard_gate(alpha0, beta0, omega, "gamma"), frame)


def lambda_gate(alpha0: float, beta0: float, omega: float,
                frame=None) -> np.ndarray:
    """Geometric gate of the lambda sector (couples |00> and |11>)."""
    return _in_frame(_standard_gate(alpha0, beta0, omega, "lambda"), frame)


def u_general(omega: float) -> np.ndarray:
    """Gamma-sector gate at (alpha0, beta0) = (pi/2, pi/2): a real rotation
    by omega/2 in the {|01>, |10>} plane. omega = -pi gives the iSWAP-type
    gate with rows (1,0,0,0), (0,0,1,0), (0,-1,0,0), (0,0,0,1).
    """
    c = np.cos(0.5 * omega)
    s = np.sin(0.5 * omega)
    return np.array([
        [1, 0, 0, 0],
        [0, c, -s, 0],
        [0, s, c, 0],
        [0, 0, 0, 1],
    ], dtype=np.complex128)


@dataclass(frozen=True)
class GeometricGateSpec:
    """Declarative description of a geometric gate."""

    alpha0: float
    beta0: float
    omega: float
    sector: str = "gamma"
    frame: tuple | None = None

    def __post_init__(self):
        if self.sector not in ("gamma", "lambda"):
            raise ValueError(f"unknown sector {self.sector!r}")

    def matrix(self) -> np.ndarray:
        build = schmidt_gate if self.sector == "gamma" else lambda_gate
        return build(self.alpha0, self.beta0, self.omega, frame=self.frame)
