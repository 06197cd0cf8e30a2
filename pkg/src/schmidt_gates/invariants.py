"""Local invariants and entangling-power classification of two-qubit gates.

The invariants (G1, G2) are computed in the Bell (magic) basis; they are
unchanged under single-qubit rotations before and after the gate. A gate
is a perfect entangler (PE) when |G1| <= 1/4 and -1 <= G2 <= 1, and a
special perfect entangler (SPE) when additionally G1 = 0; both conditions
are applied with a configurable tolerance.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .linalg import ATOL_PIPELINE, require_unitary

CLASSIFY_TOL = 1e-9

_G2_IMAG_TOL = 1e-10

_SQRT2 = np.sqrt(2.0)

_BELL = np.array([
    [1, 0, 0, 1j],
    [0, 1j, 1, 0],
    [0, 1j, -1, 0],
    [1, 0, 0, -1j],
], dtype=np.complex128) / _SQRT2


def bell_transform() -> np.ndarray:
    """Unitary sending the computational basis to the Bell (magic) basis:
    (|00>+|11>)/sqrt2, i(|01>+|10>)/sqrt2, (|01>-|10>)/sqrt2, i(|00>-|11>)/sqrt2.
    """
    return _BELL.copy()


@dataclass(frozen=True)
class LocalInvariants:
    """Pair of local invariants; g1 is complex, g2 real for unitary input."""

    g1: complex
    g2: float


def makhlin_invariants(u: np.ndarray,
                       atol: float = ATOL_PIPELINE) -> LocalInvariants:
    """Local invariants of a two-qubit gate.

    With m = (Q^dag U Q)^T (Q^dag U Q) in the Bell basis:
    G1 = tr(m)^2 / (16 det U), G2 = (tr(m)^2 - tr(m^2)) / (4 det U).
    |det U| is renormalized to one before dividing so near-unitary input
    noise is not amplified. `atol` bounds how far from unitary the input
    may be; the imaginary part of G2 (identically zero for exact unitaries)
    is checked against the same scale.
    """
    u = np.asarray(u, dtype=np.complex128)
    require_unitary(u, tol=atol)
    det = np.linalg.det(u)
    det = det / abs(det)
    mb = _BELL.conj().T @ u @ _BELL
    m = mb.T @ mb
    tr = np.trace(m)
    tr2 = np.trace(m @ m)
    g1 = tr * tr / (16.0 * det)
    g2 = (tr * tr - tr2) / (4.0 * det)
    if abs(g2.imag) > max(_G2_IMAG_TOL, atol):
        raise ValueError(f"G2 has imaginary part {g2.imag:.3e}; "
                         "input is too far from unitary")
    return LocalInvariants(g1=complex(g1), g2=float(g2.real))


def closed_form_invariants(alpha0: float, omega: float) -> LocalInvariants:
    """Invariants of the geometric gate at anchor alpha0 with solid angle
    omega, independent of beta0:
    G1 = [4 - 2 sin^2(alpha0) (1 - cos omega)]^2 / 16,
    G2 = 3 - 2 sin^2(alpha0) (1 - cos omega).
    """
    shared = 2.0 * np.sin(alpha0) ** 2 * (1.0 - np.cos(omega))
    g1 = (4.0 - shared) ** 2 / 16.0
    g2 = 3.0 - shared
    return LocalInvariants(g1=complex(g1), g2=float(g2))


class EntanglerClass(enum.Enum):
    NOT_PE = "NOT_PE"
    PE = "PE"
    SPE = "SPE"


def classify(inv: LocalInvariants, tol: float = CLASSIFY_TOL) -> EntanglerClass:
    """Classify a gate by its local invariants (SPE implies PE)."""
    if not tol >= 0:
        raise ValueError("tolerance must be non-negative")
    is_pe = (abs(inv.g1) <= 0.25 + tol) and (-1.0 - tol <= inv.g2 <= 1.0 + tol)
    if not is_pe:
        return EntanglerClass.NOT_PE
    if abs(inv.g1) <= tol:
        return EntanglerClass.SPE
    return EntanglerClass.PE
