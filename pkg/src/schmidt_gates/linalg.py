"""Small dense linear-algebra kernels shared by the whole package.

Everything operates on explicit numpy arrays in the computational product
basis |00>, |01>, |10>, |11> (row-major, qubit a first). Two tolerance
levels are used throughout: ATOL_ALGEBRAIC for identities that hold to
rounding error, ATOL_PIPELINE for quantities assembled from several
numerical stages.
"""

from __future__ import annotations

import numpy as np

ATOL_ALGEBRAIC = 1e-12
ATOL_PIPELINE = 1e-10

I2 = np.eye(2, dtype=np.complex128)

PAULI_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)


def tensor_product(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product with qubit a as the slow (leftmost) index."""
    return np.kron(np.asarray(a, dtype=np.complex128),
                   np.asarray(b, dtype=np.complex128))


def hermiticity_defect(h: np.ndarray) -> float:
    h = np.asarray(h)
    return float(np.max(np.abs(h - h.conj().T)))


def unitarity_defect(u: np.ndarray) -> float:
    u = np.asarray(u)
    return float(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))))


def require_hermitian(h: np.ndarray, tol: float = ATOL_ALGEBRAIC) -> None:
    defect = hermiticity_defect(h)
    if defect > tol:
        raise ValueError(f"matrix is not Hermitian (max deviation {defect:.3e})")


def require_unitary(u: np.ndarray, tol: float = ATOL_PIPELINE) -> None:
    defect = unitarity_defect(u)
    if defect > tol:
        raise ValueError(f"matrix is not unitary (max deviation {defect:.3e})")


def _exp2(h: np.ndarray, t: float) -> np.ndarray:
    """exp(-i h t) for a Hermitian 2x2 block, in closed form.

    Writes h = c*I + v.sigma and uses the exact two-level formula; the
    v -> 0 limit is handled through sinc, so constant blocks are exact too.
    """
    c = 0.5 * (h[0, 0] + h[1, 1]).real
    vz = 0.5 * (h[0, 0] - h[1, 1]).real
    vx = h[0, 1].real
    vy = -h[0, 1].imag
    w = np.sqrt(vx * vx + vy * vy + vz * vz)
    cos = np.cos(w * t)
    # sin(w t) / w, finite at w = 0
    snc = t * np.sinc(w * t / np.pi)
    phase = np.exp(-1j * c * t)
    return phase * np.array(
        [[cos - 1j * snc * vz, -1j * snc * (vx - 1j * vy)],
         [-1j * snc * (vx + 1j * vy), cos + 1j * snc * vz]],
        dtype=np.complex128,
    )


def _pair_block_decoupled(h: np.ndarray) -> bool:
    """True when the {|00>,|11>} and {|01>,|10>} pairs do not mix."""
    off = (abs(h[0, 1]) + abs(h[0, 2]) + abs(h[3, 1]) + abs(h[3, 2])
           + abs(h[1, 0]) + abs(h[2, 0]) + abs(h[1, 3]) + abs(h[2, 3]))
    return off == 0.0


_OUTER = np.ix_([0, 3], [0, 3])
_INNER = np.ix_([1, 2], [1, 2])


def herm_exp(h: np.ndarray, t: float) -> np.ndarray:
    """Propagator exp(-i h t) of a Hermitian generator h.

    The two-level pair structure shared by every Hamiltonian in this
    package (the {|01>,|10>} exchange block and the {|00>,|11>} block
    evolving independently) is detected and exponentiated in closed form;
    anything else falls back to an eigendecomposition.
    """
    h = np.asarray(h, dtype=np.complex128)
    require_hermitian(h)
    if h.shape == (2, 2):
        return _exp2(h, t)
    if h.shape == (4, 4) and _pair_block_decoupled(h):
        u = np.zeros((4, 4), dtype=np.complex128)
        u[_OUTER] = _exp2(h[_OUTER], t)
        u[_INNER] = _exp2(h[_INNER], t)
        return u
    w, v = np.linalg.eigh(h)
    return (v * np.exp(-1j * w * t)) @ v.conj().T


def gate_fidelity(u: np.ndarray, v: np.ndarray) -> float:
    """|Tr(U^dag V)| / dim, insensitive to global phase on either gate."""
    u = np.asarray(u)
    v = np.asarray(v)
    return float(abs(np.trace(u.conj().T @ v)) / u.shape[0])


def phase_aligned_distance(u: np.ndarray, v: np.ndarray) -> float:
    """min over phi of ||u - exp(i phi) v||_F / sqrt(dim).

    Equals sqrt(2 (1 - gate_fidelity)); unlike the trace infidelity it is
    linear, not quadratic, in a small traceless defect between the gates.
    """
    return float(np.sqrt(max(0.0, 2.0 * (1.0 - gate_fidelity(u, v)))))
