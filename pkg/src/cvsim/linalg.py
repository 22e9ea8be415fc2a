"""Dense complex linear-algebra kernels.

Matrices and vectors are plain ``numpy.ndarray`` objects with ``complex128``
dtype and C (row-major) layout.  Wire indexing follows the global little-endian
contract: wire 0 is the least-significant bit of a basis index, so the operator
acting on the highest-numbered wire is the leftmost factor of a Kronecker
product (``numpy.kron`` puts its first argument on the most-significant block).
"""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np

from .errors import (
    DimensionMismatchError,
    DuplicateWireError,
    NonSkewHermitianError,
    WireOutOfRangeError,
)

DEFAULT_TOL = 1e-10


def _as_square(a: np.ndarray, what: str = "matrix") -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatchError(f"{what} must be square, got shape {a.shape}")
    return a


def matexp(g: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Exponential of a skew-Hermitian generator.

    Writes ``g = i*H`` with ``H`` Hermitian and returns
    ``exp(g) = V diag(e^{i*lam}) V^dag`` from the eigendecomposition of ``H``,
    which keeps the result unitary to eigensolver accuracy.

    Raises:
        NonSkewHermitianError: if ``||g + g^dag||_F > tol * ||g||_F``.
        DimensionMismatchError: for non-square input.
    """
    g = _as_square(g, "generator")
    norm = np.linalg.norm(g)
    if np.linalg.norm(g + g.conj().T) > tol * norm:
        raise NonSkewHermitianError(
            f"generator is not skew-Hermitian within tol={tol:g}"
        )
    if norm == 0.0:
        return np.eye(g.shape[0], dtype=complex)
    h = g / 1j
    h = (h + h.conj().T) / 2  # symmetrize rounding residue for eigh
    lam, v = np.linalg.eigh(h)
    return (v * np.exp(1j * lam)) @ v.conj().T


def is_unitary(u: np.ndarray, tol: float) -> bool:
    """True iff ``||u^dag u - I||_F <= tol``."""
    u = _as_square(u, "operator")
    eye = np.eye(u.shape[0], dtype=complex)
    return bool(np.linalg.norm(u.conj().T @ u - eye) <= tol)


def is_hermitian(a: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    """True iff ``||a - a^dag||_F <= tol * max(1, ||a||_F)``."""
    a = _as_square(a)
    return bool(np.linalg.norm(a - a.conj().T) <= tol * max(1.0, np.linalg.norm(a)))


def embed(op: np.ndarray, wires: Sequence[int], total_wires: int) -> np.ndarray:
    """Lift ``op`` acting on ``wires`` to the full ``2**total_wires`` space.

    ``wires`` lists the wires the operator acts on, least-significant local bit
    first: bit ``j`` of the operator's own basis index lives on ``wires[j]``.
    All other wires get the identity.
    """
    op = _as_square(op, "operator")
    wires = list(wires)
    m = len(wires)
    if op.shape[0] != 2**m:
        raise DimensionMismatchError(
            f"operator dim {op.shape[0]} != 2**{m} for {m} wires"
        )
    if len(set(wires)) != m:
        raise DuplicateWireError(f"duplicate wires in {wires}")
    for w in wires:
        if not 0 <= w < total_wires:
            raise WireOutOfRangeError(f"wire {w} outside 0..{total_wires - 1}")

    rest = [w for w in range(total_wires) if w not in wires]
    # kron(I_rest, op): bit j of the kron index sits on (wires + rest)[j]
    full = np.kron(np.eye(2 ** len(rest), dtype=complex), op)
    order = wires + rest
    dim = 2**total_wires
    src = np.arange(dim)
    dest = np.zeros(dim, dtype=np.int64)
    for j, w in enumerate(order):
        dest |= ((src >> j) & 1) << w
    out = np.zeros((dim, dim), dtype=complex)
    out[np.ix_(dest, dest)] = full
    return out


def apply_on_wires(
    state: np.ndarray, op: np.ndarray, wires: Sequence[int], total_wires: int
) -> np.ndarray:
    """Apply a local operator to a statevector without forming the full matrix.

    Same wire convention as :func:`embed`.  This is the performance path for
    gate application; it must agree with ``embed(op, wires, n) @ state``.
    """
    wires = list(wires)
    m = len(wires)
    n = total_wires
    if op.shape != (2**m, 2**m):
        raise DimensionMismatchError(
            f"operator shape {op.shape} != ({2**m}, {2**m}) for {m} wires"
        )
    psi = state.reshape([2] * n)  # axis a holds wire n-1-a (C order)
    gate = op.reshape([2] * (2 * m))
    in_axes = [n - 1 - w for w in reversed(wires)]
    out = np.tensordot(gate, psi, axes=(list(range(m, 2 * m)), in_axes))
    # tensordot leaves the gate's output axes first, ordered MSB..LSB
    out = np.moveaxis(out, list(range(m)), in_axes)
    return np.ascontiguousarray(out).reshape(-1)


def kron_factors_little_endian(factors: Sequence[np.ndarray]) -> np.ndarray:
    """Tensor product of per-subsystem vectors, ``factors[0]`` least significant."""
    out = np.asarray(factors[0], dtype=complex)
    for f in factors[1:]:
        out = np.kron(np.asarray(f, dtype=complex), out)
    return out


def frobenius_distance(a: np.ndarray, b: np.ndarray) -> float:
    """``||a - b||_F`` as a float."""
    return float(np.linalg.norm(np.asarray(a) - np.asarray(b)))
