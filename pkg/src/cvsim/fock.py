"""Truncated bosonic operators and the Fock <-> bit encoding.

A qumode keeps its first ``2**k`` Fock levels, where ``k`` is the number of
wires backing the mode.  Fock numbers are binary encoded across those wires
with the mode's first wire as the least-significant bit, matching the global
little-endian wire order.

Truncation policy: the creation operator annihilates the top Fock state (the
matrix simply has no row to raise into).  No renormalization and no error; the
resulting commutator defect at the top level is user-visible and tested.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import FockOutOfRangeError, ValidationError

DEFAULT_MAX_QUBITS_PER_MODE = 12


@dataclass(frozen=True)
class FockSpace:
    """Truncated single-mode Fock space with cutoff ``2**qubits_per_mode``."""

    qubits_per_mode: int
    max_qubits_per_mode: int = DEFAULT_MAX_QUBITS_PER_MODE

    def __post_init__(self) -> None:
        k = self.qubits_per_mode
        if not 1 <= k <= self.max_qubits_per_mode:
            raise ValidationError(
                f"qubits_per_mode must be in 1..{self.max_qubits_per_mode}, got {k}"
            )

    @property
    def cutoff(self) -> int:
        return 2**self.qubits_per_mode


def annihilation(space: FockSpace) -> np.ndarray:
    """Annihilation operator ``a``: sqrt(n+1) on the first superdiagonal."""
    cutoff = space.cutoff
    a = np.zeros((cutoff, cutoff), dtype=complex)
    ns = np.arange(1, cutoff)
    a[ns - 1, ns] = np.sqrt(ns)
    return a


def creation(space: FockSpace) -> np.ndarray:
    """Creation operator ``a^dag``, the conjugate transpose of ``a``."""
    return annihilation(space).conj().T


def number(space: FockSpace) -> np.ndarray:
    """Number operator ``diag(0, 1, ..., cutoff-1)``."""
    return np.diag(np.arange(space.cutoff, dtype=float)).astype(complex)


def fock_encode(n: int, k: int) -> tuple[int, ...]:
    """k-bit binary expansion of a Fock number, least-significant bit first."""
    if not 0 <= n < 2**k:
        raise FockOutOfRangeError(f"Fock number {n} does not fit in {k} wires")
    return tuple((n >> j) & 1 for j in range(k))


def fock_decode(bits: tuple[int, ...] | list[int]) -> int:
    """Inverse of :func:`fock_encode`."""
    return sum((int(b) & 1) << j for j, b in enumerate(bits))


def fock_basis_vector(n: int, cutoff: int) -> np.ndarray:
    """Basis vector |n> in a cutoff-dimensional mode."""
    if not 0 <= n < cutoff:
        raise FockOutOfRangeError(f"Fock number {n} outside cutoff {cutoff}")
    v = np.zeros(cutoff, dtype=complex)
    v[n] = 1.0
    return v
