"""Wigner quasiprobability functions on phase-space grids.

Quadrature convention: ``x = (a + a^dag)/sqrt(2)``, ``p = i(a^dag - a)/sqrt(2)``,
so the vacuum has variance 1/2 along both quadratures, ``W_vac(0,0) = 1/pi``,
and a coherent state ``alpha`` peaks at ``(x, p) = (sqrt(2) Re alpha,
sqrt(2) Im alpha)``.  ``W`` is normalized to integrate to 1 over the plane.

The computation uses the closed-form Fock-basis kernel: with
``alpha = (x + i p)/sqrt(2)`` and ``z = 4|alpha|^2``, the Wigner transform of
``|m><n|`` for ``m >= n`` is

    (1/pi) (-1)^n sqrt(n!/m!) (2 conj(alpha))^(m-n) e^(-z/2) L_n^(m-n)(z)

with generalized Laguerre polynomials ``L``; the ``m < n`` case is its complex
conjugate with indices swapped.  The defining integral transform is kept in
the test suite as an independent oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.special import eval_genlaguerre, gammaln

from . import linalg
from .engine import DensityMatrix, StateVector, evolve, reduce_to_qumode
from .circuit import Circuit, CustomGate, Gate, Initialize, gate_generator, gate_wires
from .errors import (
    EmptyInputError,
    LayoutMismatchError,
    MeasurementInAnimationError,
    NonHermitianInputError,
    NotAQumodeDensityMatrixError,
    ValidationError,
)
from .fock import FockSpace

IMAG_RESIDUE_TOL = 1e-10
ENTRY_SKIP_TOL = 1e-14


@dataclass(frozen=True)
class PhaseSpaceGrid:
    """Uniform rectangular grid over dimensionless (x, p) quadratures."""

    x_min: float
    x_max: float
    p_min: float
    p_max: float
    num_points: int

    def __post_init__(self) -> None:
        if not (self.x_max > self.x_min and self.p_max > self.p_min):
            raise ValidationError("grid max must exceed min on both axes")
        if self.num_points < 2:
            raise ValidationError("grid needs at least 2 points per axis")

    @property
    def x(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.num_points)

    @property
    def p(self) -> np.ndarray:
        return np.linspace(self.p_min, self.p_max, self.num_points)

    @classmethod
    def square(cls, half_width: float = 6.0, num_points: int = 200) -> "PhaseSpaceGrid":
        return cls(-half_width, half_width, -half_width, half_width, num_points)


@dataclass
class WignerGrid:
    """Sampled W(x_i, p_j); ``values[i, j]`` pairs x index i with p index j."""

    grid: PhaseSpaceGrid
    values: np.ndarray

    def riemann_sum(self) -> float:
        dx = (self.grid.x_max - self.grid.x_min) / (self.grid.num_points - 1)
        dp = (self.grid.p_max - self.grid.p_min) / (self.grid.num_points - 1)
        return float(self.values.sum() * dx * dp)

    def value_at(self, x: float, p: float) -> float:
        """Value at the grid point nearest (x, p)."""
        i = int(np.argmin(np.abs(self.grid.x - x)))
        j = int(np.argmin(np.abs(self.grid.p - p)))
        return float(self.values[i, j])


def wigner_fock_element(m: int, n: int, grid: PhaseSpaceGrid) -> np.ndarray:
    """Wigner transform of ``|m><n|`` on the grid (complex for m != n)."""
    if m < 0 or n < 0:
        raise ValidationError("Fock indices must be >= 0")
    if m < n:
        return wigner_fock_element(n, m, grid).conj()
    x = grid.x[:, None]
    p = grid.p[None, :]
    alpha = (x + 1j * p) / np.sqrt(2)
    z = 4.0 * np.abs(alpha) ** 2
    ratio = np.exp(0.5 * (gammaln(n + 1) - gammaln(m + 1)))
    kernel = (
        (1.0 / np.pi)
        * (-1.0) ** n
        * ratio
        * (2.0 * alpha.conj()) ** (m - n)
        * np.exp(-z / 2.0)
        * eval_genlaguerre(n, m - n, z)
    )
    return kernel


def _as_qumode_rho(rho: DensityMatrix | np.ndarray) -> np.ndarray:
    if isinstance(rho, DensityMatrix):
        if not rho.is_single_qumode():
            raise NotAQumodeDensityMatrixError(
                f"expected a single-qumode reduction, got subsystem {rho.subsystem}"
            )
        mat = rho.entries
    else:
        mat = np.asarray(rho, dtype=complex)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise NotAQumodeDensityMatrixError(
                f"density matrix must be square, got shape {mat.shape}"
            )
    if not linalg.is_hermitian(mat, 1e-10):
        raise NonHermitianInputError("density matrix is not Hermitian within 1e-10")
    return mat


def wigner(rho: DensityMatrix | np.ndarray, grid: PhaseSpaceGrid) -> WignerGrid:
    """Wigner function of a single-qumode density matrix.

    Sums the Fock-basis kernel against the matrix entries, skipping entries
    below numerical noise; the imaginary residue must stay below 1e-10 and is
    discarded after the check.
    """
    mat = _as_qumode_rho(rho)
    cutoff = mat.shape[0]
    scale = max(np.abs(mat).max(), 1.0)
    w = np.zeros((grid.num_points, grid.num_points), dtype=complex)
    for m in range(cutoff):
        for n in range(cutoff):
            entry = mat[m, n]
            if abs(entry) <= ENTRY_SKIP_TOL * scale:
                continue
            w += entry * wigner_fock_element(m, n, grid)
    residue = float(np.abs(w.imag).max()) if w.size else 0.0
    if residue > IMAG_RESIDUE_TOL:
        raise NonHermitianInputError(
            f"imaginary residue {residue:.3e} exceeds {IMAG_RESIDUE_TOL:g}"
        )
    return WignerGrid(grid, np.ascontiguousarray(w.real))


def wigner_mle(
    states: Sequence[StateVector], qumode: int, grid: PhaseSpaceGrid
) -> WignerGrid:
    """Wigner function of the per-amplitude maximum-likelihood estimate over
    repeated statevectors.

    Under an independent normal model per amplitude component the MLE is the
    sample mean (real and imaginary parts separately).  Each statevector is
    first phase-aligned (its largest-magnitude component made real positive)
    so that a fluctuating global phase does not cancel the average; the mean
    is renormalized, reduced to the qumode, and passed to :func:`wigner`.
    """
    if len(states) == 0:
        raise EmptyInputError("wigner_mle needs at least one statevector")
    layout = states[0].layout
    for s in states[1:]:
        if s.layout != layout:
            raise LayoutMismatchError("statevectors have different layouts")
    aligned = []
    for s in states:
        amps = s.amplitudes
        j = int(np.argmax(np.abs(amps)))
        ref = amps[j]
        phase = ref / abs(ref) if abs(ref) > 0 else 1.0
        aligned.append(amps * np.conj(phase))
    mean = np.mean(aligned, axis=0)
    norm = np.linalg.norm(mean)
    if norm == 0.0:
        raise EmptyInputError("mean statevector has zero norm")
    state = StateVector(mean / norm, layout)
    return wigner(reduce_to_qumode(state, qumode), grid)


def _fractional_unitaries(matrix: np.ndarray, is_generator: bool, frames: int) -> list[np.ndarray]:
    """Unitaries for fractions j/frames of one gate, j = 1..frames."""
    if is_generator:
        h = (matrix / 1j + (matrix / 1j).conj().T) / 2
        lam, v = np.linalg.eigh(h)
        return [
            (v * np.exp(1j * (j / frames) * lam)) @ v.conj().T
            for j in range(1, frames + 1)
        ]
    # unitary input: fractional powers through its Schur (diagonal) form
    import scipy.linalg

    t, q = scipy.linalg.schur(matrix, output="complex")
    lam = np.diag(t)
    return [
        (q * lam ** (j / frames)) @ q.conj().T for j in range(1, frames + 1)
    ]


def animate_frames(
    circuit: Circuit,
    space: FockSpace | None = None,
    qumode: int = 0,
    frames_per_gate: int = 1,
    grid: PhaseSpaceGrid | None = None,
) -> list[WignerGrid]:
    """Wigner frames of the circuit applied gate by gate.

    Emits the initial frame, then ``frames_per_gate`` frames per gate obtained
    by applying ``exp((j/F) G)`` of the gate's generator on top of all earlier
    complete gates; measurements are not supported.
    """
    if frames_per_gate < 1:
        raise ValidationError("frames_per_gate must be >= 1")
    if circuit.has_measurement():
        raise MeasurementInAnimationError("animation does not support measurement")
    space = space or circuit.space
    grid = grid or PhaseSpaceGrid.square()
    prep = Circuit(circuit.qumodes, circuit.qubits, circuit.cbits)
    for instr in circuit.instructions:
        if isinstance(instr, Initialize):
            if instr.fock is not None:
                prep.initialize(instr.qumode, instr.fock)
            else:
                prep.initialize(instr.qumode, list(instr.amplitudes))
    state = evolve(prep, space=space)
    frames = [wigner(reduce_to_qumode(state, qumode), grid)]

    n = state.layout.total_wires
    for instr in circuit.instructions:
        if isinstance(instr, Initialize):
            continue
        if isinstance(instr, Gate):
            gen = gate_generator(instr.spec, space)
            wires = gate_wires(
                instr.spec.targets, instr.spec.controls,
                circuit.qubits_per_mode, circuit.num_qumodes,
            )
            fractions = _fractional_unitaries(gen, True, frames_per_gate)
        elif isinstance(instr, CustomGate):
            wires = gate_wires(
                instr.qumodes, instr.qubits,
                circuit.qubits_per_mode, circuit.num_qumodes,
            )
            fractions = _fractional_unitaries(
                np.asarray(instr.matrix, dtype=complex), instr.is_generator,
                frames_per_gate,
            )
        else:  # pragma: no cover - has_measurement() pre-check
            raise MeasurementInAnimationError("animation does not support measurement")
        for u in fractions:
            amps = linalg.apply_on_wires(state.amplitudes, u, wires, n)
            partial = StateVector(amps, state.layout)
            frames.append(wigner(reduce_to_qumode(partial, qumode), grid))
        state = StateVector(
            linalg.apply_on_wires(state.amplitudes, fractions[-1], wires, n),
            state.layout,
        )
    return frames


# --- serialization -----------------------------------------------------------


def write_wigner_csv(wgrid: WignerGrid, path) -> None:
    """CSV with header ``x,p,w``, one row per grid point, x varying slowest,
    9 significant digits."""
    x, p = wgrid.grid.x, wgrid.grid.p
    with open(path, "w") as fh:
        fh.write("x,p,w\n")
        for i in range(wgrid.grid.num_points):
            for j in range(wgrid.grid.num_points):
                fh.write(f"{x[i]:.9g},{p[j]:.9g},{wgrid.values[i, j]:.9g}\n")


def read_wigner_csv(path) -> WignerGrid:
    """Inverse of :func:`write_wigner_csv` (grid re-derived from the rows)."""
    data = np.loadtxt(path, delimiter=",", skiprows=1)
    xs = np.unique(data[:, 0])
    ps = np.unique(data[:, 1])
    if len(xs) != len(ps) or len(xs) * len(ps) != data.shape[0]:
        raise ValidationError("malformed Wigner CSV")
    grid = PhaseSpaceGrid(xs[0], xs[-1], ps[0], ps[-1], len(xs))
    values = data[:, 2].reshape(len(xs), len(ps))
    return WignerGrid(grid, values)


def write_wigner_image(wgrid: WignerGrid, path) -> None:
    """Minimal heatmap: symmetric diverging scale centered at 0, red positive,
    blue negative."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    vmax = max(float(np.abs(wgrid.values).max()), 1e-12)
    fig, ax = plt.subplots(figsize=(5, 4))
    im = ax.imshow(
        wgrid.values.T,
        origin="lower",
        extent=[wgrid.grid.x_min, wgrid.grid.x_max, wgrid.grid.p_min, wgrid.grid.p_max],
        cmap="RdBu_r",
        vmin=-vmax,
        vmax=vmax,
        aspect="auto",
    )
    ax.set_xlabel("x")
    ax.set_ylabel("p")
    fig.colorbar(im, ax=ax, label="W(x,p)")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
