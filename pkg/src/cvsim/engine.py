"""Statevector engine: gate application, measurement, shots, reductions.

Basis-index contract (little-endian): wire 0 is the least-significant bit.
Qumode ``m`` occupies wires ``m*k .. m*k+k-1`` (Fock number binary-encoded
LSB-first), qubit ``q`` sits at wire ``num_qumodes*k + q``.  A product state
with qumode Fock numbers ``n_m`` and qubit bits ``b_q`` therefore lives at
index ``sum_m n_m * 2**(m*k) + sum_q b_q * 2**(num_qumodes*k + q)``.

Counts bitstrings are little-endian as strings: character ``i`` is classical
bit ``i``.

Randomness: each shot draws from its own stream derived from
``SeedSequence([seed, shot_index])``, so results are reproducible and
independent of execution order or worker count.  Shot-level parallelism uses
forked worker processes where available (``threads`` names the worker count);
the warmed gate cache is inherited by the workers.
"""

from __future__ import annotations

import threading
from collections import Counter
from concurrent.futures import ProcessPoolExecutor, ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np
import scipy.linalg

from . import linalg
from .circuit import (
    Circuit,
    CustomGate,
    Gate,
    GateSpec,
    Initialize,
    Measure,
    Operand,
    gate_generator,
    gate_wires,
)
from .errors import (
    DimensionMismatchError,
    EmptySelectorError,
    LayoutMismatchError,
    NonUnitaryGateError,
    ValidationError,
    WireCapExceededError,
    ZeroProbabilityBranchError,
)
from .fock import FockSpace, fock_basis_vector

DEFAULT_WIRE_CAP = 24
DENSE_WIRE_LIMIT = 14
UNITARY_CHECK_TOL = 1e-9
STATEREAD_THRESHOLD = 1e-10


# --- layout and result types -------------------------------------------------


@dataclass(frozen=True)
class WireLayout:
    """Register partition of the global wire order."""

    num_qumodes: int
    qubits_per_mode: int
    num_qubits: int
    num_cbits: int = 0

    @property
    def total_wires(self) -> int:
        return self.num_qumodes * self.qubits_per_mode + self.num_qubits

    @property
    def dim(self) -> int:
        return 2**self.total_wires

    def qumode_wires(self, m: int) -> list[int]:
        k = self.qubits_per_mode
        return list(range(m * k, (m + 1) * k))

    def qubit_wire(self, q: int) -> int:
        return self.num_qumodes * self.qubits_per_mode + q

    def operand_wires(self, operand: Operand) -> list[int]:
        kind, idx = operand
        if kind == "qumode":
            return self.qumode_wires(idx)
        if kind == "qubit":
            return [self.qubit_wire(idx)]
        raise ValidationError(f"unknown operand kind {kind!r}")

    def fock_of_index(self, index: int, m: int) -> int:
        k = self.qubits_per_mode
        return (index >> (m * k)) & (2**k - 1)

    def bit_of_index(self, index: int, q: int) -> int:
        return (index >> self.qubit_wire(q)) & 1


def layout_of(circuit: Circuit) -> WireLayout:
    return WireLayout(
        circuit.num_qumodes,
        circuit.qubits_per_mode,
        circuit.num_qubits,
        circuit.num_cbits,
    )


@dataclass
class StateVector:
    """Normalized amplitudes over the full hybrid space plus the layout."""

    amplitudes: np.ndarray
    layout: WireLayout

    @property
    def dim(self) -> int:
        return self.layout.dim

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def copy(self) -> "StateVector":
        return StateVector(self.amplitudes.copy(), self.layout)


@dataclass
class DensityMatrix:
    """Reduced state over ``subsystem`` (first operand least significant)."""

    entries: np.ndarray
    subsystem: tuple[Operand, ...]
    qubits_per_mode: int

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def purity(self) -> float:
        return float(np.real(np.trace(self.entries @ self.entries)))

    def is_single_qumode(self) -> bool:
        return len(self.subsystem) == 1 and self.subsystem[0][0] == "qumode"


#: measured-operand layout entry: (kind, register index, classical bits)
LayoutEntry = tuple[str, int, tuple[int, ...]]


@dataclass
class ShotResult:
    counts: dict[str, int]
    shots: int
    seed: int
    endianness: str = "little"
    layout: tuple[LayoutEntry, ...] = ()
    num_cbits: int = 0


# --- gate compilation ----------------------------------------------------------


_GATE_CACHE: dict[tuple, np.ndarray] = {}
_GATE_CACHE_LOCK = threading.Lock()


def clear_gate_cache() -> None:
    with _GATE_CACHE_LOCK:
        _GATE_CACHE.clear()


def _local_unitary(spec: GateSpec, space: FockSpace) -> np.ndarray:
    key = (spec, space.qubits_per_mode)
    mat = _GATE_CACHE.get(key)
    if mat is None:
        mat = linalg.matexp(gate_generator(spec, space))
        with _GATE_CACHE_LOCK:
            _GATE_CACHE[key] = mat
    return mat


def _custom_unitary(instr: CustomGate) -> np.ndarray:
    key = (instr, "u")
    mat = _GATE_CACHE.get(key)
    if mat is None:
        mat = np.asarray(instr.matrix, dtype=complex)
        if instr.is_generator:
            mat = scipy.linalg.expm(mat)
        if not linalg.is_unitary(mat, UNITARY_CHECK_TOL * mat.shape[0]):
            raise NonUnitaryGateError(
                f"custom gate {instr.label!r} is not unitary within tolerance"
            )
        with _GATE_CACHE_LOCK:
            _GATE_CACHE[key] = mat
    return mat


@dataclass(frozen=True, eq=False)
class _GateOp:
    matrix: np.ndarray
    wires: tuple[int, ...]


@dataclass(frozen=True)
class _MeasureOp:
    wires: tuple[int, ...]  # bit j of the outcome lives on wires[j]
    cbits: tuple[int, ...]


@dataclass
class _Compiled:
    layout: WireLayout
    initial: np.ndarray
    steps: list[_GateOp | _MeasureOp]
    measured_layout: tuple[LayoutEntry, ...]


def _initial_state(circuit: Circuit, layout: WireLayout) -> np.ndarray:
    cutoff = 2**layout.qubits_per_mode
    factors: list[np.ndarray] = [
        fock_basis_vector(0, cutoff) for _ in range(layout.num_qumodes)
    ]
    factors += [np.array([1.0, 0.0], dtype=complex) for _ in range(layout.num_qubits)]
    for instr in circuit.instructions:
        if isinstance(instr, Initialize):
            if instr.fock is not None:
                factors[instr.qumode] = fock_basis_vector(instr.fock, cutoff)
            else:
                amps = np.zeros(cutoff, dtype=complex)
                vals = np.asarray(instr.amplitudes, dtype=complex)
                amps[: len(vals)] = vals
                factors[instr.qumode] = amps / np.linalg.norm(amps)
    return linalg.kron_factors_little_endian(factors)


def compile_circuit(circuit: Circuit, space: FockSpace | None = None) -> _Compiled:
    """Resolve instructions into gate matrices on wire lists.

    Initialize instructions are folded into the initial state; the builder
    guarantees they precede any use of their qumode, so this is equivalent to
    in-order execution.
    """
    space = _resolve_space(circuit, space)
    layout = layout_of(circuit)
    steps: list[_GateOp | _MeasureOp] = []
    measured: list[LayoutEntry] = []
    for instr in circuit.instructions:
        if isinstance(instr, Initialize):
            continue
        if isinstance(instr, Gate):
            mat = _local_unitary(instr.spec, space)
            wires = gate_wires(
                instr.spec.targets, instr.spec.controls,
                layout.qubits_per_mode, layout.num_qumodes,
            )
            steps.append(_GateOp(mat, tuple(wires)))
        elif isinstance(instr, CustomGate):
            mat = _custom_unitary(instr)
            wires = gate_wires(
                instr.qumodes, instr.qubits,
                layout.qubits_per_mode, layout.num_qumodes,
            )
            steps.append(_GateOp(mat, tuple(wires)))
        elif isinstance(instr, Measure):
            wires: list[int] = []
            cb = 0
            for kind, idx in instr.operands:
                ws = layout.operand_wires((kind, idx))
                wires.extend(ws)
                measured.append((kind, idx, instr.cbits[cb : cb + len(ws)]))
                cb += len(ws)
            steps.append(_MeasureOp(tuple(wires), instr.cbits))
        else:  # pragma: no cover
            raise ValidationError(f"unknown instruction {instr!r}")
    return _Compiled(layout, _initial_state(circuit, layout), steps, tuple(measured))


def _resolve_space(circuit: Circuit, space: FockSpace | None) -> FockSpace:
    if space is None:
        return circuit.space
    if space.qubits_per_mode != circuit.qubits_per_mode:
        raise DimensionMismatchError(
            f"space k={space.qubits_per_mode} != circuit k={circuit.qubits_per_mode}"
        )
    return space


# --- state evolution ------------------------------------------------------------


def _apply_gate(
    amps: np.ndarray, op: _GateOp, total_wires: int, method: str
) -> np.ndarray:
    if method == "local":
        return linalg.apply_on_wires(amps, op.matrix, op.wires, total_wires)
    if method == "dense":
        if total_wires > DENSE_WIRE_LIMIT:
            raise WireCapExceededError(
                f"dense method limited to {DENSE_WIRE_LIMIT} wires"
            )
        return linalg.embed(op.matrix, op.wires, total_wires) @ amps
    raise ValidationError(f"unknown gate application method {method!r}")


def _marginal_probs(amps: np.ndarray, wires: Sequence[int], n: int) -> np.ndarray:
    """Joint outcome probabilities over ``wires``; bit j of the outcome index
    is the value on ``wires[j]``."""
    p = np.abs(amps.reshape([2] * n)) ** 2
    keep_axes = {n - 1 - w for w in wires}
    sum_axes = tuple(a for a in range(n) if a not in keep_axes)
    if sum_axes:
        p = p.sum(axis=sum_axes)
    # remaining axes are the kept ones in ascending axis order
    remaining = sorted(keep_axes)
    order = [remaining.index(n - 1 - w) for w in reversed(wires)]
    return np.ascontiguousarray(p.transpose(order)).reshape(-1)


def _collapse(
    amps: np.ndarray, wires: Sequence[int], outcome: int, prob: float, n: int
) -> np.ndarray:
    psi = amps.reshape([2] * n)
    for j, w in enumerate(wires):
        sel: list = [slice(None)] * n
        sel[n - 1 - w] = 1 - ((outcome >> j) & 1)
        psi[tuple(sel)] = 0.0
    return (psi / np.sqrt(prob)).reshape(-1)


def _run_once(
    compiled: _Compiled,
    rng: np.random.Generator | None,
    method: str,
) -> tuple[np.ndarray, list[int]]:
    n = compiled.layout.total_wires
    amps = compiled.initial.copy()
    bits = [0] * compiled.layout.num_cbits
    for step in compiled.steps:
        if isinstance(step, _GateOp):
            amps = _apply_gate(amps, step, n, method)
        else:
            if rng is None:
                raise ValidationError("circuit contains measurement; seed/rng required")
            probs = _marginal_probs(amps, step.wires, n)
            total = probs.sum()
            probs = np.maximum(probs, 0.0) / total
            outcome = int(rng.choice(len(probs), p=probs))
            amps = _collapse(amps, step.wires, outcome, probs[outcome], n)
            for j, c in enumerate(step.cbits):
                bits[c] = (outcome >> j) & 1
    return amps, bits


def _shot_rng(seed: int, shot_index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([int(seed), int(shot_index)]))


def _check_wire_cap(circuit: Circuit, wire_cap: int) -> None:
    if circuit.total_wires > wire_cap:
        raise WireCapExceededError(
            f"circuit needs {circuit.total_wires} wires, cap is {wire_cap}"
        )


def simulate(
    circuit: Circuit,
    space: FockSpace | None = None,
    seed: int = 0,
    *,
    method: str = "local",
    wire_cap: int = DEFAULT_WIRE_CAP,
) -> tuple[StateVector, ShotResult]:
    """Run one shot: apply instructions in order, sampling measurements from
    Born probabilities and collapsing.  Returns the final (branch-conditioned)
    state and the measured bits of this shot."""
    _check_wire_cap(circuit, wire_cap)
    compiled = compile_circuit(circuit, space)
    amps, bits = _run_once(compiled, _shot_rng(seed, 0), method)
    key = "".join(str(b) for b in bits)
    result = ShotResult(
        counts={key: 1},
        shots=1,
        seed=seed,
        layout=compiled.measured_layout,
        num_cbits=compiled.layout.num_cbits,
    )
    return StateVector(amps, compiled.layout), result


def evolve(
    circuit: Circuit,
    state: StateVector | None = None,
    space: FockSpace | None = None,
    *,
    method: str = "local",
    wire_cap: int = DEFAULT_WIRE_CAP,
) -> StateVector:
    """Apply a measurement-free circuit to ``state`` (default: its initial
    state).  Used for stepping time-evolution circuits."""
    _check_wire_cap(circuit, wire_cap)
    if circuit.has_measurement():
        raise ValidationError("evolve() requires a measurement-free circuit")
    compiled = compile_circuit(circuit, space)
    if state is None:
        amps = compiled.initial.copy()
    else:
        if state.layout.total_wires != compiled.layout.total_wires:
            raise DimensionMismatchError("state layout does not match circuit")
        amps = state.amplitudes.copy()
    for step in compiled.steps:
        amps = _apply_gate(amps, step, compiled.layout.total_wires, method)
    return StateVector(amps, compiled.layout)


def circuit_unitary(circuit: Circuit, space: FockSpace | None = None) -> np.ndarray:
    """Full-space unitary of a measurement-free circuit (small circuits only)."""
    if circuit.has_measurement():
        raise ValidationError("circuit_unitary() requires a measurement-free circuit")
    if circuit.total_wires > DENSE_WIRE_LIMIT:
        raise WireCapExceededError(
            f"circuit_unitary limited to {DENSE_WIRE_LIMIT} wires"
        )
    compiled = compile_circuit(circuit, space)
    n = compiled.layout.total_wires
    u = np.eye(2**n, dtype=complex)
    for step in compiled.steps:
        u = linalg.embed(step.matrix, step.wires, n) @ u
    return u


# --- shots ---------------------------------------------------------------------


def _count_range(
    circuit: Circuit,
    space_k: int,
    seed: int,
    start: int,
    stop: int,
    method: str,
) -> Counter:
    compiled = compile_circuit(circuit, FockSpace(space_k))
    counts: Counter = Counter()
    for i in range(start, stop):
        _, bits = _run_once(compiled, _shot_rng(seed, i), method)
        counts["".join(str(b) for b in bits)] += 1
    return counts


def run_shots(
    circuit: Circuit,
    space: FockSpace | None = None,
    shots: int = 1,
    seed: int = 0,
    *,
    threads: int = 1,
    method: str = "local",
    wire_cap: int = DEFAULT_WIRE_CAP,
) -> ShotResult:
    """Repeat :func:`simulate` with per-shot streams ``(seed, shot_index)``
    and aggregate measured bitstrings.  Deterministic for a fixed seed and
    independent of ``threads`` (the worker count)."""
    if shots < 1:
        raise ValidationError("shots must be >= 1")
    _check_wire_cap(circuit, wire_cap)
    space = _resolve_space(circuit, space)
    compiled = compile_circuit(circuit, space)  # warms the gate cache pre-fork

    counts: Counter = Counter()
    workers = max(1, min(int(threads), shots))
    if workers == 1:
        for i in range(shots):
            _, bits = _run_once(compiled, _shot_rng(seed, i), method)
            counts["".join(str(b) for b in bits)] += 1
    else:
        bounds = np.linspace(0, shots, workers + 1).astype(int)
        ranges = [
            (int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:]) if b > a
        ]
        executor_cls = ThreadPoolExecutor
        kwargs: dict = {}
        try:
            import multiprocessing

            kwargs["mp_context"] = multiprocessing.get_context("fork")
            executor_cls = ProcessPoolExecutor
        except ValueError:  # platform without fork: fall back to threads
            pass
        with executor_cls(max_workers=len(ranges), **kwargs) as pool:
            futures = [
                pool.submit(
                    _count_range, circuit, space.qubits_per_mode, seed, a, b, method
                )
                for a, b in ranges
            ]
            for fut in futures:
                counts.update(fut.result())
    return ShotResult(
        counts=dict(counts),
        shots=shots,
        seed=seed,
        layout=compiled.measured_layout,
        num_cbits=compiled.layout.num_cbits,
    )


# --- readout helpers -------------------------------------------------------------


def reverse_bitstring(key: str) -> str:
    return key[::-1]


def fock_counts(
    result: ShotResult,
    operand_layout: Sequence[Operand] | None = None,
    reverse_endianness: bool = False,
) -> dict[str, int]:
    """Decode counts keys: each measured qumode's bit group becomes a base-10
    Fock number, qubit bits pass through.  Fields are space-separated in
    operand order (first operand first); ``reverse_endianness`` flips the
    field order."""
    layout = result.layout
    if operand_layout is not None:
        given = [(str(k), int(i)) for k, i in operand_layout]
        if given != [(k, i) for k, i, _ in layout]:
            raise LayoutMismatchError(
                f"operand layout {given} does not match result layout "
                f"{[(k, i) for k, i, _ in layout]}"
            )
    decoded: dict[str, int] = {}
    for key, cnt in result.counts.items():
        fields: list[str] = []
        for kind, _idx, cbits in layout:
            bits = [int(key[c]) for c in cbits]
            if kind == "qumode":
                fields.append(str(sum(b << j for j, b in enumerate(bits))))
            else:
                fields.append(str(bits[0]))
        if reverse_endianness:
            fields.reverse()
        out_key = " ".join(fields)
        decoded[out_key] = decoded.get(out_key, 0) + cnt
    return decoded


def condition_on_outcome(
    state: StateVector,
    qubit: int,
    outcome: int,
    basis: str = "z",
) -> tuple[StateVector, float]:
    """Project a qubit onto an outcome, renormalize, return branch probability.

    ``basis="z"``: outcome 0/1 are |0>/|1>.  ``basis="x"``: outcome 0/1 are
    |+>/|->.
    """
    if basis == "z":
        vec = np.array([1.0, 0.0]) if outcome == 0 else np.array([0.0, 1.0])
    elif basis == "x":
        vec = np.array([1.0, 1.0]) / np.sqrt(2)
        if outcome == 1:
            vec = np.array([1.0, -1.0]) / np.sqrt(2)
    else:
        raise ValidationError(f"unknown basis {basis!r}")
    n = state.layout.total_wires
    w = state.layout.qubit_wire(qubit)
    psi = state.amplitudes.reshape([2] * n)
    axis = n - 1 - w
    # <v|psi> on the qubit axis, then re-attach |v> on that axis
    proj = np.tensordot(vec.conj(), psi, axes=([0], [axis]))
    prob = float(np.sum(np.abs(proj) ** 2))
    if prob <= 1e-14:
        raise ZeroProbabilityBranchError(
            f"outcome {outcome} in basis {basis!r} has probability {prob:.3e}"
        )
    proj = proj / np.sqrt(prob)
    out = np.tensordot(vec.astype(complex), proj, axes=0)
    out = np.moveaxis(out, 0, axis)
    return StateVector(np.ascontiguousarray(out).reshape(-1), state.layout), prob


def partial_trace(state: StateVector, keep: Sequence[Operand]) -> DensityMatrix:
    """Reduced density matrix over the kept operands (first listed operand is
    the least-significant index block of the result)."""
    keep = [(str(k), int(i)) for k, i in keep]
    if not keep:
        raise EmptySelectorError("partial_trace needs a non-empty keep list")
    if len(set(keep)) != len(keep):
        raise ValidationError(f"duplicate operands in keep={keep}")
    layout = state.layout
    wires: list[int] = []
    for op in keep:
        wires.extend(layout.operand_wires(op))
    n = layout.total_wires
    psi = state.amplitudes.reshape([2] * n)
    keep_axes = [n - 1 - w for w in wires]
    traced = [a for a in range(n) if a not in keep_axes]
    rho = np.tensordot(psi, psi.conj(), axes=(traced, traced))
    # rho axes: kept axes (ascending) for rows, then the same for columns
    m = len(wires)
    remaining = sorted(keep_axes)
    order = [remaining.index(a) for a in (n - 1 - w for w in reversed(wires))]
    rho = rho.transpose(order + [m + o for o in order]).reshape(2**m, 2**m)
    return DensityMatrix(
        np.ascontiguousarray(rho), tuple(keep), layout.qubits_per_mode
    )


def reduce_to_qumode(state: StateVector, qumode: int) -> DensityMatrix:
    """Single-qumode reduced density matrix (cutoff-dimensional)."""
    return partial_trace(state, [("qumode", qumode)])


def mode_occupations(state: StateVector) -> np.ndarray:
    """Expectation of the number operator for every qumode."""
    layout = state.layout
    n = layout.total_wires
    k = layout.qubits_per_mode
    occ = np.zeros(layout.num_qumodes)
    for m in range(layout.num_qumodes):
        probs = _marginal_probs(state.amplitudes, layout.qumode_wires(m), n)
        occ[m] = float(np.dot(np.arange(2**k), probs))
    return occ


def stateread(
    state: StateVector,
    big_endian: bool = False,
    threshold: float = STATEREAD_THRESHOLD,
) -> str:
    """Readable listing of the basis states with ``|amplitude| > threshold``:
    per line the qumode Fock numbers, qubit bits, and the amplitude.
    ``big_endian=True`` reverses the printed qumode/qubit orders."""
    if threshold < 0:
        raise ValidationError("threshold must be >= 0")
    layout = state.layout
    lines = []
    for idx in range(layout.dim):
        amp = state.amplitudes[idx]
        if abs(amp) <= threshold:
            continue
        focks = [layout.fock_of_index(idx, m) for m in range(layout.num_qumodes)]
        qbits = [layout.bit_of_index(idx, q) for q in range(layout.num_qubits)]
        if big_endian:
            focks.reverse()
            qbits.reverse()
        lines.append(
            "fock=({}) qubits=({}) amp={:.6f}{:+.6f}i".format(
                ",".join(str(f) for f in focks),
                ",".join(str(b) for b in qbits),
                amp.real,
                amp.imag,
            )
        )
    return "\n".join(lines)
