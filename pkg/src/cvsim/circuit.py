"""Registers, the hybrid circuit model, and gate generators.

Gate conventions
----------------
Generators are skew-Hermitian and gates are their exponentials, with signs as
implemented (documented per constructor):

* rotation             ``exp(i theta n)``
* displacement         ``exp(alpha a^dag - conj(alpha) a)``
* squeeze1             ``exp((conj(theta) a a - theta a^dag a^dag) / 2)``
* squeeze2             ``exp(conj(theta) a b - theta a^dag b^dag)``
* beamsplitter         ``exp(theta a^dag b - conj(theta) b^dag a)``
* cond_*               same generator tensored with sigma_z on the control
* snap                 ``exp(i sum_n theta_n |n><n|)`` (sigma_z form if controlled)
* eswap                ``exp(i (theta/2) SWAP)``
* cond_parity          ``exp(i (pi/2) (sigma_z + 1) (x) n)``

"Controlled" means a sigma_z tensor factor (phase-kickback form), not a
|1><1| projector: the control qubit in |0> sees the gate with the parameter as
given, the control in |1> sees the inverse.  Hardware papers differ on this
point; every conditional constructor states it.

Local operator layout: a gate's matrix acts on the wire list returned by
:func:`gate_wires` with bit ``j`` of its local index on ``wires[j]``.  Target
qumodes come first (each mode's wires LSB-first, first target least
significant), control qubits last (most significant), so a conditional
generator is ``kron(sigma_z, G_modes)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import (
    ArityMismatchError,
    DuplicateWireError,
    FockOutOfRangeError,
    IndexOutOfRangeError,
    InitializeAfterUseError,
    InsufficientClassicalBitsError,
    SnapPhaseVectorTooLongError,
    ValidationError,
    ZeroNormAmplitudesError,
)
from .fock import FockSpace, annihilation, number

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)

#: (kind, number of target qumodes, number of control qubits or None=optional)
GATE_KINDS = {
    "rotation": (1, 0),
    "displacement": (1, 0),
    "squeeze1": (1, 0),
    "squeeze2": (2, 0),
    "beamsplitter": (2, 0),
    "cond_rotation": (1, 1),
    "cond_displacement": (1, 1),
    "cond_beamsplitter": (2, 1),
    "snap": (1, None),  # control qubit optional
    "eswap": (2, 0),
    "cond_parity": (1, 1),
    "qubit_gate": (0, None),  # operand count fixed by the gate name
}

#: qubit_gate name -> (number of qubit operands, number of real parameters)
QUBIT_GATES = {
    "h": (1, 0),
    "x": (1, 0),
    "y": (1, 0),
    "z": (1, 0),
    "s": (1, 0),
    "sdg": (1, 0),
    "t": (1, 0),
    "tdg": (1, 0),
    "rx": (1, 1),
    "ry": (1, 1),
    "rz": (1, 1),
    "cx": (2, 0),
    "cz": (2, 0),
}

Operand = tuple[str, int]  # ("qumode", index) or ("qubit", index)


# --- registers --------------------------------------------------------------


@dataclass(frozen=True)
class QumodeRegister:
    """``num_qumodes`` modes, each backed by ``qubits_per_mode`` wires."""

    num_qumodes: int
    qubits_per_mode: int

    def __post_init__(self) -> None:
        if self.num_qumodes < 1:
            raise ValidationError("QumodeRegister needs at least one qumode")
        FockSpace(self.qubits_per_mode)  # validates the range

    @property
    def total_wires(self) -> int:
        return self.num_qumodes * self.qubits_per_mode


@dataclass(frozen=True)
class QubitRegister:
    num_qubits: int

    def __post_init__(self) -> None:
        if self.num_qubits < 0:
            raise ValidationError("QubitRegister size must be >= 0")


@dataclass(frozen=True)
class ClassicalRegister:
    num_bits: int

    def __post_init__(self) -> None:
        if self.num_bits < 0:
            raise ValidationError("ClassicalRegister size must be >= 0")


# --- instructions -----------------------------------------------------------


@dataclass(frozen=True)
class GateSpec:
    """One gate instance: kind, parameters, target qumodes, control qubits.

    For ``kind="qubit_gate"`` the qubits the gate acts on are carried in
    ``controls`` (the qubit-index field) and ``name`` selects the gate; for
    ``cx`` the first entry is the control.
    """

    kind: str
    params: tuple[complex, ...] = ()
    targets: tuple[int, ...] = ()
    controls: tuple[int, ...] = ()
    name: str | None = None


@dataclass(frozen=True)
class Initialize:
    qumode: int
    fock: int | None = None
    amplitudes: tuple[complex, ...] | None = None


@dataclass(frozen=True)
class Gate:
    spec: GateSpec


@dataclass(frozen=True, eq=False)
class CustomGate:
    """In-code escape hatch for user-built operators (not part of the file
    format).  ``matrix`` may be a unitary or, with ``is_generator=True``, a
    generator exponentiated at simulation time.  Unitarity is checked then.
    Identity semantics (eq=False) so instances can key the gate cache."""

    matrix: np.ndarray
    qumodes: tuple[int, ...]
    qubits: tuple[int, ...]
    is_generator: bool = False
    label: str = "custom"


@dataclass(frozen=True)
class Measure:
    operands: tuple[Operand, ...]
    cbits: tuple[int, ...]


Instruction = Union[Initialize, Gate, CustomGate, Measure]


# --- circuit ----------------------------------------------------------------


class Circuit:
    """Ordered instruction list over one qumode register plus optional qubit
    and classical registers.  Builder methods validate eagerly and return
    ``self`` so calls chain; gate matrices are only built at simulation time.
    """

    def __init__(
        self,
        qumodes: QumodeRegister,
        qubits: QubitRegister | None = None,
        cbits: ClassicalRegister | None = None,
    ) -> None:
        self.qumodes = qumodes
        self.qubits = qubits or QubitRegister(0)
        self.cbits = cbits or ClassicalRegister(0)
        self.instructions: list[Instruction] = []
        self._modes_used: set[int] = set()

    # -- register helpers --

    @property
    def num_qumodes(self) -> int:
        return self.qumodes.num_qumodes

    @property
    def qubits_per_mode(self) -> int:
        return self.qumodes.qubits_per_mode

    @property
    def num_qubits(self) -> int:
        return self.qubits.num_qubits

    @property
    def num_cbits(self) -> int:
        return self.cbits.num_bits

    @property
    def total_wires(self) -> int:
        return self.qumodes.total_wires + self.num_qubits

    @property
    def space(self) -> FockSpace:
        return FockSpace(self.qubits_per_mode)

    def _check_mode(self, m: int) -> None:
        if not 0 <= m < self.num_qumodes:
            raise IndexOutOfRangeError(f"qumode {m} outside register of {self.num_qumodes}")

    def _check_qubit(self, q: int) -> None:
        if not 0 <= q < self.num_qubits:
            raise IndexOutOfRangeError(f"qubit {q} outside register of {self.num_qubits}")

    def _check_cbit(self, c: int) -> None:
        if not 0 <= c < self.num_cbits:
            raise IndexOutOfRangeError(f"classical bit {c} outside register of {self.num_cbits}")

    # -- generic appends --

    def append_gate(self, spec: GateSpec) -> "Circuit":
        validate_gate_spec(spec, self.qubits_per_mode)
        for m in spec.targets:
            self._check_mode(m)
        for q in spec.controls:
            self._check_qubit(q)
        self._modes_used.update(spec.targets)
        self.instructions.append(Gate(spec))
        return self

    def initialize(self, qumode: int, value: int | Sequence[complex]) -> "Circuit":
        """Prepare a qumode in |n> (integer value) or in a normalized
        superposition given by a complex amplitude list.

        Only valid before any gate or measurement touches the qumode.
        """
        self._check_mode(qumode)
        if qumode in self._modes_used:
            raise InitializeAfterUseError(
                f"qumode {qumode} already operated on; initialize must come first"
            )
        cutoff = 2**self.qubits_per_mode
        if isinstance(value, (int, np.integer)):
            if not 0 <= value < cutoff:
                raise FockOutOfRangeError(f"Fock {value} >= cutoff {cutoff}")
            self.instructions.append(Initialize(qumode, fock=int(value)))
        else:
            amps = np.asarray(list(value), dtype=complex)
            if amps.ndim != 1 or len(amps) == 0 or len(amps) > cutoff:
                raise FockOutOfRangeError(
                    f"amplitude list length {amps.shape} invalid for cutoff {cutoff}"
                )
            if np.linalg.norm(amps) == 0.0:
                raise ZeroNormAmplitudesError("initialization amplitudes have zero norm")
            self.instructions.append(Initialize(qumode, amplitudes=tuple(amps)))
        return self

    def measure(self, operands: Sequence[Operand], cbits: Sequence[int]) -> "Circuit":
        """Measure qubits (computational basis) and qumodes (Fock basis).

        Result bits are laid out little-endian with respect to ``operands``:
        the first operand's bits land on the first entries of ``cbits``, a
        qumode contributing its Fock bits LSB-first.
        """
        ops = tuple((str(kind), int(idx)) for kind, idx in operands)
        if len(set(ops)) != len(ops):
            raise DuplicateWireError(f"duplicate measurement operands in {ops}")
        needed = 0
        for kind, idx in ops:
            if kind == "qumode":
                self._check_mode(idx)
                needed += self.qubits_per_mode
            elif kind == "qubit":
                self._check_qubit(idx)
                needed += 1
            else:
                raise ValidationError(f"unknown operand kind {kind!r}")
        cbits = tuple(int(c) for c in cbits)
        if len(cbits) < needed:
            raise InsufficientClassicalBitsError(
                f"need {needed} classical bits, got {len(cbits)}"
            )
        if len(cbits) > needed:
            raise ArityMismatchError(
                f"measure maps {needed} bits but {len(cbits)} classical bits given"
            )
        if len(set(cbits)) != len(cbits):
            raise DuplicateWireError(f"duplicate classical bits in {cbits}")
        for c in cbits:
            self._check_cbit(c)
        for kind, idx in ops:
            if kind == "qumode":
                self._modes_used.add(idx)
        self.instructions.append(Measure(ops, cbits))
        return self

    def custom_unitary(
        self,
        matrix: np.ndarray,
        qumodes: Sequence[int] = (),
        qubits: Sequence[int] = (),
        label: str = "custom",
    ) -> "Circuit":
        """Append a user-built operator; unitarity is checked at simulation."""
        return self._custom(matrix, qumodes, qubits, False, label)

    def custom_generator(
        self,
        generator: np.ndarray,
        qumodes: Sequence[int] = (),
        qubits: Sequence[int] = (),
        label: str = "custom",
    ) -> "Circuit":
        """Append a user-built generator, exponentiated at simulation time."""
        return self._custom(generator, qumodes, qubits, True, label)

    def _custom(self, matrix, qumodes, qubits, is_generator, label) -> "Circuit":
        qumodes = tuple(int(m) for m in qumodes)
        qubits = tuple(int(q) for q in qubits)
        for m in qumodes:
            self._check_mode(m)
        for q in qubits:
            self._check_qubit(q)
        if len(set(qumodes)) != len(qumodes) or len(set(qubits)) != len(qubits):
            raise DuplicateWireError("duplicate operands in custom gate")
        dim = 2 ** (len(qumodes) * self.qubits_per_mode + len(qubits))
        matrix = np.asarray(matrix, dtype=complex)
        if matrix.shape != (dim, dim):
            raise ArityMismatchError(
                f"custom matrix shape {matrix.shape} != ({dim}, {dim})"
            )
        self._modes_used.update(qumodes)
        self.instructions.append(CustomGate(matrix, qumodes, qubits, is_generator, label))
        return self

    # -- gate helpers (Gaussian) --

    def rotation(self, theta: float, qumode: int) -> "Circuit":
        """Phase-space rotation ``exp(i theta n)``."""
        return self.append_gate(GateSpec("rotation", (complex(theta),), (qumode,)))

    def displacement(self, alpha: complex, qumode: int) -> "Circuit":
        """Displacement ``exp(alpha a^dag - conj(alpha) a)``."""
        return self.append_gate(GateSpec("displacement", (complex(alpha),), (qumode,)))

    def squeeze(self, theta: complex, qumode: int) -> "Circuit":
        """Single-mode squeeze ``exp((conj(theta) aa - theta a^dag a^dag)/2)``."""
        return self.append_gate(GateSpec("squeeze1", (complex(theta),), (qumode,)))

    def squeeze2(self, theta: complex, qumode_a: int, qumode_b: int) -> "Circuit":
        """Two-mode squeeze ``exp(conj(theta) ab - theta a^dag b^dag)``."""
        return self.append_gate(
            GateSpec("squeeze2", (complex(theta),), (qumode_a, qumode_b))
        )

    def beamsplitter(self, theta: complex, qumode_a: int, qumode_b: int) -> "Circuit":
        """Beamsplitter ``exp(theta a^dag b - conj(theta) b^dag a)``.

        With real theta = pi/2 this maps |1,0> to -|0,1>.
        """
        return self.append_gate(
            GateSpec("beamsplitter", (complex(theta),), (qumode_a, qumode_b))
        )

    # -- gate helpers (non-Gaussian / conditional) --

    def cond_rotation(self, theta: float, qumode: int, qubit: int) -> "Circuit":
        """sigma_z-conditioned rotation ``exp(i theta sigma_z (x) n)``."""
        return self.append_gate(
            GateSpec("cond_rotation", (complex(theta),), (qumode,), (qubit,))
        )

    def cond_displacement(self, alpha: complex, qumode: int, qubit: int) -> "Circuit":
        """sigma_z-conditioned displacement: control |0> displaces by alpha,
        control |1> by -alpha."""
        return self.append_gate(
            GateSpec("cond_displacement", (complex(alpha),), (qumode,), (qubit,))
        )

    def cond_beamsplitter(
        self, theta: complex, qumode_a: int, qumode_b: int, qubit: int
    ) -> "Circuit":
        return self.append_gate(
            GateSpec("cond_beamsplitter", (complex(theta),), (qumode_a, qumode_b), (qubit,))
        )

    def snap(
        self, phases: Sequence[float], qumode: int, qubit: int | None = None
    ) -> "Circuit":
        """Number-selective phases: Fock level n gains ``exp(i phases[n])``
        (levels beyond the vector get phase 0).  With a control qubit the
        sigma_z form is used, so the |1> control branch gains conjugate phases.
        """
        controls = () if qubit is None else (qubit,)
        return self.append_gate(
            GateSpec("snap", tuple(complex(p) for p in phases), (qumode,), controls)
        )

    def eswap(self, theta: float, qumode_a: int, qumode_b: int) -> "Circuit":
        """Exponential SWAP ``exp(i (theta/2) SWAP) = cos(theta/2) I + i sin(theta/2) SWAP``."""
        return self.append_gate(
            GateSpec("eswap", (complex(theta),), (qumode_a, qumode_b))
        )

    def cond_parity(self, qumode: int, qubit: int) -> "Circuit":
        """Parity-controlled rotation ``exp(i (pi/2)(sigma_z + 1)(x) n)``:
        rotates the qumode by pi only on the sigma_z = +1 control branch."""
        return self.append_gate(GateSpec("cond_parity", (), (qumode,), (qubit,)))

    # -- standard qubit gates --

    def _qubit_gate(self, name: str, qubits: tuple[int, ...], params: tuple = ()) -> "Circuit":
        return self.append_gate(
            GateSpec("qubit_gate", tuple(complex(p) for p in params), (), qubits, name=name)
        )

    def h(self, qubit: int) -> "Circuit":
        return self._qubit_gate("h", (qubit,))

    def x(self, qubit: int) -> "Circuit":
        return self._qubit_gate("x", (qubit,))

    def y(self, qubit: int) -> "Circuit":
        return self._qubit_gate("y", (qubit,))

    def z(self, qubit: int) -> "Circuit":
        return self._qubit_gate("z", (qubit,))

    def s(self, qubit: int) -> "Circuit":
        return self._qubit_gate("s", (qubit,))

    def sdg(self, qubit: int) -> "Circuit":
        return self._qubit_gate("sdg", (qubit,))

    def t(self, qubit: int) -> "Circuit":
        return self._qubit_gate("t", (qubit,))

    def tdg(self, qubit: int) -> "Circuit":
        return self._qubit_gate("tdg", (qubit,))

    def rx(self, theta: float, qubit: int) -> "Circuit":
        return self._qubit_gate("rx", (qubit,), (theta,))

    def ry(self, theta: float, qubit: int) -> "Circuit":
        return self._qubit_gate("ry", (qubit,), (theta,))

    def rz(self, lam: float, qubit: int) -> "Circuit":
        """Qubit z-rotation ``exp(-i lam sigma_z / 2)``."""
        return self._qubit_gate("rz", (qubit,), (lam,))

    def cx(self, control: int, target: int) -> "Circuit":
        return self._qubit_gate("cx", (control, target))

    def cz(self, qubit_a: int, qubit_b: int) -> "Circuit":
        return self._qubit_gate("cz", (qubit_a, qubit_b))

    # -- queries --

    def gate_instructions(self) -> list[Instruction]:
        return [i for i in self.instructions if isinstance(i, (Gate, CustomGate))]

    def has_measurement(self) -> bool:
        return any(isinstance(i, Measure) for i in self.instructions)


# --- gate generator construction ---------------------------------------------


def _real_param(value: complex, kind: str) -> float:
    if abs(complex(value).imag) > 1e-12 * max(1.0, abs(value)):
        raise ArityMismatchError(f"{kind} takes a real parameter, got {value}")
    return float(complex(value).real)


def validate_gate_spec(spec: GateSpec, qubits_per_mode: int) -> None:
    """Arity/parameter validation shared by the builder and the file loader."""
    if spec.kind not in GATE_KINDS:
        raise ArityMismatchError(f"unknown gate kind {spec.kind!r}")
    n_targets, n_controls = GATE_KINDS[spec.kind]

    if spec.kind == "qubit_gate":
        if spec.name not in QUBIT_GATES:
            raise ArityMismatchError(f"unknown qubit gate {spec.name!r}")
        n_qubits, n_params = QUBIT_GATES[spec.name]
        if len(spec.controls) != n_qubits:
            raise ArityMismatchError(
                f"qubit gate {spec.name!r} takes {n_qubits} qubit(s), got {len(spec.controls)}"
            )
        if len(spec.params) != n_params:
            raise ArityMismatchError(
                f"qubit gate {spec.name!r} takes {n_params} parameter(s), got {len(spec.params)}"
            )
        if spec.targets:
            raise ArityMismatchError("qubit gates take no qumode targets")
    else:
        if spec.name is not None:
            raise ArityMismatchError(f"{spec.kind} does not take a name")
        if len(spec.targets) != n_targets:
            raise ArityMismatchError(
                f"{spec.kind} takes {n_targets} qumode(s), got {len(spec.targets)}"
            )
        if n_controls is None:
            if len(spec.controls) > 1:
                raise ArityMismatchError(f"{spec.kind} takes at most one control qubit")
        elif len(spec.controls) != n_controls:
            raise ArityMismatchError(
                f"{spec.kind} takes {n_controls} control qubit(s), got {len(spec.controls)}"
            )
        if spec.kind == "snap":
            if len(spec.params) < 1:
                raise ArityMismatchError("snap needs at least one phase")
            if len(spec.params) > 2**qubits_per_mode:
                raise SnapPhaseVectorTooLongError(
                    f"snap phase vector of {len(spec.params)} exceeds cutoff {2**qubits_per_mode}"
                )
            for p in spec.params:
                _real_param(p, "snap")
        elif spec.kind == "cond_parity":
            if spec.params:
                raise ArityMismatchError("cond_parity takes no parameters")
        else:
            if len(spec.params) != 1:
                raise ArityMismatchError(
                    f"{spec.kind} takes exactly one parameter, got {len(spec.params)}"
                )
            if spec.kind in ("rotation", "cond_rotation", "eswap"):
                _real_param(spec.params[0], spec.kind)
    if len(set(spec.targets)) != len(spec.targets):
        raise DuplicateWireError(f"duplicate target qumodes in {spec.targets}")
    if len(set(spec.controls)) != len(spec.controls):
        raise DuplicateWireError(f"duplicate qubits in {spec.controls}")


def _mode_ops(space: FockSpace, n_modes: int) -> list[np.ndarray]:
    """Annihilation operator embedded per mode; mode 0 least significant."""
    a = annihilation(space)
    eye = np.eye(space.cutoff, dtype=complex)
    if n_modes == 1:
        return [a]
    return [np.kron(eye, a), np.kron(a, eye)]


def _swap_matrix(cutoff: int) -> np.ndarray:
    s = np.zeros((cutoff * cutoff, cutoff * cutoff), dtype=complex)
    for na in range(cutoff):
        for nb in range(cutoff):
            s[na * cutoff + nb, nb * cutoff + na] = 1.0
    return s


def _involution_generator(mat: np.ndarray) -> np.ndarray:
    # For Hermitian M with M^2 = I:  exp(i pi/2 (I - M)) = M exactly.
    return 1j * (np.pi / 2) * (np.eye(mat.shape[0], dtype=complex) - mat)


def _qubit_generator(name: str, params: tuple[complex, ...]) -> np.ndarray:
    if name in ("h", "x", "y", "z"):
        mat = {"h": HADAMARD, "x": SIGMA_X, "y": SIGMA_Y, "z": SIGMA_Z}[name]
        return _involution_generator(mat)
    if name in ("s", "sdg", "t", "tdg"):
        phase = {"s": np.pi / 2, "sdg": -np.pi / 2, "t": np.pi / 4, "tdg": -np.pi / 4}[name]
        return 1j * np.diag([0.0, phase]).astype(complex)
    if name in ("rx", "ry", "rz"):
        theta = _real_param(params[0], name)
        sigma = {"rx": SIGMA_X, "ry": SIGMA_Y, "rz": SIGMA_Z}[name]
        return -0.5j * theta * sigma
    if name == "cx":
        # controls[0] is the control = local bit 0, controls[1] the target = bit 1
        cx = np.zeros((4, 4), dtype=complex)
        for b0 in range(2):
            for b1 in range(2):
                cx[(b1 ^ b0) * 2 + b0, b1 * 2 + b0] = 1.0
        return _involution_generator(cx)
    if name == "cz":
        return _involution_generator(np.diag([1.0, 1.0, 1.0, -1.0]).astype(complex))
    raise ArityMismatchError(f"unknown qubit gate {name!r}")


def gate_generator(spec: GateSpec, space: FockSpace) -> np.ndarray:
    """Skew-Hermitian generator of a gate on its minimal local space.

    The local space is the target qumodes (first target least significant)
    with one leading qubit factor for conditional gates; the gate matrix is
    ``matexp`` of this generator.
    """
    validate_gate_spec(spec, space.qubits_per_mode)
    kind = spec.kind
    cutoff = space.cutoff

    if kind == "qubit_gate":
        return _qubit_generator(spec.name, spec.params)

    if kind in ("rotation", "cond_rotation"):
        theta = _real_param(spec.params[0], kind)
        gen = 1j * theta * number(space)
    elif kind in ("displacement", "cond_displacement"):
        alpha = complex(spec.params[0])
        a = annihilation(space)
        gen = alpha * a.conj().T - np.conj(alpha) * a
    elif kind == "squeeze1":
        theta = complex(spec.params[0])
        a = annihilation(space)
        gen = 0.5 * (np.conj(theta) * (a @ a) - theta * (a.conj().T @ a.conj().T))
    elif kind == "squeeze2":
        theta = complex(spec.params[0])
        a1, a2 = _mode_ops(space, 2)
        gen = np.conj(theta) * (a1 @ a2) - theta * (a1.conj().T @ a2.conj().T)
    elif kind in ("beamsplitter", "cond_beamsplitter"):
        theta = complex(spec.params[0])
        a1, a2 = _mode_ops(space, 2)
        gen = theta * (a1.conj().T @ a2) - np.conj(theta) * (a2.conj().T @ a1)
    elif kind == "snap":
        phases = np.zeros(cutoff)
        for n, p in enumerate(spec.params):
            phases[n] = _real_param(p, "snap")
        gen = 1j * np.diag(phases).astype(complex)
    elif kind == "eswap":
        theta = _real_param(spec.params[0], kind)
        gen = 0.5j * theta * _swap_matrix(cutoff)
    elif kind == "cond_parity":
        n_op = number(space)
        return 1j * (np.pi / 2) * np.kron(SIGMA_Z + np.eye(2), n_op)
    else:  # pragma: no cover - guarded by validate_gate_spec
        raise ArityMismatchError(f"unknown gate kind {kind!r}")

    if spec.controls and kind != "cond_parity":
        gen = np.kron(SIGMA_Z, gen)
    return gen


def gate_wires(spec_targets: Iterable[int], spec_qubits: Iterable[int],
               qubits_per_mode: int, num_qumodes: int) -> list[int]:
    """Global wire list for a local gate matrix, LSB-first.

    Qumode ``m`` owns wires ``m*k .. m*k+k-1`` and qubit ``q`` sits at
    ``num_qumodes*k + q``.
    """
    k = qubits_per_mode
    wires: list[int] = []
    for m in spec_targets:
        wires.extend(range(m * k, (m + 1) * k))
    base = num_qumodes * k
    wires.extend(base + q for q in spec_qubits)
    return wires
