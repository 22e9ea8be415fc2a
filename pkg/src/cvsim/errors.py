"""Exception hierarchy for cvsim.

Every error raised by the library derives from :class:`CvsimError`, so callers
can catch one type at the top level.  Validation errors raised while building a
circuit or loading a file derive from :class:`ValidationError`.
"""


class CvsimError(Exception):
    """Base class for all cvsim errors."""


class ValidationError(CvsimError):
    """Base class for input/contract violations detected before simulation."""


# --- linalg ---------------------------------------------------------------

class DimensionMismatchError(ValidationError):
    """Matrix/vector dimensions are inconsistent with the operation."""


class NonSkewHermitianError(ValidationError):
    """Generator passed to matexp is not skew-Hermitian within tolerance."""


class DuplicateWireError(ValidationError):
    """The same wire (or operand) was named twice."""


class WireOutOfRangeError(ValidationError):
    """A wire index is outside the register."""


# --- fock -----------------------------------------------------------------

class FockOutOfRangeError(ValidationError):
    """Fock number n does not fit in the mode's cutoff."""


# --- circuit --------------------------------------------------------------

class ArityMismatchError(ValidationError):
    """Gate operands or parameters do not match the gate kind."""


class SnapPhaseVectorTooLongError(ValidationError):
    """SNAP phase vector has more entries than the cutoff."""


class IndexOutOfRangeError(ValidationError):
    """A qumode/qubit/classical-bit index is outside its register."""


class ZeroNormAmplitudesError(ValidationError):
    """Initialization amplitude list has zero norm."""


class InsufficientClassicalBitsError(ValidationError):
    """Measurement maps fewer classical bits than the operands need."""


class InitializeAfterUseError(ValidationError):
    """cv-initialize appended after the qumode was already operated on."""


# --- engine ---------------------------------------------------------------

class WireCapExceededError(CvsimError):
    """Circuit needs more wires than the simulator cap allows."""


class NonUnitaryGateError(CvsimError):
    """A user-supplied operator failed the unitarity check."""


class ZeroProbabilityBranchError(CvsimError):
    """Conditioning on an outcome whose probability is (numerically) zero."""


class EmptySelectorError(ValidationError):
    """Partial trace called with an empty keep-list."""


class LayoutMismatchError(ValidationError):
    """Operand layout does not match the one that produced the result."""


class MeasurementInAnimationError(ValidationError):
    """Wigner animation requested for a circuit containing measurements."""


# --- wigner ---------------------------------------------------------------

class NotAQumodeDensityMatrixError(ValidationError):
    """Input to wigner() is not a single-qumode density matrix."""


class NonHermitianInputError(ValidationError):
    """Density matrix input is not Hermitian within tolerance."""


class EmptyInputError(ValidationError):
    """An operation requiring at least one element received none."""


# --- hamiltonians ---------------------------------------------------------

class AncillaMissingError(ValidationError):
    """BCH on-site synthesis needs an ancilla qubit the circuit lacks."""


class NegativeUdtError(ValidationError):
    """On-site synthesis requires U*dt >= 0."""
