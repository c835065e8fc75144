"""Shared exception types for the numerical contracts."""


class ContractViolation(Exception):
    """Base class: an input or intermediate result broke a numerical contract."""


class NonUnitary(ContractViolation):
    """Matrix failed the unitarity test."""


class NotBijective(ContractViolation):
    """Map expected to be a permutation is not one."""


class UnsupportedShape(ContractViolation):
    """Input does not have the structural form the operation requires."""


class SingularPoint(ContractViolation):
    """Evaluation requested at a point where the function is undefined."""


class RecursionUnderflow(ContractViolation):
    """Recursion magnitudes left the representable range."""


class PoleAtSouth(ContractViolation):
    """Direction vector sits on a coordinate pole where the frame is undefined."""


class ZeroMomentum(ContractViolation):
    """Radial momentum zero: edge state excluded from the physical domain."""


class EdgeState(ContractViolation):
    """State lies in the excluded singular edge subspace."""


class WindowTooSmall(ContractViolation):
    """A contour or orbit left the finite search window."""


class ResonanceSingularity(ContractViolation):
    """Level spacing at or beyond the resonance where the expansion diverges."""
