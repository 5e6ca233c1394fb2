"""Exception types raised by the construction and certification routines."""


class EBIError(Exception):
    """Base class for all package errors."""


class DimensionError(EBIError, ValueError):
    """Local dimension is not prime, or operands have mismatched sizes."""


class TraceError(EBIError, ValueError):
    def __init__(self, trace_abs):
        self.trace_abs = float(trace_abs)
        super().__init__(f"operator is not traceless: |Tr M| = {self.trace_abs:.3e}")


class FiducialError(EBIError, ValueError):
    def __init__(self, message, max_deviation=None):
        self.max_deviation = max_deviation
        super().__init__(message)


class ConsistencyError(EBIError, ValueError):
    """Coefficients violate the real-valuedness condition F_n = conj(F_{d-n})."""


class CertificateError(EBIError):
    """A structural precondition of the quantum bound does not hold."""


class StateError(EBIError, ValueError):
    pass


class ProbabilityError(EBIError, ValueError):
    pass


class InfeasibleError(EBIError):
    """Exact local-bound enumeration is too large for this dimension."""


class NoViolationError(EBIError, ValueError):
    pass
