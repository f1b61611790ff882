"""Exception hierarchy for the quantum ring toolkit"""

from typing import Optional


class QuantumRingError(Exception):
    """Base class for every error raised by this package"""


class ArgumentError(QuantumRingError, ValueError):
    """Unsupported argument (bad generator index, empty range, ...)"""


class DomainError(QuantumRingError, ValueError):
    """Value outside the physical domain (k <= 0, L0 <= 0, non-finite input)"""


class PreconditionError(QuantumRingError, ValueError):
    """Operation requires a property the input does not have"""


class SingularAssemblyError(QuantumRingError, ArithmeticError):
    """A matrix or denominator that must be inverted vanishes

    Attributes:
        determinant: Offending determinant or denominator, when known
    """

    def __init__(self, message: str, determinant: Optional[complex] = None):
        super().__init__(message)
        self.determinant = determinant


class ExtremalCaseError(QuantumRingError, ArithmeticError):
    """Scattering amplitude of modulus one decouples the ring"""


class DegenerateStateError(QuantumRingError, ArithmeticError):
    """Localized-state normalization vanishes"""


class ConfigError(QuantumRingError, ValueError):
    """Configuration could not be parsed

    Attributes:
        key: Offending key, if any
        line: 1-based line number in the configuration file, if known
    """

    def __init__(self, message: str, key: Optional[str] = None, line: Optional[int] = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.key = key
        self.line = line
