"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Malformed input: wrong shapes, non-Hermitian operators, bad files."""


class SpectrumError(ValueError):
    """Input is well-formed but violates the spectral precondition of a
    reconstruction (it cannot be the correlation data of a pure state)."""


class DimensionCapError(ValidationError):
    """Requested operation would exceed the configured qubit cap."""


class InvariantError(RuntimeError):
    """A quantity that theory holds fixed drifted beyond tolerance."""
