"""Exception types shared by the package."""


class DomainError(ValueError):
    """Raised when an input lies outside the domain of an operation."""


class DegenerateInputError(DomainError):
    """Raised when the scattering problem is singular for the given point.

    The only physical case is ``E == V0`` with ``V1 == 0``, where the
    interior wavenumber vanishes and the two interior solutions coincide.
    """
