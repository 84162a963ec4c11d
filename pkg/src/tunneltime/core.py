"""Units, barrier description and the complex interior wavenumber.

Everything here works for an arbitrary ``UnitSystem``; the default is the
dimensionless scheme hbar = m = 1.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import DegenerateInputError, DomainError

__all__ = [
    "UnitSystem",
    "NATURAL",
    "BarrierConfig",
    "IncidentState",
    "ComplexWavenumber",
    "free_wavenumber",
    "barrier_wavenumber",
    "xi_mu_closed_form",
]


@dataclass(frozen=True)
class UnitSystem:
    """Values of hbar and the particle mass fixing the dimensional scheme."""

    hbar: float = 1.0
    mass: float = 1.0

    def __post_init__(self):
        if not (self.hbar > 0 and self.mass > 0):
            raise DomainError(f"hbar and mass must be positive, got {self.hbar}, {self.mass}")

    @property
    def two_m_over_hbar2(self) -> float:
        """Conversion factor between energy and squared wavenumber."""
        return 2.0 * self.mass / self.hbar**2


NATURAL = UnitSystem()


@dataclass(frozen=True)
class BarrierConfig:
    """Square barrier ``V(x) = v0 - i*v1`` on ``0 < x < width``."""

    v0: float
    v1: float
    width: float

    def __post_init__(self):
        if not (self.width > 0 and math.isfinite(self.width)):
            raise DomainError(f"barrier width must be positive and finite, got {self.width}")
        if not self.v1 >= 0:
            raise DomainError(f"absorption strength v1 must be >= 0, got {self.v1}")
        # -0.0 would flip the branch of the square root for v1 == 0
        object.__setattr__(self, "v1", float(self.v1) + 0.0)
        object.__setattr__(self, "v0", float(self.v0))
        object.__setattr__(self, "width", float(self.width))

    def with_(self, **changes) -> "BarrierConfig":
        """Return a copy with some fields replaced."""
        fields = {"v0": self.v0, "v1": self.v1, "width": self.width}
        fields.update(changes)
        return BarrierConfig(**fields)


@dataclass(frozen=True)
class IncidentState:
    energy: float
    k: float

    @classmethod
    def from_energy(cls, energy: float, units: UnitSystem = NATURAL) -> "IncidentState":
        return cls(float(energy), free_wavenumber(energy, units))


@dataclass(frozen=True)
class ComplexWavenumber:
    """Interior wavenumber ``k_II = xi + i*mu``."""

    xi: float
    mu: float

    @property
    def value(self) -> complex:
        return complex(self.xi, self.mu)

    @property
    def rho_sq(self) -> float:
        """``|k_II|**2 = xi**2 + mu**2``."""
        return self.xi * self.xi + self.mu * self.mu


def free_wavenumber(energy: float, units: UnitSystem = NATURAL) -> float:
    """Wavenumber ``sqrt(2 m E) / hbar`` outside the barrier."""
    if not energy > 0:
        raise DomainError(f"energy must be positive, got {energy}")
    return math.sqrt(2.0 * units.mass * energy) / units.hbar


def barrier_wavenumber(
    energy: float, barrier: BarrierConfig, units: UnitSystem = NATURAL
) -> ComplexWavenumber:
    """Principal square root of ``2m(E - V0 + i V1)/hbar**2``.

    The principal branch has ``mu >= 0`` (decaying interior solution) and,
    since ``V1 >= 0``, also ``xi >= 0``. It is continuous across ``E = V0``
    whenever ``V1 > 0``.

    Raises
    ------
    DomainError
        If ``energy <= 0``.
    DegenerateInputError
        If ``E == V0`` and ``V1 == 0`` (or ``V1`` underflows) so that
        ``k_II`` vanishes.
    """
    if not energy > 0:
        raise DomainError(f"energy must be positive, got {energy}")
    if energy == barrier.v0 and barrier.v1 == 0.0:
        raise DegenerateInputError("k_II = 0 at E == V0 with V1 == 0")
    s = units.two_m_over_hbar2
    q = cmath.sqrt(complex(s * (energy - barrier.v0), s * barrier.v1))
    if q.real * q.real + q.imag * q.imag == 0:
        # V1 so small at the barrier top that |k_II|^2 underflows
        raise DegenerateInputError("|k_II|^2 underflows to 0 at E == V0")
    return ComplexWavenumber(q.real, q.imag)


def xi_mu_closed_form(
    energy: float, barrier: BarrierConfig, units: UnitSystem = NATURAL
) -> tuple[float, float]:
    """Real and imaginary parts of ``k_II`` from the explicit radical formulas.

    Valid only below the barrier top (``0 < E < V0``).
    """
    if not energy > 0:
        raise DomainError(f"energy must be positive, got {energy}")
    if not energy < barrier.v0:
        raise DomainError("closed-form xi/mu apply only for E < V0; use barrier_wavenumber")
    depth = barrier.v0 - energy
    modulus = math.hypot(depth, barrier.v1)
    pref = math.sqrt(units.mass) / units.hbar
    root_plus = math.sqrt(modulus + depth)
    # modulus - depth cancels when v1 << depth; sqrt(modulus - depth) = v1 / root_plus
    return pref * barrier.v1 / root_plus, pref * root_plus
