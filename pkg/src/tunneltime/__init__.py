"""Phase times for tunnelling through a complex (absorptive) square barrier."""

from .core import (
    NATURAL,
    BarrierConfig,
    ComplexWavenumber,
    IncidentState,
    UnitSystem,
    barrier_wavenumber,
    free_wavenumber,
    xi_mu_closed_form,
)
from .errors import DegenerateInputError, DomainError
from .numerics import DerivativeEstimate, FitResult, differentiate, linear_fit, unwrap_phases
from .phase_time import (
    PhaseDecomposition,
    TunnellingTimeResult,
    asymptotic_time,
    classical_time,
    limiting_speed,
    numeric_time,
    phase,
    phase_closed_form,
    phase_decomposition,
    real_barrier_time,
    tunnelling_time_analytic,
    tunnelling_time_appendix_form,
)
from .scattering import (
    ScatteringSolution,
    probability_budget,
    solve_boundary_conditions,
    transmission_amplitude_closed_form,
)

__version__ = "0.1.0"
