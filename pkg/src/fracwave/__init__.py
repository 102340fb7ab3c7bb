"""fracwave: fractional diffusion-wave and lossy acoustic wave toolkit.

Solves the fractional diffusion-wave equation and the time-space
fractional lossy wave equation on periodic 1D grids, extracts
frequency-dependent attenuation from dispersion relations and from
direct simulation, and checks the power-law exponent identity
y = s + eta - 1 together with the order bound -1 <= lam - beta <= 1.
"""

from .analysis import (
    AttenuationMeasurement,
    ComparisonRow,
    ComparisonTable,
    compare_dispersion,
    fit_power_law,
    measure_spatial_attenuation,
)
from .core import (
    BoundVerdict,
    DispersionPoint,
    FdweParams,
    Field,
    Grid1D,
    Medium,
    PowerLawFit,
    Trajectory,
    check_order_bound,
    exponent_from_fdwe,
    map_lossy_to_fdwe,
)
from .dispersion import (
    AsymptoticLaw,
    asymptotic_attenuation,
    dispersion_residual,
    dispersion_sweep,
    solve_wavenumber,
)
from .fracops import (
    GlWeights,
    apply_fractional_laplacian,
    fractional_laplacian_symbol,
    gl_fractional_derivative,
    gl_weights,
)
from .media import (
    ClinicalAttenuation,
    builtin_media,
    from_si,
    load_media,
    lookup_medium,
    medium_from_power_law,
    to_si,
)
from .solvers import (
    PointSource,
    SolverConfig,
    solve_fdwe,
    solve_fractional_burgers,
    solve_lossy_wave,
    solve_telegrapher,
    solve_thermoviscous,
)

__version__ = "0.1.0"
