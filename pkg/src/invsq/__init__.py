"""Renormalization toolkit for the attractive inverse-square potential.

Covers the medium-weak window g in [-1/4, 3/4] of the s-wave potential
g/r^2 in hbar = 2m = 1 units: running couplings lambda(R) for the
square-well and delta-shell regulators, the single shallow bound state
they produce, the cutoff-independent closed form it converges to, an
independent ODE-integration oracle, and the analytic wavefunctions.
"""

from .errors import (
    ConditioningWarning,
    FlowPoleError,
    IntegrationError,
    InvsqError,
    RootMultiplicityError,
)
from .flow import (
    FlowPoint,
    FlowPole,
    critical_ratio,
    flow_at,
    flow_delta_shell,
    flow_rhs_square_well,
    flow_square_well,
    flow_trajectory,
)
from .model import (
    G_MAX,
    G_MIN,
    Coupling,
    Cutoff,
    Extension,
    Scheme,
    coupling_from_g,
    coupling_from_nu,
    potential_value,
)
from .oracle import (
    DEFAULT_N_STEPS,
    GridSpec,
    RadialSolution,
    ShootResult,
    default_grid,
    exterior_log_derivative,
    integrate_radial,
    shoot_bound_state,
)
from .specfun import (
    bessel_i,
    bessel_i_deriv,
    bessel_k,
    bessel_k_deriv,
    bessel_k_logderiv,
    bessel_k_smallz,
    gamma_ratio,
)
from .spectrum import (
    BoundState,
    ConvergenceRow,
    Method,
    SpectralResidual,
    closed_form_k,
    convergence_study,
    deviations_monotone,
    lowenergy_lambda,
    residual_delta_shell,
    residual_square_well,
    solve_bound_state_exact,
)
from .wavefunction import (
    PiecewiseWave,
    WaveKind,
    bound_state_wave,
    decaying_integral,
    eval_wave,
    interior_mass_fraction,
    normalize,
    sample_wave,
    zero_energy_wave,
)

__all__ = [
    "BoundState",
    "ConditioningWarning",
    "ConvergenceRow",
    "Coupling",
    "Cutoff",
    "DEFAULT_N_STEPS",
    "Extension",
    "FlowPoint",
    "FlowPole",
    "FlowPoleError",
    "G_MAX",
    "G_MIN",
    "GridSpec",
    "IntegrationError",
    "InvsqError",
    "Method",
    "PiecewiseWave",
    "RadialSolution",
    "RootMultiplicityError",
    "Scheme",
    "ShootResult",
    "SpectralResidual",
    "WaveKind",
    "bessel_i",
    "bessel_i_deriv",
    "bessel_k",
    "bessel_k_deriv",
    "bessel_k_logderiv",
    "bessel_k_smallz",
    "bound_state_wave",
    "closed_form_k",
    "convergence_study",
    "coupling_from_g",
    "coupling_from_nu",
    "critical_ratio",
    "decaying_integral",
    "default_grid",
    "deviations_monotone",
    "eval_wave",
    "exterior_log_derivative",
    "flow_at",
    "flow_delta_shell",
    "flow_rhs_square_well",
    "flow_square_well",
    "flow_trajectory",
    "gamma_ratio",
    "integrate_radial",
    "interior_mass_fraction",
    "lowenergy_lambda",
    "normalize",
    "potential_value",
    "residual_delta_shell",
    "residual_square_well",
    "sample_wave",
    "shoot_bound_state",
    "solve_bound_state_exact",
    "zero_energy_wave",
]
