"""fluxbound: bound states of massive fermions in point-flux backgrounds.

Spectra, wave functions and continuum spectral densities for the 2+1D Dirac
problem in an idealized flux-tube potential and for the nonrelativistic
neutral-fermion (anomalous-moment) problem in a charged-thread field, over the
full one-parameter family of self-adjoint extensions, cross-validated by an
independent ODE eigensolver.
"""

from .ab_spectrum import (
    BoundLevel,
    DiracChannel,
    Extension,
    RadialDoublet,
    Regime,
    RegimeError,
    SpectralPoint,
    bound_doublet,
    classify_channel,
    conjugate_channel,
    continuum_doublet,
    fit_boundary_xi,
    flux_decompose,
    master_xi_of_energy,
    normalize_doublet,
    paper_level_lhs,
    paper_omega,
    paper_omega_xi,
    solve_bound_energy,
    spectral_density,
)
from .ac_spectrum import (
    ACChannel,
    ACLevel,
    ACRegime,
    ac_bound_energy,
    ac_classify,
    ac_solve_cross_check,
    ac_special_levels,
    ac_wavefunction,
    ac_wronskian,
    fit_ac_boundary_xi,
)
from .numkernel import (
    Bracket,
    QuadratureResult,
    bessel_j,
    bessel_k,
    find_root_bracketed,
    gamma_fn,
    integrate_semiline,
    log_gamma,
)
from .oracle import (
    ConvergenceReport,
    OracleResult,
    ShootingConfig,
    convergence_study,
    count_dirac_levels,
    dirac_shoot,
    schrodinger_shoot,
)

__version__ = "0.1.0"
