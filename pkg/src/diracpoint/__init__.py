"""Solitary waves of the 1D Dirac equation with a point Soler-type coupling,
the closed-form spectrum of the linearization at them, and a numerical
root-finding oracle that verifies every closed form on the raw dispersion
determinants, including two symmetry-breaking perturbed models."""

from .core import (
    BranchLostError,
    ConvergenceError,
    DomainError,
    ModelParams,
    Nonlinearity,
    NoSolutionError,
    WaveGeometry,
    eval_f,
    geometry,
    principal_sqrt,
)
from .waves import (
    BrokenWaveConstants,
    SolitaryWave,
    charge_Q,
    dQ_domega,
    jump_condition_residual,
    make_zero_frequency_wave,
    profile,
    solve_amplitude_type1,
    solve_amplitude_type2,
    solve_parity_broken,
    solve_parity_preserved,
)
from .spectrum import (
    Eigenvalue,
    LambdaPair,
    QuarticCoeffs,
    SpectralClassification,
    Thresholds,
    VirtualLevel,
    X_of_Lambda,
    Lambda_of_X,
    L_point_spectrum,
    classify,
    discriminant_factorization,
    lambda_pm,
    omega_kolokolov,
    omega_double_root,
    quartic_coeffs,
    roots_X,
    thresholds,
    virtual_levels,
)
from .dispersion import (
    BranchData,
    Rectangle,
    RootRecord,
    TrackResult,
    branch_data,
    det_oddeven,
    det_parity_broken,
    det_parity_broken_block_D,
    det_parity_preserved,
    find_roots,
    gamma,
    gamma_roots,
    nontrivial_roots,
    track_root,
)
from .perturbation import (
    PerturbationResult,
    ScalingStudy,
    leading_im_zeta,
    omega_of_mu,
    scaling_study,
    zeta_parity_broken,
    zeta_parity_preserved,
)

__version__ = "0.1.0"
