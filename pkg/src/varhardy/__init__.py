"""Numerics for variable-exponent Lebesgue and Hardy spaces.

Exponents are symbolic piecewise objects; boundary data lives on uniform
circle grids or truncated line grids; norms come from bracketed monotone
root-finding on the modular.  On top of that sit the Poisson and Szegoe
transforms on the disk, reproducing-kernel scaling experiments, and the
half-plane analogues, all exposed through the ``varhardy`` command line.
"""

from .boundary import CircleFunction, LineFunction, Singularity, TailModel
from .disk import (
    DiskSampler,
    HardyReport,
    boundary_recovery_check,
    dyadic_radii,
    fourier_coefficients,
    hardy_norm,
    inclusion_check,
    membership_pair_report,
    poisson_dilate,
    poisson_extension,
    poisson_kernel,
    reproduce_at,
    szego_project,
)
from .exponents import (
    ConjugateExponent,
    PiecewiseExponent,
    RegularityReport,
    VariableExponent,
    conjugate,
    constant_exponent,
    counterexample_exponent,
    essential_bounds,
    lh_demo_exponent,
    lh_infinity_constant,
    log_holder_constant,
    make_piecewise_exponent,
    resolve_exponent,
)
from .halfplane import (
    HalfplaneSampler,
    approximate_identity_check,
    boundary_representation_check,
    halfplane_hardy_norm,
    hk_bound_check,
    kernel_mass,
    poisson_convolve,
    poisson_kernel_halfplane,
)
from .kernels import (
    ScalingReport,
    evaluation_bound_experiment,
    forelli_rudin_check,
    kernel_boundary_values,
    kernel_hardy_norm,
    phi_majorization_check,
)
from .norms import (
    NormResult,
    holder_pairing,
    indicator_norm,
    luxemburg_norm,
    modular,
    norm_constant_exponent,
)

__version__ = "0.1.0"
