"""plaplab: numerical laboratory for radial stability of weighted p-Laplace
equations -div(|Du|^{p-2} Du) = |x|^alpha F(u).

Submodules
----------
exponents     closed-form critical dimensions and regime classification
transform     the de-weighting change of variables s = r^{1+alpha/p}
solver        radial shooting in flux variables + closed-form solutions
stability     second variation, Morse-index lower bounds, Hardy certificate
estimates     numerical audits of the integral estimates and identities
cli           command-line front end (also exposed as the `plaplab` script)
"""

from .errors import (
    DegenerateProfile,
    DomainError,
    FitError,
    GateError,
    PlaplabError,
    RangeError,
    SeriesFailure,
    SingularAssembly,
    StepFailure,
    SupportError,
)
from .exponents import (
    ExponentReport,
    ProblemParams,
    RegimeReport,
    Verdict,
    classify_regime,
    decay_exponent,
    exponent_report,
    fractional_dimension,
    gelfand_upper_dimension,
    power_exponents,
)
from .nonlinearity import Nonlinearity, NonlinearityTag
from .profile import RadialProfile, read_profile_csv, write_profile_csv
from .solver import (
    SolverConfig,
    explicit_critical_solution,
    explicit_gelfand_singular,
    solve_ivp,
    strong_residual,
    weak_residual,
)
from .transform import equivalence_residual, pull_back, push_forward, transformed_problem
from .stability import (
    SpectralReport,
    hardy_stability_check,
    morse_index_estimate,
    radial_stability_inequality_audit,
    second_variation,
)
from .estimates import (
    EstimateAudit,
    caccioppoli_power_audit,
    decay_fit,
    energy,
    gelfand_estimate_audit,
    inverse_gradient_integral_audit,
    pohozaev_audit,
    pointwise_gap_audit,
    strict_weight_comparison,
)

__version__ = "0.1.0"
