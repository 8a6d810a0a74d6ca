"""High-precision evaluation of F(s) = zeta(s) - psi(1-s) on (0, 1) and a
machine-checked ledger for its convexity and linear bounds."""

from .certificate import (
    HFamily,
    I1_check,
    I2_envelope,
    I2_eval,
    I3_bound,
    J_direct,
    P_equivalence_check,
    P_eval,
    boundary_limits,
    convexity_chain,
    sigma_eval,
)
from .errors import (
    AccelerationStalled,
    DepthExceeded,
    DomainError,
    ExtrapolationDiverged,
    NoBracket,
    NumericalError,
    OrderUnavailable,
    OutOfDisk,
    OutOfDomain,
    PoleAtOne,
    TailNotConverged,
    TooFarFromPole,
    TooManyTerms,
    UnsupportedIndex,
    ViolationFound,
    ZetaPsiError,
)
from .inequality import (
    F,
    G,
    F_derivatives,
    F_prime,
    F_second,
    G_prime,
    LinearBound,
    MinimumReport,
    conjecture_original_form,
    find_minimum,
    reflection_equivalence,
    sharpness_check,
    verify_bounds,
)
from .numerics import DEFAULT_CONTEXT, Approx, GridSpec, PrecisionContext
from .report import BoundEntry, CertificateReport
from .representations import (
    F_direct,
    F_prime_integral,
    F_second_integral,
    digamma_via_integral,
    zeta_via_stieltjes_integral,
)
from .special_fn import (
    StieltjesConstants,
    digamma,
    polygamma,
    psi_series,
    stieltjes_constants,
    stieltjes_gamma,
    zeta,
    zeta_deriv,
    zeta_laurent,
)

__version__ = "0.1.0"
