"""High-precision Ramanujan-type continued fractions and their reciprocity laws."""

from .cfengine import CFKind, eval_cf, eval_product, evaluate
from .config import DEFAULT, Bounded, EvalConfig
from .errors import (
    CFError,
    ComplexRoots,
    DomainError,
    NegativeRootWarning,
    NoReciprocity,
    NonConvergence,
    PoleError,
    PrecisionExhausted,
    UnknownFamily,
    UnknownId,
    UnsupportedForm,
)
from .qseries import QuotientId, euler_f, legendre_chi, quotient, theta_phi, theta_psi
from .quadratic import PowerCoeffs, RootPair, periodic_cf, power_coeffs, power_residual, solve_pair
from .reciprocity import (
    Family,
    Residual,
    c_from_k,
    c_from_nome,
    conjugate_alpha,
    fundamental_residual,
    reciprocity_residual,
    registry,
)
from .values import (
    CATALOG,
    KnownValue,
    approx_R,
    error_scan,
    figure_data,
    invert_selberg,
    iterate_chain,
    known_value,
    reciprocal_step,
)

__version__ = "0.1.0"
