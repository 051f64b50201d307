"""Exact umbral calculus for Hermite, poly-Bernoulli and mixed-type polynomials."""

from .algebra import (
    AlgebraError,
    DivisionByNonInvertible,
    NegativeArgument,
    NonDeltaInner,
    NotDeltaSeries,
    Polynomial,
    Q,
    Rational,
    TruncatedSeries,
    X,
    binomial,
    compose,
    falling,
    format_rational,
    parse_rational,
    reversion,
)
from .engine import (
    ConnectionMatrix,
    InsufficientTruncation,
    LinearFunctional,
    ShefferPair,
    apply,
    connection_matrix,
    expand_in_sheffer_basis,
    pair,
    sheffer_poly,
    sheffer_recurrence_step,
)
from .families import (
    FamilyParams,
    LambdaIsOne,
    ZeroNu,
    bernoulli_number,
    bernoulli_poly,
    frobenius_euler,
    hb,
    hermite,
    poly_bernoulli,
    polylog_series,
    stirling2,
)
from .identities import (
    IDENTITY_TAGS,
    IdentityReport,
    OutOfStatedRange,
    check_identity,
    verify_grid,
)

__version__ = "0.1.0"
