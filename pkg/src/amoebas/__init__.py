"""Certified amoeba approximation for Laurent polynomials.

The log-magnitude image of a polynomial's zero set is approximated from
outside: one term dominating all the others at a point proves the point
lies in the complement, and folding the polynomial with roots of unity
sharpens that test geometrically fast.  The fold is computed by a
divide-and-conquer sign-flip product rather than iterated resultants.
"""

from .bench import BenchResult, run_bench
from .cycres import (
    BaselineTimeout,
    TermBudgetError,
    estimate_result_terms,
    iterated_resultant_baseline,
    quick_cyclic_resultant,
)
from .gaussian import GaussianRational, LogMagnitude, log_abs
from .gridsolver import (
    GridSpec,
    MembershipRecord,
    approximate_amoeba,
    epsilon_for_grid,
    make_grid,
    records_to_csv,
    records_to_jsonl,
)
from .lopsided import (
    TAU,
    Certificate,
    CertificateError,
    TermTable,
    choose_level,
    is_lopsided,
    order_from_certificate,
)
from .newton import NewtonData, newton
from .poly import LaurentPoly, ParseError, format_poly, parse
from .semialg import Raster, SemiAlgSystem, semialg_description

__version__ = "0.1.0"

__all__ = [
    "BaselineTimeout",
    "BenchResult",
    "Certificate",
    "CertificateError",
    "GaussianRational",
    "GridSpec",
    "LaurentPoly",
    "LogMagnitude",
    "MembershipRecord",
    "NewtonData",
    "ParseError",
    "Raster",
    "SemiAlgSystem",
    "TAU",
    "TermBudgetError",
    "TermTable",
    "approximate_amoeba",
    "choose_level",
    "epsilon_for_grid",
    "estimate_result_terms",
    "format_poly",
    "is_lopsided",
    "iterated_resultant_baseline",
    "log_abs",
    "make_grid",
    "newton",
    "order_from_certificate",
    "parse",
    "quick_cyclic_resultant",
    "records_to_csv",
    "records_to_jsonl",
    "run_bench",
    "semialg_description",
    "__version__",
]
