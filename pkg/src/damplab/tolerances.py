"""The two tolerance regimes used throughout the package.

TOL_STRUCT guards structural validation of user-supplied data (Hermiticity,
unit trace, positivity, classification cutoffs). TOL_ORACLE guards pure
arithmetic: closed-form results against their iterated counterparts.
"""

import os

TOL_STRUCT = 1e-9
TOL_ORACLE = 1e-12


def oracle_tol() -> float:
    """TOL_ORACLE, unless overridden through the DAMPLAB_TOL env var."""
    raw = os.environ.get("DAMPLAB_TOL")
    return float(raw) if raw else TOL_ORACLE
