"""Two-qubit damping-channel simulation and l1-coherence analysis.

Evolves 4x4 density matrices through repeated amplitude- or phase-damping
on either or both qubits, tracks l1-norm coherence along the way (both by
iterated Kraus application and by closed-form expressions), and decides
exactly which states keep their coherence frozen.

The hot kernels run from a compiled extension when available and from a
pure-python fallback otherwise; `damplab.BACKEND` names the active one.
"""

from .channels import ChannelSpec, apply_n, closed_form_ad, gamma_from_time, kraus_ops
from .coherence import (
    CoherenceReport,
    analytic_coherence_ad,
    asymptotic_coherence_ad,
    evolve_report,
    is_maximally_coherent,
    l1_coherence,
)
from .errors import (
    ConsistencyError,
    DamplabError,
    MatrixFormatError,
    NonTracePreservingError,
    NotHermitianError,
    NotPositiveError,
    NotUnitTraceError,
    ParamOutOfRangeError,
    UnknownStateError,
    ValidationError,
)
from .kernels import BACKEND
from .qmat import apply_kraus, matrix_from_json, matrix_to_json, tensor, validate_density
from .states import (
    bell_phi_plus,
    coherent_incoherent,
    from_json,
    incoherent_coherent,
    m1,
    m2,
    m3,
    max_coherent_qubit,
    random_density,
)
from .structure import FrozenReason, FrozenVerdict, StateClass, classify, frozen_predicate, same_argument
from .tolerances import TOL_ORACLE, TOL_STRUCT

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "TOL_ORACLE",
    "TOL_STRUCT",
    "ChannelSpec",
    "CoherenceReport",
    "FrozenReason",
    "FrozenVerdict",
    "StateClass",
    "analytic_coherence_ad",
    "apply_kraus",
    "apply_n",
    "asymptotic_coherence_ad",
    "bell_phi_plus",
    "classify",
    "closed_form_ad",
    "coherent_incoherent",
    "evolve_report",
    "from_json",
    "frozen_predicate",
    "gamma_from_time",
    "incoherent_coherent",
    "is_maximally_coherent",
    "kraus_ops",
    "l1_coherence",
    "m1",
    "m2",
    "m3",
    "matrix_from_json",
    "matrix_to_json",
    "max_coherent_qubit",
    "random_density",
    "same_argument",
    "tensor",
    "validate_density",
    "ConsistencyError",
    "DamplabError",
    "MatrixFormatError",
    "NonTracePreservingError",
    "NotHermitianError",
    "NotPositiveError",
    "NotUnitTraceError",
    "ParamOutOfRangeError",
    "UnknownStateError",
    "ValidationError",
]
