"""Abelian and cyclotomic division fields of CM elliptic curves.

The library side: finite matrix groups over Z/NZ (modmat), Cartan
subgroups and their normalizers (cartan), the named candidate Galois
images at prime-power levels (images), the curve-level classification
(classifier), a finite-field sampling oracle (oracle), and the
exhaustive verification checks tying them together (verifier).
"""

from .cartan import (
    CartanParams,
    CmOrder,
    c_eps,
    c_eps_prime,
    c_matrix,
    cartan_elements,
    cartan_params,
    cartan_subgroup,
    normalizer_group,
)
from .classifier import (
    ClassificationResult,
    GeneralCM,
    J1728,
    JZero,
    classify,
    is_cyclotomic,
)
from .images import NamedImage, build_named, enumerate_verdicts, gamma_lifts_mod8
from .modmat import (
    FiniteMatrixGroup,
    Mat2,
    abelian_invariants,
    group_closure,
    is_abelian,
    is_isomorphic_s3,
    project_group,
)
from .oracle import cyclotomic_consistency_test, reduce_and_profile, splitting_statistics
from .verifier import CheckResult, VerificationReport, run_suite

__version__ = "0.1.0"

__all__ = [
    "CartanParams",
    "ClassificationResult",
    "CheckResult",
    "CmOrder",
    "FiniteMatrixGroup",
    "GeneralCM",
    "J1728",
    "JZero",
    "Mat2",
    "NamedImage",
    "VerificationReport",
    "abelian_invariants",
    "build_named",
    "c_eps",
    "c_eps_prime",
    "c_matrix",
    "cartan_elements",
    "cartan_params",
    "cartan_subgroup",
    "classify",
    "cyclotomic_consistency_test",
    "enumerate_verdicts",
    "gamma_lifts_mod8",
    "group_closure",
    "is_abelian",
    "is_cyclotomic",
    "is_isomorphic_s3",
    "normalizer_group",
    "project_group",
    "reduce_and_profile",
    "run_suite",
    "splitting_statistics",
]
