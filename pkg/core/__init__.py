from core.criteria import (
    SplitSubalgebra,
    benoist_check,
    benoist_witness,
    kobayashi_pair_check,
    sl2_obstruction,
    weyl_membership,
)
from core.exact import ExactScalar, IrrationalBasis, default_basis, format_scalar, parse_scalar
from core.replay import CertificateReplayer
from core.root_data import CartanPoint, WeylElement, act, inner, parse_cartan_point
from core.sl2_orbits import Partition, a_phi, hyperbolic_set, partitions
from core.types import *

__all__ = [
    # Exact
    "ExactScalar",
    "IrrationalBasis",
    "default_basis",
    "format_scalar",
    "parse_scalar",
    # Root data
    "CartanPoint",
    "WeylElement",
    "act",
    "inner",
    "parse_cartan_point",
    # sl2
    "Partition",
    "a_phi",
    "hyperbolic_set",
    "partitions",
    # Criteria
    "SplitSubalgebra",
    "benoist_check",
    "benoist_witness",
    "kobayashi_pair_check",
    "sl2_obstruction",
    "weyl_membership",
    "CertificateReplayer",
    # Types
    "CertificateKind",
    "MembershipVerdict",
    "BenoistVerdict",
    "PairVerdict",
    "Equation",
    "ImageMiss",
    "PairImage",
    "Certificate",
    "MembershipCertificate",
    "BenoistCertificate",
    "Sl2Entry",
    "Sl2Report",
    "PairCertificate",
    "ClauseResult",
    "CounterexampleReport",
]
