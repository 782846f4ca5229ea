"""Sumsets and restricted sumsets in finite abelian groups.

Bit-parallel set kernels (compiled when available), closed-form lower
bounds on sumset sizes, machine-checkable witness certificates for the
k-fold distinct-sum bound, and desk-scale verification campaigns.
"""

from .bounds import (
    BoundReport,
    check_instance,
    eh_pair_bound,
    iterated_bound,
    pair_bound,
    restricted_bound,
)
from .group import (
    GroupElement,
    GroupSpec,
    InvalidElementError,
    SubgroupProjection,
    TrivialGroupError,
    add,
    canonicalize_spec,
    element_of,
    enumerate_abelian_groups,
    format_group,
    index_of,
    least_prime_divisor,
    neg,
    parse_group,
    prime_index_subgroup,
    scale,
    zero,
)
from .kernels import available_backends, backend_name, get_backend, has_compiled
from .sets import (
    BudgetError,
    ElementSet,
    GroupMismatchError,
    empty_set,
    format_set,
    from_elements,
    from_indices,
    full_set,
    graded_restricted_sum,
    iterated_sumset,
    oracle_restricted_sumset,
    parse_set,
    project,
    restricted_sumset,
    singleton,
    sumset,
    translate,
    translate_index,
    zero_singleton,
)
from .verify import (
    CampaignConfig,
    CampaignReport,
    bench_kernels,
    compare_backends,
    extremal_search,
    render_report,
    run_campaign,
)
from .witness import (
    CaseRoutingError,
    Certificate,
    CertificateError,
    CosetDecomposition,
    MultiplicityProfile,
    ValidationReport,
    build_multiplicity_profile,
    build_witness,
    certificate_from_json,
    certificate_to_json,
    check_profile_invariants,
    decompose_by_prime_index_subgroup,
    validate_certificate,
)

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "BudgetError",
    "CampaignConfig",
    "CampaignReport",
    "CaseRoutingError",
    "Certificate",
    "CertificateError",
    "CosetDecomposition",
    "ElementSet",
    "GroupElement",
    "GroupMismatchError",
    "GroupSpec",
    "InvalidElementError",
    "MultiplicityProfile",
    "SubgroupProjection",
    "TrivialGroupError",
    "ValidationReport",
    "add",
    "available_backends",
    "backend_name",
    "bench_kernels",
    "build_multiplicity_profile",
    "build_witness",
    "canonicalize_spec",
    "certificate_from_json",
    "certificate_to_json",
    "check_instance",
    "check_profile_invariants",
    "compare_backends",
    "decompose_by_prime_index_subgroup",
    "eh_pair_bound",
    "element_of",
    "empty_set",
    "enumerate_abelian_groups",
    "extremal_search",
    "format_group",
    "format_set",
    "from_elements",
    "from_indices",
    "full_set",
    "get_backend",
    "graded_restricted_sum",
    "has_compiled",
    "index_of",
    "iterated_bound",
    "iterated_sumset",
    "least_prime_divisor",
    "neg",
    "oracle_restricted_sumset",
    "pair_bound",
    "parse_group",
    "parse_set",
    "prime_index_subgroup",
    "project",
    "render_report",
    "restricted_bound",
    "restricted_sumset",
    "run_campaign",
    "scale",
    "singleton",
    "sumset",
    "translate",
    "translate_index",
    "validate_certificate",
    "zero",
    "zero_singleton",
]
