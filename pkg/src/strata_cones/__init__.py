"""Exact weight-cone computations for Goren-Oort strata of Hilbert modular varieties.

The package has five layers:

* `cone_kernel`: exact rational polyhedral cones (double description,
  duality, membership certificates, Fourier-Motzkin projection);
* `splitting`: Frobenius-orbit combinatorics of strata (chains, tilde
  closure, ramification and Iwahori data, index tables);
* `weights`: distinguished weights, generating sets and half-space
  descriptions of the weight cones, reductions, minimal cones, section
  recipes, and the bi-weight variant;
* `verify`: theorem checkers and the exhaustive sweep explorer;
* `cli`: the `strata-cones` command.
"""

from strata_cones.cone_kernel import (
    Cone,
    ConstraintRep,
    GeneratorRep,
    MembershipCertificate,
    certificate_valid,
    cone_complete,
    cone_dual,
    cone_equal,
    cone_from_constraints,
    cone_from_rays,
    cone_image,
    cone_intersect,
    cone_lineality,
    cone_member,
    cone_project,
    cone_subset,
    cone_sum,
    full_space,
    normalize_primitive,
    zero_cone,
)

__all__ = [
    "Cone",
    "ConstraintRep",
    "GeneratorRep",
    "MembershipCertificate",
    "certificate_valid",
    "cone_complete",
    "cone_dual",
    "cone_equal",
    "cone_from_constraints",
    "cone_from_rays",
    "cone_image",
    "cone_intersect",
    "cone_lineality",
    "cone_member",
    "cone_project",
    "cone_subset",
    "cone_sum",
    "full_space",
    "normalize_primitive",
    "zero_cone",
]

__version__ = "0.1.0"
