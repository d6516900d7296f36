"""Conjugacy class racks of finite groups, their subrack posets, order
complexes and integral homology."""

from .complex import OrderComplex, euler_characteristic, order_complex
from .groups import (
    TRIVIAL,
    ClosureBound,
    ConjClass,
    FiniteGroup,
    NotAGroup,
    Subgroup,
    center,
    conjugacy_classes,
    group_from_cayley,
    group_from_permutations,
    is_central,
    is_normal,
    is_p_group,
    subgroup_generated,
)
from .homology import (
    HomologyProfile,
    IntegerMatrix,
    boundary_matrices,
    is_homology_sphere,
    reduced_homology,
    smith_normal_form,
)
from .poset import (
    CapExceeded,
    ImageNotBoolean,
    NotApplicable,
    PhiImage,
    SubrackPoset,
    closure_phi,
    enumerate_subracks,
    maximal_subracks_bruteforce,
    maximal_subracks_via_lemma,
    phi_image,
)
from .racks import (
    OrbitDecomposition,
    Rack,
    conjugation_rack,
    is_connected_class,
    orbit_decomposition,
    subrack_closure,
    verify_rack,
)
from .verify import GroupReport, VerifyOptions, verify_group, verify_lemma_proper

__version__ = "0.1.0"
