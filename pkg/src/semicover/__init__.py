"""Finite semi-abelian algebras, internal groupoids and their covering morphisms."""

from .algebra import (FiniteAlgebra, Homomorphism, Signature, Subalgebra, Witness, check_homomorphism,
                      check_semi_abelian_witness, generate_subalgebra, search_semi_abelian_witness,
                      validate_algebra)
from .clone import Clone, check_constant_preservation, check_normal_subalgebra, enumerate_clone
from .covering import (CoveringOfInternal, GroupoidAction, build_coset_action, canonical_action, check_action,
                       check_cover, gamma, lift_structure, phi, semidirect)
from .groupoid import (CosetSpace, FiniteGroupoid, GroupoidMorphism, characteristic_group, check_covering,
                       coset_space, find_cover_morphism, is_transitive, make_transitive_fixture, object_group,
                       star, validate_groupoid)
from .internal import (InternalGroupoid, check_internal, check_inversion_identity, discrete_internal,
                       pair_internal, star_subalgebra, vertex_subalgebra)

__version__ = "0.1.0"
