"""Roots of Bernstein-Sato polynomials of monomial ideals, exactly."""

__version__ = "0.1.0"

from .bpoly import (BPoly, divide_linear, from_brieskorn, from_determinant,
                    from_generic_arrangement, from_univariate_power, ideal_union_combine,
                    lcm, principal_product, tensor)
from .geometry import affine_span, hermite_form, lattice_contains, solve_linear
from .polyhedron import (build_polyhedron, enumerate_faces, face_functional, facet_m,
                         minimalize_generators, product_polyhedron)
from .semigroup import (difference_semigroup, member, product_face_residues,
                        product_roots, residue_set, roots, roots_mod_z)

__all__ = [
    "BPoly", "divide_linear", "from_brieskorn", "from_determinant",
    "from_generic_arrangement", "from_univariate_power", "ideal_union_combine", "lcm",
    "principal_product", "tensor", "affine_span", "hermite_form", "lattice_contains",
    "solve_linear", "build_polyhedron", "enumerate_faces", "face_functional", "facet_m",
    "minimalize_generators", "product_polyhedron", "difference_semigroup", "member",
    "product_face_residues", "product_roots", "residue_set", "roots", "roots_mod_z",
]
