"""Exact algebra for Legendrian lifts of monotone toric fibers."""

from .augmentation import (Augmentation, ChainMap, Matching, MCProblem, check_augmentation,
                           check_chain_map, compose_matching, mc_residual)
from .augpoly import augmentation_polynomial, descend, positive_basis, variety_member, vertex_shift
from .ce_algebra import (CEElement, CoefficientRing, DifferentialTable, Truncation, abelianize,
                         check_squares_zero, derive, exp_substitute, product, project_degree0)
from .lattice import IntegerLattice, LatticeHom, Sublattice, member_preimage, smith_normal_form, sublattice_index
from .laurent import LaurentPoly
from .leading_diff import chord_concatenations, leading_differential, t2_classical_table
from .lift import Component, Generator, LiftSpec, angle_solutions, enumerate_chords, generators
from .toric import DelzantPolytope, Facet, disk_potential, monotone_fiber, validate_delzant

__version__ = "0.1.0"
