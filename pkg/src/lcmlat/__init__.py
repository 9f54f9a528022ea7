"""Lcm-lattices, multigraded Betti numbers, and minimal free resolutions
of monomial ideals over an exact coefficient field, plus an explorer for
the lattice of all finite atomic lattices on n ordered atoms."""

__version__ = "0.1.0"

from .fields import GF, RATIONALS, FieldSpec
from .monomials import (Monomial, MonomialIdeal, divides, format_ideal, lcm,
                        minimalize_generators, parse_ideal, parse_monomial,
                        quotient_monomial)
from .lattices import (FiniteAtomicLattice, LcmLattice, NotALattice,
                       SimplicialComplexRep, Subposet, augmented_face_lattice,
                       augmented_support_family, coordinatize, lcm_lattice)
from .homology import (HomologyDims, OrderComplex, exact_rank, order_complex,
                       reduced_homology_dims)
from .classify import (BettiTable, betti_grid_text, betti_subposet, betti_table,
                       classification_report, interval_homology_invariance,
                       is_concentrated, is_lattice_linear, is_rigid)
from .resolution import (MultigradedFreeResolution, ResolutionSignature,
                         lattice_linear_support, minimalize, relabel,
                         rescale_basis, signature, signatures_equal,
                         taylor_complex, verify_resolution)
from .explorer import (LnEnumeration, StratumRecord, down_covers, enumerate_ln,
                       face_lattice_rigidity_check, find_concentrated_below,
                       join_preserving_map, lattice_key, leq_in_ln, stratify,
                       transfer_resolution, up_covers, verify_rigid_up_closure)
