"""Bundled example ideals and complexes used by the CLI files and tests."""

from __future__ import annotations

from .lattices import (NotALattice, SimplicialComplexRep, augmented_face_lattice,
                       coordinatize)
from .monomials import MonomialIdeal, parse_monomial


def _ideal(vars: tuple[str, ...], *gens: str) -> MonomialIdeal:
    return MonomialIdeal(tuple(parse_monomial(g, vars) for g in gens))


def rigid_demo_ideal() -> MonomialIdeal:
    """Three quadrics in two variables; rigid, concentrated, lattice-linear."""
    return _ideal(("a", "b"), "a^2", "a*b", "b^2")


def nonrigid_demo_ideal() -> MonomialIdeal:
    """Three generators whose first syzygy degrees are comparable; not rigid."""
    return _ideal(("a", "b", "c"), "b*c", "a*c", "a^2*b")


def three_triangles_complex() -> SimplicialComplexRep:
    """Three triangles glued pairwise at three vertices (a homotopy circle)."""
    return SimplicialComplexRep.from_vertex_sets(6, [{1, 2, 4}, {2, 3, 5}, {4, 5, 6}])


def three_triangles_ideal() -> MonomialIdeal:
    """A coordinatization of the augmented face lattice of the glued triangles.

    Generator i is the label of vertex i. Concentrated but neither rigid nor
    lattice-linear: the top multidegree contributes in homological degree 3,
    as do the elements it covers.
    """
    vars = ("a", "b", "c", "u", "v", "w", "x", "y", "z")
    return _ideal(
        vars,
        "c*u^2*v*w*x^2*y*z",
        "b*w*x^2*y*z",
        "a^2*b*c*v*x^2*y*z",
        "a*u^2*v*w*z",
        "a^2*b*c*u*y",
        "a^2*b*c*u^2*v*w*x",
    )


def dispersed_rigid_ideal() -> MonomialIdeal:
    """Five generators on four variables; rigid but dispersed.

    The join of atoms 1, 3 and 5 carries no Betti number yet is not above
    every contributing element, and deleting it breaks meet-closure, so no
    concentrated rigid lattice sits below this one in its stratum.
    """
    return _ideal(("a", "b", "c", "d"), "b*d", "c*d^2", "a*c", "c^2*d", "a*b")


def dispersed_rigid_cells() -> list[set[int]]:
    """The cell family (vertex sets) of the ball that supports the minimal
    resolution of the dispersed demo ideal: 5 vertices, 7 edges, two
    triangles, two squares, one 3-cell. Its augmented face family is not
    meet-closed (the squares intersect in three vertices)."""
    vertices = [{i} for i in range(1, 6)]
    edges = [{1, 4}, {1, 2}, {2, 4}, {2, 3}, {3, 4}, {3, 5}, {1, 5}]
    two_cells = [{1, 2, 4}, {2, 3, 4}, {1, 3, 4, 5}, {1, 2, 3, 5}]
    three_cell = [{1, 2, 3, 4, 5}]
    return vertices + edges + two_cells + three_cell


def rp2_triangulation() -> SimplicialComplexRep:
    """The 6-vertex triangulation of the real projective plane (10 facets)."""
    facets = [
        {1, 2, 3}, {1, 2, 4}, {1, 3, 5}, {1, 4, 6}, {1, 5, 6},
        {2, 3, 6}, {2, 4, 5}, {2, 5, 6}, {3, 4, 5}, {3, 4, 6},
    ]
    return SimplicialComplexRep.from_vertex_sets(6, facets)


def rp2_ideal() -> MonomialIdeal:
    """Coordinatization of the augmented face lattice of the 6-vertex
    projective plane; rigid away from characteristic 2 only."""
    lattice = augmented_face_lattice(rp2_triangulation())
    if isinstance(lattice, NotALattice):
        raise AssertionError(f"triangulation must give a lattice: {lattice.reason}")
    return coordinatize(lattice)
