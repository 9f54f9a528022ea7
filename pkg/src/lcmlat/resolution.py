"""Multigraded free resolutions: Taylor complexes and their minimalization.

A resolution stores, per homological degree, the basis multidegrees and the
scalar part of each differential matrix. The monomial factor of an entry is
always the quotient of the column multidegree by the row multidegree, so
only the field scalar is kept; homogeneity makes the monomial redundant.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from .errors import SizeLimitError
from .fields import FieldSpec, Scalar
from .homology import exact_rank
from .lattices import LcmLattice, lcm_lattice
from .monomials import Monomial, MonomialIdeal

Matrix = tuple[tuple[Scalar, ...], ...]


@dataclass(frozen=True, eq=False)
class MultigradedFreeResolution:
    """Basis multidegrees per degree plus scalar differential matrices.

    `differentials[k]` is the matrix of the map from degree k+1 to degree k:
    rows are indexed by `bases[k]`, columns by `bases[k+1]`.
    """

    field: FieldSpec
    bases: tuple[tuple[Monomial, ...], ...]
    differentials: tuple[Matrix, ...]

    def __post_init__(self) -> None:
        if len(self.differentials) != len(self.bases) - 1:
            raise ValueError("need exactly one differential per consecutive pair of degrees")
        for k, mat in enumerate(self.differentials):
            if len(mat) != len(self.bases[k]):
                raise ValueError(f"differential {k + 1} has {len(mat)} rows, expected {len(self.bases[k])}")
            for row in mat:
                if len(row) != len(self.bases[k + 1]):
                    raise ValueError(f"differential {k + 1} has a row of width {len(row)}, "
                                     f"expected {len(self.bases[k + 1])}")

    @property
    def length(self) -> int:
        return len(self.bases) - 1

    def d(self, i: int) -> Matrix:
        """Matrix of the differential leaving homological degree i."""
        if not 1 <= i <= self.length:
            raise IndexError(f"no differential at degree {i}")
        return self.differentials[i - 1]

    def ranks(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.bases)

    def nonzero_entries(self):
        """Yield (i, row multidegree, column multidegree, scalar) for d_i."""
        for i in range(1, self.length + 1):
            mat = self.d(i)
            rows = self.bases[i - 1]
            cols = self.bases[i]
            for r, row in enumerate(mat):
                for c, s in enumerate(row):
                    if not self.field.is_zero(s):
                        yield i, rows[r], cols[c], s

    def is_homogeneous(self) -> bool:
        return all(rm.divides(cm) for _, rm, cm, _ in self.nonzero_entries())

    def composes_to_zero(self) -> bool:
        f = self.field
        for i in range(1, self.length):
            a, b = self.d(i), self.d(i + 1)
            mid = len(self.bases[i])
            for r in range(len(self.bases[i - 1])):
                for c in range(len(self.bases[i + 1])):
                    total = f.zero()
                    for m in range(mid):
                        total = f.add(total, f.mul(a[r][m], b[m][c]))
                    if not f.is_zero(total):
                        return False
        return True

    def is_minimal(self) -> bool:
        """No nonzero entry joining equal row and column multidegrees."""
        return all(rm != cm for _, rm, cm, _ in self.nonzero_entries())

    def to_json_dict(self) -> dict:
        return {
            "field": str(self.field),
            "ranks": list(self.ranks()),
            "bases": [[str(m) for m in basis] for basis in self.bases],
            "differentials": [
                {"i": k + 1,
                 "rows": [str(m) for m in self.bases[k]],
                 "cols": [str(m) for m in self.bases[k + 1]],
                 "entries": [[self.field.format_scalar(s) for s in row] for row in mat]}
                for k, mat in enumerate(self.differentials)
            ],
        }


def taylor_complex(ideal: MonomialIdeal, field: FieldSpec) -> MultigradedFreeResolution:
    """The Taylor resolution: one basis element per subset of the generators.

    The degree-i basis lists the i-subsets in lexicographic order, each with
    multidegree the lcm of its generators; the entry from a subset to the
    subset with its t-th generator removed is the sign (-1)^t.
    """
    gens = ideal.generators
    n = len(gens)
    if n > 20:
        raise SizeLimitError(f"Taylor complex of {n} generators would have 2^{n} basis elements")
    one = Monomial.one(ideal.vars)

    def subset_lcm(subset: tuple[int, ...]) -> Monomial:
        out = one
        for t in subset:
            out = out.lcm(gens[t])
        return out

    subsets = [list(combinations(range(n), i)) for i in range(n + 1)]
    bases = tuple(tuple(subset_lcm(s) for s in level) for level in subsets)
    mats = []
    for i in range(1, n + 1):
        index = {s: r for r, s in enumerate(subsets[i - 1])}
        mat = [[field.zero() for _ in subsets[i]] for _ in subsets[i - 1]]
        for c, subset in enumerate(subsets[i]):
            for t in range(len(subset)):
                reduced = subset[:t] + subset[t + 1:]
                mat[index[reduced]][c] = field.of_int(-1 if t % 2 else 1)
        mats.append(tuple(tuple(row) for row in mat))
    return MultigradedFreeResolution(field, bases, tuple(mats))


def _mutable(res: MultigradedFreeResolution):
    bases = [list(b) for b in res.bases]
    mats = [[list(row) for row in mat] for mat in res.differentials]
    return bases, mats


def _freeze(field: FieldSpec, bases, mats) -> MultigradedFreeResolution:
    while len(bases) > 1 and not bases[-1]:
        bases.pop()
        mats.pop()
    return MultigradedFreeResolution(
        field,
        tuple(tuple(b) for b in bases),
        tuple(tuple(tuple(row) for row in mat) for mat in mats))


def _candidate_pivots(field: FieldSpec, bases, mats):
    """Unit entries with equal row and column multidegrees, scan order fixed.

    Degrees are scanned from high to low; within a degree, columns and rows
    are visited in canonical multidegree order (exponent tuple, then index).
    """
    for i in range(len(mats), 0, -1):
        mat = mats[i - 1]
        rows = bases[i - 1]
        cols = bases[i]
        col_order = sorted(range(len(cols)), key=lambda c: (cols[c].exponents, c))
        row_order = sorted(range(len(rows)), key=lambda r: (rows[r].exponents, r))
        for c in col_order:
            for r in row_order:
                if rows[r] == cols[c] and not field.is_zero(mat[r][c]):
                    yield i, r, c


def _cancel(field: FieldSpec, bases, mats, i: int, r0: int, c0: int) -> None:
    mat = mats[i - 1]
    unit = mat[r0][c0]
    inv = field.inv(unit)
    rows = range(len(bases[i - 1]))
    cols = range(len(bases[i]))
    mats[i - 1] = [[field.sub(mat[r][c], field.mul(field.mul(mat[r][c0], inv), mat[r0][c]))
                    for c in cols if c != c0]
                   for r in rows if r != r0]
    if i < len(mats):
        mats[i] = [row for r, row in enumerate(mats[i]) if r != c0]
    if i > 1:
        mats[i - 2] = [[v for c, v in enumerate(row) if c != r0] for row in mats[i - 2]]
    bases[i].pop(c0)
    bases[i - 1].pop(r0)


def minimalize(res: MultigradedFreeResolution,
               pivot_seed: int | None = None) -> MultigradedFreeResolution:
    """Cancel unit entries between equal multidegrees until none remain.

    With the default pivot schedule the output is deterministic. Passing a
    seed shuffles the pivot choice at every step, which is useful for
    checking that the outcome does not depend on the schedule.
    """
    bases, mats = _mutable(res)
    rng = random.Random(pivot_seed) if pivot_seed is not None else None
    while True:
        if rng is None:
            pick = next(_candidate_pivots(res.field, bases, mats), None)
            if pick is None:
                break
        else:
            candidates = list(_candidate_pivots(res.field, bases, mats))
            if not candidates:
                break
            pick = rng.choice(candidates)
        _cancel(res.field, bases, mats, *pick)
    return _freeze(res.field, bases, mats)


@dataclass(frozen=True)
class ResolutionReport:
    ok: bool
    failures: tuple[str, ...] = ()
    witness: Monomial | None = None

    def __bool__(self) -> bool:
        return self.ok


def verify_resolution(res: MultigradedFreeResolution, ideal: MonomialIdeal) -> ResolutionReport:
    """Check homogeneity, d(d(x)) = 0, and exactness of every scalar strand.

    The strand at a lattice element keeps the basis elements whose
    multidegree divides its label; strands between lattice degrees are
    constant, so checking at lattice elements is a complete exactness test.
    """
    failures: list[str] = []
    witness: Monomial | None = None
    if len(res.bases[0]) != 1 or not res.bases[0][0].is_one:
        failures.append("degree 0 basis is not a single multidegree 1")
    for i, rm, cm, _ in res.nonzero_entries():
        if not rm.divides(cm):
            failures.append(f"inhomogeneous entry in d_{i}: {rm} does not divide {cm}")
            witness = witness or cm
            break
    if not res.composes_to_zero():
        failures.append("d o d is nonzero")
    if failures:
        return ResolutionReport(False, tuple(failures), witness)

    lat = lcm_lattice(ideal)
    for mask in lat.lattice.elements:
        label = lat.label(mask)
        strand = [[k for k, m in enumerate(basis) if m.divides(label)] for basis in res.bases]
        sizes = [len(s) for s in strand]
        if mask == 0:
            if sizes != [1] + [0] * (len(sizes) - 1):
                failures.append("strand at the bottom is not the single degree-0 element")
                witness = witness or label
            continue
        ranks = []
        for i in range(1, len(res.bases)):
            rows, cols = strand[i - 1], strand[i]
            mat = res.d(i)
            sub = [[mat[r][c] for c in cols] for r in rows]
            ranks.append(exact_rank(sub, res.field))
        ranks.append(0)
        if sizes[0] - ranks[0] != 0:
            failures.append(f"strand at {label}: H_0 has dimension {sizes[0] - ranks[0]}")
            witness = witness or label
            continue
        for i in range(1, len(res.bases)):
            if sizes[i] - ranks[i - 1] != ranks[i]:
                failures.append(f"strand at {label}: not exact at homological degree {i}")
                witness = witness or label
                break
    return ResolutionReport(not failures, tuple(failures), witness)


def lattice_linear_support(res: MultigradedFreeResolution, lat: LcmLattice) -> bool:
    """True when every nonzero entry joins a cover pair of the lcm-lattice.

    Exact for rigid ideals (the minimal basis is unique up to scaling); for
    other ideals this certifies the given basis only.
    """
    cover_labels = {(lat.label(lo), lat.label(hi)) for lo, hi in lat.lattice.covers}
    known = set(lat.mask_by_label)
    for _, rm, cm, _ in res.nonzero_entries():
        if rm not in known or cm not in known:
            missing = rm if rm not in known else cm
            raise ValueError(f"multidegree {missing} is not a label of the lattice")
        if (rm, cm) not in cover_labels:
            return False
    return True


@dataclass(frozen=True)
class ResolutionSignature:
    """Scaling-invariant witness of a resolution: multidegree data only.

    Per homological degree, the multiset of basis multidegrees and the set
    of (row, column) multidegree pairs carrying a nonzero entry. Invariant
    under basis reordering and independent rescaling by units.
    """

    degree_multisets: tuple[tuple[Monomial, ...], ...]
    adjacency: tuple[frozenset, ...]


def signature(res: MultigradedFreeResolution) -> ResolutionSignature:
    multisets = tuple(tuple(sorted(basis, key=lambda m: m.exponents)) for basis in res.bases)
    adj: list[set] = [set() for _ in range(res.length)]
    for i, rm, cm, _ in res.nonzero_entries():
        adj[i - 1].add((rm, cm))
    return ResolutionSignature(multisets, tuple(frozenset(a) for a in adj))


def _apply_map(mono: Monomial, element_map) -> Monomial:
    if element_map is None:
        return mono
    if callable(element_map):
        out = element_map(mono)
    else:
        try:
            out = element_map[mono]
        except KeyError:
            raise ValueError(f"element map is not defined on {mono}") from None
    if out is None:
        raise ValueError(f"element map is not defined on {mono}")
    return out


def signatures_equal(s1: ResolutionSignature, s2: ResolutionSignature,
                     element_map=None) -> bool:
    """Compare signatures after pushing the first through the element map."""
    if len(s1.degree_multisets) != len(s2.degree_multisets):
        return False
    mapped_multisets = tuple(
        tuple(sorted((_apply_map(m, element_map) for m in level), key=lambda m: m.exponents))
        for level in s1.degree_multisets)
    if mapped_multisets != s2.degree_multisets:
        return False
    mapped_adj = tuple(
        frozenset((_apply_map(r, element_map), _apply_map(c, element_map)) for r, c in level)
        for level in s1.adjacency)
    return mapped_adj == s2.adjacency


def relabel(res: MultigradedFreeResolution, element_map) -> MultigradedFreeResolution:
    """Replace every basis multidegree through an order-preserving map.

    Scalar matrices are untouched. Homogeneity is re-checked on the result;
    a map that breaks row-divides-column on some nonzero entry is rejected.
    """
    new_bases = tuple(tuple(_apply_map(m, element_map) for m in basis) for basis in res.bases)
    out = MultigradedFreeResolution(res.field, new_bases, res.differentials)
    for i, rm, cm, _ in out.nonzero_entries():
        if not rm.divides(cm):
            raise ValueError(f"order violation: relabeled d_{i} entry {rm} -> {cm} is inhomogeneous")
    return out


def rescale_basis(res: MultigradedFreeResolution,
                  units: list[list[Scalar]]) -> MultigradedFreeResolution:
    """Rescale each basis vector by a unit; differentials adjust accordingly."""
    f = res.field
    for level, basis in zip(units, res.bases):
        if len(level) != len(basis):
            raise ValueError("one unit per basis vector required")
        for u in level:
            if f.is_zero(u):
                raise ValueError("rescaling units must be nonzero")
    mats = []
    for k, mat in enumerate(res.differentials):
        row_units = units[k]
        col_units = units[k + 1]
        mats.append(tuple(
            tuple(f.mul(f.mul(col_units[c], mat[r][c]), f.inv(row_units[r]))
                  for c in range(len(mat[r])))
            for r in range(len(mat))))
    return MultigradedFreeResolution(res.field, res.bases, tuple(mats))
