"""Order complexes and exact reduced simplicial homology over a field.

Face enumeration is explicit (the complexes here are interval order
complexes with a few dozen vertices), boundary ranks are computed exactly:
fraction-free Bareiss elimination over the rationals, direct elimination
over GF(p). The reduced convention includes the empty face, so the degree
-1 group is 1-dimensional exactly for the empty complex.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm as int_lcm

from .errors import SizeLimitError
from .fields import FieldSpec, Scalar
from .lattices import SimplicialComplexRep, Subposet

MAX_FACES = 1 << 22


@dataclass(frozen=True, eq=False)
class OrderComplex:
    """Chains of a finite poset, as faces on index-numbered vertices."""

    vertices: tuple
    faces: dict[int, list[tuple[int, ...]]]

    def f_vector(self) -> tuple[int, ...]:
        if not self.faces:
            return ()
        top = max(self.faces)
        return tuple(len(self.faces.get(j, ())) for j in range(top + 1))

    @property
    def dimension(self) -> int:
        return max(self.faces) if self.faces else -1


def order_complex(poset: Subposet) -> OrderComplex:
    """The complex whose j-faces are the (j+1)-element chains of the poset."""
    elems = poset.elements
    m = len(elems)
    succ = [[j for j in range(i + 1, m) if poset.less(elems[i], elems[j])] for i in range(m)]
    faces: dict[int, list[tuple[int, ...]]] = {}
    total = 0

    def record(chain: tuple[int, ...]) -> None:
        nonlocal total
        total += 1
        if total > MAX_FACES:
            raise SizeLimitError(f"order complex exceeds {MAX_FACES} faces")
        faces.setdefault(len(chain) - 1, []).append(chain)

    def extend(chain: tuple[int, ...]) -> None:
        for j in succ[chain[-1]]:
            longer = chain + (j,)
            record(longer)
            extend(longer)

    for i in range(m):
        record((i,))
        extend((i,))
    for fs in faces.values():
        fs.sort()
    return OrderComplex(elems, faces)


def _faces_of(complex) -> dict[int, list[tuple[int, ...]]]:
    if isinstance(complex, OrderComplex):
        return complex.faces
    if isinstance(complex, SimplicialComplexRep):
        return complex.faces_by_dim()
    raise TypeError(f"expected OrderComplex or SimplicialComplexRep, got {type(complex).__name__}")


@dataclass(frozen=True)
class HomologyDims:
    """Dimensions of reduced homology; degrees with zero dimension omitted."""

    field: FieldSpec
    nonzero: tuple[tuple[int, int], ...]

    def get(self, degree: int) -> int:
        for d, v in self.nonzero:
            if d == degree:
                return v
        return 0

    def as_dict(self) -> dict[int, int]:
        return dict(self.nonzero)

    @property
    def is_acyclic(self) -> bool:
        return not self.nonzero

    def __str__(self) -> str:
        if not self.nonzero:
            return "0"
        return ", ".join(f"H~{d}={v}" for d, v in self.nonzero)


def boundary_matrix(faces: dict[int, list[tuple[int, ...]]], j: int, field: FieldSpec) -> list[list[Scalar]]:
    """Matrix of the boundary map from j-faces to (j-1)-faces.

    For j = 0 this is the augmentation onto the empty face (a single row of
    ones). Rows and columns follow the sorted face lists; signs alternate in
    vertex-index order.
    """
    cols = faces.get(j, [])
    if j == 0:
        return [[field.one() for _ in cols]]
    rows = faces.get(j - 1, [])
    index = {f: r for r, f in enumerate(rows)}
    matrix = [[field.zero() for _ in cols] for _ in rows]
    for c, face in enumerate(cols):
        for t in range(len(face)):
            sub = face[:t] + face[t + 1:]
            matrix[index[sub]][c] = field.of_int(-1 if t % 2 else 1)
    return matrix


def reduced_homology_dims(complex, field: FieldSpec) -> HomologyDims:
    """Reduced homology dimensions over the field, from exact boundary ranks."""
    faces = _faces_of(complex)
    top = max(faces) if faces else -1
    ranks = [exact_rank(boundary_matrix(faces, j, field), field) for j in range(top + 2)]
    dims: list[tuple[int, int]] = []
    h_minus1 = 1 - ranks[0]
    if h_minus1:
        dims.append((-1, h_minus1))
    for j in range(top + 1):
        h = len(faces.get(j, ())) - ranks[j] - ranks[j + 1]
        if h:
            dims.append((j, h))
    return HomologyDims(field, tuple(dims))


def exact_rank(matrix: list[list[Scalar]], field: FieldSpec) -> int:
    """Rank of a rectangular matrix over one field, by exact elimination."""
    if not matrix or not matrix[0]:
        return 0
    width = len(matrix[0])
    for row in matrix:
        if len(row) != width:
            raise ValueError("ragged matrix")
        for a in row:
            field._check(a)
    if field.is_rationals:
        return _rank_bareiss(_clear_denominators(matrix))
    return _rank_mod_p([[a % field.p for a in row] for row in matrix], field.p)


def _clear_denominators(matrix: list[list[Scalar]]) -> list[list[int]]:
    out = []
    for row in matrix:
        scale = int_lcm(*(Fraction(a).denominator for a in row)) if row else 1
        out.append([int(Fraction(a) * scale) for a in row])
    return out


def _rank_bareiss(m: list[list[int]]) -> int:
    rows, cols = len(m), len(m[0])
    rank = 0
    prev = 1
    for col in range(cols):
        piv = next((i for i in range(rank, rows) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pivot = m[rank][col]
        for i in range(rank + 1, rows):
            f = m[i][col]
            row_i, row_r = m[i], m[rank]
            for k in range(col + 1, cols):
                row_i[k] = (pivot * row_i[k] - f * row_r[k]) // prev
            row_i[col] = 0
        prev = pivot
        rank += 1
        if rank == rows:
            break
    return rank


def _rank_mod_p(m: list[list[int]], p: int) -> int:
    rows, cols = len(m), len(m[0])
    rank = 0
    for col in range(cols):
        piv = next((i for i in range(rank, rows) if m[i][col] % p != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][col], -1, p)
        row_r = m[rank]
        for i in range(rank + 1, rows):
            f = m[i][col] * inv % p
            if f:
                row_i = m[i]
                for k in range(col, cols):
                    row_i[k] = (row_i[k] - f * row_r[k]) % p
        rank += 1
        if rank == rows:
            break
    return rank


def format_matrix(matrix: list[list[Scalar]], field: FieldSpec) -> str:
    """Plain-text dump of a boundary or differential matrix, for debugging."""
    if not matrix:
        return "(empty)"
    cells = [[field.format_scalar(a) for a in row] for row in matrix]
    width = max((len(c) for row in cells for c in row), default=1)
    return "\n".join(" ".join(c.rjust(width) for c in row) for row in cells)
