"""Finite atomic lattices as intersection-closed families of atom supports.

An element is encoded as the bitmask of atoms below it (bit i-1 = atom i).
The family always contains the empty mask, every singleton, and the full
mask, and is closed under pairwise AND; joins are smallest-superset lookups.
This makes the order on lattices with the same atoms a plain subset relation
on families.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property

from .errors import AmbientMismatchError, LatticeError
from .monomials import Monomial, MonomialIdeal

MAX_ATOMS = 63


def _canonical_key(mask: int) -> tuple[int, int]:
    return (mask.bit_count(), mask)


def mask_to_atoms(mask: int) -> list[int]:
    """1-indexed atom list of a support mask."""
    return [i + 1 for i in range(mask.bit_length()) if mask >> i & 1]


def atoms_to_mask(atoms) -> int:
    mask = 0
    for a in atoms:
        if a < 1:
            raise LatticeError(f"atoms are 1-indexed, got {a}")
        mask |= 1 << (a - 1)
    return mask


def format_mask(mask: int) -> str:
    return "{" + ",".join(str(a) for a in mask_to_atoms(mask)) + "}"


@dataclass(frozen=True)
class Subposet:
    """An induced subposet of support masks, ordered by containment."""

    elements: tuple[int, ...]

    def __post_init__(self) -> None:
        elems = sorted(set(self.elements), key=_canonical_key)
        object.__setattr__(self, "elements", tuple(elems))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, mask: int) -> bool:
        return mask in set(self.elements)

    @staticmethod
    def less(a: int, b: int) -> bool:
        return a != b and a & b == a

    def open_interval(self, top: int) -> "Subposet":
        return Subposet(tuple(x for x in self.elements if 0 < x < top and x & top == x and x != top))


@dataclass(frozen=True)
class FiniteAtomicLattice:
    """Support-family encoding of a finite atomic lattice on n ordered atoms."""

    n: int
    elements: tuple[int, ...]

    def __post_init__(self) -> None:
        elems = tuple(sorted(set(self.elements), key=_canonical_key))
        object.__setattr__(self, "elements", elems)
        self._validate()

    def _validate(self) -> None:
        n = self.n
        if not isinstance(n, int) or not 1 <= n <= MAX_ATOMS:
            raise LatticeError(f"atom count must be in 1..{MAX_ATOMS}, got {n!r}")
        members = set(self.elements)
        full = (1 << n) - 1
        for mask in members:
            if not 0 <= mask <= full:
                raise LatticeError(f"mask {mask} out of range for {n} atoms")
        if 0 not in members:
            raise LatticeError("missing bottom element (empty support)")
        if full not in members:
            raise LatticeError("missing top element (full support)")
        for i in range(n):
            if (1 << i) not in members:
                raise LatticeError(f"missing atom {{{i + 1}}}")
        elems = self.elements
        for i, a in enumerate(elems):
            for b in elems[i + 1:]:
                if a & b not in members:
                    raise LatticeError(
                        f"not intersection-closed: {format_mask(a)} & {format_mask(b)}"
                        f" = {format_mask(a & b)} is missing")

    @classmethod
    def _trusted(cls, n: int, canonical_elements: tuple[int, ...]) -> "FiniteAtomicLattice":
        """Construct without validation; caller guarantees the axioms."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "n", n)
        object.__setattr__(obj, "elements", canonical_elements)
        return obj

    # basic structure

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return (1 << self.n) - 1

    @property
    def atoms(self) -> tuple[int, ...]:
        return tuple(1 << i for i in range(self.n))

    @cached_property
    def member_set(self) -> frozenset[int]:
        return frozenset(self.elements)

    def __contains__(self, mask: int) -> bool:
        return mask in self.member_set

    def __len__(self) -> int:
        return len(self.elements)

    def _require_member(self, mask: int) -> None:
        if mask not in self.member_set:
            raise LatticeError(f"{format_mask(mask)} is not a lattice element")

    def leq(self, a: int, b: int) -> bool:
        self._require_member(a)
        self._require_member(b)
        return a & b == a

    def meet(self, a: int, b: int) -> int:
        self._require_member(a)
        self._require_member(b)
        return a & b

    def join(self, a: int, b: int) -> int:
        self._require_member(a)
        self._require_member(b)
        union = a | b
        out = self.top
        for m in self.elements:
            if m & union == union:
                out &= m
        return out

    @cached_property
    def covers(self) -> tuple[tuple[int, int], ...]:
        """All pairs (lower, upper) with upper covering lower."""
        elems = self.elements
        out = []
        for a in elems:
            for b in elems:
                if a != b and a & b == a:
                    if not any(a & c == a and c & b == c and c != a and c != b for c in elems):
                        out.append((a, b))
        return tuple(out)

    @cached_property
    def upper_covers(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {m: [] for m in self.elements}
        for lo, hi in self.covers:
            out[lo].append(hi)
        return {m: tuple(v) for m, v in out.items()}

    @cached_property
    def cover_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.covers)

    def open_interval(self, mask: int) -> Subposet:
        """Elements strictly between the bottom and `mask`."""
        self._require_member(mask)
        return Subposet(tuple(x for x in self.elements if 0 < x < mask and x & mask == x and x != mask))

    def closed_interval(self, lo: int, hi: int) -> Subposet:
        self._require_member(lo)
        self._require_member(hi)
        return Subposet(tuple(x for x in self.elements if x & lo == lo and x & hi == x))

    def meet_irreducibles(self) -> tuple[int, ...]:
        """Non-top elements with exactly one upper cover."""
        return tuple(m for m in self.elements if m != self.top and len(self.upper_covers[m]) == 1)

    # serialization

    def key(self) -> str:
        return f"{self.n}:" + ",".join(str(m) for m in self.elements)

    @classmethod
    def from_key(cls, key: str) -> "FiniteAtomicLattice":
        head, _, body = key.partition(":")
        return cls(int(head), tuple(int(tok) for tok in body.split(",")))

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "elements": [mask_to_atoms(m) for m in self.elements]})

    @classmethod
    def from_json(cls, text: str) -> "FiniteAtomicLattice":
        data = json.loads(text)
        if not isinstance(data, dict) or "n" not in data or "elements" not in data:
            raise LatticeError("lattice JSON needs keys 'n' and 'elements'")
        return cls(data["n"], tuple(atoms_to_mask(e) for e in data["elements"]))

    def to_dot(self, labels: dict[int, str] | None = None) -> str:
        lines = ["digraph lattice {", "  rankdir=BT;"]
        for m in self.elements:
            label = format_mask(m)
            if labels and m in labels:
                label += "\\n" + labels[m]
            lines.append(f'  m{m} [label="{label}"];')
        for lo, hi in self.covers:
            lines.append(f"  m{lo} -> m{hi};")
        lines.append("}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True, eq=False)
class LcmLattice:
    """A finite atomic lattice together with its monomial labels."""

    lattice: FiniteAtomicLattice
    labels: dict[int, Monomial]

    @cached_property
    def mask_by_label(self) -> dict[Monomial, int]:
        return {mono: mask for mask, mono in self.labels.items()}

    def label(self, mask: int) -> Monomial:
        return self.labels[mask]

    def mask_of(self, mono: Monomial) -> int:
        try:
            return self.mask_by_label[mono]
        except KeyError:
            raise LatticeError(f"{mono} is not a label of this lcm-lattice") from None

    def label_strings(self) -> dict[int, str]:
        return {m: str(mono) for m, mono in self.labels.items()}


def lcm_lattice(ideal: MonomialIdeal) -> LcmLattice:
    """The lattice of lcms of subsets of the (minimal) generators.

    Elements are atom supports: the support of a subset lcm is the full set
    of generators dividing it. Labels are injective; label of atom i is
    generator i; label of the bottom is 1.
    """
    if not ideal.is_minimally_generated():
        raise LatticeError("lcm_lattice needs a minimal generating set; run minimalize_generators")
    gens = ideal.generators
    if any(g.is_one for g in gens):
        raise LatticeError("the unit monomial cannot be a generator of a proper ideal")
    n = len(gens)
    if n > MAX_ATOMS:
        raise LatticeError(f"too many generators for the bitmask encoding ({n} > {MAX_ATOMS})")
    monos = {Monomial.one(ideal.vars)}
    for g in gens:
        monos |= {m.lcm(g) for m in monos}
    labels: dict[int, Monomial] = {}
    for mono in monos:
        mask = 0
        for i, g in enumerate(gens):
            if g.divides(mono):
                mask |= 1 << i
        if mask in labels:
            raise LatticeError("support collision; generators are not minimal")
        labels[mask] = mono
    lattice = FiniteAtomicLattice(n, tuple(labels))
    return LcmLattice(lattice, labels)


def coordinatize(lattice: FiniteAtomicLattice) -> MonomialIdeal:
    """A monomial ideal whose lcm-lattice has exactly this support family.

    One variable per meet-irreducible element m; the generator for atom i is
    the product of the variables whose element does not contain atom i. The
    round trip lcm_lattice(coordinatize(L)).lattice == L is guaranteed (and
    asserted by the test suite, not assumed here).
    """
    irr = lattice.meet_irreducibles()
    vars = tuple(f"x{k + 1}" for k in range(len(irr)))
    gens = []
    for i in range(lattice.n):
        exps = tuple(0 if m >> i & 1 else 1 for m in irr)
        gens.append(Monomial(vars, exps))
    return MonomialIdeal(tuple(gens))


@dataclass(frozen=True)
class SimplicialComplexRep:
    """An abstract simplicial complex given by its facets (vertex masks)."""

    vertex_count: int
    facets: tuple[int, ...]

    def __post_init__(self) -> None:
        facets = tuple(sorted(set(self.facets), key=_canonical_key))
        object.__setattr__(self, "facets", facets)
        v = self.vertex_count
        if not 1 <= v <= MAX_ATOMS:
            raise ValueError(f"vertex count must be in 1..{MAX_ATOMS}, got {v}")
        if not facets:
            raise ValueError("a complex needs at least one facet")
        full = (1 << v) - 1
        covered = 0
        for f in facets:
            if f == 0 or f & ~full:
                raise ValueError(f"facet {format_mask(f)} out of range")
            covered |= f
        if covered != full:
            raise ValueError("every vertex must lie in some facet")
        for a in facets:
            for b in facets:
                if a != b and a & b == a:
                    raise ValueError(f"facets must be incomparable: {format_mask(a)} in {format_mask(b)}")

    @classmethod
    def from_vertex_sets(cls, vertex_count: int, facets) -> "SimplicialComplexRep":
        return cls(vertex_count, tuple(atoms_to_mask(f) for f in facets))

    @cached_property
    def faces(self) -> frozenset[int]:
        """All nonempty faces, as vertex masks."""
        out: set[int] = set()
        for f in self.facets:
            sub = f
            while sub:
                out.add(sub)
                sub = (sub - 1) & f
        return frozenset(out)

    def faces_by_dim(self) -> dict[int, list[tuple[int, ...]]]:
        """Faces as ascending vertex-index tuples, grouped by dimension."""
        out: dict[int, list[tuple[int, ...]]] = {}
        for mask in self.faces:
            verts = tuple(i for i in range(self.vertex_count) if mask >> i & 1)
            out.setdefault(len(verts) - 1, []).append(verts)
        for fs in out.values():
            fs.sort()
        return out


@dataclass(frozen=True)
class NotALattice:
    """Returned when an augmented face family fails the lattice axioms."""

    reason: str

    def __bool__(self) -> bool:
        return False


def augmented_support_family(n_atoms: int, faces) -> FiniteAtomicLattice | NotALattice:
    """Close a cell family under top/bottom adjunction, or report failure.

    `faces` is an iterable of support masks (cells as sets of atoms). The
    bottom and the full mask are adjoined; if a singleton is missing or two
    members intersect outside the family the result is NotALattice.
    """
    full = (1 << n_atoms) - 1
    members = set(faces) | {0, full}
    for i in range(n_atoms):
        if (1 << i) not in members:
            return NotALattice(f"missing atom {{{i + 1}}}")
    elems = sorted(members, key=_canonical_key)
    for idx, a in enumerate(elems):
        for b in elems[idx + 1:]:
            if a & b not in members:
                return NotALattice(
                    f"not meet-closed: {format_mask(a)} and {format_mask(b)} "
                    f"intersect in {format_mask(a & b)}")
    return FiniteAtomicLattice(n_atoms, tuple(elems))


def augmented_face_lattice(complex: SimplicialComplexRep) -> FiniteAtomicLattice | NotALattice:
    """The face poset of a complex with a maximum adjoined, when a lattice."""
    return augmented_support_family(complex.vertex_count, complex.faces)


def lcm_lattice_of_labels(labels: dict[int, Monomial], n: int) -> LcmLattice:
    """Internal helper for rebuilding an LcmLattice from a label table."""
    return LcmLattice(FiniteAtomicLattice(n, tuple(labels)), dict(labels))
