"""Betti tables from interval homology, and the classification predicates.

The multigraded Betti number in homological degree i at a lattice element
is the dimension of reduced homology in degree i-2 of the order complex of
the open interval below that element. Everything else here (rigidity,
concentration, lattice-linearity, the Betti subposet) is read off the
resulting table.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .fields import FieldSpec
from .homology import HomologyDims, order_complex, reduced_homology_dims
from .lattices import (FiniteAtomicLattice, LcmLattice, Subposet, coordinatize,
                       format_mask, lcm_lattice, mask_to_atoms)
from .monomials import Monomial, MonomialIdeal
from .resolution import minimalize, taylor_complex

_BETTI_CACHE: dict[tuple[FiniteAtomicLattice, FieldSpec], "BettiTable"] = {}


@dataclass(frozen=True, eq=False)
class BettiTable:
    """Map (homological degree, lattice element) -> multigraded Betti number."""

    lattice: FiniteAtomicLattice
    field: FieldSpec
    entries: dict[tuple[int, int], int]
    interval_dims: dict[int, HomologyDims]
    labels: dict[int, Monomial] | None = None

    def get(self, i: int, mask: int) -> int:
        return self.entries.get((i, mask), 0)

    def totals(self) -> tuple[int, ...]:
        if not self.entries:
            return (1,)
        top = max(i for i, _ in self.entries)
        out = [0] * (top + 1)
        for (i, _), v in self.entries.items():
            out[i] += v
        while out and out[-1] == 0:
            out.pop()
        return tuple(out)

    def max_degree(self) -> int:
        return len(self.totals()) - 1

    def elements_with(self, i: int) -> tuple[int, ...]:
        return tuple(mask for mask in self.lattice.elements if self.get(i, mask))

    def contributing(self) -> frozenset[int]:
        """Elements carrying some nonzero Betti number (the bottom included)."""
        return frozenset(mask for (_, mask) in self.entries)

    def multidegrees(self, i: int) -> tuple[Monomial, ...]:
        if self.labels is None:
            raise ValueError("this Betti table has no monomial labels")
        return tuple(self.labels[m] for m in self.elements_with(i))


def _support_lattice(lattice: FiniteAtomicLattice | LcmLattice) -> FiniteAtomicLattice:
    return lattice.lattice if isinstance(lattice, LcmLattice) else lattice


def betti_table(lattice: FiniteAtomicLattice | LcmLattice, field: FieldSpec) -> BettiTable:
    """Betti numbers of a finite atomic lattice over the field (memoized)."""
    labels = lattice.labels if isinstance(lattice, LcmLattice) else None
    support = _support_lattice(lattice)
    cached = _BETTI_CACHE.get((support, field))
    if cached is None:
        entries: dict[tuple[int, int], int] = {(0, 0): 1}
        dims_by_element: dict[int, HomologyDims] = {}
        for mask in support.elements:
            if mask == 0:
                continue
            dims = reduced_homology_dims(order_complex(support.open_interval(mask)), field)
            dims_by_element[mask] = dims
            for j, v in dims.nonzero:
                entries[(j + 2, mask)] = v
        cached = BettiTable(support, field, entries, dims_by_element)
        _BETTI_CACHE[(support, field)] = cached
    if labels is not None:
        return replace(cached, labels=dict(labels))
    return cached


@dataclass(frozen=True)
class RigidityReport:
    rigid: bool
    violated: str | None = None
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.rigid

    def describe(self, labels: dict[int, Monomial] | None = None) -> str:
        if self.rigid:
            return "rigid"
        if self.violated == "R1":
            i, mask, value = self.witness
            return (f"not rigid: multiple copies in one multidegree "
                    f"(i={i}, element {_elt(mask, labels)}, value {value})")
        i, a, b = self.witness
        return (f"not rigid: comparable contributors in homological degree {i}: "
                f"{_elt(a, labels)} < {_elt(b, labels)}")


@dataclass(frozen=True)
class ConcentrationReport:
    concentrated: bool
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.concentrated

    def describe(self, labels: dict[int, Monomial] | None = None) -> str:
        if self.concentrated:
            return "concentrated"
        silent, contributor = self.witness
        return (f"dispersed: {_elt(silent, labels)} carries no Betti number "
                f"but is not above the contributor {_elt(contributor, labels)}")


@dataclass(frozen=True)
class LatticeLinearReport:
    lattice_linear: bool
    certificate_only: bool
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.lattice_linear

    def describe(self) -> str:
        base = "lattice-linear" if self.lattice_linear else "not lattice-linear"
        if self.witness:
            i, row, col = self.witness
            base += f" (degree {i} entry {row} <- {col} is not a cover)"
        if self.certificate_only:
            base += " [certificate for the computed basis only; the ideal is not rigid]"
        return base


def _elt(mask: int, labels: dict[int, Monomial] | None) -> str:
    if labels and mask in labels:
        return f"{labels[mask]} {format_mask(mask)}"
    return format_mask(mask)


def is_rigid(lattice: FiniteAtomicLattice | LcmLattice, field: FieldSpec) -> RigidityReport:
    """Check that Betti numbers are 0/1 and per-degree incomparable.

    Comparable contributors in distinct homological degrees do not violate
    rigidity; the incomparability condition is checked one degree at a time.
    """
    table = betti_table(lattice, field)
    for (i, mask), v in sorted(table.entries.items()):
        if v > 1:
            return RigidityReport(False, "R1", (i, mask, v))
    for i in range(1, table.max_degree() + 1):
        hits = table.elements_with(i)
        for a_pos, a in enumerate(hits):
            for b in hits[a_pos + 1:]:
                if a & b == a or a & b == b:
                    lo, hi = (a, b) if a & b == a else (b, a)
                    return RigidityReport(False, "R2", (i, lo, hi))
    return RigidityReport(True)


def is_concentrated(lattice: FiniteAtomicLattice | LcmLattice, field: FieldSpec) -> ConcentrationReport:
    """Check that every silent element sits above all contributing ones."""
    table = betti_table(lattice, field)
    support = _support_lattice(lattice)
    contributing = table.contributing()
    for mask in support.elements:
        if mask in contributing:
            continue
        for c in support.elements:
            if c in contributing and not (c != mask and c & mask == c):
                return ConcentrationReport(False, (mask, c))
    return ConcentrationReport(True)


def is_lattice_linear(ideal: MonomialIdeal, field: FieldSpec) -> LatticeLinearReport:
    """Check the cover-support condition on a minimalized Taylor resolution.

    For a rigid ideal the minimal basis is unique up to scaling, so the
    answer is exact; otherwise it is only a certificate for this basis and
    the report says so.
    """
    lat = lcm_lattice(ideal)
    resolution = minimalize(taylor_complex(ideal, field))
    certificate_only = not is_rigid(lat, field).rigid
    witness = None
    cover_labels = {(lat.label(lo), lat.label(hi)) for lo, hi in lat.lattice.covers}
    for i, row_mdeg, col_mdeg, _ in resolution.nonzero_entries():
        if (row_mdeg, col_mdeg) not in cover_labels:
            witness = (i, str(row_mdeg), str(col_mdeg))
            return LatticeLinearReport(False, certificate_only, witness)
    return LatticeLinearReport(True, certificate_only)


def betti_subposet(lattice: FiniteAtomicLattice | LcmLattice, field: FieldSpec) -> Subposet:
    """The induced subposet on the bottom plus all contributing elements."""
    table = betti_table(lattice, field)
    return Subposet(tuple(table.contributing() | {0}))


@dataclass(frozen=True)
class InvarianceReport:
    holds: bool
    witness: int | None = None

    def __bool__(self) -> bool:
        return self.holds


def interval_homology_invariance(lattice: FiniteAtomicLattice | LcmLattice,
                                 field: FieldSpec) -> InvarianceReport:
    """Does restricting intervals to the Betti subposet preserve homology?

    For every contributing element q, the open interval below q computed in
    the full lattice and the one computed inside the Betti subposet must
    have equal reduced homology dimensions.
    """
    table = betti_table(lattice, field)
    sub = betti_subposet(lattice, field)
    for q in sub.elements:
        if q == 0:
            continue
        full_dims = table.interval_dims[q]
        sub_dims = reduced_homology_dims(order_complex(sub.open_interval(q)), field)
        if full_dims.nonzero != sub_dims.nonzero:
            return InvarianceReport(False, q)
    return InvarianceReport(True)


# report rendering


def betti_grid_text(table: BettiTable) -> str:
    """Macaulay2-style grid: columns i, rows (total degree - i)."""
    def degree(mask: int) -> int:
        if table.labels is not None:
            return table.labels[mask].total_degree()
        return mask.bit_count()

    totals = table.totals()
    width = len(totals)
    cells: dict[tuple[int, int], int] = {}
    for (i, mask), v in table.entries.items():
        row = degree(mask) - i
        cells[(row, i)] = cells.get((row, i), 0) + v
    rows = sorted({r for r, _ in cells})
    col_w = max(len(str(v)) for v in totals)
    col_w = max(col_w, max(len(str(i)) for i in range(width)))
    head = " " * 7 + " ".join(str(i).rjust(col_w) for i in range(width))
    lines = [head]
    lines.append("total: " + " ".join(str(v).rjust(col_w) for v in totals))
    for r in rows:
        body = " ".join(str(cells[(r, i)]).rjust(col_w) if (r, i) in cells else ".".rjust(col_w)
                        for i in range(width))
        lines.append(f"{str(r).rjust(6)}: " + body)
    return "\n".join(lines)


@dataclass(frozen=True, eq=False)
class ClassificationReport:
    field: FieldSpec
    table: BettiTable
    rigidity: RigidityReport
    concentration: ConcentrationReport
    linearity: LatticeLinearReport | None

    def to_text(self) -> str:
        labels = self.table.labels
        lines = [f"field: {self.field}"]
        lines.append(f"lattice elements: {len(self.table.lattice)}")
        lines.append("betti totals: " + " ".join(str(v) for v in self.table.totals()))
        lines.append(betti_grid_text(self.table))
        lines.append(f"rigid: {'yes' if self.rigidity else 'no'}"
                     + ("" if self.rigidity else f" ({self.rigidity.describe(labels)})"))
        lines.append(f"concentrated: {'yes' if self.concentration else 'no'}"
                     + ("" if self.concentration else f" ({self.concentration.describe(labels)})"))
        if self.linearity is not None:
            lines.append(f"lattice-linear: {'yes' if self.linearity else 'no'}"
                         + ("" if self.linearity.lattice_linear and not self.linearity.certificate_only
                            else f" ({self.linearity.describe()})"))
        return "\n".join(lines)

    def to_json_dict(self) -> dict:
        labels = self.table.labels
        entries = []
        for (i, mask), v in sorted(self.table.entries.items()):
            rec = {"i": i, "support": mask_to_atoms(mask), "value": v}
            if labels is not None:
                rec["multidegree"] = str(labels[mask])
            entries.append(rec)
        out = {
            "field": str(self.field),
            "totals": list(self.table.totals()),
            "entries": entries,
            "rigid": {"holds": bool(self.rigidity),
                      "violated": self.rigidity.violated,
                      "witness": _witness_json(self.rigidity.witness, labels)},
            "concentrated": {"holds": bool(self.concentration),
                             "witness": _witness_json(self.concentration.witness, labels)},
        }
        if self.linearity is not None:
            out["lattice_linear"] = {"holds": bool(self.linearity),
                                     "certificate_only": self.linearity.certificate_only,
                                     "witness": list(self.linearity.witness) if self.linearity.witness else None}
        return out


def _witness_json(witness, labels):
    if witness is None:
        return None
    out = []
    for part in witness:
        if isinstance(part, int) and labels and part in labels:
            out.append(str(labels[part]))
        else:
            out.append(part)
    return out


def classification_report(subject, field: FieldSpec) -> ClassificationReport:
    """Full classification of an ideal, an lcm-lattice, or a bare lattice.

    Bare lattices are coordinatized to run the lattice-linearity check, so
    the report is intrinsic to the lattice either way.
    """
    if isinstance(subject, MonomialIdeal):
        lat = lcm_lattice(subject)
        ideal = subject
    elif isinstance(subject, LcmLattice):
        lat = subject
        ideal = None
    elif isinstance(subject, FiniteAtomicLattice):
        ideal = coordinatize(subject)
        lat = lcm_lattice(ideal)
    else:
        raise TypeError(f"cannot classify {type(subject).__name__}")
    table = betti_table(lat, field)
    rigidity = is_rigid(lat, field)
    concentration = is_concentrated(lat, field)
    if ideal is None:
        ideal = coordinatize(lat.lattice)
    linearity = is_lattice_linear(ideal, field)
    return ClassificationReport(field, table, rigidity, concentration, linearity)
