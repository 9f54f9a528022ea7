"""Enumeration and navigation of the lattices on n ordered atoms.

The order on lattices with the same atoms is family inclusion: P <= Q
exactly when every support of P is a support of Q, and the covering
relation adds a single element. Enumeration walks the candidate non-forced
supports depth first, propagating the intersection-closure constraints
forward, so every closed family is produced exactly once.
"""

from __future__ import annotations

import json
import multiprocessing
import random
from dataclasses import dataclass

from .classify import betti_table, is_concentrated, is_rigid
from .errors import LatticeError
from .fields import FieldSpec
from .homology import reduced_homology_dims
from .lattices import (FiniteAtomicLattice, NotALattice, SimplicialComplexRep,
                       augmented_face_lattice, coordinatize, lcm_lattice)
from .monomials import Monomial
from .resolution import (MultigradedFreeResolution, minimalize, relabel,
                         signature, signatures_equal, taylor_complex, verify_resolution)

LnKey = str

DEFAULT_N5_BUDGET = 10 ** 6


def lattice_key(lattice: FiniteAtomicLattice) -> LnKey:
    return lattice.key()


def key_to_lattice(key: LnKey) -> FiniteAtomicLattice:
    return FiniteAtomicLattice.from_key(key)


def leq_in_ln(p: FiniteAtomicLattice, q: FiniteAtomicLattice) -> bool:
    """P <= Q in the order on n-atom lattices: family inclusion."""
    if p.n != q.n:
        raise LatticeError(f"atom counts differ: {p.n} vs {q.n}")
    return p.member_set <= q.member_set


def join_preserving_map(q: FiniteAtomicLattice, p: FiniteAtomicLattice) -> dict[int, int]:
    """The atom-fixing join-preserving map from Q down to P (for P <= Q).

    Sends an element to the smallest member of P containing it. Join
    preservation and the atom bijection are asserted before returning.
    """
    if not leq_in_ln(p, q):
        raise LatticeError("join_preserving_map needs P <= Q")
    f: dict[int, int] = {}
    for sigma in q.elements:
        image = p.top
        for tau in p.elements:
            if tau & sigma == sigma:
                image &= tau
        f[sigma] = image
    for i in range(q.n):
        assert f[1 << i] == 1 << i, "map must fix atoms"
    for a in q.elements:
        for b in q.elements:
            assert f[q.join(a, b)] == p.join(f[a], f[b]), "map must preserve joins"
    return f


def up_covers(p: FiniteAtomicLattice) -> tuple[FiniteAtomicLattice, ...]:
    """All one-element enlargements of the family that stay a lattice."""
    members = p.member_set
    out = []
    for mask in range(1, p.top):
        if mask in members:
            continue
        if all((mask & tau) in members or (mask & tau) == mask for tau in members):
            out.append(FiniteAtomicLattice(p.n, p.elements + (mask,)))
    out.sort(key=lambda lat: lat.elements)
    return tuple(out)


def down_covers(p: FiniteAtomicLattice) -> tuple[FiniteAtomicLattice, ...]:
    """All one-element deletions: removable elements are the meet-irreducible
    non-atoms strictly between bottom and top."""
    atoms = set(p.atoms)
    out = []
    for mask in p.meet_irreducibles():
        if mask == 0 or mask in atoms:
            continue
        out.append(FiniteAtomicLattice(p.n, tuple(m for m in p.elements if m != mask)))
    out.sort(key=lambda lat: lat.elements)
    return tuple(out)


def _closed_families(n: int):
    """Yield every intersection-closed family on n atoms, exactly once.

    Candidate masks (popcount 2..n-1) are decided in descending-popcount
    order; including a mask forces its intersections with the current
    members, all of which appear later in the order.
    """
    full = (1 << n) - 1
    base = sorted({0, full} | {1 << i for i in range(n)}, key=lambda m: (m.bit_count(), m))
    free = [m for m in range(3, full) if 2 <= m.bit_count() <= n - 1]
    free.sort(key=lambda m: (-m.bit_count(), m))

    def rec(idx: int, chosen: list[int], required: frozenset[int]):
        if idx == len(free):
            yield tuple(sorted(base + chosen, key=lambda m: (m.bit_count(), m)))
            return
        m = free[idx]
        if m not in required:
            yield from rec(idx + 1, chosen, required)
        forced = set()
        for c in chosen:
            meet = m & c
            if meet.bit_count() >= 2 and meet != m and meet not in chosen:
                forced.add(meet)
        chosen.append(m)
        yield from rec(idx + 1, chosen, (required | forced) - {m})
        chosen.pop()

    yield from rec(0, [], frozenset())


@dataclass(frozen=True)
class LnEnumeration:
    n: int
    lattices: tuple[FiniteAtomicLattice, ...]
    complete: bool


def enumerate_ln(n: int, budget: int | None = None) -> LnEnumeration:
    """Every finite atomic lattice on n ordered atoms, canonically ordered.

    Complete for n <= 4. For n = 5 the enumeration is capped (default one
    million families) and flagged incomplete when truncated; a truncated
    stream keeps the deterministic search order instead of the sorted one.
    """
    if not 1 <= n <= 5:
        raise ValueError(f"enumeration supports 1 <= n <= 5, got {n}")
    if budget is None and n == 5:
        budget = DEFAULT_N5_BUDGET
    out: list[FiniteAtomicLattice] = []
    complete = True
    for fam in _closed_families(n):
        if budget is not None and len(out) >= budget:
            complete = False
            break
        out.append(FiniteAtomicLattice._trusted(n, fam))
    if complete:
        out.sort(key=lambda lat: lat.elements)
    return LnEnumeration(n, tuple(out), complete)


@dataclass(frozen=True)
class StratumRecord:
    """One Betti stratum: the members sharing a total Betti vector."""

    beta: tuple[int, ...]
    field: FieldSpec
    members: tuple[LnKey, ...]
    rigid: dict[LnKey, bool]
    concentrated: dict[LnKey, bool]
    cover_edges: tuple[tuple[LnKey, LnKey], ...]


def _atlas_flags(args) -> tuple[tuple[int, ...], bool, bool]:
    lattice, field = args
    beta = betti_table(lattice, field).totals()
    return beta, bool(is_rigid(lattice, field)), bool(is_concentrated(lattice, field))


def _compute_flags(lattices, field: FieldSpec, workers: int = 1):
    args = [(lat, field) for lat in lattices]
    if workers > 1:
        with multiprocessing.Pool(workers) as pool:
            return pool.map(_atlas_flags, args)
    return [_atlas_flags(a) for a in args]


def stratify(lattices, field: FieldSpec, workers: int = 1) -> dict[tuple[int, ...], StratumRecord]:
    """Group lattices by total Betti vector and record in-stratum covers."""
    lattices = list(lattices)
    flags = _compute_flags(lattices, field, workers)
    by_beta: dict[tuple[int, ...], list[int]] = {}
    for pos, (beta, _, _) in enumerate(flags):
        by_beta.setdefault(beta, []).append(pos)
    out: dict[tuple[int, ...], StratumRecord] = {}
    for beta in sorted(by_beta):
        positions = by_beta[beta]
        members = tuple(lattice_key(lattices[pos]) for pos in positions)
        member_set = set(members)
        rigid = {lattice_key(lattices[pos]): flags[pos][1] for pos in positions}
        conc = {lattice_key(lattices[pos]): flags[pos][2] for pos in positions}
        edges = []
        for pos in positions:
            p = lattices[pos]
            pk = lattice_key(p)
            for q in up_covers(p):
                qk = lattice_key(q)
                if qk in member_set:
                    edges.append((pk, qk))
        out[beta] = StratumRecord(beta, field, members, rigid, conc, tuple(sorted(set(edges))))
    return out


@dataclass(frozen=True)
class SweepReport:
    name: str
    checked: int
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self) -> str:
        return f"{self.name}: checked {self.checked}, {len(self.violations)} violations"


def verify_rigid_up_closure(record: StratumRecord, field: FieldSpec) -> SweepReport:
    """Every in-stratum cover above a rigid member must be rigid."""
    violations = []
    checked = 0
    for lower, upper in record.cover_edges:
        if record.rigid.get(lower):
            checked += 1
            rigid_upper = record.rigid.get(upper)
            if rigid_upper is None:
                rigid_upper = bool(is_rigid(key_to_lattice(upper), field))
            if not rigid_upper:
                violations.append(f"{lower} rigid but cover {upper} is not")
    return SweepReport("rigid-up-closure", checked, tuple(violations))


def transfer_resolution(q, p, field: FieldSpec) -> MultigradedFreeResolution:
    """Relabel the minimal resolution of Q down to P along the canonical map.

    Preconditions (checked, with the failed one named): same atom count,
    P <= Q, P rigid over the field, equal total Betti vectors. The result
    is verified against the coordinatization of P and must stay minimal.
    """
    q = key_to_lattice(q) if isinstance(q, str) else q
    p = key_to_lattice(p) if isinstance(p, str) else p
    if p.n != q.n:
        raise ValueError("precondition failed: same atom count")
    if not leq_in_ln(p, q):
        raise ValueError("precondition failed: P <= Q in L(n)")
    if not is_rigid(p, field):
        raise ValueError("precondition failed: P is rigid")
    if betti_table(p, field).totals() != betti_table(q, field).totals():
        raise ValueError("precondition failed: P and Q lie in one Betti stratum")
    ideal_q = coordinatize(q)
    lat_q = lcm_lattice(ideal_q)
    if lat_q.lattice.elements != q.elements:
        raise AssertionError("coordinatization did not reproduce the support family")
    ideal_p = coordinatize(p)
    lat_p = lcm_lattice(ideal_p)
    f = join_preserving_map(q, p)
    label_map: dict[Monomial, Monomial] = {
        lat_q.label(mask): lat_p.label(f[mask]) for mask in q.elements}
    res_q = minimalize(taylor_complex(ideal_q, field))
    transferred = relabel(res_q, label_map)
    report = verify_resolution(transferred, ideal_p)
    if not report.ok:
        raise AssertionError(f"transferred complex is not a resolution: {report.failures[0]}")
    if not transferred.is_minimal():
        raise AssertionError("transferred resolution is not minimal")
    return transferred


def find_concentrated_below(q, field: FieldSpec):
    """Search the in-stratum down-set of Q for a concentrated rigid member.

    Walks down-covers transitively, pruning lattices whose Betti vector
    leaves the stratum (monotonicity makes that pruning complete). Returns
    the first hit in breadth-first canonical order, or None.
    """
    q = key_to_lattice(q) if isinstance(q, str) else q
    if not is_rigid(q, field):
        raise ValueError("precondition failed: Q is rigid")
    beta = betti_table(q, field).totals()
    queue = [q]
    seen = {q.elements}
    while queue:
        current = queue.pop(0)
        if is_rigid(current, field) and is_concentrated(current, field):
            return current
        for lower in down_covers(current):
            if lower.elements in seen:
                continue
            seen.add(lower.elements)
            if betti_table(lower, field).totals() == beta:
                queue.append(lower)
    return None


@dataclass(frozen=True)
class FaceRigidityReport:
    acyclic: bool
    rigid: bool

    @property
    def consistent(self) -> bool:
        """An acyclic complex with a non-rigid face lattice is a bug."""
        return not (self.acyclic and not self.rigid)


def face_lattice_rigidity_check(complex: SimplicialComplexRep,
                                field: FieldSpec) -> FaceRigidityReport:
    """Acyclicity of the complex versus rigidity of its augmented face lattice."""
    lattice = augmented_face_lattice(complex)
    if isinstance(lattice, NotALattice):
        raise ValueError(f"precondition failed: {lattice.reason}")
    acyclic = reduced_homology_dims(complex, field).is_acyclic
    rigid = bool(is_rigid(lattice, field))
    return FaceRigidityReport(acyclic, rigid)


def random_simplicial_complex(rng: random.Random, max_vertices: int = 6) -> SimplicialComplexRep:
    """A small random complex; vertices are relabeled to close gaps."""
    v = rng.randint(1, max_vertices)
    count = rng.randint(1, 4)
    candidates = []
    for _ in range(count):
        mask = rng.randint(1, (1 << v) - 1)
        candidates.append(mask)
    maximal = [m for m in candidates if not any(m != o and m & o == m for o in candidates)]
    covered = 0
    for m in maximal:
        covered |= m
    positions = [i for i in range(v) if covered >> i & 1]
    remap = {old: new for new, old in enumerate(positions)}
    facets = set()
    for m in maximal:
        new_mask = 0
        for i in range(v):
            if m >> i & 1:
                new_mask |= 1 << remap[i]
        facets.add(new_mask)
    return SimplicialComplexRep(len(positions), tuple(facets))


# theorem sweeps


def sweep_betti_monotonicity(lattices, field: FieldSpec, workers: int = 1) -> SweepReport:
    """Componentwise Betti growth along every comparable pair."""
    lattices = list(lattices)
    flags = _compute_flags(lattices, field, workers)
    betas = [f[0] for f in flags]
    families = [lat.member_set for lat in lattices]
    checked = 0
    violations = []
    for a in range(len(lattices)):
        for b in range(len(lattices)):
            if a == b or not (families[a] < families[b]):
                continue
            checked += 1
            lo, hi = betas[a], betas[b]
            width = max(len(lo), len(hi))
            lo = lo + (0,) * (width - len(lo))
            hi = hi + (0,) * (width - len(hi))
            if any(x > y for x, y in zip(lo, hi)):
                violations.append(f"{lattice_key(lattices[a])} has larger Betti than "
                                  f"{lattice_key(lattices[b])} above it")
    return SweepReport("betti-monotonicity", checked, tuple(violations))


def sweep_rigid_up_closure(lattices, field: FieldSpec, workers: int = 1) -> SweepReport:
    strata = stratify(lattices, field, workers)
    checked = 0
    violations: list[str] = []
    for record in strata.values():
        rep = verify_rigid_up_closure(record, field)
        checked += rep.checked
        violations.extend(rep.violations)
    return SweepReport("rigid-up-closure", checked, tuple(violations))


def sweep_concentrated_iff_lattice_linear(lattices, field: FieldSpec,
                                          workers: int = 1) -> SweepReport:
    """For rigid lattices, concentration must match lattice-linearity."""
    from .classify import is_lattice_linear

    flags = _compute_flags(lattices, field, workers)
    checked = 0
    violations = []
    for lat, (_, rigid, concentrated) in zip(lattices, flags):
        if not rigid:
            continue
        checked += 1
        linear = is_lattice_linear(coordinatize(lat), field)
        if bool(linear) != concentrated:
            violations.append(f"{lattice_key(lat)}: concentrated={concentrated} "
                              f"but lattice-linear={bool(linear)}")
    return SweepReport("concentrated-iff-lattice-linear", checked, tuple(violations))


def sweep_transfer_isomorphism(lattices, field: FieldSpec, workers: int = 1) -> SweepReport:
    """Transfer across every comparable rigid pair inside each stratum."""
    lattices = list(lattices)
    flags = _compute_flags(lattices, field, workers)
    checked = 0
    violations = []
    by_beta: dict[tuple[int, ...], list[int]] = {}
    for pos, (beta, rigid, _) in enumerate(flags):
        if rigid:
            by_beta.setdefault(beta, []).append(pos)
    direct: dict[int, MultigradedFreeResolution] = {}

    def minimal_resolution(pos: int) -> MultigradedFreeResolution:
        if pos not in direct:
            direct[pos] = minimalize(taylor_complex(coordinatize(lattices[pos]), field))
        return direct[pos]

    for beta in sorted(by_beta):
        members = by_beta[beta]
        for a in members:
            for b in members:
                if a == b or not (lattices[a].member_set < lattices[b].member_set):
                    continue
                checked += 1
                p, q = lattices[a], lattices[b]
                try:
                    transferred = transfer_resolution(q, p, field)
                except (AssertionError, ValueError) as exc:
                    violations.append(f"{lattice_key(q)} -> {lattice_key(p)}: {exc}")
                    continue
                sig_p = signature(minimal_resolution(a))
                sig_q = signature(minimal_resolution(b))
                if not signatures_equal(signature(transferred), sig_p):
                    violations.append(f"{lattice_key(q)} -> {lattice_key(p)}: signature mismatch")
                    continue
                lat_p = lcm_lattice(coordinatize(p))
                lat_q = lcm_lattice(coordinatize(q))
                f = join_preserving_map(q, p)
                label_map = {lat_q.label(mask): lat_p.label(f[mask]) for mask in q.elements}
                if not signatures_equal(sig_q, sig_p, label_map):
                    violations.append(f"{lattice_key(q)} -> {lattice_key(p)}: "
                                      "labelwise signature mismatch")
                    continue
                appearing = {m for level in sig_q.degree_multisets for m in level}
                images = [label_map[m] for m in appearing]
                if len(set(images)) == len(images):
                    inverse = {label_map[m]: m for m in appearing}
                    if not signatures_equal(sig_p, sig_q, inverse):
                        violations.append(f"{lattice_key(p)} -> {lattice_key(q)}: "
                                          "reverse signature mismatch")
    return SweepReport("transfer-isomorphism", checked, tuple(violations))


def sweep_face_lattice_rigidity(count: int, seed: int, field: FieldSpec,
                                max_vertices: int = 6,
                                max_attempts: int = 100000) -> SweepReport:
    """Random acyclic complexes whose face families are lattices must be rigid."""
    rng = random.Random(seed)
    checked = 0
    violations = []
    attempts = 0
    while checked < count and attempts < max_attempts:
        attempts += 1
        complex = random_simplicial_complex(rng, max_vertices)
        lattice = augmented_face_lattice(complex)
        if isinstance(lattice, NotALattice):
            continue
        report = face_lattice_rigidity_check(complex, field)
        if not report.acyclic:
            continue
        checked += 1
        if not report.consistent:
            violations.append(f"acyclic complex with facets "
                              f"{[hex(f) for f in complex.facets]} gave a non-rigid lattice")
    if checked < count:
        violations.append(f"only found {checked} acyclic lattice complexes in {attempts} attempts")
    return SweepReport("face-lattice-rigidity", checked, tuple(violations))


# atlas persistence


def atlas_lines(lattices, field: FieldSpec, workers: int = 1) -> list[str]:
    """Deterministic JSONL records: one lattice per line, canonical order."""
    flags = _compute_flags(list(lattices), field, workers)
    lines = []
    for lat, (beta, rigid, concentrated) in zip(lattices, flags):
        record = {"key": lattice_key(lat), "n": lat.n, "betti": list(beta),
                  "rigid": rigid, "concentrated": concentrated, "field": str(field)}
        lines.append(json.dumps(record, separators=(",", ":")))
    return lines


def stratum_edge_lines(strata: dict[tuple[int, ...], StratumRecord]) -> list[str]:
    lines = []
    for beta in sorted(strata):
        for lower, upper in strata[beta].cover_edges:
            record = {"stratum": list(beta), "lower": lower, "upper": upper}
            lines.append(json.dumps(record, separators=(",", ":")))
    return lines
