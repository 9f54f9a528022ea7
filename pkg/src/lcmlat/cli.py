"""Batch command-line surface: betti, classify, resolve, explore, verify.

All commands are deterministic given their inputs, flags and seed. Exit
codes: 0 success, 1 a verify check failed, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .classify import betti_table, betti_grid_text, classification_report
from .errors import LatticeError
from .explorer import (atlas_lines, enumerate_ln, stratify, stratum_edge_lines,
                       sweep_betti_monotonicity, sweep_concentrated_iff_lattice_linear,
                       sweep_face_lattice_rigidity, sweep_rigid_up_closure,
                       sweep_transfer_isomorphism)
from .fields import FieldSpec
from .lattices import FiniteAtomicLattice, LcmLattice, lcm_lattice
from .monomials import parse_ideal
from .resolution import lattice_linear_support, minimalize, taylor_complex

VERIFY_CHECKS = (
    "rigid-up-closure",
    "betti-monotonicity",
    "concentrated-iff-lattice-linear",
    "transfer-isomorphism",
    "face-lattice-rigidity",
)


def _load_input(path: str):
    """Read an ideal file or a lattice JSON file, by content sniffing."""
    text = Path(path).read_text(encoding="utf-8")
    if text.lstrip().startswith("{"):
        return FiniteAtomicLattice.from_json(text)
    return parse_ideal(text)


def _as_lcm_lattice(subject) -> LcmLattice:
    if isinstance(subject, FiniteAtomicLattice):
        from .lattices import coordinatize

        return lcm_lattice(coordinatize(subject))
    return lcm_lattice(subject)


def _cmd_betti(args) -> int:
    subject = _load_input(args.input)
    field = FieldSpec.parse(args.field)
    lat = _as_lcm_lattice(subject) if not isinstance(subject, FiniteAtomicLattice) else subject
    table = betti_table(lat, field)
    if args.format == "dot":
        labels = lat.label_strings() if isinstance(lat, LcmLattice) else None
        support = lat.lattice if isinstance(lat, LcmLattice) else lat
        sys.stdout.write(support.to_dot(labels))
        return 0
    if args.format == "json":
        entries = [{"i": i,
                    "support": [a + 1 for a in range(mask.bit_length()) if mask >> a & 1],
                    "value": v}
                   for (i, mask), v in sorted(table.entries.items())]
        if table.labels is not None:
            for rec, ((_, mask), _) in zip(entries, sorted(table.entries.items())):
                rec["multidegree"] = str(table.labels[mask])
        print(json.dumps({"field": str(field), "totals": list(table.totals()),
                          "entries": entries}, separators=(",", ":")))
        return 0
    print(f"field: {field}")
    print("betti totals: " + " ".join(str(v) for v in table.totals()))
    print(betti_grid_text(table))
    return 0


def _cmd_classify(args) -> int:
    subject = _load_input(args.input)
    field = FieldSpec.parse(args.field)
    if args.format == "dot":
        lat = _as_lcm_lattice(subject)
        sys.stdout.write(lat.lattice.to_dot(lat.label_strings()))
        return 0
    report = classification_report(subject, field)
    if args.format == "json":
        print(json.dumps(report.to_json_dict(), separators=(",", ":")))
    else:
        print(report.to_text())
    return 0


def _cmd_resolve(args) -> int:
    subject = _load_input(args.input)
    field = FieldSpec.parse(args.field)
    if isinstance(subject, FiniteAtomicLattice):
        from .lattices import coordinatize

        subject = coordinatize(subject)
    res = minimalize(taylor_complex(subject, field))
    lat = lcm_lattice(subject)
    linear = lattice_linear_support(res, lat)
    if args.format == "json":
        payload = res.to_json_dict()
        payload["minimal"] = res.is_minimal()
        payload["lattice_linear_support"] = linear
        print(json.dumps(payload, separators=(",", ":")))
        return 0
    print(f"field: {field}")
    print("ranks: " + " ".join(str(r) for r in res.ranks()))
    print(f"minimal: {'yes' if res.is_minimal() else 'no'}")
    print(f"lattice-linear support: {'yes' if linear else 'no'}")
    for i, basis in enumerate(res.bases):
        print(f"degree {i} multidegrees: " + " ".join(str(m) for m in basis))
    return 0


def _cmd_explore(args) -> int:
    field = FieldSpec.parse(args.field)
    enum = enumerate_ln(args.n, args.budget)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    atlas_path = out_dir / f"atlas_n{args.n}.jsonl"
    lines = atlas_lines(enum.lattices, field, args.workers)
    atlas_path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"n={args.n} lattices={len(enum.lattices)} "
          f"complete={'yes' if enum.complete else 'no (budget hit)'} field={field}")
    if args.stratify:
        strata = stratify(enum.lattices, field, args.workers)
        edges_path = out_dir / f"strata_edges_n{args.n}.jsonl"
        edge_lines = stratum_edge_lines(strata)
        edges_path.write_text("\n".join(edge_lines) + ("\n" if edge_lines else ""),
                              encoding="utf-8")
        for beta in sorted(strata):
            record = strata[beta]
            print(f"stratum {list(beta)}: members={len(record.members)} "
                  f"rigid={sum(record.rigid.values())} "
                  f"cover_edges={len(record.cover_edges)}")
        print(f"wrote {edges_path}")
    print(f"wrote {atlas_path}")
    return 0


def _cmd_verify(args) -> int:
    field = FieldSpec.parse(args.field)
    name = args.check
    if name not in VERIFY_CHECKS:
        print(f"unknown check {name!r}; available: {', '.join(VERIFY_CHECKS)}", file=sys.stderr)
        return 2
    if name == "face-lattice-rigidity":
        report = sweep_face_lattice_rigidity(args.count, args.seed, field)
    else:
        enum = enumerate_ln(args.n, args.budget)
        if not enum.complete:
            print(f"warning: enumeration truncated at {len(enum.lattices)} lattices",
                  file=sys.stderr)
        sweeps = {
            "rigid-up-closure": sweep_rigid_up_closure,
            "betti-monotonicity": sweep_betti_monotonicity,
            "concentrated-iff-lattice-linear": sweep_concentrated_iff_lattice_linear,
            "transfer-isomorphism": sweep_transfer_isomorphism,
        }
        report = sweeps[name](enum.lattices, field, args.workers)
    print(report)
    for line in report.violations:
        print(f"  {line}")
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lcmlat",
        description="Lcm-lattices, Betti tables, minimal resolutions, and lattice atlases.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, formats=("text", "json", "dot")):
        p.add_argument("input", help="ideal file or lattice JSON file")
        p.add_argument("--field", default="Q", help="Q or Fp with p prime (default Q)")
        p.add_argument("--format", choices=formats, default="text")

    p = sub.add_parser("betti", help="Betti table of an ideal or lattice")
    common(p)
    p.set_defaults(func=_cmd_betti)

    p = sub.add_parser("classify", help="rigid / concentrated / lattice-linear report")
    common(p)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("resolve", help="minimalized Taylor resolution")
    common(p, formats=("text", "json"))
    p.set_defaults(func=_cmd_resolve)

    p = sub.add_parser("explore", help="enumerate lattices on n atoms, write an atlas")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--field", default="Q")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--stratify", action="store_true")
    p.add_argument("--out", default=".")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=_cmd_explore)

    p = sub.add_parser("verify", help="run a theorem sweep")
    p.add_argument("check", help=", ".join(VERIFY_CHECKS))
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--field", default="Q")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=50)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--rigid-only", action="store_true",
                   help="accepted for the lattice-linearity sweep; it is always rigid-only")
    p.set_defaults(func=_cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, LatticeError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
