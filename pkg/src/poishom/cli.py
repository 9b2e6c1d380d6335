"""Command-line surface.

Verbs: ``analyze`` (catalog entry or spec file), ``tables`` (recompute the
quotient classification tables and diff against the golden data),
``dynamics`` (integrate a catalog Hamiltonian system and report the volume
verdict), ``verify-all`` (the full re-verification manifest) and
``catalog list``.  Exit codes: 0 ok, 1 verification failure, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import catalog, homspace, verify
from .coord import (
    ConstraintDriftError,
    divergence,
    hamiltonian_vf,
    hessian_at,
    rk4_flow,
)
from .linalg import frac
from .specfile import SpecParseError, parse_spec

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_INPUT = 2


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--eta", default="1", help="rational instantiation of the scaling parameter")
    p.add_argument("--seed", type=int, default=catalog.DEFAULT_SEED, help="sampling seed")
    p.add_argument("--json", action="store_true", help="machine-readable output")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="poishom",
        description="exact unimodularity and volume-form analysis for "
        "coisotropic Poisson quotients, with coordinate-level dynamics checks",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="classify a homogeneous-space entry or spec file")
    p.add_argument("target", help="catalog entry name, or a file path with --file")
    p.add_argument("--file", action="store_true", help="treat target as a spec file path")
    _add_common(p)

    p = sub.add_parser("tables", help="recompute the quotient tables against golden data")
    p.add_argument("--golden", default=None, help="override the golden data file")
    _add_common(p)

    p = sub.add_parser("dynamics", help="integrate a catalog Hamiltonian system")
    p.add_argument("case", choices=sorted(catalog.DYNAMICS_CASES))
    p.add_argument("--T", type=float, default=10.0)
    p.add_argument("--dt", type=float, default=1e-3)
    p.add_argument("--out", default=None, help="write the flow trace as CSV")
    _add_common(p)

    p = sub.add_parser("verify-all", help="run the full re-verification manifest")
    _add_common(p)

    p = sub.add_parser("catalog", help="catalog inspection")
    p.add_argument("action", choices=["list"])
    _add_common(p)
    return ap


def _parse_eta(raw: str) -> Fraction:
    eta = Fraction(raw)
    if eta == 0:
        raise ValueError("eta must be nonzero")
    return eta


def _report_row(S, anchors) -> dict:
    row = homspace.classification_row(S)
    row["anchors"] = anchors
    return row


def _render_row(row: dict) -> str:
    lines = [f"{row['name']}:"]
    lines.append(f"  coisotropic:        {row['coisotropic']}")
    lines.append(f"  subgroup type:      {row['subgroup_type']}")
    if row.get("chi_h0_zero") is not None:
        lines.append(f"  chi_h0 zero:        {row['chi_h0_zero']}")
    lines.append(f"  invariant volume:   {row['invariant_volume']}")
    lines.append(f"  semi-invariant:     {row['semi_invariant']} ({homspace.SIMPLY_CONNECTED_CAVEAT})")
    if row.get("mu_status") is not None:
        lines.append(f"  multiplicative unimodularity: {row['mu_status']}")
    if row.get("witness_theta0"):
        lines.append(f"  witness theta0:     {row['witness_theta0']}")
    return "\n".join(lines)


def cmd_analyze(args) -> int:
    eta = _parse_eta(args.eta)
    if args.file:
        try:
            doc = parse_spec(args.target, eta=eta)
            S = doc.build_homspace(name=args.target)
        except (OSError, SpecParseError, ValueError) as exc:
            print(f"input error: {exc}", file=sys.stderr)
            return EXIT_INPUT
        anchors = [f"file:{args.target}"]
    else:
        try:
            S = catalog.build_homspace(args.target, eta)
        except KeyError as exc:
            print(f"input error: {exc}", file=sys.stderr)
            return EXIT_INPUT
        anchors = [f"catalog:{args.target}"]
    row = _report_row(S, anchors)
    if args.json:
        print(json.dumps(row, indent=2, default=str))
    else:
        print(_render_row(row))
    return EXIT_OK


def cmd_tables(args) -> int:
    eta = _parse_eta(args.eta)
    if args.golden:
        try:
            with open(args.golden, "r", encoding="utf-8") as fh:
                golden = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            print(f"input error: {exc}", file=sys.stderr)
            return EXIT_INPUT
    else:
        golden = verify.load_golden()
    failures = []
    rows = []
    for section, names in (("table1", catalog.TABLE1_NAMES), ("table2", catalog.TABLE2_NAMES)):
        want_rows = golden.get(section, {})
        for name in names:
            S = catalog.build_homspace(name, eta)
            row = homspace.classification_row(S)
            rows.append(row)
            want = {k: v for k, v in want_rows.get(name, {}).items() if k != "anchors"}
            got = {k: row.get(k) for k in want}
            if not want:
                failures.append(f"{name}: missing from golden data")
            elif got != want:
                diffs = {k: (got[k], want[k]) for k in want if got[k] != want[k]}
                failures.append(f"{name}: {diffs}")
    if args.json:
        print(json.dumps({"rows": rows, "failures": failures}, indent=2, default=str))
    else:
        for row in rows:
            print(_render_row(row))
            print()
        if failures:
            for f in failures:
                print(f"GOLDEN MISMATCH {f}", file=sys.stderr)
        else:
            print(f"{len(rows)} rows match the golden tables (eta = {eta}).")
    return EXIT_VERIFICATION if failures else EXIT_OK


def cmd_dynamics(args) -> int:
    eta = _parse_eta(args.eta)
    case = catalog.DYNAMICS_CASES[args.case]
    bundle = catalog.build_model(
        case["model"], eta if case["model"] not in ("toda-n3", "compartmental", "canonical2d") else 1
    )
    model = bundle.model
    h = bundle.hamiltonian
    field = hamiltonian_vf(model, h)
    div = divergence(model, field)
    out = {
        "case": args.case,
        "model": model.name,
        "divergence_zero": div.is_zero(),
    }
    preserved = case["preserved"]
    if args.case == "toda-n3":
        value = bundle.horizontal_field()(h).eval(catalog.toda_singular_point(2))
        out["certificate"] = {
            "kind": "nonzero_horizontal_pairing",
            "point": [str(c) for c in catalog.toda_singular_point(2)],
            "value": str(value),
        }
        out["verdict"] = "no preserved volume (certificate)"
        lines = [
            f"{args.case}: {out['verdict']}",
            f"  horizontal field applied to the Hamiltonian is {value} != 0 at the "
            f"singular point with a = 2, so no volume form is preserved.",
        ]
    else:
        try:
            trace = rk4_flow(model, h, case["start"], T=args.T, dt=args.dt)
        except (ConstraintDriftError, ValueError) as exc:
            print(f"integrator abort: {exc}", file=sys.stderr)
            return EXIT_VERIFICATION
        out["div_integral"] = trace.final_div_integral()
        out["max_constraint_drift"] = trace.max_drift()
        out["verdict"] = "volume preserved" if preserved else "no preserved volume"
        lines = [
            f"{args.case}: {out['verdict']}",
            f"  |int div dt| = {abs(trace.final_div_integral()):.3e} over T = {args.T}",
            f"  max constraint drift = {trace.max_drift():.3e}",
        ]
        if case.get("morse"):
            H = hessian_at(model, h, model.base_point, bundle.morse_frame)
            out["hessian"] = [[str(c) for c in row] for row in H]
            lines.append(f"  base-point Hessian along the quotient frame: {H}")
        if args.out:
            trace.write_csv(args.out)
            lines.append(f"  trace written to {args.out}")
    if args.json:
        print(json.dumps(out, indent=2, default=str))
    else:
        print("\n".join(lines))
    return EXIT_OK


def cmd_verify_all(args) -> int:
    eta = _parse_eta(args.eta)
    results = verify.run_all(eta=eta, seed=args.seed)
    bad = [r for r in results if not r.ok]
    if args.json:
        print(
            json.dumps(
                [
                    {"name": r.name, "anchor": r.anchor, "ok": r.ok, "detail": r.detail}
                    for r in results
                ],
                indent=2,
            )
        )
    else:
        for r in results:
            status = "ok  " if r.ok else "FAIL"
            detail = f"  ({r.detail})" if r.detail else ""
            print(f"{status} {r.name:42s} [{r.anchor}]{detail}")
        print(f"{len(results) - len(bad)}/{len(results)} checks passed.")
    return EXIT_VERIFICATION if bad else EXIT_OK


def cmd_catalog(args) -> int:
    print("homogeneous-space entries:")
    for name in catalog.HOMSPACE_NAMES:
        print(f"  {name}")
    print("coordinate models:")
    for name in catalog.MODEL_NAMES:
        print(f"  {name}")
    print("dynamics cases:")
    for name in sorted(catalog.DYNAMICS_CASES):
        print(f"  {name}")
    return EXIT_OK


def run(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        if args.command == "analyze":
            return cmd_analyze(args)
        if args.command == "tables":
            return cmd_tables(args)
        if args.command == "dynamics":
            return cmd_dynamics(args)
        if args.command == "verify-all":
            return cmd_verify_all(args)
        if args.command == "catalog":
            return cmd_catalog(args)
    except ValueError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
