"""Command line interface.

Exit codes: 0 when every verification passed, 1 on a verification or
validation failure, 2 on a usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from pathlib import Path

from .constructions import (
    PARITIES,
    apply_matrix,
    label_matrix,
    column_groups,
    merge_labeled,
    pair_sum_constant,
    predicted_colors,
    role_colors,
    s_sequence,
)
from .errors import AntimagicError, InvalidInput, InvalidLabeling, InvalidParameter
from .graph import chromatic_number
from .io import (
    dumps,
    load_graph,
    load_labeling,
    matrix_to_csv,
    save_graph,
    save_labeling,
    to_dot,
    verification_report,
    write_manifest,
)
from .labeling import is_local_antimagic
from .oracle import ABORTED, brute_force_chi_la, cross_validate, exists_local_antimagic
from .partitions import eligible_delete_add_pairs, enumerate_family, invariant_key

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True, indent=2) + "\n")


def _int_range(text: str) -> list[int]:
    """``"a:b"`` (inclusive) or a single integer."""
    try:
        if ":" in text:
            lo, hi = (int(x) for x in text.split(":", 1))
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or LO:HI, got {text!r}") from None
    return list(range(lo, hi + 1))


def _check_positive(**vals) -> None:
    for name, val in vals.items():
        if val < 1:
            raise UsageError(f"{name} must be >= 1, got {val}")


def cmd_construct(args) -> int:
    start = time.perf_counter()
    _check_positive(n=args.n, k=args.k)
    mat = label_matrix(args.n, args.k, args.parity)
    graph, labeling = apply_matrix(mat)
    if args.merge:
        graph, labeling = merge_labeled(graph, labeling, column_groups(mat.m, 2 * args.k + 1))
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    gpath, lpath = out / "graph.json", out / "labeling.json"
    save_graph(graph, gpath)
    save_labeling(labeling, lpath)
    outputs = [gpath, lpath]
    if args.matrix:
        mpath = Path(args.matrix)
        mpath.parent.mkdir(parents=True, exist_ok=True)
        mpath.write_text(matrix_to_csv(mat))
        outputs.append(mpath)
    report = verification_report(labeling)
    if args.merge:
        report["predicted"] = list(predicted_colors(args.n, args.k, args.parity))
    write_manifest(
        out / "manifest.json",
        "construct",
        {"parity": args.parity, "n": args.n, "k": args.k, "merge": args.merge},
        outputs=outputs,
        verdicts={"local_antimagic": report["ok"]},
        wall_time=time.perf_counter() - start,
    )
    _emit(report)
    return EXIT_OK if report["ok"] else EXIT_FAIL


def cmd_family(args) -> int:
    start = time.perf_counter()
    _check_positive(n=args.n, r=args.r, s=args.s)
    schemes = [s.strip() for s in args.schemes.split(",") if s.strip()]
    if not schemes:
        raise UsageError("--schemes must name at least one scheme")
    members = enumerate_family(
        args.n,
        args.r,
        args.s,
        args.parity,
        schemes=schemes,
        max_schemes=args.max_schemes,
        delete_add_depth=args.delete_add_depth,
        max_members=args.max_members,
    )
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    outputs, summary, all_ok = [], [], True
    for idx, member in enumerate(members):
        gpath = out / f"member_{idx:03d}.graph.json"
        lpath = out / f"member_{idx:03d}.labeling.json"
        save_graph(member.graph, gpath)
        save_labeling(member.labeling, lpath)
        outputs += [gpath, lpath]
        report = verification_report(member.labeling)
        all_ok &= report["ok"] and report["color_count"] == 3
        comps = sorted(len(c) for c in member.graph.components())
        summary.append(
            {
                "index": idx,
                "order": member.graph.order,
                "size": member.graph.size,
                "components": comps,
                "regular_degree": member.graph.regular_degree(),
                "colors": report["colors"],
                "ok": report["ok"],
                "eligible_swaps": len(eligible_delete_add_pairs(member))
                if not (args.parity == "even" and args.n < 2)
                else 0,
                "invariant": repr(invariant_key(member)[:4]),
                "provenance": member.provenance,
                "possibly_isomorphic_aliases": len(member.aliases),
            }
        )
    fpath = out / "family.json"
    fpath.write_text(dumps({"members": summary}))
    outputs.append(fpath)
    write_manifest(
        out / "manifest.json",
        "family",
        vars_subset(args, ("parity", "n", "r", "s", "schemes", "delete_add_depth", "max_schemes", "max_members")),
        outputs=outputs,
        verdicts={"all_certified": all_ok, "members": len(members)},
        wall_time=time.perf_counter() - start,
    )
    _emit({"members": len(members), "ok": all_ok, "out_dir": str(out)})
    return EXIT_OK if all_ok else EXIT_FAIL


def vars_subset(args, names) -> dict:
    return {name: getattr(args, name) for name in names}


def cmd_oracle(args) -> int:
    if args.oracle_cmd == "cross-validate":
        _check_positive(n=args.n, k=args.k)
        report = cross_validate(args.n, args.k, args.parity)
        _emit(report)
        return EXIT_OK if report["ok"] else EXIT_FAIL
    graph = load_graph(args.graph)
    if args.oracle_cmd == "chi-la":
        report = brute_force_chi_la(graph, edge_limit=args.edge_limit, force=args.force)
        _emit(report.to_json())
        return EXIT_FAIL if report.status == ABORTED else EXIT_OK
    found = exists_local_antimagic(graph, edge_limit=args.edge_limit, force=args.force)
    _emit({"exists": found, "status": ABORTED if found is None else "exact"})
    return EXIT_FAIL if found is None else EXIT_OK


_SWEEP_FIELDS = ["parity", "n", "k", "q", "x_color", "u_color", "v_color", "verdict", "chi", "detail"]


def sweep_cell(parity: str, n: int, k: int, with_chi: bool = False) -> dict:
    """One row of a sweep: every check the construction promises at (n, k)."""
    row = {"parity": parity, "n": n, "k": k, "q": "", "x_color": "", "u_color": "", "v_color": ""}
    problems = []
    try:
        mat = label_matrix(n, k, parity)
        row["q"] = mat.q
        pred = predicted_colors(n, k, parity)
        heads, tails = mat.column_sums()
        if set(heads) != {pred.u_color} or set(tails) != {pred.v_color}:
            problems.append("column sums")
        for j in range(1, mat.m + 1):
            if sum(s_sequence(n, k, parity, j, mat)) != (2 * k + 1) * pair_sum_constant(n, k, parity):
                problems.append(f"S_{j} total")
        graph, labeling = apply_matrix(mat)
        graph, labeling = merge_labeled(graph, labeling, column_groups(mat.m, 2 * k + 1))
        verdict = is_local_antimagic(labeling)
        if not verdict:
            problems.append("not local antimagic")
        got = role_colors(graph, verdict.coloring.color)
        row.update(x_color=got.x_color, u_color=got.u_color, v_color=got.v_color)
        if verdict.coloring.distinct_count != 3 or got != pred:
            problems.append("colours differ from prediction")
        if with_chi:
            row["chi"] = chromatic_number(graph)
            if row["chi"] != 3:
                problems.append("chromatic number")
    except AntimagicError as exc:
        problems.append(str(exc))
    row.setdefault("chi", "")
    row["verdict"] = "fail" if problems else "pass"
    row["detail"] = "; ".join(problems)
    return row


def cmd_sweep(args) -> int:
    if not args.n_range or not args.k_range:
        raise UsageError("empty parameter range")
    if min(args.n_range) < 1 or min(args.k_range) < 1:
        raise UsageError("n and k must be >= 1")
    parities = PARITIES if args.parity == "both" else (args.parity,)
    rows = [sweep_cell(p, n, k, args.chi) for p in parities for n in args.n_range for k in args.k_range]
    if args.out:
        path = Path(args.out)
        path.parent.mkdir(parents=True, exist_ok=True)
        fh = path.open("w", newline="")
    else:
        fh = sys.stdout
    try:
        w = csv.DictWriter(fh, fieldnames=_SWEEP_FIELDS, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    finally:
        if fh is not sys.stdout:
            fh.close()
    failed = sum(r["verdict"] != "pass" for r in rows)
    sys.stderr.write(f"{len(rows)} cells, {failed} failed\n")
    return EXIT_FAIL if failed else EXIT_OK


def cmd_export_dot(args) -> int:
    graph = load_graph(args.graph)
    labeling = load_labeling(args.labels, graph) if args.labels else None
    text = to_dot(graph, labeling, name=args.name)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    graph = load_graph(args.graph)
    try:
        labeling = load_labeling(args.labels, graph)
    except InvalidLabeling as exc:
        _emit({"ok": False, "error": str(exc)})
        return EXIT_FAIL
    report = verification_report(labeling)
    ok = report["ok"]
    if args.expect_colors is not None and report["color_count"] != args.expect_colors:
        report["expectation"] = f"expected {args.expect_colors} colours"
        ok = False
    report["ok"] = ok
    _emit(report)
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="antimagic-join", description="Local antimagic 3-colourings of joins.")
    sub = p.add_subparsers(dest="cmd", required=True)

    c = sub.add_parser("construct", help="label (2k+1)(P2 v O_m), optionally merged into (2k+1)P2 v O_m")
    c.add_argument("--parity", choices=PARITIES, required=True)
    c.add_argument("-n", type=int, required=True)
    c.add_argument("-k", type=int, required=True)
    c.add_argument("--merge", action="store_true", help="merge x_{i,j} over i into x_j")
    c.add_argument("--out-dir", default=".", help="directory for graph.json, labeling.json, manifest.json")
    c.add_argument("--matrix", help="also write the label matrix as CSV here")
    c.set_defaults(func=cmd_construct)

    f = sub.add_parser("family", help="build and certify family members")
    f.add_argument("--parity", choices=PARITIES, required=True)
    f.add_argument("-n", type=int, required=True)
    f.add_argument("-r", type=int, required=True)
    f.add_argument("-s", type=int, required=True)
    f.add_argument("--schemes", default="rows,columns", help="comma list of rows, columns, chunks, search:<seed>")
    f.add_argument("--max-schemes", type=int, default=64)
    f.add_argument("--delete-add-depth", type=int, default=0)
    f.add_argument("--max-members", type=int, default=256)
    f.add_argument("--out-dir", default=".")
    f.set_defaults(func=cmd_family)

    o = sub.add_parser("oracle", help="brute-force ground truth")
    osub = o.add_subparsers(dest="oracle_cmd", required=True)
    for name in ("chi-la", "exists"):
        q = osub.add_parser(name)
        q.add_argument("graph")
        q.add_argument("--edge-limit", type=int, default=12)
        q.add_argument("--force", action="store_true", help="search even above the edge limit")
    cv = osub.add_parser("cross-validate")
    cv.add_argument("--parity", choices=PARITIES, required=True)
    cv.add_argument("-n", type=int, required=True)
    cv.add_argument("-k", type=int, required=True)
    o.set_defaults(func=cmd_oracle)

    s = sub.add_parser("sweep", help="check the construction over an (n, k) grid")
    s.add_argument("--parity", choices=(*PARITIES, "both"), default="both")
    s.add_argument("--n-range", type=_int_range, default="1:6", help="LO:HI inclusive")
    s.add_argument("--k-range", type=_int_range, default="1:6", help="LO:HI inclusive")
    s.add_argument("--chi", action="store_true", help="also compute the chromatic number")
    s.add_argument("--out", help="CSV path (default stdout)")
    s.set_defaults(func=cmd_sweep)

    d = sub.add_parser("export-dot", help="write DOT text for a graph and optional labeling")
    d.add_argument("graph")
    d.add_argument("--labels")
    d.add_argument("--name", default="G")
    d.add_argument("--out")
    d.set_defaults(func=cmd_export_dot)

    v = sub.add_parser("verify", help="check a labeling against the local antimagic condition")
    v.add_argument("graph")
    v.add_argument("labels")
    v.add_argument("--expect-colors", type=int)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, InvalidParameter) as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except FileNotFoundError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except (InvalidInput, AntimagicError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
