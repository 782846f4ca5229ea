"""Command-line interface.

Results go to stdout; diagnostics (sizes, wall times, progress) go to
stderr.  Exit codes: 0 success, 1 a checked property failed, 2 usage or
parse errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Sequence

from . import kernels
from .bounds import (
    CSV_COLUMNS,
    check_instance,
    csv_row,
    eh_pair_bound,
    iterated_bound,
    pair_bound,
    restricted_bound,
)
from .group import format_group, parse_group
from .sets import ElementSet, format_set, parse_set, restricted_sumset, sumset
from .verify import (
    ALL_CHECKS,
    CampaignConfig,
    bench_kernels,
    compare_backends,
    extremal_search,
    render_report,
    run_campaign,
)
from .witness import build_witness, certificate_from_json, certificate_to_json, validate_certificate

__all__ = ["main"]


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _render_element_set(result: ElementSet, fmt: str) -> str:
    if fmt == "table":
        return "{" + format_set(result) + "}\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["set", "size"])
        writer.writerow([format_set(result), result.cardinality])
        return buf.getvalue()
    return (
        json.dumps(
            {
                "group": format_group(result.group),
                "set": sorted(result.indices()),
                "size": result.cardinality,
            },
            sort_keys=True,
        )
        + "\n"
    )


def _cmd_sumset(args) -> int:
    g = parse_group(args.group)
    operands = [parse_set(g, text) for text in args.set]
    if len(operands) < 2:
        raise ValueError("sumset needs at least two --set operands")
    out = operands[0]
    for part in operands[1:]:
        out = sumset(out, part)
    _emit(_render_element_set(out, args.format), args.out)
    print(f"size {out.cardinality}", file=sys.stderr)
    return 0


def _cmd_rsumset(args) -> int:
    g = parse_group(args.group)
    a = parse_set(g, args.set)
    out = restricted_sumset(a, args.k)
    _emit(_render_element_set(out, args.format), args.out)
    print(f"size {out.cardinality}", file=sys.stderr)
    return 0


def _parse_sizes(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise ValueError(f"bad size list {text!r}") from exc


def _cmd_bound(args) -> int:
    g = parse_group(args.group)
    if args.kind == "restricted":
        if args.size is None or args.k is None:
            raise ValueError("restricted bound needs --size and --k")
        value = restricted_bound(g, args.size, args.k)
    elif args.kind == "eh":
        if args.size is None:
            raise ValueError("eh bound needs --size")
        value = eh_pair_bound(g, args.size)
    elif args.kind == "pair":
        sizes = _parse_sizes(args.sizes or "")
        if len(sizes) != 2:
            raise ValueError("pair bound needs --sizes A,B")
        value = pair_bound(g, sizes[0], sizes[1])
    else:
        sizes = _parse_sizes(args.sizes or "")
        if not sizes:
            raise ValueError("iterated bound needs --sizes")
        value = iterated_bound(g, sizes)
    if args.format == "json":
        _emit(json.dumps({"group": format_group(g), "kind": args.kind, "bound": value}) + "\n",
              args.out)
    else:
        _emit(f"{value}\n", args.out)
    return 0


def _cmd_check(args) -> int:
    g = parse_group(args.group)
    a = parse_set(g, args.set)
    rep = check_instance(g, a, args.k)
    if args.format == "table":
        text = (
            f"group={format_group(g)} set={{{format_set(a)}}} k={rep.k} p_of_G={rep.p_of_g} "
            f"bound={rep.bound} actual={rep.actual} "
            f"satisfied={'yes' if rep.satisfied else 'no'} "
            f"equality={'yes' if rep.equality else 'no'}\n"
        )
    elif args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(CSV_COLUMNS)
        writer.writerow(csv_row(rep))
        text = buf.getvalue()
    else:
        text = (
            json.dumps(
                {
                    "group": format_group(g),
                    "set": list(rep.set_indices),
                    "k": rep.k,
                    "p_of_G": rep.p_of_g,
                    "bound": rep.bound,
                    "actual": rep.actual,
                    "satisfied": rep.satisfied,
                    "equality": rep.equality,
                },
                sort_keys=True,
            )
            + "\n"
        )
    _emit(text, args.out)
    return 0 if rep.satisfied else 1


def _cmd_witness(args) -> int:
    g = parse_group(args.group)
    a = parse_set(g, args.set)
    cert = build_witness(g, a, args.k)
    doc = json.dumps(certificate_to_json(cert), indent=2, sort_keys=True) + "\n"
    if args.out:
        _emit(doc, args.out)
        sys.stdout.write(
            f"case={cert.case} sets={len(cert.witness_sets)} total={cert.claimed_total} "
            f"bound={cert.bound}\n"
        )
    else:
        sys.stdout.write(doc)
    return 0


def _cmd_validate(args) -> int:
    with open(args.cert, "r", encoding="utf-8") as fh:
        cert = certificate_from_json(json.load(fh))
    g = parse_group(args.group) if args.group else cert.group
    a = parse_set(g, args.set) if args.set else cert.members
    k = args.k if args.k is not None else cert.k
    rep = validate_certificate(g, a, k, cert)
    if args.format == "json":
        text = (
            json.dumps(
                {
                    "ok": rep.ok,
                    "failures": [list(f) for f in rep.failures],
                    "total": rep.total,
                    "bound": rep.bound,
                    "distinct_labels": rep.distinct_labels,
                },
                sort_keys=True,
            )
            + "\n"
        )
    else:
        lines = [
            f"ok={'yes' if rep.ok else 'no'} total={rep.total} bound={rep.bound} "
            f"distinct_labels={rep.distinct_labels}"
        ]
        lines.extend(f"FAIL {name}: {detail}" for name, detail in rep.failures)
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return 0 if rep.ok else 1


def _parse_checks(text: str) -> frozenset[str]:
    names = frozenset(tok.strip() for tok in text.split(",") if tok.strip())
    unknown = names - ALL_CHECKS
    if unknown:
        raise ValueError(f"unknown checks: {sorted(unknown)} (valid: {sorted(ALL_CHECKS)})")
    return names


def _campaign_config(args) -> CampaignConfig:
    threshold = args.max_order if args.exhaustive else 16
    return CampaignConfig(
        max_order=args.max_order,
        exhaustive_threshold=threshold,
        samples_per_group=args.samples,
        k_max=args.k_max,
        seed=args.seed,
        checks=_parse_checks(args.checks) if hasattr(args, "checks") else frozenset({"theorem"}),
    )


def _cmd_verify(args) -> int:
    cfg = _campaign_config(args)
    report = run_campaign(cfg, jobs=args.jobs, time_budget=args.time_budget)
    _emit(render_report(report, args.format), args.out)
    print(f"wall_time={report.wall_time:.3f}s", file=sys.stderr)
    if not report.complete:
        print("warning: campaign stopped at the time budget", file=sys.stderr)
    return 0 if report.clean() else 1


def _cmd_extremal(args) -> int:
    cfg = _campaign_config(args)
    cases = extremal_search(cfg)
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["group", "set", "k"])
        for g, a, k in cases:
            writer.writerow([format_group(g), format_set(a), k])
        text = buf.getvalue()
    elif args.format == "json":
        rows = [
            json.dumps(
                {"group": format_group(g), "set": sorted(a.indices()), "k": k}, sort_keys=True
            )
            for g, a, k in cases
        ]
        text = "\n".join(rows) + ("\n" if rows else "")
    else:
        lines = [f"{format_group(g)} {{{format_set(a)}}} k={k}" for g, a, k in cases]
        text = "\n".join(lines) + ("\n" if lines else "")
    _emit(text, args.out)
    print(f"equality cases: {len(cases)}", file=sys.stderr)
    return 0


def _cmd_bench(args) -> int:
    orders = _parse_sizes(args.orders)
    if not orders:
        raise ValueError("bench needs at least one order")
    if args.backend == "both":
        rows = compare_backends(orders, args.density, args.k, args.seed, repeats=args.repeats)
    else:
        rows = [
            (order, args.backend, micros)
            for order, micros in bench_kernels(
                orders, args.density, args.k, args.seed, backend=args.backend,
                repeats=args.repeats,
            )
        ]
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["order", "backend", "microseconds"])
        for order, name, micros in rows:
            writer.writerow([order, name, f"{micros:.1f}"])
        text = buf.getvalue()
    elif args.format == "json":
        text = (
            "\n".join(
                json.dumps({"order": order, "backend": name, "microseconds": round(micros, 1)})
                for order, name, micros in rows
            )
            + "\n"
        )
    else:
        lines = [f"{'order':>8}  {'backend':<8}  {'microseconds':>12}"]
        lines.extend(f"{order:>8}  {name:<8}  {micros:>12.1f}" for order, name, micros in rows)
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return 0


def _add_format_out(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--format", choices=["table", "csv", "json"], default="table")
    sub.add_argument("--out", metavar="PATH", default=None, help="write output to a file")


def _add_campaign_flags(sub: argparse.ArgumentParser, default_samples: int) -> None:
    sub.add_argument("--max-order", type=int, required=True)
    sub.add_argument("--exhaustive", action="store_true",
                     help="enumerate all subsets for every group up to max-order")
    sub.add_argument("--samples", type=int, default=default_samples,
                     help="sampled subsets per group above the exhaustive threshold")
    sub.add_argument("--k-max", type=int, default=None)
    sub.add_argument("--seed", type=int, default=0)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sumsets",
        description="Sumsets, restricted sumsets, lower bounds, and witness certificates "
        "in finite abelian groups.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sumset", help="sum of two or more sets")
    p.add_argument("--group", required=True)
    p.add_argument("--set", action="append", required=True,
                   help="set literal; pass at least twice")
    _add_format_out(p)
    p.set_defaults(func=_cmd_sumset)

    p = sub.add_parser("rsumset", help="sums of k pairwise-distinct members")
    p.add_argument("--group", required=True)
    p.add_argument("--set", required=True)
    p.add_argument("--k", type=int, required=True)
    _add_format_out(p)
    p.set_defaults(func=_cmd_rsumset)

    p = sub.add_parser("bound", help="closed-form lower bounds")
    p.add_argument("--group", required=True)
    p.add_argument("--kind", choices=["restricted", "pair", "iterated", "eh"],
                   default="restricted")
    p.add_argument("--size", type=int, default=None, help="|A| for restricted/eh")
    p.add_argument("--sizes", default=None, help="comma-separated part sizes for pair/iterated")
    p.add_argument("--k", type=int, default=None)
    _add_format_out(p)
    p.set_defaults(func=_cmd_bound)

    p = sub.add_parser("check", help="compare |k^(A)| against the bound")
    p.add_argument("--group", required=True)
    p.add_argument("--set", required=True)
    p.add_argument("--k", type=int, required=True)
    _add_format_out(p)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("witness", help="build a certificate for an instance")
    p.add_argument("--group", required=True)
    p.add_argument("--set", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--out", metavar="PATH", default=None, help="write the certificate here")
    p.set_defaults(func=_cmd_witness)

    p = sub.add_parser("validate", help="validate a stored certificate")
    p.add_argument("--cert", required=True, metavar="PATH")
    p.add_argument("--group", default=None, help="defaults to the certificate's group")
    p.add_argument("--set", default=None, help="defaults to the certificate's set")
    p.add_argument("--k", type=int, default=None, help="defaults to the certificate's k")
    _add_format_out(p)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("verify", help="run a verification campaign")
    _add_campaign_flags(p, default_samples=10_000)
    p.add_argument("--checks", default="theorem",
                   help=f"comma-separated subset of {sorted(ALL_CHECKS)}")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--time-budget", type=float, default=None, metavar="SECONDS")
    _add_format_out(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("extremal", help="search for bound-attaining instances")
    _add_campaign_flags(p, default_samples=1_000)
    _add_format_out(p)
    p.set_defaults(func=_cmd_extremal)

    p = sub.add_parser("bench", help="time the kernels")
    p.add_argument("--orders", default="256,1024,4096")
    p.add_argument("--density", type=float, default=0.1)
    p.add_argument("--k", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--repeats", type=int, default=5)
    p.add_argument(
        "--backend",
        choices=["both", "auto", "python", "c"],
        default="both" if kernels.has_compiled() else "python",
    )
    _add_format_out(p)
    p.set_defaults(func=_cmd_bench)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except RuntimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
