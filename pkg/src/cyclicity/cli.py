"""Command-line surface: analyze descriptors, run campaigns, manage the cache.

Exit codes: 0 for success or a passing campaign, 1 for a failing campaign or
cache revalidation mismatch, 2 for usage errors (bad flags, bad descriptors,
requests beyond the configured caps).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import verify as verify_mod
from .cache import ResultCache
from .census import center, commutator_subgroup, frattini_pgroup
from .descriptors import DescriptorSyntaxError, build_from_descriptor
from .groups import CapExceeded
from .verify import CampaignReport, alpha_spectrum, spectrum_summary

FORMATS = ("table", "csv", "json")


def _json_default(value):
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, frozenset):
        return sorted(value)
    raise TypeError(f"not JSON serializable: {value!r}")


def _emit_json(document) -> None:
    print(json.dumps(document, default=_json_default, sort_keys=True))


def _emit_csv(header, rows) -> None:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\r\n")
    writer.writerow(header)
    writer.writerows(rows)
    sys.stdout.write(buffer.getvalue())


def _parse_eps(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"eps must be an exact rational like 1/100: {exc}")


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format", choices=FORMATS, default="table", help="output format (default: table)"
    )
    parser.add_argument("--cache", metavar="PATH", default=None, help="cache file location")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cyclicity",
        description="Exact cyclic-subgroup censuses and verification campaigns for finite 2-group families.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_alpha = sub.add_parser("alpha", help="exact cyclic-subgroup ratio of a described group")
    p_alpha.add_argument("descriptor")
    _add_common(p_alpha)

    p_census = sub.add_parser("census", help="full cyclic-subgroup count table")
    p_census.add_argument("descriptor")
    _add_common(p_census)

    p_structure = sub.add_parser("structure", help="center, commutator, Frattini, nilpotency")
    p_structure.add_argument("descriptor")
    _add_common(p_structure)

    p_verify = sub.add_parser("verify", help="run a verification campaign")
    p_verify.add_argument(
        "campaign",
        choices=[
            "abelian",
            "extraspecial",
            "almost-extraspecial",
            "dicyclic",
            "gen-dihedral",
            "maximal-cyclic",
        ],
    )
    p_verify.add_argument("--cap", type=int, default=256, help="largest group order to examine")
    p_verify.add_argument("--jobs", type=int, default=1, help="parallel workers")
    _add_common(p_verify)

    p_scan = sub.add_parser("scan", help="exploration scans")
    p_scan.add_argument("scan", choices=["spectrum", "conjecture25", "injectivity"])
    p_scan.add_argument("--p", type=int, default=2, help="prime for the injectivity scan")
    p_scan.add_argument("--n", type=int, default=12, help="order exponent for the injectivity scan")
    p_scan.add_argument("--cap", type=int, default=256, help="largest order for the spectrum scan")
    p_scan.add_argument(
        "--eps",
        type=_parse_eps,
        default=Fraction(1, 100),
        help="exact rational radius around 3/4 (default 1/100)",
    )
    p_scan.add_argument("--jobs", type=int, default=1, help="parallel workers")
    _add_common(p_scan)

    p_cache = sub.add_parser("cache", help="cache maintenance")
    p_cache.add_argument("action", choices=["revalidate"])
    p_cache.add_argument(
        "--sample", type=float, default=0.05, help="fraction of records to recompute"
    )
    p_cache.add_argument("--seed", type=int, default=0, help="sampling seed")
    _add_common(p_cache)
    return parser


def _cmd_alpha(args) -> int:
    cache = ResultCache(args.cache)
    record, cached = cache.get_or_compute(args.descriptor)
    alpha = record.alpha
    if args.format == "json":
        _emit_json(
            {
                "descriptor": record.descriptor,
                "order": record.order,
                "l1": record.l1,
                "alpha": str(alpha),
                "cached": cached,
            }
        )
    elif args.format == "csv":
        _emit_csv(
            ["descriptor", "order", "l1", "alpha"],
            [[record.descriptor, record.order, record.l1, str(alpha)]],
        )
    else:
        print(alpha)
        print(f"descriptor: {record.descriptor}")
        print(f"order: {record.order}, cyclic subgroups: {record.l1}")
    return 0


def _census_counts(record) -> dict[int, int]:
    from .census import euler_phi

    return {d: c // euler_phi(d) for d, c in sorted(record.profile.items())}


def _cmd_census(args) -> int:
    cache = ResultCache(args.cache)
    record, _ = cache.get_or_compute(args.descriptor)
    counts = _census_counts(record)
    if args.format == "json":
        _emit_json(
            {
                "descriptor": record.descriptor,
                "order": record.order,
                "counts": {str(d): n for d, n in counts.items()},
                "l1": record.l1,
                "alpha": str(record.alpha),
            }
        )
    elif args.format == "csv":
        rows = [
            [record.descriptor, record.order, d, n, record.l1, str(record.alpha)]
            for d, n in counts.items()
        ]
        _emit_csv(["descriptor", "order", "d", "n_d", "l1", "alpha"], rows)
    else:
        print(f"descriptor: {record.descriptor}")
        print(f"order: {record.order}")
        print("  d    n_d")
        for d, n in counts.items():
            print(f"  {d:<4} {n}")
        print(f"l1: {record.l1}")
        print(f"alpha: {record.alpha}")
    return 0


def _prime_power_base(order: int) -> int | None:
    p = 2
    while p * p <= order:
        if order % p == 0:
            while order % p == 0:
                order //= p
            return p if order == 1 else None
        p += 1 if p == 2 else 2
    return order if order > 1 else None


def _cmd_structure(args) -> int:
    cache = ResultCache(args.cache)
    record, _ = cache.get_or_compute(args.descriptor)
    g = build_from_descriptor(record.descriptor)
    z = center(g)
    derived = commutator_subgroup(g)
    order = g.order
    p = _prime_power_base(order)
    frattini_order = len(frattini_pgroup(g, p)) if p is not None else None
    invariants = None
    if g.is_abelian:
        from .census import abelian_invariants

        invariants = {
            p: list(shape.partition) for p, shape in abelian_invariants(g).items()
        }
    data = {
        "descriptor": record.descriptor,
        "order": order,
        "center_order": len(z),
        "commutator_order": len(derived),
        "frattini_order": frattini_order,
        "nilpotent": record.nilpotent,
        "in_c": record.in_c,
        "abelian_invariants": invariants,
    }
    if args.format == "json":
        _emit_json(data)
    elif args.format == "csv":
        _emit_csv(
            list(data),
            [[json.dumps(v, default=_json_default) if isinstance(v, dict) else v for v in data.values()]],
        )
    else:
        for key, value in data.items():
            print(f"{key}: {value}")
    return 0


def _report_rows(report: CampaignReport):
    rows = [
        ["campaign", "", report.campaign],
        ["parameters", "", json.dumps(report.parameters, default=_json_default, sort_keys=True)],
        ["groups_examined", "", str(report.groups_examined)],
        ["checks_passed", "", str(report.checks_passed)],
        ["wall_time_s", "", f"{report.wall_time:.3f}"],
        ["status", "", "pass" if report.passed else "fail"],
    ]
    rows.extend(["member", m, ""] for m in report.members)
    rows.extend(["note", "", n] for n in report.notes)
    rows.extend(["failure", f.descriptor, f.message] for f in report.failures)
    return rows


def _emit_report(report: CampaignReport, fmt: str) -> int:
    if fmt == "json":
        _emit_json(
            {
                "campaign": report.campaign,
                "parameters": report.parameters,
                "groups_examined": report.groups_examined,
                "checks_passed": report.checks_passed,
                "wall_time_s": report.wall_time,
                "status": "pass" if report.passed else "fail",
                "members": report.members,
                "notes": report.notes,
                "failures": [
                    {"descriptor": f.descriptor, "message": f.message} for f in report.failures
                ],
            }
        )
    elif fmt == "csv":
        _emit_csv(["kind", "descriptor", "detail"], _report_rows(report))
    else:
        print(f"campaign: {report.campaign}")
        print(f"parameters: {report.parameters}")
        print(f"groups examined: {report.groups_examined}")
        print(f"checks passed: {report.checks_passed}")
        print(f"wall time: {report.wall_time:.3f} s")
        for member in report.members:
            print(f"member: {member}")
        for note in report.notes:
            print(f"note: {note}")
        for failure in report.failures:
            print(f"FAIL {failure.descriptor}: {failure.message}")
        print("status: " + ("pass" if report.passed else "fail"))
    return 0 if report.passed else 1


def _cmd_verify(args) -> int:
    if args.campaign == "abelian":
        max_exp = max(1, args.cap.bit_length() - 1)
        report = verify_mod.verify_abelian_classification(max_exp, jobs=args.jobs)
    else:
        report = verify_mod.verify_families(args.campaign, cap=args.cap, jobs=args.jobs)
    return _emit_report(report, args.format)


def _cmd_scan(args) -> int:
    if args.scan in ("conjecture25", "injectivity"):
        report = verify_mod.injectivity_scan(args.p, args.n)
        return _emit_report(report, args.format)
    records = alpha_spectrum(args.cap, eps=args.eps)
    summary = spectrum_summary(records, eps=args.eps)
    if args.format == "json":
        _emit_json(
            {
                "cap": args.cap,
                "eps": str(args.eps),
                "records": [
                    {
                        "descriptor": r.descriptor,
                        "order": r.order,
                        "alpha": str(r.alpha),
                        "in_c": r.in_c,
                    }
                    for r in records
                ],
                "distinct_alphas": [str(a) for a in summary["distinct_alphas"]],
                "near_three_quarters": [r.descriptor for r in summary["near_three_quarters"]],
            }
        )
    elif args.format == "csv":
        _emit_csv(
            ["descriptor", "order", "alpha", "in_c"],
            [[r.descriptor, r.order, str(r.alpha), r.in_c] for r in records],
        )
    else:
        print(f"spectrum over constructible families, order <= {args.cap}")
        for r in records:
            marker = " [in C]" if r.in_c else ""
            print(f"  {r.descriptor:<28} order {r.order:<6} alpha {r.alpha}{marker}")
        print(f"distinct ratios: {len(summary['distinct_alphas'])}")
        near = ", ".join(r.descriptor for r in summary["near_three_quarters"])
        print(f"within {args.eps} of 3/4: {near or 'none'}")
    return 0


def _cmd_cache(args) -> int:
    cache = ResultCache(args.cache)
    checked, mismatches = cache.revalidate(fraction=args.sample, seed=args.seed)
    data = {"checked": checked, "mismatches": mismatches}
    if args.format == "json":
        _emit_json(data)
    elif args.format == "csv":
        _emit_csv(
            ["checked", "mismatches"],
            [[checked, ";".join(mismatches)]],
        )
    else:
        print(f"records checked: {checked}")
        if mismatches:
            for key in mismatches:
                print(f"MISMATCH {key}")
        else:
            print("mismatches: none")
    return 1 if mismatches else 0


_DISPATCH = {
    "alpha": _cmd_alpha,
    "census": _cmd_census,
    "structure": _cmd_structure,
    "verify": _cmd_verify,
    "scan": _cmd_scan,
    "cache": _cmd_cache,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return _DISPATCH[args.command](args)
    except DescriptorSyntaxError as exc:
        print(f"descriptor error: {exc}", file=sys.stderr)
        return 2
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
