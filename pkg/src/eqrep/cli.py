"""Command-line workbench.

Subcommands: build, verify, rep, lemma-step, search-p2, decompose.
Set files travel in the shared text format (one ascending integer per
line, '#' comments).  Exit codes: 0 success, 1 unmet expectation,
2 usage error, 3 I/O or file-format error, 4 step precondition
violation, 5 overflow.
"""

from __future__ import annotations

import argparse
import json
import sys

from .construct import Schedule, build_prefix, lemma_step, step_log
from .errors import BoundExceeded, PreconditionViolated, SetFileError
from .intset import format_set_text, read_set_file, write_set_file
from .repcore import rep_profile
from .search import decompose_fully, enumerate_p2, replay_chain
from .verify import report_json, report_text, verify_pair

EXIT_OK = 0
EXIT_EXPECTATION = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_PRECONDITION = 4
EXIT_OVERFLOW = 5

# Wording for decompose reports: the implemented notion inverts single
# steps whose base pair is forced by the translation, is never a false
# positive, but does not search over every conceivable base pair.
DECOMPOSE_RULE = (
    "single-step forced-preimage inverse, largest translation first; "
    "base pair must be non-empty and have equal representation profiles"
)


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="ascii") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _schedule_from_args(args) -> Schedule:
    if args.schedule == "dombi":
        return Schedule.dombi()
    if args.schedule == "theorem":
        if args.l is None:
            raise ValueError("--l is required for the theorem schedule")
        return Schedule.theorem(args.l)
    if args.l is None or args.r is None or args.m is None:
        raise ValueError("--l, --r and --m are required for the general schedule")
    return Schedule.general(args.l, args.r, args.m)


def cmd_build(args) -> int:
    schedule = _schedule_from_args(args)
    result = build_prefix(schedule, args.bound)
    log_text = step_log(result)
    if args.log:
        with open(args.log, "w", encoding="ascii") as fh:
            fh.write(log_text)
    if args.out_a:
        write_set_file(args.out_a, result.a)
    if args.out_b:
        write_set_file(args.out_b, result.b)
    if args.format == "json":
        payload = {
            "schema_version": 1,
            "schedule": {"kind": schedule.kind, "l": schedule.l, "r": schedule.r, "m": schedule.m},
            "bound": result.bound,
            "translation": result.translation,
            "steps": list(result.steps),
            "size_a": len(result.a),
            "size_b": len(result.b),
            "a": result.a.to_list(),
            "b": result.b.to_list(),
        }
        _emit(args, json.dumps(payload, indent=2) + "\n")
    else:
        pieces = [log_text]
        if not args.out_a:
            pieces.append(f"# A ({len(result.a)} elements)\n{format_set_text(result.a)}")
        if not args.out_b:
            pieces.append(f"# B ({len(result.b)} elements)\n{format_set_text(result.b)}")
        _emit(args, "".join(pieces))
    return EXIT_OK


def _parse_expected_ap(text: str) -> tuple[int, int]:
    try:
        first_text, difference_text = text.split(",")
        return int(first_text), int(difference_text)
    except ValueError:
        raise ValueError("--expect-intersection-ap takes 'first,difference'") from None


def cmd_verify(args) -> int:
    a = read_set_file(args.a)
    b = read_set_file(args.b)
    expected_ap = _parse_expected_ap(args.expect_intersection_ap) if args.expect_intersection_ap else None
    report = verify_pair(a, b, args.bound, expected_ap=expected_ap)
    _emit(args, report_json(report) if args.format == "json" else report_text(report))
    failed = (
        (args.expect_rep_equal and not report.rep_equal)
        or (args.expect_union_interval and not report.union_is_interval)
        or (args.expect_intersection_ap and not report.ap_matches_expected)
    )
    return EXIT_EXPECTATION if failed else EXIT_OK


def cmd_rep(args) -> int:
    profile = rep_profile(read_set_file(args.set), args.upto)
    if args.format == "json":
        payload = {
            "schema_version": 1,
            "bound": profile.bound,
            "counts": profile.counts.tolist(),
        }
        _emit(args, json.dumps(payload, indent=2) + "\n")
    else:
        _emit(args, "".join(f"{n} {profile[n]}\n" for n in range(profile.bound + 1)))
    return EXIT_OK


def cmd_lemma_step(args) -> int:
    a = read_set_file(args.a)
    b = read_set_file(args.b)
    a1, b1, cert = lemma_step(a, b, args.m)
    if args.out_a:
        write_set_file(args.out_a, a1)
    if args.out_b:
        write_set_file(args.out_b, b1)
    if args.format == "json":
        payload = {
            "schema_version": 1,
            "m": cert.m,
            "precondition_ok": cert.precondition_ok,
            "moreover_ok": cert.moreover_ok,
            "union_identity_ok": cert.union_identity_ok,
            "intersection_claim_ok": cert.intersection_claim_ok,
            "disjoint_union_ok": cert.disjoint_union_ok,
            "intersection_equal": cert.intersection_equal,
            "interval_extends": cert.interval_extends,
            "partition_extends": cert.partition_extends,
            "a": a1.to_list(),
            "b": b1.to_list(),
        }
        _emit(args, json.dumps(payload, indent=2) + "\n")
    else:
        lines = [
            f"m {cert.m}",
            "precondition ok",
            f"moreover {'ok' if cert.moreover_ok else 'no'}",
            f"union_identity {'ok' if cert.union_identity_ok else 'FAILED'}",
            f"intersection_claim {'ok' if cert.intersection_claim_ok else 'FAILED'}",
            f"disjoint_union {'ok' if cert.disjoint_union_ok else 'no'}",
            f"intersection_equal {'yes' if cert.intersection_equal else 'no'}",
        ]
        if cert.interval_extends is not None:
            lines.append(f"interval_extends {'ok' if cert.interval_extends else 'FAILED'}")
        if cert.partition_extends is not None:
            lines.append(f"partition_extends {'ok' if cert.partition_extends else 'FAILED'}")
        if not args.out_a:
            lines.append("a " + " ".join(str(e) for e in a1))
        if not args.out_b:
            lines.append("b " + " ".join(str(e) for e in b1))
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_search_p2(args) -> int:
    report = enumerate_p2(
        args.m,
        args.r,
        workers=args.threads,
        prune=not args.no_prune,
        checkpoint=args.checkpoint,
    )
    if args.format == "json":
        payload = {
            "schema_version": 1,
            "interval_length": report.interval_length,
            "r_filter": report.r_filter,
            "pruned": report.pruned,
            "workers": report.workers,
            "solutions": [
                {"a": a.to_list(), "b": b.to_list(), "r": r} for a, b, r in report.solutions
            ],
            "configurations_scanned": report.configurations_scanned,
            "elapsed_ms": round(report.wall_time * 1000.0, 3),
        }
        _emit(args, json.dumps(payload, indent=2) + "\n")
    else:
        lines = [
            f"interval_length {report.interval_length}",
            f"r_filter {'all' if report.r_filter is None else report.r_filter}",
            f"pruned {'yes' if report.pruned else 'no'}",
            f"configurations_scanned {report.configurations_scanned}",
            f"solutions {len(report.solutions)}",
        ]
        for a, b, r in report.solutions:
            lines.append(
                f"solution r={r} a={','.join(map(str, a))} b={','.join(map(str, b))}"
            )
        lines.append(f"elapsed_ms {report.wall_time * 1000.0:.3f}")
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_decompose(args) -> int:
    a = read_set_file(args.a)
    b = read_set_file(args.b)
    chain, core = decompose_fully(a, b)
    if chain:
        replayed = replay_chain(core, chain)
        if replayed != (a, b):
            raise RuntimeError("decomposition replay failed to reconstruct the input pair")
    if args.format == "json":
        payload = {
            "schema_version": 1,
            "rule": DECOMPOSE_RULE,
            "chain": list(chain),
            "core_a": core[0].to_list(),
            "core_b": core[1].to_list(),
        }
        _emit(args, json.dumps(payload, indent=2) + "\n")
    else:
        lines = [
            f"rule {DECOMPOSE_RULE}",
            "chain " + (",".join(map(str, chain)) if chain else "none"),
            "core_a " + " ".join(str(e) for e in core[0]),
            "core_b " + " ".join(str(e) for e in core[1]),
        ]
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def _add_common(parser) -> None:
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--out", help="write the report to this path instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eqrep",
        description="Construct, verify and search integer set pairs with equal representation functions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build a schedule prefix and write the set files")
    p.add_argument("--schedule", choices=("dombi", "theorem", "general"), required=True)
    p.add_argument("--l", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--out-a", help="path for the first set")
    p.add_argument("--out-b", help="path for the second set")
    p.add_argument("--log", help="path for the step log")
    _add_common(p)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", help="run the pair checkers on two set files")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--expect-rep-equal", action="store_true")
    p.add_argument("--expect-union-interval", action="store_true")
    p.add_argument("--expect-intersection-ap", metavar="FIRST,DIFF")
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("rep", help="representation profile of one set file")
    p.add_argument("--set", required=True)
    p.add_argument("--upto", type=int, required=True)
    _add_common(p)
    p.set_defaults(func=cmd_rep)

    p = sub.add_parser("lemma-step", help="apply one doubling step with certification")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--out-a")
    p.add_argument("--out-b")
    _add_common(p)
    p.set_defaults(func=cmd_lemma_step)

    p = sub.add_parser("search-p2", help="exhaustive interval-cover search")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--r", type=int, help="restrict to one overlap point")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--no-prune", action="store_true", help="brute-force oracle mode")
    p.add_argument("--checkpoint", help="resumable shard checkpoint file")
    _add_common(p)
    p.set_defaults(func=cmd_search_p2)

    p = sub.add_parser("decompose", help="peel doubling steps off a pair of set files")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    _add_common(p)
    p.set_defaults(func=cmd_decompose)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except PreconditionViolated as exc:
        print(f"eqrep: precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except SetFileError as exc:
        print(f"eqrep: bad set file: {exc}", file=sys.stderr)
        return EXIT_IO
    except BoundExceeded as exc:
        print(f"eqrep: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OverflowError as exc:
        print(f"eqrep: overflow: {exc}", file=sys.stderr)
        return EXIT_OVERFLOW
    except OSError as exc:
        print(f"eqrep: i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"eqrep: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
