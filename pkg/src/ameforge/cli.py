"""Command-line interface: construct, verify, search, table, reduce.

Exit status contract: 0 = success (all requested verifications passed),
1 = a verification failed, 2 = usage error / malformed input / refusal,
3 = search budget exhausted (partial results).  All JSON output is
byte-stable for identical inputs and flags: keys are sorted and volatile
data (wall times, worker counts) never enters the payload.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path

from ._version import __version__
from .bounds import bounds_table
from .errors import (
    BudgetExceeded,
    InvalidParams,
    MalformedFile,
    NonUniformSupport,
    NotConstructible,
    VerificationFailed,
)
from .search import nonexistence_certificate, search_systematic_mds
from .states import (
    construct_minimal_ame,
    read_state,
    reduce_ame,
    reports_to_jsonable,
    verify_uniform_combinatorial,
    verify_uniform_dense,
    write_state,
)

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


@dataclass
class CommandOutcome:
    status: int
    summary: str
    json_path: str | None = None


def _write_json(path: str, payload) -> None:
    Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def _maybe_json(args, payload) -> str | None:
    if getattr(args, "json", None):
        _write_json(args.json, payload)
        return args.json
    return None


def _default_budget(args) -> int | None:
    if args.budget is not None:
        return args.budget
    env = os.environ.get("AMEFORGE_BUDGET")
    return int(env) if env else None


def _workers(args) -> int:
    if args.workers is not None:
        return max(1, args.workers)
    return os.cpu_count() or 1


# ---------------------------------------------------------------------------
# construct


def cmd_construct(args) -> CommandOutcome:
    try:
        state = construct_minimal_ame(args.n, args.d)
    except NotConstructible as exc:
        return CommandOutcome(EXIT_USAGE, f"refused ({exc.kind}): {exc}")
    except InvalidParams as exc:
        return CommandOutcome(EXIT_USAGE, f"usage error: {exc}")
    comb = verify_uniform_combinatorial(state)
    dense = verify_uniform_dense(state)
    all_pass = all(r.passed for r in comb) and all(r.passed for r in dense)
    out = args.out or f"ame_{args.n}_{args.d}.state"
    write_state(state, out)
    payload = {
        "n": state.n,
        "d": state.d,
        "support": state.support_size,
        "state_file": str(out),
        "combinatorial": reports_to_jsonable(comb),
        "dense": reports_to_jsonable(dense),
        "all_pass": all_pass,
    }
    json_path = _maybe_json(args, payload)
    status = EXIT_OK if all_pass else EXIT_VERIFICATION
    return CommandOutcome(
        status,
        f"AME({state.n},{state.d}) minimal support: {state.support_size} kets, "
        f"{len(comb)} bipartitions {'verified' if all_pass else 'FAILED'}; wrote {out}",
        json_path,
    )


# ---------------------------------------------------------------------------
# verify


def cmd_verify(args) -> CommandOutcome:
    try:
        state = read_state(args.state)
    except (MalformedFile, OSError) as exc:
        return CommandOutcome(EXIT_USAGE, f"cannot read state file: {exc}")
    payload = {"n": state.n, "d": state.d, "mode": args.mode, "support": state.support_size}
    verdicts = []
    try:
        if args.mode in ("combinatorial", "both"):
            comb = verify_uniform_combinatorial(state)
            payload["combinatorial"] = reports_to_jsonable(comb)
            verdicts.append([r.passed for r in comb])
        if args.mode in ("dense", "both"):
            dense = verify_uniform_dense(state)
            payload["dense"] = reports_to_jsonable(dense)
            verdicts.append([r.passed for r in dense])
    except NonUniformSupport as exc:
        return CommandOutcome(EXIT_USAGE, f"combinatorial mode needs uniform magnitudes: {exc}")
    except BudgetExceeded as exc:
        return CommandOutcome(EXIT_BUDGET, f"verification over budget: {exc}")
    all_pass = all(all(v) for v in verdicts)
    payload["all_pass"] = all_pass
    if len(verdicts) == 2:
        payload["verdicts_agree"] = verdicts[0] == verdicts[1]
    json_path = _maybe_json(args, payload)
    n_reports = sum(len(v) for v in verdicts)
    return CommandOutcome(
        EXIT_OK if all_pass else EXIT_VERIFICATION,
        f"{'PASS' if all_pass else 'FAIL'}: {n_reports} bipartition reports "
        f"({args.mode}) for AME({state.n},{state.d}) candidate",
        json_path,
    )


# ---------------------------------------------------------------------------
# search


def _witness_text(q: int, k: int, m: int, witnesses) -> str:
    lines = [f"q={q} k={k} m={m}"]
    for w in witnesses:
        lines.append("")
        lines.extend(" ".join(str(x) for x in row) for row in w)
    return "\n".join(lines) + "\n"


def cmd_search(args) -> CommandOutcome:
    budget = _default_budget(args)
    workers = _workers(args)
    if args.certificate:
        if (args.q, args.n, args.k) != (5, 7, 3):
            return CommandOutcome(
                EXIT_USAGE, "the nonexistence certificate is defined for q=5 n=7 k=3"
            )
        cert = nonexistence_certificate(budget=budget, workers=workers)
        json_path = _maybe_json(args, cert)
        if cert["status"] != "complete":
            return CommandOutcome(EXIT_BUDGET, "certificate incomplete: budget exhausted", json_path)
        return CommandOutcome(EXIT_OK, f"certificate complete: {cert['conclusion']}", json_path)

    info_sets = (
        list(combinations(range(args.n), args.k)) if args.all_information_sets else [None]
    )
    reports = []
    status = EXIT_OK
    for info in info_sets:
        remaining = None if budget is None else budget - sum(r.candidates_examined for r in reports)
        if remaining is not None and remaining <= 0:
            status = EXIT_BUDGET
            break
        try:
            reports.append(
                search_systematic_mds(
                    args.q, args.n, args.k,
                    budget=remaining, workers=workers, information_set=info,
                )
            )
        except InvalidParams as exc:
            return CommandOutcome(EXIT_USAGE, f"usage error: {exc}")
        except BudgetExceeded as exc:
            reports.append(exc.report)
            status = EXIT_BUDGET
            break
    found = sum(r.mds_found for r in reports)
    examined = sum(r.candidates_examined for r in reports)
    payload = {
        "reports": [r.signature() for r in reports],
        "total_mds_found": found,
        "total_candidates_examined": examined,
        "complete": status == EXIT_OK,
    }
    json_path = _maybe_json(args, payload)
    if args.witness_file:
        m = args.n - args.k
        blocks = [w for r in reports for w in r.witnesses]
        Path(args.witness_file).write_text(
            _witness_text(args.q, args.k, m, blocks), encoding="utf-8"
        )
    scope = f"{len(reports)} information set(s)" if args.all_information_sets else "fixed information set"
    tail = "" if status == EXIT_OK else " [PARTIAL: budget exhausted]"
    return CommandOutcome(
        status,
        f"{found} MDS codes found in [{args.n},{args.k}] over GF({args.q}) "
        f"({scope}, {examined} candidate extensions){tail}",
        json_path,
    )


# ---------------------------------------------------------------------------
# table


def cmd_table(args) -> CommandOutcome:
    try:
        rows = bounds_table(args.d_max)
    except InvalidParams as exc:
        return CommandOutcome(EXIT_USAGE, f"usage error: {exc}")
    payload = [
        {"d": r.d, "lower": r.lower, "upper": r.upper, "exact": r.exact, "note": r.note}
        for r in rows
    ]
    json_path = _maybe_json(args, payload)
    lines = [f"{'d':>3} {'lower':>6} {'upper':>6} {'exact':>6}  note"]
    for r in rows:
        exact = str(r.exact) if r.exact is not None else "-"
        lines.append(f"{r.d:>3} {r.lower:>6} {r.upper:>6} {exact:>6}  {r.note}")
    return CommandOutcome(EXIT_OK, "\n".join(lines), json_path)


# ---------------------------------------------------------------------------
# reduce


def cmd_reduce(args) -> CommandOutcome:
    try:
        state = read_state(args.state)
    except (MalformedFile, OSError) as exc:
        return CommandOutcome(EXIT_USAGE, f"cannot read state file: {exc}")
    try:
        smaller = reduce_ame(state)
    except InvalidParams as exc:
        return CommandOutcome(EXIT_USAGE, f"usage error: {exc}")
    except VerificationFailed as exc:
        return CommandOutcome(EXIT_VERIFICATION, f"verification failed: {exc}")
    out = args.out or (Path(args.state).stem + "_reduced.state")
    write_state(smaller, out)
    payload = {
        "n": smaller.n,
        "d": smaller.d,
        "support": smaller.support_size,
        "state_file": str(out),
    }
    json_path = _maybe_json(args, payload)
    return CommandOutcome(
        EXIT_OK,
        f"reduced to verified AME({smaller.n},{smaller.d}) with "
        f"{smaller.support_size} kets; wrote {out}",
        json_path,
    )


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ameforge",
        description="Minimal-support AME states from MDS codes: construct, verify, search, bound.",
    )
    parser.add_argument("--version", action="version", version=f"ameforge {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build and verify a minimal-support AME(n,d) state")
    p.add_argument("n", type=int)
    p.add_argument("d", type=int)
    p.add_argument("--out", help="state file path (default ame_<n>_<d>.state)")
    p.add_argument("--json", help="write the verification payload to this path")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="verify the AME property of a state file")
    p.add_argument("state")
    p.add_argument("--mode", choices=["combinatorial", "dense", "both"], default="both")
    p.add_argument("--json", help="write bipartition reports to this path")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", help="exhaustive search for linear MDS [n,k] codes over GF(q)")
    p.add_argument("q", type=int)
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    p.add_argument("--budget", type=int, help="max candidate extensions (env AMEFORGE_BUDGET)")
    p.add_argument("--workers", type=int, help="worker processes (default: available parallelism)")
    p.add_argument("--all-information-sets", action="store_true",
                   help="repeat the sweep once per information set")
    p.add_argument("--certificate", action="store_true",
                   help="produce the signed AME(7,5) nonexistence certificate")
    p.add_argument("--witness-file", help="stream every witness parity block to this path")
    p.add_argument("--json", help="write reports / certificate to this path")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("table", help="existence bounds for N(d), d = 3..d_max")
    p.add_argument("d_max", type=int)
    p.add_argument("--json", help="write the table to this path")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("reduce", help="turn a verified AME(n,d) state into AME(n-1,d)")
    p.add_argument("state")
    p.add_argument("--out", help="output state file (default <state>_reduced.state)")
    p.add_argument("--json", help="write the reduction summary to this path")
    p.set_defaults(func=cmd_reduce)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse uses 2 for usage errors
        return int(exc.code or 0)
    outcome = args.func(args)
    print(outcome.summary)
    if outcome.json_path:
        print(f"json: {outcome.json_path}")
    return outcome.status


if __name__ == "__main__":
    sys.exit(main())
