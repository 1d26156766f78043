"""Command-line interface.

Exit codes: 0 success, 1 property fails (not NM, not nested), 2 usage or
format error, 3 anomaly (a result contradicting a proven statement; a
reproduction bundle is written alongside).
"""
from __future__ import annotations

import argparse
import sys
import time
from multiprocessing import Pool
from pathlib import Path

from . import io
from .conditions import ALL, LEGACY, check_conditions, enumerate_open
from .errors import ConditionUnmet, NestkitError
from .generators import GenSpec, enumerate_nm_posets, random_nm_poset
from .nesting import (
    auto_nest,
    find_nesting_profile,
    rank2_nesting,
    thm1_nesting,
    thm2_nesting,
    verify_nesting,
)
from .nm import nm_check

OK, FAIL, USAGE, ANOMALY = 0, 1, 2, 3

METHODS = {
    "auto": auto_nest,
    "thm1": thm1_nesting,
    "thm2": thm2_nesting,
    "rank2": rank2_nesting,
    "search": find_nesting_profile,
}
FLAG_COLUMNS = ["thm4a", "thm4b", "thm4c", "thm4d", "thm5a", "thm5b", "thm5c", "thm5d", "thm7", "thm8"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _emit(args, text: str, payload: dict):
    if args.json:
        sys.stdout.write(io.dumps(payload))
    else:
        print(text)


def _profile_text(profile: dict) -> str:
    items = sorted(profile.items(), key=lambda kv: (-len(kv[0]), kv[0]))
    return " + ".join("{" + ",".join(map(str, rs)) + f"}}x{n}" for rs, n in items)


def _bundle(args, poset, method, detail, seed=None) -> int:
    bundle = {"poset": io.poset_to_json(poset), "seed": seed, "method": method, "detail": detail}
    out_dir = Path(getattr(args, "anomaly_dir", None) or ".")
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / f"nestkit-anomaly-{method}.json"
    path.write_text(io.dumps(bundle), encoding="utf-8")
    print(f"ANOMALY: {detail} (reproduction bundle: {path})", file=sys.stderr)
    return ANOMALY


def cmd_check_nm(args) -> int:
    P = io.read_poset(args.path)
    report = nm_check(P)
    if report.holds:
        text = "NM holds"
    else:
        i, j, S = report.witness
        text = f"NM fails from level {i} to level {j}: S = {sorted(S)}"
    _emit(args, text, report.to_json())
    return OK if report.holds else FAIL


def cmd_nest(args) -> int:
    P = io.read_poset(args.path)
    report = nm_check(P)
    if not report.holds:
        i, j, S = report.witness
        _emit(args, f"input is not NM (levels {i}->{j}, S = {sorted(S)})", {"error": "not NM", **report.to_json()})
        return FAIL
    try:
        D = METHODS[args.method](P)
    except ConditionUnmet as exc:
        print(f"method {args.method}: precondition unmet: {exc}", file=sys.stderr)
        return USAGE
    except NestkitError as exc:
        return _bundle(args, P, args.method, str(exc))
    if D is None:
        return _bundle(args, P, args.method, "exact search found no nesting of an NM poset")
    check = verify_nesting(P, D)
    if not check.ok:
        return _bundle(args, P, args.method, f"constructed decomposition failed verification: {check.failure}")
    if args.out:
        io.write_decomposition(D, args.out)
    text = f"method: {D.method}\nchains: {check.chain_count}\nprofile: {_profile_text(check.profile)}"
    _emit(args, text, {"method": D.method, "report": check.to_json(), **io.decomposition_to_json(D)})
    return OK


def cmd_verify(args) -> int:
    P = io.read_poset(args.poset)
    D = io.read_decomposition(args.decomposition)
    for chain in D.chains:
        for lvl, idx in chain:
            if not (0 <= lvl <= P.rank and 0 <= idx < P.rank_sizes[lvl]):
                raise io.FormatError(f"element ({lvl},{idx}) is not in the poset")
    report = verify_nesting(P, D)
    if report.ok:
        text = f"nested: {report.chain_count} chains, profile {_profile_text(report.profile)}"
    else:
        text = f"not nested: {report.failure}"
    _emit(args, text, report.to_json())
    return OK if report.ok else FAIL


def cmd_tuples(args) -> int:
    if args.max_r2 < 3:
        raise UsageError("--max-r2 must be at least 3")
    rows = []
    for r2 in range(3, args.max_r2 + 1):
        for r0 in range(1, r2 - 1):
            for r1 in range(r0 + 1, r2):
                rows.append(check_conditions(r0, r1, r2))
    open_tuples = enumerate_open(args.max_r2, args.conditions)
    if args.json:
        sys.stdout.write(io.dumps({
            "conditions": args.conditions,
            "rows": [r.to_json() for r in rows],
            "open": [list(t) for t in open_tuples],
        }))
        return OK
    lines = ["\t".join(["r0", "r1", "r2"] + FLAG_COLUMNS + ["k"])]
    for r in rows:
        flags = [str(int(r.flags[c])) for c in FLAG_COLUMNS]
        k = "-" if r.thm8_k is None else str(r.thm8_k)
        lines.append("\t".join([str(v) for v in r.tuple] + flags + [k]))
    lines.append("OPEN\t" + "\t".join(",".join(map(str, t)) for t in open_tuples))
    print("\n".join(lines))
    return OK


def _parse_ranks(text: str) -> tuple[int, ...]:
    try:
        ranks = tuple(int(v) for v in text.split(","))
    except ValueError:
        raise UsageError(f"bad --ranks {text!r}") from None
    if not ranks or any(r < 1 for r in ranks):
        raise UsageError(f"bad --ranks {text!r}")
    return ranks


def cmd_gen(args) -> int:
    ranks = _parse_ranks(args.ranks)
    try:
        spec = GenSpec(ranks, args.seed, args.density, args.max_attempts)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    P = random_nm_poset(spec)
    holds = nm_check(P).holds
    if not holds:
        return _bundle(args, P, "gen", "generator produced a non-NM poset", seed=args.seed)
    if args.out:
        io.write_poset(P, args.out)
    else:
        sys.stdout.write(io.dumps(io.poset_to_json(P)))
    print(f"NM holds: ranks {list(ranks)}, {len(P.covers())} covers", file=sys.stderr)
    return OK


def _nest_one(P):
    D = find_nesting_profile(P)
    return D is not None and verify_nesting(P, D).ok


def cmd_enumerate(args) -> int:
    ranks = _parse_ranks(args.ranks)
    start = time.perf_counter()
    posets = enumerate_nm_posets(ranks, cap=args.cap)
    count = 0
    missing = None
    out = open(args.out, "w", encoding="utf-8") if args.out else None
    try:
        if args.nest:
            if args.workers > 1:
                posets = list(posets)
                with Pool(args.workers) as pool:
                    results = pool.imap(_nest_one, posets, chunksize=256)
                    for P, found in zip(posets, results):
                        count += 1
                        if not found and missing is None:
                            missing = P
            else:
                for P in posets:
                    count += 1
                    if not _nest_one(P) and missing is None:
                        missing = P
        else:
            for P in posets:
                count += 1
                if out:
                    out.write(io.dumps(io.poset_to_json(P)))
    finally:
        if out:
            out.close()
    elapsed = time.perf_counter() - start
    payload = {"ranks": list(ranks), "count": count, "nested_checked": bool(args.nest), "not_found": missing is not None}
    _emit(args, f"{count} labeled NM posets with ranks {list(ranks)}" + (" all nested" if args.nest and missing is None else ""), payload)
    print(f"elapsed {elapsed:.1f}s", file=sys.stderr)
    if missing is not None:
        return _bundle(args, missing, "search", "no nesting found for an enumerated NM poset")
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nestkit", description="Nested chain decompositions of NM posets of rank <= 3.")
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check-nm", help="decide the normalized matching property")
    p.add_argument("path")
    p.set_defaults(func=cmd_check_nm)

    p = sub.add_parser("nest", help="construct a nesting")
    p.add_argument("path")
    p.add_argument("--method", choices=sorted(METHODS), default="auto")
    p.add_argument("--out")
    p.add_argument("--anomaly-dir")
    p.set_defaults(func=cmd_nest)

    p = sub.add_parser("verify", help="verify a decomposition file against a poset file")
    p.add_argument("poset")
    p.add_argument("decomposition")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("tuples", help="condition table for canonical rank-3 tuples")
    p.add_argument("--max-r2", type=int, required=True)
    p.add_argument("--conditions", choices=[LEGACY, ALL], default=ALL)
    p.set_defaults(func=cmd_tuples)

    p = sub.add_parser("gen", help="generate a random NM poset")
    p.add_argument("--ranks", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--density", type=float, default=0.5)
    p.add_argument("--max-attempts", type=int, default=10_000)
    p.add_argument("--out")
    p.add_argument("--anomaly-dir")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("enumerate", help="enumerate labeled NM posets, optionally nesting each")
    p.add_argument("--ranks", required=True)
    p.add_argument("--cap", type=int)
    p.add_argument("--nest", action="store_true", help="run the exact search on every poset")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", help="write posets as JSON lines")
    p.add_argument("--anomaly-dir")
    p.set_defaults(func=cmd_enumerate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"nestkit: {exc}", file=sys.stderr)
        return USAGE
    except (io.FormatError, NestkitError, ValueError) as exc:
        print(f"nestkit: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
