"""Command-line frontend for batch verification and exploration.

Exit codes: 0 success, 1 inconclusive (Unknown verdict or failed check),
2 malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys

from .core import (LinearSystem, SystemParseError, expected_dim, parse_system,
                   virtual_dim)
from .cremona import cremona, standard_reduce, transcript_to_jsonl
from .degeneration import (Budget, CertificateError, check_certificate, degenerate,
                           recursive_dim)
from .neg_curves import find_splittings, hh_dimension, is_minus_one_special
from .oracle import DEFAULT_PRIME, oracle_report
from .tables import (classification_table, classification_to_csv,
                     classification_to_json, hard_cases_to_csv, verify_table)
from .verdict import UNKNOWN


def _parse(text: str) -> LinearSystem:
    try:
        return parse_system(text)
    except SystemParseError as err:
        print(f"error: {err}", file=sys.stderr)
        print(err.caret(), file=sys.stderr)
        raise SystemExit(2)


def _emit(args, payload: dict, text_lines: list[str]):
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        for line in text_lines:
            print(line)


def _budget(args) -> Budget:
    return Budget(max_depth=args.budget, scan_depth=min(2, args.budget),
                  prime=args.prime, seed=args.seed, trials=args.trials)


def _cmd_vdim(args) -> int:
    L = _parse(args.system)
    v, e = virtual_dim(L), expected_dim(L)
    _emit(args, {"system": str(L), "v": v, "e": e},
          [f"system: {L}", f"v: {v}", f"e: {e}"])
    return 0


def _cmd_dim(args) -> int:
    L = _parse(args.system)
    verdict = recursive_dim(L, _budget(args))
    if args.certificate:
        with open(args.certificate, "w") as fh:
            fh.write(verdict.dumps(indent=2))
    _emit(args, verdict.to_json(),
          [f"system: {L}", f"status: {verdict.status}", f"ell: {verdict.ell}",
           f"v: {virtual_dim(L)}", f"e: {expected_dim(L)}"])
    return 0 if verdict.status != UNKNOWN else 1


def _cmd_classify(args) -> int:
    L = _parse(args.system)
    special, witness = is_minus_one_special(L)
    payload = {"system": str(L), "special": special,
               "ell": hh_dimension(L).ell, "v": virtual_dim(L)}
    lines = [f"system: {L}", f"(-1)-special: {special}", f"ell: {payload['ell']}"]
    if witness is not None:
        payload["witness"] = {
            "splits": [{"curve": str(c), "n": n} for c, n in witness.entries],
            "residual": str(witness.residual),
        }
        lines.append("splits:")
        lines.extend(f"  {n} x {c}" for c, n in witness.entries)
        lines.append(f"residual: {witness.residual} "
                     f"(v = {virtual_dim(witness.residual)})")
    if args.splittings:
        found = find_splittings(L)
        payload["splittings"] = [{"curve": str(s.curve), "intersection": s.intersection}
                                 for s in found]
        lines.append("negative catalog intersections:")
        lines.extend(f"  {s.curve} . L = {s.intersection}" for s in found)
    _emit(args, payload, lines)
    return 0


def _cmd_cremona(args) -> int:
    L = _parse(args.system)
    if args.slots:
        out = cremona(L, *args.slots)
        _emit(args, {"system": str(L), "slots": args.slots, "result": str(out)},
              [f"{L} -> {out}"])
        return 0
    final, moves = standard_reduce(L)
    payload = {"system": str(L), "final": str(final),
               "moves": [m.to_json() for m in moves]}
    lines = [transcript_to_jsonl(moves)] if moves else []
    lines.append(f"final: {final}  (e = {expected_dim(final)})")
    _emit(args, payload, lines)
    return 0


def _cmd_degen(args) -> int:
    L = _parse(args.system)
    split = degenerate(L, args.k, args.b)
    payload = {
        "system": str(L), "k": args.k, "b": args.b,
        "plane": str(split.plane), "ruled": str(split.ruled),
        "plane_kernel": str(split.plane_kernel), "ruled_kernel": str(split.ruled_kernel),
        "v_plane": split.v_plane, "v_ruled": split.v_ruled,
        "v_plane_kernel": split.v_plane_kernel, "v_ruled_kernel": split.v_ruled_kernel,
    }
    _emit(args, payload, [
        f"plane:         {split.plane}  (v = {split.v_plane})",
        f"ruled:         {split.ruled}  (v = {split.v_ruled})",
        f"plane kernel:  {split.plane_kernel}  (v = {split.v_plane_kernel})",
        f"ruled kernel:  {split.ruled_kernel}  (v = {split.v_ruled_kernel})",
    ])
    return 0


def _cmd_oracle(args) -> int:
    text = args.system or args.system_flag
    if not text:
        print("error: no system given", file=sys.stderr)
        return 2
    L = _parse(text)
    report = oracle_report(L, args.seed, args.prime, args.trials)
    print(json.dumps(report, indent=None if args.json else 2))
    return 0


def _cmd_table(args) -> int:
    rows = classification_table(args.e_max)
    if args.action == "generate":
        if args.format == "json":
            print(json.dumps(classification_to_json(rows), indent=2))
        else:
            sys.stdout.write(classification_to_csv(rows))
        return 0
    report = verify_table(rows, args.mode, e_limit=args.e_max,
                          d_cap=args.max_degree, prime=args.prime,
                          seed=args.seed, trials=args.trials, jobs=args.jobs)
    for result in report.results:
        status = "ok" if result.passed else "FAIL"
        print(f"{status}  {result.system}  [{len(result.checks)} instances]")
        if not result.passed:
            for c in result.checks:
                if not c.passed:
                    print(f"      {c.system}: expected {c.expected}, got {c.got}")
                    print(f"      reproduce: {c.command}")
    print(f"{'all rows pass' if report.ok else 'FAILURES PRESENT'}")
    return 0 if report.ok else 1


def _cmd_hard_cases(args) -> int:
    sys.stdout.write(hard_cases_to_csv())
    return 0


def _cmd_check_certificate(args) -> int:
    with open(args.file) as fh:
        cert = json.load(fh)
    try:
        check_certificate(cert, replay_oracle=not args.no_oracle_replay)
    except (CertificateError, SystemParseError, KeyError, ValueError) as err:
        print(f"certificate INVALID: {err}", file=sys.stderr)
        return 1
    print(f"certificate OK: {cert['system']} has status "
          f"{cert['status']} (ell = {cert['ell']})")
    return 0


def _common_flags(parser: argparse.ArgumentParser, top: bool):
    """Global flags, accepted both before and after the subcommand."""
    s = argparse.SUPPRESS

    def default(value):
        return value if top else s

    parser.add_argument("--prime", type=int, default=default(DEFAULT_PRIME),
                        help="characteristic for rank computations")
    parser.add_argument("--seed", type=int, default=default(0))
    parser.add_argument("--trials", type=int, default=default(3))
    parser.add_argument("--budget", type=int, default=default(4),
                        help="recursion depth for the prover")
    parser.add_argument("--json", action="store_true", default=default(False),
                        help="emit one JSON document")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fatpoints",
        description="dimensions of linear systems of plane curves with fat points")
    _common_flags(parser, top=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("vdim", help="virtual and expected dimension")
    p.add_argument("system")
    _common_flags(p, top=False)
    p.set_defaults(func=_cmd_vdim)

    p = sub.add_parser("dim", help="prove the dimension (classifier, reduction, "
                                   "degenerations, rank oracle)")
    p.add_argument("system")
    p.add_argument("--certificate", metavar="FILE", help="dump the verdict trace")
    _common_flags(p, top=False)
    p.set_defaults(func=_cmd_dim)

    p = sub.add_parser("classify", help="(-1)-speciality with witness")
    p.add_argument("system")
    p.add_argument("--splittings", action="store_true",
                   help="also list all negative catalog intersections")
    _common_flags(p, top=False)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("cremona", help="apply one quadratic transformation or reduce")
    p.add_argument("system")
    p.add_argument("--slots", type=int, nargs=3, metavar=("I", "J", "K"),
                   help="transform on these slots; omit to reduce to standard form")
    _common_flags(p, top=False)
    p.set_defaults(func=_cmd_cremona)

    p = sub.add_parser("degen", help="print a (k,b)-degeneration")
    p.add_argument("system")
    p.add_argument("k", type=int)
    p.add_argument("b", type=int)
    _common_flags(p, top=False)
    p.set_defaults(func=_cmd_degen)

    p = sub.add_parser("oracle", help="finite-field rank dimension")
    p.add_argument("system", nargs="?")
    p.add_argument("--system", dest="system_flag", help="system string")
    _common_flags(p, top=False)
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("table", help="generate or verify the classification table")
    p.add_argument("action", choices=["generate", "verify"])
    p.add_argument("--e-max", type=int, default=4)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--mode", choices=["formula", "hh", "oracle"], default="formula")
    p.add_argument("--max-degree", type=int, default=26)
    p.add_argument("--jobs", type=int, default=1)
    _common_flags(p, top=False)
    p.set_defaults(func=_cmd_table)

    p = sub.add_parser("hard-cases", help="print the hard-case regression list")
    _common_flags(p, top=False)
    p.set_defaults(func=_cmd_hard_cases)

    p = sub.add_parser("check-certificate", help="replay a verdict trace")
    p.add_argument("file")
    p.add_argument("--no-oracle-replay", action="store_true")
    _common_flags(p, top=False)
    p.set_defaults(func=_cmd_check_certificate)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SystemExit as exc:
        return int(exc.code or 0)
    except (ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
