"""Command-line surface.

Verbs: build, invariants, transfers, classify, verify, predict, export.
Exit codes: 0 success, 1 validation or usage error, 2 verification found
violations.
"""

from __future__ import annotations

import argparse
import json
import sys

from .engine import build_group
from .errors import MaxClass5Error
from .export import (classify_report, export_dot, export_json,
                     export_multiplication_table, transfer_report)
from .fields import parse_table, predict_families, validate_record
from .params import PresentationParams
from .structure import structure_report
from .sweep import verify_proposition


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _add_group_args(p):
    p.add_argument("--n", type=int, help="order exponent (>= 4)")
    p.add_argument("--w", type=int, default=0)
    p.add_argument("--z", type=int, default=0)
    p.add_argument("--a", type=str, default="",
                   help="comma list a_{n-1},...,a_{n-k}")
    p.add_argument("--in", dest="infile", metavar="PATH",
                   help="group descriptor JSON instead of --n/--w/--z/--a")


def _add_out(p):
    p.add_argument("-o", "--out", metavar="PATH",
                   help="output path (default: stdout)")


def _parse_a(text):
    text = text.strip()
    if not text:
        return ()
    return tuple(int(tok) for tok in text.split(","))


def _group_from(ns):
    if ns.infile:
        with open(ns.infile, "r", encoding="utf-8") as fh:
            params = PresentationParams.from_descriptor(json.load(fh))
    else:
        if ns.n is None:
            raise _UsageError("--n (or --in) is required")
        params = PresentationParams.from_descriptor(
            {"p": 5, "n": ns.n, "w": ns.w, "z": ns.z,
             "a": list(_parse_a(ns.a))})
    return build_group(params)


def _emit(payload, out, raw=False):
    text = payload if raw else json.dumps(payload, indent=2) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_range(text):
    lo, sep, hi = text.partition("..")
    if not sep:
        return [int(lo)]
    return list(range(int(lo), int(hi) + 1))


def make_parser() -> _Parser:
    p = _Parser(prog="maxclass5",
                description="metabelian 5-groups of maximal class")
    sub = p.add_subparsers(dest="verb", required=True)

    b = sub.add_parser("build", help="build a group, write its descriptor")
    _add_group_args(b)
    _add_out(b)
    b.add_argument("--mode", choices=["exhaustive", "sampled"],
                   default="sampled")
    b.add_argument("--samples", type=int, default=10 ** 5)
    b.add_argument("--seed", type=int, default=0)

    for verb in ("invariants", "transfers", "classify"):
        q = sub.add_parser(verb, help=f"{verb} of one group")
        _add_group_args(q)
        _add_out(q)

    v = sub.add_parser("verify", help="sweep-verify a statement")
    v.add_argument("proposition",
                   choices=["prop31", "prop32", "prop33", "thm22", "lemma21"])
    v.add_argument("--n-range", default="4..7", metavar="A..B")
    v.add_argument("--samples", type=int, default=10 ** 5)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--workers", type=int, default=None)
    v.add_argument("--per-tuple", action="store_true",
                   help="include per-tuple observations in the report")
    _add_out(v)

    r = sub.add_parser("predict", help="field rows to family candidates")
    r.add_argument("--table", required=True, metavar="PATH")
    r.add_argument("--scenario", required=True, choices=["HL", "Htilde"])
    r.add_argument("--s", type=int, default=None)
    r.add_argument("--claim-n-ge7", action="store_true")
    _add_out(r)

    e = sub.add_parser("export", help="dot / json / multiplication table")
    _add_group_args(e)
    e.add_argument("--format", required=True, choices=["dot", "json", "table"])
    _add_out(e)
    return p


def run_command(argv) -> int:
    parser = make_parser()
    try:
        ns = parser.parse_args(argv)
    except _UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        parser.print_usage(sys.stderr)
        return 1

    try:
        if ns.verb == "build":
            G = _group_from(ns)
            rep = G.consistency_check(mode=ns.mode, samples=ns.samples,
                                      seed=ns.seed)
            if not rep.ok:
                sys.stderr.write("consistency check failed:\n")
                for f in rep.failures:
                    sys.stderr.write(f"  {f}\n")
                return 1
            _emit(G.descriptor(), ns.out)
            return 0

        if ns.verb == "invariants":
            _emit(structure_report(_group_from(ns)).to_dict(), ns.out)
            return 0

        if ns.verb == "transfers":
            _emit(transfer_report(_group_from(ns)), ns.out)
            return 0

        if ns.verb == "classify":
            _emit(classify_report(_group_from(ns)), ns.out)
            return 0

        if ns.verb == "verify":
            report = verify_proposition(
                ns.proposition, _parse_range(ns.n_range),
                samples=ns.samples, seed=ns.seed, workers=ns.workers)
            payload = report.to_dict()
            if not ns.per_tuple:
                payload["per_tuple"] = []
            _emit(payload, ns.out)
            return 0 if report.ok else 2

        if ns.verb == "predict":
            records = parse_table(ns.table)
            results = []
            for rec in records:
                val = validate_record(rec)
                item = {"record": rec.to_dict(), "ok": val.ok,
                        "flags": list(val.flags), "prediction": None}
                if val.ok:
                    pred = predict_families(rec, ns.scenario, s=ns.s,
                                            claim_n_ge7=ns.claim_n_ge7)
                    item["prediction"] = pred.to_dict()
                results.append(item)
            _emit({"scenario": ns.scenario, "s": ns.s, "results": results},
                  ns.out)
            return 0

        if ns.verb == "export":
            G = _group_from(ns)
            if ns.format == "dot":
                _emit(export_dot(G), ns.out, raw=True)
            elif ns.format == "json":
                _emit(export_json(G), ns.out)
            else:
                _emit(export_multiplication_table(G), ns.out, raw=True)
            return 0
    except MaxClass5Error as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    raise AssertionError("unreachable verb")


def main(argv=None) -> int:
    return run_command(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
