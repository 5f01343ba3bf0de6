"""Command line interface: ``mdegree validate|analyze|gw|corpus``.

Exit codes: 0 ok, 1 usage or parse error, 2 invalid endomorphism,
3 internal invariant violation.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from .endo import Flavor, minimal_powers, validate
from .errors import DegenerateForm, InvariantViolation, MDegreeError, NotPuncturedEndo
from .fields import make_field
from .gw import ekl_obstruction, gw_invariants, parse_form
from .pipeline import (
    DEFAULT_TARGETS,
    AnalysisReport,
    JobError,
    JobSpec,
    analyze,
    check_report,
    corpus_dir,
    corpus_files,
    run_corpus_entry,
)

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_INTERNAL = 0, 1, 2, 3


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _error(kind: str, exc: Exception, **extra) -> None:
    payload = {"error": kind, "message": str(exc)}
    payload.update(extra)
    print(_dump(payload), file=sys.stderr)


def _load(args) -> JobSpec:
    return JobSpec.load(
        args.path,
        order=args.order,
        oracle_checks=True if getattr(args, "oracle_checks", False) else None,
        targets=args.target or None,
    )


def cmd_validate(args) -> int:
    job = _load(args)
    cand = job.candidate()
    v = validate(cand, job.order)
    names = cand.ring.vars
    out = {
        "valid": True,
        "flavor": v.flavor.value,
        "radical_witnesses": dict(zip(names, v.radical_witnesses)),
    }
    if v.flavor is Flavor.ISOLATED_ZERO:
        out["minimal_powers"] = dict(zip(names, minimal_powers(v)))
    if args.json:
        print(_dump(out))
    else:
        print(f"valid: {out['flavor']}")
        for n in names:
            line = f"  {n} in sqrt<f>"
            if "minimal_powers" in out:
                line += f", d_{n} = {out['minimal_powers'][n]}"
            print(line)
    return EXIT_OK


def cmd_analyze(args) -> int:
    job = _load(args)
    report = analyze(job)
    print(report.to_json() if args.json else report.format_text())
    check_report(report)
    return EXIT_OK


def cmd_gw(args) -> int:
    field = make_field(args.field)
    form = parse_form(args.form, field)
    inv = gw_invariants(form)
    targets = [form] if not args.target else [parse_form(t, field) for t in args.target]
    verdicts = [ekl_obstruction(t).to_dict() for t in targets]
    out = {"field": str(field), "invariants": inv.to_dict(), "obstruction": verdicts[0]}
    if args.target:
        out["obstruction"] = verdicts
    if args.json:
        print(_dump(out))
    else:
        d = inv.to_dict()
        head = f"field {field}: rank {d['rank']}, disc {d['disc']}"
        if "signature" in d:
            head += f", signature {d['signature']}"
        print(head)
        if "hasse" in d:
            print("  hasse: " + ", ".join(f"{k}: {v:+d}" for k, v in d["hasse"].items()))
        print(f"  witt index {d['witt_index']}, anisotropic <{', '.join(d['anisotropic'])}>")
        for v in verdicts:
            line = f"  <{', '.join(v['target'])}>: {v['status']} ({v['reason']})"
            if v.get("note"):
                line += f"\n    field-sensitive: {v['note']}"
            print(line)
    return EXIT_OK


def _corpus_paths(args):
    paths = corpus_files()
    if args.field:
        want = str(make_field(args.field))
        paths = [p for p in paths if json.loads(p.read_text()).get("field") == want]
    return paths


def cmd_corpus(args) -> int:
    paths = _corpus_paths(args)
    if args.action == "list":
        rows = []
        for p in paths:
            data = json.loads(p.read_text())
            exp = data.get("expect") or {}
            flavor = exp.get("flavor") or ("invalid" if exp.get("valid") is False else "?")
            rows.append({"name": data.get("name", p.stem), "field": data["field"],
                         "polys": data["polys"], "flavor": flavor})
        if args.json:
            print(_dump({"corpus_dir": str(corpus_dir()), "maps": rows}))
        else:
            for r in rows:
                print(f"{r['name']:24s} {r['field']:4s} {r['flavor']:13s} ({', '.join(r['polys'])})")
        return EXIT_OK

    jobs = args.jobs or min(4, os.cpu_count() or 1)
    todo = [str(p) for p in paths]
    if jobs > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run_corpus_entry, todo, [args.oracle_checks] * len(todo),
                                    [args.order] * len(todo)))
    else:
        results = [run_corpus_entry(p, args.oracle_checks, args.order) for p in todo]
    results.sort(key=lambda r: r["name"])

    failures = [r for r in results if r["mismatches"] or r["violations"]]
    rank2 = [r for r in results if r["report"].get("qsw_check") in ("pass", "fail")]
    oracle_total = sum(len(r["report"].get("oracle_checks", {})) for r in results)
    oracle_ok = sum(sum(r["report"].get("oracle_checks", {}).values()) for r in results)
    summary = {
        "maps": len(results),
        "qsw_checked": len(rank2),
        "qsw_pass": sum(r["report"]["qsw_check"] == "pass" for r in rank2),
        "oracle_checks": oracle_total,
        "oracle_agreement": oracle_ok,
        "failures": [r["name"] for r in failures],
    }
    if args.json:
        print(_dump({"summary": summary, "results": results}))
    else:
        for r in results:
            rep = r["report"]
            if not rep["valid"]:
                desc = f"invalid (witness {rep['error']['witness']})"
            elif rep["flavor"] == "Unimodular":
                desc = "Unimodular, " + rep["nullhomotopy"]["verdict"]
            else:
                inv = rep["invariants"]
                desc = (f"IsolatedZero, dim {rep['local_algebra']['dim']}, "
                        f"<{', '.join(rep['diagonal'])}>, witt {inv['witt_index']}, qsw {rep['qsw_check']}")
            status = "FAIL" if (r["mismatches"] or r["violations"]) else "ok"
            print(f"{status:4s} {r['name']:24s} {rep['field']:4s} {desc}")
            for m in r["mismatches"] + r["violations"]:
                print(f"       ! {m}")
        print(f"{summary['maps']} maps; qsw {summary['qsw_pass']}/{summary['qsw_checked']} pass"
              + (f"; oracle agreement {oracle_ok}/{oracle_total}" if oracle_total else ""))
    return EXIT_INTERNAL if failures else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mdegree",
        description="Local A^1-degrees of endomorphisms of punctured affine space.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--order", choices=["lex", "degrevlex"], default=None, help="monomial order")

    p = sub.add_parser("validate", parents=[common], help="check a map and report its flavor")
    p.add_argument("path")
    p.set_defaults(func=cmd_validate, target=None)

    p = sub.add_parser("analyze", parents=[common], help="full pipeline on a job file")
    p.add_argument("path")
    p.add_argument("--target", action="append", help=f"diagonal target class (default {DEFAULT_TARGETS[0]})")
    p.add_argument("--oracle-checks", action="store_true", help="run independent cross-checks")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("gw", parents=[common], help="classify a form and test the obstruction")
    p.add_argument("form", help='diagonal "<1,1>" or Gram JSON "[[0,1],[1,0]]"')
    p.add_argument("--field", default="Q")
    p.add_argument("--target", action="append", help="classes to test instead of FORM")
    p.set_defaults(func=cmd_gw)

    p = sub.add_parser("corpus", parents=[common], help="list or run the shipped example maps")
    p.add_argument("action", choices=["run", "list"])
    p.add_argument("--field", default=None, help="only maps over this field")
    p.add_argument("--oracle-checks", action="store_true")
    p.add_argument("--jobs", type=int, default=None)
    p.set_defaults(func=cmd_corpus)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except NotPuncturedEndo as exc:
        _error("NotPuncturedEndo", exc, index=exc.index, witness=exc.witness)
        return EXIT_INVALID
    except InvariantViolation as exc:
        _error("InvariantViolation", exc)
        return EXIT_INTERNAL
    except DegenerateForm as exc:
        _error("Degenerate", exc)
        return EXIT_USAGE
    except (JobError, MDegreeError, ValueError) as exc:
        _error(type(exc).__name__, exc)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
