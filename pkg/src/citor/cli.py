"""Command-line interface.

Exit status: 0 when every requested check passes, 1 on a mathematical
failure (the witness is printed), 2 on an input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

import yaml

from . import __version__
from . import asymptotics as asy
from .analysis import SUITES, Entry, entry_report, pair_report, run_checks
from .poly import PolyParseError
from .problem import ProblemError, corpus_dir, corpus_files, load_problem
from .resolution import HorizonError, InfiniteResolution, matrix_factorization
from .scalar import INF, rational_to_json

GOLDEN = "golden.json"


class CheckFailure(Exception):
    """A mathematical check failed: exit status 1."""


# ---------------------------------------------------------------------------
# loading


def _read(path, field=None):
    try:
        with open(path, encoding="utf-8") as fh:
            data = yaml.safe_load(fh)
    except OSError as exc:
        raise ProblemError(f"cannot read {path}: {exc.strerror}") from None
    except yaml.YAMLError as exc:
        raise ProblemError(f"{path}: malformed YAML: {exc}") from None
    if field is not None and isinstance(data, dict):
        data["field"] = field
    return load_problem(data, source=os.path.basename(path))


def _problems(args):
    if args.problem:
        return [_read(args.problem, args.field)]
    return [_read(p, args.field) for p in corpus_files()]


def _entry_for_pair(args):
    for pb in _problems(args):
        if args.pair in pb.pairs:
            return Entry(pb, args.horizon), pb.pairs[args.pair]
    raise ProblemError(f"unknown pair {args.pair!r}")


def _entry_for_module(args):
    for pb in _problems(args):
        if args.module in pb.modules:
            return Entry(pb, args.horizon)
    raise ProblemError(f"unknown module {args.module!r}")


# ---------------------------------------------------------------------------
# output


def dumps(obj) -> str:
    """The byte-stable serialization used for reports and golden files."""
    return json.dumps(obj, sort_keys=True, indent=1, ensure_ascii=True) + "\n"


def _fmt_scalar(v):
    if isinstance(v, list) and len(v) == 2 and all(isinstance(x, int) and not isinstance(x, bool)
                                                   for x in v):
        return f"{v[0]}/{v[1]}" if v[1] != 1 else str(v[0])
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_fmt_scalar(x) for x in v) + "]"
    if v is None:
        return "-"
    return str(v)


def table(obj, prefix="") -> list[str]:
    """Flatten a report into ``key  value`` lines."""
    lines = []
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            key = f"{prefix}.{k}" if prefix else str(k)
            if isinstance(v, dict) and v:
                lines += table(v, key)
            else:
                lines.append(f"{key}  {_fmt_scalar(v)}")
    else:
        lines.append(f"{prefix}  {_fmt_scalar(obj)}")
    return lines


def betti_table(betti: dict) -> list[str]:
    rows = [f"{'i':>3} {'dim':>4} {'length':>7} {'beta':>6} {'mu':>4}"]
    for r in betti["records"]:
        rows.append(f"{r['i']:>3} {r['dimension']:>4} {str(r['length']):>7} "
                    f"{r['beta']:>6} {r['mu']:>4}")
    rows.append(f"finite length index: {betti['finite_length_index']}")
    return rows


def _emit(args, obj, text_lines=None):
    if args.format == "json":
        out = dumps(obj)
    else:
        out = "\n".join(text_lines if text_lines is not None else table(obj)) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


# ---------------------------------------------------------------------------
# commands


def cmd_resolve(args):
    E = _entry_for_module(args)
    res = E.resolution(args.module)
    obj = {"module": args.module, "horizon": E.horizon, "betti_numbers": res.betti(),
           "complete": res.complete, "differentials": res.export(),
           "checks": {"dd_zero": res.check_dd_zero(), "minimal": res.check_minimal(),
                      "exact": res.check_exact()}}
    lines = [f"module {args.module}  horizon {E.horizon}",
             "betti  " + " ".join(str(b) for b in res.betti())]
    lines += [f"{k}  {v}" for k, v in obj["checks"].items()]
    _emit(args, obj, lines)
    return 0 if all(obj["checks"].values()) else 1


def cmd_tor(args):
    E, (m, n) = _entry_for_pair(args)
    data = E.tor(m, n)
    recs = []
    for mod in data.modules:
        rep = mod.report
        recs.append({"i": mod.index, "dimension": rep.dimension,
                     "length": "inf" if rep.length is INF else rep.length, "mu": mod.mu,
                     "hilbert_numerator": {str(k): v for k, v in
                                           sorted(mod.presentation.hilbert.numerator.items())}})
    obj = {"pair": args.pair, "modules": [m, n], "tor": recs}
    lines = [f"Tor_{r['i']}  length {r['length']}  dim {r['dimension']}  mu {r['mu']}" for r in recs]
    _emit(args, obj, lines)
    return 0


def cmd_betti(args):
    E, (m, n) = _entry_for_pair(args)
    b = E.betti(m, n).as_dict()
    b = json.loads(json.dumps(b, default=lambda x: "inf"))
    _emit(args, b, betti_table(b))
    return 0


def _fit(E, m, n):
    try:
        return E.fit(m, n)
    except asy.FitError as exc:
        raise CheckFailure(f"fit failed: {exc}") from None


def cmd_fit(args):
    E, (m, n) = _entry_for_pair(args)
    fit = _fit(E, m, n)
    bad = asy.check_fit_invariants(fit, E.ring.codim)
    obj = fit.as_dict() | {"pair": args.pair, "invariant_violations": bad}
    _emit(args, obj)
    return 1 if bad or not fit.faithful() else 0


def cmd_eta(args):
    E, (m, n) = _entry_for_pair(args)
    fit = _fit(E, m, n)
    ev = asy.eta(fit, args.e)
    if not ev.defined:
        raise CheckFailure(f"eta_{args.e} is undefined: e is below the complexity {fit.c}")
    obj = ev.as_dict() | {"pair": args.pair, "confidence": fit.confidence}
    _emit(args, obj, [_fmt_scalar(rational_to_json(ev.value))])
    return 0


def cmd_theta(args):
    E, (m, n) = _entry_for_pair(args)
    if E.ring.codim != 1:
        raise ProblemError("theta needs a hypersurface (one relation)")
    fit = _fit(E, m, n)
    try:
        th = asy.theta(E.betti(m, n), fit, E.ring.dim_Q)
    except asy.FitError as exc:
        raise CheckFailure(str(exc)) from None
    _emit(args, th.as_dict() | {"pair": args.pair}, [str(th.value)])
    return 0 if th.periodic and th.equals_two_eta else 1


def cmd_chi(args):
    E, (m, n) = _entry_for_pair(args)
    if not E.finite_tensor(m, n):
        raise CheckFailure("chi needs M ⊗ N of finite length")
    obj = {"pair": args.pair}
    if E.ring.codim == 0:
        obj["serre"] = asy.serre_chi(E.betti(m, n).lengths)
    fit = _fit(E, m, n)
    g = asy.gulliksen_chi(fit, E.ring.codim)
    obj["gulliksen"] = g.as_dict()
    _emit(args, obj)
    return 0 if g.consistent else 1


def cmd_complexity(args):
    E, (m, n) = _entry_for_pair(args)
    rep = pair_report(E, m, n)["complexity"]
    if rep is None:
        raise CheckFailure("complexity fits failed; increase the horizon")
    _emit(args, rep | {"pair": args.pair})
    ok = rep["bound_ok"] is not False and rep["equal"] is not False
    return 0 if ok else 1


def cmd_operators(args):
    E = _entry_for_module(args)
    if E.ring.codim == 0:
        raise ProblemError("operators need at least one relation")
    ops = E.operators(args.module)
    obj = {"module": args.module, "r": ops.r, "identity": ops.check_identity(),
           "method": ops.method, "fallbacks": ops.fallbacks}
    if E.ring.codim == 1:
        res = E.resolution(args.module)
        if not res.complete:
            try:
                obj["matrix_factorization"] = matrix_factorization(res, ops).as_dict()
            except HorizonError as exc:
                raise CheckFailure(str(exc)) from None
    _emit(args, obj)
    mf_ok = obj.get("matrix_factorization", {}).get("verified", True)
    return 0 if obj["identity"] and mf_ok else 1


def cmd_check(args):
    suites = [args.suite] if args.suite else list(SUITES)
    records = []
    for pb in _problems(args):
        E = Entry(pb, args.horizon)
        for rec in run_checks(E, suites):
            records.append(rec | {"entry": pb.name})
    fails = [r for r in records if r["status"] == "fail"]
    counts = {s: sum(1 for r in records if r["status"] == s) for s in ("pass", "fail", "n/a")}
    lines = [f"{r['status']:>4}  {r['entry']}/{r['suite']}/{r['check']}  {r['subject']}"
             + (f"  {json.dumps(r['detail'], sort_keys=True)}" if r["status"] == "fail" else "")
             for r in records]
    lines.append(f"pass {counts['pass']}  fail {counts['fail']}  n/a {counts['n/a']}")
    _emit(args, {"suites": suites, "records": records, "counts": counts}, lines)
    return 1 if fails else 0


def _report_one(path, field, horizon):
    pb = _read(path, field)
    return pb.name, entry_report(Entry(pb, horizon))


def build_corpus_report(field=None, horizon=None, jobs=1) -> dict:
    paths = corpus_files()
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_report_one, paths, [field] * len(paths),
                                    [horizon] * len(paths)))
    else:
        results = [_report_one(p, field, horizon) for p in paths]
    return {"version": __version__, "entries": dict(sorted(results))}


def structural_diff(a, b, path="", limit=40) -> list[str]:
    out = []

    def walk(x, y, p):
        if len(out) >= limit:
            return
        if isinstance(x, dict) and isinstance(y, dict):
            for k in sorted(set(x) | set(y)):
                q = f"{p}.{k}" if p else k
                if k not in x:
                    out.append(f"+ {q}: {json.dumps(y[k], sort_keys=True)[:120]}")
                elif k not in y:
                    out.append(f"- {q}: {json.dumps(x[k], sort_keys=True)[:120]}")
                else:
                    walk(x[k], y[k], q)
        elif isinstance(x, list) and isinstance(y, list) and len(x) == len(y):
            for i, (u, v) in enumerate(zip(x, y)):
                walk(u, v, f"{p}[{i}]")
        elif x != y:
            out.append(f"~ {p}: golden {json.dumps(x, sort_keys=True)[:120]} "
                       f"!= computed {json.dumps(y, sort_keys=True)[:120]}")

    walk(a, b, path)
    return out


def cmd_corpus(args):
    report = build_corpus_report(args.field, args.horizon, args.jobs)
    text = dumps(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    golden_path = os.path.join(corpus_dir(), GOLDEN)
    if args.update_golden:
        with open(golden_path, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {golden_path}")
        return 0
    fails = [(name, c) for name, rep in report["entries"].items()
             for c in rep["checks"] if c["status"] == "fail"]
    status = 0
    for name, c in fails:
        print(f"FAIL {name}/{c['suite']}/{c['check']} {c['subject']}: "
              f"{json.dumps(c['detail'], sort_keys=True)}")
        status = 1
    try:
        with open(golden_path, encoding="utf-8") as fh:
            golden_text = fh.read()
    except OSError:
        print(f"no golden report at {golden_path}")
        return 1
    if golden_text != text:
        print("report differs from the golden file:")
        for line in structural_diff(json.loads(golden_text), report):
            print("  " + line)
        status = 1
    n = sum(len(r["checks"]) for r in report["entries"].values())
    print(f"corpus: {len(report['entries'])} entries, {n} checks, "
          f"{len(fails)} failing, golden {'match' if golden_text == text else 'MISMATCH'}")
    return status


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--horizon", type=int, default=None,
                        help="homological horizon (default per entry, or CITOR_HORIZON)")
    common.add_argument("--field", default=None, help="coefficient field: q or fp:P")
    common.add_argument("--out", default=None, help="write output to PATH")
    common.add_argument("--format", choices=("json", "table"), default="table")
    common.add_argument("--problem", default=None, help="problem file (default: shipped corpus)")

    p = argparse.ArgumentParser(prog="citor", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"citor {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, helptext, pair=False, module=False):
        sp = sub.add_parser(name, parents=[common], help=helptext)
        if pair:
            sp.add_argument("--pair", required=True)
        if module:
            sp.add_argument("--module", required=True)
        sp.set_defaults(fn=fn)
        return sp

    add("resolve", cmd_resolve, "minimal free resolution of a module", module=True)
    add("tor", cmd_tor, "Tor modules of a pair", pair=True)
    add("betti", cmd_betti, "generalized Betti numbers of a pair", pair=True)
    add("fit", cmd_fit, "rational Poincaré series fit", pair=True)
    add("eta", cmd_eta, "eta_e of a pair", pair=True).add_argument("--e", type=int, required=True)
    add("theta", cmd_theta, "theta of a pair over a hypersurface", pair=True)
    add("chi", cmd_chi, "Serre and Gulliksen chi", pair=True)
    add("complexity", cmd_complexity, "lcx, tcx and cx of a pair", pair=True)
    add("operators", cmd_operators, "Eisenbud operators of a module", module=True)
    add("check", cmd_check, "run invariant suites").add_argument(
        "--suite", choices=SUITES, default=None)
    cp = add("corpus", cmd_corpus, "run the shipped corpus against the golden report")
    cp.add_argument("--jobs", type=int, default=1, help="entries to run concurrently")
    cp.add_argument("--update-golden", action="store_true", help="rewrite the golden report")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.horizon is not None and args.horizon < 2:
        print("error: --horizon must be at least 2", file=sys.stderr)
        return 2
    try:
        return args.fn(args)
    except PolyParseError as exc:
        print(f"error: {exc.args[0]}\n{exc.annotated()}", file=sys.stderr)
        return 2
    except ProblemError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InfiniteResolution as exc:
        print(f"failure: {exc}", file=sys.stderr)
        return 1
    except (CheckFailure, HorizonError) as exc:
        print(f"failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
