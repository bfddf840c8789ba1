"""Command line interface: ``reconlab <command> ...``.

Exit status is 0 on success, 1 for invalid input and 2 for internal errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Optional, Sequence

from . import constructors, erasures, feasibility, potential, systems
from .exceptions import ReconError
from .simulate import SimConfig, default_seed, simulate
from .spectra import GaugeNorm


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _floats(s: str) -> list[float]:
    return [float(x) for x in s.split(",") if x.strip()]


def _ints(s: str) -> list[int]:
    return [int(x) for x in s.split(",") if x.strip()]


def _norms(specs: Optional[Sequence[str]], default=("op",)) -> list[GaugeNorm]:
    out = []
    for s in specs or default:
        out.extend(GaugeNorm.parse(x) for x in s.split(",") if x.strip())
    return out


def _emit(obj, path: Optional[str]) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_construct(a) -> int:
    if a.kind == "dft":
        if a.k is None:
            raise UsageError("construct --kind dft needs --k")
        V = constructors.dft_uwp(a.m, a.l, a.k)
    else:
        if a.d is None:
            raise UsageError(f"construct --kind {a.kind} needs --d")
        seed = default_seed() if a.seed is None else a.seed
        make = constructors.random_protocol if a.kind == "random-protocol" else constructors.random_system
        V = make(a.m, a.l, a.d, seed=seed, field=a.field)
    if a.output:
        systems.save(V, a.output)
    else:
        print(json.dumps(systems.system_to_dict(V)))
    return 0


def cmd_analyze(a) -> int:
    V = systems.load(a.system)
    norms = _norms(a.norm, ("trace,fro,op",))
    cls = systems.classify(V)
    out = {
        "shape": list(V.shape.triple),
        "classification": cls.to_dict(),
        "general": potential.check_general_optimality(V, norms).to_dict(),
        "uwp": potential.check_uwp_optimality(V, norms).to_dict(),
    }
    if V.m >= 2:
        out["lemma"] = [erasures.lemma_identities(V, i).to_dict() for i in range(V.m)]
        out["c_mld"] = erasures.c_mld(V)
        out["in_class_C"] = erasures.in_class_C(V)
        out["two_uniform"] = erasures.is_two_uniform(V)
    _emit(out, a.output)
    return 0


def cmd_erasure_scan(a) -> int:
    V = systems.load(a.system)
    V.shape.warn_if_nonstandard()
    reports = []
    for p in a.p or [1, 2]:
        for psi in _norms(a.norm):
            reports.append(erasures.worst_case_error(V, p, psi, table=a.table or bool(a.csv)))
    if a.csv:
        with open(a.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["p", "norm", "pattern", "error", "bound"])
            for r in reports:
                for K, e in r.table:
                    w.writerow([r.p, r.norm, str(K), repr(e), repr(r.bound)])
        if not a.table:
            for r in reports:
                r.table = []
    _emit({"shape": list(V.shape.triple), "reports": [r.to_dict() for r in reports]}, a.output)
    return 0


def cmd_feasible(a) -> int:
    if a.uwp:
        if None in (a.m, a.l, a.d):
            raise UsageError("feasible --uwp needs --m, --l and --d")
        verdict = feasibility.uwp_existence(a.m, a.l, a.d)
    elif a.spectra:
        if a.d is None:
            raise UsageError("feasible --spectra needs --d")
        spectra = [_floats(block) for block in a.spectra.split(";")]
        verdict = feasibility.protocol_feasible(spectra, a.d)
    elif a.weights:
        if a.d is None:
            raise UsageError("feasible --weights needs --d")
        w = _floats(a.weights)
        l = a.l if a.l is not None else 1
        t = _ints(a.ranks) if a.ranks else [l] * len(w)
        verdict = feasibility.q_fundamental_check(w, t, a.d, l)
    else:
        raise UsageError("feasible needs one of --uwp, --spectra or --weights")
    print("feasible" if verdict.feasible else "infeasible")
    if not verdict.trace_ok:
        print(f"trace condition fails: {verdict.trace_lhs:.12g} != {verdict.trace_rhs:.12g}")
    for line in verdict.lines():
        print(line)
    if a.output:
        _emit(verdict.to_dict(), a.output)
    return 0


def cmd_simulate(a) -> int:
    cfg = SimConfig(system=a.system, trials=a.trials, loss=a.loss, p=a.p, q=a.q,
                    norm=a.norm, seed=a.seed, output=a.csv)
    rep = simulate(cfg)
    if a.output:
        with open(a.output, "w") as fh:
            fh.write(rep.to_json() + "\n")
    else:
        print(rep.to_json())
    return 0


def _flatten(obj, prefix="") -> dict:
    out = {}
    if isinstance(obj, dict):
        for k, v in obj.items():
            out.update(_flatten(v, f"{prefix}{k}."))
    elif isinstance(obj, list) and obj and isinstance(obj[0], dict):
        for i, v in enumerate(obj):
            out.update(_flatten(v, f"{prefix}{i}."))
    else:
        out[prefix[:-1]] = json.dumps(obj) if isinstance(obj, list) else obj
    return out


def cmd_report(a) -> int:
    rows = []
    for path in a.inputs:
        with open(path) as fh:
            try:
                doc = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ReconError(f"{path}: not valid JSON ({exc})") from exc
        flat = {k: v for k, v in _flatten(doc).items() if "table" not in k and "P_q" not in k}
        rows.append({"source": path, **flat})
    cols = ["source"] + sorted({k for r in rows for k in r} - {"source"})
    buf = io.StringIO()
    if a.format == "csv":
        w = csv.DictWriter(buf, fieldnames=cols)
        w.writeheader()
        w.writerows(rows)
    else:
        buf.write("| key | " + " | ".join(r["source"] for r in rows) + " |\n")
        buf.write("|---" * (len(rows) + 1) + "|\n")
        for c in cols[1:]:
            buf.write(f"| {c} | " + " | ".join(str(r.get(c, "")) for r in rows) + " |\n")
    if a.output:
        with open(a.output, "w") as fh:
            fh.write(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="reconlab", description="Reconstruction systems and packet-erasure analysis.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("construct", help="emit a system as JSON")
    c.add_argument("--kind", choices=["dft", "random-protocol", "random-system"], required=True)
    c.add_argument("--m", type=int, required=True)
    c.add_argument("--l", type=int, required=True)
    c.add_argument("--k", type=int)
    c.add_argument("--d", type=int)
    c.add_argument("--seed", type=int)
    c.add_argument("--field", choices=["complex", "real"], default="complex")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_construct)

    c = sub.add_parser("analyze", help="q-potential report, classification, cross-block identities")
    c.add_argument("system")
    c.add_argument("--norm", action="append", help="comma-separated norms (default trace,fro,op)")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_analyze)

    c = sub.add_parser("erasure-scan", help="worst-case erasure errors")
    c.add_argument("system")
    c.add_argument("--p", type=int, action="append")
    c.add_argument("--norm", action="append")
    c.add_argument("--table", action="store_true", help="include every pattern in the JSON")
    c.add_argument("--csv")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_erasure_scan)

    c = sub.add_parser("feasible", help="existence of protocols with prescribed spectra")
    c.add_argument("--spectra", help="blocks separated by ';', entries by ','")
    c.add_argument("--weights")
    c.add_argument("--ranks")
    c.add_argument("--uwp", action="store_true")
    c.add_argument("--m", type=int)
    c.add_argument("--l", type=int)
    c.add_argument("--d", type=int)
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_feasible)

    c = sub.add_parser("simulate", help="Monte-Carlo erasure channel")
    c.add_argument("system")
    c.add_argument("--trials", type=int, default=1000)
    c.add_argument("--loss", choices=["uniform", "bernoulli", "adversarial"], default="uniform")
    c.add_argument("--p", type=int, default=1)
    c.add_argument("--q", type=float, default=0.1)
    c.add_argument("--norm", default="op")
    c.add_argument("--seed", type=int)
    c.add_argument("--csv")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_simulate)

    c = sub.add_parser("report", help="merge JSON outputs into a CSV or markdown table")
    c.add_argument("inputs", nargs="+")
    c.add_argument("--format", choices=["csv", "md"], default="md")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_report)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except (UsageError, ReconError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
