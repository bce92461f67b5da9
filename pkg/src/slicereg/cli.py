"""Batch front door.

Subcommands: validate, check2ps, riemann-info, eval, verify, interpolate.
JSON reports are deterministic for fixed inputs and --seed; wall time goes
to stderr only.  Exit codes: 0 ok, 1 property check failed, 2 schema error,
3 domain invalid (slice openness), 4 infeasible construction.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
import time
from concurrent.futures import ThreadPoolExecutor

from . import __version__
from .domain import SliceOpennessError
from .functions import verify_slice_regular, PathSliceFn
from .interp import (CaseHypothesisViolated, DuplicateProjection,
                     InterpolationProblem, NodeGenerationFailed, NotSeparable,
                     interpolate)
from .quat import Quaternion, psi, slice_decompose
from .riemann import StemPoint, stem_radii
from .schema import (SchemaError, load_domain, load_function, save_domain,
                     save_function)

EXIT_OK = 0
EXIT_PROPERTY = 1
EXIT_SCHEMA = 2
EXIT_INVALID = 3
EXIT_INFEASIBLE = 4


def _digest(path: str) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def _emit(report: dict, out_path: str | None):
    text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load(path: str, validate: bool):
    with open(path) as fh:
        data = json.load(fh)
    return load_domain(data, validate=validate)


def cmd_validate(args) -> int:
    report = {"command": "validate", "inputs": {"domain": _digest(args.domain)},
              "approximate": [], "results": {}}
    try:
        domain, approx = _load(args.domain, validate=False)
    except SchemaError as exc:
        report["results"] = {"schema": "error", "message": str(exc)}
        _emit(report, args.out)
        return EXIT_SCHEMA
    if approx:
        report["approximate"].append("sector-rasterization")
    try:
        domain.validate()
    except SliceOpennessError as exc:
        report["results"] = {"schema": "ok", "slice_open": False,
                             "witness_real_point": exc.witness,
                             "message": str(exc)}
        _emit(report, args.out)
        return EXIT_INVALID
    report["results"] = {"schema": "ok", "slice_open": True,
                         "pieces": len(domain.pieces),
                         "named_units": [list(u.axis()) for u in domain.named_units],
                         "round_trip": save_domain(domain) ==
                         save_domain(load_domain(save_domain(domain), validate=False)[0])}
    _emit(report, args.out)
    return EXIT_OK


def cmd_check2ps(args) -> int:
    report = {"command": "check2ps", "inputs": {"domain": _digest(args.domain)},
              "approximate": [], "results": {}}
    try:
        domain, approx = _load(args.domain, validate=False)
    except SchemaError as exc:
        report["results"] = {"schema": "error", "message": str(exc)}
        _emit(report, args.out)
        return EXIT_SCHEMA
    if approx:
        report["approximate"].append("sector-rasterization")
    open_ok = True
    try:
        domain.validate()
    except SliceOpennessError as exc:
        open_ok = False
        report["results"]["slice_open_witness"] = exc.witness
    ok, cert = domain.is_2path_symmetric()
    omega = domain.omega_2ps()
    results = report["results"]
    results["slice_open"] = open_ok
    results["two_path_symmetric"] = ok
    results["omega_2ps_rects"] = [[str(r.ax), str(r.bx), str(r.ay), str(r.by)]
                                  for r in omega.rects]
    results["s_omega_2ps"] = sorted([list(u.axis()) for u in domain.s_omega_2ps()])
    if not ok:
        results["witness"] = {
            "pair": [list(cert.pair[0].axis()), list(cert.pair[1].axis())],
            "point": [cert.witness_point.real, cert.witness_point.imag],
            "missing_slice": list(cert.missing_slice.axis()),
            "component_meets_real_axis": True,
        }
    _emit(report, args.out)
    if not ok:
        return EXIT_PROPERTY
    return EXIT_OK if open_ok else EXIT_INVALID


def cmd_riemann_info(args) -> int:
    report = {"command": "riemann-info", "inputs": {"domain": _digest(args.domain)},
              "approximate": ["sampled-radii"], "results": {}}
    try:
        domain, approx = _load(args.domain, validate=True)
    except SchemaError as exc:
        report["results"] = {"schema": "error", "message": str(exc)}
        _emit(report, args.out)
        return EXIT_SCHEMA
    except SliceOpennessError as exc:
        report["results"] = {"slice_open": False, "message": str(exc)}
        _emit(report, args.out)
        return EXIT_INVALID
    if approx:
        report["approximate"].append("sector-rasterization")
    sheets = []
    for u in list(domain.named_units) + [domain.generic_units[0]]:
        pb = domain.pullback(u)
        name = list(u.axis()) if domain.is_named(u) else "generic"
        sheets.append({"slice": name, "rects": len(pb.rects),
                       "area": float(pb.area())})
    import random
    rng = random.Random(args.seed)
    omega = domain.omega_2ps()
    radii = []
    for z in omega.sample(rng, 8):
        mu = StemPoint(z, None)
        rr = stem_radii(domain, mu)
        radii.append({"z": [z.real, z.imag], "r_plus": rr.r_plus,
                      "r_minus": rr.r_minus})
    report["results"] = {
        "sheets": sheets,
        "s_omega_2ps": sorted([list(u.axis()) for u in domain.s_omega_2ps()]),
        "omega_2ps_area": float(omega.area()),
        "sample_radii": radii,
    }
    _emit(report, args.out)
    return EXIT_OK


def _grid_rows(domain, f, pitch, fd, jobs):
    rows = []
    tasks = []
    for idx, unit in enumerate(domain.effective_slices):
        pb = domain.pullback(unit)
        for z in pb.grid_points(pitch, margin=2 * fd):
            tasks.append((idx, unit, z))

    def work(task):
        idx, unit, z = task
        q = psi(z, unit)
        v = f.eval(q)
        from .functions import _cr_residual
        res = _cr_residual(f, z, unit, fd)
        return (z.real, z.imag, idx, v, res)

    if jobs and jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(work, tasks))
    else:
        rows = [work(t) for t in tasks]
    return rows


def _write_csv(rows, domain, out_path):
    lines = ["x,y,slice_index,u1,u2,u3,f0,f1,f2,f3,cr_residual"]
    for x, y, idx, v, res in rows:
        u = domain.effective_slices[idx]
        lines.append(",".join([repr(x), repr(y), str(idx),
                               repr(u.u.x1), repr(u.u.x2), repr(u.u.x3),
                               repr(v.x0), repr(v.x1), repr(v.x2), repr(v.x3),
                               repr(res)]))
    text = "\n".join(lines) + "\n"
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_eval_or_verify(args, verify: bool) -> int:
    try:
        domain, _ = _load(args.domain, validate=True)
        with open(args.function) as fh:
            f = load_function(json.load(fh), domain)
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except SliceOpennessError as exc:
        print(f"invalid domain: {exc}", file=sys.stderr)
        return EXIT_INVALID
    rows = _grid_rows(domain, f, args.grid_pitch, args.fd_step, args.jobs)
    _write_csv(rows, domain, args.out)
    if verify:
        worst = max((r[4] for r in rows), default=0.0)
        print(f"max residual {worst:.3e} over {len(rows)} points "
              f"(tol {args.tol:.1e})", file=sys.stderr)
        return EXIT_OK if worst < args.tol else EXIT_PROPERTY
    return EXIT_OK


def cmd_interpolate(args) -> int:
    report = {"command": "interpolate",
              "inputs": {"problem": _digest(args.problem)},
              "approximate": ["sampled-sups"], "results": {}}
    try:
        with open(args.problem) as fh:
            data = json.load(fh)
        domain, approx = load_domain(data["domain"], validate=True)
        if approx:
            report["approximate"].append("sector-rasterization")
        support = []
        for entry in data["support"]:
            q = Quaternion(*(float(x) for x in entry["point"]))
            v = Quaternion(*(float(x) for x in entry["value"]))
            support.append((q, v))
        k_sample = tuple(Quaternion(*(float(x) for x in p))
                         for p in data.get("k_sample", []))
        eps = float(data.get("eps", 1e-2))
        problem = InterpolationProblem(domain, PathSliceFn(tuple(support)),
                                       k_sample, eps)
    except (SchemaError, KeyError, TypeError, ValueError) as exc:
        report["results"] = {"schema": "error", "message": str(exc)}
        _emit(report, args.out)
        return EXIT_SCHEMA
    except SliceOpennessError as exc:
        report["results"] = {"slice_open": False, "message": str(exc)}
        _emit(report, args.out)
        return EXIT_INVALID
    try:
        result = interpolate(problem)
    except (NotSeparable, DuplicateProjection, CaseHypothesisViolated,
            NodeGenerationFailed) as exc:
        report["results"] = {"feasible": False, "error": type(exc).__name__,
                             "message": str(exc)}
        _emit(report, args.out)
        return EXIT_INFEASIBLE
    report["results"] = {
        "feasible": True,
        "cases": result.report.cases,
        "node_errors": result.report.node_errors,
        "k_sup": result.report.k_sup,
        "eps": result.report.eps,
        "function": save_function(result.expr)["function"],
    }
    _emit(report, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="slicereg",
                                 description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, function=False):
        p.add_argument("--domain", required=True, help="domain JSON file")
        if function:
            p.add_argument("--function", required=True, help="function JSON file")
        p.add_argument("--grid-pitch", type=float, default=0.25)
        p.add_argument("--fd-step", type=float, default=1e-4)
        p.add_argument("--tol", type=float, default=1e-6)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--out", default=None, help="output path (default stdout)")

    common(sub.add_parser("validate", help="schema and slice-openness checks"))
    common(sub.add_parser("check2ps", help="two-path-symmetry decision"))
    common(sub.add_parser("riemann-info", help="sheet and radii report"))
    common(sub.add_parser("eval", help="grid evaluation CSV"), function=True)
    common(sub.add_parser("verify", help="grid CR-residual check"), function=True)
    pi = sub.add_parser("interpolate", help="run an interpolation problem")
    pi.add_argument("--problem", required=True, help="problem JSON file")
    pi.add_argument("--seed", type=int, default=0)
    pi.add_argument("--out", default=None)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {
        "validate": cmd_validate,
        "check2ps": cmd_check2ps,
        "riemann-info": cmd_riemann_info,
        "eval": lambda a: _cmd_eval_or_verify(a, verify=False),
        "verify": lambda a: _cmd_eval_or_verify(a, verify=True),
        "interpolate": cmd_interpolate,
    }
    t0 = time.monotonic()
    code = handlers[args.command](args)
    print(f"[slicereg {args.command}] exit {code} in "
          f"{time.monotonic() - t0:.2f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
