"""Command line entry point. Every command writes JSON lines to stdout.

Exit status: 0 on success, 1 when a verification fails, 2 on usage errors,
malformed graph6 input or exceeded caps.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import Iterable

from . import __version__
from . import constructions as cons
from .bounds import complement_free_upper, hoffman_type_upper, probabilistic_lower, spectral_lower_from_excc
from .extremal import (
    JOBS_ENV,
    SPECTRAL_CAP,
    default_jobs,
    emin_search,
    ex_bruteforce,
    parse_family,
    rhomin_search,
)
from .graph import ENUMERATION_CAP, Graph, GraphError, enumerate_graphs, from_graph6, to_graph6
from .solvers import d_independence_number, find_complete_multipartite, q_good_partition, tau
from .spectral import COMPARE_TOL, STRICT_MARGIN, char_poly, quotient, quotient_rho, spectrum
from .verify import load_manifest, registered_ids, verify

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- construct

# name -> (argument names, builder returning a Construction or a list of graphs)
CONSTRUCTORS = {
    "cocktail": (["d"], lambda d: cons.Construction(cons.cocktail_party(d))),
    "odd-cocktail": (["d"], lambda d: cons.Construction(cons.odd_cocktail_party(d), {"apex": d - 1})),
    "multipartite": (["sizes..."], None),
    "turan-family": (["n", "k"], lambda n, k: cons.turan_family(n, k)),
    "minimizer-family": (["n", "k"], lambda n, k: cons.minimizer_family(n, k)),
    "hat": (["n"], cons.build_hat_minimizer_4),
    "two-block": (["n1", "n2", "x", "y"], lambda *a: cons.Construction(cons.two_block_graph(*a))),
    "cp-path": (["l", "m"], cons.build_cp_path),
    "cp-cycle": (["l", "m"], cons.build_cp_cycle),
    "gadget": (["kind", "m"], None),
    "spectral-max": (["n", "s", "d"], cons.build_spectral_maximizer),
}


def _build(name: str, args: list[str]) -> tuple[list[Graph], dict]:
    if name not in CONSTRUCTORS:
        raise UsageError(f"unknown construction {name!r}; choose from {', '.join(CONSTRUCTORS)}")
    names, builder = CONSTRUCTORS[name]
    if name == "multipartite":
        sizes = [int(a) for a in args]
        return [cons.complete_multipartite(sizes)], {}
    if len(args) != len(names):
        raise UsageError(f"{name} takes arguments {' '.join(names)}")
    if name == "gadget":
        c = cons.build_connector_gadget(args[0], int(args[1]))
        return [c.graph], c.landmarks
    out = builder(*(int(a) for a in args))
    if isinstance(out, list):
        return out, {}
    return [out.graph], out.landmarks


# ---------------------------------------------------------------- input helpers


def _read_graphs(args) -> list[Graph]:
    if args.graph6:
        texts = list(args.graph6)
    else:
        texts = [line.strip() for line in sys.stdin if line.strip()]
    if not texts:
        raise UsageError("no graph given; pass --graph6 or pipe graph6 lines on stdin")
    graphs = []
    for t in texts:
        try:
            graphs.append(from_graph6(t))
        except (GraphError, ValueError) as exc:
            raise UsageError(f"malformed graph6 {t!r}: {exc}") from exc
    return graphs


def _parse_partition(text: str) -> list[list[int]]:
    try:
        return [[int(v) for v in part.split(",") if v] for part in text.split(":")]
    except ValueError as exc:
        raise UsageError(f"cannot parse partition {text!r}") from exc


def _g6(g: Graph) -> str:
    return to_graph6(g).decode()


def _write_graphs(path: str | None, graphs: Iterable[Graph]) -> dict:
    codes = [_g6(g) for g in graphs]
    if path is None:
        return {"graph6": codes}
    Path(path).write_text("".join(c + "\n" for c in codes))
    return {"count": len(codes), "graph6_file": path}


# ---------------------------------------------------------------- commands


def cmd_construct(args) -> tuple[object, int]:
    graphs, landmarks = _build(args.name, args.values)
    result = _write_graphs(args.out, graphs)
    result["landmarks"] = landmarks
    if args.out:
        sidecar = args.out + ".json"
        Path(sidecar).write_text(json.dumps(landmarks, sort_keys=True) + "\n")
        result["sidecar"] = sidecar
    return result, EXIT_OK


def cmd_tau(args):
    return [{"value": (w := d_independence_number(g, 1)).value, "witness": list(w.witness)}
            for g in _read_graphs(args)], EXIT_OK


def cmd_idnum(args):
    return [{"value": (w := d_independence_number(g, args.d)).value, "witness": list(w.witness), "d": args.d}
            for g in _read_graphs(args)], EXIT_OK


def cmd_rho(args):
    out = []
    for g in _read_graphs(args):
        s = spectrum(g)
        out.append({"rho": s.rho, "lambda_min": s.lambda_min, "residual": s.residual})
    return out, EXIT_OK


def cmd_quotient(args):
    parts = _parse_partition(args.partition)
    out = []
    for g in _read_graphs(args):
        q = quotient(g, parts, strict=not args.lenient)
        poly = char_poly(q, strict=not args.lenient)
        row = {"matrix": [[str(x) for x in r] for r in q.matrix], "equitable": q.equitable,
               "char_poly": [str(c) for c in poly.coeffs]}
        if q.equitable:
            row["rho"] = quotient_rho(q)
        out.append(row)
    return out, EXIT_OK


def cmd_free(args):
    family = parse_family(args.family)
    out = []
    for g in _read_graphs(args):
        row = {"family": family.label(), "free": family.is_free(g)}
        sizes = family.part_sizes()
        if sizes is not None and not row["free"]:
            row["witness"] = [list(p) for p in find_complete_multipartite(g, sizes)]
        out.append(row)
    return out, EXIT_OK


def cmd_qgood(args):
    return [{"value": (w := q_good_partition(g, args.q, args.nonempty)).value,
             "witness": [list(p) for p in w.witness]} for g in _read_graphs(args)], EXIT_OK


def cmd_bounds(args):
    out = []
    for g in _read_graphs(args):
        rows = [hoffman_type_upper(g)]
        if g.num_edges():
            rows.append(probabilistic_lower(g))
        for d in args.d:
            rows.append(complement_free_upper(g, d))
        entry = {"tau": tau(g), "bounds": [b.to_json() for b in rows]}
        if args.table:
            print(f"graph {_g6(g)}  tau={entry['tau']}", file=sys.stderr)
            for b in rows:
                shown = f"{b.value:.6g}" if b.applicable else "-"
                print(f"  {b.name:<26} {shown:>10}  {b.hypothesis_note}", file=sys.stderr)
        out.append(entry)
    if args.excc:
        n, s, d = args.excc
        b = spectral_lower_from_excc(n, s, d, jobs=args.jobs, cap=args.max_n or ENUMERATION_CAP)
        out.append({"excc_lower": b.to_json()})
    return out, EXIT_OK


def cmd_search(args):
    cap = args.max_n or (SPECTRAL_CAP if args.mode == "rhomin" else ENUMERATION_CAP)
    if args.mode in ("ex", "ex_cc"):
        if not args.family:
            raise UsageError("ex searches need --family")
        res = ex_bruteforce(args.n, parse_family(args.family), connected_complement=args.mode == "ex_cc",
                            jobs=args.jobs, cap=cap)
    else:
        if args.tau is None:
            raise UsageError(f"{args.mode} needs --tau")
        search = emin_search if args.mode == "emin" else rhomin_search
        res = search(args.n, args.tau, jobs=args.jobs, cap=cap)
    result = res.to_json()
    if args.out:
        result.update(_write_graphs(args.out, res.graphs()))
    return result, EXIT_OK


def cmd_enumerate(args):
    cap = args.max_n or ENUMERATION_CAP
    edges = [args.edges] if args.edges is not None else None
    graphs = list(enumerate_graphs(args.n, connected_only=args.connected, edge_counts=edges, cap=cap))
    result = _write_graphs(args.out, graphs)
    result["count"] = len(graphs)
    return result, EXIT_OK


def _parse_params(items: list[str]) -> dict:
    params = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"--param expects key=value, got {item!r}")
        try:
            params[key] = json.loads(value)
        except json.JSONDecodeError:
            params[key] = value
    return params


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--jobs", type=int, default=None, help=f"worker processes (default ${JOBS_ENV} or 1)")
    common.add_argument("--out", help="write graph payloads to this file")
    common.add_argument("--manifest", help="expected-values file for verify")
    common.add_argument("--max-n", type=int, default=None, help="cap on orders searched")
    common.add_argument("--deterministic", action="store_true", help="report elapsed_ms as 0")

    graph_in = argparse.ArgumentParser(add_help=False)
    graph_in.add_argument("--graph6", action="append", help="graph in graph6; repeatable, default stdin")

    p = argparse.ArgumentParser(prog="dissociation", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("construct", parents=[common], help="build a named graph")
    s.add_argument("name", help=", ".join(CONSTRUCTORS))
    s.add_argument("values", nargs="*")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("tau", parents=[common, graph_in], help="dissociation number")
    s.set_defaults(func=cmd_tau)

    s = sub.add_parser("idnum", parents=[common, graph_in], help="d-independence number")
    s.add_argument("--d", type=int, required=True)
    s.set_defaults(func=cmd_idnum)

    s = sub.add_parser("rho", parents=[common, graph_in], help="spectral radius")
    s.set_defaults(func=cmd_rho)

    s = sub.add_parser("quotient", parents=[common, graph_in], help="quotient matrix of a partition")
    s.add_argument("--partition", required=True, help="colon-separated parts, e.g. 0,1:2,3")
    s.add_argument("--lenient", action="store_true", help="average row sums when not equitable")
    s.set_defaults(func=cmd_quotient)

    s = sub.add_parser("free", parents=[common, graph_in], help="forbidden-family test")
    s.add_argument("--family", required=True, help="L5, CP4, K1,2,2, H5,1 or G:<graph6>;...")
    s.set_defaults(func=cmd_free)

    s = sub.add_parser("qgood", parents=[common, graph_in], help="q-partition with fewest internal edges")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--nonempty", action="store_true")
    s.set_defaults(func=cmd_qgood)

    s = sub.add_parser("bounds", parents=[common, graph_in], help="closed-form bounds")
    s.add_argument("--d", type=int, action="append", default=[], help="complement-freeness order; repeatable")
    s.add_argument("--excc", type=int, nargs=3, metavar=("N", "S", "D"), help="also report the ex_cc spectral bound")
    s.add_argument("--table", action="store_true", help="print a readable table on stderr")
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("search", parents=[common], help="exhaustive extremal search")
    s.add_argument("mode", choices=["ex", "ex_cc", "emin", "rhomin"])
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--family")
    s.add_argument("--tau", type=int)
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("verify", parents=[common], help="replay a registered check, or all")
    s.add_argument("theorem_id", help="registered id or 'all'")
    s.add_argument("--n", type=int, help="restrict the check to this order")
    s.add_argument("--param", action="append", default=[], help="override a parameter, key=json")
    s.set_defaults(func=None)

    s = sub.add_parser("enumerate", parents=[common], help="isomorphism classes of graphs")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--connected", action="store_true")
    s.add_argument("--edges", type=int)
    s.set_defaults(func=cmd_enumerate)
    return p


def _emit(record: dict, stream) -> None:
    stream.write(json.dumps(record, sort_keys=True) + "\n")
    stream.flush()


def _settings(args) -> dict:
    keys = ("jobs", "max_n", "n", "d", "q", "family", "tau", "mode", "name", "values", "partition",
            "lenient", "nonempty", "connected", "edges", "theorem_id", "excc", "graph6", "out")
    params = {k: getattr(args, k) for k in keys if getattr(args, k, None) not in (None, [], False)}
    params["compare_tol"] = COMPARE_TOL
    params["strict_margin"] = STRICT_MARGIN
    return params


def _run_verify(args, manifest: dict, stream) -> int:
    ids = registered_ids() if args.theorem_id == "all" else [args.theorem_id]
    overrides = _parse_params(args.param)
    if args.n is not None:
        overrides["n"] = args.n
    status = EXIT_OK
    for tid in ids:
        start = time.perf_counter()
        try:
            report = verify(tid, overrides or None, args.max_n, args.jobs, manifest)
        except KeyError as exc:
            raise UsageError(str(exc.args[0])) from exc
        elapsed = 0 if args.deterministic else round((time.perf_counter() - start) * 1000)
        if report.verdict == "FAIL":
            status = EXIT_FAIL
        _emit({"command": "verify", "params": {**_settings(args), "theorem_id": tid},
               "results": report.to_json(), "elapsed_ms": elapsed, "tool_version": __version__,
               "manifest_version": manifest.get("manifest_version")}, stream)
    return status


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.jobs is None:
        args.jobs = default_jobs()
    stream = sys.stdout
    try:
        manifest = load_manifest(args.manifest)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: cannot read manifest: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.command == "verify":
            return _run_verify(args, manifest, stream)
        start = time.perf_counter()
        results, status = args.func(args)
        elapsed = 0 if args.deterministic else round((time.perf_counter() - start) * 1000)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit({"command": args.command, "params": _settings(args), "results": results, "elapsed_ms": elapsed,
           "tool_version": __version__, "manifest_version": manifest.get("manifest_version")}, stream)
    return status


if __name__ == "__main__":
    sys.exit(main())
