"""Command-line front end: ``scrtool <command> ...``."""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import io, repro
from .closure import chvatal_first_closure, scr_of_system, small_closure
from .errors import ScrError, UnknownSuiteError
from .hilbert import minimal_hilbert_basis_pointed, minimal_hilbert_basis_simplicial
from .ibn import DEFAULT_CAP, DEFAULT_MAX_ROUNDS, iter_rounds
from .polyhedra import AUTO, LatticeBox, vertex_enumeration
from .stableset import (FIXTURES, frac_system, graph_configuration, load_fixture, parse_graph,
                        predicted_round1, verify_certificate)
from .supernormal import (is_supernormal, is_unimodular, lowerbound_system, odd_circuit_incidence,
                          scr_zero_decision)
from . import linalg

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Failed(Exception):
    """A verification inside a command did not hold; the report is still written."""


def _cap(text: str):
    if text.lower() == "none":
        return None
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid cap {text!r}") from None
    if v <= 0:
        raise argparse.ArgumentTypeError("cap must be positive (or 'none')")
    return v


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer {text!r}") from None
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def _default_threads() -> int:
    try:
        return max(1, int(os.environ.get("SCRTOOL_THREADS", "1")))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--stable", action="store_true", help="omit timings from reports")
    common.add_argument("--threads", type=_positive, default=_default_threads(),
                        help="worker threads (default: $SCRTOOL_THREADS or 1)")
    common.add_argument("--out", help="write the report here (atomically) instead of stdout")

    p = argparse.ArgumentParser(prog="scrtool", description="Iterated basis normalization toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    h = sub.add_parser("hilbert", parents=[common], help="minimal Hilbert basis of a cone")
    h.add_argument("--input", default="-", help="JSON rows of cone generators (default stdin)")

    ibn = sub.add_parser("ibn", help="iterated basis normalization")
    ibn_sub = ibn.add_subparsers(dest="action", required=True)
    run = ibn_sub.add_parser("run", parents=[common], help="run IBN rounds")
    run.add_argument("--input", default="-")
    run.add_argument("--max-rounds", type=_nonneg, default=DEFAULT_MAX_ROUNDS)
    run.add_argument("--cap", type=_cap, default=DEFAULT_CAP)

    box_help = "integer hull box bounds LO HI on every coordinate (default: automatic)"
    s = sub.add_parser("scr", parents=[common], help="small Chvátal rank of a system")
    s.add_argument("--system", default="-")
    s.add_argument("--max-k", type=_nonneg, default=5)
    s.add_argument("--cap", type=_cap, default=DEFAULT_CAP)
    s.add_argument("--box", type=int, nargs=2, metavar=("LO", "HI"), help=box_help)

    c = sub.add_parser("closure", parents=[common], help="small or classical closure")
    c.add_argument("--system", default="-")
    c.add_argument("--k", type=_nonneg, default=1)
    c.add_argument("--chvatal", action="store_true", help="classical first closure instead")
    c.add_argument("--cap", type=_cap, default=DEFAULT_CAP)
    c.add_argument("--box", type=int, nargs=2, metavar=("LO", "HI"), help=box_help)

    chk = sub.add_parser("check", parents=[common], help="unimodularity and supernormality")
    chk.add_argument("property", choices=("unimodular", "supernormal", "scr-zero"))
    chk.add_argument("--input", default="-")
    chk.add_argument("--cap", type=_cap, default=DEFAULT_CAP)

    g = sub.add_parser("gen", help="emit a family member as JSON")
    g_sub = g.add_subparsers(dest="family", required=True)
    go = g_sub.add_parser("odd-circuit", parents=[common])
    go.add_argument("--k", type=_positive, required=True)
    gl = g_sub.add_parser("lowerbound", parents=[common])
    gl.add_argument("--j", type=int, required=True)

    st = sub.add_parser("stabset", parents=[common], help="stable set pipeline")
    st.add_argument("action", choices=("frac", "round1", "scr", "certify"))
    st.add_argument("--graph", help="edge list or DIMACS file")
    st.add_argument("--graph-format", choices=("edgelist", "dimacs"))
    st.add_argument("--fixture", choices=FIXTURES, help="bundled certificate (certify)")
    st.add_argument("--certificate", help="certificate JSON file (certify)")
    st.add_argument("--max-k", type=_nonneg, default=3)
    st.add_argument("--cap", type=_cap, default=DEFAULT_CAP)

    r = sub.add_parser("repro", parents=[common], help="run acceptance suites")
    r.add_argument("suite", help=f"one of: all, {', '.join(sorted(repro.SUITES))}")
    r.add_argument("--j", type=int, help="single member for the lowerbound suite")
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--provenance", action="store_true",
                   help="also run the best-effort round-one search for the ziegler suite")
    r.add_argument("--budget", type=_positive, default=10 ** 6)
    r.add_argument("--units", action="store_true",
                   help="add signed unit vectors to the provenance generators")
    return p


def _box(parser, args):
    if not args.box:
        return AUTO
    lo, hi = args.box
    if lo > hi:
        parser.error("--box: LO must not exceed HI")
    return ("cube", lo, hi)


def _resolve_box(box, n):
    if box is AUTO:
        return AUTO
    return LatticeBox.cube(n, box[1], box[2])


def _load_json(path):
    text = io.read_text(path)
    try:
        return text, json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"input is not valid JSON: {exc}") from None


def cmd_hilbert(args):
    text, data = _load_json(args.input)
    rows = io.parse_rows(data)
    if len(rows) == len(rows[0]) and linalg.determinant(rows) != 0:
        res = minimal_hilbert_basis_simplicial(rows)
    else:
        res = minimal_hilbert_basis_pointed(rows)
    return text, res


def cmd_ibn(args):
    text, data = _load_json(args.input)
    cfg = io.parse_configuration(data)
    log = None
    for log in iter_rounds(cfg, max_rounds=args.max_rounds, cap=args.cap, threads=args.threads):
        pass
    if log is None:
        from .ibn import RoundLog
        log = RoundLog(configs=[cfg], max_rounds_reached=True)
    return text, log


def cmd_scr(args, box):
    text, data = _load_json(args.system)
    S = io.parse_system(data)
    res = scr_of_system(S, max_k=args.max_k, cap=args.cap, threads=args.threads,
                        box=_resolve_box(box, S.n))
    out = res.to_json()
    out["system"] = S.to_json()
    if res.log is not None:
        out["ibn"] = res.log.to_json()
    return text, out


def cmd_closure(args, box):
    text, data = _load_json(args.system)
    S = io.parse_system(data)
    if args.chvatal:
        C = chvatal_first_closure(S)
        V = vertex_enumeration(C)
        return text, {"kind": "chvatal", "system": C.to_json(), "vform": V.to_json(),
                      "fractional_vertices": V.fractional_vertices()}
    rep = small_closure(S, args.k, cap=args.cap, box=_resolve_box(box, S.n))
    return text, rep


def cmd_check(args):
    text, data = _load_json(args.input)
    rows = io.parse_rows(data)
    fn = {"unimodular": is_unimodular, "supernormal": is_supernormal,
          "scr-zero": scr_zero_decision}[args.property]
    dec = fn(rows, cap=args.cap)
    out = dec.to_json()
    out["property"] = args.property
    out["input"] = {"vectors": rows}
    return text, out


def cmd_gen(args):
    if args.family == "odd-circuit":
        return None, odd_circuit_incidence(args.k).to_json()
    return None, lowerbound_system(args.j).to_json()


def _graph(args):
    if not args.graph:
        raise ValueError("--graph is required")
    text = io.read_text(args.graph)
    return text, parse_graph(text, args.graph_format)


def cmd_stabset(args):
    if args.action == "certify":
        if args.fixture:
            cert = load_fixture(args.fixture)
            text = json.dumps(cert.to_json(), sort_keys=True)
        elif args.certificate:
            from .stableset import FacetCertificate
            text, data = _load_json(args.certificate)
            cert = FacetCertificate.from_json(data)
        else:
            raise ValueError("certify needs --fixture or --certificate")
        chk = verify_certificate(cert)
        out = {"ok": chk.ok, "failed": chk.failed, "details": chk.details,
               "certificate": cert.to_json(), "determinant": linalg.determinant(cert.basis)}
        if not chk.ok:
            raise _Failed(text, out)
        return text, out
    text, G = _graph(args)
    if args.action == "frac":
        return text, frac_system(G).system
    if args.action == "round1":
        from .ibn import ibn_round
        cfg = graph_configuration(G)
        got = ibn_round(cfg, cap=args.cap, threads=args.threads)
        pred = predicted_round1(G)
        out = {"configuration": got, "added": sorted(set(got.vectors) - set(cfg.vectors)),
               "matches_prediction": got == pred}
        if got != pred:
            raise _Failed(text, out)
        return text, out
    res = scr_of_system(frac_system(G).system, max_k=args.max_k, cap=args.cap, threads=args.threads)
    return text, res


def cmd_repro(args):
    kwargs = {"seed": args.seed}
    if args.j is not None:
        kwargs["j"] = args.j
    names = repro.ALL if args.suite == "all" else (args.suite,)
    results = [repro.run_suite(name, **kwargs) for name in names]
    out = {"suites": [r.to_json(stable=args.stable) for r in results],
           "passed": all(r.ok for r in results)}
    if args.provenance and "ziegler" in names:
        out["ziegler_provenance"] = repro.ziegler_provenance(args.budget, args.seed, units=args.units)
    if args.format == "text":
        for r in results:
            print(r.line(), file=sys.stderr)
    if not out["passed"]:
        raise _Failed(None, out)
    return None, out


def _text(result, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(result, dict):
        lines = []
        for k in sorted(result):
            v = result[k]
            nested = isinstance(v, dict) or (isinstance(v, list) and not all(isinstance(x, str) for x in v))
            if nested and v:
                lines.append(f"{pad}{k}:")
                lines.append(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_flat(v)}")
        return "\n".join(lines)
    if isinstance(result, list):
        return "\n".join(f"{pad}- {_flat(x)}" if not isinstance(x, dict)
                         else f"{pad}-\n{_text(x, indent + 1)}" for x in result)
    return f"{pad}{result}"


def _flat(v) -> str:
    if isinstance(v, list):
        return "(" + ", ".join(_flat(x) for x in v) + ")"
    return str(v)


def _render(args, command: str, input_text, result, elapsed) -> str:
    env = io.envelope(command, input_text, result, elapsed, stable=args.stable)
    if args.format == "text":
        return _text(env) + "\n"
    return io.dumps(env)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    box = _box(parser, args) if getattr(args, "box", None) else AUTO
    command = args.command
    if command == "ibn":
        command = "ibn run"
    elif command in ("check", "stabset"):
        command = f"{command} {args.property if command == 'check' else args.action}"
    elif command == "gen":
        command = f"gen {args.family}"
    elif command == "repro":
        command = f"repro {args.suite}"

    t0 = time.perf_counter()
    code = EXIT_OK
    try:
        if args.command == "hilbert":
            text, result = cmd_hilbert(args)
        elif args.command == "ibn":
            text, result = cmd_ibn(args)
        elif args.command == "scr":
            text, result = cmd_scr(args, box)
        elif args.command == "closure":
            text, result = cmd_closure(args, box)
        elif args.command == "check":
            text, result = cmd_check(args)
        elif args.command == "gen":
            # generators print bare data so they can be piped into other commands
            _, result = cmd_gen(args)
            io.emit(io.dumps(io.encode(result)), args.out)
            return EXIT_OK
        elif args.command == "stabset":
            text, result = cmd_stabset(args)
        else:
            text, result = cmd_repro(args)
    except _Failed as exc:
        text, result = exc.args
        code = EXIT_FAIL
    except UnknownSuiteError as exc:
        print(f"scrtool: error: suite: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ScrError, ValueError, KeyError, OSError) as exc:
        print(f"scrtool: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    io.emit(_render(args, command, text, result, time.perf_counter() - t0), args.out)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
