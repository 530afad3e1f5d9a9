"""Command-line entry point: ``ejst {verify,route,simulate,export}``.

Exit codes: 0 success, 1 verification failure or unreachable route,
2 usage error, 3 exhaustive budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .arith import Generator, format_address, parse_address
from .simlab import DEFAULT_SEED, BudgetExceeded, Policy, records_to_csv, table_sweep
from .spantree import Scheme
from .topology import FaultSet

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _int_range(text: str) -> list[int]:
    """``"3"``, ``"0..5"`` (inclusive) or ``""`` (empty)."""
    text = text.strip()
    if not text:
        return []
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return list(range(int(lo), int(hi) + 1))
        return [int(text)]
    except ValueError:
        raise UsageError(f"bad range {text!r}; use N or LO..HI") from None


def _address(text: str):
    try:
        return parse_address(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _address_list(text: str | None) -> list:
    if not text:
        return []
    return [_address(p) for p in text.split(";") if p.strip()]


def _link_list(text: str | None) -> list[tuple]:
    if not text:
        return []
    out = []
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        ends = part.split("/")
        if len(ends) != 2:
            raise UsageError(f"link {part!r} must look like 'x,y/x,y'")
        out.append((_address(ends[0]), _address(ends[1])))
    return out


def _generator(args, a: int | None = None) -> Generator:
    a = args.a if a is None else a
    if a is None:
        raise UsageError("--a is required")
    if a < 1:
        raise UsageError(f"--a must be >= 1, got {a}")
    if args.b is not None and args.b != a + 1:
        raise UsageError(f"--b must equal a+1 = {a + 1} for a dense network, got {args.b}")
    return Generator(a)


def _scheme(args) -> Scheme:
    return Scheme.parse(args.scheme or "ist")


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# --- verify -----------------------------------------------------------------


def cmd_verify(args) -> int:
    from .spantree import build_product_trees, verification_text, verify_product_edge_disjoint, verify_product_spanning
    from .spantree.verify import render_reports
    from .topology import product

    g = _generator(args)
    scheme = _scheme(args)
    if args.dims > 1:
        trees = build_product_trees(scheme, [g] * args.dims, construction=args.construction)
        net = product([g] * args.dims)
        reps = [verify_product_spanning(t, net) for t in trees]
        if scheme is Scheme.EDNIST:
            reps.append(verify_product_edge_disjoint(trees))
        head = f"scheme {scheme.value}, {args.dims} layers of α = {g}, N = {len(net)}, degree {net.degree}"
        text = head + "\n" + trees[0].layers[0].interpretation_id + "\n" + render_reports(reps)
        ok = all(r.passed for r in reps)
    else:
        text, ok = verification_text(scheme, g, construction=args.construction)
    if args.format == "json":
        text = json.dumps({"passed": ok, "report": text.splitlines()}, ensure_ascii=False, indent=1)
    _emit(text + "\n", args.out)
    return EXIT_OK if ok else EXIT_FAIL


# --- route ------------------------------------------------------------------


def cmd_route(args) -> int:
    from .arith import reduce
    from .routing import UNREACHABLE, Delivered, fault_tolerant_route, format_hop, run_route

    g = _generator(args)
    scheme = _scheme(args)
    if args.src is None or args.dst is None:
        raise UsageError("route needs --src and --dst")
    S, D = reduce(_address(args.src), g), reduce(_address(args.dst), g)
    if S == D:
        raise UsageError("--src and --dst are the same node")
    faults = FaultSet.of(
        [reduce(v, g) for v in _address_list(args.faults)],
        [(reduce(u, g), reduce(v, g)) for u, v in _link_list(args.fault_links)],
    )
    if faults.node_faulty(S) or faults.node_faulty(D):
        raise UsageError("source or destination is in the fault set")
    if args.tree is not None:
        _valid_tree(scheme, args.tree)
    if faults:
        choice = fault_tolerant_route(S, D, g, scheme, faults, construction=args.construction)
        if choice is UNREACHABLE:
            _emit("unreachable: every tree path crosses a fault\n", args.out)
            return EXIT_FAIL
        t = choice.tree
    else:
        t = args.tree or 1
    result = run_route(S, D, g, scheme, t, faults=faults, construction=args.construction)
    trace = list(result.message.hop_trace)
    delivered = isinstance(result, Delivered)
    if args.format == "json":
        doc = {
            "scheme": scheme.value,
            "tree": t,
            "src": format_address(S),
            "dst": format_address(D),
            "trace": [format_address(v) for v in trace],
            "hops": len(trace) - 1,
            "delivered": delivered,
        }
        _emit(json.dumps(doc) + "\n", args.out)
    else:
        lines = [format_hop(i, u, v, g) for i, (u, v) in enumerate(zip(trace, trace[1:]), 1)]
        if delivered:
            lines.append(f"delivered in {len(trace) - 1} hops via tree {t}")
        else:
            lines.append(f"dropped after {len(trace) - 1} hops via tree {t}: {result.reason}")
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK if delivered else EXIT_FAIL


def _valid_tree(scheme: Scheme, t: int) -> bool:
    if not 1 <= t <= scheme.n_trees:
        raise UsageError(f"--tree must be in 1..{scheme.n_trees} for {scheme.value}")
    return True


# --- simulate ---------------------------------------------------------------


def cmd_simulate(args) -> int:
    scheme = _scheme(args)
    a_values = _int_range(args.a_range)
    for a in a_values:
        _generator(args, a)
    f_values = _int_range(args.f)
    if any(not 0 <= f <= 5 for f in f_values):
        raise UsageError("--f values must lie in 0..5")
    if args.exhaustive and args.samples is not None:
        raise UsageError("--exhaustive and --samples are mutually exclusive")
    if args.exhaustive:
        policy = Policy.exhaustive()
    elif args.samples is not None:
        policy = Policy.sampled(args.samples, args.seed)
    else:
        policy = Policy("auto", seed=args.seed)
    if scheme is Scheme.EDNIST:
        print("note: EDNIST sweeps are an extension with no published reference values", file=sys.stderr)
        if any(f + args.links > 2 for f in f_values):
            print("note: more than 2 faults per set (nodes plus links) exceeds the EDNIST guarantee", file=sys.stderr)
    if scheme is Scheme.IST and args.links:
        raise UsageError("--links applies to EDNIST experiments only")
    construction = args.construction
    records = table_sweep(scheme, a_values, f_values, policy, links=args.links, construction=construction)
    _emit(records_to_csv(records), args.out)
    bad = sum(r.bound_violations for r in records)
    cut = sum(r.unreachable for r in records)
    if cut:
        print(f"note: {cut} node-evaluations were unreachable on every tree", file=sys.stderr)
    if bad or (cut and construction == "resolved" and scheme is Scheme.IST):
        return EXIT_FAIL
    return EXIT_OK


# --- export -----------------------------------------------------------------


def cmd_export(args) -> int:
    from . import export
    from .spantree import build_all, build_product_trees
    from .topology import build, product

    g = _generator(args)
    fmt = args.format or "dot"
    if fmt not in ("dot", "json"):
        raise UsageError("export supports --format dot or json")
    p2c = args.edges == "parent-to-child"
    files: list[tuple[str, str]] = []
    tag = f"a{g.a}" + (f"_d{args.dims}" if args.dims > 1 else "")
    if args.scheme is None:
        if args.dims > 1:
            net = product([g] * args.dims)
            body = export.product_dot(net) if fmt == "dot" else export.product_json(net)
        else:
            net = build(g)
            body = export.network_dot(net) if fmt == "dot" else export.network_json(net)
        files.append((f"network_{tag}.{fmt}", body))
    else:
        scheme = _scheme(args)
        if args.tree is not None:
            _valid_tree(scheme, args.tree)
        if args.dims > 1:
            ptrees = build_product_trees(scheme, [g] * args.dims, construction=args.construction)
            for t in ptrees:
                if args.tree in (None, t.t):
                    body = (
                        export.product_tree_dot(t, parent_to_child=p2c)
                        if fmt == "dot"
                        else export.product_tree_json(t)
                    )
                    files.append((f"{scheme.value}_{tag}_t{t.t}.{fmt}", body))
        else:
            for t in build_all(scheme, g, construction=args.construction):
                if args.tree in (None, t.t):
                    body = export.tree_dot(t, parent_to_child=p2c) if fmt == "dot" else export.tree_json(t)
                    files.append((f"{scheme.value}_{tag}_t{t.t}.{fmt}", body))
    if args.out is None:
        for _, body in files:
            sys.stdout.write(body)
        return EXIT_OK
    out = Path(args.out)
    if len(files) == 1 and out.suffix:
        targets = [(out, files[0][1])]
    else:
        out.mkdir(parents=True, exist_ok=True)
        targets = [(out / name, body) for name, body in files]
    for path, body in targets:
        path.write_text(body, encoding="utf-8")
        print(path)
    return EXIT_OK


# --- parser -----------------------------------------------------------------


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ejst", description="Dense EJ networks and their independent spanning trees.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, *, a_as_range: bool = False, scheme_default: str | None = "ist"):
        if a_as_range:
            sp.add_argument("--a", dest="a_range", required=True, help="generator parameter or range, e.g. 2 or 1..3")
            sp.set_defaults(a=None)
        else:
            sp.add_argument("--a", type=int, required=True, help="generator a (alpha = a + (a+1)ρ)")
        sp.add_argument("--b", type=int, help="optional; must equal a+1")
        sp.add_argument("--dims", type=int, default=1, help="number of product layers")
        sp.add_argument("--scheme", choices=["ednist", "ist"], default=scheme_default)
        sp.add_argument("--construction", choices=["resolved", "literal"])
        sp.add_argument("--out", help="output file (or directory for several files)")

    v = sub.add_parser("verify", help="check spanning, independence and disjointness")
    common(v)
    v.add_argument("--format", choices=["text", "json"], default="text")
    v.set_defaults(func=cmd_verify, construction_default="resolved")

    r = sub.add_parser("route", help="trace a message along a tree")
    common(r)
    r.add_argument("--tree", type=int)
    r.add_argument("--src")
    r.add_argument("--dst")
    r.add_argument("--faults", help="faulty nodes, 'x,y;x,y'")
    r.add_argument("--fault-links", help="faulty links, 'x,y/x,y;...'")
    r.add_argument("--format", choices=["text", "json"], default="text")
    r.set_defaults(func=cmd_route, construction_default="resolved")

    s = sub.add_parser("simulate", help="fault sweep, CSV output")
    common(s, a_as_range=True)
    s.add_argument("--f", default="0..5", help="fault counts, e.g. 0..5 (empty for none)")
    s.add_argument("--links", type=int, default=0, help="link faults per set (EDNIST extension)")
    s.add_argument("--exhaustive", action="store_true")
    s.add_argument("--samples", type=int)
    s.add_argument("--seed", type=int, default=DEFAULT_SEED)
    s.add_argument("--format", choices=["csv"], default="csv")
    s.set_defaults(func=cmd_simulate, construction_default="literal")

    e = sub.add_parser("export", help="DOT/JSON of the network or its trees")
    common(e, scheme_default=None)
    e.add_argument("--tree", type=int)
    e.add_argument("--format", choices=["dot", "json"], default="dot")
    e.add_argument("--edges", choices=["parent-to-child", "child-to-parent"], default="parent-to-child")
    e.set_defaults(func=cmd_export, construction_default="resolved")
    return p


_VALUE_FLAGS = ("--src", "--dst", "--faults", "--fault-links", "--a", "--f")


def _glue_negative_values(argv: list[str]) -> list[str]:
    """Turn ``--dst -2,0,1`` into ``--dst=-2,0,1`` so argparse keeps the value."""
    out: list[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-") and argv[i + 1][1:2].isdigit():
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv: list[str] | None = None) -> int:
    parser = _parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parser.parse_args(_glue_negative_values(argv))
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    if args.construction is None:
        args.construction = args.construction_default
    if args.dims < 1:
        print("ejst: error: --dims must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    if args.command == "simulate" and args.dims != 1:
        print("ejst: error: simulate runs on single-layer networks only", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"ejst: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"ejst: budget: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as exc:
        print(f"ejst: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"ejst: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
