"""Acceptance criteria, one PASS/FAIL line each (shown in the terminal summary).

Run alone with ``pytest tests/test_acceptance.py -v``.
"""
import hashlib
import subprocess
import sys
import time
from fractions import Fraction
from functools import lru_cache

from ejst.arith import EJInt, Generator, ZERO, congruent, parse_address, reduce
from ejst.routing import Delivered, run_route
from ejst.simlab import Policy, experiment
from ejst.spantree import (
    Scheme,
    build_all,
    build_product_trees,
    build_tree,
    expand_word,
    path_word,
    resolve_interpretation,
    verification_text,
    verify_edge_disjoint,
    verify_node_independent,
    verify_product_edge_disjoint,
    verify_product_spanning,
    verify_spanning,
)
from ejst.topology import build as network, product

E = EJInt
A_RANGE = range(2, 7)

TABLE5 = {
    1: ["2.000"] * 6,
    2: ["3.000", "3.333", "3.529", "3.649", "3.765", "3.899"],
    3: ["4.000", "4.500", "4.852", "5.105", "5.314", "5.512"],
    4: ["5.000", "5.600", "6.061", "6.417"],
}
TABLE6 = {
    2: [3, 4, 4, 4, 6, 6],
    3: [4, 6, 6, 6, 8, 8],
    4: [5, 8, 8],
}


@lru_cache(maxsize=None)
def structure(scheme: Scheme, a: int):
    """(failures, depth) for the resolved trees of one scheme and size."""
    g = Generator(a)
    trees = build_all(scheme, g)
    bad = []
    if not all(verify_spanning(t).passed for t in trees):
        bad.append("spanning")
    if not verify_node_independent(trees).passed:
        bad.append("independent")
    # EDNIST: undirected edge sets disjoint; IST: each directed edge at most once
    if not verify_edge_disjoint(trees, directed=scheme is Scheme.IST).passed:
        bad.append("edge-disjoint")
    if any(len(t.parent) != 3 * a * a + 3 * a for t in trees):
        bad.append("edge count")
    return bad, max(t.depth for t in trees)


@lru_cache(maxsize=None)
def literal_cell(a: int, f: int):
    return experiment("ist", a, f, Policy.exhaustive(), construction="literal")


def test_criterion_1_structure_and_depth(criterion):
    start = time.perf_counter()
    problems = []
    depth_note = []
    for scheme, want in ((Scheme.EDNIST, lambda k: 2 * k + 2), (Scheme.IST, lambda k: 2 * k + 1)):
        got = []
        for a in A_RANGE:
            bad, dep = structure(scheme, a)
            problems += [f"{scheme.value} a={a} {b}" for b in bad]
            got.append(dep)
            if dep != want(a):
                problems.append(f"{scheme.value} a={a} depth {dep} != {want(a)}")
        depth_note.append(f"{scheme.value} depths {got}")
    elapsed = time.perf_counter() - start
    if elapsed >= 60:
        problems.append(f"runtime {elapsed:.1f}s")
    detail = "; ".join(depth_note) + f"; {elapsed:.1f}s"
    if problems:
        detail += "; failing: " + ", ".join(problems)
    assert criterion("1", not problems, detail), detail


def test_criterion_2_worked_examples(criterion):
    g4 = Generator(4)
    checks = {}
    t1 = build_tree("ednist", g4, 1)
    checks["ednist parent(1+ρ)=1"] = t1.parent[E(1, 1)] == E(1, 0)
    checks["ednist child 1+2ρ"] = E(1, 2) in t1.children[E(1, 1)]
    checks["ednist word -1-4ρ²"] = path_word("ednist", g4, 1, parse_address("-1,0,-4")) == [(0, 1), (5, 4), (3, 2)]
    # the printed parent of 4ρ comes from the literal tables; the resolved trees pick 1+3ρ
    lit = build_tree("ist", g4, 1, construction="literal")
    checks["ist parent(4ρ)=4ρ-1 (literal tables)"] = lit.parent[E(0, 4)] == E(-1, 4)
    w = path_word("ist", g4, 1, E(3, -4))
    checks["ist word 3-4ρ"] = w == [(0, 4), (1, 1), (0, 3)] and expand_word(w, g4)[-1] == E(3, -4)
    # the trace ends at 3-3ρ², which is -2+ρ² modulo α (the printed -2-ρ² is not)
    D = parse_address("-2,0,1")
    res = run_route(ZERO, D, g4, "ednist", 1)
    hops = ["0,0", "1,0", "2,0", "3,0", "3,0,-1", "3,0,-2", "3,0,-3"]
    checks["route trace"] = isinstance(res, Delivered) and list(res.trace) == [
        reduce(parse_address(h), g4) for h in hops
    ]
    checks["route word P"] = path_word("ednist", g4, 1, D) == [(0, 3), (5, 3)]
    checks["printed destination not congruent"] = not congruent(
        parse_address("3,0,-3"), parse_address("-2,0,-1"), g4
    )
    nbrs = {v for _, v in network(3).neighbors(E(0, 3))}
    checks["wraparound neighbours of 3ρ"] = {E(-2, -1), E(-3, 0), E(3, -3)} <= nbrs
    failed = [k for k, ok in checks.items() if not ok]
    detail = f"{len(checks) - len(failed)}/{len(checks)} checks; route destination read as -2+ρ²"
    if failed:
        detail += "; failing: " + ", ".join(failed)
    assert criterion("2", not failed, detail), detail


def _cells():
    for a, row in TABLE5.items():
        for f in range(len(row)):
            yield a, f


def test_criterion_3_table5(criterion):
    # The emitted value (truncated to 3 decimals) is compared with the printed
    # one.  Exact means are reported too: where they sit more than 0.0005 from
    # the printed figure, the table truncated rather than rounded.
    start = time.perf_counter()
    off, gaps = [], []
    for a, f in _cells():
        rec = literal_cell(a, f)
        want = TABLE5[a][f]
        if abs(Fraction(rec.avg_text) - Fraction(want)) > Fraction(5, 10000):
            off.append(f"a={a} f={f}: {rec.avg_text} vs {want}")
        exact_gap = abs(rec.avg_max - Fraction(want))
        if exact_gap > Fraction(5, 10000):
            gaps.append(f"a={a} f={f} exact {float(rec.avg_max):.5f}")
    n = sum(1 for _ in _cells())
    detail = f"{n - len(off)}/{n} cells (literal tables, exhaustive); {time.perf_counter() - start:.1f}s"
    if gaps:
        detail += f"; {len(gaps)} printed cells are truncations, not roundings ({', '.join(gaps)})"
    if off:
        detail += "; failing: " + ", ".join(off)
    assert criterion("3", not off, detail), detail


def test_criterion_4_table6(criterion):
    off = []
    n = 0
    for a, row in TABLE6.items():
        for f, want in enumerate(row):
            n += 1
            got = literal_cell(a, f).max_max
            if got != want:
                off.append(f"a={a} f={f}: {got} vs {want}")
    detail = f"{n - len(off)}/{n} cells (literal tables, exhaustive)"
    if off:
        detail += "; " + ", ".join(off)
    assert criterion("4", not off, detail), detail


def test_criterion_5_pigeonhole(criterion):
    cut = {}
    for scheme, fmax in (("ist", 5), ("ednist", 2)):
        for f in range(fmax + 1):
            rec = experiment(scheme, 2, f, Policy.exhaustive())
            cut[f"{scheme} f={f}"] = rec.unreachable
    total = sum(cut.values())
    detail = f"unreachable outcomes {total} over {len(cut)} exhaustive sweeps (resolved trees, a=2)"
    if total:
        detail += "; " + ", ".join(f"{k}: {v}" for k, v in cut.items() if v)
    assert criterion("5", total == 0, detail), detail


def test_criterion_6_product(criterion):
    start = time.perf_counter()
    g = Generator(2)
    net = product([g, g])
    ed = build_product_trees("ednist", [g, g])
    ist = build_product_trees("ist", [g, g])
    ok = {
        "361 nodes": len(net) == 361,
        "degree 12": net.degree == 12,
        "3 ednist": len(ed) == 3,
        "6 ist": len(ist) == 6,
        "ednist spanning": all(verify_product_spanning(t, net).passed for t in ed),
        "ednist edge-disjoint": verify_product_edge_disjoint(ed, directed=False).passed,
        "ist spanning": all(verify_product_spanning(t, net).passed for t in ist),
    }
    elapsed = time.perf_counter() - start
    ok["under 10 s"] = elapsed < 10
    failed = [k for k, v in ok.items() if not v]
    detail = f"{len(ok) - len(failed)}/{len(ok)} checks; {elapsed:.1f}s"
    if failed:
        detail += "; failing: " + ", ".join(failed)
    assert criterion("6", not failed, detail), detail


def test_criterion_7_resolution_stability(criterion):
    problems = []
    ids = {}
    for scheme in (Scheme.EDNIST, Scheme.IST):
        found = {resolve_interpretation(scheme, a).id for a in A_RANGE}
        ids[scheme.value] = sorted(found)
        if len(found) != 1:
            problems.append(f"{scheme.value} ids vary: {sorted(found)}")
        for a in A_RANGE:
            if structure(scheme, a)[0]:
                problems.append(f"{scheme.value} a={a} structure")
        for a in (2, 4):
            interp = resolve_interpretation(scheme, a)
            text, _ = verification_text(scheme, a)
            if interp.id not in text or any(d not in text for d in interp.deviations):
                problems.append(f"{scheme.value} a={a} report lacks id or deviations")
    detail = ", ".join(f"{k}: {v[0] if len(v) == 1 else v}" for k, v in ids.items())
    if problems:
        detail += "; failing: " + ", ".join(problems)
    assert criterion("7", not problems, detail), detail


_REPORT_SCRIPT = r"""
from ejst.arith import Generator
from ejst.simlab import Policy, records_to_csv, table_sweep
from ejst.spantree import build_product_trees, verification_text, verify_product_spanning
from ejst.routing import run_route
from ejst.arith import ZERO, parse_address
for scheme in ("ednist", "ist"):
    for a in range(2, 7):
        print(verification_text(scheme, a)[0])
print(records_to_csv(table_sweep("ist", [1, 2], range(6), Policy.exhaustive(), construction="literal")))
print(records_to_csv(table_sweep("ist", [3], [4], Policy.sampled(2000, 99), construction="literal")))
print(records_to_csv(table_sweep("ednist", [2], range(3), Policy.exhaustive())))
print(run_route(ZERO, parse_address("-2,0,1"), 4, "ednist", 1).trace)
for t in build_product_trees("ednist", [2, 2]):
    print(verify_product_spanning(t).line())
"""


def _report_digest() -> tuple[str, int]:
    out = subprocess.run(
        [sys.executable, "-c", _REPORT_SCRIPT], capture_output=True, text=True, check=True
    ).stdout
    return hashlib.sha256(out.encode()).hexdigest(), len(out)


def test_criterion_8_determinism(criterion):
    (h1, n1), (h2, n2) = _report_digest(), _report_digest()
    detail = f"two fresh processes, {n1} bytes each, sha256 {h1[:12]}" if h1 == h2 else f"digests differ ({n1} vs {n2} bytes)"
    assert criterion("8", h1 == h2, detail), detail
