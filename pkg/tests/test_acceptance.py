"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py`` (lines are repeated in the
terminal summary) or directly with ``python tests/test_acceptance.py``.
"""
from __future__ import annotations

import random
import sys
import tempfile
import time
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from pathlib import Path


from metricdiv import cli, fixtures, io
from metricdiv.divisor import Divisor, apply_certificate, fire_set, firing_distance, is_integral
from metricdiv.engine import are_equivalent, break_representative, equivalence_certificate, is_break, semibreak_reduce
from metricdiv.errors import InputError
from metricdiv.graph import PointRef, build_graph, normalize_point
from metricdiv.minmax import error_model, error_of_set, max_error_profile
from metricdiv.oracle import is_semibreak_bruteforce, max_error_bruteforce, spanning_tree_complements
from metricdiv.topology import (
    AdmissibleSet,
    boundary_valence,
    conv_model,
    convex_hull,
    cut_size,
    diff_count_direct,
    fatten,
    is_convex,
    psi,
    topology_profile,
)

RESULTS: dict[int, str] = {}
CORPUS_SIZE = 200
TRIALS = 1000


def record(n: int, ok: bool, detail: str) -> bool:
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}"
    RESULTS[n] = line
    print(line)
    return ok


@lru_cache(maxsize=None)
def corpus():
    """Random instances with their reductions; built once and timed."""
    start = time.perf_counter()
    items = []
    for i in range(CORPUS_SIZE):
        rng = random.Random(10_000 + i)
        g = fixtures.random_graph(rng, max_vertices=6, max_edges=9, max_genus=4, max_den=8)
        D = fixtures.random_effective(rng, g)
        items.append((g, D, semibreak_reduce(g, D, keep_trace=True)))
    return items, time.perf_counter() - start


def random_set(rng, model):
    I = [v for v in model.vertices if rng.random() < 0.5]
    inside = set(I)
    J = [me.id for me in model.edges if me.tail in inside and me.head in inside and rng.random() < 0.7]
    return AdmissibleSet(model, I, J)


def random_model(rng, g):
    return g.trivial_model.refine(fixtures.random_point(rng, g) for _ in range(rng.randint(0, 3)))


def point_in_closure(rng, graph, model, eid):
    me = model.edge_by_id[eid]
    den = rng.randint(1, 8)
    lo, hi = me.lo, me.hi
    t = lo + (hi - lo) * Fraction(rng.randint(0, den), den)
    return normalize_point(graph, me.base, t)


def sample_semibreak(rng, graph, d):
    """One chip in the closure of each of ``d`` edges of a spanning-tree complement."""
    model = graph.trivial_model
    comp = rng.choice(spanning_tree_complements(model))
    edges = rng.sample(sorted(comp.edges), d)
    return Divisor.of_points(graph, [point_in_closure(rng, graph, model, e) for e in edges])


# 1 ---------------------------------------------------------------------------

def test_criterion_1_dumbbell_equivalence(tmp_path):
    start = time.perf_counter()
    db = fixtures.dumbbell()
    u = Divisor.of_points(db, [PointRef.at("u")])
    v = Divisor.of_points(db, [PointRef.at("v")])
    cert = equivalence_certificate(db, u, v)
    lib_ok = cert is not None and apply_certificate(db, u, cert) == v

    paths = {}
    for name, obj in [("g", io.graph_to_json(db)), ("u", io.divisor_to_json(u)), ("v", io.divisor_to_json(v))]:
        paths[name] = tmp_path / f"{name}.json"
        paths[name].write_text(io.dumps(obj))
    cert_path = tmp_path / "cert.json"
    code = cli.run(["equiv", str(paths["g"]), str(paths["u"]), str(paths["v"]), "--cert", str(cert_path)])
    replay = cli.run(["verify-cert", str(paths["g"]), str(paths["u"]), str(paths["v"]), str(cert_path)])
    elapsed = time.perf_counter() - start
    ok = lib_ok and code == 0 and replay == 0 and elapsed < 1
    assert record(1, ok, f"(u)~(v) on the dumbbell, {len(cert or ())}-step certificate replays, {elapsed:.3f}s")


# 2 ---------------------------------------------------------------------------

def test_criterion_2_reduction_at_desk_scale():
    items, build_time = corpus()
    start = time.perf_counter()
    failures = []
    for k, (g, D, r) in enumerate(items):
        bound = g.genus * len(g.branch_points)
        checks = {
            "updates within g*|V|": r.iterations - 1 <= bound,
            "certificate replays": apply_certificate(g, D, r.certificate) == r.semibreak,
            "semibreak oracle": is_semibreak_bruteforce(g, r.semibreak),
            "dominated": r.semibreak <= r.break_divisor,
            "break": is_break(g, r.break_divisor),
        }
        failures += [(k, name) for name, ok in checks.items() if not ok]
    elapsed = build_time + time.perf_counter() - start
    ok = not failures and elapsed < 60 and len(items) >= 200
    worst = max(r.iterations - 1 - g.genus * len(g.branch_points) for g, _, r in items)
    assert record(
        2, ok, f"{len(items)} instances, {len(failures)} failures, max(updates - g*|V|)={worst}, {elapsed:.1f}s"
    ), failures[:5]


# 3 ---------------------------------------------------------------------------

def test_criterion_3_oracle_equivalence():
    items, _ = corpus()
    mismatches, norm_mismatches, checked = [], [], 0
    for k, (g, D, r) in enumerate(items):
        if len(error_model(g, D).vertices) > 12:
            continue
        checked += 1
        fast = max_error_profile(g, D)
        slow = max_error_bruteforce(g, D)
        if fast.max_error != slow.max_error or fast.minmax != slow.minmax:
            mismatches.append(k)
        mn = max_error_profile(g, D, "min_norm")
        if (mn.max_error, mn.minmax, mn.is_break_signal) != (fast.max_error, fast.minmax, fast.is_break_signal):
            norm_mismatches.append(k)
    ok = not mismatches and not norm_mismatches and checked > 0
    assert record(
        3, ok, f"{checked} instances, {len(mismatches)} oracle and {len(norm_mismatches)} min-norm mismatches"
    )


# 4 ---------------------------------------------------------------------------

def run_trials(check):
    bad = 0
    for i in range(TRIALS):
        rng = random.Random(50_000 + i)
        g = fixtures.random_graph(rng)
        if not check(rng, g):
            bad += 1
    return bad


def psi_modularity(rng, g):
    S, T = random_set(rng, random_model(rng, g)), random_set(rng, random_model(rng, g))
    return psi(S | T) + psi(S & T) == psi(S) + psi(T)


def psi_of_hull(rng, g):
    S = random_set(rng, random_model(rng, g))
    return psi(convex_hull(g, S)) == psi(S) - diff_count_direct(S)


def error_lattice(rng, g):
    D = fixtures.random_effective(rng, g)
    S, T = random_set(rng, random_model(rng, g)), random_set(rng, random_model(rng, g))
    e = lambda X: error_of_set(None, D, X)
    equality = e(S) + e(T) == e(S & T) + e(S | T)
    inequality = e(S) + e(T) + diff_count_direct(S | T) <= e(S & T) + e(convex_hull(g, S | T))
    return equality and inequality


def cut_identity(rng, g):
    S = random_set(rng, random_model(rng, g))
    if S.is_empty or S.is_full:
        return True
    return cut_size(S) == psi(S) - topology_profile(S).p_a + 1


def minmax_claim(rng, g):
    D = fixtures.random_effective(rng, g)
    pr = max_error_profile(g, D)
    if not is_convex(pr.minmax):
        return False
    if pr.max_error > 0:
        return all(val <= D[p] for p, val in boundary_valence(pr.minmax).items())
    return True


def test_criterion_4_identity_suite():
    identities = {
        "psi modular": psi_modularity,
        "psi(conv)": psi_of_hull,
        "error lattice": error_lattice,
        "cut identity": cut_identity,
        "minmax convex + claim": minmax_claim,
    }
    bad = {name: run_trials(check) for name, check in identities.items()}
    ok = not any(bad.values())
    summary = ", ".join(f"{name} {n}" for name, n in bad.items())
    assert record(4, ok, f"{TRIALS} trials each; failures: {summary}")


# 5 ---------------------------------------------------------------------------

def trace_violations(r):
    out = []
    eps_steps = iter(r.certificate.steps)
    for a, b in zip(r.trace, r.trace[1:]):
        step = next(eps_steps) if a.case == 2 else None
        if b.max_error > a.max_error:
            out.append("max error increased")
            continue
        if b.max_error < a.max_error:
            continue
        if b.branch_count <= a.branch_count:
            out.append("branch count did not grow on a tie")
        if a.case == 2:
            if not fatten(a.minmax, step.eps) <= b.minmax:
                out.append("fattened set not contained in next minmax")
        else:
            gained = [p for p, c in (b.total - a.total).items() if c > 0]
            if len(gained) != 1 or not (a.minmax <= b.minmax and b.minmax.contains(gained[0])):
                out.append("moved chip target not contained in next minmax")
    return out


def test_criterion_5_progress_invariants():
    items, _ = corpus()
    violations, steps = [], 0
    for k, (_, _, r) in enumerate(items):
        steps += len(r.trace) - 1
        violations += [(k, v) for v in trace_violations(r)]
    assert record(5, not violations, f"{steps} trace transitions, {len(violations)} violations"), violations[:5]


# 6 ---------------------------------------------------------------------------

def random_certificate_walk(rng, g, D, tries=40, wanted=3):
    """Apply random fires (either sign) that keep the divisor effective."""
    cur, applied = D, 0
    for _ in range(tries):
        if applied == wanted:
            break
        model = g.trivial_model.refine(list(cur.support) + [fixtures.random_point(rng, g)])
        pool = list(cur.support) if cur.support and rng.random() < 0.7 else list(model.vertices)
        X = rng.sample(pool, rng.randint(1, len(pool)))
        S = convex_hull(g, conv_model(model, X))
        try:
            eps = firing_distance(S) * Fraction(rng.randint(1, 4), 4)
            nxt = fire_set(None, cur, S, eps, rng.choice([1, -1]))
        except InputError:
            continue
        if nxt.is_effective:
            cur, applied = nxt, applied + 1
    return cur, applied


def test_criterion_6_break_canonicality():
    failures, moved, pairs = [], 0, 0
    for i in range(100):
        rng = random.Random(70_000 + i)
        g = fixtures.random_graph(rng)
        while g.genus == 0:
            g = fixtures.random_graph(rng)
        D = fixtures.random_effective(rng, g, degree=g.genus)
        B = break_representative(g, D)
        if break_representative(g, B) != B or not is_break(g, B):
            failures.append((i, "not idempotent"))
        D2, applied = random_certificate_walk(rng, g, D)
        moved += applied > 0
        if break_representative(g, D2) != B:
            failures.append((i, "representative changed under firing"))
        B1, B2 = sample_semibreak(rng, g, g.genus), sample_semibreak(rng, g, g.genus)
        if not (is_break(g, B1) and is_break(g, B2)):
            failures.append((i, "sampled break divisor rejected"))
        if B1 != B2:
            pairs += 1
            if are_equivalent(g, B1, B2):
                failures.append((i, "distinct break divisors equivalent"))
    ok = not failures
    assert record(
        6, ok, f"100 instances ({moved} with nontrivial random certificates, {pairs} distinct pairs), "
        f"{len(failures)} failures"
    ), failures[:5]


# 7 ---------------------------------------------------------------------------

def test_criterion_7_integrality():
    violations, count = [], 0
    for i in range(150):
        rng = random.Random(90_000 + i)
        g = fixtures.random_graph(rng, integer=True)
        D = fixtures.random_effective(rng, g, integer=True)
        assert is_integral(g, D)
        r = semibreak_reduce(g, D, keep_trace=True)
        count += 1
        divisors = [r.semibreak, r.break_divisor] + [t.total for t in r.trace]
        if not all(is_integral(g, X) for X in divisors):
            violations.append((i, "fractional divisor"))
        if any(step.eps.denominator != 1 for step in r.certificate.steps):
            violations.append((i, "fractional eps"))
    assert record(7, not violations, f"{count} integer-length instances, {len(violations)} violations"), violations


# 8 ---------------------------------------------------------------------------

def theta_like(rng):
    """Banana graphs and thetas whose edges are subdivided by valency-2 vertices."""
    k = rng.randint(3, 4)
    if rng.random() < 0.5:
        return build_graph((["u", "v"], [(f"e{i}", "u", "v", Fraction(rng.randint(1, 8), rng.randint(1, 4)))
                                         for i in range(k)]))
    verts, edges = ["u", "v"], []
    for i in range(k):
        mid = f"m{i}"
        verts.append(mid)
        edges.append((f"a{i}", "u", mid, Fraction(rng.randint(1, 6), rng.randint(1, 4))))
        edges.append((f"b{i}", mid, "v", Fraction(rng.randint(1, 6), rng.randint(1, 4))))
    return build_graph((verts, edges))


def min_cut(graph):
    """Smallest cut over proper closed sets of the model refined at every edge midpoint.

    For a fixed vertex set the cut only shrinks as closed edges are added, so
    the hull forms ``conv_model(X)`` attain the minimum.
    """
    model = graph.trivial_model.refine(PointRef.on(e.id, e.length / 2) for e in graph.edges)
    verts = list(model.vertices)
    best = None
    for r in range(1, len(verts)):
        for X in combinations(verts, r):
            c = cut_size(conv_model(model, X))
            best = c if best is None else min(best, c)
    return best


def test_criterion_8_connectivity_uniqueness():
    violations, pairs, graphs, cuts, degrees = [], 0, 0, set(), set()
    for i in range(40):
        rng = random.Random(110_000 + i)
        g = theta_like(rng)
        graphs += 1
        cut = min_cut(g)
        cuts.add(cut)
        d_max = min(cut - 1, g.genus)
        degrees.update(range(d_max + 1))
        for d in range(d_max + 1):
            samples = {sample_semibreak(rng, g, d) for _ in range(6)}
            for D1, D2 in combinations(sorted(samples, key=repr), 2):
                pairs += 1
                if not (is_semibreak_bruteforce(g, D1) and is_semibreak_bruteforce(g, D2)):
                    violations.append((i, "sample is not semibreak"))
                if are_equivalent(g, D1, D2):
                    violations.append((i, d, D1, D2))
    assert record(
        8,
        not violations,
        f"{graphs} theta-like graphs (min cuts {sorted(cuts)}, degrees {sorted(degrees)}), "
        f"{pairs} distinct semibreak pairs, {len(violations)} violations",
    ), violations[:5]


if __name__ == "__main__":
    tests = [
        test_criterion_1_dumbbell_equivalence,
        test_criterion_2_reduction_at_desk_scale,
        test_criterion_3_oracle_equivalence,
        test_criterion_4_identity_suite,
        test_criterion_5_progress_invariants,
        test_criterion_6_break_canonicality,
        test_criterion_7_integrality,
        test_criterion_8_connectivity_uniqueness,
    ]
    failed = 0
    for n, test in enumerate(tests, 1):
        try:
            if n == 1:
                with tempfile.TemporaryDirectory() as d:
                    test(Path(d))
            else:
                test()
        except AssertionError:
            failed += 1
            if n not in RESULTS:
                record(n, False, "assertion before completion")
    sys.exit(1 if failed else 0)
