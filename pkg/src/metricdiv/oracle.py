"""Brute-force verifiers, independent of the engine's fast paths.

Nothing here uses the compiled scan, the closed-form complement count or
the submodular machinery; topology is recomputed from scratch on an
explicit subdivision of the complement.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .divisor import Divisor
from .errors import NotEffective, TooLarge
from .graph import MetricGraph, Model
from .minmax import ErrorProfile
from .topology import AdmissibleSet

TREE_EDGE_BOUND = 25
ME_VERTEX_BOUND = 16
CLOSED_FORM_BOUND = 1 << 18


@dataclass(frozen=True)
class TreeComplement:
    edges: frozenset[str]


def spanning_tree_complements(model: Model, bound: int = TREE_EDGE_BOUND) -> list[TreeComplement]:
    """Complements of all spanning trees, by include/exclude branching on each edge."""
    edges = list(model.edges)
    if len(edges) > bound:
        raise TooLarge(f"{len(edges)} edges exceed the enumeration bound {bound}")
    verts = list(model.vertices)
    need = len(verts) - 1
    out = []

    def find(parent, x):
        while parent[x] != x:
            x = parent[x]
        return x

    def connected_possible(k, chosen_parent):
        # can the edges from k onward still join every component?
        parent = dict(chosen_parent)
        comps = len({find(parent, v) for v in verts})
        for me in edges[k:]:
            a, b = find(parent, me.tail), find(parent, me.head)
            if a != b:
                parent[a] = b
                comps -= 1
        return comps == 1

    def rec(k, parent, used, removed):
        if used == need:
            out.append(TreeComplement(frozenset(removed + [me.id for me in edges[k:]])))
            return
        if k == len(edges):
            return
        me = edges[k]
        a, b = find(parent, me.tail), find(parent, me.head)
        if a != b:
            p2 = dict(parent)
            p2[a] = b
            rec(k + 1, p2, used + 1, removed)
        if connected_possible(k + 1, parent):
            rec(k + 1, parent, used, removed + [me.id])

    rec(0, {v: v for v in verts}, 0, [])
    return sorted(out, key=lambda tc: sorted(tc.edges))


def _perfect_matching(chips, options) -> bool:
    """Kuhn's augmenting-path matching of every chip to a distinct allowed edge."""
    match: dict[str, int] = {}

    def augment(i, seen):
        for e in options[i]:
            if e in seen:
                continue
            seen.add(e)
            if e not in match or augment(match[e], seen):
                match[e] = i
                return True
        return False

    return all(augment(i, set()) for i in range(len(chips)))


def is_semibreak_bruteforce(graph: MetricGraph, D: Divisor) -> bool:
    """Is ``D`` dominated by a break divisor? Checked over every spanning tree."""
    if not D.is_effective:
        raise NotEffective("divisor must be effective")
    if D.degree > graph.genus:
        return False
    model = graph.trivial_model.refine(D.support)
    chips = [p for p, c in D.items() for _ in range(c)]
    if not chips:
        return True
    for tc in spanning_tree_complements(model):
        closures = {eid: {model.edge_by_id[eid].tail, model.edge_by_id[eid].head} for eid in tc.edges}
        options = [sorted(e for e, ends in closures.items() if p in ends) for p in chips]
        if _perfect_matching(chips, options):
            return True
    return False


def _euler_characteristic_open_complement(model: Model, I, J) -> int:
    """χ of Γ∖S via components and cycle rank of an explicit graph.

    Each open edge outside ``J`` is a node at its midpoint, joined by a half
    edge to each endpoint that lies outside ``I``.
    """
    nodes = [("v", v) for v in model.vertices if v not in I]
    links = []
    for me in model.edges:
        if me.id in J:
            continue
        mid = ("m", me.id)
        nodes.append(mid)
        for end in (me.tail, me.head):
            if end not in I:
                links.append((mid, ("v", end)))
    adj = {n: [] for n in nodes}
    for a, b in links:
        adj[a].append(b)
        adj[b].append(a)
    seen = set()
    betti0 = 0
    for n in nodes:
        if n in seen:
            continue
        betti0 += 1
        stack = [n]
        seen.add(n)
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
    betti1 = len(links) - len(nodes) + betti0
    return betti0 - betti1


def error_bruteforce(model: Model, D: Divisor, I, J) -> int:
    chi_gamma = len(model.vertices) - len(model.edges)
    psi = _euler_characteristic_open_complement(model, I, J) - chi_gamma
    deg = 0
    for p, c in D.items():
        kind, cell = model.locate(p)
        if (kind == "vertex" and cell in I) or (kind == "edge" and cell.id in J):
            deg += c
    return deg - psi


def _closed_forms(model: Model):
    verts = list(model.vertices)
    for r in range(len(verts) + 1):
        for I in combinations(verts, r):
            Iset = frozenset(I)
            inner = [me.id for me in model.edges if me.tail in Iset and me.head in Iset]
            for k in range(len(inner) + 1):
                for J in combinations(inner, k):
                    yield Iset, frozenset(J)


def max_error_bruteforce(graph: MetricGraph, D: Divisor, closed_forms: bool = True) -> ErrorProfile:
    """Maximum of Error over proper closed sets of the model ``V_Γ ∪ supp(D)``.

    Enumerates the hull forms ``conv_G(X)`` and, as a second check, every
    closed ``(I, J)`` form; both must give the same maximum. The smallest
    maximizer is the intersection of all maximizers.
    """
    if not D.is_effective:
        raise NotEffective("divisor must be effective")
    model = graph.trivial_model.refine(D.support)
    verts = list(model.vertices)
    if len(verts) > ME_VERTEX_BOUND:
        raise TooLarge(f"{len(verts)} model vertices exceed {ME_VERTEX_BOUND}")
    full_I, full_J = frozenset(verts), frozenset(me.id for me in model.edges)

    best, maximizers = None, []
    for r in range(len(verts) + 1):
        for X in combinations(verts, r):
            I = frozenset(X)
            J = frozenset(me.id for me in model.edges if me.tail in I and me.head in I)
            if I == full_I and J == full_J:
                continue
            err = error_bruteforce(model, D, I, J)
            if best is None or err > best:
                best, maximizers = err, [(I, J)]
            elif err == best:
                maximizers.append((I, J))

    if closed_forms:
        count = sum(1 << sum(1 for me in model.edges if me.tail in I and me.head in I)
                    for r in range(len(verts) + 1) for I in map(frozenset, combinations(verts, r)))
        if count > CLOSED_FORM_BOUND:
            raise TooLarge(f"{count} closed forms exceed {CLOSED_FORM_BOUND}")
        best2 = None
        for I, J in _closed_forms(model):
            if I == full_I and J == full_J:
                continue
            err = error_bruteforce(model, D, I, J)
            if best2 is None or err > best2:
                best2 = err
        if best2 != best:
            raise AssertionError(f"hull forms give {best}, closed forms give {best2}")

    I = frozenset.intersection(*(m[0] for m in maximizers))
    J = frozenset.intersection(*(m[1] for m in maximizers))
    S = AdmissibleSet(model, I, J)
    is_break = D.degree == graph.genus and best == 0
    return ErrorProfile(best, S, is_break)
