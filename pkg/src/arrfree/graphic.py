"""Graphic arrangements: chordality, elimination orders, contraction,
the chromatic-polynomial oracle, and graph-level accuracy.

A(G) has one hyperplane ker(x_i - x_j) per edge; its flats are the vertex
partitions with connected blocks, restriction at such a flat is the
graphic arrangement of the quotient graph, and chi(A(G), t) is the
chromatic polynomial.  Accuracy is therefore decided entirely on quotient
graphs, which keeps the 10- and 11-vertex fixtures comfortably inside
desk scale.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from functools import lru_cache

from .accuracy import (ACCURATE, CERTIFIED_FREE, CHARPOLY_CONSISTENT,
                       NOT_ACCURATE, AccuracyReport, DimensionEntry)
from .arrangement import Arrangement, arrangement, flat_from_hyperplanes
from .fields import QQ
from .polynomials import integer_roots_if_splits, poly_mul, poly_trim


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset  # of (i, j) pairs with 1 <= i < j <= n

    def neighbors(self, v):
        out = set()
        for a, b in self.edges:
            if a == v:
                out.add(b)
            elif b == v:
                out.add(a)
        return out

    def edge_list(self):
        return sorted(self.edges)


def graph(n, edges) -> Graph:
    norm = set()
    for a, b in edges:
        if a == b:
            raise ValueError("loops are not allowed")
        if not (1 <= a <= n and 1 <= b <= n):
            raise ValueError(f"edge ({a},{b}) outside 1..{n}")
        norm.add((min(a, b), max(a, b)))
    return Graph(n, frozenset(norm))


def graphic_arrangement(g: Graph) -> Arrangement:
    "One hyperplane x_i - x_j per edge, in n rational coordinates."
    normals = []
    for a, b in g.edge_list():
        v = [0] * g.n
        v[a - 1] = 1
        v[b - 1] = -1
        normals.append(v)
    return arrangement(g.n, QQ, normals)


def contract(g: Graph, e) -> Graph:
    """Identify the endpoints of an edge (kept label: the smaller one),
    relabel the vertices above the removed one down by one, drop loops and
    merge parallels."""
    a, b = min(e), max(e)
    if (a, b) not in g.edges:
        raise ValueError(f"edge ({a},{b}) not in the graph")

    def relabel(v):
        if v == b:
            v = a
        return v - 1 if v > b else v

    edges = set()
    for x, y in g.edges:
        u, w = relabel(x), relabel(y)
        if u != w:
            edges.add((min(u, w), max(u, w)))
    return Graph(g.n - 1, frozenset(edges))


# ---------------------------------------------------------------------------
# chordality

def perfect_elimination_order(g: Graph):
    """Lexicographic BFS; the reverse visiting order is a perfect
    elimination order exactly for chordal graphs, and the returned order
    is explicitly validated, so None conclusively means not chordal."""
    order = []
    labels = {v: [] for v in range(1, g.n + 1)}
    remaining = set(labels)
    while remaining:
        v = max(remaining, key=lambda u: (labels[u], -u))
        order.append(v)
        remaining.discard(v)
        for u in g.neighbors(v) & remaining:
            labels[u].append(-len(order))  # earlier visits weigh more
    order.reverse()
    return tuple(order) if is_elimination_order(g, order) else None


def is_elimination_order(g: Graph, order) -> bool:
    "Each vertex's not-yet-eliminated neighbors must form a clique."
    if sorted(order) != list(range(1, g.n + 1)):
        return False
    position = {v: i for i, v in enumerate(order)}
    for v in order:
        later = [u for u in g.neighbors(v) if position[u] > position[v]]
        for i in range(len(later)):
            for j in range(i + 1, len(later)):
                a, b = later[i], later[j]
                if (min(a, b), max(a, b)) not in g.edges:
                    return False
    return True


def exponents_from_elimination(g: Graph, order):
    "Sorted later-neighbor counts along a validated elimination order."
    if not is_elimination_order(g, order):
        raise ValueError("not a valid elimination order")
    position = {v: i for i, v in enumerate(order)}
    counts = [sum(1 for u in g.neighbors(v) if position[u] > position[v])
              for v in order]
    return tuple(sorted(counts))


# ---------------------------------------------------------------------------
# chromatic polynomial (deletion-contraction with memoization)

_CHROMATIC_MEMO = {}


def chromatic_polynomial(g: Graph, max_edges=64):
    if len(g.edges) > max_edges:
        raise ValueError(f"chromatic recursion capped at {max_edges} edges")
    return _chromatic(g.n, g.edges)


def _components(n, edges):
    parent = list(range(n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        parent[find(a)] = find(b)
    comps = {}
    for v in range(1, n + 1):
        comps.setdefault(find(v), []).append(v)
    return list(comps.values())


def _chromatic(n, edges):
    key = (n, edges)
    hit = _CHROMATIC_MEMO.get(key)
    if hit is not None:
        return hit
    if not edges:
        result = (0,) * n + (1,)
    else:
        comps = _components(n, edges)
        if len(comps) > 1:
            result = (1,)
            for comp in comps:
                index = {v: i + 1 for i, v in enumerate(sorted(comp))}
                sub = frozenset((index[a], index[b]) for a, b in edges
                                if a in index and b in index)
                result = poly_mul(result, _chromatic(len(comp), sub))
        elif len(edges) == n - 1:
            # spanning tree: t (t-1)^(n-1)
            result = (0, 1)
            for _ in range(n - 1):
                result = poly_mul(result, (-1, 1))
        else:
            e = min(edges)
            g = Graph(n, edges)
            deleted = frozenset(edges - {e})
            contracted = contract(g, e)
            result = poly_trim([x - y for x, y in _pad(
                _chromatic(n, deleted),
                _chromatic(contracted.n, contracted.edges))])
    _CHROMATIC_MEMO[key] = result
    return result


def _pad(a, b):
    n = max(len(a), len(b))
    return zip(tuple(a) + (0,) * (n - len(a)), tuple(b) + (0,) * (n - len(b)))


# ---------------------------------------------------------------------------
# quotients and graph-level accuracy

def quotient(g: Graph, blocks) -> Graph:
    "Quotient by a partition (blocks ordered by least member)."
    blocks = sorted((sorted(b) for b in blocks), key=lambda b: b[0])
    index = {}
    for i, block in enumerate(blocks, start=1):
        for v in block:
            index[v] = i
    if sorted(index) != list(range(1, g.n + 1)):
        raise ValueError("blocks do not partition the vertices")
    edges = set()
    for a, b in g.edges:
        u, w = index[a], index[b]
        if u != w:
            edges.add((min(u, w), max(u, w)))
    return Graph(len(blocks), frozenset(edges))


def _block_connected(g, block):
    block = set(block)
    start = next(iter(block))
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for u in g.neighbors(v) & block - seen:
            seen.add(u)
            stack.append(u)
    return seen == block


def connected_partitions(g: Graph, num_blocks):
    """All partitions of the vertices into the given number of blocks,
    each inducing a connected subgraph; restricted-growth order."""
    n = g.n
    assignment = [0] * (n + 1)

    def walk(v, used):
        if v > n:
            if used == num_blocks:
                blocks = [[] for _ in range(used)]
                for u in range(1, n + 1):
                    blocks[assignment[u]].append(u)
                if all(_block_connected(g, b) for b in blocks if len(b) > 1):
                    yield tuple(tuple(b) for b in blocks)
            return
        if used + (n - v + 1) < num_blocks:
            return
        for b in range(min(used + 1, num_blocks)):
            assignment[v] = b
            yield from walk(v + 1, max(used, b + 1))

    yield from walk(1, 0)


def flat_of_partition(g: Graph, arr: Arrangement, blocks):
    "The lattice flat of a connected partition, via its internal edges."
    edge_index = {e: i for i, e in enumerate(g.edge_list())}
    indices = []
    for block in blocks:
        bset = set(block)
        for a, b in g.edges:
            if a in bset and b in bset:
                indices.append(edge_index[(a, b)])
    return flat_from_hyperplanes(arr, sorted(set(indices)))


def graphic_accuracy(g: Graph, mode="exact") -> AccuracyReport:
    """Accuracy of A(G), decided on quotient graphs.

    Freeness of a graphic arrangement needs chordality; non-chordal input
    is immediately not accurate.  Witness evidence is CERTIFIED_FREE when
    the quotient is chordal with elimination exponents matching the
    chromatic roots, else CHARPOLY_CONSISTENT."""
    order = perfect_elimination_order(g)
    if order is None:
        return AccuracyReport(NOT_ACCURATE, mode, (),
                              provenance="not chordal, hence not free")
    exponents = exponents_from_elimination(g, order)
    arr = graphic_arrangement(g)
    from collections import Counter
    entries = []
    verdict = ACCURATE
    for d in range(g.n, 0, -1):
        prefix = exponents[:d]
        found = None
        for blocks in connected_partitions(g, d):
            q = quotient(g, blocks)
            roots = integer_roots_if_splits(chromatic_polynomial(q))
            if roots is None:
                continue
            if mode == "exact":
                ok = roots == prefix
            else:
                ok = not (Counter(roots) - Counter(exponents))
            if ok:
                found = (blocks, q, roots)
                break
        if found is None:
            entries.append(DimensionEntry(d, False, None, None,
                                          CHARPOLY_CONSISTENT))
            verdict = NOT_ACCURATE
            break
        blocks, quot, roots = found
        sub_order = perfect_elimination_order(quot)
        certified = (sub_order is not None and
                     exponents_from_elimination(quot, sub_order) == roots)
        entries.append(DimensionEntry(
            d, True, flat_of_partition(g, arr, blocks), roots,
            CERTIFIED_FREE if certified else CHARPOLY_CONSISTENT))
    return AccuracyReport(verdict, mode, tuple(entries),
                          provenance="graphic: quotient-graph scan")


# ---------------------------------------------------------------------------
# built-in fixture graphs

# 10 vertices: hexagon 1..6, triangle {1,3,5}, hub 10 joined to 1, 3, 5
# directly and through the subdivision vertices 7, 8, 9
FIXTURE_G_EDGES = (
    (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 1),
    (1, 10), (3, 10), (5, 10),
    (1, 3), (3, 5), (1, 5),
    (3, 8), (8, 10), (5, 9), (9, 10), (1, 7), (7, 10),
)
FIXTURE_G_PRIME_EXTRA = ((1, 11), (2, 11), (3, 11), (10, 11))

FIXTURE_CHECKSUMS = {
    "G": "f8dcb389739429147c8788269ba7352f919cc6409fce1a5b9251344612219001",
    "G_prime": "b5925124157c094571fb1c4c0ff46ace6c453bb272bc662b72df9119d3dc156d",
}


def fixture_graph(which: str) -> Graph:
    if which == "G":
        return graph(10, FIXTURE_G_EDGES)
    if which == "G_prime":
        return graph(11, FIXTURE_G_EDGES + FIXTURE_G_PRIME_EXTRA)
    raise ValueError(f"unknown fixture {which!r}; use 'G' or 'G_prime'")


def fixture_checksum(which: str) -> str:
    g = fixture_graph(which)
    payload = json.dumps({"n": g.n, "edges": g.edge_list()},
                         separators=(",", ":"))
    return hashlib.sha256(payload.encode()).hexdigest()
