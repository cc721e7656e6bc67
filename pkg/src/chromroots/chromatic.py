"""Chromatic polynomial engine (deletion-contraction), a brute-force
colouring-count oracle, and partitioned chromatic polynomials.

The engine works on adjacency bitmasks and applies, in order: connected
component factoring, simplicial-vertex peeling (which subsumes trees and
cliques), a degree-2 series reduction, and memoised deletion-contraction
that branches on the edge with the most common neighbours.  All arithmetic
is exact integer polynomial arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable

from .exactnum import IntPolynomial
from .graphs import (ColouringType, FramedGraph, Graph, type_auxiliary_graph)

DEFAULT_NODE_BUDGET = 4_000_000
DEFAULT_CACHE_LIMIT = 400_000
DEFAULT_ORACLE_BUDGET = 40_000_000

_ONE = IntPolynomial((1,))
_X = IntPolynomial((0, 1))


class ResourceLimitError(RuntimeError):
    """A computation exceeded its configured node budget."""


def _iter_bits(m: int):
    while m:
        low = m & -m
        yield low.bit_length() - 1
        m ^= low


def _remove_vertex(masks: tuple, v: int) -> tuple:
    low = (1 << v) - 1
    out = []
    for w, m in enumerate(masks):
        if w == v:
            continue
        out.append((m & low) | ((m >> (v + 1)) << v))
    return tuple(out)


def _delete_edge(masks: tuple, u: int, v: int) -> tuple:
    out = list(masks)
    out[u] &= ~(1 << v)
    out[v] &= ~(1 << u)
    return tuple(out)


def _contract_edge(masks: tuple, u: int, v: int) -> tuple:
    """Merge v into u (collapsing parallel edges) and drop index v."""
    bu, bv = 1 << u, 1 << v
    out = list(masks)
    out[u] = (out[u] | out[v]) & ~bu & ~bv
    for w in _iter_bits(out[v]):
        if w != u:
            out[w] |= bu
    for w in range(len(out)):
        out[w] &= ~bv
    return _remove_vertex(tuple(out), v)


def _components(masks: tuple) -> list:
    """Vertex sets (as sorted lists) of the connected components."""
    n = len(masks)
    seen = 0
    comps = []
    for s in range(n):
        if seen & (1 << s):
            continue
        comp = 1 << s
        frontier = comp
        while frontier:
            nxt = 0
            for v in _iter_bits(frontier):
                nxt |= masks[v]
            frontier = nxt & ~comp
            comp |= nxt
        seen |= comp
        comps.append(list(_iter_bits(comp)))
    return comps


def _induced(masks: tuple, verts: list) -> tuple:
    index = {v: i for i, v in enumerate(verts)}
    out = []
    for v in verts:
        m = 0
        for u in _iter_bits(masks[v]):
            i = index.get(u)
            if i is not None:
                m |= 1 << i
        out.append(m)
    return tuple(out)


def _canonical_key(masks: tuple):
    """Cheap isomorphism-aware cache key: relabel by degree-refined colour
    classes (ties broken by incoming label) and emit the edge list.  Equal
    keys always mean isomorphic graphs, so the cache is sound; distinct keys
    for isomorphic graphs merely cost a cache miss."""
    n = len(masks)
    colours = [m.bit_count() for m in masks]
    for _ in range(n):
        sigs = []
        for v in range(n):
            sigs.append((colours[v], tuple(sorted(colours[u] for u in _iter_bits(masks[v])))))
        ranking = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ranking[s] for s in sigs]
        if new == colours:
            break
        colours = new
    order = sorted(range(n), key=lambda v: (colours[v], v))
    pos = [0] * n
    for i, v in enumerate(order):
        pos[v] = i
    edges = []
    for v in range(n):
        pv = pos[v]
        for u in _iter_bits(masks[v]):
            if u > v:
                pu = pos[u]
                edges.append((pv, pu) if pv < pu else (pu, pv))
    edges.sort()
    return (n, tuple(edges))


class _Engine:
    __slots__ = ("budget", "nodes", "cache", "cache_limit")

    def __init__(self, node_budget: int, cache: Dict | None, cache_limit: int):
        self.budget = node_budget
        self.nodes = 0
        self.cache = cache if cache is not None else {}
        self.cache_limit = cache_limit

    def poly(self, masks: tuple) -> IntPolynomial:
        if not masks:
            return _ONE
        comps = _components(masks)
        if len(comps) == 1:
            return self._connected(masks)
        result = _ONE
        for comp in comps:
            result = result * self._connected(_induced(masks, comp))
        return result

    def _connected(self, masks: tuple) -> IntPolynomial:
        self.nodes += 1
        if self.nodes > self.budget:
            raise ResourceLimitError(
                f"deletion-contraction node budget ({self.budget}) exceeded")

        # Peel simplicial vertices (neighbourhood is a clique); each one
        # contributes a factor (x - deg).  Trees and cliques peel away
        # completely.  Simplicial vertices are never cut vertices, so the
        # remainder stays connected.
        linear_factors: Dict[int, int] = {}
        while True:
            n = len(masks)
            if n == 0:
                break
            if n == 1:
                linear_factors[0] = linear_factors.get(0, 0) + 1
                masks = ()
                break
            peeled = None
            for v in range(n):
                mv = masks[v]
                clique = True
                for u in _iter_bits(mv):
                    if (mv & ~(1 << u)) & ~masks[u]:
                        clique = False
                        break
                if clique:
                    peeled = v
                    break
            if peeled is None:
                break
            d = masks[peeled].bit_count()
            linear_factors[d] = linear_factors.get(d, 0) + 1
            masks = _remove_vertex(masks, peeled)

        if masks:
            core = self._core(masks)
        else:
            core = _ONE
        for c, mult in linear_factors.items():
            core = core * (IntPolynomial((-c, 1)) ** mult)
        return core

    def _core(self, masks: tuple) -> IntPolynomial:
        """Connected graph with no simplicial vertices (so min degree >= 2
        and at least one vertex pair to branch on)."""
        key = _canonical_key(masks)
        hit = self.cache.get(key)
        if hit is not None:
            return hit

        n = len(masks)
        # Degree-2 vertex with non-adjacent neighbours u, w:
        #   P(G) = (x-2) P(G - v + uw) + (x-1) P((G - v) / uw)
        # splitting colourings of G - v by whether u and w share a colour.
        reduced = None
        for v in range(n):
            if masks[v].bit_count() == 2:
                u, w = _iter_bits(masks[v])
                rest = _remove_vertex(masks, v)
                u -= u > v
                w -= w > v
                joined = list(rest)
                joined[u] |= 1 << w
                joined[w] |= 1 << u
                p_neq = self.poly(tuple(joined))
                p_eq = self.poly(_contract_edge(tuple(joined), u, w))
                reduced = IntPolynomial((-2, 1)) * p_neq + IntPolynomial((-1, 1)) * p_eq
                break

        if reduced is None:
            # Branch on the edge with the most common neighbours: both the
            # deletion and the contraction collapse triangles fastest there.
            best = (-1, -1, 0, 0)
            for v in range(n):
                mv = masks[v]
                for u in _iter_bits(mv):
                    if u <= v:
                        continue
                    cn = (mv & masks[u]).bit_count()
                    score = (cn, mv.bit_count() + masks[u].bit_count())
                    if score > best[:2]:
                        best = (cn, score[1], v, u)
            v, u = best[2], best[3]
            reduced = self.poly(_delete_edge(masks, v, u)) \
                - self.poly(_contract_edge(masks, v, u))

        if len(self.cache) < self.cache_limit:
            self.cache[key] = reduced
        return reduced


def chromatic_polynomial(g: Graph, *, node_budget: int = DEFAULT_NODE_BUDGET,
                         cache: Dict | None = None,
                         cache_limit: int = DEFAULT_CACHE_LIMIT) -> IntPolynomial:
    """Exact chromatic polynomial of a simple graph.

    Raises ResourceLimitError if the recursion exceeds `node_budget`.
    A shared `cache` dict may be passed in to amortise related runs.
    """
    engine = _Engine(node_budget, cache, cache_limit)
    return engine.poly(g.adjacency_masks())


# ----------------------------------------------------------------------------
# Brute-force oracle
# ----------------------------------------------------------------------------

ORACLE_MAX_COLOURS = 12
ORACLE_MAX_VERTICES = 12


def _oracle_order(g: Graph) -> list:
    """Vertex order for backtracking: each new vertex sees as many already
    placed neighbours as possible."""
    n = g.vertex_count
    if n == 0:
        return []
    masks = g.adjacency_masks()
    order = [max(range(n), key=lambda v: masks[v].bit_count())]
    placed = 1 << order[0]
    while len(order) < n:
        v = max((w for w in range(n) if not placed & (1 << w)),
                key=lambda w: ((masks[w] & placed).bit_count(), masks[w].bit_count()))
        order.append(v)
        placed |= 1 << v
    return order


def count_colourings_oracle(g: Graph, x: int, *,
                            step_budget: int = DEFAULT_ORACLE_BUDGET) -> int:
    """Number of proper x-colourings by exhaustive backtracking.

    Independent of the polynomial engine.  Enforces the documented bounds
    (x <= 12, vertex_count <= 12) and a step budget.
    """
    if x < 0:
        raise ValueError("colour count must be >= 0")
    if x > ORACLE_MAX_COLOURS or g.vertex_count > ORACLE_MAX_VERTICES:
        raise ResourceLimitError(
            f"oracle bounds are x <= {ORACLE_MAX_COLOURS}, "
            f"n <= {ORACLE_MAX_VERTICES}")
    n = g.vertex_count
    if n == 0:
        return 1
    if x == 0:
        return 0
    order = _oracle_order(g)
    masks = g.adjacency_masks()
    # pred[i]: positions (in colouring order) of earlier neighbours of order[i]
    pred = []
    pos = {v: i for i, v in enumerate(order)}
    for i, v in enumerate(order):
        pred.append([pos[u] for u in _iter_bits(masks[v]) if pos[u] < i])
    steps = 0
    assigned = [0] * n

    def count_from(depth: int) -> int:
        nonlocal steps
        if depth == n:
            return 1
        steps += 1
        if steps > step_budget:
            raise ResourceLimitError("oracle step budget exceeded")
        forbidden = 0
        for j in pred[depth]:
            forbidden |= 1 << assigned[j]
        total_here = 0
        m = ~forbidden & ((1 << x) - 1)
        while m:
            cbit = m & -m
            m ^= cbit
            assigned[depth] = cbit.bit_length() - 1
            total_here += count_from(depth + 1)
        return total_here

    return count_from(0)


def count_colourings_by_type(fg: FramedGraph, x: int, *,
                             step_budget: int = DEFAULT_ORACLE_BUDGET) -> Dict[ColouringType, int]:
    """Brute-force proper-colouring counts split by frame colour pattern."""
    g = fg.graph
    if x > ORACLE_MAX_COLOURS or g.vertex_count > ORACLE_MAX_VERTICES:
        raise ResourceLimitError(
            f"oracle bounds are x <= {ORACLE_MAX_COLOURS}, "
            f"n <= {ORACLE_MAX_VERTICES}")
    n = g.vertex_count
    counts = {t: 0 for t in ColouringType}
    if x == 0 or n == 0:
        return counts
    masks = g.adjacency_masks()
    # Put the frame first so each completed colouring classifies cheaply.
    rest = [v for v in range(n) if v not in fg.frame]
    order = list(fg.frame) + rest
    pos = {v: i for i, v in enumerate(order)}
    pred = []
    for i, v in enumerate(order):
        pred.append([pos[u] for u in _iter_bits(masks[v]) if pos[u] < i])
    assigned = [0] * n
    steps = 0

    def walk(depth: int) -> int:
        nonlocal steps
        if depth == n:
            return 1
        steps += 1
        if steps > step_budget:
            raise ResourceLimitError("oracle step budget exceeded")
        forbidden = 0
        for j in pred[depth]:
            forbidden |= 1 << assigned[j]
        total_here = 0
        m = ~forbidden & ((1 << x) - 1)
        while m:
            cbit = m & -m
            m ^= cbit
            assigned[depth] = cbit.bit_length() - 1
            if depth == 3:
                counts_key = ColouringType.classify(assigned[0], assigned[1],
                                                    assigned[2], assigned[3])
                counts[counts_key] += walk(depth + 1)
            else:
                total_here += walk(depth + 1)
        return total_here

    if n >= 4:
        walk(0)
    return counts


# ----------------------------------------------------------------------------
# Partitioned chromatic polynomial
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class PartitionVector:
    """The 4-vector of type-wise chromatic polynomials of a framed graph."""

    p1: IntPolynomial
    p2: IntPolynomial
    p3: IntPolynomial
    p4: IntPolynomial

    def __iter__(self):
        return iter((self.p1, self.p2, self.p3, self.p4))

    def __getitem__(self, i: int) -> IntPolynomial:
        return (self.p1, self.p2, self.p3, self.p4)[i]

    def total(self) -> IntPolynomial:
        """The full chromatic polynomial P = P1 + P2 + P3 + P4."""
        return self.p1 + self.p2 + self.p3 + self.p4

    def eval_fraction(self, x: Fraction) -> tuple:
        return tuple(p.eval_fraction(x) for p in self)

    def to_json(self) -> list:
        return [p.to_decimal_strings() for p in self]

    @classmethod
    def from_json(cls, obj: Iterable) -> "PartitionVector":
        return cls(*(IntPolynomial.from_decimal_strings(item) for item in obj))


def partitioned_chromatic(fg: FramedGraph, *,
                          node_budget: int = DEFAULT_NODE_BUDGET,
                          cache: Dict | None = None) -> PartitionVector:
    """Type-wise chromatic polynomials (P1, P2, P3, P4) of a framed graph.

    Each component is the chromatic polynomial of the auxiliary graph that
    identifies equal-colour frame pairs and joins unequal ones; a type whose
    identification collapses an edge contributes the zero polynomial.
    """
    shared = cache if cache is not None else {}
    parts = []
    for t in ColouringType:
        aux = type_auxiliary_graph(fg, t)
        if aux is None:
            parts.append(IntPolynomial.zero())
        else:
            parts.append(chromatic_polynomial(aux, node_budget=node_budget,
                                              cache=shared))
    return PartitionVector(*parts)
