# src/tools/complex_core.py
from __future__ import annotations

import itertools
import logging
from typing import Dict, Iterable, List, Optional, Sequence, Set

import networkx as nx

from src.errors import ComplexError, PreconditionError
from src.schemas import Assignment, SimplicialComplex, VertexSet, canonical_sets

logger = logging.getLogger(__name__)


# -----------------------------
# Structural checks
# -----------------------------
def validate(complex_: SimplicialComplex) -> List[str]:
    """
    Return one description per defect; an empty list means the complex is
    well formed (antichain of facets, vertices in range and covered, unique labels).
    """
    n = complex_.n_vertices
    defects: List[str] = []

    for f in complex_.facets:
        if not f:
            defects.append("empty facet")
            continue
        out_of_range = [v for v in f if v < 0 or v >= n]
        if out_of_range:
            defects.append(f"facet {list(f)} has out-of-range vertex {out_of_range[0]} (n_vertices={n})")
        if len(set(f)) != len(f):
            defects.append(f"facet {list(f)} repeats a vertex")

    facet_sets = [frozenset(f) for f in complex_.facets if f]
    for (i, a), (j, b) in itertools.combinations(enumerate(facet_sets), 2):
        if a == b:
            defects.append(f"facet {sorted(a)} is listed twice")
        elif a < b:
            defects.append(f"facet {sorted(a)} is nested in facet {sorted(b)}")
        elif b < a:
            defects.append(f"facet {sorted(b)} is nested in facet {sorted(a)}")

    covered = set().union(*facet_sets) if facet_sets else set()
    for v in range(n):
        if v not in covered:
            defects.append(f"vertex {v} appears in no facet")

    if complex_.labels is not None:
        if len(complex_.labels) != n:
            defects.append(f"{len(complex_.labels)} labels for {n} vertices")
        seen: Set[str] = set()
        for label in complex_.labels:
            if label in seen:
                defects.append(f"duplicate label {label!r}")
            seen.add(label)

    return defects


def _check_vertices(complex_: SimplicialComplex, vertices: Iterable[int]) -> Set[int]:
    s = set(vertices)
    bad = sorted(v for v in s if v < 0 or v >= complex_.n_vertices)
    if bad:
        raise ComplexError(f"vertex {bad[0]} is out of range for a complex on {complex_.n_vertices} vertices")
    return s


def is_exclusive_set(complex_: SimplicialComplex, vertices: Iterable[int]) -> bool:
    """True iff the set has at least two events and lies inside some facet."""
    s = _check_vertices(complex_, vertices)
    if len(s) < 2:
        return False
    return any(s.issubset(f) for f in complex_.facets)


def is_complete_graph_complex(complex_: SimplicialComplex) -> bool:
    """True iff every facet is a pair and every pair is a facet (a 'pentagram'-type complex)."""
    n = complex_.n_vertices
    if n < 2:
        return False
    return all(len(f) == 2 for f in complex_.facets) and len(complex_.facets) == n * (n - 1) // 2


# -----------------------------
# Graph views
# -----------------------------
def skeleton(complex_: SimplicialComplex) -> nx.Graph:
    """Graph of exclusive pairs, frozen; node attribute 'label' carries the event name."""
    g = nx.Graph()
    for v in range(complex_.n_vertices):
        g.add_node(v, label=complex_.label(v))
    for f in complex_.facets:
        g.add_edges_from(itertools.combinations(f, 2))
    return nx.freeze(g)


def maximal_cliques(complex_: SimplicialComplex) -> List[VertexSet]:
    """Maximal cliques of the skeleton in canonical order (isolated vertices as singletons)."""
    cliques = canonical_sets(nx.find_cliques(skeleton(complex_)))
    logger.debug("%d maximal cliques on %d vertices", len(cliques), complex_.n_vertices)
    return cliques


def clique_complex(complex_: SimplicialComplex) -> SimplicialComplex:
    """Same vertices; the simplices are exactly the cliques of the skeleton."""
    return SimplicialComplex.from_facets(complex_.n_vertices, maximal_cliques(complex_), complex_.labels)


# -----------------------------
# Constructions
# -----------------------------
def or_product(a: SimplicialComplex, b: SimplicialComplex) -> SimplicialComplex:
    """
    Joint complex of two independent experiments. Vertex (i, j) gets index
    i*|V_b| + j and label "i⊗j". A joint set is exclusive when its first
    coordinates are pairwise distinct and exclusive in `a`, or its second
    coordinates are pairwise distinct and exclusive in `b`.
    """
    na, nb = a.n_vertices, b.n_vertices

    def index(i: int, j: int) -> int:
        return i * nb + j

    candidates: List[List[int]] = []
    for f in a.facets:
        if len(f) < 2:
            continue
        for seconds in itertools.product(range(nb), repeat=len(f)):
            candidates.append([index(i, j) for i, j in zip(f, seconds)])
    for g in b.facets:
        if len(g) < 2:
            continue
        for firsts in itertools.product(range(na), repeat=len(g)):
            candidates.append([index(i, j) for i, j in zip(firsts, g)])

    labels = [f"{a.label(i)}⊗{b.label(j)}" for i in range(na) for j in range(nb)]
    product = SimplicialComplex.from_facets(na * nb, candidates, labels)
    logger.debug("or_product %dx%d: %d facets", na, nb, len(product.facets))
    return product


def induced_subcomplex(complex_: SimplicialComplex, vertices: Iterable[int]) -> SimplicialComplex:
    """Restrict to `vertices`, reindexed 0..|S|-1 in increasing original order."""
    order = sorted(_check_vertices(complex_, vertices))
    position = {v: k for k, v in enumerate(order)}
    facets = []
    for f in complex_.facets:
        part = [position[v] for v in f if v in position]
        if part:
            facets.append(part)
    labels = [complex_.labels[v] for v in order] if complex_.labels is not None else None
    return SimplicialComplex.from_facets(len(order), facets, labels)


def relabel(complex_: SimplicialComplex, mapping: Sequence[int]) -> SimplicialComplex:
    """Apply a vertex bijection old -> mapping[old]."""
    n = complex_.n_vertices
    if sorted(mapping) != list(range(n)):
        raise ComplexError(f"mapping is not a permutation of 0..{n - 1}")
    labels = None
    if complex_.labels is not None:
        new_labels = [""] * n
        for old, new in enumerate(mapping):
            new_labels[new] = complex_.labels[old]
        labels = new_labels
    return SimplicialComplex.from_facets(n, [[mapping[v] for v in f] for f in complex_.facets], labels)


def product_assignment(p1: Assignment, p2: Assignment) -> Assignment:
    """Joint probabilities of independent experiments: P(i⊗j) = P1(i)·P2(j)."""
    return Assignment(values=tuple(x * y for x in p1.values for y in p2.values))


# -----------------------------
# Searches
# -----------------------------
def _k_cliques(complex_: SimplicialComplex, k: int) -> List[VertexSet]:
    found: Set[VertexSet] = set()
    for clique in maximal_cliques(complex_):
        if len(clique) >= k:
            found.update(itertools.combinations(clique, k))
    return sorted(found)


def find_disjoint_cliques(complex_: SimplicialComplex, k: int, count: int) -> Optional[List[VertexSet]]:
    """
    Backtracking search for `count` pairwise-disjoint k-cliques of the skeleton.
    When count*k equals the number of vertices the answer is a partition.
    Returns None when the search is exhausted without a solution.
    """
    if k < 1 or count < 1:
        raise PreconditionError(f"k and count must be >= 1, got k={k}, count={count}")
    n = complex_.n_vertices
    if k * count > n:
        return None

    cliques = _k_cliques(complex_, k)
    logger.debug("%d candidate %d-cliques", len(cliques), k)

    if k * count == n:
        containing: Dict[int, List[VertexSet]] = {v: [] for v in range(n)}
        for c in cliques:
            for v in c:
                containing[v].append(c)

        def cover(used: Set[int], chosen: List[VertexSet]) -> Optional[List[VertexSet]]:
            if len(chosen) == count:
                return list(chosen)
            u = min(v for v in range(n) if v not in used)
            for c in containing[u]:
                if used.isdisjoint(c):
                    result = cover(used | set(c), chosen + [c])
                    if result is not None:
                        return result
            return None

        return cover(set(), [])

    def pick(start: int, used: Set[int], chosen: List[VertexSet]) -> Optional[List[VertexSet]]:
        if len(chosen) == count:
            return list(chosen)
        if (n - len(used)) // k < count - len(chosen):
            return None
        for idx in range(start, len(cliques)):
            c = cliques[idx]
            if used.isdisjoint(c):
                result = pick(idx + 1, used | set(c), chosen + [c])
                if result is not None:
                    return result
        return None

    return pick(0, set(), [])


def find_induced_cycle(complex_: SimplicialComplex, length: int) -> Optional[VertexSet]:
    """
    Vertices v0..v(L-1) whose induced skeleton is exactly the cycle
    v0~v1~...~v(L-1)~v0, with v0 the smallest. Depth-first from the lowest vertex.
    """
    if length < 3:
        raise PreconditionError(f"a cycle needs at least 3 vertices, got {length}")
    g = skeleton(complex_)

    def extend(path: List[int]) -> Optional[VertexSet]:
        if len(path) == length:
            return tuple(path) if g.has_edge(path[-1], path[0]) else None
        closing = len(path) + 1 == length
        for w in sorted(g[path[-1]]):
            if w <= path[0] or w in path:
                continue
            if any(g.has_edge(w, u) for u in path[1:-1]):
                continue
            if len(path) > 1 and g.has_edge(w, path[0]) and not closing:
                continue
            result = extend(path + [w])
            if result is not None:
                return result
        return None

    for start in range(complex_.n_vertices):
        result = extend([start])
        if result is not None:
            return result
    return None
