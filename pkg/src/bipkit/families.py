"""Concrete graph families: layered antichain constructions, the universal
grid, and the small named graphs the verification suites quote.

Canonical numbering: zone blocks in order A, B, C(, D) with ascending index
inside a zone; grids are numbered row-major.  Vertices carry provenance
labels such as ``a3`` or ``r2c1`` so embedding certificates stay readable.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import Bipartition, Graph
from .perms import BiconvexWitness, Permutation, star_perm_S, star_perm_T, star_s_witness, verify_biconvex_witness


@dataclass(frozen=True)
class TGraphLayout:
    """Four-zone layered graph built from a permutation.

    Zones A, B, C, D each hold n vertices.  A-B is the perfect matching
    ``a_i ~ b_{p(i)}``; C-D is a biclique; ``a_i`` sees ``d_1..d_i`` and
    ``b_i`` sees ``c_1..c_i`` (staircase neighbourhoods, so A-D and B-C are
    chain graphs).  Parts: A+C against B+D.
    """

    graph: Graph
    bipartition: Bipartition
    zones: dict[int, tuple[str, int]]

    def zone_vertices(self, zone: str) -> tuple[int, ...]:
        return tuple(sorted(v for v, (z, _) in self.zones.items() if z == zone))


@dataclass(frozen=True)
class SGraphLayout:
    """Three-zone layered graph built from a convex factor pair.

    Zones A, B, C each hold n vertices; ``b_i`` sees ``a_1..a_rho(i)`` and
    ``c_1..c_mu(i)``.  Parts: A+C against B.
    """

    graph: Graph
    bipartition: Bipartition
    zones: dict[int, tuple[str, int]]

    def zone_vertices(self, zone: str) -> tuple[int, ...]:
        return tuple(sorted(v for v, (z, _) in self.zones.items() if z == zone))


def t_graph(p: Permutation) -> TGraphLayout:
    n = p.size
    a = lambda i: i
    b = lambda i: n + i
    c = lambda i: 2 * n + i
    d = lambda i: 3 * n + i
    edges = []
    for i in range(1, n + 1):
        edges.append((a(i), b(p(i))))
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            edges.append((c(i), d(j)))
    for i in range(1, n + 1):
        for j in range(1, i + 1):
            edges.append((a(i), d(j)))
            edges.append((b(i), c(j)))
    labels = (
        [f"a{i}" for i in range(1, n + 1)]
        + [f"b{i}" for i in range(1, n + 1)]
        + [f"c{i}" for i in range(1, n + 1)]
        + [f"d{i}" for i in range(1, n + 1)]
    )
    g = Graph.from_edges(4 * n, [(min(u, v), max(u, v)) for u, v in edges], labels)
    bip = Bipartition.of(
        set(range(1, n + 1)) | set(range(2 * n + 1, 3 * n + 1)),
        set(range(n + 1, 2 * n + 1)) | set(range(3 * n + 1, 4 * n + 1)),
    )
    zones = {}
    for i in range(1, n + 1):
        zones[a(i)] = ("A", i)
        zones[b(i)] = ("B", i)
        zones[c(i)] = ("C", i)
        zones[d(i)] = ("D", i)
    return TGraphLayout(g, bip, zones)


def s_graph(p: Permutation, w: BiconvexWitness) -> SGraphLayout:
    if not verify_biconvex_witness(p, w):
        raise ValueError("witness fails verification for the given permutation")
    n = p.size
    rho, mu = w.rho, w.mu
    a = lambda i: i
    b = lambda i: n + i
    c = lambda i: 2 * n + i
    edges = []
    for i in range(1, n + 1):
        for j in range(1, rho(i) + 1):
            edges.append((a(j), b(i)))
        for j in range(1, mu(i) + 1):
            edges.append((b(i), c(j)))
    labels = (
        [f"a{i}" for i in range(1, n + 1)]
        + [f"b{i}" for i in range(1, n + 1)]
        + [f"c{i}" for i in range(1, n + 1)]
    )
    g = Graph.from_edges(3 * n, edges, labels)
    bip = Bipartition.of(
        set(range(1, n + 1)) | set(range(2 * n + 1, 3 * n + 1)),
        set(range(n + 1, 2 * n + 1)),
    )
    zones = {}
    for i in range(1, n + 1):
        zones[a(i)] = ("A", i)
        zones[b(i)] = ("B", i)
        zones[c(i)] = ("C", i)
    return SGraphLayout(g, bip, zones)


def t_graph_star(n: int) -> TGraphLayout:
    """t_graph over the self-inverse generator family."""
    return t_graph(star_perm_T(n))


def s_graph_star(n: int) -> SGraphLayout:
    """s_graph over the biconvex generator family with its standard witness."""
    return s_graph(star_perm_S(n), star_s_witness(n))


def universal_grid(k: int, m: int) -> tuple[Graph, Bipartition]:
    """Grid on k rows of m vertices: (i, j) sees (i+1, 1..j); parts = odd/even rows.

    Vertex ids are row-major: (i, j) -> (i-1)*m + j; labels are ``r{i}c{j}``.
    """
    if k < 1 or m < 1:
        raise ValueError("grid dimensions must be positive")
    vid = lambda i, j: (i - 1) * m + j
    edges = []
    for i in range(1, k):
        for j in range(1, m + 1):
            for jj in range(1, j + 1):
                edges.append((vid(i, j), vid(i + 1, jj)))
    labels = [f"r{i}c{j}" for i in range(1, k + 1) for j in range(1, m + 1)]
    g = Graph.from_edges(k * m, [(min(u, v), max(u, v)) for u, v in edges], labels)
    odd = {vid(i, j) for i in range(1, k + 1, 2) for j in range(1, m + 1)}
    even = set(g.vertices()) - odd
    return g, Bipartition.of(odd, even)


def path(n: int) -> Graph:
    if n < 1:
        raise ValueError("path needs at least one vertex")
    return Graph.from_edges(n, [(i, i + 1) for i in range(1, n)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs at least three vertices")
    return Graph.from_edges(n, [(i, i + 1) for i in range(1, n)] + [(1, n)])


def complete(n: int) -> Graph:
    if n < 1:
        raise ValueError("complete graph needs at least one vertex")
    return Graph.from_edges(n, [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    if a < 1 or b < 1:
        raise ValueError("both sides need at least one vertex")
    return Graph.from_edges(a + b, [(i, a + j) for i in range(1, a + 1) for j in range(1, b + 1)])


def two_p3() -> Graph:
    """Two disjoint 3-vertex paths."""
    return Graph.from_edges(6, [(1, 2), (2, 3), (4, 5), (5, 6)])


def sun4() -> Graph:
    """4-cycle with one pendant vertex on each cycle vertex."""
    return Graph.from_edges(
        8, [(1, 2), (2, 3), (3, 4), (1, 4), (1, 5), (2, 6), (3, 7), (4, 8)]
    )


def sun1() -> Graph:
    """4-cycle with a single pendant vertex."""
    return Graph.from_edges(5, [(1, 2), (2, 3), (3, 4), (1, 4), (1, 5)])


def s123() -> Graph:
    """Tree with three leaves at distances 1, 2 and 3 from its degree-3 centre."""
    return Graph.from_edges(7, [(1, 2), (1, 3), (3, 4), (1, 5), (5, 6), (6, 7)])


def h_antichain(i: int) -> Graph:
    """Spine of i+1 vertices with two pendant vertices on each end (i+5 total)."""
    if i < 1:
        raise ValueError("index must be at least 1")
    n = i + 5
    spine = [(v, v + 1) for v in range(1, i + 1)]
    pend = [(1, i + 2), (1, i + 3), (i + 1, i + 4), (i + 1, i + 5)]
    return Graph.from_edges(n, spine + pend)


def p_tilde(k: int) -> Graph:
    """Cross-complement of the k-vertex path over its odd/even split."""
    from .graphs import bipartite_complement

    g = path(k)
    odd = {v for v in g.vertices() if v % 2 == 1}
    even = set(g.vertices()) - odd
    return bipartite_complement(g, Bipartition.of(odd, even))
