"""Structural recognisers and constructors: nested-neighbourhood tests,
biconvex orders, incomparability graphs, the three bipartite composition
operations with an exact decomposition engine, and letter representations.

The decomposition engine searches for a build tree over single-vertex leaves
using disjoint union, join, and skew join.  Union and join splits are forced
(components, respectively complement components, of a buildable graph are
themselves buildable, and any no-cross or all-cross split has buildable
sides); only the skew split needs exact subset search, which is memoised and
capped by a vertex guard.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .graphs import (
    Bipartition,
    Graph,
    bipartite_complement,
    mask_of,
    mask_vertices,
    validate_bipartition,
)


class GuardExceeded(RuntimeError):
    """Search guard tripped: the outcome is undecided, not a refusal."""


# ---------------------------------------------------------------------------
# neighbourhood structure


def neighborhoods_nested(g: Graph, part: set[int] | frozenset[int]) -> tuple[bool, tuple[int, ...] | None]:
    """Check the neighbourhoods of an independent set form a chain under inclusion.

    Returns (True, vertices sorted along the chain) or (False, None).  The
    part must be independent; chain order is by (degree, id), so equal
    neighbourhoods keep ascending ids.
    """
    vs = sorted(part)
    pmask = mask_of(vs)
    for v in vs:
        if g.adj[v - 1] & pmask:
            raise ValueError("part is not an independent set")
    chain = sorted(vs, key=lambda v: (g.adj[v - 1].bit_count(), v))
    for prev, nxt in zip(chain, chain[1:]):
        a, b = g.adj[prev - 1], g.adj[nxt - 1]
        if a & ~b:
            return False, None
    return True, tuple(chain)


def incomparability_graph(g: Graph, part: set[int] | frozenset[int]) -> Graph:
    """Graph on the part (relabelled 1..k in id order): edges join vertices
    whose neighbourhoods are incomparable under inclusion."""
    vs = sorted(part)
    pmask = mask_of(vs)
    for v in vs:
        if g.adj[v - 1] & pmask:
            raise ValueError("part is not an independent set")
    k = len(vs)
    edges = []
    for i in range(k):
        for j in range(i + 1, k):
            a, b = g.adj[vs[i] - 1], g.adj[vs[j] - 1]
            if (a & ~b) and (b & ~a):
                edges.append((i + 1, j + 1))
    labels = None
    if g.labels is not None:
        labels = tuple(g.labels[v - 1] for v in vs)
    return Graph.from_edges(k, edges, labels)


# ---------------------------------------------------------------------------
# biconvex orders


def _intervals_in_order(g: Graph, vertices: tuple[int, ...], order: tuple[int, ...]) -> bool:
    rank = {v: i for i, v in enumerate(order)}
    for v in vertices:
        ranks = [rank[u] for u in mask_vertices(g.adj[v - 1])]
        if ranks and max(ranks) - min(ranks) + 1 != len(ranks):
            return False
    return True


def verify_biconvex_order(
    g: Graph,
    b: Bipartition,
    order_a: tuple[int, ...],
    order_b: tuple[int, ...],
) -> bool:
    """True iff every neighbourhood is consecutive in the opposite part's order."""
    validate_bipartition(g, b)
    if sorted(order_a) != sorted(b.part_a) or sorted(order_b) != sorted(b.part_b):
        raise ValueError("orders must be permutations of the parts")
    return _intervals_in_order(g, tuple(b.part_b), tuple(order_a)) and _intervals_in_order(
        g, tuple(b.part_a), tuple(order_b)
    )


def find_biconvex_order(
    g: Graph, b: Bipartition, *, guard: int = 8
) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Exhaustive first-hit search for a biconvex order pair, or None.

    The two part orders are independent (a part's order only has to make the
    opposite part's neighbourhoods into intervals), so each side is searched
    separately over at most guard! candidates.
    """
    validate_bipartition(g, b)
    side_a, side_b = b.sorted_a(), b.sorted_b()
    if len(side_a) > guard or len(side_b) > guard:
        raise ValueError(f"parts exceed the search guard of {guard}")

    def first_order(side: tuple[int, ...], opposite: tuple[int, ...]):
        for candidate in itertools.permutations(side):
            if _intervals_in_order(g, opposite, candidate):
                return candidate
        return None

    order_a = first_order(side_a, side_b)
    if order_a is None:
        return None
    order_b = first_order(side_b, side_a)
    if order_b is None:
        return None
    return order_a, order_b


# ---------------------------------------------------------------------------
# composition operations


def _relabel_shift(b: Bipartition, shift: int) -> Bipartition:
    return Bipartition(
        frozenset(v + shift for v in b.part_a),
        frozenset(v + shift for v in b.part_b),
    )


def _merged_labels(g1: Graph, g2: Graph):
    if g1.labels is None and g2.labels is None:
        return None
    l1 = g1.labels if g1.labels is not None else (None,) * g1.n
    l2 = g2.labels if g2.labels is not None else (None,) * g2.n
    return l1 + l2


def disjoint_union(
    g1: Graph, b1: Bipartition, g2: Graph, b2: Bipartition
) -> tuple[Graph, Bipartition]:
    """Side-by-side union; the second operand is relabelled up by g1.n."""
    validate_bipartition(g1, b1)
    validate_bipartition(g2, b2)
    edges = g1.edges() + [(u + g1.n, v + g1.n) for u, v in g2.edges()]
    g = Graph.from_edges(g1.n + g2.n, edges, _merged_labels(g1, g2))
    shifted = _relabel_shift(b2, g1.n)
    return g, Bipartition(b1.part_a | shifted.part_a, b1.part_b | shifted.part_b)


def join(g1: Graph, b1: Bipartition, g2: Graph, b2: Bipartition) -> tuple[Graph, Bipartition]:
    """Cross-complement of the disjoint union of the cross-complements.

    Implemented literally through the complement so the operation stays
    definitionally faithful; the direct edge formula (union plus all A1-B2
    and A2-B1 pairs) is pinned by tests.
    """
    c1 = bipartite_complement(g1, b1)
    c2 = bipartite_complement(g2, b2)
    u, ub = disjoint_union(c1, b1, c2, b2)
    return bipartite_complement(u, ub), ub


def skew_join(g1: Graph, b1: Bipartition, g2: Graph, b2: Bipartition) -> tuple[Graph, Bipartition]:
    """Union plus every edge from the first operand's A-part to the second's B-part."""
    g, b = disjoint_union(g1, b1, g2, b2)
    extra = [
        (min(x, y + g1.n), max(x, y + g1.n))
        for x in b1.part_a
        for y in b2.part_b
    ]
    return Graph.from_edges(g.n, g.edges() + extra, g.labels), b


# ---------------------------------------------------------------------------
# decomposition trees


@dataclass(frozen=True)
class DecompositionTree:
    """Build tree over single-vertex leaves; each node carries the oriented
    (X, Y) parts of the subgraph it recomposes."""

    kind: str  # "leaf" | "union" | "join" | "skew"
    part_x: tuple[int, ...]
    part_y: tuple[int, ...]
    left: "DecompositionTree | None" = None
    right: "DecompositionTree | None" = None

    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted(self.part_x + self.part_y))


def _tree_edges(t: DecompositionTree, acc: set[tuple[int, int]]) -> None:
    if t.kind == "leaf":
        return
    left, right = t.left, t.right
    if left is None or right is None:
        raise ValueError("malformed tree: binary node without two children")
    _tree_edges(left, acc)
    _tree_edges(right, acc)
    if t.kind == "union":
        pairs = []
    elif t.kind == "join":
        pairs = [(left.part_x, right.part_y), (right.part_x, left.part_y)]
    elif t.kind == "skew":
        pairs = [(left.part_x, right.part_y)]
    else:
        raise ValueError(f"malformed tree: unknown node kind {t.kind!r}")
    for xs, ys in pairs:
        for x in xs:
            for y in ys:
                acc.add((min(x, y), max(x, y)))


def _check_tree(t: DecompositionTree) -> None:
    if set(t.part_x) & set(t.part_y):
        raise ValueError("malformed tree: parts overlap")
    if t.kind == "leaf":
        if len(t.part_x) + len(t.part_y) != 1:
            raise ValueError("malformed tree: leaf must hold exactly one vertex")
        return
    if t.left is None or t.right is None:
        raise ValueError("malformed tree: binary node without two children")
    for child in (t.left, t.right):
        _check_tree(child)
    lx, ly = set(t.left.part_x), set(t.left.part_y)
    rx, ry = set(t.right.part_x), set(t.right.part_y)
    if lx | rx != set(t.part_x) or ly | ry != set(t.part_y):
        raise ValueError("malformed tree: node parts do not match its operands")
    if (lx | ly) & (rx | ry):
        raise ValueError("malformed tree: operands overlap")


def recompose(t: DecompositionTree) -> Graph:
    """Replay a build tree into the graph it certifies (same ids, same edges)."""
    _check_tree(t)
    vs = t.vertices()
    if vs != tuple(range(1, len(vs) + 1)):
        raise ValueError("malformed tree: root must cover ids 1..n")
    acc: set[tuple[int, int]] = set()
    _tree_edges(t, acc)
    return Graph.from_edges(len(vs), sorted(acc))


def decompose(g: Graph, b: Bipartition, *, guard: int = 16) -> DecompositionTree | None:
    """Find a build tree for ``g`` under ``b``, trying both part orientations
    at the root, or None when no tree exists.  Raises GuardExceeded above the
    vertex guard.
    """
    validate_bipartition(g, b)
    if g.n > guard:
        raise GuardExceeded(f"decomposition search is capped at {guard} vertices")
    if g.n == 0:
        return None
    for orient in (b, b.flipped()):
        tree = _decompose_oriented(g, mask_of(orient.part_a), mask_of(orient.part_b))
        if tree is not None:
            return tree
    return None


def _decompose_oriented(g: Graph, x_mask: int, y_mask: int) -> DecompositionTree | None:
    adj = g.adj
    memo: dict[int, DecompositionTree | None] = {}

    def parts_of(mask: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return tuple(mask_vertices(mask & x_mask)), tuple(mask_vertices(mask & y_mask))

    def components(mask: int) -> list[int]:
        comps = []
        todo = mask
        while todo:
            seed = todo & -todo
            comp = seed
            frontier = seed
            while frontier:
                nxt = 0
                for v in mask_vertices(frontier):
                    nxt |= adj[v - 1] & mask
                frontier = nxt & ~comp
                comp |= nxt
            comps.append(comp)
            todo &= ~comp
        return comps

    def complement_components(mask: int) -> list[int]:
        # components when cross adjacency is flipped inside the fixed frame
        mx, my = mask & x_mask, mask & y_mask
        comps = []
        todo = mask
        while todo:
            seed = todo & -todo
            comp = seed
            frontier = seed
            while frontier:
                nxt = 0
                for v in mask_vertices(frontier):
                    opposite = my if (x_mask >> (v - 1)) & 1 else mx
                    nxt |= opposite & ~adj[v - 1]
                frontier = nxt & ~comp
                comp |= nxt
            comps.append(comp)
            todo &= ~comp
        return comps

    def skew_ok(m1: int, m2: int) -> bool:
        # all X1-Y2 pairs present, all X2-Y1 pairs absent
        y2 = m2 & y_mask
        for v in mask_vertices(m1 & x_mask):
            if y2 & ~adj[v - 1]:
                return False
        y1 = m1 & y_mask
        for v in mask_vertices(m2 & x_mask):
            if adj[v - 1] & y1:
                return False
        return True

    def rec(mask: int) -> DecompositionTree | None:
        if mask in memo:
            return memo[mask]
        px, py = parts_of(mask)
        if mask.bit_count() == 1:
            tree = DecompositionTree("leaf", px, py)
            memo[mask] = tree
            return tree
        result: DecompositionTree | None = None
        comps = components(mask)
        if len(comps) > 1:
            first, rest = comps[0], mask & ~comps[0]
            lt, rt = rec(first), rec(rest)
            if lt is not None and rt is not None:
                result = DecompositionTree("union", px, py, lt, rt)
            memo[mask] = result
            return result
        cocomps = complement_components(mask)
        if len(cocomps) > 1:
            first, rest = cocomps[0], mask & ~cocomps[0]
            lt, rt = rec(first), rec(rest)
            if lt is not None and rt is not None:
                result = DecompositionTree("join", px, py, lt, rt)
            memo[mask] = result
            return result
        # connected and co-connected: only a skew split can work
        low = mask & -mask
        rest = mask & ~low
        sub = rest
        while True:
            m1 = sub | low
            m2 = mask & ~m1
            if m2:
                for first, second in ((m1, m2), (m2, m1)):
                    if skew_ok(first, second):
                        lt = rec(first)
                        if lt is None:
                            continue
                        rt = rec(second)
                        if rt is None:
                            continue
                        result = DecompositionTree("skew", px, py, lt, rt)
                        memo[mask] = result
                        return result
            if sub == 0:
                break
            sub = (sub - 1) & rest
        memo[mask] = None
        return None

    full = x_mask | y_mask
    return rec(full)


# ---------------------------------------------------------------------------
# tree text form


def format_tree(t: DecompositionTree) -> str:
    """S-expression with per-node part lists, e.g. ``(skew [1|2] (leaf 1 X) (leaf 2 Y))``."""

    def part_text(node: DecompositionTree) -> str:
        xs = " ".join(str(v) for v in node.part_x)
        ys = " ".join(str(v) for v in node.part_y)
        return f"[{xs}|{ys}]"

    if t.kind == "leaf":
        v = (t.part_x + t.part_y)[0]
        side = "X" if t.part_x else "Y"
        return f"(leaf {v} {side})"
    assert t.left is not None and t.right is not None
    return (
        f"({t.kind} {part_text(t.left)} {part_text(t.right)} "
        f"{format_tree(t.left)} {format_tree(t.right)})"
    )


def parse_tree(text: str) -> DecompositionTree:
    tokens = (
        text.replace("(", " ( ").replace(")", " ) ").replace("[", " [ ").replace("]", " ] ").replace("|", " | ").split()
    )
    pos = 0

    def expect(tok: str) -> None:
        nonlocal pos
        if pos >= len(tokens) or tokens[pos] != tok:
            raise ValueError(f"malformed tree text near token {pos}")
        pos += 1

    def read_part_list() -> tuple[tuple[int, ...], tuple[int, ...]]:
        nonlocal pos
        expect("[")
        xs = []
        while tokens[pos] not in ("|",):
            xs.append(int(tokens[pos]))
            pos += 1
        expect("|")
        ys = []
        while tokens[pos] != "]":
            ys.append(int(tokens[pos]))
            pos += 1
        expect("]")
        return tuple(xs), tuple(ys)

    def read_node() -> DecompositionTree:
        nonlocal pos
        expect("(")
        kind = tokens[pos]
        pos += 1
        if kind == "leaf":
            v = int(tokens[pos])
            pos += 1
            side = tokens[pos]
            pos += 1
            expect(")")
            if side == "X":
                return DecompositionTree("leaf", (v,), ())
            if side == "Y":
                return DecompositionTree("leaf", (), (v,))
            raise ValueError(f"leaf side must be X or Y, got {side!r}")
        if kind not in ("union", "join", "skew"):
            raise ValueError(f"unknown node kind {kind!r}")
        lparts = read_part_list()
        rparts = read_part_list()
        left = read_node()
        right = read_node()
        expect(")")
        if (left.part_x, left.part_y) != lparts or (right.part_x, right.part_y) != rparts:
            raise ValueError("operand part lists do not match the child nodes")
        px = tuple(sorted(left.part_x + right.part_x))
        py = tuple(sorted(left.part_y + right.part_y))
        return DecompositionTree(kind, px, py, left, right)

    node = read_node()
    if pos != len(tokens):
        raise ValueError("trailing tokens after tree")
    _check_tree(node)
    return node


# ---------------------------------------------------------------------------
# letter representations


_DECODER_SYMBOLS = ("F", "B", "C", "E")
_MIRROR = {"F": "B", "B": "F", "C": "C", "E": "E"}


@dataclass(frozen=True)
class LetterRepresentation:
    """Vertex partition, linear order, and per-pair decoder certifying how
    every cross edge set arises from the order (forward/backward/complete/empty)."""

    parts: tuple[tuple[int, ...], ...]
    part_kinds: tuple[str, ...]  # "independent" | "clique" per part
    order: tuple[int, ...]
    decoder: tuple[tuple[str, ...], ...]  # diagonal entries are "."


def _validate_letter(rep: LetterRepresentation) -> int:
    seen: set[int] = set()
    for part in rep.parts:
        for v in part:
            if v in seen:
                raise ValueError(f"vertex {v} appears in two parts")
            seen.add(v)
    n = len(seen)
    if sorted(seen) != list(range(1, n + 1)):
        raise ValueError("parts must cover ids 1..n")
    if sorted(rep.order) != list(range(1, n + 1)):
        raise ValueError("order must be a permutation of the vertices")
    p = len(rep.parts)
    if len(rep.part_kinds) != p or any(k not in ("independent", "clique") for k in rep.part_kinds):
        raise ValueError("part kinds must be 'independent' or 'clique' per part")
    if len(rep.decoder) != p or any(len(row) != p for row in rep.decoder):
        raise ValueError("decoder must be a p x p table")
    for i in range(p):
        if rep.decoder[i][i] != ".":
            raise ValueError("decoder diagonal must be '.'")
        for j in range(p):
            if i == j:
                continue
            sym = rep.decoder[i][j]
            if sym not in _DECODER_SYMBOLS:
                raise ValueError(f"unknown decoder symbol {sym!r}")
            if _MIRROR[sym] != rep.decoder[j][i]:
                raise ValueError("decoder table is not mirror-consistent")
    return n


def decode_letter(rep: LetterRepresentation) -> Graph:
    """Rebuild the graph prescribed by (parts, order, decoder)."""
    n = _validate_letter(rep)
    rank = {v: i for i, v in enumerate(rep.order)}
    edges: list[tuple[int, int]] = []
    for pi, part in enumerate(rep.parts):
        if rep.part_kinds[pi] == "clique":
            edges.extend(
                (min(u, v), max(u, v)) for u, v in itertools.combinations(part, 2)
            )
    p = len(rep.parts)
    for i in range(p):
        for j in range(i + 1, p):
            sym = rep.decoder[i][j]
            if sym == "E":
                continue
            for u in rep.parts[i]:
                for v in rep.parts[j]:
                    if sym == "C":
                        keep = True
                    elif sym == "F":
                        keep = rank[u] < rank[v]
                    else:  # "B"
                        keep = rank[v] < rank[u]
                    if keep:
                        edges.append((min(u, v), max(u, v)))
    return Graph.from_edges(n, edges)


def verify_letter(rep: LetterRepresentation, g: Graph) -> bool:
    """Decoder-consistency against ``g``: every cross pair and every part kind
    must match what the representation prescribes."""
    try:
        decoded = decode_letter(rep)
    except ValueError:
        return False
    return decoded == g


def letter_representation_grid(k: int, m: int) -> LetterRepresentation:
    """Representation of the k-by-m universal grid: parts are rows, the order
    walks columns left to right with rows descending inside each column, and
    consecutive rows decode as order comparisons (all other pairs are empty)."""
    if k < 1 or m < 1:
        raise ValueError("grid dimensions must be positive")
    vid = lambda i, j: (i - 1) * m + j
    parts = tuple(tuple(vid(i, j) for j in range(1, m + 1)) for i in range(1, k + 1))
    order = tuple(vid(i, c) for c in range(1, m + 1) for i in range(k, 0, -1))
    decoder = tuple(
        tuple(
            "."
            if i == j
            else ("B" if j == i + 1 else ("F" if j == i - 1 else "E"))
            for j in range(k)
        )
        for i in range(k)
    )
    return LetterRepresentation(parts, ("independent",) * k, order, decoder)


def format_letter(rep: LetterRepresentation) -> str:
    lines = [f"parts {len(rep.parts)}"]
    for idx, (part, kind) in enumerate(zip(rep.parts, rep.part_kinds), start=1):
        tag = "I" if kind == "independent" else "K"
        lines.append(f"part {idx} {tag}: " + " ".join(str(v) for v in part))
    lines.append("order: " + " ".join(str(v) for v in rep.order))
    lines.append("decoder:")
    for row in rep.decoder:
        lines.append(" ".join(row))
    return "\n".join(lines) + "\n"
