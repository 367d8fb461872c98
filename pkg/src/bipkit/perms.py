"""Permutations in one-line notation: composition, containment, convexity,
permutation graphs, and the named generator families used by the antichain
constructions.

A permutation is a bijection of ``{1..n}``; the one-line form is the sequence
``(p(1), ..., p(n))``.  Text form is comma-separated values in parentheses,
e.g. ``(4,2,6,1,5,3)``; the parser tolerates whitespace.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import Graph


@dataclass(frozen=True)
class Permutation:
    oneline: tuple[int, ...]

    def __post_init__(self):
        n = len(self.oneline)
        if sorted(self.oneline) != list(range(1, n + 1)):
            raise ValueError(f"not a permutation of 1..{n}: {self.oneline}")

    @property
    def size(self) -> int:
        return len(self.oneline)

    def __call__(self, i: int) -> int:
        return self.oneline[i - 1]

    def position(self, value: int) -> int:
        """1-based position of ``value`` in the one-line sequence."""
        return self.oneline.index(value) + 1

    def __repr__(self):
        return f"Permutation{self.oneline}"


def identity(n: int) -> Permutation:
    return Permutation(tuple(range(1, n + 1)))


def compose(outer: Permutation, inner: Permutation) -> Permutation:
    """Permutation mapping i to outer(inner(i))."""
    if outer.size != inner.size:
        raise ValueError("size mismatch in composition")
    return Permutation(tuple(outer.oneline[inner.oneline[i] - 1] for i in range(inner.size)))


def inverse(p: Permutation) -> Permutation:
    inv = [0] * p.size
    for i, v in enumerate(p.oneline):
        inv[v - 1] = i + 1
    return Permutation(tuple(inv))


def contains_pattern(host: Permutation, pattern: Permutation) -> bool:
    """True iff some subsequence of ``host`` is order-isomorphic to ``pattern``.

    Exact DFS over host positions: each placed element must sit strictly
    between the already placed values that flank the pattern value, and the
    remaining host suffix must still be long enough.
    """
    k = pattern.size
    n = host.size
    if k == 0:
        return True
    if k > n:
        return False
    hv = host.oneline
    pv = pattern.oneline
    chosen = [0] * k

    def bounds(t: int) -> tuple[int, int]:
        lo, hi = 0, n + 1
        for s in range(t):
            if pv[s] < pv[t]:
                lo = max(lo, chosen[s])
            else:
                hi = min(hi, chosen[s])
        return lo, hi

    def place(t: int, start: int) -> bool:
        if t == k:
            return True
        lo, hi = bounds(t)
        for pos in range(start, n - (k - t) + 1):
            val = hv[pos]
            if lo < val < hi:
                chosen[t] = val
                if place(t + 1, pos + 1):
                    return True
        return False

    return place(0, 0)


def is_convex(p: Permutation) -> bool:
    """For every i, the positions holding values >= i must be consecutive.

    Equivalent check: scanning thresholds downward, each new value's position
    must extend the current position interval by exactly one on either end.
    """
    n = p.size
    pos_of = [0] * (n + 1)
    for i, v in enumerate(p.oneline):
        pos_of[v] = i + 1
    lo = hi = pos_of[n]
    for value in range(n - 1, 0, -1):
        q = pos_of[value]
        if q == lo - 1:
            lo = q
        elif q == hi + 1:
            hi = q
        else:
            return False
    return True


@dataclass(frozen=True)
class BiconvexWitness:
    """A pair of convex permutations certifying mu o rho^-1 = the witnessed one."""

    mu: Permutation
    rho: Permutation


def verify_biconvex_witness(p: Permutation, w: BiconvexWitness) -> bool:
    if w.mu.size != p.size or w.rho.size != p.size:
        raise ValueError("witness size mismatch")
    if not (is_convex(w.mu) and is_convex(w.rho)):
        return False
    return compose(w.mu, inverse(w.rho)) == p


def permutation_graph(p: Permutation) -> Graph:
    """Inversion graph on values 1..n: i < j adjacent iff i appears after j."""
    n = p.size
    pos = inverse(p).oneline  # pos[v-1] = position of value v
    edges = [
        (i, j)
        for i in range(1, n + 1)
        for j in range(i + 1, n + 1)
        if pos[i - 1] > pos[j - 1]
    ]
    return Graph.from_edges(n, edges)


def star_perm_T(n: int) -> Permutation:
    """Self-inverse family feeding the four-zone antichain graphs (even n >= 6).

    Shape: prefix (4, 2), pairs (2j, 2j-5) for j = 3 .. n/2, tail (n-1, n-3).
    """
    if n < 6 or n % 2:
        raise ValueError("defined for even n >= 6")
    seq = [4, 2]
    for j in range(3, n // 2 + 1):
        seq += [2 * j, 2 * j - 5]
    seq += [n - 1, n - 3]
    return Permutation(tuple(seq))


def star_perm_S(n: int) -> Permutation:
    """Biconvex family feeding the three-zone antichain graphs (even n >= 8).

    Shape: prefix (2, 3, 5, 1), pairs (2j+3, 2j) for j = 2 .. n/2 - 3, tail
    (n, n-4, n-1, n-2).  The pair range ends at n/2 - 3: this is the unique
    range that reproduces the fixed instances for n = 8, 10 and 12, below.
    """
    if n < 8 or n % 2:
        raise ValueError("defined for even n >= 8")
    seq = [2, 3, 5, 1]
    for j in range(2, n // 2 - 2):
        seq += [2 * j + 3, 2 * j]
    seq += [n, n - 4, n - 1, n - 2]
    return Permutation(tuple(seq))


def rho_star(n: int) -> Permutation:
    """Convex factor: 1, 2, odd values ascending to n-1, n, even values descending to 4."""
    if n < 8 or n % 2:
        raise ValueError("defined for even n >= 8")
    seq = [1, 2]
    seq += list(range(3, n, 2))
    seq += [n]
    seq += list(range(n - 2, 3, -2))
    return Permutation(tuple(seq))


def mu_star(n: int) -> Permutation:
    """Convex factor: 2, odds ascending to n-3, n, n-1, n-2, evens descending to 4, 1."""
    if n < 8 or n % 2:
        raise ValueError("defined for even n >= 8")
    seq = [2]
    seq += list(range(3, n - 2, 2))
    seq += [n, n - 1, n - 2]
    seq += list(range(n - 4, 3, -2))
    seq += [1]
    return Permutation(tuple(seq))


def star_s_witness(n: int) -> BiconvexWitness:
    """The standard convex factor pair for star_perm_S(n)."""
    return BiconvexWitness(mu=mu_star(n), rho=rho_star(n))


def parse_permutation(text: str) -> Permutation:
    s = text.strip()
    if not (s.startswith("(") and s.endswith(")")):
        raise ValueError("permutation text must be parenthesised, e.g. (2,1,3)")
    body = s[1:-1].strip()
    if not body:
        raise ValueError("empty permutation")
    try:
        values = tuple(int(tok.strip()) for tok in body.split(","))
    except ValueError:
        raise ValueError(f"non-integer entry in permutation: {text!r}") from None
    return Permutation(values)


def format_permutation(p: Permutation) -> str:
    return "(" + ",".join(str(v) for v in p.oneline) + ")"
