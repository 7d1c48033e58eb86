"""Ordered and cyclically ordered flag simplicial complexes and their star posets.

A complex is presented by its maximal simplices; each stored tuple encodes
the total order (type C) or a linear representative of the cyclic order
(type A) on its vertices.  Complexes are immutable after validation and all
per-vertex operations are pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import InconsistentOrder, NotFlag, NotLocalPoset, UnknownLabel
from .poset import Poset, _key


def canonical_rotation(t):
    """Lexicographically least rotation, the canonical form of a cyclic tuple."""
    if not t:
        return t
    rotations = [t[i:] + t[:i] for i in range(len(t))]
    return min(rotations, key=lambda r: tuple(map(_key, r)))


def maximal_cliques(vertices, adjacency):
    """Maximal cliques of a graph, in deterministic order (Bron-Kerbosch)."""
    order = sorted(vertices, key=_key)
    cliques = []

    def expand(clique, candidates, excluded):
        if not candidates and not excluded:
            cliques.append(tuple(clique))
            return
        pivot_pool = candidates | excluded
        pivot = max(pivot_pool, key=lambda v: (len(adjacency[v] & candidates), _key(v)))
        for v in sorted(candidates - adjacency[pivot], key=_key):
            expand(clique + [v], candidates & adjacency[v], excluded & adjacency[v])
            candidates = candidates - {v}
            excluded = excluded | {v}

    expand([], set(order), set())
    return sorted(cliques, key=lambda c: tuple(map(_key, sorted(c, key=_key))))


class OrderedComplex:
    """Finite simplicial complex whose simplices carry vertex orders.

    order_type "C" means each stored tuple is a total order; "A" means it is
    one linear representative of a cyclic order (rotating a stored tuple
    yields an equivalent complex).
    """

    __slots__ = ("order_type", "vertices", "maximal_simplices", "_vertex_set",
                 "_max_sets", "_adjacency", "_simplex_cache")

    def __init__(self, order_type, vertices, maximal_simplices):
        if order_type not in ("A", "C"):
            raise ValueError("order_type must be 'A' or 'C'")
        self.order_type = order_type
        self.vertices = tuple(sorted(set(vertices), key=_key))
        self._vertex_set = set(self.vertices)

        cleaned = []
        seen = set()
        for s in maximal_simplices:
            s = tuple(s)
            if len(set(s)) != len(s):
                raise ValueError(f"repeated vertex in simplex {s}")
            for v in s:
                if v not in self._vertex_set:
                    raise UnknownLabel(f"simplex uses undeclared vertex {v!r}")
            key = frozenset(s)
            if key in seen:
                continue
            seen.add(key)
            cleaned.append(s)
        # keep only inclusion-maximal simplices; bare vertices stay as 0-simplices
        covered = set()
        for v in self.vertices:
            if not any(v in s for s in cleaned):
                cleaned.append((v,))
        kept = []
        for s in sorted(cleaned, key=len, reverse=True):
            if frozenset(s) not in covered:
                kept.append(s)
                for r in range(1, len(s) + 1):
                    covered.update(map(frozenset, combinations(s, r)))
        if self.order_type == "A":
            kept = [canonical_rotation(s) for s in kept]
        self.maximal_simplices = tuple(sorted(kept, key=lambda s: tuple(map(_key, s))))
        self._max_sets = tuple(frozenset(s) for s in self.maximal_simplices)
        adj = {v: set() for v in self.vertices}
        for s in self.maximal_simplices:
            for a, b in combinations(s, 2):
                adj[a].add(b)
                adj[b].add(a)
        self._adjacency = {v: frozenset(nb) for v, nb in adj.items()}
        self._simplex_cache = {}

    def __eq__(self, other):
        return (
            isinstance(other, OrderedComplex)
            and self.order_type == other.order_type
            and self.vertices == other.vertices
            and set(self.maximal_simplices) == set(other.maximal_simplices)
        )

    def __hash__(self):
        return hash((self.order_type, self.vertices, frozenset(self.maximal_simplices)))

    # -- membership -----------------------------------------------------

    def has_simplex(self, vertex_set):
        vs = frozenset(vertex_set)
        if not vs:
            return True
        hit = self._simplex_cache.get(vs)
        if hit is None:
            hit = any(vs <= m for m in self._max_sets)
            self._simplex_cache[vs] = hit
        return hit

    def neighbors(self, x):
        if x not in self._adjacency:
            raise UnknownLabel(f"unknown vertex {x!r}")
        return self._adjacency[x]

    def edges(self):
        return sorted(
            {frozenset((a, b)) for s in self.maximal_simplices for a, b in combinations(s, 2)},
            key=lambda e: tuple(sorted(map(_key, e))),
        )

    def induced_tuple(self, vertex_set):
        """The order the complex induces on a face, from its first carrier simplex."""
        vs = frozenset(vertex_set)
        for s, ms in zip(self.maximal_simplices, self._max_sets):
            if vs <= ms:
                t = tuple(v for v in s if v in vs)
                return canonical_rotation(t) if self.order_type == "A" else t
        raise UnknownLabel(f"{sorted(map(str, vertex_set))} is not a face")

    def dimension(self):
        return max((len(s) - 1 for s in self.maximal_simplices), default=-1)

    def to_json(self):
        return {
            "type": self.order_type,
            "vertices": [str(v) for v in self.vertices],
            "maximal_simplices": [[str(v) for v in s] for s in self.maximal_simplices],
        }

    @classmethod
    def from_json(cls, data):
        return cls(data["type"], data["vertices"], [tuple(s) for s in data["maximal_simplices"]])


# -- validation ---------------------------------------------------------------


def validate(X, require_flag=True):
    """Check face-order consistency and (optionally) flagness.

    Raises InconsistentOrder with the offending face, or NotFlag with a
    minimal empty clique.  Returns the complex itself for chaining.
    """
    sims = X.maximal_simplices
    sets = [frozenset(s) for s in sims]
    for i, j in combinations(range(len(sims)), 2):
        shared = sets[i] & sets[j]
        needed = 2 if X.order_type == "C" else 3
        if len(shared) < needed:
            continue
        a = tuple(v for v in sims[i] if v in shared)
        b = tuple(v for v in sims[j] if v in shared)
        if X.order_type == "A":
            a, b = canonical_rotation(a), canonical_rotation(b)
        if a != b:
            raise InconsistentOrder(shared)

    if require_flag:
        for clique in maximal_cliques(X.vertices, X._adjacency):
            if not X.has_simplex(clique):
                raise NotFlag(_shrink_to_minimal_nonface(X, set(clique)))
    return X


def _shrink_to_minimal_nonface(X, clique):
    changed = True
    while changed:
        changed = False
        for v in sorted(clique, key=_key):
            smaller = clique - {v}
            if len(smaller) >= 2 and not X.has_simplex(smaller):
                clique = smaller
                changed = True
                break
    return frozenset(clique)


# -- star relations ---------------------------------------------------------------


def star_relation(X, x):
    """The oriented relation on St(x), as a dict y -> set of z with y < z at x.

    Type A: y < z iff {x, y, z} is a triangle whose cyclic order reads
    (x, y, z).  Type C: y < z iff {x, y, z} spans a simplex and the edge
    {y, z} is oriented from y to z; pairs involving x itself use the edge
    {x, y} so that St+(x) and St-(x) are visible in the same relation.
    """
    nbrs = sorted(X.neighbors(x), key=_key)
    rel = {}
    if X.order_type == "A":
        for y, z in combinations(nbrs, 2):
            if not X.has_simplex({x, y, z}):
                continue
            cyc = X.induced_tuple({x, y, z})
            i = cyc.index(x)
            ordered = cyc[i:] + cyc[:i]
            lo, hi = ordered[1], ordered[2]
            rel.setdefault(lo, set()).add(hi)
    else:
        for y in nbrs:
            a, b = X.induced_tuple({x, y})
            rel.setdefault(a, set()).add(b)
        for y, z in combinations(nbrs, 2):
            if not X.has_simplex({x, y, z}):
                continue
            a, b = X.induced_tuple({y, z})
            rel.setdefault(a, set()).add(b)
    return rel


def _relation_cycle(rel):
    """A directed cycle of the star relation, or None.

    The star poset is the transitive closure of the relation, so the closure
    is a partial order exactly when the relation is acyclic.  Within any
    single simplex the induced order is total, hence acyclic; cycles can only
    be stitched together from several simplices (for example a cone over an
    oriented rim cycle) and those are the genuine local-poset failures.
    """
    state = {}
    stack = []

    def visit(v):
        state[v] = "open"
        stack.append(v)
        for w in sorted(rel.get(v, ()), key=_key):
            s = state.get(w)
            if s == "open":
                return stack[stack.index(w):]
            if s is None:
                cycle = visit(w)
                if cycle is not None:
                    return cycle
        stack.pop()
        state[v] = "done"
        return None

    for v in sorted(rel, key=_key):
        if v not in state:
            cycle = visit(v)
            if cycle is not None:
                return tuple(cycle)
    return None


def is_local_poset(X):
    """First vertex whose star relation fails to generate a partial order, or None.

    Returns (vertex, cycle) where cycle is a tuple of star elements that the
    relation orders cyclically.
    """
    for x in X.vertices:
        cycle = _relation_cycle(star_relation(X, x))
        if cycle is not None:
            return (x, cycle)
    return None


@dataclass(frozen=True)
class StarPoset:
    """The star of a vertex as a poset.

    For type A the center is the minimum.  For type C the center sits in the
    middle; ``plus`` and ``minus`` restrict to the elements above (with
    minimum center) and below (with maximum center).
    """

    center: object
    order_type: str
    poset: Poset

    @property
    def plus(self):
        return self.poset.restrict(self.poset.up_set(self.center))

    @property
    def minus(self):
        return self.poset.restrict(self.poset.down_set(self.center))


def star_poset(X, x):
    """The poset (St(x), <=_x), the transitive closure of the star relation.

    Raises NotLocalPoset if the relation at x contains a cycle.
    """
    rel = star_relation(X, x)
    cycle = _relation_cycle(rel)
    if cycle is not None:
        raise NotLocalPoset(x, cycle)
    elements = {x} | set(X.neighbors(x))
    pairs = [(y, z) for y in rel for z in rel[y]]
    if X.order_type == "A":
        pairs += [(x, y) for y in X.neighbors(x)]
    return StarPoset(x, X.order_type, Poset.from_covers(sorted(elements, key=_key), pairs))


# -- realizations of posets ---------------------------------------------------------


def order_complex(P):
    """The type-C complex of chains of a poset, ordered bottom-up."""
    return OrderedComplex("C", P.elements, P.maximal_chains())
