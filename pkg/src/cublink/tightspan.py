"""Injective hulls of small finite metric spaces and the matching-sum dimension test.

The hull of a metric d is the polyhedral complex of pointwise-minimal
functions f with f(x) + f(y) >= d(x, y); it equals the union of the bounded
faces of that polyhedron.  Vertices are enumerated exactly: a minimal f is a
0-dimensional face precisely when its tightness graph pins every component
through a loop or an odd cycle, so candidate vertices are the solutions of
the systems indexed by self-maps of the point set whose functional graphs
have only odd cycles.  All arithmetic is integer after clearing denominators.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations, product
from math import lcm

from .errors import NotAMetric, TooManyPoints
from .metric import frac, frac_str


class FiniteMetric:
    """A finite metric space over labeled points, with exact rational distances."""

    def __init__(self, points, dist):
        self.points = tuple(points)
        n = len(self.points)
        if len(set(self.points)) != n:
            raise NotAMetric("point labels must be unique")
        rows = [[frac(x) for x in row] for row in dist]
        if len(rows) != n or any(len(r) != n for r in rows):
            raise NotAMetric("distance matrix shape must match the point count")
        for i in range(n):
            if rows[i][i] != 0:
                raise NotAMetric(f"nonzero diagonal at {self.points[i]!r}")
            for j in range(n):
                if rows[i][j] != rows[j][i]:
                    raise NotAMetric("distance matrix must be symmetric")
                if i != j and rows[i][j] <= 0:
                    raise NotAMetric("distinct points need positive distance")
        for i, j, k in product(range(n), repeat=3):
            if rows[i][j] > rows[i][k] + rows[k][j]:
                raise NotAMetric(
                    f"triangle inequality fails on ({self.points[i]}, {self.points[j]}, {self.points[k]})"
                )
        self.dist = tuple(tuple(r) for r in rows)

    def __len__(self):
        return len(self.points)

    def d(self, x, y):
        i, j = self.points.index(x), self.points.index(y)
        return self.dist[i][j]

    def to_json(self):
        return {
            "points": [str(p) for p in self.points],
            "dist": [[frac_str(x) for x in row] for row in self.dist],
        }

    @classmethod
    def from_json(cls, data):
        return cls(data["points"], data["dist"])


@dataclass(frozen=True)
class HullFace:
    """One face of the hull: its tightness graph, dimension, and vertex indices."""

    tight_pairs: frozenset
    dimension: int
    vertex_indices: tuple

    def to_json(self):
        return {
            "tight_pairs": sorted([sorted(map(str, p)) for p in self.tight_pairs]),
            "dimension": self.dimension,
            "vertices": list(self.vertex_indices),
        }


@dataclass(frozen=True)
class TightSpan:
    metric: FiniteMetric
    vertices: tuple          # tuples of Fractions, indexed like metric.points
    faces: tuple             # HullFace records
    dimension: int

    def vertex_functions(self):
        return [
            {p: v[i] for i, p in enumerate(self.metric.points)} for v in self.vertices
        ]

    def to_json(self):
        return {
            "points": [str(p) for p in self.metric.points],
            "dimension": self.dimension,
            "vertices": [[frac_str(x) for x in v] for v in self.vertices],
            "faces": [f.to_json() for f in self.faces],
        }


def _cycles_of(kappa):
    """Cycle decomposition of a functional graph; None if some cycle is even."""
    n = len(kappa)
    color = [0] * n
    cycles = []
    for start in range(n):
        if color[start]:
            continue
        path, seen = [], {}
        v = start
        while color[v] == 0 and v not in seen:
            seen[v] = len(path)
            path.append(v)
            v = kappa[v]
        if color[v] == 0:
            cycle = path[seen[v]:]
            if len(cycle) % 2 == 0:
                return None
            cycles.append(cycle)
        for u in path:
            color[u] = 1
    return cycles


def _solve_kappa(kappa, D2):
    """Doubled values F solving F[x] + F[kappa(x)] = D2[x][kappa(x)], or None."""
    n = len(kappa)
    cycles = _cycles_of(kappa)
    if cycles is None:
        return None
    F = [None] * n
    for cycle in cycles:
        total = 0
        sign = 1
        for t, v in enumerate(cycle):
            w = cycle[(t + 1) % len(cycle)]
            total += sign * D2[v][w]
            sign = -sign
        # the odd cycle length pins the first value; D2 entries are even,
        # so the alternating sum halves exactly
        F[cycle[0]] = total // 2
        for t in range(len(cycle) - 1):
            v, w = cycle[t], cycle[t + 1]
            F[w] = D2[v][w] - F[v]
    remaining = [v for v in range(n) if F[v] is None]
    while remaining:
        progressed = []
        for v in remaining:
            if F[kappa[v]] is not None:
                F[v] = D2[v][kappa[v]] - F[kappa[v]]
            else:
                progressed.append(v)
        if len(progressed) == len(remaining):
            return None
        remaining = progressed
    return F


def _is_feasible(F, D2):
    n = len(F)
    if any(x < 0 for x in F):
        return False
    for i in range(n):
        for j in range(i + 1, n):
            if F[i] + F[j] < D2[i][j]:
                return False
    return True


def _tight_graph(F, D2):
    n = len(F)
    pairs = set()
    for i in range(n):
        if F[i] == 0:
            pairs.add((i, i))
        for j in range(i + 1, n):
            if F[i] + F[j] == D2[i][j]:
                pairs.add((i, j))
    return frozenset(pairs)


def _covers_all(graph, n):
    touched = set()
    for i, j in graph:
        touched.add(i)
        touched.add(j)
    return len(touched) == n


def _face_dimension(graph, n):
    """Number of components of the tightness graph that are loop-free and bipartite."""
    parent = list(range(n))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for i, j in graph:
        if i != j:
            parent[find(i)] = find(j)
    pinned = {find(i) for i, j in graph if i == j}
    adj = {v: [] for v in range(n)}
    for i, j in graph:
        if i != j:
            adj[i].append(j)
            adj[j].append(i)
    color = {}
    for start in range(n):
        if start in color:
            continue
        color[start] = 0
        stack = [start]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in color:
                    color[w] = color[v] ^ 1
                    stack.append(w)
                elif color[w] == color[v]:
                    pinned.add(find(v))
    return sum(1 for r in set(map(find, range(n))) if r not in pinned)


def tight_span(metric):
    """The injective hull of a metric on at most 7 points.

    Returns the full face decomposition (faces indexed by their tightness
    graphs) together with the topological dimension, the maximum affine
    dimension of a face.
    """
    M = metric if isinstance(metric, FiniteMetric) else FiniteMetric(*metric)
    n = len(M)
    if n > 7:
        raise TooManyPoints("the hull enumeration is limited to 7 points")
    if n == 0:
        return TightSpan(M, (), (), -1)
    scale = lcm(*(x.denominator for row in M.dist for x in row)) if n > 1 else 1
    D2 = [[int(2 * scale * x) for x in row] for row in M.dist]

    seen = set()
    vertices = []
    for kappa in product(range(n), repeat=n):
        F = _solve_kappa(kappa, D2)
        if F is None:
            continue
        key = tuple(F)
        if key in seen:
            continue
        seen.add(key)
        if _is_feasible(F, D2):
            vertices.append(key)
    vertices.sort()

    # close the vertex tightness graphs under intersection: each bounded face
    # is the smallest face containing finitely many vertices, and its graph is
    # the intersection of theirs
    graphs = {_tight_graph(F, D2) for F in vertices}
    changed = True
    while changed:
        changed = False
        for a, b in combinations(list(graphs), 2):
            meet = a & b
            if meet not in graphs and _covers_all(meet, n):
                graphs.add(meet)
                changed = True

    faces = []
    for graph in graphs:
        members = tuple(
            idx for idx, F in enumerate(vertices) if graph <= _tight_graph(F, D2)
        )
        faces.append(HullFace(graph, _face_dimension(graph, n), members))
    faces.sort(key=lambda f: (f.dimension, sorted(f.tight_pairs)))
    dimension = max((f.dimension for f in faces), default=0)
    out_vertices = tuple(
        tuple(Fraction(x, 2 * scale) for x in F) for F in vertices
    )
    return TightSpan(M, out_vertices, tuple(faces), dimension)


# -- the matching-sum dimension criterion ----------------------------------------


def _fixed_point_free_involutions(items):
    if not items:
        yield {}
        return
    first, rest = items[0], items[1:]
    for k, partner in enumerate(rest):
        remaining = rest[:k] + rest[k + 1:]
        for sub in _fixed_point_free_involutions(remaining):
            pairing = dict(sub)
            pairing[first] = partner
            pairing[partner] = first
            yield pairing


def _fixed_point_free_bijections(items):
    for perm in permutations(items):
        if all(a != b for a, b in zip(items, perm)):
            yield dict(zip(items, perm))


def dress_dimension_test(metric, n):
    """Whether every matching sum is dominated by some other derangement sum.

    True iff for every subset Z of 2(n+1) points and every fixed-point-free
    involution i on Z there is a fixed-point-free bijection j != i with
    sum d(z, i(z)) <= sum d(z, j(z)).  When the space has fewer than 2(n+1)
    points the quantification is empty and the test is vacuously true, which
    matches the hull dimension bound |X| / 2.
    """
    M = metric if isinstance(metric, FiniteMetric) else FiniteMetric(*metric)
    size = 2 * (n + 1)
    if n < 1:
        raise ValueError("the dimension parameter must be at least 1")
    for subset in combinations(range(len(M)), size):
        sums = {}
        for j in _fixed_point_free_bijections(subset):
            total = sum(M.dist[z][j[z]] for z in subset)
            key = tuple(j[z] for z in subset)
            sums[key] = total
        for i in _fixed_point_free_involutions(list(subset)):
            key = tuple(i[z] for z in subset)
            mine = sums[key]
            if not any(total >= mine for k, total in sums.items() if k != key):
                return False
    return True


# -- corpus builders ---------------------------------------------------------------


def tree_metric(rng, leaves):
    """Path-distance metric of a random integer-weighted tree."""
    size = max(2, leaves)
    parents = {0: None}
    weight = {}
    for v in range(1, size):
        p = rng.randrange(v)
        parents[v] = p
        weight[v] = rng.randint(1, 4)

    def path_to_root(v):
        out = {}
        total = 0
        while v is not None:
            out[v] = total
            total += weight.get(v, 0)
            v = parents[v]
        return out

    dist = [[Fraction(0)] * size for _ in range(size)]
    for a in range(size):
        pa = path_to_root(a)
        for b in range(a + 1, size):
            pb = path_to_root(b)
            meet = min((k for k in pa if k in pb), key=lambda k: pa[k])
            d = pa[meet] + pb[meet]
            dist[a][b] = dist[b][a] = Fraction(d)
    return FiniteMetric([f"t{v}" for v in range(size)], dist)


def rectangle_metric(u, v, w1, w2):
    """Four points with pair distances u, v and cross distances w1, w2."""
    rows = [
        [0, u, w1, w2],
        [u, 0, w2, w1],
        [w1, w2, 0, v],
        [w2, w1, v, 0],
    ]
    return FiniteMetric(["a", "b", "c", "d"], rows)


def random_metric(rng, size, max_entry=9):
    """Random integer metric via shortest-path completion."""
    d = [[0] * size for _ in range(size)]
    for i in range(size):
        for j in range(i + 1, size):
            d[i][j] = d[j][i] = rng.randint(1, max_entry)
    for k in range(size):
        for i in range(size):
            for j in range(size):
                if d[i][k] + d[k][j] < d[i][j]:
                    d[i][j] = d[k][j] + d[i][k]
    return FiniteMetric([f"p{i}" for i in range(size)], [[Fraction(x) for x in row] for row in d])
