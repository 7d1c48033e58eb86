"""Exact metric geometry of ordered simplicial complexes.

Everything here works in exact rational arithmetic: the two simplex norms,
vertex coordinates of the model simplices, points given by barycentric
weights or chain coordinates, and a boundary-mesh shortest-path upper bound
for the length metric.  No floating point enters any verdict.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .complexes import order_complex
from .errors import (
    Disconnected,
    NoCommonChamber,
    NotComparableToAll,
    NotSumZero,
    ParameterTooLarge,
    UnknownLabel,
)
from .poset import _key


def frac(x):
    """Parse ints, Fractions, and strings like '2/3' into exact rationals."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


def frac_str(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# -- norms -------------------------------------------------------------------


def linf_norm(v):
    """max |v_i|, the sup norm."""
    return max((abs(frac(x)) for x in v), default=Fraction(0))


def polyhedral_norm(v):
    """max over i != j of |v_i - v_j|, on the sum-zero hyperplane.

    Equals max(v) - min(v); raises NotSumZero off the hyperplane.
    """
    v = [frac(x) for x in v]
    if sum(v, Fraction(0)) != 0:
        raise NotSumZero(f"coordinates sum to {sum(v)}, not zero")
    if len(v) <= 1:
        return Fraction(0)
    return max(v) - min(v)


# -- exact linear algebra for ball vertices ------------------------------------


def _solve_square(rows, rhs):
    """Solve an n x n rational system; None if singular."""
    n = len(rows)
    a = [list(r) + [b] for r, b in zip(rows, rhs)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return None
        a[col], a[pivot] = a[pivot], a[col]
        inv = a[col][col]
        a[col] = [x / inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                factor = a[r][col]
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]


def polyhedral_ball_extreme_points(n):
    """Extreme points of the unit ball of the polyhedral norm in dimension n.

    Returned as full (n+1)-coordinate sum-zero tuples; n = 2 yields the six
    hexagon vertices, n = 3 the fourteen vertices of the rhombic dodecahedron.
    """
    if not 1 <= n <= 3:
        raise ParameterTooLarge("ball enumeration supports n <= 3")
    # substitute x_n = -(x_0 + ... + x_{n-1}); constraints x_i - x_j <= 1
    idx = list(range(n + 1))

    def constraint(i, j):
        row = [Fraction(0)] * n
        for k, sign in ((i, 1), (j, -1)):
            if k < n:
                row[k] += sign
            else:
                row = [x - sign for x in row]
        return row

    cons = [(constraint(i, j), Fraction(1)) for i in idx for j in idx if i != j]
    points = set()
    for chosen in combinations(range(len(cons)), n):
        rows = [cons[c][0] for c in chosen]
        rhs = [cons[c][1] for c in chosen]
        sol = _solve_square(rows, rhs)
        if sol is None:
            continue
        if all(sum(r * x for r, x in zip(row, sol)) <= b for row, b in cons):
            full = tuple(sol) + (-sum(sol, Fraction(0)),)
            points.add(full)
    return sorted(points)


# -- model coordinates of chambers ---------------------------------------------


def orthoscheme_coords(d):
    """Vertex coordinates of the standard d-orthoscheme: k ones then zeros."""
    return [tuple(Fraction(1) if i < k else Fraction(0) for i in range(d)) for k in range(d + 1)]


def affine_simplex_coords(d):
    """Vertex coordinates of the standard cyclic d-simplex on the sum-zero hyperplane."""
    out = []
    for i in range(d + 1):
        j = d + 1 - i
        out.append(
            tuple(
                Fraction(j, d + 1) if k < i else Fraction(-i, d + 1)
                for k in range(d + 1)
            )
        )
    return out


def _chamber_metric(X, simplex):
    """Exact metric on one chamber: positions indexed by the stored tuple."""
    d = len(simplex) - 1
    if X.order_type == "C":
        coords = orthoscheme_coords(d)
        norm = linf_norm
    else:
        coords = affine_simplex_coords(d)
        norm = polyhedral_norm
    index = {v: coords[i] for i, v in enumerate(simplex)}

    def dist(wa, wb):
        dim = len(coords[0])
        if dim == 0:
            return Fraction(0)
        diff = [Fraction(0)] * dim
        for v, w in wa.items():
            c = index[v]
            for i in range(dim):
                diff[i] += w * c[i]
        for v, w in wb.items():
            c = index[v]
            for i in range(dim):
                diff[i] -= w * c[i]
        return norm(diff)

    return dist


def as_point(X, point):
    """Normalize a vertex label or weight mapping into a barycentric point."""
    if isinstance(point, dict):
        weights = {v: frac(w) for v, w in point.items() if frac(w) != 0}
        if sum(weights.values(), Fraction(0)) != 1:
            raise ValueError("barycentric weights must sum to 1")
        if any(w < 0 for w in weights.values()):
            raise ValueError("barycentric weights must be nonnegative")
        for v in weights:
            if v not in X._vertex_set:
                raise UnknownLabel(f"unknown vertex {v!r}")
        if not X.has_simplex(weights.keys()):
            raise UnknownLabel(f"support {sorted(map(str, weights))} spans no simplex")
        return weights
    if point in X._vertex_set:
        return {point: Fraction(1)}
    raise UnknownLabel(f"unknown vertex {point!r}")


def chamber_distance_in_complex(X, p, q):
    """Exact norm distance between two points sharing a chamber."""
    p, q = as_point(X, p), as_point(X, q)
    support = set(p) | set(q)
    for s, ms in zip(X.maximal_simplices, X._max_sets):
        if support <= ms:
            return _chamber_metric(X, s)(p, q)
    raise NoCommonChamber(f"{sorted(map(str, support))} lies in no single chamber")


# -- mesh graph and the length-metric upper bound --------------------------------


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


class MeshApproximator:
    """Shortest-path distances through mesh points on chamber boundaries.

    Nodes are the points whose barycentric weights are positive multiples of
    the mesh on a proper face of some chamber (plus all vertices); two nodes
    sharing a chamber are joined by an edge of exact chamber length.  The
    graph distance is an upper bound for the length metric that does not
    increase when the mesh is refined by an integer factor.
    """

    def __init__(self, X, mesh):
        mesh = frac(mesh)
        if mesh <= 0 or mesh.numerator != 1:
            raise ValueError("mesh must be 1/m for a positive integer m")
        self.X = X
        self.mesh = mesh
        m = mesh.denominator
        nodes = set()
        for s in X.maximal_simplices:
            if len(s) == 1:
                nodes.add(((s[0], Fraction(1)),))
                continue
            for size in range(1, len(s)):
                for face in combinations(s, size):
                    for comp in _compositions(m, size):
                        nodes.add(tuple(sorted(
                            (v, Fraction(c, m)) for v, c in zip(face, comp)
                        )))
        self._nodes = nodes
        self._adj = None

    def _node(self, point):
        return tuple(sorted(point.items()))

    def _build(self, extra_nodes):
        nodes = set(self._nodes) | set(extra_nodes)
        adj = {node: [] for node in nodes}
        for s, ms in zip(self.X.maximal_simplices, self.X._max_sets):
            members = [node for node in nodes if all(v in ms for v, _ in node)]
            dist = _chamber_metric(self.X, s)
            for a, b in combinations(members, 2):
                d = dist(dict(a), dict(b))
                adj[a].append((b, d))
                adj[b].append((a, d))
        return adj

    def distance(self, p, q):
        p, q = as_point(self.X, p), as_point(self.X, q)
        source, target = self._node(p), self._node(q)
        if self._adj is None or not {source, target} <= self._adj.keys():
            extra = {self._node(w) for w in (p, q)}
            self._adj = self._build(extra - self._nodes)
            self._nodes |= extra
        best = {source: Fraction(0)}
        heap = [(Fraction(0), 0, source)]
        counter = 1
        while heap:
            d, _, node = heapq.heappop(heap)
            if node == target:
                return d
            if d > best[node]:
                continue
            for other, w in self._adj[node]:
                nd = d + w
                if other not in best or nd < best[other]:
                    best[other] = nd
                    heapq.heappush(heap, (nd, counter, other))
                    counter += 1
        raise Disconnected("no path between the query points")


def approx_distance(X, p, q, mesh):
    """Graph upper bound for the length metric at the given boundary mesh."""
    return MeshApproximator(X, mesh).distance(p, q)


# -- chain-coordinate points on poset realizations -----------------------------------


@dataclass(frozen=True)
class PLPoint:
    """A point of an orthoscheme realization: a maximal chain plus coordinates.

    coords u with 0 <= u_1 <= ... <= u_n <= 1 give the i-th chain element the
    barycentric weight u_{i+1} - u_i (with u_0 = 0 and u_{n+1} = 1), so equal
    consecutive coordinates erase the chain element between them; that is the
    gluing rule across chains.
    """

    chain: tuple
    coords: tuple

    def __post_init__(self):
        coords = tuple(frac(u) for u in self.coords)
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "chain", tuple(self.chain))
        if len(self.chain) != len(coords) + 1:
            raise ValueError("a rank-n chain needs n+1 elements and n coordinates")
        lo = Fraction(0)
        for u in coords:
            if u < lo:
                raise ValueError("coordinates must be nondecreasing")
            lo = u
        if coords and coords[-1] > 1:
            raise ValueError("coordinates must stay within [0, 1]")

    def weights(self):
        bounds = (Fraction(0),) + self.coords + (Fraction(1),)
        return [bounds[i + 1] - bounds[i] for i in range(len(self.chain))]

    def to_barycentric(self):
        return {c: w for c, w in zip(self.chain, self.weights()) if w != 0}

    def to_json(self):
        return {
            "chain": [str(c) for c in self.chain],
            "coords": [frac_str(u) for u in self.coords],
        }

    @classmethod
    def from_json(cls, data):
        return cls(tuple(data["chain"]), tuple(frac(u) for u in data["coords"]))


def _check_maximal_chain(P, chain):
    for c in chain:
        if c not in P:
            raise UnknownLabel(f"unknown element {c!r} in chain")
    for a, b in zip(chain, chain[1:]):
        if (a, b) not in P.covers:
            raise ValueError(f"{a!r} is not covered by {b!r}; not a chain of covers")
    if chain and (P.lower_covers(chain[0]) or P.upper_covers(chain[-1])):
        raise ValueError("chain is not maximal")


def chamber_distance(P, p, q):
    """sup-norm distance between two points representable on a common maximal chain.

    The coordinates are preserved by re-representation, so after checking that
    a compatible chain exists the distance is the sup norm of the coordinate
    difference.  Raises NoCommonChamber otherwise.
    """
    _check_maximal_chain(P, p.chain)
    _check_maximal_chain(P, q.chain)
    if len(p.chain) != len(q.chain):
        raise NoCommonChamber("chains of different ranks never share a chamber")
    wp, wq = p.weights(), q.weights()
    for chain in P.maximal_chains():
        if len(chain) != len(p.chain):
            continue
        if all(w == 0 or c == pc for w, c, pc in zip(wp, chain, p.chain)) and all(
            w == 0 or c == qc for w, c, qc in zip(wq, chain, q.chain)
        ):
            return linf_norm(u - v for u, v in zip(p.coords, q.coords))
    raise NoCommonChamber("no maximal chain carries both points")


# -- the local product decomposition ------------------------------------------------


@dataclass(frozen=True)
class ProductReport:
    center: object
    samples: int
    max_discrepancy: Fraction
    bound: Fraction

    @property
    def ok(self):
        return self.max_discrepancy <= self.bound

    def to_json(self):
        return {
            "property": "local_linf_product_decomposition",
            "holds": self.ok,
            "witness": None if self.ok else {
                "max_discrepancy": frac_str(self.max_discrepancy),
                "bound": frac_str(self.bound),
            },
            "samples": self.samples,
        }


def local_product_check(L, x, mesh=Fraction(1, 4), max_samples=12):
    """Compare distances near x in |L| with the sup of the two factor distances.

    L must have x comparable to every element; points are sampled on the mesh
    grid at barycentric weight 1 - 2*mesh on x, and distances in |L| are
    compared against max of the distances between the projections to the
    realizations of L+ = {y >= x} and L- = {y <= x}.  The documented bound on
    the discrepancy is 2 * mesh.
    """
    mesh = frac(mesh)
    for y in L.elements:
        if not L.comparable(x, y):
            raise NotComparableToAll(f"{y!r} is not comparable to {x!r}")
    up, down = L.up_set(x), L.down_set(x)
    plus, minus = L.restrict(up), L.restrict(down)
    full_c, plus_c, minus_c = order_complex(L), order_complex(plus), order_complex(minus)
    approx_full = MeshApproximator(full_c, mesh)
    approx_plus = MeshApproximator(plus_c, mesh)
    approx_minus = MeshApproximator(minus_c, mesh)

    delta = 2 * mesh
    samples = []
    for y in sorted((y for y in L.elements if y != x), key=_key):
        samples.append({x: 1 - delta, y: delta})
        if len(samples) >= max_samples:
            break

    def project(point, side):
        kept = {v: w for v, w in point.items() if v in side and v != x}
        lump = 1 - sum(kept.values(), Fraction(0))
        if lump:
            kept[x] = lump
        return kept

    worst = Fraction(0)
    count = 0
    for a, b in combinations(samples, 2):
        d_full = approx_full.distance(a, b)
        d_plus = approx_plus.distance(project(a, up), project(b, up))
        d_minus = approx_minus.distance(project(a, down), project(b, down))
        worst = max(worst, abs(d_full - max(d_plus, d_minus)))
        count += 1
    return ProductReport(x, count, worst, 2 * mesh)
