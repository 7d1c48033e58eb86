"""Simple simplices of finite permutation groups and their local developments.

Vertices are cyclically indexed; each vertex i carries an ambient permutation
group and, for every face index set I containing i, the image of the face
group inside it.  All condition checks are literal exhaustion over group
elements, which is exact and fast at the intended scale (vertex groups of at
most a few thousand elements).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .complexes import OrderedComplex, maximal_cliques
from .errors import IncompatibleInclusions, NotASubgroup, UnknownLabel
from .poset import _key

# permutations are tuples in one-line notation over 0..degree-1


def identity(degree):
    return tuple(range(degree))


def compose(p, q):
    """Apply q first, then p."""
    return tuple(p[q[i]] for i in range(len(p)))


def inverse(p):
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def closure(degree, generators):
    """The subgroup generated by the given permutations, as a frozenset."""
    gens = [tuple(g) for g in generators]
    for g in gens:
        if sorted(g) != list(range(degree)):
            raise ValueError(f"{g} is not a permutation of degree {degree}")
    elements = {identity(degree)}
    frontier = [identity(degree)]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(g, x)
                if y not in elements:
                    elements.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(elements)


def symmetric_group(degree):
    if degree <= 1:
        return closure(degree, [])
    swap = list(range(degree))
    swap[0], swap[1] = 1, 0
    cycle = tuple(list(range(1, degree)) + [0])
    return closure(degree, [tuple(swap), cycle])


def set_stabilizer(group, subset):
    subset = set(subset)
    return frozenset(g for g in group if {g[x] for x in subset} == subset)


def left_cosets(group, subgroup):
    """Left cosets g*subgroup, keyed by their minimal representative."""
    seen = set()
    cosets = {}
    for g in sorted(group):
        if g in seen:
            continue
        coset = frozenset(compose(g, h) for h in subgroup)
        seen |= coset
        cosets[min(coset)] = coset
    return cosets


def _perm_label(p):
    return "".join(str(x) for x in p)


class SimplexOfGroups:
    """A simple simplex of groups over cyclically indexed vertices.

    face_groups maps (vertex, frozenset index set) to the element set of the
    face group's image in that vertex group.  Index sets of size three or
    more default to the intersection of their pair groups when omitted.
    """

    def __init__(self, n, vertex_groups, face_groups):
        if n < 2:
            raise ValueError("a simplex of groups needs at least 2 vertices")
        self.n = n
        self.vertex_groups = [frozenset(map(tuple, g)) for g in vertex_groups]
        if len(self.vertex_groups) != n:
            raise ValueError("one ambient group per vertex is required")

        table = {}
        for (i, I), elements in face_groups.items():
            I = frozenset(I)
            if i not in I or not I <= set(range(n)):
                raise UnknownLabel(f"face key ({i}, {sorted(I)}) is malformed")
            table[(i, I)] = frozenset(map(tuple, elements))
        for i in range(n):
            table[(i, frozenset({i}))] = self.vertex_groups[i]
            for j in range(n):
                if j != i and (i, frozenset({i, j})) not in table:
                    raise UnknownLabel(f"missing pair group for vertices {i}, {j}")
        for i in range(n):
            others = [j for j in range(n) if j != i]
            for size in range(2, n):
                for rest in combinations(others, size):
                    I = frozenset({i, *rest})
                    if (i, I) not in table:
                        meet = self.vertex_groups[i]
                        for j in rest:
                            meet &= table[(i, frozenset({i, j}))]
                        table[(i, I)] = meet
        self.face_groups = table

        for (i, I), elements in table.items():
            if not elements <= self.vertex_groups[i]:
                raise NotASubgroup(f"group of face {sorted(I)} is not inside vertex group {i}")
            for g in elements:
                if inverse(g) not in elements:
                    raise NotASubgroup(f"face {sorted(I)} at vertex {i} is not inverse-closed")
            for g in elements:
                for h in elements:
                    if compose(g, h) not in elements:
                        raise NotASubgroup(f"face {sorted(I)} at vertex {i} is not product-closed")
        for (i, I), elements in table.items():
            for (i2, J), bigger in table.items():
                if i2 == i and I < J and not table[(i, J)] <= elements:
                    raise IncompatibleInclusions(
                        f"face {sorted(J)} is not contained in face {sorted(I)} at vertex {i}"
                    )

    def group(self, i, I):
        return self.face_groups[(i, frozenset(I))]

    def walk(self, i):
        """The other vertices in cyclic order starting after i."""
        return [(i + t) % self.n for t in range(1, self.n)]

    def to_json(self):
        out_faces = {}
        for (i, I), elements in sorted(self.face_groups.items(), key=lambda kv: (kv[0][0], sorted(kv[0][1]))):
            if len(I) == 1:
                continue
            key = f"{i}|{','.join(map(str, sorted(I)))}"
            out_faces[key] = [list(g) for g in sorted(elements)]
        return {
            "n": self.n,
            "vertex_groups": [
                {"degree": len(next(iter(g))) if g else 0, "generators": [list(x) for x in sorted(g)]}
                for g in self.vertex_groups
            ],
            "face_subgroups": out_faces,
        }

    @classmethod
    def from_json(cls, data):
        n = data["n"]
        vertex_groups = [
            closure(vg["degree"], vg["generators"]) for vg in data["vertex_groups"]
        ]
        face_groups = {}
        for key, gens in data["face_subgroups"].items():
            head, _, idx = key.partition("|")
            i = int(head)
            I = frozenset(int(t) for t in idx.split(","))
            degree = data["vertex_groups"][i]["degree"]
            face_groups[(i, I)] = closure(degree, gens)
        return cls(n, vertex_groups, face_groups)


@dataclass(frozen=True)
class ConditionFailure:
    condition: str
    vertex: int
    detail: dict

    def to_json(self):
        return {"condition": self.condition, "vertex": self.vertex, "detail": self.detail}


@dataclass(frozen=True)
class ConditionsReport:
    passed: bool
    failures: tuple

    def to_json(self):
        return {
            "property": "simplex_of_groups_conditions",
            "holds": self.passed,
            "witness": None if self.passed else [f.to_json() for f in self.failures],
        }


def check_conditions(S):
    """Exhaustively check the three developability conditions.

    (intersection) the group of I meets the group of J in the group of
    I union J; (product) each middle pair group lies in the product of the
    outer two; (factorization) every identity product a b a' b' with a, a'
    in the first pair group and b, b' in the second leaves a harmless coset
    configuration: the four cosets it spans either coincide in pairs or are
    separated by a middle coset at a level strictly between the two.
    Reports the first witness per condition.
    """
    failures = []

    for i in range(S.n):
        sets_at_i = sorted(
            (I for (v, I) in S.face_groups if v == i), key=lambda I: (len(I), sorted(I))
        )
        hit = None
        for I, J in combinations(sets_at_i, 2):
            union = I | J
            if S.group(i, I) & S.group(i, J) != S.group(i, union):
                diff = (S.group(i, I) & S.group(i, J)) ^ S.group(i, union)
                hit = ConditionFailure(
                    "intersection",
                    i,
                    {
                        "I": sorted(I),
                        "J": sorted(J),
                        "element": _perm_label(min(diff)),
                    },
                )
                break
        if hit:
            failures.append(hit)
            break

    for i in range(S.n):
        walk = S.walk(i)
        hit = None
        for j, k, l in combinations(walk, 3):
            product_set = {
                compose(a, b)
                for a in S.group(i, {i, j})
                for b in S.group(i, {i, l})
            }
            missing = S.group(i, {i, k}) - product_set
            if missing:
                hit = ConditionFailure(
                    "product",
                    i,
                    {"j": j, "k": k, "l": l, "element": _perm_label(min(missing))},
                )
                break
        if hit:
            failures.append(hit)
            break

    for i in range(S.n):
        walk = S.walk(i)
        G = S.vertex_groups[i]
        hit = None
        for pos_j, pos_k in combinations(range(len(walk)), 2):
            j, k = walk[pos_j], walk[pos_k]
            Gij, Gik = S.group(i, {i, j}), S.group(i, {i, k})
            middles = []
            for l in walk[pos_j + 1:pos_k]:
                middles.extend(left_cosets(G, S.group(i, {i, l})).values())
            for a in Gij:
                if a in Gik:
                    continue
                for b in Gik:
                    ab = compose(a, b)
                    if ab in Gij:
                        continue
                    completing = next(
                        (a2 for a2 in Gij if inverse(compose(ab, a2)) in Gik), None
                    )
                    if completing is None:
                        continue
                    # the quadruple spans the cosets G_ij, abG_ij below
                    # aG_ik, G_ik; it is harmless exactly when a middle coset
                    # at a level strictly between j and k meets all four
                    a_coset = frozenset(compose(a, g) for g in Gik)
                    ab_coset = frozenset(compose(ab, g) for g in Gij)
                    if any(
                        m & Gij and m & ab_coset and m & Gik and m & a_coset
                        for m in middles
                    ):
                        continue
                    hit = ConditionFailure(
                        "factorization",
                        i,
                        {
                            "j": j,
                            "k": k,
                            "a": _perm_label(a),
                            "b": _perm_label(b),
                            "a'": _perm_label(completing),
                            "b'": _perm_label(inverse(compose(ab, completing))),
                        },
                    )
                    break
                if hit:
                    break
            if hit:
                break
        if hit:
            failures.append(hit)
            break

    return ConditionsReport(not failures, tuple(failures))


def local_development(S, i):
    """The coset complex at vertex i, as a cyclically ordered flag complex.

    Vertices are the base vertex plus the left cosets of each pair group;
    two cosets are adjacent when they intersect, and the cyclic order runs
    along the walk order of the types at i.
    """
    base = "G"
    G = S.vertex_groups[i]
    walk = S.walk(i)
    position = {base: 0}
    vertices = [base]
    membership = {}
    for pos, j in enumerate(walk, start=1):
        for rep, coset in left_cosets(G, S.group(i, {i, j})).items():
            label = f"{j}:{_perm_label(rep)}"
            vertices.append(label)
            position[label] = pos
            membership[label] = coset
    adjacency = {v: set() for v in vertices}
    labels = list(membership)
    for a, b in combinations(labels, 2):
        if position[a] != position[b] and membership[a] & membership[b]:
            adjacency[a].add(b)
            adjacency[b].add(a)
    for v in labels:
        adjacency[base].add(v)
        adjacency[v].add(base)
    adjacency = {v: frozenset(nb) for v, nb in adjacency.items()}
    sims = []
    for clique in maximal_cliques(vertices, adjacency):
        sims.append(tuple(sorted(clique, key=lambda v: (position[v], _key(v)))))
    return OrderedComplex("A", vertices, sims)


# -- canonical examples ----------------------------------------------------------------


def s4_simplex():
    """The 3-simplex of groups with all vertex groups the symmetric group on 4 letters.

    The pair group toward the j-th next vertex is the set stabilizer of the
    first j letters; larger faces are the intersections of their pairs.
    """
    S4 = symmetric_group(4)
    vertex_groups = [S4] * 4
    face_groups = {}
    for i in range(4):
        for t in range(1, 4):
            j = (i + t) % 4
            face_groups[(i, frozenset({i, j}))] = set_stabilizer(S4, range(t))
    return SimplexOfGroups(4, vertex_groups, face_groups)


def trivial_simplex(n):
    one = closure(1, [])
    face_groups = {}
    for i in range(n):
        for j in range(n):
            if j != i:
                face_groups[(i, frozenset({i, j}))] = one
    return SimplexOfGroups(n, [one] * n, face_groups)


def intersection_violation():
    """Condition (intersection) fails: the triple group is smaller than the pair meet."""
    c2 = closure(2, [(1, 0)])
    one2 = closure(2, [])
    one = closure(1, [])
    face_groups = {
        (0, frozenset({0, 1})): c2,
        (0, frozenset({0, 2})): c2,
        (0, frozenset({0, 1, 2})): one2,
        (1, frozenset({0, 1})): one,
        (1, frozenset({1, 2})): one,
        (2, frozenset({0, 2})): one,
        (2, frozenset({1, 2})): one,
    }
    return SimplexOfGroups(3, [c2, one, one], face_groups)


def product_violation():
    """Condition (product) fails: the middle pair group escapes the outer product."""
    c2 = closure(2, [(1, 0)])
    one2 = closure(2, [])
    one = closure(1, [])
    face_groups = {(0, frozenset({0, 1})): one2,
                   (0, frozenset({0, 2})): c2,
                   (0, frozenset({0, 3})): one2}
    for i in range(1, 4):
        for j in range(4):
            if j != i:
                face_groups.setdefault((i, frozenset({i, j})), one)
    return SimplexOfGroups(4, [c2, one, one, one], face_groups)


def factorization_violation():
    """Condition (factorization) fails: a reflection and a rotation trade off."""
    s3 = symmetric_group(3)
    refl = closure(3, [(1, 0, 2)])
    rot = closure(3, [(1, 2, 0)])
    one = closure(1, [])
    face_groups = {
        (0, frozenset({0, 1})): refl,
        (0, frozenset({0, 2})): rot,
        (1, frozenset({0, 1})): one,
        (1, frozenset({1, 2})): one,
        (2, frozenset({0, 2})): one,
        (2, frozenset({1, 2})): one,
    }
    return SimplexOfGroups(3, [s3, one, one], face_groups)
