"""Simple convex polytopes given combinatorially by facet-vertex incidence.

A polytope of dimension ``n`` with ``m`` facets is stored as the list of its
vertices, each vertex being the sorted tuple of the ``n`` facet indices that
contain it.  All faces, the dual simplicial sphere, facet adjacency and
combinatorial isomorphism are derived from this incidence alone; coordinates
never enter (see :mod:`momang.hrep` for numeric presentations).
"""

from __future__ import annotations

import itertools
import json
from collections import Counter, defaultdict
from dataclasses import dataclass

import networkx as nx

from .errors import (
    DuplicateVertex,
    InvalidSphere,
    NotPolytopal,
    NotSimple,
    ParseError,
    UnusedFacet,
)


@dataclass(frozen=True)
class CombPolytope:
    """A simple n-polytope: every vertex lies in exactly ``dim`` facets.

    ``vertices`` is a lexicographically sorted tuple of sorted facet-index
    tuples, so equal polytopes compare equal regardless of input order.
    """

    dim: int
    facet_count: int
    vertices: tuple[tuple[int, ...], ...]
    facet_labels: tuple[str, ...] | None = None

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    def facet_vertices(self, i: int) -> tuple[int, ...]:
        """Indices of the vertices lying on facet ``i``."""
        return tuple(v for v, fs in enumerate(self.vertices) if i in fs)

    def __repr__(self):
        return (f"CombPolytope(dim={self.dim}, facets={self.facet_count}, "
                f"vertices={self.vertex_count})")


@dataclass(frozen=True)
class Face:
    """A face recorded by the facets containing it; ``dim = n - len(facets)``."""

    facets: frozenset[int]
    dim: int
    vertices: tuple[int, ...]


class FaceLattice:
    """All faces of a simple polytope with their codimension-one cover pairs.

    ``faces[0]`` is the whole polytope (empty facet set); every other face is
    a nonempty intersection of facets, identified with the set of vertices
    containing all of them.  ``covers`` holds pairs ``(face, subface)`` where
    the subface has exactly one more containing facet.
    """

    def __init__(self, polytope: CombPolytope, faces: list[Face],
                 covers: list[tuple[int, int]]):
        self.polytope = polytope
        self.faces = tuple(faces)
        self.covers = tuple(covers)
        self._by_facets = {f.facets: i for i, f in enumerate(self.faces)}

    def face_index(self, facets) -> int:
        return self._by_facets[frozenset(facets)]

    def faces_of_dim(self, d: int) -> list[Face]:
        return [f for f in self.faces if f.dim == d]

    def f_vector(self) -> tuple[int, ...]:
        """Counts of proper faces by dimension 0..n-1."""
        counts = [0] * self.polytope.dim
        for f in self.faces:
            if 0 <= f.dim < self.polytope.dim:
                counts[f.dim] += 1
        return tuple(counts)


@dataclass(frozen=True)
class SimplicialSphere:
    """A pure simplicial complex whose facets have ``dim + 1`` vertices.

    Used for boundaries of dual simplicial polytopes; vertex labels are
    arbitrary ints (facet indices of the primal polytope, or labels created
    by stacking moves).
    """

    dim: int
    facets: tuple[frozenset[int], ...]

    @property
    def vertex_labels(self) -> tuple[int, ...]:
        return tuple(sorted(set().union(*self.facets)))

    @property
    def vertex_count(self) -> int:
        return len(set().union(*self.facets))


# ---------------------------------------------------------------------------
# validation


def _edge_pairs(vertices):
    """Vertex index pairs sharing n-1 facets, via the ridge -> endpoints map."""
    ridges = defaultdict(list)
    for vi, fs in enumerate(vertices):
        for f in fs:
            ridges[frozenset(fs) - {f}].append(vi)
    return ridges


def validate_polytope(dim, incidence, facet_labels=None) -> CombPolytope:
    """Check raw incidence data and return a :class:`CombPolytope`.

    ``incidence`` is an iterable of vertex facet-index collections.  Raises
    :class:`NotSimple`, :class:`DuplicateVertex`, :class:`UnusedFacet` or
    :class:`NotPolytopal` on defects; index/shape problems raise
    :class:`ParseError`.

    For ``dim == 3`` the vertex-edge graph must be planar and 3-connected
    and every facet boundary a single cycle (Steinitz-type test).  In higher
    dimensions only simplicity and consistency of the dual pseudo-sphere are
    checked; genuine polytopality is then the caller's responsibility.
    """
    n = int(dim)
    if n < 1:
        raise ParseError(f"dimension must be >= 1, got {dim}")
    raw = [tuple(v) for v in incidence]
    if not raw:
        raise ParseError("empty vertex list")
    for v in raw:
        if not all(isinstance(f, int) and not isinstance(f, bool) for f in v):
            raise ParseError(f"non-integer facet index in vertex {v}")
        if any(f < 0 for f in v):
            raise ParseError(f"negative facet index in vertex {v}")

    verts = []
    for v in raw:
        s = tuple(sorted(set(v)))
        if len(s) != n or len(v) != n:
            raise NotSimple(f"vertex {v} lies in {len(set(v))} facets, expected {n}")
        verts.append(s)

    seen = set()
    for v in verts:
        if v in seen:
            raise DuplicateVertex(f"vertex {v} listed twice")
        seen.add(v)

    used = set(itertools.chain.from_iterable(verts))
    m = max(used) + 1
    for i in range(m):
        if i not in used:
            raise UnusedFacet(f"facet {i} appears in no vertex")
    if facet_labels is not None:
        labels = tuple(str(x) for x in facet_labels)
        if len(labels) != m:
            raise ParseError(f"expected {m} facet labels, got {len(labels)}")
    else:
        labels = None

    verts = tuple(sorted(verts))

    # Dual pseudo-sphere consistency: every ridge (an (n-1)-subset of some
    # vertex's facet set) must belong to exactly two vertices.
    ridges = _edge_pairs(verts)
    for ridge, ends in ridges.items():
        if len(ends) != 2:
            raise NotPolytopal(
                f"facet set {tuple(sorted(ridge))} shared by {len(ends)} vertices, "
                "expected 2")

    if n >= 2:
        adjacency = [[] for _ in verts]
        for a, b in ridges.values():
            adjacency[a].append(b)
            adjacency[b].append(a)
        if _reach_count(adjacency, 0, skip=None) != len(verts):
            raise NotPolytopal("vertex-edge graph is disconnected")
        if n == 3:
            _check_steinitz(verts, adjacency)

    return CombPolytope(dim=n, facet_count=m, vertices=verts, facet_labels=labels)


def _reach_count(adjacency, start, skip):
    seen = {start}
    stack = [start]
    while stack:
        for w in adjacency[stack.pop()]:
            if w != skip and w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen)


def _has_cut_vertex(adjacency, skip) -> bool:
    """Articulation-point test (Tarjan lowpoints) on the graph minus ``skip``."""
    count = len(adjacency)
    start = 1 if skip == 0 else 0
    num = {start: 0}
    low = {start: 0}
    parent = {start: None}
    stack = [(start, iter(adjacency[start]))]
    counter = 1
    root_children = 0
    articulation = False
    while stack:
        u, it = stack[-1]
        descended = False
        for v in it:
            if v == skip:
                continue
            if v not in num:
                parent[v] = u
                num[v] = low[v] = counter
                counter += 1
                if u == start:
                    root_children += 1
                stack.append((v, iter(adjacency[v])))
                descended = True
                break
            if v != parent[u]:
                low[u] = min(low[u], num[v])
        if not descended:
            stack.pop()
            pu = parent[u]
            if pu is not None:
                low[pu] = min(low[pu], low[u])
                if pu != start and low[u] >= num[pu]:
                    articulation = True
    expected = count - (0 if skip is None else 1)
    return articulation or root_children > 1 or counter < expected


def _check_steinitz(verts, adjacency):
    """Planarity, 3-connectivity and facet-cycle checks for n = 3."""
    count = len(adjacency)
    if count < 4:
        raise NotPolytopal("a 3-polytope needs at least 4 vertices")
    graph = nx.Graph()
    graph.add_nodes_from(range(count))
    for a, nbrs in enumerate(adjacency):
        graph.add_edges_from((a, b) for b in nbrs if b > a)
    planar, _ = nx.check_planarity(graph)
    if not planar:
        raise NotPolytopal("vertex-edge graph is not planar")
    # 3-connected iff no single removal leaves a cut vertex or disconnects.
    for u in range(count):
        if _has_cut_vertex(adjacency, skip=u):
            raise NotPolytopal("vertex-edge graph is not 3-connected")
    # Each facet's vertices and in-facet edges must form one cycle.
    facet_verts = defaultdict(list)
    for vi, fs in enumerate(verts):
        for f in fs:
            facet_verts[f].append(vi)
    for f, vids in facet_verts.items():
        vset = set(vids)
        degrees = {v: sum(1 for w in adjacency[v] if w in vset) for v in vids}
        if any(d != 2 for d in degrees.values()):
            raise NotPolytopal(f"facet {f} boundary is not a cycle")
        seen = {vids[0]}
        stack = [vids[0]]
        while stack:
            for w in adjacency[stack.pop()]:
                if w in vset and w not in seen:
                    seen.add(w)
                    stack.append(w)
        if seen != vset:
            raise NotPolytopal(f"facet {f} boundary is not a single cycle")


# ---------------------------------------------------------------------------
# faces and duality


def face_lattice(p: CombPolytope) -> FaceLattice:
    """Enumerate all faces as nonempty intersections of facet subsets.

    In a simple polytope every subset of a vertex's facet set is the full
    facet set of a face, so the enumeration walks the power sets of the
    vertex incidences.  The empty set is the top face (the polytope itself).
    """
    n = p.dim
    members: dict[frozenset, set] = defaultdict(set)
    for vi, fs in enumerate(p.vertices):
        for k in range(n + 1):
            for sub in itertools.combinations(fs, k):
                members[frozenset(sub)].add(vi)

    keys = sorted(members, key=lambda s: (len(s), tuple(sorted(s))))
    faces = [Face(facets=s, dim=n - len(s), vertices=tuple(sorted(members[s])))
             for s in keys]
    index = {f.facets: i for i, f in enumerate(faces)}
    covers = []
    for i, f in enumerate(faces):
        candidates = set()
        for vi in f.vertices:
            candidates.update(p.vertices[vi])
        for j in sorted(candidates - f.facets):
            bigger = f.facets | {j}
            if bigger in index:
                covers.append((i, index[bigger]))
    return FaceLattice(p, faces, covers)


def dual_sphere(p: CombPolytope) -> SimplicialSphere:
    """Boundary of the dual simplicial polytope.

    One sphere vertex per facet of ``p``; one top simplex per vertex of ``p``
    (its containing facets).
    """
    facets = tuple(sorted((frozenset(v) for v in p.vertices), key=sorted))
    return SimplicialSphere(dim=p.dim - 1, facets=facets)


def validate_sphere(facets) -> SimplicialSphere:
    """Check a facet list for closed-sphere consistency.

    Enforced: purity, every ridge in exactly two facets, connected facet
    adjacency, and the Euler characteristic of a sphere of the facets'
    dimension.  For two-dimensional complexes vertex links must additionally
    be single cycles.  These checks certify spheres in dimension two; in
    higher dimensions they are a pseudo-manifold screen, not a sphere proof.
    """
    raw = [frozenset(f) for f in facets]
    fs = sorted(set(raw), key=sorted)
    if len(fs) != len(raw):
        raise InvalidSphere("duplicate facets")
    if not fs:
        raise InvalidSphere("no facets")
    n = len(fs[0])
    if any(len(f) != n for f in fs):
        raise InvalidSphere("facets of mixed dimension")

    ridge_count = Counter()
    for f in fs:
        for r in itertools.combinations(sorted(f), n - 1):
            ridge_count[r] += 1
    for r, c in ridge_count.items():
        if c != 2:
            raise InvalidSphere(f"ridge {r} lies in {c} facets, expected 2")

    adjacency = defaultdict(set)
    by_ridge = defaultdict(list)
    for i, f in enumerate(fs):
        for r in itertools.combinations(sorted(f), n - 1):
            by_ridge[r].append(i)
    for pair in by_ridge.values():
        adjacency[pair[0]].add(pair[1])
        adjacency[pair[1]].add(pair[0])
    seen = {0}
    stack = [0]
    while stack:
        for j in adjacency[stack.pop()]:
            if j not in seen:
                seen.add(j)
                stack.append(j)
    if len(seen) != len(fs):
        raise InvalidSphere("facet adjacency is disconnected")

    all_faces = set()
    for f in fs:
        for k in range(1, n + 1):
            all_faces.update(itertools.combinations(sorted(f), k))
    euler = sum((-1) ** (len(s) - 1) for s in all_faces)
    if euler != 1 + (-1) ** (n - 1):
        raise InvalidSphere(f"Euler characteristic {euler} is not spherical")

    if n == 3:
        link_edges = defaultdict(list)
        for f in fs:
            for x in f:
                link_edges[x].append(f - {x})
        for x, pairs in link_edges.items():
            deg = Counter(itertools.chain.from_iterable(pairs))
            if any(d != 2 for d in deg.values()):
                raise InvalidSphere(f"link of vertex {x} is not a cycle")
            comp = {next(iter(pairs[0]))}
            grow = True
            while grow:
                grow = False
                for e in pairs:
                    if e & comp and not e <= comp:
                        comp |= e
                        grow = True
            if comp != set(deg):
                raise InvalidSphere(f"link of vertex {x} is not a single cycle")
    return SimplicialSphere(dim=n - 1, facets=tuple(fs))


def is_simplex(p: CombPolytope) -> bool:
    """True when ``p`` is the n-simplex (all n-subsets of n+1 facets occur)."""
    n = p.dim
    if p.facet_count != n + 1 or p.vertex_count != n + 1:
        return False
    expected = {tuple(c) for c in itertools.combinations(range(n + 1), n)}
    return set(p.vertices) == expected


def facet_graph(p: CombPolytope) -> nx.Graph:
    """Graph on facets; edge when two facets share a codimension-two face.

    Each edge carries the shared vertex set as attribute ``vertices``.  Two
    facets meeting in several codimension-two faces (possible only in the
    partially validated regime n >= 4) still give one edge; the attribute
    records the union of the shared vertices.
    """
    g = nx.Graph()
    g.add_nodes_from(range(p.facet_count))
    shared = defaultdict(list)
    for vi, fs in enumerate(p.vertices):
        for i, j in itertools.combinations(fs, 2):
            shared[(i, j)].append(vi)
    for (i, j), vids in shared.items():
        g.add_edge(i, j, vertices=tuple(vids))
    return g


# ---------------------------------------------------------------------------
# isomorphism of labelled set families

def _joint_refinement(families):
    """Iterated color refinement applied jointly to several set families.

    A family is ``(num_labels, sets)`` with sets over ``range(num_labels)``.
    Returns one color dict per family; colors are comparable across families
    because each round interns structurally equal signatures to the same id.
    """
    weights = []
    degs = []
    for num, sets in families:
        w = Counter()
        for s in sets:
            for a, b in itertools.combinations(sorted(s), 2):
                w[(a, b)] += 1
        weights.append(w)
        deg = Counter()
        for s in sets:
            for a in s:
                deg[a] += 1
        degs.append(deg)

    intern: dict = {}

    def intern_id(sig):
        return intern.setdefault(sig, len(intern))

    colors = []
    for fi, (num, sets) in enumerate(families):
        colors.append({a: intern_id(("init", degs[fi][a])) for a in range(num)})

    neighbors = []
    for fi, (num, sets) in enumerate(families):
        nb = defaultdict(dict)
        for (a, b), c in weights[fi].items():
            nb[a][b] = c
            nb[b][a] = c
        neighbors.append(nb)

    def profile(cols):
        return tuple(tuple(sorted(Counter(c.values()).values())) for c in cols)

    for _ in range(max(num for num, _ in families)):
        stamp = profile(colors)
        new_colors = []
        for fi, (num, sets) in enumerate(families):
            col = colors[fi]
            nxt = {}
            for a in range(num):
                around = tuple(sorted((col[b], w) for b, w in neighbors[fi][a].items()))
                nxt[a] = intern_id((col[a], around))
            new_colors.append(nxt)
        colors = new_colors
        if profile(colors) == stamp:
            break
    return colors


def _family_fingerprint(num_labels, sets):
    """Isomorphism-invariant fingerprint for bucketing set families."""
    (colors,) = _joint_refinement([(num_labels, sets)])
    hist = tuple(sorted(Counter(colors.values()).items()))
    set_sigs = tuple(sorted(tuple(sorted(colors[a] for a in s)) for s in sets))
    # Colors are local intern ids; only their partition structure is
    # invariant, so fingerprint the histogram shape and signature multiset.
    shape = tuple(sorted(c for _, c in hist))
    sig_shape = tuple(sorted(Counter(set_sigs).values()))
    sizes = tuple(sorted(len(s) for s in sets))
    return (num_labels, len(sets), sizes, shape, sig_shape)


def _family_isomorphism(num_a, sets_a, num_b, sets_b):
    """Label bijection carrying one set family onto the other, or ``None``.

    Color refinement narrows the candidates, then a backtracking search with
    pairwise co-occurrence pruning finds a bijection; the result is verified
    by direct comparison of the mapped family before being returned.
    """
    if num_a != num_b or len(sets_a) != len(sets_b):
        return None
    if sorted(map(len, sets_a)) != sorted(map(len, sets_b)):
        return None
    target = Counter(frozenset(s) for s in sets_b)
    colors_a, colors_b = _joint_refinement([(num_a, sets_a), (num_b, sets_b)])
    if sorted(Counter(colors_a.values()).items()) != sorted(Counter(colors_b.values()).items()):
        return None

    w_a, w_b = Counter(), Counter()
    for s in sets_a:
        for pair in itertools.combinations(sorted(s), 2):
            w_a[pair] += 1
    for s in sets_b:
        for pair in itertools.combinations(sorted(s), 2):
            w_b[pair] += 1

    def weight(w, x, y):
        return w[(x, y)] if x < y else w[(y, x)]

    by_color = defaultdict(list)
    for b in range(num_b):
        by_color[colors_b[b]].append(b)
    order = sorted(range(num_a), key=lambda a: (len(by_color[colors_a[a]]), a))

    mapping: dict[int, int] = {}
    used = set()

    def extend(i):
        if i == num_a:
            mapped = Counter(frozenset(mapping[x] for x in s) for s in sets_a)
            return mapped == target
        a = order[i]
        for b in by_color[colors_a[a]]:
            if b in used:
                continue
            ok = all(weight(w_a, a, a2) == weight(w_b, b, b2)
                     for a2, b2 in mapping.items())
            if not ok:
                continue
            mapping[a] = b
            used.add(b)
            if extend(i + 1):
                return True
            del mapping[a]
            used.discard(b)
        return False

    if extend(0):
        return dict(mapping)
    return None


def combinatorial_isomorphic(p: CombPolytope, q: CombPolytope):
    """Facet bijection inducing a vertex bijection, or ``None``.

    The bijection is returned as a list ``perm`` with ``perm[i]`` the facet
    of ``q`` matching facet ``i`` of ``p``; it is re-verified against the
    incidence before being returned.
    """
    if p.dim != q.dim or p.facet_count != q.facet_count:
        return None
    if p.vertex_count != q.vertex_count:
        return None
    mapping = _family_isomorphism(p.facet_count, [frozenset(v) for v in p.vertices],
                                  q.facet_count, [frozenset(v) for v in q.vertices])
    if mapping is None:
        return None
    perm = [mapping[i] for i in range(p.facet_count)]
    image = {tuple(sorted(perm[f] for f in v)) for v in p.vertices}
    if image != set(q.vertices):
        raise AssertionError("isomorphism search returned an invalid bijection")
    return perm


# ---------------------------------------------------------------------------
# wire format


def polytope_to_json(p: CombPolytope) -> dict:
    obj = {"dim": p.dim, "facets": p.facet_count,
           "vertices": [list(v) for v in p.vertices]}
    if p.facet_labels is not None:
        obj["facet_labels"] = list(p.facet_labels)
    return obj


def polytope_from_json(data) -> CombPolytope:
    """Load the JSON wire format; inner lists must be strictly increasing."""
    if isinstance(data, (str, bytes)):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as e:
            raise ParseError(f"invalid JSON: {e}") from e
    if not isinstance(data, dict):
        raise ParseError("polytope JSON must be an object")
    for key in ("dim", "facets", "vertices"):
        if key not in data:
            raise ParseError(f"missing key {key!r}")
    verts = data["vertices"]
    if not isinstance(verts, list) or not all(isinstance(v, list) for v in verts):
        raise ParseError("'vertices' must be a list of lists")
    for v in verts:
        if any(not isinstance(f, int) or isinstance(f, bool) for f in v):
            raise ParseError(f"non-integer facet index in {v}")
        if any(b <= a for a, b in zip(v, v[1:])):
            raise ParseError(f"vertex {v} is not strictly increasing")
        if any(f < 0 or f >= data["facets"] for f in v):
            raise ParseError(f"facet index out of range in {v}")
    p = validate_polytope(data["dim"], verts, data.get("facet_labels"))
    if p.facet_count != data["facets"]:
        raise ParseError(
            f"header says {data['facets']} facets, incidence uses {p.facet_count}")
    return p
