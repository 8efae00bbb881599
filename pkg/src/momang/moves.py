"""Vertex cuts, simplex-facet collapses, flips and prismatic circuits.

The central decision procedure is :func:`recognize_vertexcut_reducible`: a
simple 3-polytope arises from the tetrahedron by iterated vertex truncation
exactly when its dual sphere is stacked, i.e. when greedily removing
degree-3 dual vertices (= collapsing triangular facets) terminates at the
tetrahedron.  Removing any admissible degree-3 vertex of a stacked sphere
leaves a stacked sphere (the planar-3-tree property), so the greedy order
is irrelevant for the verdict; the test suite still cross-checks against an
exhaustive search over collapse orders.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass

from .errors import (
    BadParameters,
    CollapseInadmissible,
    DimensionUnsupported,
    GuardExceeded,
    IsSimplex,
    LinkNotStandard,
    NoSuchFacet,
    NoSuchVertex,
    NotAFace,
    NotSimplexFacet,
)
from .polytope import (
    CombPolytope,
    SimplicialSphere,
    _family_fingerprint,
    _family_isomorphism,
    dual_sphere,
    facet_graph,
    is_simplex,
    validate_polytope,
    validate_sphere,
)


@dataclass(frozen=True)
class FlipMove:
    """A flip recorded on the dual sphere.

    ``target`` is the flipped face as a set of dual vertices, i.e. facet
    indices of the polytope being built; ``codim`` is its size, which equals
    the codimension of the corresponding polytope face.  ``kind`` is
    ``"vertex"`` for the codimension-n case (a vertex truncation) and
    ``"general"`` otherwise.
    """

    kind: str
    target: tuple[int, ...]
    codim: int


@dataclass(frozen=True)
class ReductionTrace:
    """Replayable record of greedy simplex-facet collapses.

    ``steps[k]`` is the collapsed facet index in the polytope existing at
    that moment (facet indices above it shift down by one afterwards).
    When ``reducible`` is true, ``end`` is the tetrahedron and replaying the
    reversed steps as vertex cuts rebuilds ``start`` up to isomorphism; when
    false, ``end`` is the stuck polytope the greedy run halted at.
    """

    reducible: bool
    steps: tuple[int, ...]
    facet_counts: tuple[int, ...]
    start: CombPolytope
    end: CombPolytope


@dataclass(frozen=True)
class PrismaticCircuit:
    """A cycle of facets, consecutive ones adjacent, others not, whose
    consecutive intersection edges are pairwise disjoint."""

    facets: tuple[int, ...]
    edges: tuple[tuple[int, ...], ...]


# ---------------------------------------------------------------------------
# vertex cuts and collapses


def vertex_cut(p: CombPolytope, vertex_index: int) -> CombPolytope:
    """Truncate a vertex: replace it by a new simplex facet.

    The new facet gets index ``m``; the vertex's n facets each keep n-1 of
    the n new vertices.  Facet count grows by one, vertex count by n-1.
    """
    if not 0 <= vertex_index < p.vertex_count:
        raise NoSuchVertex(f"vertex {vertex_index} of {p.vertex_count}")
    target = set(p.vertices[vertex_index])
    new_facet = p.facet_count
    verts = [v for i, v in enumerate(p.vertices) if i != vertex_index]
    for f in sorted(target):
        verts.append(tuple(sorted((target - {f}) | {new_facet})))
    return validate_polytope(p.dim, verts)


def _collapse_data(p: CombPolytope, facet_index: int):
    """Vertices on the facet and the union of their other facets."""
    on = [i for i, v in enumerate(p.vertices) if facet_index in v]
    neighbors = set()
    for i in on:
        neighbors.update(p.vertices[i])
    neighbors.discard(facet_index)
    return on, neighbors


def collapse_admissible(p: CombPolytope, facet_index: int) -> bool:
    """Whether :func:`simplex_facet_collapse` accepts this facet."""
    if not 0 <= facet_index < p.facet_count or is_simplex(p):
        return False
    on, neighbors = _collapse_data(p, facet_index)
    if len(on) != p.dim or len(neighbors) != p.dim:
        return False
    return tuple(sorted(neighbors)) not in set(p.vertices)


def simplex_facet_collapse(p: CombPolytope, facet_index: int) -> CombPolytope:
    """Undo a vertex cut: merge a simplex facet's vertices into one.

    Admissible when the facet has exactly n vertices, its dual vertex has
    exactly n neighbours, and those neighbours do not already meet at a
    vertex of ``p``.  The merged vertex lies in the n facets that surrounded
    the collapsed one; facet indices above the removed facet shift down.
    """
    if not 0 <= facet_index < p.facet_count:
        raise NoSuchFacet(f"facet {facet_index} of {p.facet_count}")
    n = p.dim
    on, neighbors = _collapse_data(p, facet_index)
    if len(on) != n:
        raise NotSimplexFacet(
            f"facet {facet_index} has {len(on)} vertices, expected {n}")
    if is_simplex(p):
        raise IsSimplex("polytope is already the simplex")
    if len(neighbors) != n:
        raise CollapseInadmissible(
            f"facet {facet_index} is adjacent to {len(neighbors)} facets, expected {n}")
    if tuple(sorted(neighbors)) in set(p.vertices):
        raise CollapseInadmissible(
            f"the facets around facet {facet_index} already meet at a vertex")

    def relabel(f):
        return f if f < facet_index else f - 1

    on_set = set(on)
    verts = [tuple(sorted(relabel(f) for f in v))
             for i, v in enumerate(p.vertices) if i not in on_set]
    verts.append(tuple(sorted(relabel(f) for f in neighbors)))
    return validate_polytope(n, verts)


# ---------------------------------------------------------------------------
# recognition


def recognize_vertexcut_reducible(p: CombPolytope) -> ReductionTrace:
    """Greedy reduction to the tetrahedron by collapsing triangular facets.

    Collapses the lowest-indexed admissible triangle at every step so traces
    are deterministic.  Returns a trace with ``reducible=True`` and
    ``end`` the tetrahedron, or ``reducible=False`` with the stuck polytope.
    """
    if p.dim != 3:
        raise DimensionUnsupported(f"recognition needs dim 3, got {p.dim}")
    steps: list[int] = []
    counts: list[int] = []
    cur = p
    while not is_simplex(cur):
        for f in range(cur.facet_count):
            if collapse_admissible(cur, f):
                cur = simplex_facet_collapse(cur, f)
                steps.append(f)
                counts.append(cur.facet_count)
                break
        else:
            return ReductionTrace(False, tuple(steps), tuple(counts), p, cur)
    return ReductionTrace(True, tuple(steps), tuple(counts), p, cur)


def replay_collapses(start: CombPolytope, steps) -> CombPolytope:
    """Apply recorded collapse steps to ``start`` and return the result."""
    cur = start
    for f in steps:
        cur = simplex_facet_collapse(cur, f)
    return cur


def rebuild_by_cuts(trace: ReductionTrace) -> CombPolytope:
    """Replay a trace backwards as vertex cuts starting from ``trace.end``.

    Walks the collapse sequence forward once to recover each merged vertex,
    then cuts them back in reverse order while tracking the facet relabeling
    each collapse introduced.  The result is a polytope built from
    ``trace.end`` purely by vertex cuts; for a reducible trace it is
    isomorphic to ``trace.start``.
    """
    stages = [trace.start]
    merged_sets = []
    cur = trace.start
    for f in trace.steps:
        _, neighbors = _collapse_data(cur, f)
        merged = tuple(sorted(x if x < f else x - 1 for x in neighbors))
        cur = simplex_facet_collapse(cur, f)
        stages.append(cur)
        merged_sets.append(merged)

    q = trace.end
    # pi maps facet labels of stages[k] to facet labels of q.
    pi = list(range(trace.end.facet_count))
    for k in range(len(trace.steps) - 1, -1, -1):
        want = frozenset(pi[f] for f in merged_sets[k])
        (v_idx,) = [i for i, v in enumerate(q.vertices) if frozenset(v) == want]
        fresh = q.facet_count
        q = vertex_cut(q, v_idx)
        t = trace.steps[k]
        pi = [pi[i] if i < t else (fresh if i == t else pi[i - 1])
              for i in range(stages[k].facet_count)]
    return q


def trace_to_json(trace: ReductionTrace) -> dict:
    return {
        "verdict": "yes" if trace.reducible else "no",
        "steps": list(trace.steps),
        "intermediate_facet_counts": list(trace.facet_counts),
    }


# ---------------------------------------------------------------------------
# bistellar flips on simplicial spheres


def bistellar_flip(k: SimplicialSphere, face) -> SimplicialSphere:
    """Replace the star of a face by the complementary configuration.

    For a face with ``s`` vertices in a complex with facet size ``n`` the
    move needs the link to be the boundary of an ``(n-s)``-vertex simplex
    that is not yet a face; the star is then swapped for the join of the
    face's boundary with that simplex.  When ``s == n`` the face is a facet
    and the move stacks a new apex onto it.
    """
    sigma = frozenset(face)
    if not sigma:
        raise NotAFace("empty face")
    n = k.dim + 1
    facets = set(k.facets)
    star = [t for t in facets if sigma <= t]
    if not star:
        raise NotAFace(f"{tuple(sorted(sigma))} is not a face")

    if len(sigma) == n:
        apex = max(max(t) for t in facets) + 1
        new = (facets - {sigma}) | {(sigma - {u}) | {apex} for u in sigma}
    else:
        comp = frozenset().union(*(t - sigma for t in star))
        expected = n + 1 - len(sigma)
        if len(comp) != expected or len(star) != expected:
            raise LinkNotStandard(
                f"link of {tuple(sorted(sigma))} is not a simplex boundary")
        if {t - sigma for t in star} != {comp - {x} for x in comp}:
            raise LinkNotStandard(
                f"link of {tuple(sorted(sigma))} is not a simplex boundary")
        if any(comp <= t for t in facets):
            raise LinkNotStandard(
                f"complementary simplex {tuple(sorted(comp))} is already a face")
        new = (facets - set(star)) | {(sigma - {u}) | comp for u in sigma}
    return validate_sphere(new)


# ---------------------------------------------------------------------------
# prismatic circuits


def prismatic_circuits(p: CombPolytope, k: int) -> list[PrismaticCircuit]:
    """All prismatic k-circuits, one per cyclic order up to rotation/reflection.

    Brute force over k-subsets of facets whose induced facet-graph is a
    single cycle (so non-consecutive facets are non-adjacent), keeping those
    whose k consecutive intersection edges share no vertex.
    """
    if p.dim != 3:
        raise DimensionUnsupported(f"prismatic circuits need dim 3, got {p.dim}")
    if k < 3:
        raise BadParameters(f"circuit length must be >= 3, got {k}")
    g = facet_graph(p)
    out = []
    for combo in itertools.combinations(range(p.facet_count), k):
        sub = g.subgraph(combo)
        if sub.number_of_edges() != k or any(d != 2 for _, d in sub.degree):
            continue
        order = _cycle_order(sub, combo)
        if order is None:
            continue
        edges = [tuple(g.edges[order[i], order[(i + 1) % k]]["vertices"])
                 for i in range(k)]
        if _pairwise_disjoint(edges):
            out.append(PrismaticCircuit(facets=tuple(order), edges=tuple(edges)))
    return out


def _cycle_order(sub, combo):
    """Walk the 2-regular subgraph; canonical start/direction; None if split."""
    start = min(combo)
    prev, cur = None, start
    order = [start]
    while True:
        nbrs = sorted(x for x in sub.neighbors(cur) if x != prev)
        if not nbrs:
            return None
        prev, cur = cur, nbrs[0]
        if cur == start:
            break
        order.append(cur)
        if len(order) > len(combo):
            return None
    return order if len(order) == len(combo) else None


def _pairwise_disjoint(edges) -> bool:
    seen = set()
    for e in edges:
        for v in e:
            if v in seen:
                return False
            seen.add(v)
    return True


# ---------------------------------------------------------------------------
# flip certificates


def _sphere_key(k: SimplicialSphere):
    labels = k.vertex_labels
    pos = {x: i for i, x in enumerate(labels)}
    sets = [frozenset(pos[x] for x in f) for f in k.facets]
    return len(labels), sets


def _spheres_isomorphic(a: SimplicialSphere, b: SimplicialSphere) -> bool:
    na, sa = _sphere_key(a)
    nb, sb = _sphere_key(b)
    return _family_isomorphism(na, sa, nb, sb) is not None


def simplex_boundary_sphere(n: int) -> SimplicialSphere:
    """The boundary of the n-simplex: all n-subsets of n+1 vertices."""
    facets = tuple(frozenset(c)
                   for c in itertools.combinations(range(n + 1), n))
    return SimplicialSphere(dim=n - 1, facets=facets)


def psc_flip_certificate(p: CombPolytope, depth: int,
                         state_cap: int = 100_000):
    """Search for a flip sequence of codimension >= 3 reaching ``p``.

    Breadth-first search over bistellar moves at faces with 3..n vertices,
    starting from the boundary of the n-simplex and deduplicating states up
    to isomorphism.  Returns the move list on success and ``None`` when no
    sequence exists within ``depth`` levels; exhausting the search bound is
    not a proof of impossibility.  Raises :class:`GuardExceeded` once more
    than ``state_cap`` states have been generated.
    """
    n = p.dim
    if n < 3:
        raise DimensionUnsupported(
            f"codimension >= 3 flips need dim >= 3, got {n}")
    if depth < 0:
        raise BadParameters(f"depth must be >= 0, got {depth}")
    target = dual_sphere(p)
    target_fp = _family_fingerprint(*_sphere_key(target))
    start = simplex_boundary_sphere(n)

    def matches(state):
        return (_family_fingerprint(*_sphere_key(state)) == target_fp
                and _spheres_isomorphic(state, target))

    if matches(start):
        return []

    seen: dict = {}

    def register(state) -> bool:
        fp = _family_fingerprint(*_sphere_key(state))
        bucket = seen.setdefault(fp, [])
        for other in bucket:
            if _spheres_isomorphic(state, other):
                return False
        bucket.append(state)
        return True

    register(start)
    frontier = deque([(start, [])])
    generated = 1
    for _ in range(depth):
        next_frontier = deque()
        while frontier:
            state, path = frontier.popleft()
            for sigma in _candidate_faces(state, n):
                try:
                    new = bistellar_flip(state, sigma)
                except LinkNotStandard:
                    continue
                generated += 1
                if generated > state_cap:
                    raise GuardExceeded(
                        f"flip search generated more than {state_cap} states")
                kind = "vertex" if len(sigma) == n else "general"
                move = FlipMove(kind=kind, target=tuple(sorted(sigma)),
                                codim=len(sigma))
                if matches(new):
                    return path + [move]
                if register(new):
                    next_frontier.append((new, path + [move]))
        frontier = next_frontier
        if not frontier:
            break
    return None


def _candidate_faces(k: SimplicialSphere, n: int):
    faces = set()
    for f in k.facets:
        for s in range(3, n + 1):
            faces.update(itertools.combinations(sorted(f), s))
    return sorted(faces)


def certificate_to_json(moves) -> dict:
    if moves is None:
        return {"moves": None}
    return {"moves": [{"kind": mv.kind, "face": list(mv.target),
                       "codim": mv.codim} for mv in moves]}


def replay_flip_certificate(n: int, moves) -> SimplicialSphere:
    """Apply a certificate to the n-simplex boundary and return the result."""
    state = simplex_boundary_sphere(n)
    for mv in moves:
        state = bistellar_flip(state, mv.target)
    return state
