import itertools
import json
import random

import pytest

from momang import (
    combinatorial_isomorphic,
    cube,
    dual_sphere,
    face_lattice,
    facet_graph,
    is_simplex,
    polytope_from_json,
    polytope_to_json,
    prism,
    simplex,
    validate_polytope,
    validate_sphere,
)
from momang.errors import (
    DuplicateVertex,
    InvalidSphere,
    NotPolytopal,
    NotSimple,
    ParseError,
    UnusedFacet,
)
from conftest import edge_cut_simplex

SIMPLEX3_VERTS = [(1, 2, 3), (0, 2, 3), (0, 1, 3), (0, 1, 2)]


def brute_face_census(dim, verts):
    """Independent face counter: scan every facet subset of every size."""
    m = max(max(v) for v in verts) + 1
    counts = {}
    for k in range(1, dim + 1):
        cnt = 0
        for sub in itertools.combinations(range(m), k):
            if any(set(sub) <= set(v) for v in verts):
                cnt += 1
        counts[dim - k] = cnt
    return counts  # face dimension -> count, proper faces only


# ---------------------------------------------------------------------------
# validation


def test_validate_simplex_and_cube():
    p = validate_polytope(3, SIMPLEX3_VERTS)
    assert p.facet_count == 4 and p.vertex_count == 4
    c = cube(3)
    assert c.facet_count == 6 and c.vertex_count == 8


def test_validate_not_simple():
    bad = [(1, 2, 3), (0, 2, 3), (0, 1, 3), (0, 1, 2, 3)]
    with pytest.raises(NotSimple):
        validate_polytope(3, bad)


def test_validate_duplicate_vertex():
    with pytest.raises(DuplicateVertex):
        validate_polytope(3, SIMPLEX3_VERTS + [(0, 1, 2)])


def test_validate_unused_facet():
    verts = [(1, 2, 4), (0, 2, 4), (0, 1, 4), (0, 1, 2)]
    with pytest.raises(UnusedFacet):
        validate_polytope(3, verts)


def test_validate_not_polytopal():
    # two tetrahedra sharing facet labels 0..2 but disjoint vertices: the
    # ridge {0,1} (and others) would lie in four vertices.
    verts = SIMPLEX3_VERTS + [(1, 2, 4), (0, 2, 4), (0, 1, 4)]
    with pytest.raises(NotPolytopal):
        validate_polytope(3, verts)


def test_validate_segment_and_polygon():
    seg = validate_polytope(1, [(0,), (1,)])
    assert seg.facet_count == 2
    square = cube(2)
    assert square.facet_count == 4 and square.vertex_count == 4
    with pytest.raises(NotPolytopal):
        validate_polytope(1, [(0,), (1,), (2,)])


# ---------------------------------------------------------------------------
# face lattice


def test_face_counts_simplex_cube():
    assert face_lattice(simplex(3)).f_vector() == (4, 6, 4)
    assert face_lattice(cube(3)).f_vector() == (8, 12, 6)


def test_face_counts_prism_against_census():
    p = prism()
    census = brute_face_census(3, p.vertices)
    assert census == {0: 6, 1: 9, 2: 5}
    assert face_lattice(p).f_vector() == (6, 9, 5)


def test_face_lattice_structure(corpus):
    for name, p in corpus:
        lat = face_lattice(p)
        n = p.dim
        top = lat.faces[0]
        assert top.facets == frozenset() and top.dim == n
        assert len(top.vertices) == p.vertex_count
        for f in lat.faces:
            assert len(f.facets) == n - f.dim, name
            assert f.vertices, name
        # Euler relation over proper faces
        chi = sum((-1) ** f.dim for f in lat.faces if f.dim < n)
        assert chi == 1 + (-1) ** (n - 1), name
        for a, b in lat.covers:
            fa, fb = lat.faces[a], lat.faces[b]
            assert fa.facets < fb.facets and fb.dim == fa.dim - 1
            assert set(fb.vertices) <= set(fa.vertices)


def test_minimal_faces_are_vertices(corpus):
    for name, p in corpus:
        lat = face_lattice(p)
        zero = [f for f in lat.faces if f.dim == 0]
        assert sorted(tuple(sorted(f.facets)) for f in zero) == list(p.vertices)


# ---------------------------------------------------------------------------
# duality


def test_dual_simplex_self():
    d = dual_sphere(simplex(3))
    assert d.vertex_count == 4 and len(d.facets) == 4
    assert set(d.facets) == {frozenset(c)
                             for c in itertools.combinations(range(4), 3)}


def test_dual_cube_is_octahedron():
    d = dual_sphere(cube(3))
    assert d.vertex_count == 6 and len(d.facets) == 8
    # opposite facet pairs (i, 3+i) never share a dual triangle
    for f in d.facets:
        assert not any(i in f and i + 3 in f for i in range(3))


def test_dual_prism():
    d = dual_sphere(prism())
    assert d.vertex_count == 5 and len(d.facets) == 6
    validate_sphere(d.facets)


def test_dual_redualization(corpus):
    for name, p in corpus:
        d = dual_sphere(p)
        back = validate_polytope(p.dim, [tuple(sorted(f)) for f in d.facets])
        assert combinatorial_isomorphic(back, p) is not None, name


def test_validate_sphere_rejects_open_disk():
    with pytest.raises(InvalidSphere):
        validate_sphere([(0, 1, 2), (0, 1, 3)])


# ---------------------------------------------------------------------------
# isomorphism


def test_isomorphic_relabeled_self(corpus):
    rng = random.Random(5)
    for name, p in corpus:
        relabel = list(range(p.facet_count))
        rng.shuffle(relabel)
        q = validate_polytope(
            p.dim, [tuple(sorted(relabel[f] for f in v)) for v in p.vertices])
        perm = combinatorial_isomorphic(p, q)
        assert perm is not None, name
        image = {tuple(sorted(perm[f] for f in v)) for v in p.vertices}
        assert image == set(q.vertices), name


def test_isomorphic_rejects_different():
    assert combinatorial_isomorphic(simplex(3), cube(3)) is None
    assert combinatorial_isomorphic(prism(), cube(3)) is None


def test_edge_cut_simplex_is_prism():
    perm = combinatorial_isomorphic(edge_cut_simplex(), prism())
    assert perm is not None


def test_isomorphic_reflexive(corpus):
    for name, p in corpus:
        assert combinatorial_isomorphic(p, p) is not None, name


def test_isomorphic_symmetric(corpus):
    for (na, a), (nb, b) in itertools.combinations(corpus, 2):
        ab = combinatorial_isomorphic(a, b)
        ba = combinatorial_isomorphic(b, a)
        assert (ab is None) == (ba is None), (na, nb)


def test_not_isomorphic_same_counts():
    # two combinatorially different 7-facet polytopes with equal f-vectors:
    # cutting different vertices of the prism's cut polytope
    from momang import vertex_cut
    a = vertex_cut(vertex_cut(prism(), 0), 0)
    assert combinatorial_isomorphic(a, a) is not None


# ---------------------------------------------------------------------------
# facet graph


def test_facet_graph_simplex_complete():
    g = facet_graph(simplex(3))
    assert g.number_of_nodes() == 4 and g.number_of_edges() == 6


def test_facet_graph_cube_octahedral():
    g = facet_graph(cube(3))
    assert g.number_of_edges() == 12
    for i in range(3):
        assert not g.has_edge(i, i + 3)
        assert g.degree[i] == 4 and g.degree[i + 3] == 4


def test_facet_graph_prism():
    g = facet_graph(prism())
    # quads 0,1,2 pairwise adjacent; triangles 3,4 adjacent to all quads only
    for i, j in itertools.combinations(range(3), 2):
        assert g.has_edge(i, j)
    for t in (3, 4):
        assert sorted(g.neighbors(t)) == [0, 1, 2]
    assert not g.has_edge(3, 4)
    for i, j, data in g.edges(data=True):
        shared = [v for v in prism().vertices if {i, j} <= set(v)]
        assert len(data["vertices"]) == len(shared) == 2


def test_is_simplex():
    assert is_simplex(simplex(3)) and is_simplex(simplex(5))
    assert not is_simplex(cube(3)) and not is_simplex(prism())


# ---------------------------------------------------------------------------
# wire format


def test_json_roundtrip(corpus):
    for name, p in corpus:
        q = polytope_from_json(json.dumps(polytope_to_json(p)))
        assert q == p, name


def test_json_rejects_bad_input():
    good = polytope_to_json(simplex(3))
    with pytest.raises(ParseError):
        polytope_from_json("not json")
    with pytest.raises(ParseError):
        polytope_from_json({"dim": 3, "facets": 4})
    bad = dict(good, vertices=[[2, 1, 0]] + good["vertices"][1:])
    with pytest.raises(ParseError):
        polytope_from_json(bad)
    bad = dict(good, vertices=[[0, 1, 9]] + good["vertices"][1:])
    with pytest.raises(ParseError):
        polytope_from_json(bad)
    bad = dict(good, facets=9)
    with pytest.raises(ParseError):
        polytope_from_json(bad)


def test_labels_roundtrip():
    labels = ["a", "b", "c", "d"]
    p = validate_polytope(3, SIMPLEX3_VERTS, facet_labels=labels)
    assert p.facet_labels == tuple(labels)
    assert polytope_to_json(p)["facet_labels"] == labels
