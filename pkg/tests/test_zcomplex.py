import itertools
from collections import Counter

import pytest

from momang import (
    build_chamber_complex,
    classify_edge_types,
    complex_summary,
    connected_components,
    cube,
    doubling_filtration,
    euler_characteristic,
    euler_characteristic_from_lattice,
    face_lattice,
    fixed_point_components,
    orientability,
    prism,
    simplex,
)
from momang.errors import GuardExceeded, NoSuchFacet
from conftest import cut_cube


def zcomplex_corpus():
    return [("simplex1", simplex(1)), ("simplex2", simplex(2)),
            ("simplex3", simplex(3)), ("prism", prism()),
            ("cube", cube(3)), ("cut_cube", cut_cube())]


def facet_adjacency_count(p, i):
    """Number of facets sharing an edge (codim-2 face) with facet i."""
    return len({j for v in p.vertices if i in v for j in v if j != i})


def edge_pairs(p):
    """All codimension-2 faces as sorted facet pairs."""
    return sorted({pair for v in p.vertices
                   for pair in itertools.combinations(v, 2)})


# ---------------------------------------------------------------------------
# cells


def test_circle_from_segment():
    z = build_chamber_complex(simplex(1))
    assert z.cells_by_dim == (4, 4)
    assert euler_characteristic(z) == 0
    assert connected_components(z) == 1


def test_sphere_from_triangle():
    z = build_chamber_complex(simplex(2))
    assert z.cells_by_dim == (6, 12, 8)
    assert euler_characteristic(z) == 2
    assert connected_components(z) == 1


def test_torus_from_cube():
    z = build_chamber_complex(cube(3))
    assert z.cells_by_dim == (64, 192, 192, 64)
    assert euler_characteristic(z) == 0


def test_cell_count_law(corpus):
    for name, p in corpus:
        if p.facet_count > 8:
            continue
        z = build_chamber_complex(p)
        per_face = Counter(fidx for fidx, _ in z.cells)
        for fidx, face in enumerate(z.lattice.faces):
            expected = 1 << (z.m - len(face.facets))
            assert per_face[fidx] == expected, (name, sorted(face.facets))


def test_cells_by_dim_against_lattice_oracle():
    # oracle: counts derived only from the face lattice
    for name, p in zcomplex_corpus():
        z = build_chamber_complex(p)
        lat = face_lattice(p)
        expect = [0] * (p.dim + 1)
        for f in lat.faces:
            expect[f.dim] += 1 << (p.facet_count - len(f.facets))
        assert list(z.cells_by_dim) == expect, name


def test_euler_matches_lattice_form():
    for name, p in zcomplex_corpus():
        z = build_chamber_complex(p)
        assert euler_characteristic(z) == euler_characteristic_from_lattice(p), name


def test_euler_values():
    assert euler_characteristic_from_lattice(simplex(1)) == 0
    assert euler_characteristic_from_lattice(simplex(2)) == 2
    for p in (simplex(3), cube(3), prism(), cut_cube()):
        assert euler_characteristic_from_lattice(p) == 0
    # 4-dimensional check: chi of the glued manifold over the 4-simplex is 2
    assert euler_characteristic_from_lattice(simplex(4)) == 2


def test_components_single(corpus):
    for name, p in corpus:
        if p.facet_count > 8:
            continue
        assert connected_components(build_chamber_complex(p)) == 1, name


def test_guard():
    with pytest.raises(GuardExceeded):
        build_chamber_complex(cube(3), guard=5)
    with pytest.raises(GuardExceeded):
        doubling_filtration(cube(3), guard=5)


def test_group_action_on_cells():
    for name, p in [("prism", prism()), ("simplex2", simplex(2))]:
        z = build_chamber_complex(p)
        m = p.facet_count
        top = z.lattice.face_index(())
        # free and transitive on chambers
        for g in (0, 1, (1 << m) - 1, 5 % (1 << m)):
            images = {z.translate(g, (top, c))[1] for c in z.chambers()}
            assert images == set(z.chambers()), name
            if g:
                assert all(z.translate(g, (top, c))[1] != c
                           for c in z.chambers()), name
        # translation lands on cells and composes like the group law
        for cell in z.cells:
            for g1, g2 in [(1, 2), (3, 5 % (1 << m))]:
                once = z.translate(g2, z.translate(g1, cell))
                both = z.translate(g1 ^ g2, cell)
                assert once == both, name
                assert once in z.cell_ids, name


# ---------------------------------------------------------------------------
# fixed point sets


def test_fixed_sets_counts():
    z = build_chamber_complex(simplex(3))
    for i in range(4):
        assert fixed_point_components(z, i).count == 1
    z = build_chamber_complex(cube(3))
    for i in range(6):
        assert fixed_point_components(z, i).count == 2
    z = build_chamber_complex(prism())
    assert fixed_point_components(z, 3).count == 2
    assert fixed_point_components(z, 4).count == 2
    with pytest.raises(NoSuchFacet):
        fixed_point_components(z, 9)


def test_fixed_sets_formula():
    # conjectured count 2^(m - 1 - a_i) with a_i the facet adjacency degree
    for name, p in zcomplex_corpus():
        z = build_chamber_complex(p)
        for i in range(p.facet_count):
            if p.dim < 2:
                continue
            a_i = facet_adjacency_count(p, i)
            got = fixed_point_components(z, i).count
            assert got == 1 << (p.facet_count - 1 - a_i), (name, i)


def test_fixed_set_cells_cover_facet():
    p = prism()
    z = build_chamber_complex(p)
    fs = fixed_point_components(z, 3)
    for comp in fs.components:
        assert comp
        for fidx, _ in comp:
            assert 3 in z.lattice.faces[fidx].facets


# ---------------------------------------------------------------------------
# orientability


def test_orientability(corpus):
    for name, p in corpus:
        if p.facet_count > 8:
            continue
        ok, signs = orientability(build_chamber_complex(p))
        assert ok, name
        assert signs[0] == 1
        for g in range(1 << p.facet_count):
            assert signs[g] == (1 if bin(g).count("1") % 2 == 0 else -1)


# ---------------------------------------------------------------------------
# filtration


def test_filtration_facet_law():
    for name, p in zcomplex_corpus():
        m = p.facet_count
        stages = doubling_filtration(p)
        assert len(stages) == m + 1
        for st in stages:
            assert len(st.facets) == (m - st.j) * (1 << st.j), (name, st.j)
            assert st.chamber_count == 1 << st.j
        assert stages[m].facets == ()
        assert stages[m].boundary_components == 0


def test_filtration_triangle_matches_known_values():
    stages = doubling_filtration(simplex(2))
    assert [len(st.facets) for st in stages] == [3, 4, 4, 0]


def test_filtration_simplex3_stage2():
    stages = doubling_filtration(simplex(3))
    assert len(stages[2].facets) == 8


def test_filtration_doubling_law():
    for name, p in zcomplex_corpus():
        stages = doubling_filtration(p)
        lat = face_lattice(p)
        for j in range(p.facet_count):
            assert stages[j + 1].chamber_count == 2 * stages[j].chamber_count
            # independent locus count: cells of stage j over faces through
            # facet j (bits below j and outside the face, hence one factor
            # of 2 per doubled generator off the face)
            locus = 0
            for f in lat.faces:
                if j in f.facets:
                    below = sum(1 for x in range(j) if x not in f.facets)
                    locus += 1 << below
            assert stages[j + 1].cell_count == 2 * stages[j].cell_count - locus, name


def test_boundary_component_counts():
    # double of a triangle along one edge is a disk: connected boundary
    stages = doubling_filtration(simplex(2))
    assert [st.boundary_components for st in stages] == [1, 1, 1, 0]
    # doubling a segment along one endpoint gives a longer segment; only
    # the second doubling closes the circle
    stages = doubling_filtration(simplex(1))
    assert [st.boundary_components for st in stages] == [2, 2, 0]


# ---------------------------------------------------------------------------
# edge typing


def expected_edge_type_counts(p, j):
    """Closed-form oracle: count boundary codim-2 cells by type."""
    type1 = type2 = 0
    for a, b in edge_pairs(p):
        if a >= j:
            type1 += 1 << j
        elif b >= j:
            type2 += 1 << max(j - 1, 0)
    return type1, type2


def test_edge_types_stage_zero_all_type1():
    st = doubling_filtration(simplex(3))[0]
    summary = classify_edge_types(st)
    assert summary.type2 == 0 and summary.type1 == 6
    assert all(r.kind == "I" for r in summary.records)


def test_edge_types_simplex3_stage1():
    st = doubling_filtration(simplex(3))[1]
    summary = classify_edge_types(st)
    type2_faces = {r.facet_pair for r in summary.records if r.kind == "II"}
    assert type2_faces == {(0, 1), (0, 2), (0, 3)}
    assert summary.type2 == 3 and summary.type1 == 6
    for r in summary.records:
        if r.kind == "II":
            (i1, g1), (i2, g2) = r.pieces
            assert i1 == i2 and g1 ^ g2 == 1 << r.facet_pair[0]
        else:
            (i1, g1), (i2, g2) = r.pieces
            assert i1 != i2 and g1 == g2


def test_edge_types_cube_stage1():
    st = doubling_filtration(cube(3))[1]
    summary = classify_edge_types(st)
    expect1, expect2 = expected_edge_type_counts(cube(3), 1)
    assert (summary.type1, summary.type2) == (expect1, expect2)
    assert summary.type2 == 4  # one cell per edge of the doubled facet


def test_edge_types_match_oracle_all_stages():
    for name, p in zcomplex_corpus():
        if p.dim < 2:
            continue
        for st in doubling_filtration(p):
            summary = classify_edge_types(st)
            assert (summary.type1, summary.type2) == \
                expected_edge_type_counts(p, st.j), (name, st.j)


def test_edge_records_unique_and_boundary_only():
    for p in (simplex(3), cube(3)):
        m = p.facet_count
        for st in doubling_filtration(p):
            seen = set()
            for r in st.edge_types.records:
                a, b = r.facet_pair
                assert a < b and b >= st.j
                assert r.rep < (1 << st.j) and not r.rep & ((1 << a) | (1 << b))
                key = (r.facet_pair, r.rep)
                assert key not in seen
                seen.add(key)
                if r.kind == "II":
                    assert a < st.j <= b


# ---------------------------------------------------------------------------
# summary


def test_complex_summary_cube():
    s = complex_summary(cube(3))
    assert s["m"] == 6
    assert s["cells_by_dim"] == [64, 192, 192, 64]
    assert s["euler"] == 0
    assert s["components"] == 1
    assert s["orientable"] is True
    assert s["fixed_sets"] == [{"facet": i, "components": 2} for i in range(6)]
    assert [st["facets"] for st in s["filtration"]] == \
        [(6 - j) * (1 << j) for j in range(7)]
