"""Chamber complex glued from 2^m reflected copies of a simple polytope.

The manifold is the quotient of (polytope) x (Z2)^m that identifies two
copies of a point exactly when they differ by the subgroup generated by the
facets through the point.  Group elements are plain ints: bit ``i`` is the
generator attached to facet ``i`` and the group law is XOR.

A cell is a pair ``(face, g)``.  Canonical representatives clear the bits
of the face's facet set, so a codimension-k face carries exactly 2^(m-k)
cells; the top-dimensional cells (chambers) are indexed by all of (Z2)^m,
and the neighbour of chamber ``g`` across facet ``i`` is ``g ^ (1 << i)``.

The doubling filtration truncates the group to its first j generators:
stage j is the union of the 2^j chambers with group element < 2^j, whose
boundary consists of one piece per (facet i >= j, group element in the
stage).  Stage j+1 is two copies of stage j glued along the pieces of
facet j.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import GuardExceeded, NoSuchFacet
from .polytope import CombPolytope, FaceLattice, face_lattice


class _UnionFind:
    """Array union-find with path halving; elements are 0..size-1."""

    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)

    def roots(self):
        return {self.find(x) for x in range(len(self.parent))}


def _face_mask(face) -> int:
    mask = 0
    for i in face.facets:
        mask |= 1 << i
    return mask


class ChamberComplex:
    """Cell model of the glued manifold, built by :func:`build_chamber_complex`."""

    def __init__(self, base: CombPolytope, lattice: FaceLattice,
                 cells, cell_ids, cells_by_dim):
        self.base = base
        self.lattice = lattice
        self.m = base.facet_count
        self.n = base.dim
        self.cells = cells              # tuple of (face_index, representative)
        self.cell_ids = cell_ids        # (face_index, representative) -> cell id
        self.cells_by_dim = cells_by_dim
        self.face_masks = tuple(_face_mask(f) for f in lattice.faces)

    def canonical(self, face_index: int, g: int) -> tuple[int, int]:
        """The cell containing the copies of a face point indexed by ``g``."""
        return face_index, g & ~self.face_masks[face_index]

    def chambers(self) -> range:
        return range(1 << self.m)

    def translate(self, g: int, cell: tuple[int, int]) -> tuple[int, int]:
        """Action of group element ``g`` on a cell."""
        face_index, rep = cell
        return self.canonical(face_index, rep ^ g)


def build_chamber_complex(p: CombPolytope, guard: int = 20) -> ChamberComplex:
    """Enumerate all cells and verify the gluing by per-face union-find.

    For every face the 2^m raw copies are merged along the face's facet
    generators; the classes must come out as one cell per canonical
    representative, 2^(m-k) of them in codimension k.
    """
    m = p.facet_count
    if m > guard:
        raise GuardExceeded(f"facet count {m} exceeds guard {guard}")
    lattice = face_lattice(p)
    size = 1 << m
    cells = []
    cell_ids = {}
    cells_by_dim = [0] * (p.dim + 1)
    for face_index, face in enumerate(lattice.faces):
        mask = _face_mask(face)
        uf = _UnionFind(size)
        for g in range(size):
            low = g & mask
            if low:
                uf.union(g, g & ~(low & -low))
        reps = sorted(uf.roots())
        expected = 1 << (m - len(face.facets))
        if len(reps) != expected:
            raise AssertionError(
                f"face {sorted(face.facets)} produced {len(reps)} cells, "
                f"expected {expected}")
        for g in reps:
            if g & mask:
                raise AssertionError("union-find root is not canonical")
            cell_ids[(face_index, g)] = len(cells)
            cells.append((face_index, g))
        cells_by_dim[face.dim] += len(reps)
    return ChamberComplex(p, lattice, tuple(cells), cell_ids,
                          tuple(cells_by_dim))


def euler_characteristic_from_lattice(p: CombPolytope,
                                      lattice: FaceLattice | None = None) -> int:
    """Closed-form alternating cell count; never builds any cells."""
    if lattice is None:
        lattice = face_lattice(p)
    m = p.facet_count
    return sum((-1) ** f.dim * (1 << (m - len(f.facets)))
               for f in lattice.faces)


def euler_characteristic(z: ChamberComplex) -> int:
    """Alternating sum of cell counts, cross-checked against the lattice form."""
    chi = sum((-1) ** d * c for d, c in enumerate(z.cells_by_dim))
    closed = euler_characteristic_from_lattice(z.base, z.lattice)
    if chi != closed:
        raise AssertionError(f"cell count {chi} disagrees with lattice sum {closed}")
    return chi


def connected_components(z: ChamberComplex) -> int:
    """Components of the chamber adjacency graph under the facet gluings."""
    uf = _UnionFind(1 << z.m)
    for g in z.chambers():
        for i in range(z.m):
            uf.union(g, g ^ (1 << i))
    return len(uf.roots())


@dataclass(frozen=True)
class FixedPointSet:
    """Components of the subcomplex over one facet (fixed set of its
    generator under the group action)."""

    facet: int
    components: tuple[tuple[tuple[int, int], ...], ...]

    @property
    def count(self) -> int:
        return len(self.components)


def fixed_point_components(z: ChamberComplex, i: int) -> FixedPointSet:
    """Cells over faces contained in facet ``i``, grouped by gluing."""
    if not 0 <= i < z.m:
        raise NoSuchFacet(f"facet {i} of {z.m}")
    sub = [cid for cid, (fidx, _) in enumerate(z.cells)
           if i in z.lattice.faces[fidx].facets]
    local = {cid: k for k, cid in enumerate(sub)}
    uf = _UnionFind(len(sub))
    for parent_idx, child_idx in z.lattice.covers:
        if i not in z.lattice.faces[parent_idx].facets:
            continue
        child_mask = z.face_masks[child_idx]
        for g in range(1 << z.m):
            if g & z.face_masks[parent_idx]:
                continue
            a = z.cell_ids[(parent_idx, g)]
            b = z.cell_ids[(child_idx, g & ~child_mask)]
            uf.union(local[a], local[b])
    groups: dict[int, list] = {}
    for cid in sub:
        groups.setdefault(uf.find(local[cid]), []).append(z.cells[cid])
    components = tuple(tuple(grp) for _, grp in sorted(groups.items()))
    return FixedPointSet(facet=i, components=components)


def orientability(z: ChamberComplex):
    """Orient chambers by group-element parity and verify consistency.

    Adjacent chambers differ by one generator, hence get opposite signs;
    the check walks every (chamber, facet) adjacency.  Returns the verdict
    together with the sign of each chamber.
    """
    signs = [1 - 2 * (g.bit_count() & 1) for g in z.chambers()]
    for g in z.chambers():
        for i in range(z.m):
            if signs[g] == signs[g ^ (1 << i)]:
                return False, signs
    return True, signs


# ---------------------------------------------------------------------------
# doubling filtration


@dataclass(frozen=True)
class EdgeRecord:
    """A boundary codimension-two cell of a filtration stage.

    ``facet_pair`` is the codimension-two face of the base polytope the cell
    lies over; ``pieces`` are the two stage facets meeting there.  Kind "I"
    means the pieces project to different facets of the base, kind "II" that
    they project to the same facet and differ by one doubled generator.
    """

    facet_pair: tuple[int, int]
    rep: int
    kind: str
    pieces: tuple[tuple[int, int], tuple[int, int]]


@dataclass(frozen=True)
class EdgeTypeSummary:
    records: tuple[EdgeRecord, ...]
    type1: int
    type2: int


@dataclass(frozen=True)
class FiltrationStage:
    """Stage j of the doubling filtration: 2^j chambers, boundary made of
    one piece per (facet >= j, group element below 2^j)."""

    base: CombPolytope
    j: int
    subgroup: tuple[int, ...]
    facets: tuple[tuple[int, int], ...]
    chamber_count: int
    cell_count: int
    boundary_components: int
    edge_types: EdgeTypeSummary = field(repr=False)


def _stage_cell_reps(j: int, mask: int):
    """Canonical reps of stage-j cells over a face with facet bitmask ``mask``."""
    low = ((1 << j) - 1) & ~mask
    reps = [0]
    bit = 1
    while bit <= low:
        if bit & low:
            reps += [r | bit for r in reps]
        bit <<= 1
    return reps


def classify_edge_types(stage: FiltrationStage) -> EdgeTypeSummary:
    """Tag every boundary codimension-two cell of the stage.

    The cell over base face F_a of F_b (a < b) with representative r lies on
    the stage boundary exactly when b >= j.  If also a >= j the two stage
    facets through it are (a, r) and (b, r): different base facets, Type-I.
    If a < j they are (b, r) and (b, r ^ bit_a): the same base facet on both
    sides of the doubled generator a, Type-II.
    """
    return stage.edge_types


def _build_edge_types(p: CombPolytope, lattice: FaceLattice, j: int) -> EdgeTypeSummary:
    records = []
    for face in lattice.faces:
        if len(face.facets) != 2:
            continue
        a, b = sorted(face.facets)
        if b < j:
            continue  # fully doubled: interior to the stage
        mask = (1 << a) | (1 << b)
        for r in _stage_cell_reps(j, mask):
            if a >= j:
                rec = EdgeRecord(facet_pair=(a, b), rep=r, kind="I",
                                 pieces=((a, r), (b, r)))
            else:
                rec = EdgeRecord(facet_pair=(a, b), rep=r, kind="II",
                                 pieces=((b, r), (b, r | (1 << a))))
            records.append(rec)
    type1 = sum(1 for r in records if r.kind == "I")
    return EdgeTypeSummary(records=tuple(records), type1=type1,
                           type2=len(records) - type1)


def doubling_filtration(p: CombPolytope, guard: int = 20) -> list[FiltrationStage]:
    """All stages 0..m of the doubling filtration, with verified boundaries.

    For each stage the boundary identity is checked cell by cell: every
    codimension-one stage cell over a facet >= j touches exactly one stage
    chamber (it is one boundary piece), every one over a facet < j touches
    exactly two (it is interior).  The doubling law is checked by counting:
    stage j+1 has twice the cells of stage j minus the cells of the gluing
    locus, which is exactly the preimage of facet j.
    """
    m = p.facet_count
    if m > guard:
        raise GuardExceeded(f"facet count {m} exceeds guard {guard}")
    lattice = face_lattice(p)
    stages = []

    def stage_cell_count(j: int) -> int:
        return sum(len(_stage_cell_reps(j, _face_mask(f)))
                   for f in lattice.faces)

    for j in range(m + 1):
        subgroup = tuple(range(1 << j))
        pieces = tuple((i, g) for i in range(j, m) for g in subgroup)

        # boundary identity: count stage chambers incident to each facet cell
        for i in range(m):
            touched: dict[int, int] = {}
            for g in subgroup:
                rep = g & ~(1 << i)
                touched[rep] = touched.get(rep, 0) + 1
            for rep, cnt in touched.items():
                expected = 1 if i >= j else 2
                if cnt != expected:
                    raise AssertionError(
                        f"stage {j}: cell over facet {i} rep {rep} touches "
                        f"{cnt} chambers, expected {expected}")
        boundary_cells = sum(len(_stage_cell_reps(j, 1 << i))
                             for i in range(j, m))
        if boundary_cells != len(pieces):
            raise AssertionError("boundary pieces do not match boundary cells")

        edge_types = _build_edge_types(p, lattice, j)
        boundary_components = _boundary_components(p, lattice, j)
        stages.append(FiltrationStage(
            base=p, j=j, subgroup=subgroup, facets=pieces,
            chamber_count=1 << j, cell_count=stage_cell_count(j),
            boundary_components=boundary_components, edge_types=edge_types))

    for j in range(m):
        locus = sum(len(_stage_cell_reps(j, _face_mask(f)))
                    for f in lattice.faces if j in f.facets)
        if stages[j + 1].cell_count != 2 * stages[j].cell_count - locus:
            raise AssertionError(
                f"stage {j + 1} is not the double of stage {j} along facet {j}")
    return stages


def _boundary_components(p: CombPolytope, lattice: FaceLattice, j: int) -> int:
    """Components of the stage boundary subcomplex under the gluing."""
    boundary = []
    ids = {}
    masks = [_face_mask(f) for f in lattice.faces]
    for fidx, face in enumerate(lattice.faces):
        if not face.facets or max(face.facets) < j:
            continue
        for r in _stage_cell_reps(j, masks[fidx]):
            ids[(fidx, r)] = len(boundary)
            boundary.append((fidx, r))
    if not boundary:
        return 0
    uf = _UnionFind(len(boundary))
    for parent_idx, child_idx in lattice.covers:
        parent = lattice.faces[parent_idx]
        if not parent.facets or max(parent.facets) < j:
            continue
        for r in _stage_cell_reps(j, masks[parent_idx]):
            uf.union(ids[(parent_idx, r)], ids[(child_idx, r & ~masks[child_idx])])
    return len(uf.roots())


# ---------------------------------------------------------------------------
# summary


def complex_summary(p: CombPolytope, guard: int = 20) -> dict:
    """Everything the moment-angle report needs, as one JSON-ready dict."""
    z = build_chamber_complex(p, guard=guard)
    ok, _ = orientability(z)
    fixed = [{"facet": i, "components": fixed_point_components(z, i).count}
             for i in range(z.m)]
    filtration = [{"j": st.j, "facets": len(st.facets),
                   "type1_edges": st.edge_types.type1,
                   "type2_edges": st.edge_types.type2}
                  for st in doubling_filtration(p, guard=guard)]
    return {
        "m": z.m,
        "cells_by_dim": list(z.cells_by_dim),
        "euler": euler_characteristic(z),
        "components": connected_components(z),
        "orientable": ok,
        "fixed_sets": fixed,
        "filtration": filtration,
    }
