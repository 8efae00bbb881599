"""Generators for the standard test polytopes.

Everything is combinatorial except the dodecahedron, which is enumerated
from its half-space presentation (facet normals = icosahedron vertex
directions) and then validated like any other incidence input.
"""

from __future__ import annotations

import itertools
import math
import random

from .errors import BadParameters
from .hrep import HRep, enumerate_vertices, make_hrep
from .moves import vertex_cut
from .polytope import CombPolytope, validate_polytope


def simplex(n: int) -> CombPolytope:
    """The n-simplex: n+1 facets, one vertex per n-subset."""
    if n < 1:
        raise BadParameters(f"simplex dimension must be >= 1, got {n}")
    verts = list(itertools.combinations(range(n + 1), n))
    return validate_polytope(n, verts)


def cube(n: int) -> CombPolytope:
    """The n-cube: facet i is {x_i = 0}, facet n+i is {x_i = 1}."""
    if n < 1:
        raise BadParameters(f"cube dimension must be >= 1, got {n}")
    verts = []
    for corner in itertools.product((0, 1), repeat=n):
        verts.append(tuple(sorted(i if bit == 0 else n + i
                                  for i, bit in enumerate(corner))))
    return validate_polytope(n, verts)


def prism() -> CombPolytope:
    """The triangular prism: three quadrilaterals 0..2, two triangles 3, 4."""
    verts = [(0, 1, 3), (1, 2, 3), (0, 2, 3),
             (0, 1, 4), (1, 2, 4), (0, 2, 4)]
    return validate_polytope(3, verts)


def prism_hrep(tol: float = 1e-9) -> HRep:
    """The product of the standard triangle with [0, 1]."""
    rows = [[1, 0, 0], [0, 1, 0], [-1, -1, 0], [0, 0, 1], [0, 0, -1]]
    return make_hrep(rows, [0, 0, 1, 0, 1], tol=tol)


def simplex_hrep(n: int, tol: float = 1e-9) -> HRep:
    """x_i >= 0 and x_1 + ... + x_n <= 1, in that row order."""
    if n < 1:
        raise BadParameters(f"simplex dimension must be >= 1, got {n}")
    rows = [[1.0 if j == i else 0.0 for j in range(n)] for i in range(n)]
    rows.append([-1.0] * n)
    return make_hrep(rows, [0.0] * n + [1.0], tol=tol)


def cube_hrep(n: int, tol: float = 1e-9) -> HRep:
    """[0, 1]^n with rows x_i >= 0 first, then 1 - x_i >= 0."""
    if n < 1:
        raise BadParameters(f"cube dimension must be >= 1, got {n}")
    rows = [[1.0 if j == i else 0.0 for j in range(n)] for i in range(n)]
    rows += [[-1.0 if j == i else 0.0 for j in range(n)] for i in range(n)]
    return make_hrep(rows, [0.0] * n + [1.0] * n, tol=tol)


def dodecahedron_hrep(tol: float = 1e-9) -> HRep:
    """Regular dodecahedron: one facet per icosahedron vertex direction."""
    phi = (1.0 + math.sqrt(5.0)) / 2.0
    rows = []
    for a, b in itertools.product((1.0, -1.0), repeat=2):
        rows.append([0.0, a, b * phi])
        rows.append([a, b * phi, 0.0])
        rows.append([b * phi, 0.0, a])
    return make_hrep(rows, [1.0] * 12, tol=tol)


def dodecahedron() -> CombPolytope:
    """Combinatorial dodecahedron: 12 pentagons, 20 vertices."""
    polytope, _ = enumerate_vertices(dodecahedron_hrep())
    return polytope


def random_vertexcuts(k: int, seed: int) -> CombPolytope:
    """Apply k vertex cuts at seeded-random vertices of the tetrahedron.

    Every output is reducible back to the tetrahedron by construction.
    """
    if k < 0:
        raise BadParameters(f"cut count must be >= 0, got {k}")
    rng = random.Random(seed)
    p = simplex(3)
    for _ in range(k):
        p = vertex_cut(p, rng.randrange(p.vertex_count))
    return p


def generate(kind: str, param: int | None = None, seed: int = 0) -> CombPolytope:
    """Dispatch for the CLI generator command."""
    if kind == "simplex":
        if param is None:
            raise BadParameters("simplex needs a dimension parameter")
        return simplex(param)
    if kind == "cube":
        if param is None:
            raise BadParameters("cube needs a dimension parameter")
        return cube(param)
    if kind == "prism":
        if param is not None:
            raise BadParameters("prism takes no parameter")
        return prism()
    if kind == "dodecahedron":
        if param is not None:
            raise BadParameters("dodecahedron takes no parameter")
        return dodecahedron()
    if kind == "random-vertexcuts":
        if param is None:
            raise BadParameters("random-vertexcuts needs a cut count")
        return random_vertexcuts(param, seed)
    raise BadParameters(f"unknown kind {kind!r}")
