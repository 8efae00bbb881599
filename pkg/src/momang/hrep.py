"""Half-space presentations and the quadric intersection model.

A presentation keeps the inward normals as columns of an n x m matrix A and
an offset vector b, so the region is { x : A^t x + b >= 0 }.  The rows of
the relation matrix span the linear relations among the normals; replacing
each affine coordinate by a square turns those relations into the m - n
quadrics whose common zero set is the glued manifold embedded in R^m, with
the sign-flip action of (Z2)^m restricted from the ambient space.

All decisions are floating point against a single tolerance; inputs are
desk scale and well conditioned, exact arithmetic is out of scope.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog

from .errors import (
    BadParameters,
    EmptyInterior,
    GuardExceeded,
    NotOnVariety,
    NotSimplePresentation,
    OutsidePolytope,
    ParseError,
    RankDeficient,
    RedundantHalfspace,
    Unbounded,
)
from .polytope import validate_polytope


@dataclass(frozen=True, eq=False)
class HRep:
    """Validated bounded full-dimensional presentation with m half-spaces."""

    n: int
    m: int
    A: np.ndarray          # n x m, column i is the inward normal a_i
    b: np.ndarray          # length m offsets
    tol: float = 1e-9

    def row(self, i: int) -> np.ndarray:
        return self.A[:, i]

    def values(self, x) -> np.ndarray:
        """The m affine forms <a_i, x> + b_i at a point."""
        return self.A.T @ np.asarray(x, dtype=float) + self.b


@dataclass(frozen=True, eq=False)
class QuadricSystem:
    """Coefficients of the m - n equations sum_k gamma_jk y_k^2 = rhs_j."""

    m: int
    gamma: np.ndarray      # (m - n) x m, full row rank, gamma @ A^t = 0
    rhs: np.ndarray

    def residual(self, y) -> np.ndarray:
        y = np.asarray(y, dtype=float)
        return self.gamma @ (y * y) - self.rhs


@dataclass(frozen=True, eq=False)
class EmbeddedPoint:
    """A point of the quadric variety, optionally with its polytope source."""

    y: np.ndarray
    source: tuple[np.ndarray, tuple[int, ...]] | None = None


# ---------------------------------------------------------------------------
# construction


def make_hrep(rows, offsets, tol: float = 1e-9) -> HRep:
    """Validate raw normals/offsets; see :func:`parse_hrep` for the checks."""
    arows = np.asarray(rows, dtype=float)
    b = np.asarray(offsets, dtype=float)
    if arows.ndim != 2 or b.ndim != 1 or arows.shape[0] != b.shape[0]:
        raise ParseError("need an m x n matrix of normals and m offsets")
    m, n = arows.shape
    if m == 0 or n == 0:
        raise ParseError("empty presentation")
    if not (np.isfinite(arows).all() and np.isfinite(b).all()):
        raise ParseError("non-finite entries")
    if tol <= 0:
        raise BadParameters(f"tolerance must be positive, got {tol}")

    # Bounded iff the normals positively span R^n: full rank plus a positive
    # dependence (all weights >= 1 summing to zero).
    scale = max(1.0, float(np.abs(b).max()), float(np.abs(arows).max()))
    if np.linalg.matrix_rank(arows, tol=tol * scale) < n:
        raise Unbounded("inward normals do not span the space")
    res = linprog(np.zeros(m), A_eq=arows.T, b_eq=np.zeros(n),
                  bounds=[(1, None)] * m, method="highs")
    if not res.success:
        raise Unbounded("inward normals do not positively span the space")

    # Full-dimensional iff the Chebyshev radius is positive.
    norms = np.linalg.norm(arows, axis=1)
    a_ub = np.hstack([-arows, norms[:, None]])
    res = linprog(np.r_[np.zeros(n), -1.0], A_ub=a_ub, b_ub=b,
                  bounds=[(None, None)] * (n + 1), method="highs")
    if res.status != 0 or -res.fun <= tol * scale:
        raise EmptyInterior("no interior point within tolerance")

    # Irredundant iff dropping the inequality exposes points violating it.
    for i in range(m):
        keep = [j for j in range(m) if j != i]
        res = linprog(arows[i], A_ub=-arows[keep], b_ub=b[keep],
                      bounds=[(None, None)] * n, method="highs")
        if res.status == 3:
            continue  # unbounded below without row i: certainly irredundant
        if res.status != 0:
            raise ParseError(f"LP solver failed on redundancy check {i}")
        if res.fun + b[i] >= -tol * scale:
            raise RedundantHalfspace(i)

    if np.linalg.matrix_rank(arows, tol=tol * scale) < n:
        raise RankDeficient("normal matrix rank below the dimension")
    A = arows.T.copy()
    A.setflags(write=False)
    b = b.copy()
    b.setflags(write=False)
    return HRep(n=n, m=m, A=A, b=b, tol=tol)


def parse_hrep(text: str, tol: float = 1e-9) -> HRep:
    """Parse the wire format: first line ``n m``, then m rows ``a_1 .. a_n b``.

    Raises :class:`Unbounded` when the normals do not positively span,
    :class:`EmptyInterior` when the region has no interior,
    :class:`RedundantHalfspace` for rows that do not bound a facet, and
    :class:`RankDeficient` defensively.
    """
    lines = [ln for ln in (s.strip() for s in text.splitlines())
             if ln and not ln.startswith("#")]
    if not lines:
        raise ParseError("empty half-space file")
    head = lines[0].split()
    if len(head) != 2:
        raise ParseError(f"expected 'n m' header, got {lines[0]!r}")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError as e:
        raise ParseError(f"bad header {lines[0]!r}") from e
    if len(lines) - 1 != m:
        raise ParseError(f"expected {m} rows, got {len(lines) - 1}")
    rows, offs = [], []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != n + 1:
            raise ParseError(f"expected {n + 1} numbers per row, got {ln!r}")
        try:
            vals = [float(x) for x in parts]
        except ValueError as e:
            raise ParseError(f"bad number in row {ln!r}") from e
        rows.append(vals[:n])
        offs.append(vals[n])
    return make_hrep(rows, offs, tol=tol)


def hrep_to_text(h: HRep) -> str:
    lines = [f"{h.n} {h.m}"]
    for i in range(h.m):
        entries = [repr(float(v)) for v in h.A[:, i]] + [repr(float(h.b[i]))]
        lines.append(" ".join(entries))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# vertex enumeration


def enumerate_vertices(h: HRep, guard: int = 10 ** 6):
    """Brute-force vertices over all n-subsets of half-spaces.

    Returns the validated incidence polytope together with the coordinate
    array aligned with its vertex order.  Raises
    :class:`NotSimplePresentation` when some point lies on more than n
    hyperplanes within tolerance.
    """
    if math.comb(h.m, h.n) > guard:
        raise GuardExceeded(
            f"C({h.m},{h.n}) subsets exceed the guard {guard}")
    rows = np.ascontiguousarray(h.A.T)
    norms = np.linalg.norm(rows, axis=1)
    scale = max(1.0, float(np.abs(h.b).max()), float(norms.max()))
    feastol = h.tol * scale
    found: dict[tuple[int, ...], np.ndarray] = {}
    for subset in itertools.combinations(range(h.m), h.n):
        sub = rows[list(subset)]
        hadamard = float(np.prod(norms[list(subset)]))
        if hadamard <= 0:
            continue
        det = float(np.linalg.det(sub))
        if abs(det) <= h.tol * hadamard:
            continue
        x = np.linalg.solve(sub, -h.b[list(subset)])
        vals = rows @ x + h.b
        if vals.min() < -feastol:
            continue
        active = tuple(int(i) for i in np.flatnonzero(np.abs(vals) <= feastol))
        if len(active) > h.n:
            raise NotSimplePresentation(
                f"point on {len(active)} hyperplanes: {active}")
        prev = found.get(active)
        if prev is not None and not np.allclose(prev, x, atol=10 * feastol):
            raise NotSimplePresentation(
                f"facet set {active} realized by two distinct points")
        found[active] = x
    incidence = sorted(found)
    polytope = validate_polytope(h.n, incidence)
    coords = np.array([found[v] for v in polytope.vertices])
    return polytope, coords


# ---------------------------------------------------------------------------
# relation matrix and quadrics


def relation_matrix(h: HRep) -> QuadricSystem:
    """Null-space basis of the normals, in row-reduced canonical form.

    Row reduction of A identifies pivot columns; each free column yields one
    relation with unit coefficient there.  Rows are rescaled so their
    largest-magnitude entry is 1, making the output reproducible.
    """
    A = np.array(h.A, dtype=float)
    n, m = A.shape
    scale = max(1.0, float(np.abs(A).max()))
    R = A.copy()
    pivots: list[int] = []
    r = 0
    for c in range(m):
        if r == n:
            break
        lead = r + int(np.argmax(np.abs(R[r:, c])))
        if abs(R[lead, c]) <= h.tol * scale:
            continue
        R[[r, lead]] = R[[lead, r]]
        R[r] = R[r] / R[r, c]
        for k in range(n):
            if k != r:
                R[k] = R[k] - R[k, c] * R[r]
        pivots.append(c)
        r += 1
    if r < n:
        raise RankDeficient(f"normal matrix has rank {r}, expected {n}")
    free = [c for c in range(m) if c not in pivots]
    gamma = np.zeros((len(free), m))
    for row, j in enumerate(free):
        gamma[row, j] = 1.0
        for k, c in enumerate(pivots):
            gamma[row, c] = -R[k, j]
    for row in range(gamma.shape[0]):
        lead = int(np.argmax(np.abs(gamma[row])))
        gamma[row] = gamma[row] / gamma[row, lead] + 0.0  # +0.0 clears -0.0
    if np.abs(gamma @ A.T).max() > 100 * h.tol * scale:
        raise AssertionError("relation rows do not annihilate the normals")
    rhs = gamma @ h.b
    gamma.setflags(write=False)
    rhs.setflags(write=False)
    return QuadricSystem(m=m, gamma=gamma, rhs=rhs)


def lift_point(h: HRep, x, signs) -> EmbeddedPoint:
    """Lift a polytope point to the variety: y_k = sign_k sqrt(<a_k,x> + b_k)."""
    signs = tuple(int(s) for s in signs)
    if len(signs) != h.m or any(s not in (-1, 1) for s in signs):
        raise BadParameters(f"signs must be a ±1 vector of length {h.m}")
    vals = h.values(x)
    scale = max(1.0, float(np.abs(h.b).max()))
    if vals.min() < -h.tol * scale:
        raise OutsidePolytope(
            f"inequality {int(np.argmin(vals))} violated by {-vals.min():g}")
    y = np.array(signs, dtype=float) * np.sqrt(np.clip(vals, 0.0, None))
    y.setflags(write=False)
    return EmbeddedPoint(y=y, source=(np.asarray(x, dtype=float), signs))


def quadric_gradient_rank(q: QuadricSystem, point, tol: float = 1e-9) -> int:
    """Rank of the quadric gradients (rows 2 gamma_jk y_k) at a point."""
    y = point.y if isinstance(point, EmbeddedPoint) else np.asarray(point, float)
    res = q.residual(y)
    scale = max(1.0, float(np.abs(q.rhs).max()) if q.rhs.size else 1.0)
    if res.size and np.abs(res).max() > tol * scale:
        raise NotOnVariety(f"max residual {np.abs(res).max():g}")
    jac = 2.0 * q.gamma * y[None, :]
    if jac.size == 0:
        return 0
    svals = np.linalg.svd(jac, compute_uv=False)
    return int(np.sum(svals > tol * max(1.0, float(svals[0]))))


@dataclass(frozen=True)
class NondegeneracyReport:
    """Observed gradient ranks over a deterministic sample of lifted points."""

    expected_rank: int
    min_rank: int
    min_margin: float
    samples: int
    failures: tuple[tuple[int, int], ...]   # (sample index, observed rank)

    @property
    def passed(self) -> bool:
        return not self.failures


def verify_nondegeneracy(h: HRep, sample_count: int = 200,
                         seed: int = 0) -> NondegeneracyReport:
    """Sample the polytope, lift with random signs, check gradient ranks.

    Samples every vertex, the relative-interior centroid of every facet and
    the global centroid, then fills up to ``sample_count`` with seeded
    random points (alternating interior and facet points).  Failures are
    reported, not raised.
    """
    q = relation_matrix(h)
    polytope, coords = enumerate_vertices(h)
    rng = np.random.default_rng(seed)
    pts = [coords[i] for i in range(len(coords))]
    facet_members = [[vi for vi, fs in enumerate(polytope.vertices) if i in fs]
                     for i in range(h.m)]
    pts += [coords[members].mean(axis=0) for members in facet_members]
    pts.append(coords.mean(axis=0))
    k = 0
    while len(pts) < sample_count:
        if k % 2 == 0:
            w = rng.dirichlet(np.ones(len(coords)))
            pts.append(w @ coords)
        else:
            members = facet_members[int(rng.integers(h.m))]
            w = rng.dirichlet(np.ones(len(members)))
            pts.append(w @ coords[members])
        k += 1

    expected = h.m - h.n
    min_rank = expected
    min_margin = math.inf
    failures = []
    for idx, x in enumerate(pts):
        signs = 1 - 2 * rng.integers(0, 2, size=h.m)
        y = lift_point(h, x, signs)
        jac = 2.0 * q.gamma * y.y[None, :]
        svals = np.linalg.svd(jac, compute_uv=False)
        rank = int(np.sum(svals > h.tol * max(1.0, float(svals[0]))))
        margin = float(svals[expected - 1]) if expected else math.inf
        min_margin = min(min_margin, margin)
        if rank < expected:
            failures.append((idx, rank))
        min_rank = min(min_rank, rank)
    return NondegeneracyReport(expected_rank=expected, min_rank=min_rank,
                               min_margin=min_margin, samples=len(pts),
                               failures=tuple(failures))


def quadrics_to_json(q: QuadricSystem) -> dict:
    return {"m": q.m, "gamma": [[float(v) for v in row] for row in q.gamma],
            "rhs": [float(v) for v in q.rhs]}
