"""Weyl-chamber distances and the permutohedron of states reachable from a spectrum.

The set of probability vectors majorized by ``d`` is the convex hull of all
permutations of ``d`` (a permutohedron). Its combinatorics are computed
geometrically: vertices are projected onto an orthonormal basis of the
unit-sum hyperplane, Qhull supplies the supporting hyperplanes, and lower
faces are obtained by intersecting facets.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from math import factorial

import numpy as np
from scipy.spatial import ConvexHull

from .errors import InvalidInput, NotSorted, OutOfRange, TooLarge
from .schmidt import schmidt_vector
from .spectra import probability_vector

VERTEX_TOL = 1e-12
PLANE_TOL = 1e-9
MAX_VERTICES = 1_000_000
MAX_FACE_LATTICE_N = 5


def weyl_hs_distance(h, g) -> float:
    """Euclidean distance of two descending spectra (same Weyl chamber).

    Equals the Hilbert-Schmidt distance between the unitary orbits of
    ``diag(h)`` and ``diag(g)``.
    """
    h = probability_vector(h)
    g = probability_vector(g)
    if h.size != g.size:
        raise InvalidInput("spectra of different length")
    for v in (h, g):
        if np.any(np.diff(v) > VERTEX_TOL):
            raise NotSorted("spectrum must be sorted descending")
    return float(np.linalg.norm(h - g))


def weyl_fs_distance(lam, mu) -> float:
    """``arccos(sum_k sqrt(lambda_k mu_k))`` with both vectors sorted descending.

    Equals the Fubini-Study distance between the local-unitary orbits of
    two pure states with Schmidt vectors ``lam`` and ``mu``.
    """
    lam = schmidt_vector(lam)
    mu = schmidt_vector(mu)
    if lam.size != mu.size:
        raise InvalidInput("Schmidt vectors of different length")
    overlap = float(np.sqrt(lam * mu).sum())
    return math.acos(min(max(overlap, 0.0), 1.0))


def fs_distance(psi, phi) -> float:
    """Fubini-Study distance ``arccos |<psi|phi>|`` of two unit vectors."""
    ov = abs(np.vdot(np.ravel(psi), np.ravel(phi)))
    return math.acos(min(ov, 1.0))


def arch_line_point(x: float) -> np.ndarray:
    """Point ``(x/6)(3,2,1,0) + ((1-x)/4)(1,1,1,1)`` of the truncated-octahedron line."""
    if not 0.0 <= x <= 1.0:
        raise OutOfRange(f"x = {x} outside [0, 1]")
    return x / 6.0 * np.array([3.0, 2.0, 1.0, 0.0]) + (1.0 - x) / 4.0 * np.ones(4)


def hyperplane_basis(n: int) -> np.ndarray:
    """Orthonormal basis (columns) of ``{x : sum x = 0}`` in R^n (Helmert)."""
    b = np.zeros((n, n - 1))
    for k in range(1, n):
        b[:k, k - 1] = 1.0
        b[k, k - 1] = -k
        b[:, k - 1] /= math.sqrt(k * (k + 1))
    return b


def distinct_permutations(d) -> np.ndarray:
    """All distinct rearrangements of ``d`` (entries equal within 1e-12 merged)."""
    d = np.sort(np.asarray(d, dtype=float))[::-1]
    # snap near-equal entries so set-based dedup is exact
    for i in range(1, d.size):
        if abs(d[i] - d[i - 1]) <= VERTEX_TOL:
            d[i] = d[i - 1]
    values, counts = np.unique(d, return_counts=True)
    total = factorial(d.size)
    for c in counts:
        total //= factorial(int(c))
    if total > MAX_VERTICES:
        raise TooLarge(f"{total} vertices exceed the limit of {MAX_VERTICES}")
    out = []

    def rec(prefix, remaining):
        if len(prefix) == d.size:
            out.append(prefix.copy())
            return
        for idx in range(len(values) - 1, -1, -1):
            if remaining[idx]:
                remaining[idx] -= 1
                prefix.append(values[idx])
                rec(prefix, remaining)
                prefix.pop()
                remaining[idx] += 1

    rec([], [int(c) for c in counts])
    return np.array(out)


@dataclass
class Polytope:
    """Vertices plus face lattice of a permutohedron.

    ``faces[k]`` lists the k-dimensional faces as sorted vertex-index tuples
    for ``1 <= k <= dim - 1``; ``faces[1]`` are the edges.
    """

    vertices: np.ndarray
    dim: int
    faces: dict = field(default_factory=dict)
    halfspaces: np.ndarray | None = field(default=None, repr=False)

    @property
    def edges(self) -> list:
        return self.faces.get(1, [])

    @property
    def facets(self) -> list:
        return self.faces.get(self.dim - 1, [])

    def counts(self) -> dict:
        return {"vertices": len(self.vertices), **{f"faces_{k}": len(v) for k, v in sorted(self.faces.items())}}

    def projected(self) -> np.ndarray:
        n = self.vertices.shape[1]
        return (self.vertices - 1.0 / n) @ hyperplane_basis(n)

    def contains(self, q, tol: float = PLANE_TOL) -> bool:
        """Geometric membership test against the facet hyperplanes."""
        q = np.asarray(q, dtype=float).ravel()
        n = self.vertices.shape[1]
        if abs(q.sum() - 1.0) > tol:
            return False
        if len(self.vertices) == 1:
            return bool(np.max(np.abs(q - self.vertices[0])) <= tol)
        p = (q - 1.0 / n) @ hyperplane_basis(n)
        if self.halfspaces is None:
            raise InvalidInput("polytope was built without its facets")
        return bool(np.all(self.halfspaces[:, :-1] @ p + self.halfspaces[:, -1] <= tol))

    def edge_lengths(self) -> np.ndarray:
        v = self.vertices
        return np.array([np.linalg.norm(v[i] - v[j]) for i, j in self.edges])

    def to_json(self) -> dict:
        return {
            "vertices": self.vertices.tolist(),
            "edges": [list(e) for e in self.edges],
            "faces": [{"dim": k, "vertices": list(f)} for k in sorted(self.faces) if k > 1 for f in self.faces[k]],
        }


def _affine_rank(points) -> int:
    if len(points) <= 1:
        return 0
    diffs = points[1:] - points[0]
    return int(np.linalg.matrix_rank(diffs, tol=1e-9))


def _facet_planes(coords):
    """Unique supporting hyperplanes ``(normal, offset)`` with ``normal.x + offset <= 0``."""
    hull = ConvexHull(coords)
    planes = []
    for eq in hull.equations:
        if not any(np.allclose(eq, p, atol=1e-9) for p in planes):
            planes.append(eq)
    return np.array(planes)


def future_polytope(d, depth: str = "full") -> Polytope:
    """Convex hull of all permutations of the spectrum ``d``.

    ``depth`` selects how much combinatorics to compute: ``"vertices"``
    (any N, up to :data:`MAX_VERTICES` distinct vertices), ``"facets"`` or
    ``"full"`` (face lattice of every dimension, N <= 5).
    """
    d = probability_vector(d)
    n = d.size
    if depth not in ("vertices", "facets", "full"):
        raise InvalidInput(f"unknown depth {depth!r}")
    verts = distinct_permutations(d)
    nv = len(verts)
    if nv == 1:
        return Polytope(verts, 0)
    poly_dim = n - 1
    if depth == "vertices":
        return Polytope(verts, poly_dim)
    if n > MAX_FACE_LATTICE_N:
        raise TooLarge(f"face lattice limited to N <= {MAX_FACE_LATTICE_N}, got N = {n}")
    coords = (verts - 1.0 / n) @ hyperplane_basis(n)
    if poly_dim == 1:
        # a segment: its only proper faces are the two endpoints
        lo, hi = int(np.argmin(coords[:, 0])), int(np.argmax(coords[:, 0]))
        hs = np.array([[1.0, -coords[hi, 0]], [-1.0, coords[lo, 0]]])
        return Polytope(verts, 1, {1: [tuple(sorted((lo, hi)))]}, hs)
    planes = _facet_planes(coords)
    facets = []
    for eq in planes:
        on = np.nonzero(np.abs(coords @ eq[:-1] + eq[-1]) <= PLANE_TOL)[0]
        facets.append(tuple(int(i) for i in on))
    faces = {poly_dim - 1: sorted(set(facets))}
    if depth == "full":
        for k in range(poly_dim - 2, 0, -1):
            upper = [frozenset(f) for f in faces[k + 1]]
            cands = set()
            for f, g in itertools.combinations(upper, 2):
                inter = f & g
                if len(inter) >= k + 1 and _affine_rank(coords[sorted(inter)]) == k:
                    cands.add(inter)
            faces[k] = sorted(tuple(sorted(c)) for c in cands)
    return Polytope(verts, poly_dim, faces, planes)


def ordered_polygon(poly: Polytope, face) -> list:
    """Vertex indices of a 2-face in cyclic order around its centroid."""
    pts = poly.projected()[list(face)]
    centre = pts.mean(axis=0)
    rel = pts - centre
    # in-plane orthonormal frame from the principal directions
    _, _, vt = np.linalg.svd(rel)
    u, w = rel @ vt[0], rel @ vt[1]
    order = np.argsort(np.arctan2(w, u))
    return [face[i] for i in order]


def polygon_geometry(poly: Polytope, face):
    """Edge lengths and interior angles (radians) of a 2-face."""
    idx = ordered_polygon(poly, face)
    pts = poly.projected()[idx]
    m = len(pts)
    lengths = np.array([np.linalg.norm(pts[(i + 1) % m] - pts[i]) for i in range(m)])
    angles = []
    for i in range(m):
        a = pts[i - 1] - pts[i]
        b = pts[(i + 1) % m] - pts[i]
        cosang = np.dot(a, b) / (np.linalg.norm(a) * np.linalg.norm(b))
        angles.append(math.acos(min(max(cosang, -1.0), 1.0)))
    return lengths, np.array(angles)


def is_regular_polygon(poly: Polytope, face, tol: float = 1e-9) -> bool:
    lengths, angles = polygon_geometry(poly, face)
    m = len(lengths)
    return bool(np.ptp(lengths) <= tol and np.all(np.abs(angles - math.pi * (m - 2) / m) <= tol))


def permutohedron_counts(n: int) -> dict:
    """Closed-form counts for a generic spectrum: N! vertices, N!(N-1)/2 edges,
    2^N - 2 facets."""
    return {"vertices": factorial(n), "edges": factorial(n) * (n - 1) // 2, "facets": 2**n - 2}
