"""Convex planar bodies: support-vector parameterization, polygon measures,
flat-segment and corner detection.

A convex body is represented either by a support vector h sampled on a
uniform angle grid (the optimizer's decision variable) or by its boundary
polygon with counterclockwise vertices (what the mesher and renderer
consume). All operations here are pure functions of immutable values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linprog
from scipy.spatial import ConvexHull

TWO_PI = 2.0 * math.pi


def _as_points(vertices) -> np.ndarray:
    v = np.asarray(vertices, dtype=float)
    if v.ndim != 2 or v.shape[1] != 2:
        raise ValueError(f"expected (V, 2) vertex array, got shape {v.shape}")
    return v


def convexity_slack(h: np.ndarray) -> np.ndarray:
    """Per-index slack of the discrete convexity inequality.

    slack_i = h_{i-1} + h_{i+1} - 2 h_i cos(2 pi / n); the support vector is
    admissible when every slack is nonnegative. slack_i / sin(2 pi / n) is
    the length of boundary edge i of the induced polygon.
    """
    h = np.asarray(h, dtype=float)
    c = math.cos(TWO_PI / len(h))
    return np.roll(h, 1) + np.roll(h, -1) - 2.0 * c * h


@dataclass(frozen=True)
class SupportVector:
    """Support function of a convex body on the uniform grid theta_i = 2 pi i / n."""

    n: int
    h: np.ndarray

    def __post_init__(self):
        h = np.asarray(self.h, dtype=float)
        if self.n != len(h) or self.n < 3:
            raise ValueError(f"need n == len(h) >= 3, got n={self.n}, len(h)={len(h)}")
        if not np.all(h > 0):
            raise ValueError("support values must be strictly positive")
        tol = 1e-12 * max(1.0, float(h.max()))
        slack = convexity_slack(h)
        if slack.min() < -tol:
            i = int(slack.argmin())
            raise ValueError(
                f"discrete convexity violated at index {i} (slack {slack[i]:.3e}); "
                "project_to_convex first"
            )
        object.__setattr__(self, "h", h)

    @property
    def angles(self) -> np.ndarray:
        return TWO_PI * np.arange(self.n) / self.n


@dataclass(frozen=True)
class ConvexPolygon:
    """Counterclockwise simple convex polygon.

    keep_collinear permits zero exterior angles (flat vertices). check=False
    skips convexity validation; it is used internally for discrete level
    curves, which are convex only up to discretization error.
    """

    vertices: np.ndarray
    keep_collinear: bool = False
    check: bool = True

    def __post_init__(self):
        v = _as_points(self.vertices)
        if len(v) < 3:
            raise ValueError("polygon needs at least 3 vertices")
        object.__setattr__(self, "vertices", v)
        if not self.check:
            return
        e = np.roll(v, -1, axis=0) - v
        cross = e[:, 0] * np.roll(e, -1, axis=0)[:, 1] - e[:, 1] * np.roll(e, -1, axis=0)[:, 0]
        scale = float(np.abs(v).max()) ** 2
        if self.keep_collinear:
            if cross.min() < -1e-12 * max(scale, 1.0):
                raise ValueError("polygon is not convex (negative turn found)")
        elif cross.min() <= 0.0:
            raise ValueError("polygon is not strictly convex counterclockwise")

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    def edge_vectors(self) -> np.ndarray:
        return np.roll(self.vertices, -1, axis=0) - self.vertices

    def edge_lengths(self) -> np.ndarray:
        return np.linalg.norm(self.edge_vectors(), axis=1)

    def outward_normals(self) -> np.ndarray:
        """Unit outward normals, one per edge (CCW polygon: rotate edge by -90 deg)."""
        e = self.edge_vectors()
        n = np.stack([e[:, 1], -e[:, 0]], axis=1)
        return n / np.linalg.norm(n, axis=1, keepdims=True)

    def contains(self, points, tol: float = 0.0) -> np.ndarray:
        """Vectorized membership test (boundary counts as inside)."""
        p = np.atleast_2d(np.asarray(points, dtype=float))
        nrm = self.outward_normals()
        off = np.einsum("ed,ed->e", nrm, self.vertices)
        s = p @ nrm.T - off
        return np.all(s <= tol, axis=1)


@dataclass(frozen=True)
class GeoMeasures:
    area: float
    perimeter: float
    diameter: float
    inradius: float


@dataclass(frozen=True)
class SegmentReport:
    """Maximal boundary runs flat to within the turn tolerance.

    segments: (start vertex index, end vertex index, chord length, direction angle).
    """

    segments: list
    longest_length: float


@dataclass(frozen=True)
class CornerReport:
    corners: list  # (vertex index, exterior angle), sorted by angle descending
    max_exterior_angle: float


def exterior_angles(p: ConvexPolygon) -> np.ndarray:
    """Exterior (turning) angle at each vertex; sums to 2 pi on a closed convex curve."""
    e = p.edge_vectors()
    prev = np.roll(e, 1, axis=0)
    cross = prev[:, 0] * e[:, 1] - prev[:, 1] * e[:, 0]
    dot = np.einsum("vd,vd->v", prev, e)
    return np.arctan2(cross, dot)


def polygon_from_support(sv: SupportVector) -> ConvexPolygon:
    """Boundary of the intersection of the supporting half-planes of sv.

    Vertex i is the intersection of supporting lines i and i+1.  Consecutive
    vertices produced by concurrent support lines (zero-length edges) are
    merged; the survivors are strictly convex.
    """
    theta = sv.angles
    h = sv.h
    phi = TWO_PI / sv.n
    s = math.sin(phi)
    th_next = np.roll(theta, -1)
    h_next = np.roll(h, -1)
    vx = (h * np.sin(th_next) - h_next * np.sin(theta)) / s
    vy = (h_next * np.cos(theta) - h * np.cos(th_next)) / s
    v = np.stack([vx, vy], axis=1)

    scale = max(1.0, float(np.abs(v).max()))
    keep = _merge_collinear(v, 1e-14 * scale * scale)
    return ConvexPolygon(v[keep])


def _merge_collinear(v: np.ndarray, area_tol: float) -> np.ndarray:
    """Indices of vertices to keep, dropping ones whose removal changes area < tol.

    Concurrent support lines produce runs of coincident vertices; those are
    collapsed first (vectorized), then a sequential pass removes any leftover
    collinear middles one at a time so ring neighbors stay current.
    """
    scale = max(1.0, float(np.abs(v).max()))
    dist_next = np.linalg.norm(np.roll(v, -1, axis=0) - v, axis=1)
    # edges below the fp sliver floor carry no geometric information
    keep_mask = dist_next > 1e-10 * scale
    if not keep_mask.any():
        raise ValueError("support polygon degenerates to a point")
    idx = list(np.flatnonzero(keep_mask))
    changed = True
    while changed and len(idx) > 3:
        changed = False
        m = len(idx)
        for k in range(m):
            a = v[idx[(k - 1) % m]]
            b = v[idx[k]]
            c = v[idx[(k + 1) % m]]
            ab = b - a
            bc = c - b
            cross = ab[0] * bc[1] - ab[1] * bc[0]
            if 0.5 * abs(cross) < area_tol or cross <= 0.0:
                del idx[k]
                changed = True
                break
    return np.array(idx, dtype=int)


def project_to_convex(h_raw) -> SupportVector:
    """Repair a raw support vector into the discrete convexity cone.

    Cyclic local repair: sweep indices, cap h_i at (h_{i-1}+h_{i+1})/(2 cos phi)
    wherever violated, iterate to a fixed point. Monotone (values only
    decrease) and idempotent: a valid input is returned unchanged bitwise.
    """
    h = np.array(h_raw, dtype=float)
    n = len(h)
    if n < 8:
        raise ValueError("need n >= 8 support angles")
    if not np.any(h > 0):
        raise ValueError("need at least one positive support value")
    two_c = 2.0 * math.cos(TWO_PI / n)
    for _ in range(10000):
        # tolerance follows the shrinking scale so re-projection is a no-op
        tol = 1e-13 * max(1.0, float(h.max()))
        changed = False
        for i in range(n):
            cap = (h[i - 1] + h[(i + 1) % n]) / two_c
            if h[i] > cap + tol:
                h[i] = cap
                changed = True
        if not changed:
            break
    else:
        raise RuntimeError("convexity repair did not converge in 10000 sweeps")
    if np.any(h <= 0):
        raise ValueError("repair produced nonpositive support values (degenerate input)")
    return SupportVector(n, h)


def measures(p: ConvexPolygon) -> GeoMeasures:
    """Area (shoelace), perimeter, diameter, and LP-exact inradius."""
    v = p.vertices
    nxt = np.roll(v, -1, axis=0)
    area = 0.5 * float(np.sum(v[:, 0] * nxt[:, 1] - v[:, 1] * nxt[:, 0]))
    perimeter = float(p.edge_lengths().sum())
    d2 = np.sum((v[:, None, :] - v[None, :, :]) ** 2, axis=2)
    diameter = math.sqrt(float(d2.max()))
    inradius, _ = incenter(p)
    return GeoMeasures(area=area, perimeter=perimeter, diameter=diameter, inradius=inradius)


def incenter(p: ConvexPolygon) -> tuple[float, np.ndarray]:
    """Largest inscribed disc: maximize r s.t. <x, n_e> + r <= offset_e over edges."""
    nrm = p.outward_normals()
    off = np.einsum("ed,ed->e", nrm, p.vertices)
    a_ub = np.hstack([nrm, np.ones((len(nrm), 1))])
    res = linprog(c=[0.0, 0.0, -1.0], A_ub=a_ub, b_ub=off, bounds=[(None, None)] * 3,
                  method="highs")
    if not res.success:
        raise RuntimeError(f"inradius LP failed: {res.message}")
    return float(res.x[2]), res.x[:2].copy()


def scale(p: ConvexPolygon, t: float) -> ConvexPolygon:
    if t <= 0:
        raise ValueError("scale factor must be positive")
    return ConvexPolygon(p.vertices * t, keep_collinear=p.keep_collinear, check=p.check)


def _dist_to_polygon(points: np.ndarray, p: ConvexPolygon) -> np.ndarray:
    """Euclidean distance from each point to the convex set (0 inside)."""
    pts = np.atleast_2d(points)
    a = p.vertices
    e = p.edge_vectors()
    ee = np.einsum("ed,ed->e", e, e)
    ap = pts[:, None, :] - a[None, :, :]
    t = np.clip(np.einsum("ped,ed->pe", ap, e) / ee[None, :], 0.0, 1.0)
    proj = a[None, :, :] + t[:, :, None] * e[None, :, :]
    d = np.linalg.norm(pts[:, None, :] - proj, axis=2).min(axis=1)
    d[p.contains(pts)] = 0.0
    return d


def boundary_distance(points, p: ConvexPolygon) -> np.ndarray:
    """Distance to the boundary polyline (positive inside and outside)."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    a = p.vertices
    e = p.edge_vectors()
    ee = np.einsum("ed,ed->e", e, e)
    ap = pts[:, None, :] - a[None, :, :]
    t = np.clip(np.einsum("ped,ed->pe", ap, e) / ee[None, :], 0.0, 1.0)
    proj = a[None, :, :] + t[:, :, None] * e[None, :, :]
    return np.linalg.norm(pts[:, None, :] - proj, axis=2).min(axis=1)


def hausdorff_distance(p: ConvexPolygon, q: ConvexPolygon) -> float:
    """Hausdorff distance between the two convex bodies.

    For convex sets, sup_{x in P} dist(x, Q) is a convex function's maximum
    over P, hence attained at a vertex; vertex-to-set distances are exact.
    """
    d_pq = _dist_to_polygon(p.vertices, q).max()
    d_qp = _dist_to_polygon(q.vertices, p).max()
    return float(max(d_pq, d_qp))


def support_values(p: ConvexPolygon, angles) -> np.ndarray:
    """h(theta) = max over vertices of <v, (cos theta, sin theta)>."""
    u = np.stack([np.cos(angles), np.sin(angles)], axis=1)
    return (u @ p.vertices.T).max(axis=1)


def detect_segments(p: ConvexPolygon, turn_tol: float, min_len: float) -> SegmentReport:
    """Maximal boundary runs whose interior-vertex turns are all <= turn_tol.

    A run of edges a..b reports the chord from vertex a to vertex b+1; only
    chords of length >= min_len qualify. Single edges are length-1 runs.
    """
    if turn_tol <= 0:
        raise ValueError("turn_tol must be positive")
    ext = exterior_angles(p)
    m = len(ext)
    breaks = np.flatnonzero(ext > turn_tol)
    if len(breaks) == 0:
        # all turns below tolerance: no well-defined maximal run on a closed
        # curve; break at the largest turn so runs stay meaningful
        breaks = np.array([int(ext.argmax())])
    segments = []
    v = p.vertices
    for k in range(len(breaks)):
        a = int(breaks[k])                  # run starts at vertex a (edge a)
        b = int(breaks[(k + 1) % len(breaks)])  # and ends at vertex b (edge b-1)
        chord = v[b] - v[a]
        length = float(np.linalg.norm(chord))
        if length >= min_len:
            direction = float(math.atan2(chord[1], chord[0]))
            segments.append((a, b, length, direction))
    longest = max((s[2] for s in segments), default=0.0)
    return SegmentReport(segments=segments, longest_length=longest)


def detect_corners(p: ConvexPolygon, angle_tol: float) -> CornerReport:
    ext = exterior_angles(p)
    idx = np.flatnonzero(ext > angle_tol)
    order = idx[np.argsort(-ext[idx], kind="stable")]
    corners = [(int(i), float(ext[i])) for i in order]
    return CornerReport(corners=corners, max_exterior_angle=float(ext.max()))


def convexity_defect(vertices) -> float:
    """(hull area - polygon area) / polygon area for a closed CCW curve."""
    v = _as_points(vertices)
    nxt = np.roll(v, -1, axis=0)
    area = 0.5 * float(np.sum(v[:, 0] * nxt[:, 1] - v[:, 1] * nxt[:, 0]))
    hull_area = float(ConvexHull(v).volume)
    return (hull_area - area) / area


def support_of_stadium(n: int, half_width: float = 0.5, cap_radius: float = 0.5) -> SupportVector:
    """Stadium benchmark: square with semicircular caps; h = w|cos t| + r."""
    t = TWO_PI * np.arange(n) / n
    return SupportVector(n, half_width * np.abs(np.cos(t)) + cap_radius)


def regular_ngon(n: int, r: float = 1.0) -> ConvexPolygon:
    """Circumscribed regular n-gon of the disc of radius r (h == r)."""
    return polygon_from_support(SupportVector(n, np.full(n, float(r))))


def rectangle(width: float, height: float) -> ConvexPolygon:
    w, h = width / 2.0, height / 2.0
    return ConvexPolygon(np.array([[-w, -h], [w, -h], [w, h], [-w, h]]))
