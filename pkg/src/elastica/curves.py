"""Discrete curves and analytic generators for the explicit elastica zoo.

Provides the polyline carrier, the wavelike and figure-eight samplers, the
half-leaf building block, the tangent-tuple machinery for closed leafed
elasticae (including the 3d propeller), the planar-closure sign search, and
multiplicity / embeddedness predicates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product
from typing import Optional, Sequence

import numpy as np
from scipy.optimize import least_squares

from . import elliptic
from .elliptic import constants

__all__ = [
    "DiscreteCurve",
    "TangentTuple",
    "LeafedElasticaSpec",
    "sample_wavelike",
    "sample_figure_eight",
    "canonical_half_leaf",
    "half_leaf_tangents",
    "build_tangent_tuple_propeller",
    "planar_tangent_tuple",
    "propeller_eight_tuple",
    "assemble_leafed",
    "search_planar_closure",
    "circle",
    "segment",
    "multiplicity",
    "is_embedded",
]


@dataclass(frozen=True)
class DiscreteCurve:
    """Ordered point list in R^n with open/closed flag.

    Closed curves are interpreted cyclically (no duplicated endpoint).
    Points are stored read-only; curves are safe to share.
    """

    points: np.ndarray
    closed: bool = False
    vertex_marks: Optional[tuple] = None

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[0] < 3 or pts.shape[1] < 2:
            raise ValueError("need at least 3 points in R^n, n >= 2")
        edges = np.diff(pts, axis=0)
        if self.closed:
            edges = np.vstack([edges, pts[0] - pts[-1]])
        if np.any(np.linalg.norm(edges, axis=1) == 0.0):
            raise ValueError("consecutive points must be distinct")
        pts = pts.copy()
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @property
    def dimension(self) -> int:
        return self.points.shape[1]

    @property
    def n_points(self) -> int:
        return self.points.shape[0]

    def edge_vectors(self) -> np.ndarray:
        if self.closed:
            return np.roll(self.points, -1, axis=0) - self.points
        return np.diff(self.points, axis=0)

    def edge_lengths(self) -> np.ndarray:
        return np.linalg.norm(self.edge_vectors(), axis=1)

    def length(self) -> float:
        return float(self.edge_lengths().sum())

    def transformed(self, rotation: Optional[np.ndarray] = None,
                    translation: Optional[np.ndarray] = None) -> "DiscreteCurve":
        pts = self.points
        if rotation is not None:
            pts = pts @ np.asarray(rotation).T
        if translation is not None:
            pts = pts + np.asarray(translation)
        return DiscreteCurve(pts, closed=self.closed, vertex_marks=self.vertex_marks)


@dataclass(frozen=True)
class TangentTuple:
    """k unit vectors with cyclic inner products cos(2 phi*): the blueprint
    of a closed leafed elastica."""

    omegas: np.ndarray

    def __post_init__(self):
        om = np.asarray(self.omegas, dtype=float)
        if om.ndim != 2 or om.shape[0] < 1:
            raise ValueError("omegas must be a (k, n) array")
        norms = np.linalg.norm(om, axis=1)
        if np.any(np.abs(norms - 1.0) > 1e-12):
            raise ValueError("tangent tuple vectors must be unit to 1e-12")
        target = math.cos(2.0 * constants().phi_star)
        dots = np.einsum("ij,ij->i", om, np.roll(om, 1, axis=0))
        if np.any(np.abs(dots - target) > 1e-10):
            raise ValueError("cyclic tangent angles must equal 2 phi* to 1e-10")
        om = om.copy()
        om.setflags(write=False)
        object.__setattr__(self, "omegas", om)

    @property
    def dimension(self) -> int:
        return self.omegas.shape[1]

    @property
    def k(self) -> int:
        return self.omegas.shape[0]


@dataclass(frozen=True)
class LeafedElasticaSpec:
    """k equal-length leaves joined at one point; closed specs carry the
    cyclic TangentTuple, open specs an open tangent chain."""

    k: int
    closed: bool
    tangents: np.ndarray  # (k, n) cyclic for closed, (k+1, n) chain for open
    leaf_length: float = 1.0

    def __post_init__(self):
        t = np.asarray(self.tangents, dtype=float)
        expected = self.k if self.closed else self.k + 1
        if t.shape[0] != expected:
            raise ValueError(f"expected {expected} tangents, got {t.shape[0]}")
        if self.leaf_length <= 0:
            raise ValueError("leaf_length must be positive")
        t = t.copy()
        t.setflags(write=False)
        object.__setattr__(self, "tangents", t)


# ---------------------------------------------------------------------------
# analytic generators

def _wavelike_point(s: float, m: float) -> tuple:
    am = elliptic.amplitude(s, m)
    return (2.0 * elliptic.incomplete_E(am, m) - s, -2.0 * math.sqrt(m) * math.cos(am))


def sample_wavelike(m: float, s_lo: float, s_hi: float, n_samples: int) -> DiscreteCurve:
    """Arclength samples of the planar wavelike elastica
    (2E(am(s,m),m) - s, -2 sqrt(m) cn(s,m)); signed curvature 2 sqrt(m) cn(s,m)."""
    if s_lo >= s_hi:
        raise ValueError("need s_lo < s_hi")
    if n_samples < 3:
        raise ValueError("need at least 3 samples")
    svals = np.linspace(s_lo, s_hi, n_samples)
    pts = np.array([_wavelike_point(float(s), m) for s in svals])
    return DiscreteCurve(pts, closed=False)


def _figure_eight_point(s: float, mstar: float, Kstar: float) -> tuple:
    u = s - Kstar
    am = elliptic.amplitude(u, mstar)
    return (-2.0 * elliptic.incomplete_E(am, mstar) + u,
            2.0 * math.sqrt(mstar) * math.cos(am))


def sample_figure_eight(N_halves: int, n_samples: int, closed: Optional[bool] = None) -> DiscreteCurve:
    """N_halves half-periods of the figure-eight elastica on [0, 2 N K(m*)],
    starting at the origin.  Even N_halves closes up; the closed flag defaults
    accordingly."""
    if N_halves < 1:
        raise ValueError("N_halves must be a positive integer")
    if n_samples < 8 * N_halves:
        raise ValueError("need at least 8 samples per half-period")
    c = constants()
    if closed is None:
        closed = N_halves % 2 == 0
    total = 2.0 * N_halves * c.K_star
    if closed:
        svals = np.linspace(0.0, total, n_samples, endpoint=False)
    else:
        svals = np.linspace(0.0, total, n_samples)
    pts = np.array([_figure_eight_point(float(s), c.m_star, c.K_star) for s in svals])
    if closed:
        # the analytic curve returns to the origin; pin the wrap-around exactly
        pts[0] = 0.0
    return DiscreteCurve(pts, closed=closed)


def canonical_half_leaf(n_samples: int) -> DiscreteCurve:
    """One half-period [0, 2K(m*)] of the figure-eight: starts and ends at the
    origin with tangents at angle 2 phi* and zero curvature at the ends."""
    if n_samples < 16:
        raise ValueError("need at least 16 samples")
    return sample_figure_eight(1, n_samples, closed=False)


def half_leaf_tangents() -> tuple:
    """Exact unit start/end tangents of the canonical half-leaf:
    (2m*-1, +-2 sqrt(m*(1-m*)))."""
    c = constants()
    tx = 2.0 * c.m_star - 1.0
    ty = 2.0 * math.sqrt(c.m_star * (1.0 - c.m_star))
    return np.array([tx, ty]), np.array([tx, -ty])


def build_tangent_tuple_propeller() -> TangentTuple:
    """The symmetric Omega*(3,3) triple: three unit vectors on a cone about
    e3, pairwise at angle 2 phi*."""
    c = constants()
    cos2phi = math.cos(2.0 * c.phi_star)
    cos2_theta = (cos2phi + 0.5) / 1.5
    if cos2_theta <= 0.0:
        raise RuntimeError("cos(2 phi*) <= -1/2: propeller tuple infeasible; constants corrupted")
    cos_t = math.sqrt(cos2_theta)
    sin_t = math.sqrt(1.0 - cos2_theta)
    omegas = np.array([
        [sin_t * math.cos(2.0 * math.pi * i / 3.0),
         sin_t * math.sin(2.0 * math.pi * i / 3.0),
         cos_t]
        for i in range(1, 4)
    ])
    return TangentTuple(omegas)


def planar_tangent_tuple(signs: Sequence[int], start_angle: float = 0.0) -> TangentTuple:
    """Planar tuple obtained by successive rotations through sigma_i * 2 phi*.

    Only valid when the signed angles close up modulo 2 pi (e.g. the balanced
    two-leaf sequence (+1, -1) producing the figure-eight)."""
    c = constants()
    angles = start_angle + 2.0 * c.phi_star * np.cumsum(np.asarray(signs, dtype=float))
    omegas = np.stack([np.cos(angles), np.sin(angles)], axis=1)
    return TangentTuple(omegas)


def propeller_eight_tuple(k: int) -> TangentTuple:
    """The propeller + (k-3)/2 figure-eights composite tuple in R^3, k odd >= 5."""
    if k < 5 or k % 2 == 0:
        raise ValueError("composite tuple needs odd k >= 5")
    prop = build_tangent_tuple_propeller().omegas
    c = constants()
    # append (k-3) vectors alternating omega_3 rotated by +-2 phi* about an
    # axis orthogonal to omega_3, i.e. a planar figure-eight chain hanging
    # off the last propeller tangent.
    last = prop[-1]
    # orthonormal partner in the plane spanned by last and e1 (last is never
    # parallel to e1 for the symmetric propeller)
    e = np.array([1.0, 0.0, 0.0])
    w = e - np.dot(e, last) * last
    w /= np.linalg.norm(w)
    two_phi = 2.0 * c.phi_star
    extra = []
    cur = 0.0
    for i in range(k - 3):
        cur += two_phi if i % 2 == 0 else -two_phi
        extra.append(math.cos(cur) * last + math.sin(cur) * w)
    omegas = np.vstack([prop, np.array(extra)])
    return TangentTuple(omegas)


def _leaf_frame(a: np.ndarray, b: np.ndarray) -> tuple:
    """Orthonormal (u, w) in span{a, b} with the bisector along u and
    a = cos(phi*) u + sin(phi*) w, b = cos(phi*) u - sin(phi*) w."""
    u = a + b
    nu = np.linalg.norm(u)
    w = a - b
    nw = np.linalg.norm(w)
    if nu < 1e-12 or nw < 1e-12:
        raise ValueError("degenerate tangent pair")
    return u / nu, w / nw


def assemble_leafed(spec: LeafedElasticaSpec, n_samples_per_leaf: int = 128) -> DiscreteCurve:
    """Concatenate rigid-motion copies of the canonical half-leaf, one per
    tangent pair, all joints at the origin; C^1 at joints by construction."""
    c = constants()
    target = math.cos(2.0 * c.phi_star)
    t = spec.tangents
    n = t.shape[1]
    pairs = []
    for i in range(spec.k):
        a = t[i % t.shape[0]] if spec.closed else t[i]
        b = t[(i + 1) % t.shape[0]] if spec.closed else t[i + 1]
        if abs(np.dot(a, b) - target) > 1e-8:
            raise ValueError(f"tangent chain mismatch at leaf {i}: consecutive tangents "
                             "must make angle 2 phi*")
        pairs.append((a, b))
    if spec.closed and abs(np.dot(t[-1], t[0]) - target) > 1e-8:
        raise ValueError("closed spec does not return to the start tangent")

    leaf = canonical_half_leaf(n_samples_per_leaf)
    scale = spec.leaf_length / leaf_reference_length()
    xy = leaf.points * scale
    pieces = []
    marks = []
    offset = 0
    for a, b in pairs:
        u, w = _leaf_frame(a, b)
        pts = np.outer(xy[:, 0], u) + np.outer(xy[:, 1], w)
        # joints exactly at the origin
        pts[0] = 0.0
        pts[-1] = 0.0
        pieces.append(pts[:-1])  # drop duplicated joint between leaves
        marks.append(offset)
        offset += pts.shape[0] - 1
    points = np.vstack(pieces)
    if not spec.closed:
        points = np.vstack([points, np.zeros((1, n))])
        marks.append(points.shape[0] - 1)
    return DiscreteCurve(points, closed=spec.closed, vertex_marks=tuple(marks))


def leaf_reference_length() -> float:
    """Arclength 2 K(m*) of the canonical half-leaf."""
    return 2.0 * constants().K_star


def propeller_curve(n_samples_per_leaf: int = 256, leaf_length: float = 1.0) -> DiscreteCurve:
    """The closed 3-leafed elastica in R^3 built on the symmetric tuple."""
    tup = build_tangent_tuple_propeller()
    spec = LeafedElasticaSpec(k=3, closed=True, tangents=tup.omegas, leaf_length=leaf_length)
    return assemble_leafed(spec, n_samples_per_leaf)


def propeller_cone_fit_residual() -> float:
    """Cross-check of the propeller cone angle: solve the 3-vector constraint
    system by nonlinear least squares and compare against the closed form."""
    c = constants()
    target = math.cos(2.0 * c.phi_star)

    def residuals(x):
        v = x.reshape(3, 3)
        out = [np.dot(v[i], v[i]) - 1.0 for i in range(3)]
        out += [np.dot(v[i], v[(i + 1) % 3]) - target for i in range(3)]
        # gauge fixing: v0 in the xz-plane with positive x, symmetry axis = e3
        out.append(v[0, 1])
        out.append(np.dot(v.sum(axis=0), np.array([1.0, 0.0, 0.0])))
        out.append(np.dot(v.sum(axis=0), np.array([0.0, 1.0, 0.0])))
        return out

    x0 = np.eye(3).ravel() + 0.3
    sol = least_squares(residuals, x0, xtol=1e-15, ftol=1e-15, gtol=1e-15)
    v = sol.x.reshape(3, 3)
    cos_t_fit = abs(v[:, 2].mean())
    cos_t = math.sqrt((target + 0.5) / 1.5)
    return abs(cos_t_fit - cos_t)


# ---------------------------------------------------------------------------
# planar closure search

def search_planar_closure(k: int, eps: float) -> list:
    """All sign sequences sigma in {-1,1}^k with sum(sigma) * 2 phi* within
    eps of a multiple of 2 pi.  Empty output for odd k is the numerical
    footprint of the planar nonexistence obstruction."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    if k > 25:
        raise ValueError("k > 25 exceeds the 2^k enumeration budget")
    if k < 1:
        raise ValueError("k must be positive")
    two_phi = 2.0 * constants().phi_star
    found = []
    for signs in product((-1, 1), repeat=k):
        total = sum(signs) * two_phi
        dist = abs(total - 2.0 * math.pi * round(total / (2.0 * math.pi)))
        if dist < eps:
            found.append(signs)
    return found


# ---------------------------------------------------------------------------
# elementary generators

def circle(n: int, radius: float, n_samples: int, turns: int = 1) -> DiscreteCurve:
    """Closed planar circle embedded in R^n (first two coordinates); turns > 1
    gives a multiply covered circle."""
    if radius <= 0:
        raise ValueError("radius must be positive")
    theta = np.linspace(0.0, 2.0 * math.pi * turns, n_samples, endpoint=False)
    pts = np.zeros((n_samples, n))
    pts[:, 0] = radius * np.cos(theta)
    pts[:, 1] = radius * np.sin(theta)
    return DiscreteCurve(pts, closed=True)


def segment(p: np.ndarray, q: np.ndarray, n_samples: int) -> DiscreteCurve:
    """Uniform samples of the straight segment from p to q."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    if np.allclose(p, q):
        raise ValueError("segment endpoints must differ")
    tvals = np.linspace(0.0, 1.0, n_samples)[:, None]
    return DiscreteCurve(p + tvals * (q - p), closed=False)


# ---------------------------------------------------------------------------
# multiplicity and embeddedness

def multiplicity(curve: DiscreteCurve, point: np.ndarray, eps: float) -> int:
    """Count maximal clusters of samples within eps of `point`, separated by
    excursions beyond 2 eps.  Clusters are the discrete shadows of preimage
    points, so sampling density does not inflate the count."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    min_edge = curve.edge_lengths().min()
    if eps > 0.5 * min_edge:
        import warnings
        warnings.warn(f"eps={eps:g} exceeds half the minimum edge length {min_edge:g}; "
                      "cluster separation may be unreliable")
    d = np.linalg.norm(curve.points - np.asarray(point, dtype=float), axis=1)
    inside = d <= eps
    if not inside.any():
        return 0
    count = 0
    escaped = True  # has the curve left the 2 eps ball since the last cluster
    for di in d:
        if di <= eps:
            if escaped:
                count += 1
                escaped = False
        elif di > 2.0 * eps:
            escaped = True
    if curve.closed and count > 1:
        # merge the first and last clusters if the curve never leaves the
        # 2 eps ball across the seam between them
        first = int(np.argmax(inside))
        last = len(d) - 1 - int(np.argmax(inside[::-1]))
        seam = np.concatenate([d[last + 1:], d[:first]])
        if not (seam > 2.0 * eps).any():
            count -= 1
    return count


_GRID = 2.0**40


def _snap(points: np.ndarray) -> np.ndarray:
    scale = max(1.0, np.abs(points).max())
    return np.rint(points / scale * _GRID).astype(np.int64)


def _orient(a, b, c) -> int:
    # Python ints: exact, no overflow
    v = (int(b[0]) - int(a[0])) * (int(c[1]) - int(a[1])) \
        - (int(b[1]) - int(a[1])) * (int(c[0]) - int(a[0]))
    return (v > 0) - (v < 0)


def _on_segment(a, b, p) -> bool:
    return (min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


def _segments_intersect_2d(a, b, c, d) -> bool:
    o1, o2 = _orient(a, b, c), _orient(a, b, d)
    o3, o4 = _orient(c, d, a), _orient(c, d, b)
    if o1 != o2 and o3 != o4:
        return True
    if o1 == 0 and _on_segment(a, b, c):
        return True
    if o2 == 0 and _on_segment(a, b, d):
        return True
    if o3 == 0 and _on_segment(c, d, a):
        return True
    if o4 == 0 and _on_segment(c, d, b):
        return True
    return False


def _segment_distance(p1, p2, q1, q2) -> float:
    d1 = p2 - p1
    d2 = q2 - q1
    r = p1 - q1
    a = d1 @ d1
    e = d2 @ d2
    f = d2 @ r
    c = d1 @ r
    b = d1 @ d2
    denom = a * e - b * b
    s = np.clip((b * f - c * e) / denom, 0.0, 1.0) if denom > 1e-30 else 0.0
    t = (b * s + f) / e if e > 1e-30 else 0.0
    t = np.clip(t, 0.0, 1.0)
    s = np.clip((b * t - c) / a, 0.0, 1.0) if a > 1e-30 else 0.0
    return float(np.linalg.norm(p1 + s * d1 - (q1 + t * d2)))


def _candidate_pairs(starts: np.ndarray, ends: np.ndarray, n_segs: int, closed: bool):
    lo = np.minimum(starts, ends)
    hi = np.maximum(starts, ends)
    for i in range(n_segs):
        # vectorized bounding-box prefilter against all later non-adjacent segments
        j0 = i + 2
        if j0 >= n_segs:
            continue
        jmax = n_segs
        js = np.arange(j0, jmax)
        if closed and i == 0:
            js = js[js != n_segs - 1]
        if len(js) == 0:
            continue
        overlap = np.all((lo[js] <= hi[i]) & (hi[js] >= lo[i]), axis=1)
        for j in js[overlap]:
            yield i, int(j)


def is_embedded(curve: DiscreteCurve, eps: float = 0.0) -> bool:
    """True iff no two non-adjacent segments intersect.

    Planar curves use exact integer orientation predicates on coordinates
    snapped to a 2^-40 grid; higher dimensions test segment-segment distance
    against eps (default: 1e-9 x length)."""
    pts = curve.points
    n_pts = curve.n_points
    if curve.closed:
        starts = pts
        ends = np.roll(pts, -1, axis=0)
        n_segs = n_pts
    else:
        starts = pts[:-1]
        ends = pts[1:]
        n_segs = n_pts - 1
    if curve.dimension == 2:
        snapped_start = _snap(np.vstack([starts, ends]))
        s_list = snapped_start[:n_segs]
        e_list = snapped_start[n_segs:]
        for i, j in _candidate_pairs(starts, ends, n_segs, curve.closed):
            if _segments_intersect_2d(s_list[i], e_list[i], s_list[j], e_list[j]):
                return False
        return True
    tol = eps if eps > 0 else 1e-9 * curve.length()
    pad = tol
    lo = np.minimum(starts, ends) - pad
    hi = np.maximum(starts, ends) + pad
    for i in range(n_segs):
        j0 = i + 2
        if j0 >= n_segs:
            continue
        js = np.arange(j0, n_segs)
        if curve.closed and i == 0:
            js = js[js != n_segs - 1]
        if len(js) == 0:
            continue
        overlap = np.all((lo[js] <= hi[i]) & (hi[js] >= lo[i]), axis=1)
        for j in js[overlap]:
            if _segment_distance(starts[i], ends[i], starts[j], ends[j]) < tol:
                return False
    return True
