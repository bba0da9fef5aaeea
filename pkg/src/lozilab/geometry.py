"""Distinguished points, the triangle Theta, and the unstable manifold of X.

Naming follows the usual pictures: D and M are where the unstable and the
stable eigenlines of X cut the divider (the y-axis), ``FD[i]`` is the
i-th iterate of D, B is where the broken line F(D) -> F^3(D) -> F^2(D)
crosses the divider, N is where [F^3(D), F(D)] meets [X, M].
"""

from dataclasses import dataclass, field

import numpy as np

from .conditions import require_structure
from .core import ParameterError, Point, eval_points, fixed_points, period2_point
from .precision import asarray, divider_eps, dtype, real

DEFAULT_VERTEX_CAP = 10**7


class GeometryError(RuntimeError):
    """A geometric construction failed (missing intersection, divergence...)."""


def _eigenline_on_divider(params, which):
    X = fixed_points(params).X
    lam = X.eigen.lambda_unstable if which == "unstable" else X.eigen.lambda_stable
    _, b, _ = params.abc()
    x, y = X.point
    return Point(real(0), y - b * x / lam)


def d_point(params):
    return _eigenline_on_divider(params, "unstable")


def m_point(params):
    return _eigenline_on_divider(params, "stable")


def d_orbit(params, n):
    """Rows ``D, F(D), ..., F^n(D)`` as an ``(n + 1, 2)`` array."""
    out = np.empty((n + 1, 2), dtype=dtype())
    out[0] = d_point(params)
    for i in range(n):
        out[i + 1] = eval_points(params, out[i:i + 1])[0]
    return out


def _cross(o, p, q):
    return (p[0] - o[0]) * (q[1] - o[1]) - (p[1] - o[1]) * (q[0] - o[0])


def segment_intersection(p1, p2, q1, q2):
    """Intersection point of closed segments [p1, p2] and [q1, q2], or None.

    Collinear overlaps are reported as None; the callers only intersect
    transversal pieces (stable direction against unstable direction).
    """
    d1, d2 = _cross(q1, q2, p1), _cross(q1, q2, p2)
    d3, d4 = _cross(p1, p2, q1), _cross(p1, p2, q2)
    if (d1 > 0 and d2 > 0) or (d1 < 0 and d2 < 0):
        return None
    if (d3 > 0 and d4 > 0) or (d3 < 0 and d4 < 0):
        return None
    den = d1 - d2
    if den == 0:
        return None
    t = d1 / den
    return Point(p1[0] + t * (p2[0] - p1[0]), p1[1] + t * (p2[1] - p1[1]))


def _divider_crossing(p, q):
    """Point where segment [p, q] meets x = 0, assuming the signs of x differ."""
    t = p[0] / (p[0] - q[0])
    return Point(real(0), p[1] + t * (q[1] - p[1]))


@dataclass(frozen=True)
class DistinguishedPoints:
    X: Point
    Y: Point
    D: Point
    FD: tuple  # FD[i] = F^i(D), FD[0] = D
    M: Point
    FM: Point
    N: Point
    B: Point
    FB: Point
    Q: Point


def distinguished_points(params):
    require_structure(params)
    fps = fixed_points(params)
    orbit = d_orbit(params, 5)
    FD = tuple(Point(*row) for row in orbit)
    X, M = fps.X.point, m_point(params)
    FM = Point(*eval_points(params, [M])[0])

    N = segment_intersection(FD[3], FD[1], X, M)
    if N is None:
        raise GeometryError("L3 fails: [F^3(D), F(D)] does not meet [X, M]")

    B = b_point(orbit)
    FB = Point(*eval_points(params, [B])[0])
    return DistinguishedPoints(X, fps.Y.point, FD[0], FD, M, FM, N, B, FB, period2_point(params))


def b_point(orbit):
    """Where the broken line F(D) -> F^3(D) -> F^2(D) crosses the divider.

    ``orbit`` holds at least D, F(D), F^2(D), F^3(D).
    """
    p1, p2, p3 = orbit[1], orbit[2], orbit[3]
    if p3[0] < 0:
        return _divider_crossing(p1, p3)
    if p2[0] < 0 <= p3[0]:
        return _divider_crossing(p3, p2)
    raise GeometryError("broken line F(D), F^3(D), F^2(D) does not cross the divider")


@dataclass
class Polygon:
    vertices: np.ndarray

    def __post_init__(self):
        self.vertices = asarray(self.vertices)
        if len(self.vertices) < 3:
            raise ValueError("a polygon needs at least 3 vertices")

    @property
    def area(self):
        """Signed area; positive for counterclockwise order."""
        x, y = self.vertices[:, 0], self.vertices[:, 1]
        return (np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1))) / 2

    def ccw(self):
        return self if self.area > 0 else Polygon(self.vertices[::-1])

    def edges(self):
        v = self.vertices
        return zip(v, np.roll(v, -1, axis=0))

    def diameter(self):
        v = self.vertices
        diff = v[:, None, :] - v[None, :, :]
        return np.sqrt((diff ** 2).sum(axis=-1)).max()

    def signed_distances(self, pts):
        """Min over edges of the signed distance to the edge line, for convex CCW polygons.

        Positive inside, negative outside, zero on the boundary.
        """
        pts = asarray(pts).reshape(-1, 2)
        poly = self.ccw()
        out = np.full(len(pts), np.inf, dtype=pts.dtype)
        for p, q in poly.edges():
            e = q - p
            dist = (e[0] * (pts[:, 1] - p[1]) - e[1] * (pts[:, 0] - p[0])) / np.hypot(e[0], e[1])
            out = np.minimum(out, dist)
        return out

    def __len__(self):
        return len(self.vertices)


def map_polygon(params, poly):
    """Exact image of a polygon: edges are split on the divider, then mapped."""
    if abs(poly.area) == 0:
        raise ValueError("degenerate (zero-area) polygon")
    v = poly.vertices
    pieces = []
    for p, q in zip(v, np.roll(v, -1, axis=0)):
        pieces.append(p)
        if p[0] * q[0] < 0:
            pieces.append(np.asarray(_divider_crossing(p, q), dtype=v.dtype))
    return Polygon(eval_points(params, np.array(pieces)))


def triangle(params):
    """The triangle Theta spanned by F(D), F^2(D), F^3(D), counterclockwise."""
    orbit = d_orbit(params, 3)
    return Polygon(orbit[1:4]).ccw()


def triangle_invariance(params, snap=1e-12):
    """Whether F(Theta) lies in Theta, and the worst containment margin.

    Image vertices that coincide with a vertex of Theta up to
    ``snap * diam(Theta)`` are boundary contacts (F(D) is hit by the image of
    D, F^2(D) and F^3(D) by their preimages); their margin is 0 rather than
    the roundoff residue of re-deriving the same point.
    """
    require_structure(params)
    theta = triangle(params)
    image = map_polygon(params, theta)
    margins = theta.signed_distances(image.vertices)
    scale = snap * theta.diameter()
    gap = np.sqrt(((image.vertices[:, None, :] - theta.vertices[None, :, :]) ** 2).sum(-1)).min(axis=1)
    margins = np.where(gap <= scale, np.maximum(margins, 0), margins)
    margin = margins.min()
    return bool(margin >= 0), margin


@dataclass
class Polyline:
    vertices: np.ndarray
    crossings: np.ndarray = None  # vertex on the divider
    turning: np.ndarray = None    # vertex on F(divider) that is an image of a crossing
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        n = len(self.vertices)
        if self.crossings is None:
            self.crossings = np.zeros(n, dtype=bool)
        if self.turning is None:
            self.turning = np.zeros(n, dtype=bool)

    def __len__(self):
        return len(self.vertices)

    def segment_slopes(self):
        d = np.diff(self.vertices, axis=0)
        with np.errstate(divide="ignore", invalid="ignore"):
            return d[:, 1] / d[:, 0]

    def arc_length(self):
        d = np.diff(self.vertices, axis=0)
        return np.concatenate([[0], np.cumsum(np.hypot(d[:, 0], d[:, 1]))])

    def turning_points(self):
        return self.vertices[self.turning]


def _insert_crossings(pts):
    """Insert a vertex wherever a segment crosses x = 0.

    Returns the new vertices, the mask of vertices on the divider and the
    insertion offsets (as accepted by ``np.insert``) so that per-vertex
    masks can follow along.
    """
    eps = divider_eps()
    x = pts[:, 0]
    on = np.abs(x) <= eps
    sgn = np.sign(x)
    cut = np.nonzero((sgn[:-1] * sgn[1:] < 0) & ~on[:-1] & ~on[1:])[0] + 1
    if len(cut) == 0:
        return pts, on, cut
    p, q = pts[cut - 1], pts[cut]
    t = p[:, 0] / (p[:, 0] - q[:, 0])
    new = np.column_stack([np.zeros_like(t), p[:, 1] + t * (q[:, 1] - p[:, 1])])
    return np.insert(pts, cut, new, axis=0), np.insert(on, cut, True), cut


def _advance(params, pts, cap):
    pts, crossings, _ = _insert_crossings(pts)
    if len(pts) > cap:
        raise GeometryError(f"vertex cap {cap} exceeded ({len(pts)} vertices)")
    return eval_points(params, pts), crossings


def grow_unstable_manifold(params, generations, cap=DEFAULT_VERTEX_CAP):
    """Generation ``n`` of the unstable manifold of X: F^n([D, F(D)]).

    Each step inserts exact divider crossings and maps every vertex; the
    images of the crossings are the turning points.  The returned polyline
    also carries the crossings of its own last generation, inserted and
    marked, so it can be fed to the next step unchanged.
    """
    require_structure(params)
    if generations < 0:
        raise ValueError("generations must be >= 0")
    pts = d_orbit(params, 1)
    # F(D) becomes a turning point once D is recorded as a crossing, in generation 1
    turning = np.zeros(2, dtype=bool)
    for _ in range(generations):
        if len(pts) * 2 > cap:
            raise GeometryError(f"generation would exceed the vertex cap of {cap}")
        pts, crossed = _advance(params, pts, cap)
        turning = crossed
    final, crossings, cut = _insert_crossings(pts)
    turning = np.insert(turning, cut, False)
    return Polyline(final, crossings, turning, meta={"generations": generations})


@dataclass(frozen=True)
class TurningPoint:
    point: Point
    # unit tangents toward the previous and the next vertex along the arc
    back: tuple
    ahead: tuple
    arc: float


def turning_point_data(params, count, cap=DEFAULT_VERTEX_CAP, max_rounds=64):
    """First ``count`` turning points on the arc of W^u(X) from X through F(D).

    The arc [X, F(D)] is pushed forward by F^2, which maps it onto a longer
    arc starting at X with the same orientation, so vertex order is arc order.
    """
    require_structure(params)
    if count < 0:
        raise ValueError("count must be >= 0")
    X = fixed_points(params).X.point
    pts = asarray([X, d_orbit(params, 1)[1]])
    turning = np.array([False, True])
    for _ in range(max_rounds):
        if turning.sum() >= count and _ends_past_last(pts, turning, count):
            break
        pts, _ = _advance(params, pts, cap)
        pts, crossed = _advance(params, pts, cap)
        turning = crossed
    else:
        raise GeometryError(f"fewer than {count} turning points after {max_rounds} double steps")

    arc = Polyline(pts).arc_length()
    out = []
    for i in np.nonzero(turning)[0][:count]:
        back = _unit(pts[i - 1] - pts[i]) if i > 0 else None
        ahead = _unit(pts[i + 1] - pts[i]) if i + 1 < len(pts) else None
        out.append(TurningPoint(Point(*pts[i]), back, ahead, arc[i]))
    return out


def _ends_past_last(pts, turning, count):
    # the count-th turning point must not be the final vertex (its forward side is unknown)
    return np.nonzero(turning)[0][count - 1] < len(pts) - 1 if count else True


def _unit(v):
    n = np.hypot(v[0], v[1])
    return (v[0] / n, v[1] / n)


def turning_points(params, count, cap=DEFAULT_VERTEX_CAP):
    return [tp.point for tp in turning_point_data(params, count, cap)]


def attractor_orbit(params, n, transient=0, seed=None, radius=1e3):
    """``n`` orbit points after discarding ``transient`` iterates.

    The default seed is X pushed 1e-6 along its unstable eigenvector.
    """
    require_structure(params)
    a, b, c = params.abc()
    if seed is None:
        fp = fixed_points(params).X
        v = fp.eigen.vec_unstable
        norm = np.hypot(v.dx, v.dy)
        seed = (fp.point.x + real(1e-6) * v.dx / norm, fp.point.y + real(1e-6) * v.dy / norm)
    x, y = real(seed[0]), real(seed[1])
    out = np.empty((n, 2), dtype=dtype())
    for k in range(transient + n):
        x, y = 1 + y + ((a - c) if x < 0 else -(a + c)) * x, b * x
        if not (abs(x) < radius and abs(y) < radius):
            raise ParameterError(f"orbit left the disc of radius {radius} at step {k}")
        if k >= transient:
            out[k - transient] = x, y
    return out


def distance_to_polyline(points, vertices, cutoff=np.inf):
    """Euclidean distance from each point to a polyline given by its vertices.

    With a finite ``cutoff`` only segments whose bounding box comes within
    ``cutoff`` of a point are examined, and points farther than ``cutoff``
    from every segment get ``inf``.
    """
    points = np.asarray(points, dtype=np.float64).reshape(-1, 2)
    v = np.asarray(vertices, dtype=np.float64)
    p0, seg = v[:-1], np.diff(v, axis=0)
    lo, hi = np.minimum(v[:-1], v[1:]), np.maximum(v[:-1], v[1:])
    seg_len2 = (seg ** 2).sum(axis=1)
    seg_len2[seg_len2 == 0] = 1.0
    bounded = np.isfinite(cutoff)
    out = np.full(len(points), np.inf)
    for k, q in enumerate(points):
        if bounded:
            near = np.flatnonzero((lo[:, 0] <= q[0] + cutoff) & (hi[:, 0] >= q[0] - cutoff)
                                  & (lo[:, 1] <= q[1] + cutoff) & (hi[:, 1] >= q[1] - cutoff))
            if not len(near):
                continue
        else:
            near = slice(None)
        rel = q - p0[near]
        t = np.clip((rel * seg[near]).sum(-1) / seg_len2[near], 0.0, 1.0)
        diff = rel - t[:, None] * seg[near]
        best = np.sqrt((diff ** 2).sum(-1).min())
        if best <= cutoff:
            out[k] = best
    return out


def manifold_distance_bound(params, points, generation, tol, cap=DEFAULT_VERTEX_CAP):
    """Distances from ``points`` to manifold generation ``generation``, cheaply.

    Generations are nested, so the distance to an earlier generation bounds
    the distance to a later one from above.  Points are tested against
    generations 0, 1, ... and retired once a bound drops to ``tol``; only the
    rest are measured against the full generation.  Returned values are
    therefore upper bounds no larger than ``tol`` for retired points and
    exact distances for the others.
    """
    points = np.asarray(points, dtype=np.float64).reshape(-1, 2)
    best = np.full(len(points), np.inf)
    open_ = np.ones(len(points), dtype=bool)
    for g in range(generation + 1):
        if not open_.any():
            break
        verts = grow_unstable_manifold(params, g, cap=cap).vertices
        idx = np.flatnonzero(open_)
        cutoff = np.inf if g == generation else tol
        d = distance_to_polyline(points[idx], verts, cutoff=cutoff)
        best[idx] = np.minimum(best[idx], d)
        open_[idx[d <= tol]] = False
    return best


def iterates_to_cross_axes(params, start, end, max_iter=40, cap=DEFAULT_VERTEX_CAP):
    """Smallest k <= max_iter such that F^k([start, end]) has a straight piece
    meeting both the divider and the x-axis; None if there is none.

    Every interior vertex of an iterated arc is the image of a divider
    crossing, hence a kink, so the straight pieces are exactly its segments.
    """
    pts = asarray([start, end])
    for k in range(max_iter + 1):
        p, q = pts[:-1], pts[1:]
        hits_x0 = np.minimum(p[:, 0], q[:, 0]) <= 0
        hits_x0 &= np.maximum(p[:, 0], q[:, 0]) >= 0
        hits_y0 = np.minimum(p[:, 1], q[:, 1]) <= 0
        hits_y0 &= np.maximum(p[:, 1], q[:, 1]) >= 0
        if np.any(hits_x0 & hits_y0):
            return k
        pts, _ = _advance(params, pts, cap)
    return None
