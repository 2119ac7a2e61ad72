"""Exact piecewise-linear curve arrangements on the square torus.

Genus-one diagrams are generated here: each attaching curve is a closed PL
loop on R^2/Z^2 given by rational waypoints and an integer holonomy vector.
Straight curves of a rational slope are loops with a single segment; "small
isotopic translate" curves are zigzag loops.  All crossings, cyclic corner
data, faces and sample points are computed in exact rational arithmetic.

The face-tracing convention: at a 4-valent crossing, a boundary walk with
the face on its left departs along the stub one step clockwise from the
arrival stub, so each visit claims exactly one corner sector.  Faces of the
complement of essential curves on the torus are disks or essential annuli;
boundary cycles are matched into faces by exact ray shooting.

First-order perturbation arithmetic (DualFrac) supports crossing counts
against curves translated by an infinitesimal normal push-off, which is how
spider-leg intersection numbers are evaluated without choosing a concrete
offset size.
"""

from fractions import Fraction

from .errors import CoincidentCurves, NonGenericSpider


# ---------------------------------------------------------------------------
# small exact-vector helpers
# ---------------------------------------------------------------------------

def frac_pt(x, y):
    return (Fraction(x), Fraction(y))


def vadd(a, b):
    return (a[0] + b[0], a[1] + b[1])


def vsub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def vscale(c, a):
    return (c * a[0], c * a[1])


def cross(a, b):
    return a[0] * b[1] - a[1] * b[0]


def reduce_torus(p):
    return (p[0] - (p[0] // 1), p[1] - (p[1] // 1))


def angle_key_less(d1, d2):
    """Strict counterclockwise-from-positive-x-axis comparison of directions."""
    def half(d):
        return 0 if (d[1] > 0 or (d[1] == 0 and d[0] > 0)) else 1
    h1, h2 = half(d1), half(d2)
    if h1 != h2:
        return h1 < h2
    c = cross(d1, d2)
    if c == 0:
        raise CoincidentCurves("parallel directions at a crossing")
    return c > 0


def sort_directions_ccw(stubs):
    """Sort (direction, payload) pairs counterclockwise, exactly."""
    out = list(stubs)
    # insertion sort with the exact comparator (n = 4 here)
    for i in range(1, len(out)):
        j = i
        while j > 0 and angle_key_less(out[i][0], out[j - 1][0]):
            j -= 1
        out.insert(j, out.pop(i))
    return out


# ---------------------------------------------------------------------------
# first-order perturbation arithmetic
# ---------------------------------------------------------------------------

class DualFrac:
    """Fraction plus an infinitesimal: a + b*eps with eps > 0 smaller than
    any positive rational.  Comparisons are lexicographic."""

    __slots__ = ("a", "b")

    def __init__(self, a, b=0):
        self.a = Fraction(a)
        self.b = Fraction(b)

    def __add__(self, o):
        o = _dual(o)
        return DualFrac(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, o):
        o = _dual(o)
        return DualFrac(self.a - o.a, self.b - o.b)

    def __rsub__(self, o):
        return _dual(o) - self

    def __mul__(self, o):
        o = _dual(o)
        return DualFrac(self.a * o.a, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = _dual(o)
        if o.a == 0:
            raise NonGenericSpider("division by infinitesimal")
        inv_a = 1 / o.a
        return DualFrac(self.a * inv_a, (self.b * o.a - self.a * o.b) * inv_a * inv_a)

    def __neg__(self):
        return DualFrac(-self.a, -self.b)

    def _cmp(self, o):
        o = _dual(o)
        if self.a != o.a:
            return -1 if self.a < o.a else 1
        if self.b != o.b:
            return -1 if self.b < o.b else 1
        return 0

    def __lt__(self, o):
        return self._cmp(o) < 0

    def __le__(self, o):
        return self._cmp(o) <= 0

    def __gt__(self, o):
        return self._cmp(o) > 0

    def __ge__(self, o):
        return self._cmp(o) >= 0

    def __eq__(self, o):
        return self._cmp(o) == 0

    def __hash__(self):
        return hash((self.a, self.b))

    def __repr__(self):
        return f"DualFrac({self.a}, {self.b})"


def _dual(x):
    return x if isinstance(x, DualFrac) else DualFrac(x)


def dual_cross(a, b):
    return a[0] * b[1] - a[1] * b[0]


def segment_crossing_sign(p, q, a, b):
    """Signed transverse crossing of segment p->q with oriented segment a->b.

    Coordinates may be DualFrac.  Returns +1 / -1 when the open segments
    cross transversally (sign of det(b-a, q-p)), 0 when they do not meet,
    and raises NonGenericSpider on touching or parallel-overlap
    configurations that first-order perturbation cannot resolve.
    """
    d1 = (q[0] - p[0], q[1] - p[1])
    d2 = (b[0] - a[0], b[1] - a[1])
    den = dual_cross(d2, d1)
    w = (a[0] - p[0], a[1] - p[1])
    if den == 0:
        if dual_cross(d2, w) == 0:
            raise NonGenericSpider("collinear overlap between leg and boundary")
        return 0
    t = dual_cross(d2, w) / den        # along p->q
    s = dual_cross(d1, w) / den        # along a->b
    zero, one = DualFrac(0), DualFrac(1)
    if t == zero or t == one or s == zero or s == one:
        raise NonGenericSpider("leg touches a boundary endpoint")
    if zero < t < one and zero < s < one:
        return 1 if den > 0 else -1
    return 0


# ---------------------------------------------------------------------------
# curves
# ---------------------------------------------------------------------------

class PLCurve:
    """Closed PL loop on the torus.

    The plane path visits waypoints[0], ..., waypoints[-1], then closes up
    at waypoints[0] + holonomy.  Holonomy must be nonzero (the curve is
    essential) except never for attaching circles in practice.
    """

    def __init__(self, waypoints, holonomy):
        self.waypoints = [frac_pt(*w) for w in waypoints]
        self.holonomy = (int(holonomy[0]), int(holonomy[1]))

    def segments(self):
        pts = self.waypoints + [vadd(self.waypoints[0], self.holonomy)]
        return [(pts[i], pts[i + 1]) for i in range(len(pts) - 1)]

    def direction(self, seg_idx):
        a, b = self.segments()[seg_idx]
        return vsub(b, a)

    def point_at(self, seg_idx, t):
        a, b = self.segments()[seg_idx]
        return vadd(a, vscale(t, vsub(b, a)))


def line_curve(direction, offset):
    """Straight curve of primitive integer direction through offset."""
    return PLCurve([offset], direction)


def translate_range(lo_a, hi_a, lo_b, hi_b):
    """Integers n with [lo_b + n, hi_b + n] meeting [lo_a, hi_a]."""
    import math
    lo = math.ceil(lo_a - hi_b)
    hi = math.floor(hi_a - lo_b)
    return range(lo, hi + 1)


def _seg_bbox(a, b):
    return (min(a[0], b[0]), max(a[0], b[0]), min(a[1], b[1]), max(a[1], b[1]))


def _segment_intersection(p, q, a, b):
    """Interior intersection of plane segments, exact.

    Returns (t, s, point) with 0 < t, s < 1 or None; endpoint touching is
    reported as a degenerate hit via ValueError so builders can reject."""
    d1 = vsub(q, p)
    d2 = vsub(b, a)
    den = cross(d2, d1)
    w = vsub(a, p)
    if den == 0:
        if cross(d2, w) == 0:
            # collinear: overlap would mean coincident curves
            lo1, hi1 = sorted((p, q))
            lo2, hi2 = sorted((a, b))
            if max(lo1, lo2) < min(hi1, hi2):
                raise ValueError("collinear overlap")
        return None
    t = cross(d2, w) / den
    s = cross(d1, w) / den
    if 0 < t < 1 and 0 < s < 1:
        return (t, s, vadd(p, vscale(t, d1)))
    if (t in (0, 1) and 0 <= s <= 1) or (s in (0, 1) and 0 <= t <= 1):
        raise ValueError("segment endpoint lies on another curve")
    return None


def curve_crossings(curves):
    """All pairwise torus crossings of a family of PL curves.

    Returns a list of records
        (torus_point, [(curve_id, seg_idx, t, plane_point, direction), ...])
    with exactly two curve entries each.  Raises CoincidentCurves on
    tangential, overlapping, endpoint-touching or triple-point data.
    """
    found = {}
    ids = sorted(curves)
    for ii, ci in enumerate(ids):
        for cj in ids[ii:]:
            same = ci == cj
            segs_i = curves[ci].segments()
            segs_j = curves[cj].segments()
            n_i, n_j = len(segs_i), len(segs_j)
            for si, (p, q) in enumerate(segs_i):
                bb = _seg_bbox(p, q)
                for sj, (a0, b0) in enumerate(segs_j):
                    ab = _seg_bbox(a0, b0)
                    for m in translate_range(bb[0], bb[1], ab[0], ab[1]):
                        for n in translate_range(bb[2], bb[3], ab[2], ab[3]):
                            if same and si == sj and m == 0 and n == 0:
                                continue
                            a = vadd(a0, (m, n))
                            b = vadd(b0, (m, n))
                            if same:
                                # adjacent segments legitimately share a point
                                shares = (q == a) or (p == b)
                                if shares:
                                    continue
                            try:
                                hit = _segment_intersection(p, q, a, b)
                            except ValueError as exc:
                                raise CoincidentCurves(
                                    f"curves {ci},{cj}: {exc}") from exc
                            if hit is None:
                                continue
                            if same:
                                raise CoincidentCurves(
                                    f"curve {ci} self-intersects")
                            t, s, pt = hit
                            key = reduce_torus(pt)
                            rec = found.setdefault(key, [])
                            entry_i = (ci, si, t, pt, vsub(q, p))
                            pt_j = vsub(pt, (m, n))
                            entry_j = (cj, sj, s, pt_j, vsub(b0, a0))
                            for e in (entry_i, entry_j):
                                if not any(x[0] == e[0] and x[1] == e[1]
                                           and x[2] == e[2] for x in rec):
                                    rec.append(e)
    out = []
    for key, rec in sorted(found.items()):
        if len(rec) != 2:
            raise CoincidentCurves(f"non-transverse point at {key}")
        out.append((key, rec))
    return out


# ---------------------------------------------------------------------------
# arrangement -> combinatorial surface data
# ---------------------------------------------------------------------------

class Geometry:
    """Exact geometric payload attached to an arrangement-built surface."""

    def __init__(self, curves, vertex_points, edge_paths, face_samples):
        self.curves = curves                # curve_id -> PLCurve
        self.vertex_points = vertex_points  # vertex_id -> torus point
        self.edge_paths = edge_paths        # edge_id -> list of plane points
        self.face_samples = face_samples    # face_id -> torus point
        self.curve_intervals = {}           # cid -> [((seg, t), eid), ...]
        self.side_face = {}                 # (eid, +-1) -> face id

    def all_segments(self):
        for cid, curve in sorted(self.curves.items()):
            for k, (a, b) in enumerate(curve.segments()):
                yield cid, k, a, b

    def edge_at(self, cid, seg, t):
        """Edge of a curve covering parameter (seg, t)."""
        marks = self.curve_intervals[cid]
        if len(marks) == 1 and marks[0][0] is None:
            return marks[0][1]
        param = (seg, t)
        # edges run from mark i to mark i+1 cyclically
        for i, (p, eid) in enumerate(marks):
            nxt = marks[(i + 1) % len(marks)][0]
            if (p < param < nxt) if p < nxt else (param > p or param < nxt):
                return eid
        raise NonGenericSpider("parameter hits a crossing")

    def locate_face(self, point):
        """Face containing a torus point (must not lie on a curve)."""
        return _locate(self, reduce_torus((Fraction(point[0]),
                                           Fraction(point[1]))))


def _ray_hits(geometry, origin, direction, tmax):
    """Exact hits of ray origin + t*direction, 0 < t <= tmax, against all
    curve segment translates.  Yields (t, curve_id, seg_idx, s, tangent)."""
    ox, oy = origin
    dx, dy = direction
    hits = []
    lo_x = min(ox, ox + tmax * dx)
    hi_x = max(ox, ox + tmax * dx)
    lo_y = min(oy, oy + tmax * dy)
    hi_y = max(oy, oy + tmax * dy)
    for cid, k, a0, b0 in geometry.all_segments():
        sb = _seg_bbox(a0, b0)
        for m in translate_range(lo_x, hi_x, sb[0], sb[1]):
            for n in translate_range(lo_y, hi_y, sb[2], sb[3]):
                a = vadd(a0, (m, n))
                b = vadd(b0, (m, n))
                d2 = vsub(b, a)
                den = cross(d2, direction)
                if den == 0:
                    continue
                w = vsub(origin, a)
                t = cross(w, d2) / den
                s = cross(w, direction) / den
                if 0 < t <= tmax and 0 <= s <= 1:
                    hits.append((t, s, cid, k, d2))
    return sorted(hits, key=lambda h: h[0])


def _first_clean_hit(geometry, origin, direction):
    scale = max(abs(direction[0]), abs(direction[1]))
    direction = (direction[0] / scale, direction[1] / scale)
    tmax = Fraction(4)
    while tmax <= 64:
        hits = _ray_hits(geometry, origin, direction, tmax)
        if hits:
            t, s, cid, k, d2 = hits[0]
            if s in (0, 1):
                return None  # caller perturbs and retries
            return hits[0]
        tmax *= 2
    raise CoincidentCurves("ray escaped the arrangement")


def _facing_side(d2, ray_dir):
    """Traversal sign of the hit segment whose left side faces the ray origin."""
    c = cross(d2, ray_dir)
    if c == 0:
        raise CoincidentCurves("ray parallel to hit segment")
    return 1 if c < 0 else -1


def _locate(geometry, point):
    """Face id containing a torus point, by downward ray shooting."""
    for wiggle in (Fraction(0), Fraction(1, 257), Fraction(2, 515),
                   Fraction(3, 1021)):
        origin = (point[0] + wiggle, point[1])
        hit = _first_clean_hit(geometry, origin, (Fraction(0), Fraction(-1)))
        if hit is None:
            continue
        t, s, cid, k, d2 = hit
        try:
            eid = geometry.edge_at(cid, k, s)
        except NonGenericSpider:
            continue
        return geometry.side_face[(eid, _facing_side(d2, (0, -1)))]
    raise CoincidentCurves("could not locate point off the curves")


class ArrangementSurface:
    """Raw output of the arrangement builder, consumed by surfaces.py.

    vertices: vid -> (ends, corners); ends = 4 stubs (edge_id, +1 tail /
    -1 head) in counterclockwise order; corners[k] sits between ends[k]
    and ends[k+1].
    edges: eid -> (curve_id, frm, to)  (frm = to = None for a loop edge)
    faces: fid -> (tuple of cycles, euler characteristic); a cycle is a
    tuple of signed edge ids (+e forward with the face on the left).
    """

    def __init__(self, vertices, edges, faces, geometry):
        self.vertices = vertices
        self.edges = edges
        self.faces = faces
        self.geometry = geometry


def build_arrangement(curves):
    """Compute the full combinatorial arrangement of PL curves on the torus.

    ``curves`` maps curve ids to PLCurve.  Every curve must be embedded;
    crossings must be pairwise transverse and distinct.
    """
    crossings = curve_crossings(curves)

    vertex_ids = {}
    for idx, (pt, _rec) in enumerate(crossings):
        vertex_ids[pt] = f"v{idx}"

    # order crossings along each curve
    per_curve = {cid: [] for cid in curves}
    for pt, rec in crossings:
        for (cid, seg, t, plane_pt, tangent) in rec:
            per_curve[cid].append(((seg, t), pt, plane_pt, tangent))
    for cid in per_curve:
        per_curve[cid].sort(key=lambda item: item[0])

    edges = {}
    edge_paths = {}
    edge_base_segs = {}   # eid -> base segment index per path piece
    curve_intervals = {}  # cid -> [((seg, t), eid), ...] in parameter order
    stubs_at = {v: [] for v in vertex_ids.values()}
    e_count = 0
    for cid in sorted(curves):
        items = per_curve[cid]
        curve = curves[cid]
        segs = curve.segments()
        L = len(segs)
        if not items:
            eid = f"e{e_count}"
            e_count += 1
            edges[eid] = (cid, None, None)
            edge_paths[eid] = [segs[0][0]] + [s[1] for s in segs]
            edge_base_segs[eid] = list(range(L))
            curve_intervals[cid] = [(None, eid)]
            continue
        m = len(items)
        curve_intervals[cid] = []
        for i in range(m):
            (seg_a, t_a), pt_a, plane_a, tan_a = items[i]
            (seg_b, t_b), pt_b, plane_b, tan_b = items[(i + 1) % m]
            eid = f"e{e_count}"
            e_count += 1
            va, vb = vertex_ids[pt_a], vertex_ids[pt_b]
            edges[eid] = (cid, va, vb)
            # geometric path from plane_a forward to the next crossing;
            # crossings never sit on waypoints, so pieces align one-to-one
            # with the base segments traversed
            wrap = (i + 1 == m)
            seg_b_eff = seg_b + (L if wrap else 0)
            path = [plane_a]
            base = []
            for s in range(seg_a + 1, seg_b_eff + 1):
                path.append(vadd(segs[s % L][0],
                                 vscale(s // L, curve.holonomy)))
                base.append((s - 1) % L)
            path.append(vadd(plane_b,
                             vscale(seg_b_eff // L, curve.holonomy)))
            base.append(seg_b_eff % L)
            edge_paths[eid] = path
            edge_base_segs[eid] = base
            curve_intervals[cid].append(((seg_a, t_a), eid))
            stubs_at[va].append((tan_a, (eid, 1)))
            stubs_at[vb].append(((-tan_b[0], -tan_b[1]), (eid, -1)))

    vertices = {}
    for pt, rec in crossings:
        v = vertex_ids[pt]
        stubs = sort_directions_ccw(stubs_at[v])
        if len(stubs) != 4:
            raise CoincidentCurves(f"vertex {v} is not 4-valent")
        vertices[v] = [s[1] for s in stubs]

    # ------------------------------------------------------------------
    # face tracing: states (eid, +1/-1); +1 keeps the face on the left of
    # the forward orientation
    # ------------------------------------------------------------------
    def next_state(state):
        eid, sgn = state
        cid, frm, to = edges[eid]
        if frm is None:
            return state  # loop edge: the cycle is the single state
        v = to if sgn == 1 else frm
        arrival = (eid, -1 if sgn == 1 else 1)
        ends = vertices[v]
        i = ends.index(arrival)
        dep = ends[(i - 1) % 4]
        return (dep[0], 1 if dep[1] == 1 else -1)

    states = [(e, s) for e in sorted(edges) for s in (1, -1)]
    orbit_of = {}
    cycles = []
    for st in states:
        if st in orbit_of:
            continue
        cyc = []
        cur = st
        while cur not in orbit_of:
            orbit_of[cur] = len(cycles)
            cyc.append(cur)
            cur = next_state(cur)
        cycles.append(cyc)

    # corner assignment: when a cycle arrives at stub index i it owns the
    # corner between stubs i-1 and i
    corner_face = {}
    for ci, cyc in enumerate(cycles):
        for (eid, sgn) in cyc:
            cid, frm, to = edges[eid]
            if frm is None:
                continue
            v = to if sgn == 1 else frm
            arrival = (eid, -1 if sgn == 1 else 1)
            i = vertices[v].index(arrival)
            corner_face[(v, (i - 1) % 4)] = ci

    # ------------------------------------------------------------------
    # group boundary cycles into faces: sample a point just left of each
    # cycle, shoot a ray away from the edge; the facing side of the first
    # hit belongs to the same complement region
    # ------------------------------------------------------------------
    geometry = Geometry(curves, {v: vertex_ids_pt for vertex_ids_pt, v in
                                 ((p, vertex_ids[p]) for p, _ in crossings)},
                        edge_paths, {})
    geometry.curve_intervals = curve_intervals

    parent = list(range(len(cycles)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        parent[find(x)] = find(y)

    cycle_sample = {}
    for ci, cyc in enumerate(cycles):
        eid, sgn = cyc[0]
        path = edge_paths[eid]
        a, b = path[0], path[1]
        if sgn == -1:
            a, b = b, a
        d = vsub(b, a)
        normal = (-d[1], d[0])  # left of traversal
        sampled = False
        for frac in (Fraction(1, 2), Fraction(1, 3), Fraction(2, 5),
                     Fraction(3, 7), Fraction(5, 11)):
            mid = vadd(a, vscale(frac, d))
            hit = _first_clean_hit(geometry, mid, normal)
            if hit is None:
                continue
            t, s, cid2, k2, d2 = hit
            try:
                eid2 = geometry.edge_at(cid2, k2, s)
            except NonGenericSpider:
                continue
            inward = vadd(mid, vscale(t / 2, normal))
            cycle_sample[ci] = reduce_torus(inward)
            union(ci, orbit_of[(eid2, _facing_side(d2, normal))])
            sampled = True
            break
        if not sampled:
            raise CoincidentCurves("no generic sample along a face cycle")

    groups = {}
    for ci in range(len(cycles)):
        groups.setdefault(find(ci), []).append(ci)

    faces = {}
    face_of_cycle = {}
    face_samples = {}
    for fi, root in enumerate(sorted(groups)):
        fid = f"f{fi}"
        members = groups[root]
        cycs = []
        for ci in members:
            face_of_cycle[ci] = fid
            cycs.append(tuple((1 if sgn == 1 else -1) *
                              (int(eid[1:]) + 1) for (eid, sgn) in cycles[ci]))
        euler = 2 - len(members)
        faces[fid] = (tuple(cycs), euler)
        face_samples[fid] = cycle_sample[members[0]]

    # finalize vertex records with face-valued corners
    vertices_out = {}
    for v, ends in vertices.items():
        corners = tuple(face_of_cycle[corner_face[(v, k)]] for k in range(4))
        vertices_out[v] = (tuple(ends), corners)

    geometry.face_samples = face_samples
    geometry.side_face = {(eid, sgn): face_of_cycle[ci]
                          for (eid, sgn), ci in orbit_of.items()}

    # signed-cycle encoding used integer aliases; translate back to edge ids
    def decode(cycle):
        return tuple(("+" if c > 0 else "-") + f"e{abs(c) - 1}" for c in cycle)

    faces_out = {fid: (tuple(decode(c) for c in cycs), euler)
                 for fid, (cycs, euler) in faces.items()}

    return ArrangementSurface(vertices_out, edges, faces_out, geometry)


# ---------------------------------------------------------------------------
# plane polygons against the arrangement (used for triangle classes, spiders)
# ---------------------------------------------------------------------------

def point_in_convex(point, poly):
    """Strict interior test for a convex polygon given counterclockwise."""
    n = len(poly)
    for i in range(n):
        a, b = poly[i], poly[(i + 1) % n]
        if cross(vsub(b, a), vsub(point, a)) <= 0:
            return False
    return True


def orient_ccw(poly):
    area2 = sum(cross(poly[i], poly[(i + 1) % len(poly)])
                for i in range(len(poly)))
    if area2 == 0:
        raise CoincidentCurves("degenerate polygon")
    return list(poly) if area2 > 0 else list(reversed(poly))


def polygon_face_multiplicities(geometry, poly_ccw):
    """Multiplicity of each torus face under the projected polygon.

    Counts, for each face sample s, the lattice translates s + (m, n)
    interior to the polygon.  The sample never lies on a curve, hence
    never on the polygon boundary.
    """
    xs = [p[0] for p in poly_ccw]
    ys = [p[1] for p in poly_ccw]
    out = {}
    for fid, s in geometry.face_samples.items():
        cnt = 0
        for m in translate_range(min(xs), max(xs), s[0], s[0]):
            for n in translate_range(min(ys), max(ys), s[1], s[1]):
                if point_in_convex(vadd(s, (m, n)), poly_ccw):
                    cnt += 1
        if cnt:
            out[fid] = cnt
    return out


def dualize(p):
    return (_dual(p[0]), _dual(p[1]))


def pushed_segments(curve, orientation_sign, weight_sign):
    """Segments of a curve translated by eps along its inward normal.

    The curve is traversed with orientation_sign (+1 its own order); the
    push-off goes to the left of that orientation (rotate tangent by +90
    degrees), and weight_sign only flips which side via orientation.
    Returns segments as DualFrac point pairs, oriented by the traversal.
    """
    segs = []
    for a, b in curve.segments():
        d = vsub(b, a)
        if orientation_sign < 0:
            a, b, d = b, a, (-d[0], -d[1])
        normal = (-d[1], d[0])
        pa = (DualFrac(a[0], normal[0]), DualFrac(a[1], normal[1]))
        pb = (DualFrac(b[0], normal[0]), DualFrac(b[1], normal[1]))
        segs.append((pa, pb))
    del weight_sign
    return segs


def leg_crossing_number(leg_points, curve, coeff, translates_box):
    """Signed crossings of a PL leg with the eps-pushed-off full curve.

    ``coeff`` is the (nonzero) full-curve coefficient of the boundary;
    its sign orients the curve, and the magnitude multiplies the count.
    translates_box = (mlo, mhi, nlo, nhi) lattice window to scan.
    """
    s = 1 if coeff > 0 else -1
    total = 0
    base = pushed_segments(curve, s, s)
    mlo, mhi, nlo, nhi = translates_box
    for i in range(len(leg_points) - 1):
        p = dualize(leg_points[i])
        q = dualize(leg_points[i + 1])
        for (a, b) in base:
            for m in range(mlo, mhi + 1):
                for n in range(nlo, nhi + 1):
                    am = (a[0] + m, a[1] + n)
                    bm = (b[0] + m, b[1] + n)
                    total += segment_crossing_sign(p, q, am, bm)
    return abs(coeff) * total
