"""Spin-c classification, Chern-class evaluation, and gradings.

Three layers live here:

* the first-homology obstruction separating intersection tuples (and
  triangle corners): computed by pairing an explicit connecting 1-cycle
  against left push-offs of the first family's curves, so that no homology
  basis for the surface is ever needed;

* Euler measure, corner point measures, spider numbers and the evaluation
  of the first Chern class of a triangle's Spin-c structure on a periodic
  domain -- the genus-one geometric machinery works on exact rational
  lifts to the plane, and a combinatorial spider interface covers general
  diagrams;

* Maslov indices.  Disks use the classical domain formula
  (Euler measure plus the two corner measures).  Triangles are anchored:
  a class represented by a positively-oriented embedded polygon is rigid
  of index zero, an anti-oriented one has index -1, and everything else is
  reached through the wall-crossing rule
      mu(psi + l*S + P) = mu(psi) + 2 l + <c1(s_z(psi)), H(P)> + H(P)^2,
  where S is the whole surface and P runs over the periodic lattice.
  The anchor values are forced by the rigid model triangles and are
  cross-checked against every model computation in the test suite.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import chains, plgeom, surfaces
from .errors import (DifferentClass, MalformedCorners, NoClass,
                     NonCanonicalBase, NonGenericSpider,
                     NonTorsionRestriction, NotStandard)
from .intlinalg import QuotientGroup


# ---------------------------------------------------------------------------
# first-homology obstruction
# ---------------------------------------------------------------------------

@dataclass
class ObstructionClass:
    group: QuotientGroup
    raw: tuple          # pairing vector against the first family's curves

    @property
    def coords(self):
        return self.group.coords(self.raw)

    @property
    def is_zero(self):
        return all(c == 0 for c in self.coords)

    def __eq__(self, other):
        return self.group.invariants == other.group.invariants and \
            self.coords == other.coords


def _curve_path(surface, curve, start, end):
    """Edges of the curve from vertex start to vertex end, forward.

    Returns (edges, visits): visits is a list of
    (vertex, arrival stub index or None, departure stub index or None)
    covering the start (departure only), interior, and end (arrival only)
    vertices.  Empty when start == end."""
    if start == end:
        return [], []
    cyc = surfaces._curve_cycle(surface, curve)
    es = {e: surface.edges[e] for e in cyc}
    path = []
    cur = start
    while cur != end:
        eid = next(e for e in cyc if es[e].frm == cur)
        path.append(eid)
        cur = es[eid].to
        if len(path) > len(cyc):
            raise MalformedCorners("curve walk failed to close")
    visits = []

    def stub_index(vertex, stub):
        return surface.vertices[vertex].ends.index(stub)

    visits.append((start, None, stub_index(start, (path[0], 1))))
    for i in range(len(path) - 1):
        v = es[path[i]].to
        visits.append((v, stub_index(v, (path[i], -1)),
                       stub_index(v, (path[i + 1], 1))))
    visits.append((end, stub_index(end, (path[-1], -1)), None))
    return path, visits


def _pushoff_pairing(diagram, ref_curves, walks):
    """Pair the union of transversal walks against left push-offs of the
    reference curves.  walks: list of (curve, visits) from _curve_path."""
    surf = diagram.surface
    out = []
    for ref in ref_curves:
        on_ref = set(surfaces.vertices_on(surf, ref))
        total = 0
        for curve, visits in walks:
            if curve == ref:
                continue
            for (v, arr, dep) in visits:
                if v not in on_ref:
                    continue
                ends = surf.vertices[v].ends
                p = next(i for i, (eid, s) in enumerate(ends)
                         if s == 1 and surf.edges[eid].curve == ref)
                left = (p + 1) % 4
                if dep is not None and dep == left:
                    total += 1
                if arr is not None and arr == left:
                    total -= 1
        out.append(total)
    return out


def _transversal_matrix(diagram, ref_curves, other_families):
    cols = []
    for label in other_families:
        for b in diagram.curves_of(label):
            col = []
            for a in ref_curves:
                s = 0
                for v in surfaces.vertices_on(diagram.surface, a):
                    if b in surfaces.curve_through(diagram, v):
                        s += surfaces.crossing_sign(diagram.surface, v, a, b)
                col.append(s)
            cols.append(col)
    return cols


def homology_group(diagram, pair=None):
    """H_1 of the represented manifold, as a quotient of Z^g.

    For a two-family diagram this is H_1 of the closed three-manifold;
    with three families, H_1 of the associated four-manifold."""
    labels = pair or diagram.family_labels()
    ref = diagram.curves_of(labels[0])
    cols = _transversal_matrix(diagram, ref, labels[1:])
    return QuotientGroup(len(ref), cols)


def obstruction_class(x, y, w=None, diagram=None):
    """Obstruction to connecting tuples by a polygon class.

    For a pair (x, y) this is the class in H_1(Y) of an explicit cycle of
    arcs joining the tuples; it vanishes exactly when a connecting domain
    exists.  With a third tuple the triangle version in H_1 of the
    four-manifold is computed."""
    la, lb = x.pair
    surf = diagram.surface
    walks = []
    if w is None:
        # arcs realizing the jump prescription: A runs y -> x, B runs x -> y
        for a in diagram.curves_of(la):
            _, visits = _curve_path(surf, a, y.point_on(a), x.point_on(a))
            walks.append((a, visits))
        for b in diagram.curves_of(lb):
            _, visits = _curve_path(surf, b, x.point_on(b), y.point_on(b))
            walks.append((b, visits))
        labels = (la, lb)
    else:
        lc = y.pair[1]
        for a in diagram.curves_of(la):
            _, visits = _curve_path(surf, a, w.point_on(a), x.point_on(a))
            walks.append((a, visits))
        for b in diagram.curves_of(lb):
            _, visits = _curve_path(surf, b, x.point_on(b), y.point_on(b))
            walks.append((b, visits))
        for c in diagram.curves_of(lc):
            _, visits = _curve_path(surf, c, y.point_on(c), w.point_on(c))
            walks.append((c, visits))
        labels = (la, lb, lc)
    ref = diagram.curves_of(labels[0])
    raw = _pushoff_pairing(diagram, ref, walks)
    group = QuotientGroup(len(ref),
                          _transversal_matrix(diagram, ref, labels[1:]))
    return ObstructionClass(group, tuple(raw))


def connect_or_obstruction(x, y, w=None, diagram=None):
    """connect_domain, returning either the chain or the obstruction."""
    try:
        return chains.connect_domain(x, y, w, diagram=diagram), None
    except NoClass as exc:
        return None, exc.payload


# ---------------------------------------------------------------------------
# Spin-c partition of tuples
# ---------------------------------------------------------------------------

@dataclass
class SpinCClass3:
    diagram: object
    pair: tuple
    class_id: str
    members: tuple        # IntersectionTuples
    coordinate: tuple     # affine H^2 coordinate relative to the base tuple
    group_invariants: tuple

    def representative(self):
        return self.members[0]

    def is_torsion(self, lattice=None):
        """Vanishing of the Chern class on every periodic domain."""
        lattice = lattice or chains.periodic_domain_basis(self.diagram,
                                                          self.pair)
        rep = self.representative()
        return all(c1_pairing_3d(rep, P, diagram=self.diagram) == 0
                   for P in lattice.basis)


def spinc_partition(diagram, pair):
    """Partition of all intersection tuples by their Spin-c structure."""
    ts = surfaces.enumerate_tuples(diagram, pair)
    if not ts:
        return []
    base = ts[0]
    buckets = {}
    for t in ts:
        eps = obstruction_class(base, t, diagram=diagram)
        buckets.setdefault(eps.coords, []).append((t, eps))
    out = []
    for i, key in enumerate(sorted(buckets)):
        members = tuple(t for t, _ in buckets[key])
        inv = buckets[key][0][1].group.invariants
        out.append(SpinCClass3(diagram, tuple(pair), f"s{i}", members, key,
                               inv))
    return out


# ---------------------------------------------------------------------------
# Euler measure, corner measures, 3d Chern pairing
# ---------------------------------------------------------------------------

def face_corner_counts(diagram):
    counts = {f: 0 for f in diagram.surface.faces}
    for v in diagram.surface.vertices.values():
        for f in v.corners:
            counts[f] += 1
    return counts


def euler_measure(chain):
    """Sum over faces of multiplicity times (chi - quarter corner count)."""
    counts = face_corner_counts(chain.diagram)
    total = Fraction(0)
    for f, m in chain.mults.items():
        face = chain.diagram.surface.faces[f]
        total += m * (Fraction(face.euler) - Fraction(counts[f], 4))
    return total


def tuple_point_measure(chain, t):
    """Sum of the average corner multiplicities over a tuple's points."""
    return sum((chain.point_multiplicity(v) for v in t.vertices), Fraction(0))


def c1_pairing_3d(x, P, diagram=None):
    """Evaluation of the Chern class of a tuple's Spin-c structure on the
    homology class of a periodic domain: Euler measure plus twice the
    tuple's point measure."""
    val = euler_measure(P) + 2 * tuple_point_measure(P, x)
    assert val.denominator == 1
    return int(val)


def boundary_weight(P):
    """Total full-curve boundary weight of a periodic domain."""
    dec = chains.boundary(P)
    if not dec.residual_empty:
        raise MalformedCorners("chain is not periodic")
    return dec.total_full_weight()


# ---------------------------------------------------------------------------
# intersection form on the triple's periodic lattice
# ---------------------------------------------------------------------------

def _relation_split(diagram, labels, P):
    dec = chains.boundary(P)
    if not dec.residual_empty:
        raise MalformedCorners("chain is not periodic")
    return {l: [dec.full_curves.get(c, 0) for c in diagram.curves_of(l)]
            for l in labels}


def four_manifold_pairing(diagram, P, Q):
    """Symmetric intersection pairing of two triply-periodic domains.

    Computed from the boundary relation coefficients and the curve
    intersection matrices; the three-family labels come from the diagram."""
    labels = diagram.family_labels()
    if len(labels) != 3:
        raise MalformedCorners("pairing needs a triple diagram")
    a, b, c = labels
    ra, rq = _relation_split(diagram, labels, P), _relation_split(
        diagram, labels, Q)
    total = Fraction(0)
    for (l1, l2) in ((a, b), (b, c), (a, c)):
        N = surfaces.intersection_matrix(diagram, l1, l2)
        for i in range(len(N)):
            for j in range(len(N[0])):
                total += Fraction(N[i][j], 2) * (
                    ra[l1][i] * rq[l2][j] + rq[l1][i] * ra[l2][j])
    assert total.denominator == 1
    return int(total)


# ---------------------------------------------------------------------------
# geometric triangle classes on straight-line genus-one triples
# ---------------------------------------------------------------------------

@dataclass
class TriangleClass:
    """A triangle class carrying a plane polygon lift (genus one).

    ``positive`` records whether the class itself is the embedded polygon
    (rigid, index zero) or the negative of one (the anti-oriented case,
    index -1; such classes carry no holomorphic representatives, matching
    the vanishing of the maps they would count)."""
    diagram: object
    chain: object        # TwoChain with corners (x, y, w)
    polygon: list        # ccw plane points [x~, y~, w~]
    positive: bool

    @property
    def corners(self):
        return self.chain.corners

    def anchor_index(self):
        return 0 if self.positive else -1


def _line_data(diagram, curve):
    geo = diagram.surface.geometry
    pc = geo.curves[curve]
    if len(pc.waypoints) != 1:
        raise MalformedCorners("curve is not a straight line")
    base = pc.waypoints[0]
    d = pc.holonomy
    return base, (Fraction(d[0]), Fraction(d[1]))


def _line_through(base, d, point):
    """Translate of the line lattice {base + t d + Z^2} through point."""
    # normal functional n.p = const on each translate
    n = (-d[1], d[0])
    c = n[0] * point[0] + n[1] * point[1]
    return (point, d, n, c)


def _line_intersect(l1, l2):
    (p1, d1, n1, c1) = l1
    (p2, d2, n2, c2) = l2
    den = plgeom.cross(d1, d2)
    if den == 0:
        raise MalformedCorners("parallel lines in triangle search")
    # solve p = p1 + t d1 with n2 . p = c2
    t = (c2 - (n2[0] * p1[0] + n2[1] * p1[1])) / (
        n2[0] * d1[0] + n2[1] * d1[1])
    return (p1[0] + t * d1[0], p1[1] + t * d1[1])


def triangle_classes(diagram, x, y, w, radius=8):
    """Plane-polygon triangle classes with the given corners, by size.

    The alpha and beta lines are fixed through a lift of x; gamma runs over
    translates, keeping those whose intersections with the fixed lines
    reduce to the other two corners.  Returns TriangleClass values sorted
    by polygon area; both orientation families appear."""
    geo = diagram.surface.geometry
    la, lb = x.pair
    lc = y.pair[1]
    ca = x.points[0][0]
    cb = x.points[0][1]
    cc = y.points[0][1]
    xv = x.vertices[0]
    x_pt = geo.vertex_points[xv]
    base_a, d_a = _line_data(diagram, ca)
    base_b, d_b = _line_data(diagram, cb)
    base_c, d_c = _line_data(diagram, cc)
    L_a = _line_through(base_a, d_a, x_pt)
    L_b = _line_through(base_b, d_b, x_pt)
    y_pt = geo.vertex_points[y.vertices[0]]
    w_pt = geo.vertex_points[w.vertices[0]]
    out = []
    n_c = (-d_c[1], d_c[0])
    c0 = n_c[0] * base_c[0] + n_c[1] * base_c[1]
    seen_lines = set()
    for k1 in range(-radius, radius + 1):
        for k2 in range(-radius, radius + 1):
            c_off = c0 + k1 * n_c[0] + k2 * n_c[1]
            if c_off in seen_lines:
                continue
            seen_lines.add(c_off)
            L_c = (plgeom.vadd(base_c, (k1, k2)), d_c, n_c, c_off)
            try:
                y_lift = _line_intersect(L_b, L_c)
                w_lift = _line_intersect(L_a, L_c)
            except MalformedCorners:
                continue
            if plgeom.reduce_torus(y_lift) != y_pt:
                continue
            if plgeom.reduce_torus(w_lift) != w_pt:
                continue
            if y_lift == w_lift or y_lift == x_pt or w_lift == x_pt:
                continue
            poly = plgeom.orient_ccw([x_pt, y_lift, w_lift])
            mults = plgeom.polygon_face_multiplicities(geo, poly)
            ch = chains.TwoChain(diagram, mults, (x, y, w))
            if chains.verify_corners(ch, (x, y, w), diagram):
                assert _polygon_positive(diagram, poly, (la, lb, lc))
                out.append(TriangleClass(diagram, ch, poly, True))
            else:
                neg = chains.TwoChain(diagram,
                                      {f: -m for f, m in mults.items()},
                                      (x, y, w))
                if chains.verify_corners(neg, (x, y, w), diagram):
                    out.append(TriangleClass(diagram, neg, poly, False))
    out.sort(key=lambda tc: abs(_area2(tc.polygon)))
    return out


def _area2(poly):
    return sum(plgeom.cross(poly[i], poly[(i + 1) % len(poly)])
               for i in range(len(poly)))


def _polygon_positive(diagram, poly_ccw, labels):
    """True when the ccw side order is (beta, alpha, gamma) cyclically."""
    geo = diagram.surface.geometry
    la, lb, lc = labels
    fam_of = {}
    for l in labels:
        for c in diagram.families[l]:
            fam_of[c] = l
    sides = []
    for i in range(3):
        a, b = poly_ccw[i], poly_ccw[(i + 1) % 3]
        d = plgeom.vsub(b, a)
        # find the curve whose direction is parallel to the side
        owner = None
        for cid, pc in geo.curves.items():
            bd = pc.holonomy
            if plgeom.cross(d, (Fraction(bd[0]), Fraction(bd[1]))) == 0:
                owner = fam_of[cid]
                break
        if owner is None:
            raise MalformedCorners("polygon side on no curve")
        sides.append(owner)
    target = [lb, la, lc]
    return any(sides[i:] + sides[:i] == target for i in range(3))


# ---------------------------------------------------------------------------
# spiders
# ---------------------------------------------------------------------------

@dataclass
class Spider:
    """Combinatorial probe: center face(s) and three dual-graph legs.

    Each leg is a list of edge ids crossed in order; the last edge must lie
    on a curve of the leg's family, where the leg terminates on the
    polygon's boundary arc.  Legs are keyed by family label."""
    center_faces: tuple
    legs: dict            # family label -> list of edge ids


def geometric_spider_number(tc, P, rng=None, center=None, legs=None):
    """Spider number of a polygon-lifted triangle class against a periodic
    domain, by exact plane geometry.

    The probe point sits inside the polygon; each leg runs straight to an
    interior point of the corresponding side.  Crossings are counted
    against the full boundary curves of P pushed off along their inward
    normals (first-order exact arithmetic); the center contributes the
    local multiplicity of P."""
    diagram = tc.diagram
    geo = diagram.surface.geometry
    dec = chains.boundary(P)
    if not dec.residual_empty:
        raise MalformedCorners("chain is not periodic")
    la, lb = tc.corners[0].pair
    lc = tc.corners[1].pair[1]
    poly = tc.polygon
    sides = _classified_sides(diagram, poly, (la, lb, lc))

    attempts = 0
    while True:
        attempts += 1
        if attempts > 40:
            raise NonGenericSpider("no generic spider found")
        try:
            if center is None or attempts > 1:
                ctr = _interior_point(poly, rng)
            else:
                ctr = center
            if legs is None or attempts > 1:
                leg_pts = {l: _side_point(sides[l], rng) for l in sides}
            else:
                leg_pts = legs
            ctr_face = geo.locate_face(plgeom.reduce_torus(ctr))
            total = P[ctr_face]
            for label in (la, lb, lc):
                seg = [ctr, leg_pts[label]]
                for cid in diagram.curves_of(label):
                    coeff = dec.full_curves.get(cid, 0)
                    if not coeff:
                        continue
                    box = _leg_box(seg, geo.curves[cid])
                    total += plgeom.leg_crossing_number(seg, geo.curves[cid],
                                                        coeff, box)
            return total
        except NonGenericSpider:
            if rng is None:
                raise
            continue


def _classified_sides(diagram, poly, labels):
    geo = diagram.surface.geometry
    fam_of = {}
    for l in labels:
        for c in diagram.families[l]:
            fam_of[c] = l
    sides = {}
    for i in range(3):
        a, b = poly[i], poly[(i + 1) % 3]
        d = plgeom.vsub(b, a)
        for cid, pc in geo.curves.items():
            bd = pc.holonomy
            if plgeom.cross(d, (Fraction(bd[0]), Fraction(bd[1]))) == 0:
                sides[fam_of[cid]] = (a, b)
                break
    if len(sides) != 3:
        raise MalformedCorners("polygon sides do not span three families")
    return sides


def _interior_point(poly, rng):
    if rng is None:
        weights = [Fraction(1, 3)] * 3
    else:
        raw = [Fraction(rng.randint(1, 64), 64) for _ in poly]
        s = sum(raw)
        weights = [r / s for r in raw]
    x = sum((w * p[0] for w, p in zip(weights, poly)), Fraction(0))
    y = sum((w * p[1] for w, p in zip(weights, poly)), Fraction(0))
    return (x, y)


def _side_point(side, rng):
    a, b = side
    t = Fraction(1, 2) if rng is None else Fraction(
        rng.randint(16, 48), 64)
    return plgeom.vadd(a, plgeom.vscale(t, plgeom.vsub(b, a)))


def _leg_box(seg, curve):
    import math
    xs = [p[0] for p in seg]
    ys = [p[1] for p in seg]
    cxs = [p[0] for p in curve.waypoints] + \
        [curve.waypoints[0][0] + curve.holonomy[0]]
    cys = [p[1] for p in curve.waypoints] + \
        [curve.waypoints[0][1] + curve.holonomy[1]]
    mlo = math.floor(min(xs) - max(cxs)) - 1
    mhi = math.ceil(max(xs) - min(cxs)) + 1
    nlo = math.floor(min(ys) - max(cys)) - 1
    nhi = math.ceil(max(ys) - min(cys)) + 1
    return (mlo, mhi, nlo, nhi)


def combinatorial_spider_number(diagram, spider, P):
    """Spider number from a user-supplied combinatorial spider.

    Mid-leg crossings of an edge on a boundary curve count the signed
    push-off crossing; the final step onto the target arc counts one extra
    crossing exactly when it approaches from the push-off side."""
    dec = chains.boundary(P)
    if not dec.residual_empty:
        raise MalformedCorners("chain is not periodic")
    left, right = surfaces.edge_sides(diagram.surface)
    total = sum(P[f] for f in spider.center_faces)
    for label, edge_list in spider.legs.items():
        fam = set(diagram.curves_of(label))
        cur_face = spider.center_faces[0] if len(spider.center_faces) == 1 \
            else None
        # walk the dual path to know the approach side of each crossing
        faces = [spider.center_faces[0]]
        for eid in edge_list:
            f = faces[-1]
            l, r = left[eid], right[eid]
            if f == l:
                faces.append(r)
            elif f == r:
                faces.append(l)
            else:
                raise NonGenericSpider(
                    f"leg step {eid} not adjacent to face {f}")
        for i, eid in enumerate(edge_list):
            curve = diagram.surface.edges[eid].curve
            coeff = dec.full_curves.get(curve, 0)
            if not coeff or curve not in fam:
                continue
            from_left = faces[i] == left[eid]
            crossing = -1 if from_left else 1
            if i == len(edge_list) - 1:
                # terminal arc: count only when approaching from the side
                # the push-off occupies (the left of the oriented boundary)
                oriented_left = coeff > 0
                approach_left = from_left
                if approach_left == oriented_left:
                    total += -abs(coeff) if oriented_left else abs(coeff)
            else:
                total += coeff * crossing
        del cur_face
    return total


def dual_spider_number(tc, P, spider=None, rng=None):
    """Spider number; automatic probes on geometric genus-one triples."""
    if spider is not None:
        return combinatorial_spider_number(tc.diagram, spider, P)
    if tc.diagram.surface.geometry is None:
        raise NonGenericSpider("automatic spiders need genus-one geometry")
    return geometric_spider_number(tc, P, rng=rng)


# ---------------------------------------------------------------------------
# Chern-class evaluation on triangles
# ---------------------------------------------------------------------------

def c1_evaluate(tc, P, spider=None, rng=None):
    """<c1 of the triangle's Spin-c structure, class of P>.

    Euler measure of P, plus its total boundary weight, minus twice its
    basepoint multiplicity, plus twice the spider number."""
    e = euler_measure(P)
    w = boundary_weight(P)
    sigma = dual_spider_number(tc, P, spider=spider, rng=rng)
    val = e + w - 2 * P.n_z() + 2 * sigma
    assert val.denominator == 1
    return int(val)


# ---------------------------------------------------------------------------
# Maslov indices
# ---------------------------------------------------------------------------

def disk_index(chain, corners=None):
    x, y = corners or chain.corners[:2]
    val = euler_measure(chain) + tuple_point_measure(chain, x) + \
        tuple_point_measure(chain, y)
    return val


def _embedded_polygon_orientation(chain, diagram):
    """For an embedded polygon domain, the cyclic family order of its
    boundary walked with the domain on the left; None when not embedded."""
    if not chain.mults or not all(m == 1 for m in chain.mults.values()):
        return None
    coeffs = chains.edge_coefficients(chain)
    if not coeffs or not all(abs(c) == 1 for c in coeffs.values()):
        return None
    surf = diagram.surface
    fam_of = {}
    for l, cs in diagram.families.items():
        for c in cs:
            fam_of[c] = l
    # walk the boundary following positive orientation
    start = sorted(coeffs)[0]
    walk = []
    eid, sgn = start, coeffs[start]
    visited = set()
    while (eid, sgn) not in visited:
        visited.add((eid, sgn))
        walk.append((eid, sgn))
        e = surf.edges[eid]
        if e.frm is None:
            return None
        v = e.to if sgn == 1 else e.frm
        outs = []
        for nid, c in coeffs.items():
            ne = surf.edges[nid]
            tail = ne.frm if c == 1 else ne.to
            if tail == v and (nid, c) not in visited:
                outs.append((nid, c))
        if not outs:
            # must close up at the start
            ne = surf.edges[start[0] if isinstance(start, tuple) else start]
            break
        # prefer continuing along the same curve (flat vertex), else turn
        same = [o for o in outs if surf.edges[o[0]].curve == e.curve]
        nxt = same[0] if same else outs[0]
        eid, sgn = nxt
    if len(walk) != len(coeffs):
        return None
    fams = [fam_of.get(surf.edges[eid].curve) for eid, _ in walk]
    runs = [fams[0]]
    for f in fams[1:]:
        if f != runs[-1]:
            runs.append(f)
    if runs[0] == runs[-1] and len(runs) > 1:
        runs.pop()
    return runs


def polygon_anchor_index(chain, diagram):
    """0 for a positively-oriented embedded triangle, -1 for the reversed
    orientation, None when the domain is not an embedded triangle."""
    runs = _embedded_polygon_orientation(chain, diagram)
    if runs is None or len(runs) != 3:
        return None
    labels = diagram.family_labels()
    la, lb, lc = labels
    target = [lb, la, lc]
    if any(runs[i:] + runs[:i] == target for i in range(3)):
        return 0
    anti = [la, lb, lc]
    if any(runs[i:] + runs[:i] == anti for i in range(3)):
        return -1
    return None


def _is_straight_geometric(diagram):
    geo = diagram.surface.geometry
    return geo is not None and all(len(pc.waypoints) == 1
                                   for pc in geo.curves.values())


def _anchor_pairing_vector(diagram, tc, family, lattice, rng=None):
    """<c1 of the anchor's Spin-c structure, H(P_i)> over the basis.

    Positive anchors evaluate directly through a spider.  Anti anchors are
    pinned by conjugation symmetry: the two smallest anti classes are
    conjugate, so their pairing vectors are opposite, and they differ by a
    known lattice shift."""
    if tc.positive:
        return [c1_evaluate(tc, P, rng=rng) for P in lattice.basis]
    anti = [t for t in family if not t.positive]
    if not anti:
        raise MalformedCorners("cannot pin anti-anchor pairing")
    # conjugation acts within this corner family only when the outgoing
    # corner is forced to be self-conjugate; otherwise the symmetry moves
    # the family elsewhere and this pin would be unsound
    la = tc.corners[0].pair[0]
    lc = tc.corners[1].pair[1]
    w_count = len(surfaces.enumerate_tuples(
        diagram.sub_diagram((la, lc)), (la, lc)))
    if w_count != 1:
        raise MalformedCorners(
            "anti-anchor pairing needs a self-conjugate outgoing corner")
    a0 = anti[0]
    if len(anti) >= 2 and abs(_area2(anti[1].polygon)) == \
            abs(_area2(a0.polygon)):
        # conjugate pair of minimal classes: opposite pairing vectors that
        # differ by twice the intersection pairing of their displacement
        a1 = anti[1]
        _, v = chains.pi2_coordinates(a1.chain, a0.chain, lattice)
        comb = lattice.combination(v)
        base_vec = [-four_manifold_pairing(diagram, comb, P)
                    for P in lattice.basis]
    else:
        # a unique minimal class is self-conjugate: its Chern class
        # evaluates to zero on every periodic direction
        base_vec = [0] * lattice.rank
    _, dv = chains.pi2_coordinates(tc.chain, a0.chain, lattice)
    dcomb = lattice.combination(dv)
    return [b + 2 * four_manifold_pairing(diagram, dcomb, P)
            for b, P in zip(base_vec, lattice.basis)]


def _anchor_for(chain, diagram, lattice, rng=None):
    """(anchor TriangleClass, family, shift, lattice coords) for a class."""
    x, y, w = chain.corners
    fam = triangle_classes(diagram, x, y, w)
    for tc in fam:
        try:
            shift, coords = chains.pi2_coordinates(chain, tc.chain, lattice)
        except Exception:
            continue
        return tc, fam, shift, coords
    raise MalformedCorners("no geometric anchor for the class")


def triangle_index(chain, diagram, rng=None):
    """Anchored Maslov index of a triangle class.

    An embedded positively-oriented polygon is rigid of index zero; the
    negative of one has index -1; general classes follow by adding copies
    of the surface (index two each) and crossing periodic-domain walls."""
    if chain.corners is None or len(chain.corners) != 3:
        raise MalformedCorners("triangle class needs three corner tuples")
    labels = diagram.family_labels()
    lattice = chains.periodic_domain_basis(diagram, labels)
    if not _has_triply_part(diagram, lattice):
        # only boundary-pair periodic directions: the index is anchored by
        # any embedded polygon in the class and moves only with n_z
        direct = polygon_anchor_index(chain, diagram)
        if direct is not None:
            return direct
        for cand, _combo in _class_box(chain, lattice, radius=3):
            anchor = polygon_anchor_index(cand, diagram)
            if anchor is None:
                continue
            _require_torsion_pairs(diagram, chain.corners, lattice)
            return anchor + 2 * (chain.n_z() - cand.n_z())
        raise MalformedCorners("no embedded anchor found in the class")
    if not _is_straight_geometric(diagram):
        raise MalformedCorners("triply-periodic triple without geometry")
    tc, fam, shift, coords = _anchor_for(chain, diagram, lattice, rng=rng)
    mu = tc.anchor_index() + 2 * shift
    if any(coords):
        P = lattice.combination(coords)
        vec = _anchor_pairing_vector(diagram, tc, fam, lattice, rng=rng)
        mu += sum(c * v for c, v in zip(coords, vec))
        mu += four_manifold_pairing(diagram, P, P)
    return mu


def c1_pairing_triangle(chain, P, diagram, rng=None):
    """<c1 of the class's Spin-c structure, H(P)> for a triangle chain."""
    labels = diagram.family_labels()
    lattice = chains.periodic_domain_basis(diagram, labels)
    u = lattice.coords(P)
    if u is None:
        raise MalformedCorners("P is not in the periodic lattice")
    tc, fam, _shift, coords = _anchor_for(chain, diagram, lattice, rng=rng)
    vec = _anchor_pairing_vector(diagram, tc, fam, lattice, rng=rng)
    delta = lattice.combination(coords)
    total = 0
    for ui, vi, Pi in zip(u, vec, lattice.basis):
        if ui:
            total += ui * (vi + 2 * four_manifold_pairing(diagram, delta, Pi))
    return total


def _has_triply_part(diagram, lattice):
    """Whether some basis relation genuinely mixes all three families."""
    for rel in lattice.relations:
        split = {}
        pos = 0
        for l in diagram.family_labels():
            n = len(diagram.curves_of(l))
            split[l] = rel[pos:pos + n]
            pos += n
        nonzero = [l for l, part in split.items() if any(part)]
        if len(nonzero) > 2:
            return True
    return False


def _class_box(chain, lattice, radius):
    from itertools import product as iproduct
    out = []
    ranges = [range(-radius, radius + 1)] * lattice.rank
    for combo in iproduct(*ranges):
        cand = chain + lattice.combination(list(combo))
        shifted = cand - cand.n_z() * chains.whole_surface(chain.diagram)
        for extra in (0,):
            out.append((shifted, combo))
    return out


def _require_torsion_pairs(diagram, corners, lattice):
    # boundary-pair periodic domains must pair trivially with c1 at the
    # corner Spin-c structures (torsion restrictions)
    x = corners[0]
    for P in lattice.basis:
        rel = chains.boundary(P).full_curves
        labels = diagram.family_labels()
        touched = {l for l in labels
                   if any(c in rel for c in diagram.curves_of(l))}
        if len(touched) <= 2 and rel:
            v = c1_pairing_3d(x, P, diagram=diagram) if \
                set(x.pair) >= touched else 0
            if v != 0:
                raise NonTorsionRestriction(
                    "periodic domain pairs nontrivially with c1")


def maslov_index(chain, kind, diagram=None, rng=None):
    """Combinatorial Maslov index of a disk or triangle class."""
    diagram = diagram or chain.diagram
    if kind == "disk":
        if chain.corners is None or len(chain.corners) != 2:
            raise MalformedCorners("disk class needs two corner tuples")
        return disk_index(chain)
    if kind == "triangle":
        return triangle_index(chain, diagram, rng=rng)
    raise MalformedCorners(f"unknown kind {kind!r}")


# ---------------------------------------------------------------------------
# Spin-c classes of triangles
# ---------------------------------------------------------------------------

@dataclass
class TriangleSpinCClass:
    diagram: object
    class_id: str
    representative: object     # TwoChain with triangle corners
    coordinate: tuple

    def restriction_classes(self, partitions):
        """Member Spin-c classes of the three corner restrictions."""
        x, y, w = self.representative.corners
        out = []
        for t, part in zip((x, y, w), partitions):
            out.append(next(c for c in part if t in c.members))
        return out


def _pair_sublattice(diagram, lattice):
    """Sublattice spanned by boundary-pair periodic domains and nothing
    else, inside the triple lattice (coordinates in lattice basis)."""
    labels = diagram.family_labels()
    vecs = []
    for (l1, l2) in ((labels[0], labels[1]), (labels[1], labels[2]),
                     (labels[0], labels[2])):
        sub = chains.periodic_domain_basis(diagram, (l1, l2))
        for P in sub.basis:
            coords = lattice.coords(P)
            assert coords is not None
            vecs.append(coords)
    return vecs


def spinc_of_triangle(chain, diagram, base=None):
    """Spin-c class of a triangle chain: its coordinate modulo the
    surface class and the doubly-periodic sublattice."""
    if chain.corners is None or len(chain.corners) != 3:
        raise MalformedCorners("triangle class needs corner data")
    labels = diagram.family_labels()
    lattice = chains.periodic_domain_basis(diagram, labels)
    if base is None:
        base = chains.connect_domain(*chain.corners, diagram=diagram)
    shift, coords = chains.pi2_coordinates(chain, base, lattice)
    pair_vecs = _pair_sublattice(diagram, lattice)
    group = QuotientGroup(lattice.rank, pair_vecs)
    key = group.coords(coords)
    return TriangleSpinCClass(diagram, "t" + "_".join(map(str, key)),
                              chain, key)


# ---------------------------------------------------------------------------
# gradings
# ---------------------------------------------------------------------------

def relative_grading(x, y, diagram):
    """gr(x) - gr(y) within one torsion Spin-c class."""
    eps = obstruction_class(x, y, diagram=diagram)
    if not eps.is_zero:
        raise DifferentClass("tuples are in different Spin-c classes")
    phi = chains.connect_domain(x, y, diagram=diagram)
    lattice = chains.periodic_domain_basis(diagram, x.pair)
    for P in lattice.basis:
        if c1_pairing_3d(x, P, diagram=diagram) != 0:
            raise NonTorsionRestriction("class is not torsion")
    val = disk_index(phi) - 2 * phi.n_z()
    assert val.denominator == 1
    return int(val)


def canonical_degree_tuples(diagram, pair):
    """Tuples of maximal relative grading in the torsion class."""
    parts = spinc_partition(diagram, pair)
    lattice = chains.periodic_domain_basis(diagram, pair)
    torsion = [c for c in parts if c.is_torsion(lattice)]
    if len(torsion) != 1:
        raise NonCanonicalBase("no unique torsion class")
    members = torsion[0].members
    base = members[0]
    grs = {t: relative_grading(t, base, diagram) for t in members}
    top = max(grs.values())
    return tuple(sorted((t for t in members if grs[t] == top),
                        key=lambda t: t.points))


def absolute_grading(tc, chi, sigma, c1_sq, level=0, check_base=True):
    """Absolute rational grading of the triangle's outgoing corner.

    tc is a triangle class from the canonical-degree corners of a surgery
    presentation; (chi, sigma, c1_sq) describe the two-handle cobordism.
    The grading of the pair [y, i] is 2 i plus the corner grading."""
    diagram = tc.diagram if isinstance(tc, TriangleClass) else tc.corners and None
    chain = tc.chain if isinstance(tc, TriangleClass) else tc
    diagram = chain.diagram
    x, y, w = chain.corners
    if check_base:
        la, lb = x.pair
        lc = y.pair[1]
        tops_ab = canonical_degree_tuples(diagram.sub_diagram((la, lb)),
                                          (la, lb))
        tops_bc = canonical_degree_tuples(diagram.sub_diagram((lb, lc)),
                                          (lb, lc))
        if x not in tops_ab or y not in tops_bc:
            raise NonCanonicalBase("corner tuples not in canonical degree")
    mu = maslov_index(chain, "triangle", diagram)
    shift = Fraction(c1_sq) - 2 * chi - 3 * sigma
    return 2 * level - mu + 2 * chain.n_z() + shift / 4
