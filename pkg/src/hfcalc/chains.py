"""Two-chain arithmetic on a diagram: boundaries, periodic-domain lattices,
connecting domains between intersection tuples, and affine coordinates.

A two-chain assigns an integer multiplicity to every face.  Its boundary is
the signed edge chain coeff(e) = n(left of e) - n(right of e); along each
attaching curve the boundary is an arc chain whose jumps happen exactly at
crossing vertices, which is how polygonal corner conditions become integer
linear systems over the face multiplicities.

Corner conventions (fixed once, used everywhere): the boundary jump of a
disk class in pi2(x, y) for the ordered pair (A, B) is +1 at the x-point
and -1 at the y-point along A-curves, the reverse along B-curves; a
triangle class in pi2(x, y, w), with x in (A,B), y in (B,C), w in (A,C),
jumps by x - w on A-curves, y - x on B, and w - y on C.  These signs are
pinned by the positively-oriented embedded triangles of the genus-one
models and compose correctly under the splicing maps
pi2(x,y,w) x pi2(x',x) x pi2(y',y) x pi2(w,w') -> pi2(x',y',w')."""

from dataclasses import dataclass, field

from . import surfaces
from .errors import CornerMismatch, MissingFamily, NoClass, NotCommensurable
from .intlinalg import (hermite_rows, kernel_basis, smith_normal_form,
                        solve_int)

__all__ = [
    "TwoChain", "BoundaryDecomposition", "PeriodicDomainLattice",
    "boundary", "periodic_domain_basis", "connect_domain",
    "pi2_coordinates", "splice", "smith_normal_form",
]


@dataclass
class TwoChain:
    diagram: object
    mults: dict
    corners: tuple = field(default=None, compare=False)

    def __post_init__(self):
        self.mults = {f: int(m) for f, m in self.mults.items() if m}

    def __getitem__(self, fid):
        return self.mults.get(fid, 0)

    def __add__(self, other):
        out = dict(self.mults)
        for f, m in other.mults.items():
            out[f] = out.get(f, 0) + m
        return TwoChain(self.diagram, out)

    def __sub__(self, other):
        out = dict(self.mults)
        for f, m in other.mults.items():
            out[f] = out.get(f, 0) - m
        return TwoChain(self.diagram, out)

    def __rmul__(self, c):
        return TwoChain(self.diagram, {f: c * m for f, m in self.mults.items()})

    def __neg__(self):
        return -1 * self

    def __eq__(self, other):
        return (self.diagram is other.diagram and self.mults == other.mults)

    def is_zero(self):
        return not self.mults

    def nonnegative(self):
        return all(m >= 0 for m in self.mults.values())

    def n_z(self):
        """Multiplicity at the basepoint face."""
        return self[self.diagram.basepoint]

    def point_multiplicity(self, vertex):
        """Average of the four corner multiplicities at a crossing."""
        from fractions import Fraction
        cs = self.diagram.surface.vertices[vertex].corners
        return Fraction(sum(self[f] for f in cs), 4)

    def vector(self, face_order):
        return [self[f] for f in face_order]


def whole_surface(diagram):
    return TwoChain(diagram, {f: 1 for f in diagram.surface.faces})


def from_vector(diagram, face_order, vec):
    return TwoChain(diagram, dict(zip(face_order, vec)))


def face_order(diagram):
    return sorted(diagram.surface.faces)


# ---------------------------------------------------------------------------
# boundary
# ---------------------------------------------------------------------------

@dataclass
class BoundaryDecomposition:
    full_curves: dict     # curve id -> integer coefficient
    residual: dict        # curve id -> {edge id -> coefficient}, nonzero only

    @property
    def residual_empty(self):
        return not any(self.residual.values())

    def total_full_weight(self):
        return sum(abs(c) for c in self.full_curves.values())


def edge_coefficients(chain):
    left, right = surfaces.edge_sides(chain.diagram.surface)
    out = {}
    for eid in chain.diagram.surface.edges:
        c = chain[left[eid]] - chain[right[eid]]
        if c:
            out[eid] = c
    return out


def boundary(chain):
    """Signed edge boundary, split by owning curve; full-curve parts are
    extracted only when the coefficient is constant along the curve."""
    coeffs = edge_coefficients(chain)
    surf = chain.diagram.surface
    curves = sorted({e.curve for e in surf.edges.values()})
    full, residual = {}, {}
    for c in curves:
        es = surfaces._curve_cycle(surf, c)
        vals = [coeffs.get(e, 0) for e in es]
        if len(set(vals)) == 1:
            if vals[0]:
                full[c] = vals[0]
        else:
            residual[c] = {e: v for e, v in zip(es, vals) if v}
    return BoundaryDecomposition(full, residual)


# ---------------------------------------------------------------------------
# linear systems over face multiplicities
# ---------------------------------------------------------------------------

def _edge_row(diagram, order, eid):
    left, right = surfaces.edge_sides(diagram.surface)
    row = [0] * len(order)
    row[order.index(left[eid])] += 1
    row[order.index(right[eid])] -= 1
    return row


class _System:
    def __init__(self, diagram):
        self.diagram = diagram
        self.order = face_order(diagram)
        self.left, self.right = surfaces.edge_sides(diagram.surface)
        self.rows = []
        self.rhs = []
        self.idx = {f: i for i, f in enumerate(self.order)}

    def _coeff_row(self, eid, sign, row):
        row[self.idx[self.left[eid]]] += sign
        row[self.idx[self.right[eid]]] -= sign

    def add_edge_zero(self, eid):
        row = [0] * len(self.order)
        self._coeff_row(eid, 1, row)
        self.rows.append(row)
        self.rhs.append(0)

    def add_jump(self, curve, vertex, value):
        """boundary coefficient jump along the curve at one of its vertices"""
        surf = self.diagram.surface
        cyc = surfaces._curve_cycle(surf, curve)
        e_in = next(e for e in cyc if surf.edges[e].to == vertex)
        e_out = next(e for e in cyc if surf.edges[e].frm == vertex)
        row = [0] * len(self.order)
        self._coeff_row(e_out, 1, row)
        self._coeff_row(e_in, -1, row)
        self.rows.append(row)
        self.rhs.append(value)

    def add_point_value(self, fid, value):
        row = [0] * len(self.order)
        row[self.idx[fid]] = 1
        self.rows.append(row)
        self.rhs.append(value)


def _constant_boundary_rows(sys_, diagram, labels):
    """Constrain the boundary to full copies of the chosen families' curves."""
    chosen = set()
    for l in labels:
        chosen.update(diagram.curves_of(l))
    surf = diagram.surface
    all_curves = sorted({e.curve for e in surf.edges.values()})
    for c in all_curves:
        cyc = surfaces._curve_cycle(surf, c)
        if c not in chosen:
            for e in cyc:
                sys_.add_edge_zero(e)
        else:
            for v in surfaces.vertices_on(surf, c):
                sys_.add_jump(c, v, 0)


@dataclass
class PeriodicDomainLattice:
    diagram: object
    labels: tuple
    basis: list            # list of TwoChain
    curve_order: tuple     # curves whose full copies may appear in boundaries
    relations: list        # per basis element, full-curve coefficient vector

    @property
    def rank(self):
        return len(self.basis)

    def coords(self, chain):
        """Integer coordinates of a chain in this basis, or None."""
        if not self.basis:
            return [] if chain.is_zero() else None
        order = face_order(self.diagram)
        A = [[b.vector(order)[i] for b in self.basis]
             for i in range(len(order))]
        return solve_int(A, chain.vector(order))

    def member(self, chain):
        return self.coords(chain) is not None

    def combination(self, coeffs):
        out = TwoChain(self.diagram, {})
        for c, b in zip(coeffs, self.basis):
            out = out + c * b
        return out

    def homology_matrix(self):
        """Rows = basis elements, columns = full-curve coefficients.

        These are the canonical second-homology coordinates: a periodic
        domain is determined by the relation it imposes among the curve
        classes."""
        return [list(r) for r in self.relations]


def periodic_domain_basis(diagram, labels, pointed=True):
    """Lattice of two-chains with boundary a combination of full curves of
    the chosen families (and zero basepoint multiplicity when pointed)."""
    for l in labels:
        if l not in diagram.families:
            raise MissingFamily(f"no family {l!r}")
    sys_ = _System(diagram)
    _constant_boundary_rows(sys_, diagram, labels)
    if pointed:
        sys_.add_point_value(diagram.basepoint, 0)
    raw = kernel_basis(sys_.rows) if sys_.rows else kernel_basis(
        [[0] * len(sys_.order)])
    basis_vecs = hermite_rows(raw)
    chains_ = [from_vector(diagram, sys_.order, v) for v in basis_vecs]
    curve_order = []
    for l in labels:
        curve_order.extend(diagram.curves_of(l))
    keep, rels = [], []
    for ch in chains_:
        dec = boundary(ch)
        assert dec.residual_empty
        rel = [dec.full_curves.get(c, 0) for c in curve_order]
        if not pointed and not any(rel):
            # a boundaryless chain is a multiple of the whole surface;
            # only the pointed lattice excludes it via n_z = 0
            continue
        keep.append(ch)
        rels.append(rel)
    return PeriodicDomainLattice(diagram, tuple(labels), keep,
                                 tuple(curve_order), rels)


# ---------------------------------------------------------------------------
# connecting domains
# ---------------------------------------------------------------------------

def _pair_jump_data(x, y):
    """(curve -> (plus_vertex, minus_vertex)) for the disk corner system."""
    out = {}
    for ca, cb, v in x.points:
        out.setdefault(ca, [None, None])[0] = v    # +1 at x-point on A
        out.setdefault(cb, [None, None])[1] = v    # -1 at x-point on B
    for ca, cb, v in y.points:
        out.setdefault(ca, [None, None])[1] = v    # -1 at y-point on A
        out.setdefault(cb, [None, None])[0] = v    # +1 at y-point on B
    return out


def _triangle_jump_data(x, y, w):
    """Corner system for a triangle: x in (A,B), y in (B,C), w in (A,C)."""
    out = {}

    def put(curve, slot, v):
        out.setdefault(curve, [None, None])[slot] = v

    for ca, cb, v in x.points:   # A: +x, B: -x
        put(ca, 0, v)
        put(cb, 1, v)
    for cb, cc, v in y.points:   # B: +y, C: -y
        put(cb, 0, v)
        put(cc, 1, v)
    for ca, cc, v in w.points:   # A: -w, C: +w
        put(ca, 1, v)
        put(cc, 0, v)
    return out


def corner_system(diagram, jump_data, labels):
    sys_ = _System(diagram)
    chosen = set()
    for l in labels:
        chosen.update(diagram.curves_of(l))
    surf = diagram.surface
    for c in sorted({e.curve for e in surf.edges.values()}):
        cyc = surfaces._curve_cycle(surf, c)
        if c not in chosen:
            for e in cyc:
                sys_.add_edge_zero(e)
            continue
        plus, minus = jump_data.get(c, (None, None))
        for v in surfaces.vertices_on(surf, c):
            val = (1 if v == plus else 0) - (1 if v == minus else 0)
            sys_.add_jump(c, v, val)
    return sys_


def _canonical_solution(diagram, order, vec, lattice):
    chain = from_vector(diagram, order, vec)
    chain = chain - chain.n_z() * whole_surface(diagram)
    v = chain.vector(order)
    for b in lattice.basis:
        bv = b.vector(order)
        piv = next(i for i, x in enumerate(bv) if x)
        q = v[piv] // bv[piv]
        if q:
            v = [a - q * c for a, c in zip(v, bv)]
    return from_vector(diagram, order, v)


def connect_domain(x, y, w=None, diagram=None):
    """A two-chain with polygonal corners exactly at the given tuples.

    Disk corners for a pair of tuples, triangle corners with a third.
    Raises NoClass carrying the first-homology obstruction when none
    exists.  The returned chain is the canonical representative: basepoint
    multiplicity zero, reduced against the periodic lattice, with the
    corner tuples recorded on it."""
    diagram = diagram or _host_of(x)
    if w is None:
        labels = x.pair
        jump = _pair_jump_data(x, y)
        corners = (x, y)
    else:
        labels = (x.pair[0], x.pair[1], y.pair[1])
        jump = _triangle_jump_data(x, y, w)
        corners = (x, y, w)
    sys_ = corner_system(diagram, jump, labels)
    sol = solve_int(sys_.rows, sys_.rhs)
    if sol is None:
        from . import spinc
        eps = spinc.obstruction_class(x, y, w, diagram=diagram)
        raise NoClass("no connecting class", payload=eps)
    lattice = periodic_domain_basis(diagram, labels)
    chain = _canonical_solution(diagram, sys_.order, sol, lattice)
    chain.corners = corners
    return chain


def _host_of(t):
    raise CornerMismatch("pass diagram= to connect_domain")


def verify_corners(chain, corners, diagram=None):
    """Check that a chain satisfies the corner jump conditions exactly."""
    diagram = diagram or chain.diagram
    if len(corners) == 2:
        jump = _pair_jump_data(*corners)
        labels = corners[0].pair
    else:
        jump = _triangle_jump_data(*corners)
        labels = (corners[0].pair[0], corners[0].pair[1], corners[1].pair[1])
    sys_ = corner_system(diagram, jump, labels)
    vec = chain.vector(sys_.order)
    got = [sum(a * b for a, b in zip(row, vec)) for row in sys_.rows]
    return got == sys_.rhs


def pi2_coordinates(psi, psi0, lattice):
    """Coordinates of psi - psi0 in the surface-class + lattice splitting.

    Returns (n_z shift, lattice coordinate vector); the first coordinate
    is the multiple of the whole surface."""
    delta = psi - psi0
    shift = delta.n_z()
    delta = delta - shift * whole_surface(psi.diagram)
    coords = lattice.coords(delta)
    if coords is None:
        raise NotCommensurable("difference not in the periodic lattice")
    return shift, coords


def splice(psi, phis):
    """Multiplicity-wise sum with corner bookkeeping.

    Each summand must carry corner data; a disk in pi2(x', x) replaces the
    first corner x, one in pi2(y', y) the second, and one in pi2(w, w')
    the third (triangles only)."""
    if psi.corners is None:
        raise CornerMismatch("spliced class carries no corner data")
    corners = list(psi.corners)
    total = psi
    for phi in phis:
        if phi.corners is None or len(phi.corners) != 2:
            raise CornerMismatch("splice takes disk classes")
        a, b = phi.corners
        if len(corners) >= 1 and b == corners[0]:
            corners[0] = a
        elif len(corners) >= 2 and b == corners[1]:
            corners[1] = a
        elif len(corners) == 3 and a == corners[2]:
            corners[2] = b
        elif len(corners) == 2 and a == corners[1]:
            corners[1] = b
        else:
            raise CornerMismatch("no matching corner to splice")
        total = total + phi
    total = TwoChain(psi.diagram, total.mults, tuple(corners))
    return total
