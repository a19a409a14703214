"""Smooth joins of basis-c splines across triangles.

Splines on two triangles sharing an edge meet with C^r smoothness exactly
when a block of linear relations ties the coefficients near the shared edge
together.  The relations are derived symbolically here from the restriction
tables of the basis (matching B-spline coefficients of cross-edge derivative
restrictions order by order); the order-3 block is overdetermined and leaves
one relation among the coefficients of a single triangle, so full C^3 across
an edge constrains the patch on its own.

The module also carries the Hermite nodal basis dual to the 39 canonical
functionals (geometry-independent coefficient data completed over the
symmetry group), global interpolation of vertex jets plus edge cross
derivatives on a triangulation, and an exact cross-edge smoothness checker.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import (
    DegenerateTriangle,
    DimensionMismatch,
    NonConformingMesh,
)
from .geometry import PS12Frame, Point2, locate_face_bary, make_frame, reference_frame
from .marsden_catalog import catalog
from .polynomial import TriPoly
from .simplex_spline import (
    _combination_over_active,
    knots,
    restrict_to_edge,
)

#: Number of basis elements with nonzero derivative restrictions of orders
#: 0..3 on the edge [v1, v2] (in the canonical element order).
N_BLOCKS = (8, 15, 21, 25)


# ---------------------------------------------------------------------------
# Symbolic restriction tables
# ---------------------------------------------------------------------------

@lru_cache(maxsize=1)
def edge_restriction_tables() -> tuple:
    """D^k restrictions of the basis-c splines to the edge [v1, v2].

    Entry [i][k] is a dict {j: P} meaning D^k_u Q_i restricted to the edge
    equals sum_j P(a1, a2, a3) B_j^(5-k), with (a1, a2, a3) the directional
    coordinates of u and P homogeneous of degree k.  Rows i >= N_BLOCKS[k]
    are empty.
    """
    spec = catalog("c")
    frame = reference_frame()
    alpha = tuple(TriPoly.variable(v) for v in range(3))
    out = []
    for el in spec.elements:
        per_k = []
        for k in range(4):
            terms = [(TriPoly.const(1), el.multiset)]
            for _ in range(k):
                nxt = {}
                for coef, m in terms:
                    rep = _combination_over_active(m, alpha, affine=False)
                    if rep is None:
                        continue
                    n = sum(m)
                    for idx, a in rep.items():
                        child = list(m)
                        child[idx - 1] -= 1
                        child = tuple(child)
                        add = coef * (n - 3) * a
                        nxt[child] = nxt[child] + add if child in nxt else add
                terms = [(c, m) for m, c in nxt.items() if c]
            row = {}
            for coef, m in terms:
                for c2, ref in restrict_to_edge(frame, m, "e3").terms:
                    if ref.degree != 5 - k:
                        raise AssertionError("restriction degree mismatch")
                    cur = row.get(ref.index, TriPoly.zero())
                    row[ref.index] = cur + coef * c2
            per_k.append({j: p for j, p in sorted(row.items()) if p})
        out.append(tuple(per_k))
    return tuple(out)


def restriction_normal_form(p: TriPoly) -> TriPoly:
    """Canonical representative of a restriction coefficient.

    Directional coordinates satisfy a1 + a2 + a3 = 0, so coefficients are
    only determined modulo that relation; substituting a1 = -(a2 + a3)
    picks a unique normal form for comparisons and serialization.
    """
    a2, a3 = TriPoly.variable(1), TriPoly.variable(2)
    return p.evaluate(-(a2 + a3), a2, a3)


def restrictions_equal(p: TriPoly, q: TriPoly) -> bool:
    """Equality of restriction coefficients as directional-derivative data."""
    return restriction_normal_form(p) == restriction_normal_form(q)


# ---------------------------------------------------------------------------
# Smoothness relations
# ---------------------------------------------------------------------------

def _homogenize(poly: TriPoly, deg: int) -> TriPoly:
    """Unique homogeneous degree-deg form equal to poly when b1+b2+b3 = 1."""
    ones = TriPoly.linear((Fraction(1), Fraction(1), Fraction(1)))
    out = TriPoly.zero()
    for exp, coef in poly.terms.items():
        short = deg - sum(exp)
        if short < 0:
            raise AssertionError("coefficient degree exceeds the block order")
        out = out + TriPoly({exp: coef}) * ones**short
    return out


@lru_cache(maxsize=1)
def _smoothness_symbolic():
    """Relations expressing the 25 near-edge coefficients of the neighbour.

    Returns (relations, constraint): relations[i] (i < 25) is a dict
    {source index: TriPoly in (b1, b2, b3), homogeneous of the block order}
    with ctilde_i = sum_src poly(beta) * c_src, and constraint is the same
    kind of dict R with the order-3 compatibility condition R(c, beta) = 0.
    """
    tables = edge_restriction_tables()
    weights = catalog("c").weights
    b2, b3 = TriPoly.variable(1), TriPoly.variable(2)
    alpha_here = (-(b2 + b3), b2, b3)      # direction toward the far vertex
    alpha_there = (Fraction(-1), Fraction(0), Fraction(1))
    relations = [None] * N_BLOCKS[3]
    constraint = None
    for k in range(4):
        lo = 0 if k == 0 else N_BLOCKS[k - 1]
        hi = N_BLOCKS[k]
        unknowns = list(range(lo, hi))
        rows = []
        for j in range(1, 9 - k):
            acoef = {u: Fraction(0) for u in unknowns}
            rhs = {}
            for i in range(hi):
                poly = tables[i][k].get(j)
                if not poly:
                    continue
                here = poly.evaluate(*alpha_here)
                if here:
                    cur = rhs.get(i, TriPoly.zero())
                    rhs[i] = cur + weights[i] * here
                there = poly.evaluate(*alpha_there)
                if there == 0:
                    continue
                if i in acoef:
                    acoef[i] += weights[i] * there
                else:
                    for src, expr in relations[i].items():
                        cur = rhs.get(src, TriPoly.zero())
                        rhs[src] = cur - weights[i] * there * expr
            rows.append((acoef, rhs))
        # Gauss-Jordan over the block unknowns; leftover rows are constraints.
        # Each unknown pivots on the equation where it carries the largest
        # coefficient (its dominant B-spline index); for the square blocks the
        # result is pivot-independent, and in the overdetermined order-3
        # block this pins the conventional representatives (relations are
        # unique there only modulo the compatibility constraint).
        pivots = {}
        rows_left = rows
        for u in unknowns:
            piv = max((r for r in rows_left if r[0][u] != 0),
                      key=lambda r: abs(r[0][u]), default=None)
            if piv is None:
                raise AssertionError(f"no pivot for coefficient {u} at order {k}")
            rows_left = [r for r in rows_left if r is not piv]
            inv = Fraction(1) / piv[0][u]
            piv = ({v: inv * c for v, c in piv[0].items()},
                   {src: inv * p for src, p in piv[1].items()})
            for acoef, rhs in list(pivots.values()) + rows_left:
                f = acoef.get(u, Fraction(0))
                if f == 0:
                    continue
                for v, c in piv[0].items():
                    acoef[v] = acoef.get(v, Fraction(0)) - f * c
                for src, p in piv[1].items():
                    cur = rhs.get(src, TriPoly.zero())
                    rhs[src] = cur - f * p
            pivots[u] = piv
        for u in unknowns:
            acoef, rhs = pivots[u]
            if any(c != 0 for v, c in acoef.items() if v != u) or acoef[u] != 1:
                raise AssertionError("elimination left a mixed pivot row")
            relations[u] = {src: _homogenize(p, k) for src, p in rhs.items() if p}
        for acoef, rhs in rows_left:
            if any(acoef.values()):
                raise AssertionError("unresolved unknown in a leftover row")
            cons = {src: _homogenize(p, k) for src, p in rhs.items() if p}
            if cons:
                if constraint is not None:
                    raise AssertionError("more than one compatibility constraint")
                constraint = cons
    if constraint is None:
        raise AssertionError("the order-3 block produced no constraint")
    return tuple(relations), constraint


@dataclass(frozen=True)
class SmoothnessSystem:
    """Numeric relations for a given order and opposite-vertex position."""

    order: int
    beta: tuple
    relations: tuple     # of (index, {source index: Fraction}), 0-based
    constraint: tuple    # ((index, Fraction), ...) or () below order 3


def smoothness_system(order: int, beta) -> SmoothnessSystem:
    """Relations tying a neighbour's near-edge coefficients to this patch.

    beta holds the barycentric coordinates of the neighbour's far vertex
    with respect to this triangle (its third coordinate is nonzero for a
    genuine neighbour).
    """
    if order not in (0, 1, 2, 3):
        raise ValueError("order must be 0..3")
    beta = tuple(Fraction(b) for b in beta)
    if sum(beta) != 1:
        raise ValueError("beta must sum to 1")
    rels, cons = _smoothness_symbolic()
    numeric = []
    for i in range(N_BLOCKS[order]):
        row = {src: poly.evaluate(*beta) for src, poly in rels[i].items()}
        numeric.append((i, {src: v for src, v in row.items() if v}))
    constraint = ()
    if order == 3:
        constraint = tuple(sorted((src, poly.evaluate(*beta))
                                  for src, poly in cons.items()))
        constraint = tuple((src, v) for src, v in constraint if v)
    return SmoothnessSystem(order, beta, tuple(numeric), constraint)


def propagate(coeffs, beta, order: int = 3):
    """Neighbour coefficients forced by a C^order join, plus feasibility.

    Returns (ctilde, feasible): ctilde is the list of the neighbour's first
    N_BLOCKS[order] coefficients (the ones its restriction tables see), and
    feasible reports the order-3 single-patch compatibility relation (always
    True below order 3).
    """
    coeffs = list(coeffs)
    if len(coeffs) != 39:
        raise DimensionMismatch("need 39 coefficients")
    sysm = smoothness_system(order, beta)
    out = []
    for i, row in sysm.relations:
        out.append(sum((v * coeffs[src] for src, v in row.items()),
                       start=Fraction(0) if all(isinstance(c, Fraction) for c in coeffs) else 0.0))
    feasible = True
    if order == 3:
        residual = sum(v * coeffs[src] for src, v in sysm.constraint)
        feasible = residual == 0
    return out, feasible


def c3_residual(coeffs, beta):
    """Value of the single-triangle order-3 compatibility relation."""
    sysm = smoothness_system(3, beta)
    return sum(v * coeffs[src] for src, v in sysm.constraint)


# ---------------------------------------------------------------------------
# Triangulations and global splines
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Triangulation:
    """Vertices and triangles (vertex index triples, 0-based)."""

    vertices: tuple
    triangles: tuple

    def __post_init__(self):
        for t, tri in enumerate(self.triangles):
            if len(set(tri)) != 3:
                raise NonConformingMesh(f"triangle {t} repeats a vertex")
            a, b, c = (self.vertices[i] for i in tri)
            if (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x) == 0:
                raise DegenerateTriangle(f"triangle {t} is degenerate")
        for edge, tris in self.edge_adjacency().items():
            if len(tris) > 2:
                raise NonConformingMesh(f"edge {edge} shared by {len(tris)} triangles")

    def edges(self) -> tuple:
        return tuple(sorted(self.edge_adjacency()))

    def interior_edges(self) -> tuple:
        return tuple(e for e, ts in sorted(self.edge_adjacency().items()) if len(ts) == 2)

    def edge_adjacency(self) -> dict:
        adj = {}
        for t, tri in enumerate(self.triangles):
            for a, b in ((tri[0], tri[1]), (tri[1], tri[2]), (tri[0], tri[2])):
                adj.setdefault(tuple(sorted((a, b))), []).append(t)
        return adj

    def frame(self, t: int) -> PS12Frame:
        a, b, c = (self.vertices[i] for i in self.triangles[t])
        return make_frame(a, b, c)


def triangulation(vertices, triangles) -> Triangulation:
    return Triangulation(tuple(Point2(*v) for v in vertices),
                         tuple(tuple(t) for t in triangles))


@dataclass(frozen=True)
class GlobalSpline:
    """One basis-c coefficient vector per triangle of a triangulation."""

    tri: Triangulation
    coeffs: tuple    # per triangle, 39 values
    basis: str = "c"

    def __post_init__(self):
        if len(self.coeffs) != len(self.tri.triangles):
            raise DimensionMismatch("one coefficient vector per triangle required")

    def spline(self, t: int):
        from .spline_fn import Spline
        return Spline(self.tri.frame(t), self.basis, tuple(self.coeffs[t]))


@lru_cache(maxsize=64)
def _global_face_forms(gs: GlobalSpline, t: int):
    from .marsden_catalog import spec_face_forms
    exact = all(isinstance(c, Fraction) for c in gs.coeffs[t]) and \
        all(isinstance(v.x, Fraction) for v in gs.tri.vertices)
    frame = gs.tri.frame(t)
    if exact:
        return spec_face_forms(catalog("c"), gs.coeffs[t], frame)
    from .spline_fn import _scaled_basis_arrays
    import numpy as np
    arr = _scaled_basis_arrays("c") @ np.array([float(c) for c in gs.coeffs[t]])
    from .simplex_spline import FaceForms
    return FaceForms(frame, 5, tuple(tuple(row) for row in arr))


def _edge_param_bary(tri_vertices: tuple, edge: tuple, t):
    """Macro-barycentric coordinates, in a triangle's local order, of the
    point at parameter t along a global edge (structurally exact)."""
    ia, ib = edge
    beta = [t * 0] * 3
    beta[tri_vertices.index(ia)] = 1 - t
    beta[tri_vertices.index(ib)] = t
    return tuple(beta)


def _directional_derivative(ff, frame, beta, u, order):
    from .dual_functionals import _face_direction
    from .simplex_spline import bernstein_row
    fi = locate_face_bary(*beta)
    ords = ff.ords[fi - 1]
    deg = ff.deg
    for _ in range(order):
        delta = _face_direction(frame, fi, u)
        ords = ff.face_directional_ordinates(fi, delta, ords, deg)
        deg -= 1
    from .geometry import face_bary_from_macro
    g = face_bary_from_macro(fi, beta)
    exps = tuple((i, j, deg - i - j) for i in range(deg + 1) for j in range(deg + 1 - i))
    row = bernstein_row(g, exps, deg)
    return sum(o * r for o, r in zip(ords, row))


def verify_smoothness(gs: GlobalSpline, edge, order: int, samples: int = 25,
                      tol=None) -> dict:
    """Maximum cross-edge jump of each derivative order up to ``order``.

    Samples interior parameters of the shared edge and compares one-sided
    directional derivatives computed from the Bernstein forms on the two
    adjacent triangles (no numerical differentiation).  Exact data yields
    exact jumps (zero for a genuine join); float data gets a pass flag
    against ``tol``, which defaults to 1e-10 in that layer.
    """
    edge = tuple(sorted(edge))
    adj = gs.tri.edge_adjacency().get(edge)
    if adj is None or len(adj) != 2:
        raise NonConformingMesh(f"edge {edge} is not an interior edge")
    ta, tb = adj
    va, vb = (gs.tri.vertices[i] for i in edge)
    exact = all(isinstance(v.x, Fraction) for v in (va, vb)) and \
        all(isinstance(c, Fraction) for cs in gs.coeffs for c in cs)
    if tol is None and not exact:
        tol = 1e-10
    u = Point2(-(vb.y - va.y), vb.x - va.x)
    ffa, ffb = _global_face_forms(gs, ta), _global_face_forms(gs, tb)
    fra, frb = ffa.frame, ffb.frame
    jumps = {k: Fraction(0) if exact else 0.0 for k in range(order + 1)}
    for n in range(1, samples + 1):
        t = Fraction(n, samples + 1) if exact else n / (samples + 1)
        ba = _edge_param_bary(gs.tri.triangles[ta], edge, t)
        bb = _edge_param_bary(gs.tri.triangles[tb], edge, t)
        for k in range(order + 1):
            da = _directional_derivative(ffa, fra, ba, u, k)
            db = _directional_derivative(ffb, frb, bb, u, k)
            gap = abs(da - db)
            if gap > jumps[k]:
                jumps[k] = gap
    report = {"jumps": jumps, "max": max(jumps.values())}
    if tol is not None:
        report["pass"] = all(float(j) <= tol for j in jumps.values())
    return report


# ---------------------------------------------------------------------------
# Hermite nodal basis
# ---------------------------------------------------------------------------

#: Nodal expansions (in raw simplex splines) for the functional group at the
#: first corner and its edge: value and derivative jets with x toward v2 and
#: y toward v3, then the edge [v1, v2] functionals with direction v3 - v4.
#: The remaining functionals follow by symmetry; the completion is checked
#: for consistency where symmetries overlap.
_F = Fraction
NODAL_SEEDS = {
    ("v", 0, 0): {
        "600101": _F(1, 4), "500201": _F(1, 4), "500102": _F(1, 4),
        "410201": _F(1, 2), "401102": _F(1, 2), "411101": _F(1),
        "311201": _F(1, 2), "311102": _F(1, 2), "320201": _F(1, 2),
        "302102": _F(1, 2), "211211": _F(9, 16), "211112": _F(9, 16),
        "220211": _F(3, 8), "202112": _F(3, 8), "112112": _F(3, 16),
        "121211": _F(3, 16)},
    ("v", 1, 0): {
        "500201": _F(1, 40), "410201": _F(1, 10), "320201": _F(1, 5),
        "411101": _F(1, 10), "311201": _F(3, 20), "220211": _F(13, 80),
        "311102": _F(1, 20), "211211": _F(19, 80), "121211": _F(1, 10),
        "211112": _F(-1, 40), "202112": _F(-1, 40), "112112": _F(-1, 20)},
    ("v", 2, 0): {
        "410201": _F(1, 160), "320201": _F(1, 32), "311201": _F(1, 80),
        "220211": _F(17, 640), "211211": _F(121, 3840), "121211": _F(71, 3840),
        "211112": _F(-1, 48), "112112": _F(1, 480)},
    ("v", 1, 1): {
        "411101": _F(1, 80), "311201": _F(3, 160), "311102": _F(3, 160),
        "220211": _F(-1, 160), "202112": _F(-1, 160), "211112": _F(17, 960),
        "211211": _F(17, 960), "112112": _F(-7, 480), "121211": _F(-7, 480)},
    ("v", 3, 0): {
        "320201": _F(1, 480), "220211": _F(7, 3840), "211211": _F(5, 3072),
        "121211": _F(7, 5120)},
    ("v", 2, 1): {
        "311201": _F(1, 480), "220211": _F(-1, 1920), "121211": _F(-1, 768),
        "211211": _F(11, 3840), "211112": _F(-11, 3840), "112112": _F(1, 3840)},
    ("e", "q1"): {"211211": _F(7, 240), "121211": _F(-1, 240)},
    ("e", "m"): {"220211": _F(1, 10), "211211": _F(1, 5), "121211": _F(1, 5)},
    ("e", "q2"): {"121211": _F(7, 240), "211211": _F(-1, 240)},
}

#: Canonical jet directions per corner: x toward the first listed corner of
#: the opposing edge, y toward the second.
_JET_DIRS = {1: ((2, 1), (3, 1)), 2: ((3, 2), (1, 2)), 3: ((1, 3), (2, 3))}
_EDGE_CORNERS = {"e3": (1, 2), "e1": (2, 3), "e2": (3, 1)}


def _jet_descriptor(corner: int, i: int, j: int):
    x, y = _JET_DIRS[corner]
    dirs = tuple(sorted((x,) * i + (y,) * j))
    return ("jet", corner, dirs)


def _edge_descriptor(name: str, slot: str):
    a, b = _EDGE_CORNERS[name]
    if slot == "m":
        return ("edge1", frozenset((a, b)))
    near = a if slot == "q1" else b
    return ("edge2", frozenset((a, b)), near)


def _apply_sigma_descriptor(sigma, desc):
    def sv(i):
        return sigma[i - 1]
    if desc[0] == "jet":
        _, corner, dirs = desc
        return ("jet", sv(corner), tuple(sorted((sv(a), sv(b)) for a, b in dirs)))
    if desc[0] == "edge1":
        return ("edge1", frozenset(sv(i) for i in desc[1]))
    return ("edge2", frozenset(sv(i) for i in desc[1]), sv(desc[2]))


@lru_cache(maxsize=1)
def nodal_q_coefficients() -> tuple:
    """39 x 39 exact matrix N with nodal function i = sum_j N[i][j] Q_j.

    Row order matches the canonical functional order; column order the
    canonical basis-c element order.  Coefficients are independent of the
    triangle geometry.
    """
    from .geometry import S3_ELEMENTS, s3_apply_multiset
    from .dual_functionals import JET_ORDERS, EDGE_SEQUENCE
    spec = catalog("c")
    col = {el.multiset: idx for idx, el in enumerate(spec.elements)}

    seeds = []
    for key, combo in NODAL_SEEDS.items():
        if key[0] == "v":
            desc = _jet_descriptor(1, key[1], key[2])
        else:
            desc = _edge_descriptor("e3", key[1])
        seeds.append((desc, {knots(lab): c for lab, c in combo.items()}))

    targets = []
    for corner in (1, 2, 3):
        for (i, j) in JET_ORDERS:
            targets.append(_jet_descriptor(corner, i, j))
    for name, _, _, _ in EDGE_SEQUENCE:
        for slot in ("q1", "m", "q2"):
            targets.append(_edge_descriptor(name, slot))

    rows = []
    for desc in targets:
        expansion = None
        for sigma in S3_ELEMENTS:
            for sdesc, combo in seeds:
                if _apply_sigma_descriptor(sigma, sdesc) != desc:
                    continue
                moved = {}
                for K, c in combo.items():
                    moved[s3_apply_multiset(sigma, K)] = c
                if expansion is None:
                    expansion = moved
                elif expansion != moved:
                    raise AssertionError(f"inconsistent symmetry completion at {desc}")
        if expansion is None:
            raise AssertionError(f"no seed covers functional {desc}")
        row = [Fraction(0)] * 39
        for K, c in expansion.items():
            row[col[K]] = c
        rows.append(tuple(row))
    return tuple(rows)


@dataclass(frozen=True)
class NodalBasis:
    """The 39 splines dual to the canonical functionals, over one frame."""

    frame: PS12Frame
    splines: tuple


def nodal_basis(frame: PS12Frame) -> NodalBasis:
    """Nodal basis functions as basis-c splines on a frame."""
    from .spline_fn import Spline
    spec = catalog("c")
    rows = nodal_q_coefficients()
    splines = tuple(
        Spline(frame, "c", tuple(v / el.weight for v, el in zip(row, spec.elements)))
        for row in rows)
    return NodalBasis(frame, splines)


# ---------------------------------------------------------------------------
# Global Hermite interpolation
# ---------------------------------------------------------------------------

#: Order of the ten Cartesian jet values stored per vertex.
JET_KEYS = ((0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2),
            (3, 0), (2, 1), (1, 2), (0, 3))


def _jet_directional(jet: dict, dirs) -> object:
    """Apply directional derivatives to a Cartesian jet dict {(i, j): value}."""
    cur = dict(jet)
    for u in dirs:
        nxt = {}
        for (a, b) in cur:
            up = cur.get((a + 1, b))
            vp = cur.get((a, b + 1))
            if up is not None and vp is not None:
                nxt[(a, b)] = u.x * up + u.y * vp
        cur = nxt
    return cur[(0, 0)]


def _edge_spline_coeffs(rows, rhs, exact: bool):
    if exact:
        from .linalg import solve
        return [r[0] for r in solve(rows, [[v] for v in rhs])]
    import numpy as np
    sol = np.linalg.solve(np.array(rows, dtype=float),
                          np.array([float(v) for v in rhs]))
    return list(sol)


@lru_cache(maxsize=None)
def _univariate_rows(degree: int, conditions: tuple) -> tuple:
    """Rows of exact derivative / value conditions on the consecutive basis."""
    from .bspline1d import UnivariateBSplineRef, bspline_derivative
    return tuple(
        tuple(bspline_derivative(UnivariateBSplineRef(degree, j + 1), t, order)
              for j in range(degree + 3))
        for (t, order) in conditions)


def _univariate_collocation(degree: int, conditions, exact: bool):
    rows = [list(r) for r in _univariate_rows(degree, tuple(conditions))]
    if not exact:
        rows = [[float(v) for v in row] for row in rows]
    return rows


def _edge_restriction_value(coeffs, degree: int, t, order: int, exact: bool):
    from .bspline1d import UnivariateBSplineRef, bspline_derivative
    total = 0
    for j, c in enumerate(coeffs):
        v = bspline_derivative(UnivariateBSplineRef(degree, j + 1), Fraction(t), order)
        total += c * (v if exact else float(v))
    return total


def hermite_interpolate(tri: Triangulation, vertex_jets, edge_data) -> GlobalSpline:
    """Global spline matching vertex jets and edge cross derivatives.

    vertex_jets maps each vertex index to its ten Cartesian derivative
    values ordered like JET_KEYS.  edge_data maps each sorted edge pair
    (a, b) to three values taken in the direction u = rot90(v_b - v_a):
    the second derivative at (3 v_a + v_b)/4, the first derivative at the
    midpoint, and the second derivative at (v_a + 3 v_b)/4.  The result is
    continuous with two continuous derivatives across interior edges and
    three at the vertices.
    """
    vertex_jets = {k: tuple(v) for k, v in vertex_jets.items()}
    edge_data = {tuple(sorted(k)): tuple(v) for k, v in edge_data.items()}
    if sorted(vertex_jets) != list(range(len(tri.vertices))):
        raise DimensionMismatch("need a 10-jet for every vertex")
    if sorted(edge_data) != list(tri.edges()):
        raise DimensionMismatch("need 3 values for every edge")
    if any(len(v) != 10 for v in vertex_jets.values()) or \
            any(len(v) != 3 for v in edge_data.values()):
        raise DimensionMismatch("jet length must be 10 and edge data length 3")
    exact = all(isinstance(p.x, Fraction) for p in tri.vertices) and \
        all(isinstance(v, Fraction) for js in vertex_jets.values() for v in js) and \
        all(isinstance(v, Fraction) for vs in edge_data.values() for v in vs)

    jets = {i: {key: vertex_jets[i][n] for n, key in enumerate(JET_KEYS)}
            for i in vertex_jets}
    nodal = nodal_q_coefficients()
    spec = catalog("c")
    half = Fraction(1, 2)
    quarter = Fraction(1, 4)

    coeff_vectors = []
    for t, tri_idx in enumerate(tri.triangles):
        frame = tri.frame(t)
        values = []
        # vertex jets in the canonical local directions
        for local in (1, 2, 3):
            gv = tri_idx[local - 1]
            (xa, xb), (ya, yb) = _JET_DIRS[local]
            xv = Point2(frame.v[xa - 1].x - frame.v[xb - 1].x,
                        frame.v[xa - 1].y - frame.v[xb - 1].y)
            yv = Point2(frame.v[ya - 1].x - frame.v[yb - 1].x,
                        frame.v[ya - 1].y - frame.v[yb - 1].y)
            from .dual_functionals import JET_ORDERS
            for (i, j) in JET_ORDERS:
                values.append(_jet_directional(jets[gv], (xv,) * i + (yv,) * j))
        # edge functionals
        for name, a_loc, b_loc, opp_loc in (("e3", 1, 2, 3), ("e1", 2, 3, 1), ("e2", 3, 1, 2)):
            ga, gb = tri_idx[a_loc - 1], tri_idx[b_loc - 1]
            key = tuple(sorted((ga, gb)))
            d2q1, d1m, d2q2 = edge_data[key]
            va, vb = tri.vertices[key[0]], tri.vertices[key[1]]
            tg = Point2(vb.x - va.x, vb.y - va.y)
            ug = Point2(-tg.y, tg.x)
            # tangential quintic on the edge from the endpoint jets
            cond5 = [(Fraction(0), o) for o in range(4)] + [(Fraction(1), o) for o in range(4)]
            rhs5 = [_jet_directional(jets[key[0]], (tg,) * o) for o in range(4)] + \
                   [_jet_directional(jets[key[1]], (tg,) * o) for o in range(4)]
            f_edge = _edge_spline_coeffs(_univariate_collocation(5, cond5, exact), rhs5, exact)
            # cross-derivative quartic from jets plus the midpoint datum
            cond4 = [(Fraction(0), o) for o in range(3)] + \
                    [(Fraction(1), o) for o in range(3)] + [(Fraction(1, 2), 0)]
            rhs4 = [_jet_directional(jets[key[0]], (ug,) + (tg,) * o) for o in range(3)] + \
                   [_jet_directional(jets[key[1]], (ug,) + (tg,) * o) for o in range(3)] + [d1m]
            g_edge = _edge_spline_coeffs(_univariate_collocation(4, cond4, exact), rhs4, exact)
            # express the local direction over (global normal, tangent)
            m = Point2((va.x + vb.x) / 2, (va.y + vb.y) / 2)
            opp = frame.v[opp_loc - 1]
            ul = Point2(opp.x - m.x, opp.y - m.y)
            det = ug.x * tg.y - ug.y * tg.x
            s = (ul.x * tg.y - ul.y * tg.x) / det
            w = (ug.x * ul.y - ug.y * ul.x) / det
            flipped = ga != key[0]
            for slot in ("q1", "m", "q2"):
                if slot == "m":
                    val = s * _edge_restriction_value(g_edge, 4, half, 0, exact) + \
                        w * _edge_restriction_value(f_edge, 5, half, 1, exact)
                    values.append(val)
                    continue
                near_first = (slot == "q1") != flipped
                sq = quarter if near_first else 1 - quarter
                d2 = d2q1 if near_first else d2q2
                val = s * s * d2 \
                    + 2 * s * w * _edge_restriction_value(g_edge, 4, sq, 1, exact) \
                    + w * w * _edge_restriction_value(f_edge, 5, sq, 2, exact)
                values.append(val)
        coeffs = [0] * 39
        for fi, val in enumerate(values):
            if val == 0:
                continue
            row = nodal[fi]
            for j in range(39):
                if row[j]:
                    coeffs[j] += val * row[j]
        coeffs = [c / el.weight for c, el in zip(coeffs, spec.elements)]
        coeff_vectors.append(tuple(coeffs))
    return GlobalSpline(tri, tuple(coeff_vectors))


def hexagon_demo() -> GlobalSpline:
    """Nodal hat function of the centre vertex on a regular hexagon fan."""
    import math
    verts = [Point2(0.0, 0.0)]
    verts += [Point2(math.cos(2 * math.pi * i / 6), math.sin(2 * math.pi * i / 6))
              for i in range(6)]
    tris = [(0, 1 + i, 1 + (i + 1) % 6) for i in range(6)]
    tri = triangulation(verts, tris)
    jets = {i: (0.0,) * 10 for i in range(7)}
    jets[0] = (1.0,) + (0.0,) * 9
    edges = {e: (0.0, 0.0, 0.0) for e in tri.edges()}
    return hermite_interpolate(tri, jets, edges)
