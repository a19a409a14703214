"""The 39 dual functionals, collocation matrices, and dimension counts.

The functional set consists of, for each corner v, the ten derivative jets
eps_v D_x^i D_y^j with i + j <= 3, and for each macro edge the second cross
derivatives at the two quarterpoints plus the first cross derivative at the
midpoint.  Canonical ordering: corners v1, v2, v3 with jets sorted by
(i + j, then i descending), then edges e3 = [v1, v2], e1 = [v2, v3],
e2 = [v3, v1], each as (quarterpoint near the first corner, midpoint, far
quarterpoint).

Direction choices are not canonical in the mathematics (any independent pair
per corner, any non-tangent vector per edge); weights and dual polynomials do
not depend on them.  The canonical choice takes x_v, y_v toward the other two
corners and u_e from the edge midpoint toward the opposite corner; an
"alternate" variant exists so invariance can be checked.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError
from .geometry import (
    PS12Frame,
    Point2,
    face_bary_from_macro,
    locate_face_bary,
    reference_frame,
    signed_area2,
    to_bary,
)
from .linalg import rank as matrix_rank
from .simplex_spline import FaceForms, bernstein_row, knots, spline_face_forms

#: Vertex jet orders in canonical sequence.
JET_ORDERS = ((0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2),
              (3, 0), (2, 1), (1, 2), (0, 3))

#: Edge order and their (first corner, opposite corner) pairs, 1-based.
EDGE_SEQUENCE = (("e3", 1, 2, 3), ("e1", 2, 3, 1), ("e2", 3, 1, 2))


@dataclass(frozen=True)
class Functional:
    """One element of the dual set: a point and derivative directions."""

    kind: str                 # 'vertex-jet' | 'edge-quarterpoint-2nd' | 'edge-midpoint-1st'
    point: Point2
    directions: tuple         # direction vectors, one per derivative order
    site: tuple               # ('v', corner, i, j) or ('e', name, slot)

    @property
    def order(self) -> int:
        return len(self.directions)


def _vec(a: Point2, b: Point2) -> Point2:
    return Point2(a.x - b.x, a.y - b.y)


def build_lambda(frame: PS12Frame, variant: str = "canonical") -> list:
    """The 39 functionals on a frame, in canonical order.

    variant='alternate' picks a different (still admissible) set of
    derivative directions; results that are direction-independent must agree
    between the two.
    """
    if variant not in ("canonical", "alternate"):
        raise ValueError(f"unknown variant {variant!r}")
    v = frame.v
    out = []
    for corner in (1, 2, 3):
        nxt = corner % 3 + 1
        prv = (corner + 1) % 3 + 1
        x = _vec(v[nxt - 1], v[corner - 1])
        y = _vec(v[prv - 1], v[corner - 1])
        if variant == "alternate":
            x, y = Point2(x.x + y.x, x.y + y.y), Point2(2 * y.x - x.x, 2 * y.y - x.y)
        for (i, j) in JET_ORDERS:
            out.append(Functional(
                kind="vertex-jet",
                point=v[corner - 1],
                directions=(x,) * i + (y,) * j,
                site=("v", corner, i, j)))
    for name, a, b, opp in EDGE_SEQUENCE:
        pa, pb, po = v[a - 1], v[b - 1], v[opp - 1]
        mid = Point2((pa.x + pb.x) / 2, (pa.y + pb.y) / 2)
        q1 = Point2((3 * pa.x + pb.x) / 4, (3 * pa.y + pb.y) / 4)
        q2 = Point2((pa.x + 3 * pb.x) / 4, (pa.y + 3 * pb.y) / 4)
        u = _vec(po, mid)
        if variant == "alternate":
            t = _vec(pb, pa)
            u = Point2(2 * u.x + t.x, 2 * u.y + t.y)
        out.append(Functional("edge-quarterpoint-2nd", q1, (u, u), ("e", name, "q1")))
        out.append(Functional("edge-midpoint-1st", mid, (u,), ("e", name, "m")))
        out.append(Functional("edge-quarterpoint-2nd", q2, (u, u), ("e", name, "q2")))
    return out


def direction_bary(frame: PS12Frame, u: Point2) -> tuple:
    """Directional coordinates of a vector (barycentric, summing to zero)."""
    v1, v2, v3 = frame.v[0], frame.v[1], frame.v[2]
    d = signed_area2(v1, v2, v3)
    p = Point2(v1.x + u.x, v1.y + u.y)
    b1 = signed_area2(p, v2, v3) / d - 1
    b2 = signed_area2(v1, p, v3) / d
    return (b1, b2, -b1 - b2)


def apply(lam: Functional, f: FaceForms):
    """Exact value of the functional on a piecewise polynomial.

    Derivatives at boundary points are taken one-sided from inside the
    macrotriangle, on the face the half-open convention assigns to the point.
    For inputs smooth enough at the point (all quintics of class C^3 are) the
    choice of adjacent face is immaterial.
    """
    frame = f.frame
    beta = to_bary(frame, lam.point)
    fi = locate_face_bary(*beta)
    if fi is None:
        raise DomainError("functional point outside the macrotriangle")
    ords = f.ords[fi - 1]
    deg = f.deg
    for u in lam.directions:
        delta = _face_direction(frame, fi, u)
        ords = f.face_directional_ordinates(fi, delta, ords, deg)
        deg -= 1
    g = face_bary_from_macro(fi, beta)
    row = bernstein_row(g, tuple((i, j, deg - i - j) for i in range(deg + 1)
                                 for j in range(deg + 1 - i)), deg)
    return sum(o * r for o, r in zip(ords, row))


def _face_direction(frame: PS12Frame, fi: int, u: Point2) -> tuple:
    """Directional coordinates of u with respect to a face of the split."""
    a, b, c = frame.face_corners(fi)
    det = signed_area2(a, b, c)
    d1 = (u.x * (b.y - c.y) - u.y * (b.x - c.x)) / det
    d2 = (u.y * (a.x - c.x) - u.x * (a.y - c.y)) / det
    return (d1, d2, -d1 - d2)


# ---------------------------------------------------------------------------
# Collocation tables
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def lambda_vector(K: tuple, variant: str = "canonical") -> tuple:
    """The 39 canonical functional values of Q[K] (frame independent)."""
    frame = reference_frame()
    f = spline_face_forms(frame, [(Fraction(1), knots(K))])
    lams = build_lambda(frame, variant)
    return tuple(apply(lam, f) for lam in lams)


@dataclass(frozen=True)
class CollocationMatrix:
    """Exact matrix entries[i][j] = lambda_j(Q_i) for a candidate list."""

    entries: tuple
    rank: int

    @property
    def is_basis(self) -> bool:
        return self.rank == len(self.entries)


def collocation(frame: PS12Frame, candidates) -> CollocationMatrix:
    """Collocation matrix of candidate splines against the canonical
    functionals, with its exact rank (fraction-free elimination)."""
    if frame.v == reference_frame().v:
        rows = [list(lambda_vector(knots(K))) for K in candidates]
    else:
        lams = build_lambda(frame)
        rows = []
        for K in candidates:
            f = spline_face_forms(frame, [(Fraction(1), knots(K))])
            rows.append([apply(lam, f) for lam in lams])
    return CollocationMatrix(tuple(tuple(r) for r in rows), matrix_rank(rows))


# ---------------------------------------------------------------------------
# Dimension formulas
# ---------------------------------------------------------------------------

def dim_split_space(r: int, d: int) -> int:
    """Dimension of the C^r degree-d spline space on the 12-split."""
    if d < 0 or r < -1 or r > d:
        raise DomainError(f"need d >= 0 and d >= r >= -1, got r={r}, d={d}")
    total = Fraction((r + 1) * (r + 2), 2)
    total += Fraction(9 * (d - r) * (d - r + 1), 2)
    total += Fraction(3 * (d - 2 * r - 1) * max(d - 2 * r, 0), 2)
    total += sum(max(r - 2 * j + 1, 0) for j in range(1, d - r + 1))
    assert total.denominator == 1
    return int(total)


# Backwards-friendly aliases used elsewhere in the package
dim_Sr_d = dim_split_space


def dim_global(n_vertices: int, n_edges: int) -> int:
    """Dimension of the globally C^2, vertex/macro-C^3 quintic space on the
    12-split refinement of a triangulation: 10|V| + 3|E|."""
    if n_vertices < 3 or n_edges < 3:
        raise DomainError("a triangulation needs at least 3 vertices and 3 edges")
    return 10 * n_vertices + 3 * n_edges
