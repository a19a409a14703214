"""Area-normalized simplex splines on the 12-split.

A spline Q[K] is identified by a multiplicity vector K = (m1, ..., m10) over
the split vertices; its degree is |K| - 3.  Evaluation follows the recursion

    Q[K](x) = sum_j b_j Q[K \\ vj](x),      |K| > 3,

with x = sum_j b_j vj a barycentric representation supported on three
affinely independent active knots (the lowest-index valid triple, so results
are reproducible), and the |K| = 3 base case an indicator of the half-open
support scaled by area(T) / area([K]).

Everything is computed exactly over Fractions on the reference frame; general
frames enter only through barycentric coordinates (the spline is an affine
invariant of those).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .errors import InvalidDirection, InvalidWeights, TooFewKnots
from .geometry import (
    FACES,
    INTERIOR_LINES,
    PS12Frame,
    Point2,
    S3_ELEMENTS,
    face_bary_from_macro,
    from_bary,
    locate_face_bary,
    reference_frame,
    s3_apply_multiset,
    s3_vertex_permutation,
    signed_area2,
    to_bary,
)

KnotMultiset = tuple  # 10 nonnegative ints


def knots(spec) -> KnotMultiset:
    """Build a multiplicity vector from digits like '600101' or a sequence.

    Short digit strings address vertices 1..6 (the usual quintic case);
    trailing zeros for vertices up to 10 are implied.
    """
    if isinstance(spec, str):
        m = tuple(int(ch) for ch in spec)
    else:
        m = tuple(int(x) for x in spec)
    if len(m) > 10 or any(x < 0 for x in m):
        raise ValueError(f"bad multiplicity vector {spec!r}")
    return m + (0,) * (10 - len(m))


def knot_count(K: KnotMultiset) -> int:
    return sum(K)


def degree(K: KnotMultiset) -> int:
    return knot_count(K) - 3


def knot_label(K: KnotMultiset) -> str:
    """Compact 6-digit label when only vertices 1..6 carry knots."""
    if any(K[6:]):
        return "".join(str(x) for x in K)
    return "".join(str(x) for x in K[:6])


def active_indices(K: KnotMultiset) -> tuple:
    """1-based vertex indices with positive multiplicity."""
    return tuple(i + 1 for i in range(10) if K[i] > 0)


# ---------------------------------------------------------------------------
# Reference-frame point tables
# ---------------------------------------------------------------------------

@lru_cache(maxsize=1)
def _ref_points() -> tuple:
    return reference_frame().v


@lru_cache(maxsize=None)
def _independent_triple(act: tuple):
    """Lowest-index affinely independent triple among active vertices."""
    pts = _ref_points()
    n = len(act)
    for a in range(n):
        for b in range(a + 1, n):
            for c in range(b + 1, n):
                if signed_area2(pts[act[a] - 1], pts[act[b] - 1], pts[act[c] - 1]) != 0:
                    return (act[a], act[b], act[c])
    return None


def _bary_wrt(tri: tuple, p: Point2) -> tuple:
    pts = _ref_points()
    a, b, c = (pts[i - 1] for i in tri)
    d = signed_area2(a, b, c)
    g1 = signed_area2(p, b, c) / d
    g2 = signed_area2(a, p, c) / d
    return (g1, g2, 1 - g1 - g2)


@lru_cache(maxsize=None)
def hull_area(act: tuple) -> Fraction:
    """Area of the convex hull of the given vertex indices (reference frame)."""
    pts = sorted({_ref_points()[i - 1] for i in act})
    if len(pts) < 3:
        return Fraction(0)
    # Andrew monotone chain
    def build(points):
        chain = []
        for p in points:
            while len(chain) >= 2 and signed_area2(chain[-2], chain[-1], p) <= 0:
                chain.pop()
            chain.append(p)
        return chain
    lower = build(pts)
    upper = build(pts[::-1])
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        return Fraction(0)
    s = Fraction(0)
    for i in range(len(hull)):
        a, b = hull[i], hull[(i + 1) % len(hull)]
        s += a.x * b.y - b.x * a.y
    return abs(s) / 2


def _point_in_hull(p: Point2, act: tuple) -> bool:
    pts = [_ref_points()[i - 1] for i in act]
    n = len(pts)
    for a in range(n):
        for b in range(a + 1, n):
            for c in range(b + 1, n):
                pa, pb, pc = pts[a], pts[b], pts[c]
                d = signed_area2(pa, pb, pc)
                if d == 0:
                    continue
                s1 = signed_area2(pa, pb, p)
                s2 = signed_area2(pb, pc, p)
                s3 = signed_area2(pc, pa, p)
                if d < 0:
                    s1, s2, s3 = -s1, -s2, -s3
                if s1 >= 0 and s2 >= 0 and s3 >= 0:
                    return True
    return False


@lru_cache(maxsize=None)
def support_faces(act: tuple) -> tuple:
    """Face indices whose closed face lies inside the hull of the knots."""
    frame = reference_frame()
    out = []
    for fi in range(1, 13):
        a, b, c = frame.face_corners(fi)
        cen = Point2((a.x + b.x + c.x) / 3, (a.y + b.y + c.y) / 3)
        if _point_in_hull(cen, act):
            out.append(fi)
    return tuple(out)


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------

def eval_simplex(frame: PS12Frame, K: KnotMultiset, p: Point2):
    """Exact value of Q[K] at p.

    Float inputs are converted to exact binary rationals, evaluated exactly
    and returned as float, so the half-open convention is applied without
    roundoff ambiguity.
    """
    K = knots(K)
    if knot_count(K) < 3:
        raise TooFewKnots(f"|K| = {knot_count(K)} < 3")
    beta = to_bary(frame, Point2(*p))
    as_float = not all(isinstance(b, Fraction) for b in beta)
    if as_float:
        beta = tuple(Fraction(b) for b in beta)
    val = _eval_at_bary(K, beta)
    return float(val) if as_float else val


@lru_cache(maxsize=None)
def _independent_triple_high(act: tuple):
    """Highest-index valid triple; only used to test that evaluation does
    not depend on the representation choice."""
    pts = _ref_points()
    n = len(act)
    for a in range(n - 1, -1, -1):
        for b in range(a - 1, -1, -1):
            for c in range(b - 1, -1, -1):
                if signed_area2(pts[act[a] - 1], pts[act[b] - 1], pts[act[c] - 1]) != 0:
                    return (act[c], act[b], act[a])
    return None


def _eval_at_bary(K: KnotMultiset, beta: tuple, pick=None) -> Fraction:
    pref = from_bary(reference_frame(), beta)
    choose = pick or _independent_triple
    memo = {}

    def rec(m):
        cached = memo.get(m)
        if cached is not None:
            return cached
        act = active_indices(m)
        tri = choose(act) if len(act) >= 3 else None
        if tri is None:
            memo[m] = Fraction(0)
            return memo[m]
        if sum(m) == 3:
            fi = locate_face_bary(*beta)
            val = Fraction(0)
            if fi is not None and fi in support_faces(act):
                val = Fraction(1, 2) / hull_area(act)
            memo[m] = val
            return val
        g = _bary_wrt(tri, pref)
        total = Fraction(0)
        for w, idx in zip(g, tri):
            if w != 0:
                child = list(m)
                child[idx - 1] -= 1
                total += w * rec(tuple(child))
        memo[m] = total
        return total

    return rec(K)


# ---------------------------------------------------------------------------
# Differentiation and knot insertion
# ---------------------------------------------------------------------------

def _combination_over_active(K: KnotMultiset, coeffs3: tuple, affine: bool):
    """Represent a corner combination over K's active knots.

    coeffs3 are coefficients over the corners (any ring with +, * Fraction);
    returns a dict {vertex index: coefficient} supported on the lowest-index
    independent triple.  With affine=True the input is a point (coefficients
    sum to 1), else a direction (sum 0); either way the corner vertex vi is
    rewritten through the exact barycentric coordinates of vi with respect to
    the chosen triple.
    """
    act = active_indices(K)
    tri = _independent_triple(act)
    if tri is None:
        return None
    out = {}
    for corner in range(3):
        coef = coeffs3[corner]
        if not coef:
            continue
        g = _bary_wrt(tri, _ref_points()[corner])
        for w, idx in zip(g, tri):
            if w != 0:
                out[idx] = out.get(idx, 0) + coef * w
    return {i: c for i, c in out.items() if c}


def _normalize_weights10(K, vec, want_sum):
    err = InvalidDirection if want_sum == 0 else InvalidWeights
    vec = tuple(Fraction(x) for x in vec)
    if sum(vec) != want_sum:
        raise err(f"coefficients sum to {sum(vec)}, expected {want_sum}")
    for i in range(10):
        if vec[i] != 0 and K[i] == 0:
            raise err(f"nonzero coefficient on inactive knot v{i + 1}")
    return {i + 1: vec[i] for i in range(10) if vec[i] != 0}


def derivative_expansion(K: KnotMultiset, direction, order: int = 1) -> list:
    """Expand D^order in the given direction as [(coef, multiset)] terms.

    direction is a directional triple over the corners (sums to 0) or an
    explicit 10-vector of coefficients over the knots.  The factor |K| - 3
    per differentiation is included in the coefficients.
    """
    K = knots(K)
    if order > degree(K):
        raise InvalidDirection(f"order {order} exceeds degree {degree(K)}")
    if len(direction) == 10:
        first = _normalize_weights10(K, direction, 0)
        corner_dir = None
    else:
        d = tuple(Fraction(x) for x in direction)
        if sum(d) != 0:
            raise InvalidDirection(f"directional coordinates sum to {sum(d)} != 0")
        corner_dir = d
        first = None
    terms = [(Fraction(1), K)]
    for level in range(order):
        nxt = {}
        for coef, m in terms:
            n = sum(m)
            rep = first if (level == 0 and first is not None) else _combination_over_active(m, corner_dir, affine=False)
            if rep is None:
                continue
            for idx, a in rep.items():
                child = list(m)
                child[idx - 1] -= 1
                child = tuple(child)
                nxt[child] = nxt.get(child, Fraction(0)) + coef * (n - 3) * a
        terms = [(c, m) for m, c in nxt.items() if c != 0]
    return terms


def derivative(frame: PS12Frame, K: KnotMultiset, direction, order: int = 1):
    """Directional derivative D^order Q[K] as an evaluable function.

    The returned callable evaluates the exact expansion at points of the
    frame; its ``terms`` attribute holds the [(coef, multiset)] combination.
    """
    if order == 0:
        K = knots(K)
        fn = lambda p: eval_simplex(frame, K, p)
        fn.terms = [(Fraction(1), K)]
        return fn
    terms = derivative_expansion(K, direction, order)

    def fn(p):
        return sum((c * eval_simplex(frame, m, p) for c, m in terms), start=Fraction(0))

    fn.terms = terms
    return fn


def insert_knot(K: KnotMultiset, y: int, weights=None) -> list:
    """Rewrite Q[K] over the multiset with vertex y inserted.

    Returns [(coef, multiset)] with each multiset (K + y) minus one knot,
    summing pointwise to Q[K].  y is a 1-based vertex index; explicit
    weights (a 10-vector over the knots of K, summing to 1) may be supplied,
    otherwise the barycentric representation of v_y on the lowest-index
    independent triple is used.
    """
    K = knots(K)
    if weights is not None:
        rep = _normalize_weights10(K, weights, 1)
    else:
        pts = _ref_points()
        vy = pts[y - 1]
        beta = to_bary(reference_frame(), vy)
        rep = _combination_over_active(K, beta, affine=True)
        if rep is None:
            raise InvalidWeights("knot set has no affinely independent triple")
    enlarged = list(K)
    enlarged[y - 1] += 1
    out = []
    for idx, w in rep.items():
        child = list(enlarged)
        child[idx - 1] -= 1
        out.append((w, tuple(child)))
    return out


# ---------------------------------------------------------------------------
# Edge restriction, integral, smoothness
# ---------------------------------------------------------------------------

#: Canonical macro edges by name: (start corner, midpoint, end corner).
EDGES = {"e3": (1, 4, 2), "e1": (2, 5, 3), "e2": (3, 6, 1)}


def edge_key(edge) -> str:
    """Normalize an edge spec: 'e3'/'e1'/'e2' or a corner pair like (1, 2)."""
    if isinstance(edge, str):
        if edge not in EDGES:
            raise ValueError(f"unknown edge {edge!r}")
        return edge
    pair = tuple(edge)
    for name, (i, _, k) in EDGES.items():
        if pair in ((i, k), (k, i)):
            return name
    raise ValueError(f"unknown edge {edge!r}")


@dataclass(frozen=True)
class EdgeRestriction:
    """A combination sum coef * B of univariate B-splines on an edge."""

    terms: tuple  # of (Fraction, UnivariateBSplineRef)

    def __call__(self, t):
        from .bspline1d import bspline_value
        total = Fraction(0) if isinstance(t, Fraction) else 0.0
        for coef, ref in self.terms:
            total += coef * bspline_value(ref, t)
        return total

    @property
    def is_zero(self) -> bool:
        return not self.terms


def restrict_to_edge(frame: PS12Frame, K: KnotMultiset, edge) -> EdgeRestriction:
    """Restriction of Q[K] to a macro edge, as Table-4-style B-splines.

    The edge is parametrized from its first corner (t = 0) to its second
    (t = 1).  The result is zero unless all but one knot lie on the edge, in
    which case it is (area(T) / area([K])) times the B-spline on the knots
    {0^(mi), 1/2^(mj), 1^(mk)} -- a single shorthand for the usual windows,
    or a short exact combination when the midpoint knot is undersupplied.
    """
    K = knots(K)
    if knot_count(K) < 3:
        raise TooFewKnots(f"|K| = {knot_count(K)} < 3")
    i, j, k = EDGES[edge_key(edge)]
    on_edge = K[i - 1] + K[j - 1] + K[k - 1]
    n = knot_count(K)
    act = active_indices(K)
    if hull_area(act) == 0 or on_edge < n - 1 or on_edge == n:
        return EdgeRestriction(())
    from .bspline1d import expand_window
    ratio = Fraction(1, 2) / hull_area(act)
    terms = expand_window(n - 3, K[i - 1], K[j - 1], K[k - 1])
    return EdgeRestriction(tuple((ratio * c, ref) for c, ref in terms))


def integral(frame: PS12Frame, K: KnotMultiset) -> Fraction:
    """Exact integral of Q[K] over the plane: area(T) / C(|K|-1, 2)."""
    K = knots(K)
    n = knot_count(K)
    if n < 3:
        raise TooFewKnots(f"|K| = {n} < 3")
    if hull_area(active_indices(K)) == 0:
        return Fraction(0)
    return abs(Fraction(frame.area)) / comb(n - 1, 2)


def smoothness_order(K: KnotMultiset, interior_line) -> int:
    """|K| - (knots on the line's affine hull) - 2.

    interior_line is an index into INTERIOR_LINES (0..5) or the tuple of
    vertex indices on the line.  The value bounds how many continuous
    derivatives Q[K] has across the line; it is vacuous (the spline has no
    crease there) when fewer than two distinct knots lie on the hull.
    """
    K = knots(K)
    line = INTERIOR_LINES[interior_line] if isinstance(interior_line, int) else tuple(interior_line)
    count = sum(K[i - 1] for i in line)
    return knot_count(K) - count - 2


def line_has_crease(K: KnotMultiset, interior_line) -> bool:
    """True when at least two distinct knots of K lie on the line's hull."""
    K = knots(K)
    line = INTERIOR_LINES[interior_line] if isinstance(interior_line, int) else tuple(interior_line)
    return sum(1 for i in line if K[i - 1] > 0) >= 2


# ---------------------------------------------------------------------------
# Per-face Bernstein extraction
# ---------------------------------------------------------------------------

#: Quintic exponent order used for all 21-ordinate face tables.
BERNSTEIN_EXPONENTS = tuple((i, j, 5 - i - j) for i in range(6) for j in range(6 - i))


def bernstein_row(g, exps=BERNSTEIN_EXPONENTS, deg: int = 5):
    return [Fraction(factorial(deg), factorial(a) * factorial(b) * factorial(c))
            * g[0] ** a * g[1] ** b * g[2] ** c for (a, b, c) in exps]


@lru_cache(maxsize=1)
def _interp_nodes_and_inverse():
    """21 strictly interior face nodes (shrunken lattice) and the exact
    inverse of their Bernstein collocation matrix."""
    from .linalg import inverse
    s = Fraction(1, 7)
    nodes = []
    for (a, b, c) in BERNSTEIN_EXPONENTS:
        g = (Fraction(a, 5), Fraction(b, 5), Fraction(c, 5))
        nodes.append(tuple((1 - s) * x + s * Fraction(1, 3) for x in g))
    rows = [bernstein_row(g) for g in nodes]
    return tuple(nodes), tuple(tuple(r) for r in inverse(rows))


def _face_point(fi: int, g) -> Point2:
    a, b, c = reference_frame().face_corners(fi)
    return Point2(g[0] * a.x + g[1] * b.x + g[2] * c.x,
                  g[0] * a.y + g[1] * b.y + g[2] * c.y)


def _face_orbit_map(sigma: tuple):
    """For each face fi, the image face and the corner re-indexing taking
    ordinates of a polynomial on fi to ordinates of its push-forward."""
    perm = s3_vertex_permutation(sigma)
    out = []
    for fi in range(1, 13):
        img = tuple(perm[i - 1] for i in FACES[fi - 1])
        gi = next(g for g, tri in enumerate(FACES) if set(tri) == set(img))
        pos = tuple(FACES[gi].index(v) for v in img)  # corner r of fi -> slot pos[r] of gi
        out.append((gi + 1, pos))
    return out


def _bernstein_direct(K: KnotMultiset) -> tuple:
    nodes, minv = _interp_nodes_and_inverse()
    act = active_indices(K)
    sup = set(support_faces(act)) if act and hull_area(act) != 0 else set()
    faces = []
    for fi in range(1, 13):
        if fi not in sup:
            faces.append((Fraction(0),) * 21)
            continue
        vals = [_eval_at_bary(K, to_bary(reference_frame(), _face_point(fi, g))) for g in nodes]
        faces.append(tuple(sum(minv[r][s] * vals[s] for s in range(21)) for r in range(21)))
    return tuple(faces)


@lru_cache(maxsize=None)
def _bernstein_ref(K: KnotMultiset) -> tuple:
    """12 x 21 exact Bernstein ordinates of Q[K] (reference frame).

    Only one representative per symmetry orbit is computed directly; the rest
    are obtained by permuting faces and ordinate indices.
    """
    if knot_count(K) != sum(K[:6]) or knot_count(K) != 8:
        return _bernstein_direct(K)
    K0 = min(s3_apply_multiset(s, K) for s in S3_ELEMENTS)
    if K0 == K:
        return _bernstein_direct(K)
    sigma = next(s for s in S3_ELEMENTS if s3_apply_multiset(s, K0) == K)
    base = _bernstein_ref(K0)
    fmap = _face_orbit_map(sigma)
    out = [None] * 12
    exp_index = {e: i for i, e in enumerate(BERNSTEIN_EXPONENTS)}
    for fi in range(1, 13):
        gi, pos = fmap[fi - 1]
        ords = [Fraction(0)] * 21
        for i, e in enumerate(BERNSTEIN_EXPONENTS):
            img = [0, 0, 0]
            for r in range(3):
                img[pos[r]] = e[r]
            ords[exp_index[tuple(img)]] = base[fi - 1][i]
        out[gi - 1] = tuple(ords)
    return tuple(out)


def per_face_bernstein(frame: PS12Frame, K: KnotMultiset) -> tuple:
    """Exact quintic Bernstein ordinates of Q[K] on each of the 12 faces.

    Ordinates are indexed by BERNSTEIN_EXPONENTS in each face's own
    barycentric coordinates; they depend only on K, not on the frame.
    """
    K = knots(K)
    if knot_count(K) != 8:
        raise ValueError("per-face tables are kept for quintic knot vectors (|K| = 8)")
    return _bernstein_ref(K)


# ---------------------------------------------------------------------------
# Piecewise-polynomial view (shared by functionals and spline evaluation)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FaceForms:
    """A piecewise polynomial on the split: one Bernstein form per face."""

    frame: PS12Frame
    deg: int
    ords: tuple  # 12 x tuple of ordinates

    def exponents(self, deg=None):
        d = self.deg if deg is None else deg
        return tuple((i, j, d - i - j) for i in range(d + 1) for j in range(d + 1 - i))

    def value_at_bary(self, beta):
        fi = locate_face_bary(*beta)
        if fi is None:
            return None
        g = face_bary_from_macro(fi, beta)
        row = bernstein_row(g, self.exponents(), self.deg)
        return sum(o * r for o, r in zip(self.ords[fi - 1], row))

    def face_directional_ordinates(self, fi: int, delta, ords=None, deg=None):
        """One directional-derivative step in face-barycentric direction delta."""
        d = self.deg if deg is None else deg
        cur = self.ords[fi - 1] if ords is None else ords
        idx = {e: i for i, e in enumerate(self.exponents(d))}
        out = []
        for e in self.exponents(d - 1):
            v = 0
            for s in range(3):
                if delta[s]:
                    ee = (e[0] + (s == 0), e[1] + (s == 1), e[2] + (s == 2))
                    v += delta[s] * cur[idx[ee]]
            out.append(d * v)
        return out


def spline_face_forms(frame: PS12Frame, combo) -> FaceForms:
    """FaceForms of an exact combination sum coef * Q[K] of quintics."""
    acc = [[Fraction(0)] * 21 for _ in range(12)]
    for coef, K in combo:
        table = per_face_bernstein(frame, K)
        for fi in range(12):
            row = table[fi]
            dst = acc[fi]
            for s in range(21):
                if row[s]:
                    dst[s] += coef * row[s]
    return FaceForms(frame, 5, tuple(tuple(r) for r in acc))
