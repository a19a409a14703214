"""Canonical data for the six bases and the dual-polynomial machinery.

Each basis is stored as one row per symmetry class: the weight and the five
dual points (as split-vertex indices, so e.g. (1, 1, 2, 4, 4) encodes the
dual product c1^2 c2 c4^2).  Symmetry completion produces all 39 elements;
the domain point of an element is the average of its dual points.  The
embedded data is the runtime source; the search pipeline re-derives it in
the test suite.

Element order: decreasing number of knots on the edge [v1, v2], then m1
descending, then m4 descending, then the multiplicity vector itself.  The 25
elements with nonzero derivative restrictions on that edge come first, in
the row order of the restriction tables; the remaining 14 are fixed
deterministically.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import factorial

from .errors import UnknownBasis
from .geometry import (
    PS12Frame,
    Point2,
    S3_ELEMENTS,
    reference_frame,
    s3_apply_multiset,
    s3_vertex_permutation,
    to_bary,
)
from .polynomial import TriPoly
from .simplex_spline import eval_simplex, knots, spline_face_forms

BASIS_IDS = ("a", "b", "c", "d", "e", "f")

#: Barycentric coordinates of the ten split vertices.
VERTEX_BARY = (
    (Fraction(1), Fraction(0), Fraction(0)),
    (Fraction(0), Fraction(1), Fraction(0)),
    (Fraction(0), Fraction(0), Fraction(1)),
    (Fraction(1, 2), Fraction(1, 2), Fraction(0)),
    (Fraction(0), Fraction(1, 2), Fraction(1, 2)),
    (Fraction(1, 2), Fraction(0), Fraction(1, 2)),
    (Fraction(1, 2), Fraction(1, 4), Fraction(1, 4)),
    (Fraction(1, 4), Fraction(1, 2), Fraction(1, 4)),
    (Fraction(1, 4), Fraction(1, 4), Fraction(1, 2)),
    (Fraction(1, 3), Fraction(1, 3), Fraction(1, 3)),
)

#: Per basis: representative knot vector -> (weight, dual point vertex ids).
CATALOG_ROWS = {
    "a": {
        "600101": (Fraction(1, 4), (1, 1, 1, 1, 1)),
        "500201": (Fraction(1, 4), (1, 1, 1, 1, 4)),
        "410201": (Fraction(1, 2), (1, 1, 1, 4, 4)),
        "320201": (Fraction(1, 2), (1, 1, 2, 4, 4)),
        "141110": (Fraction(1), (2, 2, 2, 4, 5)),
        "222110": (Fraction(3, 4), (1, 2, 2, 3, 10)),
        "131210": (Fraction(1, 2), (1, 2, 2, 4, 5)),
        "221210": (Fraction(3, 4), (1, 2, 2, 4, 10)),
    },
    "b": {
        "600101": (Fraction(1, 4), (1, 1, 1, 1, 1)),
        "500201": (Fraction(1, 4), (1, 1, 1, 1, 4)),
        "410201": (Fraction(1, 2), (1, 1, 1, 4, 4)),
        "320201": (Fraction(1, 2), (1, 1, 2, 4, 4)),
        "141110": (Fraction(1), (2, 2, 2, 4, 5)),
        "221111": (Fraction(3, 4), (1, 2, 3, 4, 10)),
        "131210": (Fraction(1, 2), (1, 2, 2, 4, 5)),
        "221210": (Fraction(3, 4), (1, 2, 2, 4, 10)),
    },
    "c": {
        "600101": (Fraction(1, 4), (1, 1, 1, 1, 1)),
        "500201": (Fraction(1, 4), (1, 1, 1, 1, 4)),
        "410201": (Fraction(1, 2), (1, 1, 1, 4, 4)),
        "320201": (Fraction(1, 2), (1, 1, 2, 4, 4)),
        "220211": (Fraction(3, 4), (1, 2, 4, 4, 10)),
        "141110": (Fraction(1), (2, 2, 2, 4, 5)),
        "131210": (Fraction(1, 2), (1, 2, 2, 4, 5)),
        "121211": (Fraction(3, 4), (1, 2, 4, 5, 10)),
    },
    "d": {
        "600101": (Fraction(1, 4), (1, 1, 1, 1, 1)),
        "500201": (Fraction(1, 4), (1, 1, 1, 1, 4)),
        "410201": (Fraction(1, 2), (1, 1, 1, 4, 4)),
        "321200": (Fraction(1), (1, 1, 2, 4, 4)),
        "141110": (Fraction(1), (2, 2, 2, 4, 5)),
        "222110": (Fraction(3, 4), (1, 2, 2, 3, 10)),
        "131210": (Fraction(1, 2), (1, 2, 2, 4, 5)),
        "221210": (Fraction(1, 4), (1, 2, 2, 3, 4)),
    },
    "e": {
        "600101": (Fraction(1, 4), (1, 1, 1, 1, 1)),
        "500201": (Fraction(1, 4), (1, 1, 1, 1, 4)),
        "410201": (Fraction(1, 2), (1, 1, 1, 4, 4)),
        "321200": (Fraction(1), (1, 1, 2, 4, 4)),
        "141110": (Fraction(1), (2, 2, 2, 4, 5)),
        "221111": (Fraction(3, 4), (1, 2, 3, 4, 10)),
        "131210": (Fraction(1, 2), (1, 2, 2, 4, 5)),
        "221210": (Fraction(1, 4), (1, 2, 2, 3, 4)),
    },
    "f": {
        "600101": (Fraction(1, 4), (1, 1, 1, 1, 1)),
        "500201": (Fraction(1, 4), (1, 1, 1, 1, 4)),
        "410201": (Fraction(1, 2), (1, 1, 1, 4, 4)),
        "321200": (Fraction(1), (1, 1, 2, 4, 4)),
        "220211": (Fraction(1, 4), (1, 2, 3, 4, 4)),
        "141110": (Fraction(1), (2, 2, 2, 4, 5)),
        "131210": (Fraction(1, 2), (1, 2, 2, 4, 5)),
        "121211": (Fraction(1, 2), (1, 2, 3, 4, 8)),
    },
}


@dataclass(frozen=True)
class BasisElement:
    """One basis function S = w * Q[K] with its dual data."""

    multiset: tuple
    weight: Fraction
    dual_points: tuple        # 5 barycentric triples, sorted
    domain_point: tuple       # barycentric triple
    class_label: str

    def dual_product(self) -> TriPoly:
        """The exact polynomial w * prod_r (dual point . c)."""
        poly = TriPoly.const(self.weight)
        for p in self.dual_points:
            poly = poly * TriPoly.linear(p)
        return poly


@dataclass(frozen=True)
class BasisSpec:
    """An ordered 39-element basis with weights and dual data."""

    id: str
    elements: tuple

    def index_of(self, K) -> int:
        K = knots(K)
        for i, el in enumerate(self.elements):
            if el.multiset == K:
                return i
        raise KeyError(f"multiset {K} not in basis {self.id}")

    @property
    def multisets(self) -> tuple:
        return tuple(el.multiset for el in self.elements)

    @property
    def weights(self) -> tuple:
        return tuple(el.weight for el in self.elements)

    @property
    def domain_points(self) -> tuple:
        return tuple(el.domain_point for el in self.elements)


def element_sort_key(K: tuple):
    """Canonical order: knots on [v1, v2] desc, then m1 desc, m4 desc, lex."""
    return (-(K[0] + K[1] + K[3]), -K[0], -K[3], K)


@lru_cache(maxsize=None)
def catalog(basis_id: str) -> BasisSpec:
    """The stored basis for an id in a..f, completed over the symmetry group.

    Raises UnknownBasis for other ids.  Completion is checked for
    consistency: whenever two symmetries produce the same element, their
    transported dual data must agree.
    """
    if basis_id not in CATALOG_ROWS:
        raise UnknownBasis(basis_id)
    members = {}
    for rep_label, (weight, dual_ids) in CATALOG_ROWS[basis_id].items():
        rep = knots(rep_label)
        for sigma in S3_ELEMENTS:
            perm = s3_vertex_permutation(sigma)
            K = s3_apply_multiset(sigma, rep)
            duals = tuple(sorted(VERTEX_BARY[perm[d - 1] - 1] for d in dual_ids))
            if K in members:
                if members[K][:2] != (weight, duals):
                    raise AssertionError(f"symmetry-inconsistent dual data at {K}")
            else:
                members[K] = (weight, duals, rep_label)
    if len(members) != 39:
        raise AssertionError(f"basis {basis_id} completed to {len(members)} elements")
    elements = []
    for K in sorted(members, key=element_sort_key):
        weight, duals, label = members[K]
        dom = tuple(sum(p[i] for p in duals) / 5 for i in range(3))
        elements.append(BasisElement(K, weight, duals, dom, label))
    return BasisSpec(basis_id, tuple(elements))


# ---------------------------------------------------------------------------
# Identities and reproduction
# ---------------------------------------------------------------------------

def marsden_eval(spec: BasisSpec, x: Point2, c, frame: PS12Frame = None):
    """Both sides of the degree-5 reproduction identity at (x, c).

    Returns (lhs, rhs) with lhs = (b1 c1 + b2 c2 + b3 c3)^5 for the
    barycentric coordinates b of x, and rhs = sum_i w_i Q_i(x) Psi_i(c).
    They agree exactly for exact inputs.
    """
    frame = frame or reference_frame()
    beta = to_bary(frame, Point2(*x))
    c1, c2, c3 = c
    lhs = (beta[0] * c1 + beta[1] * c2 + beta[2] * c3) ** 5
    rhs = 0
    for el in spec.elements:
        q = eval_simplex(frame, el.multiset, Point2(*x))
        if q == 0:
            continue
        psi = el.weight
        for p in el.dual_points:
            psi = psi * (p[0] * c1 + p[1] * c2 + p[2] * c3)
        rhs += q * psi
    return lhs, rhs


def bernstein_expansion(spec: BasisSpec, i1: int, i2: int, i3: int) -> tuple:
    """Coefficients a_i with sum_i a_i Q_i equal to the Bernstein polynomial
    (5! / (i1! i2! i3!)) b1^i1 b2^i2 b3^i3."""
    if i1 < 0 or i2 < 0 or i3 < 0 or i1 + i2 + i3 != 5:
        raise ValueError(f"exponents must be nonnegative and sum to 5: {(i1, i2, i3)}")
    return tuple(el.dual_product().coefficient((i1, i2, i3)) for el in spec.elements)


#: Coefficients k^5/5! (-1)^(k-1) of the size-k subset sums in the
#: quasi-interpolation functional.
_QI_COEF = tuple(Fraction(k**5 * (-1) ** (k - 1), factorial(5)) for k in range(1, 6))


def quasi_interpolant_coeffs(spec: BasisSpec, f, frame: PS12Frame = None) -> list:
    """Coefficients L_i(f) of the order-6 quasi-interpolant of f.

    f is any callable of (x, y); only point values enter.  Exact when f
    returns Fractions at rational points.  The resulting spline
    sum_i L_i(f) S_i reproduces every polynomial of degree at most 5.
    """
    frame = frame or reference_frame()
    v1, v2, v3 = frame.v[0], frame.v[1], frame.v[2]

    def at_bary(b):
        return f(b[0] * v1.x + b[1] * v2.x + b[2] * v3.x,
                 b[0] * v1.y + b[1] * v2.y + b[2] * v3.y)

    out = []
    for el in spec.elements:
        total = 0
        for k in range(1, 6):
            coef = _QI_COEF[k - 1]
            for sub in combinations(el.dual_points, k):
                mean = tuple(sum(p[i] for p in sub) / k for i in range(3))
                total += coef * at_bary(mean)
        out.append(total)
    return out


def quasi_interpolant_bound() -> Fraction:
    """Absolute coefficient sum of each L_i: the operator norm bound 275/3."""
    from math import comb
    return sum(abs(_QI_COEF[k - 1]) * comb(5, k) for k in range(1, 6))


def spec_face_forms(spec: BasisSpec, coeffs, frame: PS12Frame = None):
    """FaceForms of sum_i coeffs[i] w_i Q_i (exact)."""
    frame = frame or reference_frame()
    combo = [(Fraction(c) * el.weight, el.multiset) for c, el in zip(coeffs, spec.elements)]
    return spline_face_forms(frame, combo)


def all_values_at(spec: BasisSpec, beta) -> tuple:
    """Exact values (Q_1(x), ..., Q_39(x)) at macro-barycentric beta.

    Shares the Bernstein row across elements, so bulk identity checks stay
    cheap.
    """
    from .geometry import face_bary_from_macro, locate_face_bary
    from .simplex_spline import bernstein_row, per_face_bernstein
    fi = locate_face_bary(*beta)
    if fi is None:
        raise ValueError("point outside the macrotriangle")
    row = bernstein_row(face_bary_from_macro(fi, beta))
    frame = reference_frame()
    out = []
    for el in spec.elements:
        tab = per_face_bernstein(frame, el.multiset)[fi - 1]
        out.append(sum(r * o for r, o in zip(row, tab) if o))
    return tuple(out)
