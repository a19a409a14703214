import random
from fractions import Fraction as F

import pytest

from conftest import rational_points
from ps12splines.dual_functionals import (
    apply,
    build_lambda,
    collocation,
    dim_global,
    dim_split_space,
    lambda_vector,
)
from ps12splines.errors import DomainError
from ps12splines.geometry import S3_ELEMENTS, s3_apply_multiset
from ps12splines.marsden_catalog import catalog, spec_face_forms
from ps12splines.simplex_spline import knots

# dimension table for degrees 0..9, smoothness -1..d
DIM_TABLE = {
    0: [12, 1],
    1: [36, 10, 3],
    2: [72, 31, 12, 6],
    3: [120, 64, 30, 16, 10],
    4: [180, 109, 60, 34, 21, 15],
    5: [252, 166, 102, 61, 39, 27, 21],
    6: [336, 235, 156, 100, 66, 46, 34, 28],
    7: [432, 316, 222, 151, 102, 73, 54, 42, 36],
    8: [540, 409, 300, 214, 150, 109, 81, 63, 51, 45],
    9: [660, 514, 390, 289, 210, 154, 117, 91, 73, 61, 55],
}


def test_build_lambda_counts_and_sites(ref):
    lams = build_lambda(ref)
    assert len(lams) == 39
    jets = [l for l in lams if l.site[0] == "v"]
    assert len(jets) == 30 and len(jets) // 3 == 10
    mids = [l for l in lams if l.site[-1] == "m"]
    assert [l.point for l in mids] == [ref.vertex(4), ref.vertex(5), ref.vertex(6)]
    q1_e3 = next(l for l in lams if l.site == ("e", "e3", "q1"))
    assert q1_e3.point == (F(1, 4), F(0)) and q1_e3.order == 2


def test_apply_partition_of_unity_and_constants(ref):
    spec = catalog("c")
    one = spec_face_forms(spec, [F(1)] * 39)
    for lam in build_lambda(ref):
        expected = F(1) if lam.order == 0 else F(0)
        assert apply(lam, one) == expected


def test_apply_linearity(ref):
    rng = random.Random(12)
    spec = catalog("c")
    ca = [F(rng.randint(-9, 9), 7) for _ in range(39)]
    cb = [F(rng.randint(-9, 9), 5) for _ in range(39)]
    a, b = F(3, 2), F(-2, 7)
    fa = spec_face_forms(spec, ca)
    fb = spec_face_forms(spec, cb)
    fab = spec_face_forms(spec, [a * x + b * y for x, y in zip(ca, cb)])
    for lam in build_lambda(ref)[::7]:
        assert apply(lam, fab) == a * apply(lam, fa) + b * apply(lam, fb)


def test_collocation_full_rank_and_duplicates(ref):
    spec = catalog("c")
    cm = collocation(ref, spec.multisets)
    assert cm.rank == 39 and cm.is_basis
    dup = list(spec.multisets)
    dup[1] = dup[0]
    cm2 = collocation(ref, dup)
    assert cm2.rank <= 38


def test_collocation_rank_invariant_under_s3(ref):
    spec = catalog("c")
    for sigma in S3_ELEMENTS[1:3]:
        relabeled = [s3_apply_multiset(sigma, K) for K in spec.multisets]
        assert collocation(ref, relabeled).rank == 39


def test_dim_table_reproduced():
    for d, row in DIM_TABLE.items():
        for idx, expected in enumerate(row):
            r = idx - 1
            assert dim_split_space(r, d) == expected, (r, d)
    assert dim_split_space(3, 5) == 39
    assert dim_split_space(2, 4) == 34
    assert dim_split_space(-1, 0) == 12


def test_dim_domain_errors():
    with pytest.raises(DomainError):
        dim_split_space(-2, 3)
    with pytest.raises(DomainError):
        dim_split_space(4, 3)
    with pytest.raises(DomainError):
        dim_global(2, 3)


def test_dim_global_values():
    assert dim_global(3, 3) == 39
    assert dim_global(7, 12) == 106  # hexagon fan: 6 spokes + 6 ring edges
    assert dim_global(4, 5) == 55


def test_two_triangle_dimension_cross_check():
    """dim for two triangles sharing an edge equals 78 minus the number of
    independent continuity constraints (the order-0..2 relations plus one
    order-3 vertex condition at each shared corner)."""
    from ps12splines.assembly import _smoothness_symbolic, N_BLOCKS
    from ps12splines.linalg import rank
    rels, _ = _smoothness_symbolic()
    beta = (F(1, 3), F(1, 4), F(5, 12))     # generic opposite vertex
    rows = []
    for i in range(N_BLOCKS[2]):          # orders 0..2 across the edge
        row = [F(0)] * 78
        row[39 + i] = F(1)
        for src, poly in rels[i].items():
            row[src] -= poly.evaluate(*beta)
        rows.append(row)
    # third-order agreement at the two shared corners: the order-3 jet of the
    # neighbour at v1/v2 is determined by continuity of D^3 in the direction
    # of the opposite vertex; equivalently appending the two quarterpoint
    # order-3 relations restricted to the corner values.  Use the full
    # order-3 relations for ctilde_22 and ctilde_25 (supported at the two
    # corners of the shared edge).
    for i in (N_BLOCKS[2], N_BLOCKS[3] - 1):
        row = [F(0)] * 78
        row[39 + i] = F(1)
        for src, poly in rels[i].items():
            row[src] -= poly.evaluate(*beta)
        rows.append(row)
    assert rank(rows) == 23
    assert 78 - rank(rows) == dim_global(4, 5)


def test_lambda_vector_examples():
    # point evaluation of the unit at the first corner through the table
    row = lambda_vector(knots("600101"))
    assert row[0] == 4  # Q[600101](v1) = 4
