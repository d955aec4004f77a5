import pytest

from fermatdeg import reference as ref
from fermatdeg.algebra import euler_phi
from fermatdeg.errors import LedgerMismatch
from fermatdeg.mt import (
    VerdictKind,
    build_projection_matrix,
    classify_projection,
    mt_rank,
    projection_group_ring,
    standard_targets,
)


def test_matrix_15_fixture():
    P = build_projection_matrix(15)
    assert P.labels == ("X", "J5", "J3")
    assert P.row_labels == (1, 2, 4, 7, 8, 11, 13, 14)
    assert tuple(P.matrix.rows()) == ref.MATRIX_15
    assert P.block("J5").col(1) == ref.MATRIX_15_J5_COLUMN


def test_matrix_21_fixture():
    P = build_projection_matrix(21)
    assert P.labels == ("X", "J7", "J3")
    assert tuple(P.matrix.rows()) == ref.MATRIX_21


@pytest.mark.parametrize("m", [9, 15, 21, 25, 27, 33, 35])
def test_column_sums(m):
    P = build_projection_matrix(m)
    M = P.matrix
    assert all(sum(M.col(j)) == euler_phi(m) // 2 for j in range(M.ncols))
    assert all(x in (0, 1) for r in M.rows() for x in r)


def test_unknown_label():
    with pytest.raises(LedgerMismatch):
        classify_projection(build_projection_matrix(15), ["Y"])


@pytest.mark.parametrize("m,target,want", [
    (9, ("X",), "ISOMORPHISM"),
    (15, ("X",), "ISOGENY(2)"),
    (21, ("X",), "NEITHER"),
    (21, ("X", "J3"), "ISOMORPHISM"),
    (27, ("X2",), "ISOMORPHISM"),
])
def test_reference_verdicts(m, target, want):
    P = build_projection_matrix(m)
    assert classify_projection(P, target).describe() == want


@pytest.mark.parametrize("m", [9, 15, 21, 27])
def test_block_order_does_not_matter(m):
    P = build_projection_matrix(m)
    Q = P.reorder(tuple(reversed(P.labels)))
    for t in standard_targets(P):
        assert classify_projection(P, t).describe() == classify_projection(Q, t).describe()
    assert mt_rank(P) == mt_rank(Q)


@pytest.mark.parametrize("m", [9, 25, 49, 27, 15, 21])
def test_kernel_and_column_routes_agree(m):
    P = build_projection_matrix(m)
    for t in standard_targets(P):
        a = classify_projection(P, t, "kernel")
        b = classify_projection(P, t, "column")
        assert (a.kind, a.degree) == (b.kind, b.degree), t


@pytest.mark.parametrize("m", [9, 25, 49, 121, 27, 125])
def test_group_ring_route_agrees(m):
    P = build_projection_matrix(m)
    top = P.labels[0]
    gr = projection_group_ring(P, (top,))
    assert gr is not None
    assert classify_projection(P, (top,), "column").kind == gr


@pytest.mark.parametrize("m", [9, 15, 21, 27])
def test_mt_rank_values(m):
    assert mt_rank(build_projection_matrix(m)) == {9: 4, 15: 5, 21: 7, 27: 10}[m]


def test_verdict_json():
    v = classify_projection(build_projection_matrix(15), ("X",))
    assert v.to_dict() == {"target": ["X"], "kind": "ISOGENY", "degree": 2}
    assert v.kind is VerdictKind.ISOGENY
