from itertools import permutations

import pytest

from qdieudonne.errors import ContextError, PivotError, UnknownIdentityError
from qdieudonne.ncalg import apply_hom
from qdieudonne.qmatrix import (
    COFACTOR_CONVENTION, LAPLACE_CONVENTION, QContext, classical_specialization, coproduct,
    counit_map, expected_instance_count, index_tuples, inversions, laplace_expand, minor_qdet,
    qdet, rel_q_instances, resolve_cofactor_convention, resolve_laplace_convention,
    verify_identity,
)


def permutation_sum(ctx, M):
    """Sum over permutations of (-q)^-inv(s) M[1,s1] ... M[n,sn], built independently of qdet."""
    n = ctx.n
    total = ctx.const(0)
    for s in permutations(range(1, n + 1)):
        coeff = (-ctx.q) ** -inversions(s)
        total = total + ctx.mul(*[M[i, s[i - 1]] for i in range(1, n + 1)]).scale(coeff)
    return ctx.nf(total)


@pytest.mark.parametrize("n,count", [(1, 0), (2, 6), (3, 36), (4, 120), (5, 300)])
def test_instance_counts(n, count):
    assert expected_instance_count(n) == count
    assert len(index_tuples(n)) == count
    assert len(rel_q_instances(n, QContext(1).q)) == count


def test_qdet_goldens():
    assert str(qdet(QContext(1).generic_matrix())) == "z11"
    assert str(qdet(QContext(2).generic_matrix())) == "z11*z22 + (-q^-1)*z12*z21"
    assert str(qdet(QContext(3).generic_matrix())) == (
        "z11*z22*z33 + (-q^-1)*z11*z23*z32 + (-q^-1)*z12*z21*z33 + (q^-2)*z12*z23*z31"
        " + (q^-2)*z13*z21*z32 + (-q^-3)*z13*z22*z31")


@pytest.mark.parametrize("n", [2, 3, 4])
def test_qdet_is_the_permutation_sum(n):
    ctx = QContext(n)
    Z = ctx.generic_matrix()
    assert qdet(Z) == permutation_sum(ctx, Z)


def test_minor_golden():
    Z = QContext(3).generic_matrix()
    assert str(minor_qdet(Z, 1, 1)) == "z22*z33 + (-q^-1)*z23*z32"
    assert str(minor_qdet(Z, 3, 3)) == "z11*z22 + (-q^-1)*z12*z21"


@pytest.mark.parametrize("n", [2, 3])
def test_conventions_are_pinned_by_brute_force(n):
    assert resolve_cofactor_convention(n) == [COFACTOR_CONVENTION]
    assert resolve_laplace_convention("row", n) == [("i-j", "z-first"), ("j-i", "minor-first")]
    assert resolve_laplace_convention("column", n) == [("i-j", "minor-first"), ("j-i", "z-first")]
    for axis in ("row", "column"):
        assert LAPLACE_CONVENTION[axis] in resolve_laplace_convention(axis, n)


@pytest.mark.parametrize("axis", ["row", "column"])
@pytest.mark.parametrize("index", [1, 2, 3])
def test_laplace_expansions_at_n3(axis, index):
    ctx = QContext(3)
    Z = ctx.generic_matrix()
    assert ctx.nf(laplace_expand(Z, axis, index) - qdet(Z)).is_zero()


def test_generic_matrix_satisfies_relations():
    ctx = QContext(3)
    assert ctx.relations_check(ctx.generic_matrix()).all_hold


def test_swapped_columns_break_the_relations():
    ctx = QContext(2)
    W = ctx.matrix([[ctx.z(1, 2), ctx.z(1, 1)], [ctx.z(2, 2), ctx.z(2, 1)]])
    rep = ctx.relations_check(W)
    assert not rep.all_hold
    row = {r.indices: r for r in rep.failures() if r.family == "row"}
    # z11 z12 - q z12 z11 = (1 - q^2) z11 z12
    assert str(row[(1, 1, 1, 2)].residual) == "(1 - q^2)*z11*z12"


def test_row_reduction_golden_n2():
    ctx = QContext(2, True)
    R = ctx.row_reduce()
    assert str(R[1, 1]) == "z11" and str(R[1, 2]) == "z12"
    assert R[2, 1].is_zero()
    assert str(R[2, 2]) == "z22 + (-q^-1)*zinv11*z12*z21"


def test_row_reduction_needs_the_pivot_inverse():
    with pytest.raises(PivotError):
        QContext(2).pivot_inv
    with pytest.raises(PivotError):
        QContext(2).row_reduce()


def test_coproduct_golden():
    ctx = QContext(2)
    assert str(coproduct(ctx.z(1, 1), ctx)) == "zL11*zR11 + zL12*zR21"


def test_counit_of_qdet():
    for n in (2, 3):
        ctx = QContext(n)
        assert apply_hom(qdet(ctx.generic_matrix()), counit_map(ctx), ctx.system) == ctx.const(1)


def test_classical_specialization_n2():
    got = classical_specialization(qdet(QContext(2).generic_matrix()))
    assert got == {((1, 1), (2, 2)): 1, ((1, 2), (2, 1)): -1}


@pytest.mark.parametrize("ident", ["rowreduce", "theorem2", "det-invariance", "column-identity", "centrality",
                                   "cofactor", "laplace", "grouplike", "counit", "transpose"])
def test_identity_catalogue_n2(ident):
    assert verify_identity(ident, 2).all_hold


def test_z_squared_holds_only_at_n2():
    assert verify_identity("z-squared", 2).all_hold
    rep = verify_identity("z-squared", 3)
    assert not rep.all_hold
    assert rep.failures()


def test_unknown_identity():
    with pytest.raises(UnknownIdentityError):
        verify_identity("nope", 2)


def test_matrix_shape_and_context_checks():
    ctx = QContext(2)
    with pytest.raises((ContextError, ValueError)):
        ctx.matrix([[ctx.z(1, 1), ctx.z(1, 2)]])
    other = QContext(2)
    with pytest.raises(ContextError):
        ctx.matrix([[other.z(1, 1), ctx.z(1, 2)], [ctx.z(2, 1), ctx.z(2, 2)]])
