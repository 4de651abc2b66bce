import random
from fractions import Fraction

import pytest

from qdieudonne.dieudonne import (
    RATIONAL_FUNCTIONS_Q as QF, RATIONALS, DivisionContext, bruhat_decompose, classical_det,
    corollary_check, delta_epsilon_tau, diagonal, first_column_pivots, identity, matmul,
    matrices_equal, permutation_matrix, pivot_chain, quantum_pivot_division, read_matrix,
)
from qdieudonne.errors import NonInvertibleError, ParseError
from qdieudonne.qmatrix import QContext, qdet


# -- a noncommutative division ring: rational quaternions as 4-tuples ----------

def qmul(a, b):
    a1, b1, c1, d1 = a
    a2, b2, c2, d2 = b
    return (a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2)


def qnorm(a):
    return sum(x * x for x in a)


def qinv(a):
    n = qnorm(a)
    if n == 0:
        raise NonInvertibleError("zero quaternion")
    return (a[0] / n, -a[1] / n, -a[2] / n, -a[3] / n)


ZERO, ONE = (Fraction(0),) * 4, (Fraction(1),) + (Fraction(0),) * 3

QUATERNIONS = DivisionContext(
    "quaternions", ZERO, ONE,
    lambda a, b: tuple(x + y for x, y in zip(a, b)),
    lambda a, b: tuple(x - y for x, y in zip(a, b)),
    qmul, qinv, lambda a: a == ZERO, False, neg=lambda a: tuple(-x for x in a),
)


def random_quaternion(rng, zero_chance=0.2):
    if rng.random() < zero_chance:
        return ZERO
    return tuple(Fraction(rng.randint(-3, 3)) for _ in range(4))


def random_matrix(rng, n):
    return [[random_quaternion(rng) for _ in range(n)] for _ in range(n)]


def test_quaternion_ring_is_noncommutative():
    i, j = (0, 1, 0, 0), (0, 0, 1, 0)
    assert qmul(i, j) == (0, 0, 0, 1) and qmul(j, i) == (0, 0, 0, -1)


@pytest.mark.parametrize("strategy", ["rows", "columns"])
def test_quaternion_decomposition_recomposes(strategy):
    rng = random.Random(5)
    done = 0
    while done < 40:
        A = random_matrix(rng, rng.choice([2, 3]))
        try:
            dec = bruhat_decompose(A, QUATERNIONS, strategy)
        except NonInvertibleError:
            continue
        assert matrices_equal(QUATERNIONS, dec.recompose(), A)
        n = len(A)
        assert all(dec.T[r][c] == (ONE if r == c else ZERO) for r in range(n) for c in range(r + 1))
        assert all(dec.V[r][c] == (ONE if r == c else ZERO) for r in range(n) for c in range(r, n))
        done += 1


def test_quaternion_strategies_agree_on_sigma_and_diagonal():
    rng = random.Random(6)
    done = 0
    while done < 40:
        A = random_matrix(rng, 3)
        try:
            rows = bruhat_decompose(A, QUATERNIONS, "rows")
        except NonInvertibleError:
            continue
        cols = bruhat_decompose(A, QUATERNIONS, "columns")
        assert rows.sigma == cols.sigma
        assert rows.U == cols.U
        done += 1


def test_quaternion_value_is_multiplicative_in_norm():
    # the reduced norm kills commutators, so it is a well-defined invariant of the class
    rng = random.Random(7)
    for _ in range(30):
        A, B = random_matrix(rng, 2), random_matrix(rng, 2)
        dA = delta_epsilon_tau(A, QUATERNIONS)
        dB = delta_epsilon_tau(B, QUATERNIONS)
        dAB = delta_epsilon_tau(matmul(QUATERNIONS, A, B), QUATERNIONS)
        assert qnorm(dAB) == qnorm(dA) * qnorm(dB)


def test_small_examples_over_the_rationals():
    R = RATIONALS
    assert delta_epsilon_tau(identity(R, 3), R) == 1
    assert delta_epsilon_tau(permutation_matrix(R, (1, 0)), R) == -1
    assert delta_epsilon_tau(diagonal(R, [Fraction(2), Fraction(3), Fraction(-5)]), R) == -30
    assert delta_epsilon_tau([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]], R) == 0
    with pytest.raises(NonInvertibleError):
        bruhat_decompose([[Fraction(0), Fraction(0)], [Fraction(1), Fraction(1)]], R)


def test_antidiagonal_decomposition():
    R = RATIONALS
    A = [[Fraction(0), Fraction(2)], [Fraction(3), Fraction(0)]]
    dec = bruhat_decompose(A, R)
    assert dec.sigma == (1, 0)
    assert dec.U == [2, 3]
    assert delta_epsilon_tau(A, R) == classical_det(A, R) == -6


def test_unknown_strategy():
    with pytest.raises(ValueError):
        bruhat_decompose(identity(RATIONALS, 2), RATIONALS, "diagonal")


def test_read_matrix():
    text = "# a 2x2 example\n1, q\nq^2, 1/(1+q)  # trailing comment\n"
    A = read_matrix(text)
    q = QF.parse("q")
    assert A[0][1] == q and A[1][0] == q * q
    assert A[1][1] == QF.invert(QF.add(QF.one, q))
    semi = read_matrix("1; 2\n3; 4", RATIONALS)
    assert classical_det(semi, RATIONALS) == -2
    with pytest.raises(ParseError):
        read_matrix("1, 2\n3")
    with pytest.raises(ParseError):
        read_matrix("1, q +")


@pytest.mark.parametrize("n", [1, 2, 3])
def test_pivot_chain_is_sound(n):
    chain = pivot_chain(n)
    assert chain.sound
    assert len(chain.pivots()) == n
    assert str(chain.pivots()[0]) == "z11"


def test_pivot_chain_second_pivot_n2():
    chain = pivot_chain(2)
    assert str(chain.pivots()[1]) == "z22 + (-q^-1)*zinv11*z12*z21"


@pytest.mark.parametrize("n", [2, 3])
def test_corollary(n):
    assert corollary_check(n).all_hold


def test_quantum_first_column_pivots_multiply_to_qdet():
    ctx = QContext(2, True)
    ring = quantum_pivot_division(ctx)
    Z = ctx.generic_matrix()
    rows = [[Z[i, j] for j in (1, 2)] for i in (1, 2)]
    a, b = first_column_pivots(rows, ring)
    assert ctx.mul(a, b) == qdet(Z)


def test_quantum_pivot_division_refuses_general_elements():
    ctx = QContext(2, True)
    ring = quantum_pivot_division(ctx)
    assert ring.invert(ctx.pivot) == ctx.pivot_inv
    with pytest.raises(NonInvertibleError):
        ring.invert(ctx.z(1, 2))
    with pytest.raises(NonInvertibleError):
        ring.invert(ctx.pivot + ctx.z(1, 2))
