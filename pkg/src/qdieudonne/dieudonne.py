"""
Dieudonne determinant machinery.

Over a (possibly noncommutative) division ring given as a capability
record, a square matrix factors as A = T U P(sigma) V with T upper and V
lower unitriangular; sign(sigma) u_1...u_n is the delta-epsilon-tau value.
For generic quantum matrices the same quantity is realized by the pivot
chain of iterated first-column row reduction, checked level by level.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Callable

import sympy
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

from .errors import NonInvertibleError, ParseError, PivotError
from .ncalg import DEFAULT_BUDGET, NCPoly, apply_hom, entry
from .qmatrix import QContext, QMatrix, inversions, qdet, rel_q_instances
from .report import CheckReport


@dataclass(frozen=True)
class DivisionContext:
    name: str
    zero: object
    one: object
    add: Callable
    sub: Callable
    mul: Callable
    invert: Callable
    is_zero: Callable
    is_commutative: bool
    parse: Callable = None
    neg: Callable = None

    def negate(self, x):
        return self.neg(x) if self.neg else self.sub(self.zero, x)


def _frac_invert(x):
    if x == 0:
        raise NonInvertibleError("zero is not invertible")
    return 1 / Fraction(x)


RATIONALS = DivisionContext(
    "rationals", Fraction(0), Fraction(1),
    lambda a, b: a + b, lambda a, b: a - b, lambda a, b: a * b,
    _frac_invert, lambda a: a == 0, True, lambda s: Fraction(s.strip()), lambda a: -a,
)

_Q = sympy.Symbol("q")
_QFIELD = sympy.QQ.frac_field(_Q)
_TRANSFORMS = standard_transformations + (convert_xor,)


def _parse_rational_function(text):
    try:
        expr = parse_expr(text, local_dict={"q": _Q}, transformations=_TRANSFORMS)
        return _QFIELD.from_sympy(expr)
    except Exception as exc:
        raise ParseError("cannot read %r as a rational function of q: %s" % (text, exc)) from None


def _qf_invert(x):
    if not x:
        raise NonInvertibleError("zero is not invertible")
    return x ** -1


# sympy's rational-function field Q(q)
RATIONAL_FUNCTIONS_Q = DivisionContext(
    "Q(q)", _QFIELD.zero, _QFIELD.one,
    lambda a, b: a + b, lambda a, b: a - b, lambda a, b: a * b,
    _qf_invert, lambda a: not a, True, _parse_rational_function, lambda a: -a,
)


def quantum_pivot_division(ctx: QContext) -> DivisionContext:
    """
    Partial division over a quantum context: only monomial-coefficient
    multiples of powers of z11 (and nonzero constants) can be inverted.
    """
    alph = ctx.alphabet
    z11 = alph.idx(entry(1, 1, ctx.level))
    inv = alph.idx(ctx.pivot_inv.terms[0][0][0]) if ctx.with_pivot_inverse else None

    def invert(x):
        if len(x) != 1:
            raise NonInvertibleError("only single-term elements can be inverted: %s" % x)
        (w, c), = x.items()
        if not c.is_monomial():
            raise NonInvertibleError("coefficient %s is not a unit" % c)
        if w and (inv is None or set(w) not in ({z11}, {inv})):
            raise NonInvertibleError("%s is not a power of the pivot" % x)
        flipped = tuple(inv if a == z11 else z11 for a in w)
        return NCPoly(alph, {flipped: c.inverse()})

    return DivisionContext(
        "quantum pivot powers", NCPoly.zero(alph), NCPoly.const(alph, 1),
        lambda a, b: a + b, lambda a, b: a - b, ctx.system.mul,
        invert, lambda a: ctx.nf(a).is_zero(), False, ctx.parse, lambda a: -a,
    )


# ---------------------------------------------------------------------------
# matrices as lists of lists over a DivisionContext


def identity(ring, n):
    return [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)]


def matmul(ring, A, B):
    n, m, k = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        for j in range(k):
            acc = ring.zero
            for t in range(m):
                acc = ring.add(acc, ring.mul(A[i][t], B[t][j]))
            row.append(acc)
        out.append(row)
    return out


def permutation_matrix(ring, sigma):
    """Row i carries its 1 in column sigma[i] (0-based)."""
    n = len(sigma)
    return [[ring.one if sigma[i] == j else ring.zero for j in range(n)] for i in range(n)]


def transvection(ring, n, i, j, t):
    """I + t e_ij (0-based, i != j)."""
    M = identity(ring, n)
    M[i][j] = t
    return M


def diagonal(ring, values):
    n = len(values)
    return [[values[i] if i == j else ring.zero for j in range(n)] for i in range(n)]


def permutation_sign(sigma):
    return -1 if inversions(sigma) % 2 else 1


def matrices_equal(ring, A, B):
    return all(ring.is_zero(ring.sub(a, b)) for ra, rb in zip(A, B) for a, b in zip(ra, rb))


@dataclass
class BruhatDecomposition:
    T: list
    U: list        # diagonal entries u_1..u_n
    sigma: tuple   # 0-based: row i of P(sigma) has its 1 in column sigma[i]
    V: list
    ring: DivisionContext = field(repr=False, default=None)

    def recompose(self):
        r = self.ring
        return matmul(r, matmul(r, matmul(r, self.T, diagonal(r, self.U)),
                                permutation_matrix(r, self.sigma)), self.V)


def bruhat_decompose(A, ring: DivisionContext, strategy="rows") -> BruhatDecomposition:
    """
    A = T U P(sigma) V.  ``rows``: take rows bottom-up, pivot at the rightmost
    nonzero entry; ``columns``: take columns right-to-left, pivot at the
    lowest nonzero entry.  Both clear above pivots with upper transvections
    on the left and to the left of pivots with lower transvections on the right.
    """
    n = len(A)
    if any(len(r) != n for r in A):
        raise ValueError("matrix must be square")
    M = [list(r) for r in A]
    T = identity(ring, n)
    V = identity(ring, n)
    zero_free = lambda x: not ring.is_zero(x)
    pivot_col = {}

    def clear(r, c):
        inv = ring.invert(M[r][c])
        for j in range(c):
            if zero_free(M[r][j]):
                t = ring.negate(ring.mul(inv, M[r][j]))
                for i in range(n):                       # col j += col c * t
                    M[i][j] = ring.add(M[i][j], ring.mul(M[i][c], t))
                for k in range(n):                       # V := (I - t e_cj) V
                    V[c][k] = ring.sub(V[c][k], ring.mul(t, V[j][k]))
        for i in range(r):
            if zero_free(M[i][c]):
                t = ring.negate(ring.mul(M[i][c], inv))
                for k in range(n):                       # row i += t * row r
                    M[i][k] = ring.add(M[i][k], ring.mul(t, M[r][k]))
                for k in range(n):                       # T := T (I - t e_ir)
                    T[k][r] = ring.sub(T[k][r], ring.mul(T[k][i], t))
        pivot_col[r] = c

    if strategy == "rows":
        for r in range(n - 1, -1, -1):
            cands = [c for c in range(n) if c not in pivot_col.values() and zero_free(M[r][c])]
            if not cands:
                raise NonInvertibleError("matrix is singular (row %d vanishes)" % (r + 1))
            clear(r, max(cands))
    elif strategy == "columns":
        for c in range(n - 1, -1, -1):
            cands = [r for r in range(n) if r not in pivot_col and zero_free(M[r][c])]
            if not cands:
                raise NonInvertibleError("matrix is singular (column %d vanishes)" % (c + 1))
            clear(max(cands), c)
    else:
        raise ValueError("unknown strategy %r" % strategy)
    sigma = tuple(pivot_col[i] for i in range(n))
    U = [M[i][sigma[i]] for i in range(n)]
    return BruhatDecomposition(T, U, sigma, V, ring)


def delta_epsilon_tau(A, ring: DivisionContext, strategy="rows"):
    """sign(sigma) u_1 ... u_n, or zero for a singular matrix."""
    try:
        dec = bruhat_decompose(A, ring, strategy)
    except NonInvertibleError:
        return ring.zero
    acc = ring.one
    for u in dec.U:
        acc = ring.mul(acc, u)
    return acc if permutation_sign(dec.sigma) > 0 else ring.negate(acc)


def classical_det(A, ring: DivisionContext):
    """Leibniz sum; only meaningful for commutative rings."""
    n = len(A)
    acc = ring.zero
    for perm in permutations(range(n)):
        term = ring.one
        for i in range(n):
            term = ring.mul(term, A[i][perm[i]])
        acc = ring.add(acc, term) if permutation_sign(perm) > 0 else ring.sub(acc, term)
    return acc


def read_matrix(text, ring: DivisionContext = RATIONAL_FUNCTIONS_Q):
    """Rows on separate lines, entries separated by commas or semicolons; '#' starts a comment."""
    rows = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        sep = ";" if ";" in line else ","
        rows.append([ring.parse(cell) for cell in line.split(sep)])
    if not rows or any(len(r) != len(rows) for r in rows):
        raise ParseError("expected a nonempty square matrix")
    return rows


# ---------------------------------------------------------------------------
# pivot chain for generic quantum matrices


@dataclass
class PivotLevel:
    level: int
    ctx: QContext
    substitution: dict     # level generator -> NCPoly one level up (empty at level 0)
    pivot: NCPoly          # w^(m)_11 in its own context
    expanded_pivot: NCPoly  # the same pivot written one level up (z11 at level 0)
    certificate: CheckReport


@dataclass
class PivotChain:
    n: int
    levels: list

    @property
    def sound(self):
        return all(lv.certificate.all_hold for lv in self.levels)

    def pivots(self):
        return [lv.expanded_pivot for lv in self.levels]


def pivot_chain(n, budget=DEFAULT_BUDGET) -> PivotChain:
    if n < 1:
        raise ValueError("n must be >= 1")
    levels = []
    prev = None
    for m in range(n):
        size = n - m
        ctx = QContext(size, size > 1, level=m, budget=budget)
        if prev is None:
            subst = {}
            expanded = ctx.pivot
            cert = CheckReport("level 0 generic matrix")
            cert.extend(ctx.relations_check(ctx.generic_matrix()))
        else:
            block = prev.ctx.row_reduce().lower_block()
            subst = {entry(i, j, m): block[i, j] for i in range(1, size + 1) for j in range(1, size + 1)}
            expanded = block[1, 1]
            cert = prev.ctx.relations_check(block, rel_q_instances(size, prev.ctx.q))
            cert.title = "level %d substituted matrix" % m
        lv = PivotLevel(m, ctx, subst, ctx.pivot, expanded, cert)
        if not cert.all_hold:
            raise PivotError("level %d failed its relation certificate" % m)
        levels.append(lv)
        prev = lv
    return PivotChain(n, levels)


def corollary_check(n, budget=DEFAULT_BUDGET, chain=None) -> CheckReport:
    """qdet at each level equals its pivot times the substituted next-level qdet, exactly."""
    chain = chain or pivot_chain(n, budget)
    rep = CheckReport("corollary n=%d" % n)
    for lv in chain.levels:
        rep.add("level %d certificate" % lv.level, lv.certificate.all_hold,
                "%d/%d relations" % (lv.certificate.passed, len(lv.certificate)), (lv.level,),
                family="certificate")
    for m in range(len(chain.levels) - 1):
        here, nxt = chain.levels[m], chain.levels[m + 1]
        ctx = here.ctx
        lower = apply_hom(qdet(nxt.ctx.generic_matrix()), nxt.substitution, ctx.system)
        res = ctx.nf(qdet(ctx.generic_matrix()) - ctx.mul(ctx.pivot, lower))
        rep.add("level %d: qdet - pivot * qdet(next)" % m, res.is_zero(), res, (m,), family="level")
    if n == 2:
        ctx = chain.levels[0].ctx
        prod = ctx.mul(ctx.pivot, chain.levels[1].expanded_pivot)
        res = ctx.nf(prod - qdet(ctx.generic_matrix()))
        rep.add("z11 * (z22 - z21 z11^-1 z12) - qdet", res.is_zero(), res, family="product")
    return rep


def first_column_pivots(M, ring: DivisionContext):
    """Pivots of iterated first-column elimination: row_i -= a_i1 a_11^-1 row_1."""
    M = [list(r) for r in M]
    out = []
    while M:
        a = M[0][0]
        out.append(a)
        if len(M) == 1:
            break
        inv = ring.invert(a)
        nxt = []
        for i in range(1, len(M)):
            f = ring.mul(M[i][0], inv)
            nxt.append([ring.sub(M[i][j], ring.mul(f, M[0][j])) for j in range(1, len(M))])
        M = nxt
    return out


def transpose_counterexample_check(budget=DEFAULT_BUDGET) -> CheckReport:
    """A = [[1, a], [b, ab]] with a = z11, b = z12: A has a nonzero second pivot, A^t does not."""
    ctx = QContext(2, budget=budget)
    ring = quantum_pivot_division(ctx)
    a, b = ctx.z(1, 1), ctx.z(1, 2)
    one = ctx.const(1)
    ab = ctx.mul(a, b)
    A = [[one, a], [b, ab]]
    At = [[one, b], [a, ab]]
    rep = CheckReport("transpose counterexample")
    second = ctx.nf(first_column_pivots(A, ring)[1])
    second_t = ctx.nf(first_column_pivots(At, ring)[1])
    q = ctx.q
    expected = ab.scale(1 - q)
    rep.add("second pivot of A = (1 - q) z11 z12", second == expected, second)
    rep.add("second pivot of A is nonzero", not second.is_zero(), second)
    rep.add("second pivot of A^t = 0", second_t.is_zero(), second_t)
    vanish = all(c.evaluate({"q": 1}) == 0 for p in (second, second_t) for _, c in p.items())
    rep.add("both pivots vanish at q = 1", vanish)
    return rep
