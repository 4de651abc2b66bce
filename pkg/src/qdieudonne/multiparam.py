"""
Multiparameter quantum matrices M_{p,l}(n): relations, determinant,
subset minors and their expansions, the bigrading by left/right degree,
the bicharacter c_p and the twisted product it induces.

Parameters are ``l`` (lambda) and ``p{i}{j}`` for i < j; p_ji is realized
as the inverse of p_ij.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, permutations

from .errors import ContextError, GradingError, InconsistencyError, UnknownIdentityError
from .grassmann import GrassContext
from .laurent import LaurentPoly, ParamSpace, Q_SPACE
from .ncalg import DEFAULT_BUDGET, MATRIX, PIVOT_INV, ABSTRACT, NCPoly
from .qmatrix import (
    COLUMN, ROW, SECONDARY, MatrixAlgebra, QContext, QMatrix, QuadraticRelation,
    index_tuples, qdet, rel_q_instances,
)
from .report import CheckReport


def p_names(n):
    return ["p%d%d" % (i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


def mp_space(n):
    return ParamSpace(tuple(["l"] + p_names(n)))


def antisymmetric(space, prefix="p"):
    """(i, j) -> prefix_ij as a monomial, with prefix_ji = prefix_ij^-1 and 1 on the diagonal."""
    one = LaurentPoly.one(space)

    def value(i, j):
        if i == j:
            return one
        if i < j:
            return LaurentPoly.var(space, "%s%d%d" % (prefix, i, j))
        return LaurentPoly.var(space, "%s%d%d" % (prefix, j, i), -1)
    return value


def twrel_instances(n, lam: LaurentPoly, p):
    """
    TW relations for parameters ``lam`` and antisymmetric ``p`` (a callable).
    Main diagonal: u_jl u_ik = p_ji p_kl u_ik u_jl + (lam - 1) p_ji u_il u_jk.
    """
    one = LaurentPoly.one(lam.space)
    out = []
    for fam, (i, j, k, l) in index_tuples(n):
        if fam == ROW:
            terms = ((one, (i, l), (i, k)), (-p(k, l), (i, k), (i, l)))
        elif fam == COLUMN:
            terms = ((one, (j, k), (i, k)), (-(lam * p(j, i)), (i, k), (j, k)))
        elif fam == SECONDARY:
            terms = ((one, (j, k), (i, l)), (-(lam * p(j, i) * p(l, k)), (i, l), (j, k)))
        else:
            terms = ((one, (j, l), (i, k)), (-(p(j, i) * p(k, l)), (i, k), (j, l)),
                     (-((lam - one) * p(j, i)), (i, l), (j, k)))
        out.append(QuadraticRelation(fam, (i, j, k, l), terms))
    return out


class MPContext(MatrixAlgebra):
    letter = "u"

    def __init__(self, n, with_pivot_inverse=False, level=0, budget=DEFAULT_BUDGET):
        space = mp_space(n)
        self.lam = LaurentPoly.var(space, "l")
        self.p = antisymmetric(space)
        super().__init__(n, space, with_pivot_inverse, level, budget)

    def relation_instances(self):
        return twrel_instances(self.n, self.lam, self.p)

    def qq(self, i, j):
        """q_ij: lambda p_ij below the diagonal, lambda^-1 p_ij above it."""
        if i == j:
            return LaurentPoly.one(self.params)
        return self.lam * self.p(i, j) if i > j else self.lam ** -1 * self.p(i, j)

    def det(self, M):
        return mp_det(M)

    @cached_property
    def plain(self):
        if not self.with_pivot_inverse:
            return self
        return MPContext(self.n, False, self.level, self.budget)


def make_mp_context(n, with_pivot_inverse=False, budget=DEFAULT_BUDGET):
    return MPContext(n, with_pivot_inverse, budget=budget)


# ---------------------------------------------------------------------------
# determinant, minors, expansions


def _sigma(weight, images):
    """prod over positions a < b with images[a] > images[b] of -weight(images[a], images[b])."""
    acc = None
    for a in range(len(images)):
        for b in range(a + 1, len(images)):
            if images[a] > images[b]:
                f = -weight(images[a], images[b])
                acc = f if acc is None else acc * f
    return acc


def mp_minor(U: QMatrix, rows, cols, check_dual=True) -> NCPoly:
    """
    Subset minor U_{J,K} = sum over bijections J -> K of sigma(p, theta) prod_j u_{j, theta j}.
    With ``check_dual`` the column-ordered form using q^-1 weights is computed too
    and must agree.
    """
    ctx = U.ctx
    J, K = sorted(rows), sorted(cols)
    if len(J) != len(K):
        raise ValueError("row and column subsets must have the same size")
    if len(set(J)) != len(J) or len(set(K)) != len(K):
        raise ValueError("subsets must not repeat indices")
    if not J:
        return ctx.const(1)
    one = LaurentPoly.one(ctx.params)
    acc = NCPoly.zero(ctx.alphabet)
    for img in permutations(K):
        c = _sigma(ctx.p, img) or one
        acc = acc + ctx.mul(*[U[j, t] for j, t in zip(J, img)]).scale(c)
    acc = ctx.nf(acc)
    if check_dual:
        if not ctx.nf(mp_minor_dual(U, J, K) - acc).is_zero():
            raise InconsistencyError("row and column forms of the minor %s,%s disagree" % (J, K))
    return acc


def mp_minor_dual(U: QMatrix, rows, cols) -> NCPoly:
    """sum over bijections K -> J of sigma(q^-1, theta) prod_k u_{theta k, k}."""
    ctx = U.ctx
    J, K = sorted(rows), sorted(cols)
    one = LaurentPoly.one(ctx.params)
    acc = NCPoly.zero(ctx.alphabet)
    for img in permutations(J):
        c = _sigma(lambda a, b: ctx.qq(a, b) ** -1, img) or one
        acc = acc + ctx.mul(*[U[t, k] for k, t in zip(K, img)]).scale(c)
    return ctx.nf(acc)


def mp_det(U: QMatrix) -> NCPoly:
    idx = range(1, U.size + 1)
    return mp_minor(U, idx, idx, check_dual=False)


def _complement(n, i):
    return [a for a in range(1, n + 1) if a != i]


def beta(ctx, j):
    acc = LaurentPoly.one(ctx.params)
    for m in range(j + 1, ctx.n + 1):
        acc = acc * -ctx.qq(j, m)
    return acc


def gamma(ctx, j):
    acc = LaurentPoly.one(ctx.params)
    for m in range(1, j):
        acc = acc * -ctx.p(j, m)
    return acc


def mp_expansion(U: QMatrix, axis, index) -> NCPoly:
    """
    column (fixed k): sum_j beta_j/beta_k U_jk u_jk;
    row (fixed j):    sum_k gamma_k/gamma_j u_jk U_jk.
    """
    ctx, n = U.ctx, U.size
    if n < 2:
        raise ValueError("expansions need n >= 2")
    if axis not in ("row", "column"):
        raise ValueError("axis must be 'row' or 'column'")
    if not 1 <= index <= n:
        raise IndexError("index %d out of range" % index)
    acc = NCPoly.zero(ctx.alphabet)
    for t in range(1, n + 1):
        if axis == "column":
            j, k = t, index
            w = beta(ctx, j) * beta(ctx, k) ** -1
            term = ctx.mul(mp_minor(U, _complement(n, j), _complement(n, k), False), U[j, k])
        else:
            j, k = index, t
            w = gamma(ctx, k) * gamma(ctx, j) ** -1
            term = ctx.mul(U[j, k], mp_minor(U, _complement(n, j), _complement(n, k), False))
        acc = acc + term.scale(w)
    return ctx.nf(acc)


def mp_row_reduce(U: QMatrix) -> QMatrix:
    return U.ctx.row_reduce(U)


# ---------------------------------------------------------------------------
# grading, bicharacter, twist


@dataclass(frozen=True)
class GradedDegree:
    left: tuple
    right: tuple

    def __add__(self, other):
        return GradedDegree(tuple(a + b for a, b in zip(self.left, other.left)),
                            tuple(a + b for a, b in zip(self.right, other.right)))


INHOMOGENEOUS = "inhomogeneous"


def _letter_degree(g, n):
    left, right = [0] * n, [0] * n
    if g.family == PIVOT_INV:
        left[0] = right[0] = -1
    elif g.family in (MATRIX, ABSTRACT):
        left[g.row - 1] = 1
        right[g.col - 1] = 1
    else:
        raise GradingError("generator family %s carries no bidegree" % g.family)
    return GradedDegree(tuple(left), tuple(right))


def word_degree(alphabet, w, n):
    deg = GradedDegree((0,) * n, (0,) * n)
    for a in w:
        deg = deg + _letter_degree(alphabet.gens[a], n)
    return deg


def _dimension(alphabet):
    return max(max(g.row or 0, g.col) for g in alphabet.gens)


def grading_degree(p: NCPoly, n=None):
    """Common bidegree of all words of ``p``, INHOMOGENEOUS, or None for 0."""
    n = n or _dimension(p.alphabet)
    degs = {word_degree(p.alphabet, w, n) for w, _ in p.items()}
    if not degs:
        return None
    if len(degs) > 1:
        return INHOMOGENEOUS
    return degs.pop()


class Cocycle:
    """Bicharacter c(t^m, t^k) = prod_{i<j} p_ij^(m_i k_j) on Z^n."""

    def __init__(self, space: ParamSpace, n, prefix="p"):
        self.space = space
        self.n = n
        self.prefix = prefix
        self.p = antisymmetric(space, prefix)

    def __call__(self, g, h):
        return cocycle_eval(self, g, h)

    def r(self, i, j):
        """Skew-symmetrization c(t_i, t_j) / c(t_j, t_i)."""
        ti = tuple(int(a == i) for a in range(1, self.n + 1))
        tj = tuple(int(a == j) for a in range(1, self.n + 1))
        return self(ti, tj) * self(tj, ti) ** -1


def cocycle_eval(c: Cocycle, g, h) -> LaurentPoly:
    if len(g) != c.n or len(h) != c.n:
        raise ValueError("degree vectors must have length %d" % c.n)
    acc = LaurentPoly.one(c.space)
    for i in range(1, c.n + 1):
        for j in range(i + 1, c.n + 1):
            e = g[i - 1] * h[j - 1]
            if e:
                acc = acc * c.p(i, j) ** e
    return acc


def twist_factor(c: Cocycle, da: GradedDegree, db: GradedDegree):
    """a o b = c(left_a, left_b)^-1 c(right_a, right_b) a b."""
    return c(da.left, db.left) ** -1 * c(da.right, db.right)


def twist_product(a: NCPoly, b: NCPoly, c: Cocycle, system=None) -> NCPoly:
    if a.alphabet is not b.alphabet:
        raise ContextError("operands over different alphabets")
    if a.alphabet.params != c.space:
        raise ContextError("cocycle parameters must match the coefficient space")
    if a.is_zero() or b.is_zero():
        return NCPoly.zero(a.alphabet)
    da, db = grading_degree(a, c.n), grading_degree(b, c.n)
    if da == INHOMOGENEOUS or db == INHOMOGENEOUS:
        raise GradingError("twisted product needs bihomogeneous operands")
    prod = system.mul(a, b) if system is not None else a * b
    return prod.scale(twist_factor(c, da, db))


def _letter_pair_degrees(a, b, n):
    def deg(pos):
        left, right = [0] * n, [0] * n
        left[pos[0] - 1] = 1
        right[pos[1] - 1] = 1
        return GradedDegree(tuple(left), tuple(right))
    return deg(a), deg(b)


def twist_relation(rel: QuadraticRelation, c: Cocycle, n):
    """Rewrite each product x_a x_b as f^-1 x_a o x_b and rescale so the pattern has coefficient 1."""
    terms = []
    for coef, a, b in rel.terms:
        da, db = _letter_pair_degrees(a, b, n)
        terms.append((coef * twist_factor(c, da, db) ** -1, a, b))
    lead = terms[0][0].inverse()
    return QuadraticRelation(rel.family, rel.indices, tuple((t * lead, a, b) for t, a, b in terms))


def twist_space(n):
    return ParamSpace(tuple(["q"] + p_names(n)))


def twist_equivalence_check(n, general=True) -> CheckReport:
    """
    Twisting M_q(n), read as H(p', q^2) with p'_ij = q, by c_p gives the TW
    relations with lambda = q^2 and parameters q p_ij^-1; with ``general``
    also check that twisting H(p, l) by c_s gives H(p s^-1, l).
    """
    rep = CheckReport("twist n=%d" % n)
    space = twist_space(n)
    c = Cocycle(space, n)
    q = LaurentPoly.var(space, "q")
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            r = c.r(i, j)
            rep.add("r(c)_%d%d = p_%d%d" % (i, j, i, j), r == c.p(i, j), r, (i, j), family="r(c)")
    target = twrel_instances(n, q ** 2, lambda i, j: q ** ((j > i) - (i > j)) * c.p(i, j) ** -1)
    for rel, want in zip(rel_q_instances(n, q), target):
        got = twist_relation(rel, c, n)
        ok = got.terms == want.terms
        rep.add("%s%s" % (rel.family, rel.indices), ok, None if ok else _rel_text(got, want),
                rel.indices, family=rel.family)
    if general:
        gspace = ParamSpace(tuple(["l"] + p_names(n) + ["s%d%d" % (i, j) for i in range(1, n + 1)
                                                            for j in range(i + 1, n + 1)]))
        lam = LaurentPoly.var(gspace, "l")
        pp = antisymmetric(gspace, "p")
        cs = Cocycle(gspace, n, "s")
        want_all = twrel_instances(n, lam, lambda i, j: pp(i, j) * cs.p(i, j) ** -1)
        for rel, want in zip(twrel_instances(n, lam, pp), want_all):
            got = twist_relation(rel, cs, n)
            ok = got.terms == want.terms
            rep.add("general %s%s" % (rel.family, rel.indices), ok,
                    None if ok else _rel_text(got, want), rel.indices, family="general")
    return rep


def _rel_text(got, want):
    fmt = lambda r: " + ".join("(%s)*%s%s" % t for t in r.terms)
    return "got %s; want %s" % (fmt(got), fmt(want))


# ---------------------------------------------------------------------------
# specialization to the one-parameter algebra


def specialization_bindings(n, target=Q_SPACE):
    q = LaurentPoly.var(target, "q")
    b = {"l": q ** 2}
    b.update({name: q for name in p_names(n)})
    return b


def specialize_to_q(p: NCPoly, qctx: QContext) -> NCPoly:
    """l -> q^2, p_ij -> q; u_ij -> z_ij (generator layouts coincide)."""
    n = qctx.n
    if len(p.alphabet) != len(qctx.alphabet) or p.alphabet.gens != qctx.alphabet.gens:
        raise ContextError("generator layouts differ")
    binds = specialization_bindings(n)
    return qctx.nf(p.map_coefficients(lambda c: c.specialize(binds, Q_SPACE), qctx.alphabet))


def specialize_matrix(U: QMatrix, qctx: QContext) -> QMatrix:
    return QMatrix(qctx, [[specialize_to_q(U[i, j], qctx) for j in range(1, U.size + 1)]
                          for i in range(1, U.size + 1)])


def specialization_check(n, budget=DEFAULT_BUDGET) -> CheckReport:
    """Every multiparameter artifact specializes to the one-parameter one, compared as text."""
    rep = CheckReport("specialization n=%d" % n)
    piv = n > 1
    mctx, qctx = MPContext(n, piv, budget=budget), QContext(n, piv, budget=budget)
    binds = specialization_bindings(n)
    for (pat, mrule) in sorted(mctx.system.rules.items()):
        qrule = qctx.system.rules.get(pat)
        got = tuple((w, str(c.specialize(binds, Q_SPACE))) for w, c in mrule.replacement)
        want = None if qrule is None else tuple((w, str(c)) for w, c in qrule.replacement)
        name = "rule %s*%s" % (mctx.alphabet.names[pat[0]], mctx.alphabet.names[pat[1]])
        ok = want is not None and sorted(got) == sorted(want)
        rep.add(name, ok, None if ok else "%s vs %s" % (got, want), pat, family="rules")

    def same(label, mp_val, q_val, family):
        got = str(specialize_to_q(mp_val, qctx))
        want = str(q_val)
        rep.add(label, got == want, None if got == want else "%s vs %s" % (got, want), family=family)

    U, Z = mctx.generic_matrix(), qctx.generic_matrix()
    same("det", mp_det(U), qdet(Z), "det")
    if piv:
        Ur, Zr = mctx.row_reduce(U), qctx.row_reduce(Z)
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                same("reduced[%d,%d]" % (i, j), Ur[i, j], Zr[i, j], "row-reduce")
        same("det(reduced)", mp_det(Ur), qdet(Zr), "det")
    return rep


# ---------------------------------------------------------------------------
# identity checks


def normalizing_multipliers(ctx: MPContext, d: NCPoly):
    """For each generator u, a monomial mu with d u = mu u d, or None if none exists."""
    out = {}
    for i in range(1, ctx.n + 1):
        for j in range(1, ctx.n + 1):
            u = ctx.z(i, j)
            left, right = ctx.mul(d, u), ctx.mul(u, d)
            mu = None
            for w, c in right.items():
                if c.is_monomial():
                    cand = left.coefficient(w) * c.inverse()
                    if cand.is_monomial():
                        mu = cand
                    break
            if mu is not None and not ctx.nf(left - right.scale(mu)).is_zero():
                mu = None
            out[(i, j)] = mu
    return out


def _mp_grassmann(n, budget):
    ctx = MPContext(n, budget=budget)
    U = ctx.generic_matrix()
    d = mp_det(U)
    rep = CheckReport("mp-grassmann n=%d" % n)
    # B^!: eta_j eta_i = -p_ji eta_i eta_j, eta'_j = sum_k u_jk eta_k
    B = GrassContext(ctx, lambda i, j: -ctx.p(j, i), with_plane=False)
    top = B.top_coefficient(B.system.product(B.transformed(U, "odd", "row")))
    res = ctx.nf(top - d)
    rep.add("B: eta'1...eta'n - det eta1...etan", res.is_zero(), res, family="B")
    if n == 2:
        # A^!: xi_j xi_i = -q_ij xi_i xi_j, xi'_k = sum_j u_jk xi_j
        A = GrassContext(ctx, lambda i, j: -ctx.qq(i, j), with_plane=False)
        top = A.top_coefficient(A.system.product(A.transformed(U, "odd", "column")))
        res = ctx.nf(top - d)
        rep.add("A: xi'1...xi'n - det xi1...xin", res.is_zero(), res, family="A")
    return rep


def _mp_rowreduce(n, budget):
    ctx = MPContext(n, n > 1, budget=budget)
    return ctx.relations_check(ctx.row_reduce())


def _mp_det_invariance(n, budget):
    ctx = MPContext(n, n > 1, budget=budget)
    U = ctx.generic_matrix()
    rep = CheckReport("mp-det-invariance n=%d" % n)
    res = ctx.nf(mp_det(U) - mp_det(ctx.row_reduce(U)))
    rep.add("det(U) - det(U')", res.is_zero(), res)
    return rep


def _mp_column_identity(n, budget):
    rep = CheckReport("mp-column-identity n=%d" % n)
    if n == 1:
        rep.add("trivial", True)
        return rep
    ctx = MPContext(n, True, budget=budget)
    Ur = ctx.row_reduce()
    # the lower block keeps its original indices, so it is the subset minor on {2..n}
    rest = range(2, n + 1)
    res = ctx.nf(mp_det(Ur) - ctx.mul(ctx.pivot, mp_minor(Ur, rest, rest)))
    rep.add("det(U') - u11 det(U'')", res.is_zero(), res)
    return rep


def _mp_normalizing(n, budget):
    ctx = MPContext(n, budget=budget)
    mus = normalizing_multipliers(ctx, mp_det(ctx.generic_matrix()))
    rep = CheckReport("mp-normalizing n=%d" % n)
    for (i, j), mu in sorted(mus.items()):
        rep.add("det u%d%d = mu u%d%d det" % (i, j, i, j), mu is not None, mu, (i, j))
    if n > 1:
        noncentral = [ij for ij, mu in mus.items() if mu is not None and not mu.is_one()]
        rep.add("some multiplier differs from 1", bool(noncentral),
                "%d generators" % len(noncentral))
    return rep


def _mp_expansion(n, budget):
    ctx = MPContext(n, budget=budget)
    U = ctx.generic_matrix()
    d = mp_det(U)
    rep = CheckReport("mp-expansion n=%d" % n)
    if n == 1:
        rep.add("trivial", True)
        return rep
    for axis in ("row", "column"):
        for k in range(1, n + 1):
            res = ctx.nf(mp_expansion(U, axis, k) - d)
            rep.add("%s %d" % (axis, k), res.is_zero(), res, (k,), family=axis)
    return rep


def _mp_minor_dual(n, budget):
    ctx = MPContext(n, budget=budget)
    U = ctx.generic_matrix()
    rep = CheckReport("mp-minor-dual n=%d" % n)
    for size in range(1, n + 1):
        for J in combinations(range(1, n + 1), size):
            for K in combinations(range(1, n + 1), size):
                res = ctx.nf(mp_minor(U, J, K, False) - mp_minor_dual(U, J, K))
                rep.add("U_%s,%s" % ("".join(map(str, J)), "".join(map(str, K))), res.is_zero(),
                        res, J + K)
    return rep


def _mp_twist(n, budget):
    return twist_equivalence_check(n)


def _mp_specialization(n, budget):
    return specialization_check(n, budget)


MP_IDENTITIES = {
    "mp-theorem-rowreduce": _mp_rowreduce,
    "mp-det-invariance": _mp_det_invariance,
    "mp-column-identity": _mp_column_identity,
    "mp-normalizing": _mp_normalizing,
    "mp-grassmann": _mp_grassmann,
    "mp-expansion": _mp_expansion,
    "mp-minor-dual": _mp_minor_dual,
    "mp-twist": _mp_twist,
    "mp-specialization": _mp_specialization,
}


def mp_verify_identity(ident, n, budget=DEFAULT_BUDGET) -> CheckReport:
    try:
        fn = MP_IDENTITIES[ident]
    except KeyError:
        raise UnknownIdentityError("unknown identity %r (known: %s)"
                                   % (ident, ", ".join(sorted(MP_IDENTITIES)))) from None
    if n < 1:
        raise ValueError("n must be >= 1")
    rep = fn(n, budget)
    rep.title = "%s n=%d" % (ident, n)
    return rep
