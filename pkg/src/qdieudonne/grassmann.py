"""
Quantum plane and quantum exterior (Grassmann) algebra coacted on by a
quantum matrix.  Gives an independent route to the quantum determinant:
the product of the transformed odd variables is det times the top wedge.
"""

from math import comb
from itertools import permutations, product as cartesian

from .errors import InconsistencyError
from .laurent import LaurentPoly
from .ncalg import DEFAULT_BUDGET, GRASS, PLANE, Alphabet, GeneratorId, NCPoly, RewriteRule, RewriteSystem
from .qmatrix import QContext, QMatrix, inversions, qdet
from .report import CheckReport


class GrassContext:
    """
    A matrix context extended by odd variables xi_1..xi_n and plane
    variables x_1..x_n.  Matrix entries commute with both families.

    xi_j xi_i = -q^-1 xi_i xi_j and xi_i^2 = 0;  x_j x_i = q x_i x_j  (i < j).
    """

    def __init__(self, qctx, odd_swap=None, with_plane=True):
        """``odd_swap(i, j)`` is the coefficient c in xi_j xi_i -> c xi_i xi_j (i < j)."""
        self.qctx = qctx
        n = self.n = qctx.n
        base = qctx.alphabet
        if odd_swap is None:
            q = LaurentPoly.var(base.params, "q")
            odd_swap = lambda i, j: -(q ** -1)
        gens = list(base.gens)
        names = list(base.names)
        for i in range(1, n + 1):
            gens.append(GeneratorId(GRASS, None, i))
            names.append("xi%d" % i)
        if with_plane:
            for i in range(1, n + 1):
                gens.append(GeneratorId(PLANE, None, i))
                names.append("x%d" % i)
        self.alphabet = Alphabet(base.params, gens, names)
        # the base generators keep their indices, so the matrix rules carry over unchanged
        rules = list(qctx.system.rules.values())
        odd = [self.alphabet.idx(GeneratorId(GRASS, None, i)) for i in range(1, n + 1)]
        even = [self.alphabet.idx(GeneratorId(PLANE, None, i)) for i in range(1, n + 1)] if with_plane else []
        self.odd, self.even = odd, even
        for j in range(n):
            rules.append(RewriteRule((odd[j], odd[j]), (), "nilpotent"))
            for i in range(j):
                rules.append(RewriteRule((odd[j], odd[i]), (((odd[i], odd[j]), odd_swap(i + 1, j + 1)),),
                                         "grassmann"))
                if with_plane:
                    rules.append(RewriteRule((even[j], even[i]), (((even[i], even[j]), qctx.q),), "plane"))
        free = [(v, a) for v in odd + even for a in range(len(base))]
        free += [(x, xi) for x in even for xi in odd]
        self.system = RewriteSystem(self.alphabet, rules, free, budget=qctx.budget,
                                    name="grassmann n=%d" % n)

    def lift(self, p: NCPoly) -> NCPoly:
        if p.alphabet is not self.qctx.alphabet:
            raise ValueError("element is not over the underlying matrix context")
        return NCPoly(self.alphabet, dict(p.items()))

    def lower(self, p: NCPoly) -> NCPoly:
        """Inverse of lift for elements free of xi and x."""
        m = len(self.qctx.alphabet)
        if any(a >= m for a in p.generators_used()):
            raise InconsistencyError("element still contains odd or plane variables")
        return NCPoly(self.qctx.alphabet, dict(p.items()))

    def xi(self, i):
        return NCPoly(self.alphabet, {(self.odd[i - 1],): 1})

    def x(self, i):
        return NCPoly(self.alphabet, {(self.even[i - 1],): 1})

    def transformed(self, Z: QMatrix, kind="odd", by="row"):
        """v'_i = sum_j z_ij v_j (by row) or v'_i = sum_j z_ji v_j (by column)."""
        var = self.xi if kind == "odd" else self.x
        out = []
        for i in range(1, Z.size + 1):
            acc = NCPoly.zero(self.alphabet)
            for j in range(1, Z.size + 1):
                e = Z[i, j] if by == "row" else Z[j, i]
                acc = acc + self.lift(e) * var(j)
            out.append(self.system.normal_form(acc))
        return out

    def top_coefficient(self, p: NCPoly):
        """c with p == c * xi_1...xi_n; raises if p is not of that shape."""
        top = tuple(self.odd)
        n = len(top)
        coeff = {}
        for w, c in p.items():
            if w[len(w) - n:] != top or any(a in self.odd for a in w[:len(w) - n]):
                raise InconsistencyError("not proportional to the top wedge: %s"
                                         % self.alphabet.render_word(w))
            coeff[w[:len(w) - n]] = c
        return self.lower(NCPoly(self.alphabet, coeff))


def grass_context(qctx: QContext) -> GrassContext:
    """The Grassmann extension of ``qctx``, built once and kept on the context."""
    hit = getattr(qctx, "_grass", None)
    if hit is None:
        hit = qctx._grass = GrassContext(qctx)
    return hit


def wedge_det(Z: QMatrix) -> NCPoly:
    """Coefficient of xi_1...xi_n in xi'_1...xi'_n."""
    g = grass_context(Z.ctx)
    if Z.size != g.n:
        raise ValueError("matrix size must equal the context dimension")
    return g.top_coefficient(g.system.product(g.transformed(Z)))


def kobyzev_check(n, budget=DEFAULT_BUDGET) -> CheckReport:
    """Transformed plane and odd variables satisfy the same relations as the originals."""
    ctx = QContext(n, budget=budget)
    g = grass_context(ctx)
    Z = ctx.generic_matrix()
    q = LaurentPoly.var(ctx.params, "q")
    xs = g.transformed(Z, "even")
    xis = g.transformed(Z, "odd")
    mul = g.system.mul
    rep = CheckReport("kobyzev n=%d" % n)
    for i in range(n):
        res = mul(xis[i], xis[i])
        rep.add("xi'%d^2" % (i + 1), res.is_zero(), res, (i + 1,), family="grassmann")
    for i in range(n):
        for j in range(i + 1, n):
            res = g.system.normal_form(mul(xs[j], xs[i]) - mul(xs[i], xs[j]).scale(q))
            rep.add("x'%d x'%d - q x'%d x'%d" % (j + 1, i + 1, i + 1, j + 1), res.is_zero(), res,
                    (i + 1, j + 1), family="plane")
            res = g.system.normal_form(mul(xis[j], xis[i]) + mul(xis[i], xis[j]).scale(q ** -1))
            rep.add("xi'%d xi'%d + q^-1 xi'%d xi'%d" % (j + 1, i + 1, i + 1, j + 1), res.is_zero(),
                    res, (i + 1, j + 1), family="grassmann")
    return rep


def wedge_rowreduction_check(n, budget=DEFAULT_BUDGET) -> CheckReport:
    """The commutation of t_i with xi'_1, the telescoping product, and its coefficient."""
    ctx = QContext(n, n > 1, budget=budget)
    g = grass_context(ctx)
    q = LaurentPoly.var(ctx.params, "q")
    Z = ctx.generic_matrix()
    xis = g.transformed(Z)
    mul = g.system.mul
    rep = CheckReport("wedge row reduction n=%d" % n)
    if n == 1:
        rep.add("trivial", True)
        return rep
    ts = {i: g.lift(-ctx.mul(ctx.z(i, 1), ctx.pivot_inv)) for i in range(2, n + 1)}
    for i, t in ts.items():
        res = g.system.normal_form(mul(t, xis[0]) - mul(xis[0], t).scale(q))
        rep.add("t%d xi'1 - q xi'1 t%d" % (i, i), res.is_zero(), res, (i,), family="commutation")
    reduced = [xis[0]] + [xis[i - 1] + mul(ts[i], xis[0]) for i in range(2, n + 1)]
    lhs = g.system.product(reduced)
    rhs = g.system.product(xis)
    res = g.system.normal_form(lhs - rhs)
    rep.add("xi''1...xi''n - xi'1...xi'n", res.is_zero(), res, family="telescoping")
    coeff = g.top_coefficient(lhs)
    res = ctx.nf(coeff - qdet(ctx.row_reduce(Z)))
    rep.add("top coefficient - qdet(Z')", res.is_zero(), res, family="coefficient")
    return rep


def grass_dimension_check(n, d) -> CheckReport:
    """Normal monomials of xi-degree d number C(n, d); degree n+1 products vanish."""
    if not 0 <= d <= n + 1:
        raise ValueError("degree must lie in 0..n+1")
    g = grass_context(QContext(n))
    rep = CheckReport("grassmann dimension n=%d d=%d" % (n, d))
    words = set()
    for idx in cartesian(range(1, n + 1), repeat=d):
        p = g.system.product([g.xi(i) for i in idx])
        words.update(w for w, _ in p.items())
    expected = comb(n, d)
    rep.add("normal monomials of degree %d" % d, len(words) == expected,
            "%d (expected %d)" % (len(words), expected), (n, d))
    if d == n + 1:
        rep.add("degree n+1 products vanish", not words, None, (n, d))
    return rep


def permutation_wedge_check(n) -> CheckReport:
    """xi_s(1)...xi_s(n) = (-q)^-inv(s) xi_1...xi_n for every permutation s."""
    g = grass_context(QContext(n))
    q = LaurentPoly.var(g.alphabet.params, "q")
    top = g.system.product([g.xi(i) for i in range(1, n + 1)])
    rep = CheckReport("permutation wedges n=%d" % n)
    for perm in permutations(range(1, n + 1)):
        p = g.system.product([g.xi(i) for i in perm])
        res = g.system.normal_form(p - top.scale((-q) ** -inversions(perm)))
        rep.add("xi%s" % "".join(map(str, perm)), res.is_zero(), res, perm)
    return rep
