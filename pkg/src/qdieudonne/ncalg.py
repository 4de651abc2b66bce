"""
Noncommutative polynomials over Laurent coefficients and the rewriting
engine that brings them to PBW normal form.

Words are tuples of generator indices into an :class:`Alphabet`; the index
order *is* the generator order.  A :class:`RewriteSystem` holds one rule per
offending adjacent pair.  The default reduction is leftmost-innermost,
implemented incrementally: the normal form of ``w + (g,)`` is obtained by
appending ``g`` to each (already normal) word of ``nf(w)``, and these
appends are memoized per system.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from numbers import Rational

from .errors import ContextError, ParseError, ResourceLimitError, RewriteSystemError
from .laurent import LaurentPoly, ParamSpace

MATRIX = "matrix-entry"
PIVOT_INV = "pivot-inverse"
PLANE = "plane-var"
GRASS = "grassmann-var"
TENSOR_L = "tensor-left-entry"
TENSOR_R = "tensor-right-entry"
ABSTRACT = "abstract-entry"

FAMILIES = (MATRIX, PIVOT_INV, PLANE, GRASS, TENSOR_L, TENSOR_R, ABSTRACT)

DEFAULT_BUDGET = 10 ** 7


@dataclass(frozen=True)
class GeneratorId:
    family: str
    row: int | None
    col: int
    level: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError("unknown generator family %r" % self.family)
        if self.col < 1 or (self.row is not None and self.row < 1) or self.level < 0:
            raise ValueError("bad generator indices %r" % (self,))
        if self.family == PIVOT_INV and (self.row, self.col) != (1, 1):
            raise ValueError("pivot inverses refer to the (1,1) entry")

    def order_key(self):
        if self.family == PIVOT_INV:
            return (0, -self.level, 0, 0)
        if self.family in (MATRIX, ABSTRACT):
            return (1, self.level, self.row, self.col)
        if self.family == TENSOR_L:
            return (2, 0, self.row, self.col)
        if self.family == TENSOR_R:
            return (3, 0, self.row, self.col)
        if self.family == GRASS:
            return (4, 0, 0, self.col)
        return (5, 0, 0, self.col)

    @property
    def bidegree_weight(self):
        return -1 if self.family == PIVOT_INV else 1


def entry(i, j, level=0):
    return GeneratorId(MATRIX if level == 0 else ABSTRACT, i, j, level)


def pivot_inverse(level=0):
    return GeneratorId(PIVOT_INV, 1, 1, level)


class Alphabet:
    """Ordered generator set plus the coefficient parameter space."""

    def __init__(self, params: ParamSpace, gens, names):
        gens = tuple(gens)
        names = tuple(names)
        if len(gens) != len(names) or len(set(gens)) != len(gens) or len(set(names)) != len(names):
            raise ValueError("generators and names must be distinct and aligned")
        keys = [g.order_key() for g in gens]
        if keys != sorted(keys):
            raise ValueError("generators are not listed in generator order")
        for name in names:
            if not re.fullmatch(r"[A-Za-z][A-Za-z0-9_]*", name) or name in params.names:
                raise ValueError("bad generator name %r" % name)
        self.params = params
        self.gens = gens
        self.names = names
        self.index_of = {g: i for i, g in enumerate(gens)}
        self.index_by_name = {n: i for i, n in enumerate(names)}
        self.weights = tuple(g.bidegree_weight for g in gens)
        self.one = LaurentPoly.one(params)

    def __len__(self):
        return len(self.gens)

    def __repr__(self):
        return "Alphabet(%s)" % ", ".join(self.names)

    def idx(self, g):
        if isinstance(g, int):
            if not 0 <= g < len(self.gens):
                raise ContextError("generator index %d out of range" % g)
            return g
        if isinstance(g, str):
            try:
                return self.index_by_name[g]
            except KeyError:
                raise ContextError("unknown generator %r" % g) from None
        try:
            return self.index_of[g]
        except KeyError:
            raise ContextError("generator %r not in alphabet" % (g,)) from None

    def word(self, letters):
        return tuple(self.idx(g) for g in letters)

    def word_key(self, w):
        """Weighted-degree-then-lex key; pivot inverses carry weight -1."""
        return (sum(self.weights[a] for a in w), w)

    def render_word(self, w):
        if not w:
            return "1"
        parts = []
        i = 0
        while i < len(w):
            j = i
            while j < len(w) and w[j] == w[i]:
                j += 1
            name = self.names[w[i]]
            parts.append(name if j - i == 1 else "%s^%d" % (name, j - i))
            i = j
        return "*".join(parts)


def _acc(d, w, c):
    old = d.get(w)
    if old is None:
        d[w] = c
    else:
        c = old + c
        if c:
            d[w] = c
        else:
            del d[w]


class NCPoly:
    """Finite combination of words with nonzero LaurentPoly coefficients."""

    __slots__ = ("alphabet", "_t", "_hash")

    def __init__(self, alphabet: Alphabet, terms=None, _trusted=False):
        self.alphabet = alphabet
        self._hash = None
        if _trusted:
            self._t = terms
            return
        t = {}
        n = len(alphabet)
        for w, c in (terms or {}).items():
            w = tuple(w)
            if any(not (0 <= a < n) for a in w):
                raise ContextError("word %r outside the alphabet" % (w,))
            c = self._coeff(c)
            if c:
                _acc(t, w, c)
        self._t = t

    def _coeff(self, c):
        params = self.alphabet.params
        if isinstance(c, LaurentPoly):
            if c.space != params:
                raise ContextError("coefficient over %r, expected %r" % (c.space.names, params.names))
            return c
        if isinstance(c, Rational):
            return LaurentPoly.const(params, c)
        raise TypeError("bad coefficient %r" % (c,))

    # -- constructors --------------------------------------------------

    @classmethod
    def zero(cls, alphabet):
        return cls(alphabet, {}, _trusted=True)

    @classmethod
    def const(cls, alphabet, c=1):
        return cls(alphabet, {(): c})

    @classmethod
    def gen(cls, alphabet, g, c=1):
        return cls(alphabet, {(alphabet.idx(g),): c})

    @classmethod
    def monomial(cls, alphabet, letters, c=1):
        return cls(alphabet, {alphabet.word(letters): c})

    # -- inspection ----------------------------------------------------

    @property
    def terms(self):
        """(word, coefficient) pairs in canonical order: degree, then word-lex."""
        return tuple(sorted(self._t.items(), key=lambda wc: (len(wc[0]), wc[0])))

    def items(self):
        return self._t.items()

    def coefficient(self, letters):
        w = self.alphabet.word(letters) if letters and not isinstance(letters[0], int) else tuple(letters)
        return self._t.get(w, LaurentPoly.zero(self.alphabet.params))

    def is_zero(self):
        return not self._t

    def __bool__(self):
        return bool(self._t)

    def __len__(self):
        return len(self._t)

    def degree(self):
        return max((len(w) for w in self._t), default=-1)

    def generators_used(self):
        return {a for w in self._t for a in w}

    # -- arithmetic (free algebra; nothing is normalized here) -----------

    def _check(self, other):
        if isinstance(other, NCPoly):
            if other.alphabet is not self.alphabet:
                raise ContextError("polynomials live over different alphabets")
            return other
        if isinstance(other, (LaurentPoly, Rational)):
            return NCPoly(self.alphabet, {(): other})
        return NotImplemented

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        t = dict(self._t)
        for w, c in other._t.items():
            _acc(t, w, c)
        return NCPoly(self.alphabet, t, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly(self.alphabet, {w: -c for w, c in self._t.items()}, _trusted=True)

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c):
        c = self._coeff(c)
        if not c:
            return NCPoly.zero(self.alphabet)
        return NCPoly(self.alphabet, {w: c * v for w, v in self._t.items()}, _trusted=True)

    def __mul__(self, other):
        if isinstance(other, (LaurentPoly, Rational)):
            return self.scale(other)
        other = self._check(other)
        if other is NotImplemented:
            return other
        t = {}
        for w1, c1 in self._t.items():
            for w2, c2 in other._t.items():
                _acc(t, w1 + w2, c1 * c2)
        return NCPoly(self.alphabet, t, _trusted=True)

    def __rmul__(self, other):
        if isinstance(other, (LaurentPoly, Rational)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = NCPoly.const(self.alphabet, 1)
        for _ in range(k):
            result = result * self
        return result

    def map_coefficients(self, fn, alphabet=None):
        alphabet = alphabet or self.alphabet
        t = {}
        for w, c in self._t.items():
            c2 = fn(c)
            if c2:
                _acc(t, w, c2)
        return NCPoly(alphabet, t, _trusted=True)

    def __eq__(self, other):
        if isinstance(other, NCPoly):
            return self.alphabet is other.alphabet and self._t == other._t
        if isinstance(other, (LaurentPoly, Rational)):
            return self == NCPoly(self.alphabet, {(): other})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._t.items()))
        return self._hash

    # -- text ----------------------------------------------------------

    def __str__(self):
        if not self._t:
            return "0"
        parts = []
        for w, c in self.terms:
            word = self.alphabet.render_word(w)
            if not w:
                parts.append("1" if c.is_one() else "(%s)" % c)
            elif c.is_one():
                parts.append(word)
            else:
                parts.append("(%s)*%s" % (c, word))
        return " + ".join(parts)

    def __repr__(self):
        return "NCPoly(%s)" % self

    @classmethod
    def parse(cls, text, alphabet):
        return _parse_ncpoly(text, alphabet)


def _split_top(text, seps):
    """Split at depth-0 occurrences of single-character separators, keeping them."""
    out, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ParseError("unbalanced parentheses in %r" % text)
        # a minus right after '^' is an exponent sign, not a separator
        if depth == 0 and ch in seps and not (ch == "-" and cur and cur[-1].rstrip() == "^"):
            out.append("".join(cur))
            out.append(ch)
            cur = []
        else:
            cur.append(ch)
    if depth:
        raise ParseError("unbalanced parentheses in %r" % text)
    out.append("".join(cur))
    return out


_LETTER = re.compile(r"([A-Za-z][A-Za-z0-9_]*)(?:\^(-?\d+))?$")


def _parse_ncpoly(text, alphabet):
    text = text.strip()
    if not text:
        raise ParseError("empty polynomial")
    if text == "0":
        return NCPoly.zero(alphabet)
    pieces = _split_top(text, "+-")
    result = NCPoly.zero(alphabet)
    sign = 1
    pending = False
    for piece in pieces:
        if piece in ("+", "-"):
            if piece == "-":
                sign = -sign
            pending = True
            continue
        piece = piece.strip()
        if not piece:
            continue
        result = result + _parse_term(piece, alphabet).scale(sign)
        sign = 1
        pending = False
    if pending:
        raise ParseError("dangling operator in %r" % text)
    return result


def _parse_term(piece, alphabet):
    coeff = alphabet.one
    letters = []
    for factor in _split_top(piece, "*"):
        if factor == "*":
            continue
        factor = factor.strip()
        if not factor:
            raise ParseError("empty factor in %r" % piece)
        if factor.startswith("("):
            if not factor.endswith(")"):
                raise ParseError("bad coefficient %r" % factor)
            coeff = coeff * LaurentPoly.parse(factor[1:-1], alphabet.params)
            continue
        if factor[0].isdigit():
            coeff = coeff * LaurentPoly.parse(factor, alphabet.params)
            continue
        m = _LETTER.match(factor)
        if not m:
            raise ParseError("bad factor %r" % factor)
        name, power = m.group(1), int(m.group(2) or 1)
        if name in alphabet.index_by_name:
            if power < 0:
                raise ParseError("negative power of generator %r" % name)
            letters.extend([alphabet.index_by_name[name]] * power)
        elif name in alphabet.params.names:
            coeff = coeff * LaurentPoly.var(alphabet.params, name, power)
        else:
            raise ParseError("unknown symbol %r" % name)
    return NCPoly(alphabet, {tuple(letters): coeff})


@dataclass(frozen=True)
class RewriteRule:
    pattern: tuple
    replacement: tuple   # ((word, LaurentPoly), ...)
    kind: str = "relation"


class RewriteSystem:
    """
    A terminating, PBW-complete rule table over an alphabet.

    ``rules`` maps an adjacent pair ``(a, b)`` of generator indices to its
    replacement.  Every pair with ``a > b`` must have a rule (freely
    commuting pairs are given as ``free`` and turned into coefficient-1
    swaps).  Additional redexes with ``a <= b`` are allowed for cancellation
    (``g * g^-1``) and nilpotent squares.
    """

    def __init__(self, alphabet: Alphabet, rules=(), free=(), budget=DEFAULT_BUDGET,
                 name="", cache_limit=2_000_000, complete=True):
        self.alphabet = alphabet
        self.name = name
        self.budget = budget
        self.cache_limit = cache_limit
        self.rules = {}
        n = len(alphabet)
        one = alphabet.one
        for rule in rules:
            self._add(rule)
        for a, b in free:
            a, b = alphabet.idx(a), alphabet.idx(b)
            self._add(RewriteRule((a, b), (((b, a), one),), "free"))
        missing = [(a, b) for a in range(n) for b in range(a) if (a, b) not in self.rules]
        if missing and complete:
            a, b = missing[0]
            raise RewriteSystemError("%d out-of-order pairs lack a rule, e.g. %s*%s"
                                     % (len(missing), alphabet.names[a], alphabet.names[b]))
        self.check_termination_certificate()
        self._table = [[None] * n for _ in range(n)]
        for (a, b), rule in self.rules.items():
            self._table[a][b] = rule.replacement
        self._append_cache = {}
        self._word_cache = {}

    def _add(self, rule):
        a, b = rule.pattern
        self.alphabet.idx(a), self.alphabet.idx(b)
        if (a, b) in self.rules:
            raise RewriteSystemError("two rules for %s*%s"
                                     % (self.alphabet.names[a], self.alphabet.names[b]))
        repl = []
        for w, c in rule.replacement:
            if not isinstance(c, LaurentPoly) or c.space != self.alphabet.params:
                raise RewriteSystemError("rule coefficient outside the parameter space")
            if c:
                repl.append((tuple(w), c))
        self.rules[(a, b)] = RewriteRule((a, b), tuple(repl), rule.kind)

    def check_termination_certificate(self):
        """Each replacement word must be smaller than its pattern (weighted deg-lex)."""
        key = self.alphabet.word_key
        for pat, rule in self.rules.items():
            for w, _ in rule.replacement:
                if not key(w) < key(pat):
                    raise RewriteSystemError(
                        "rule %s*%s -> ... has non-decreasing word %s"
                        % (self.alphabet.names[pat[0]], self.alphabet.names[pat[1]],
                           self.alphabet.render_word(w)))
        return True

    def __repr__(self):
        return "RewriteSystem(%s, %d rules)" % (self.name or "?", len(self.rules))

    def rule(self, a, b):
        return self.rules.get((self.alphabet.idx(a), self.alphabet.idx(b)))

    def is_normal_word(self, w):
        t = self._table
        return all(t[w[i]][w[i + 1]] is None for i in range(len(w) - 1))

    def is_normal(self, p):
        return all(self.is_normal_word(w) for w in p._t)

    # -- leftmost-innermost kernel -------------------------------------

    def _guard(self, d):
        if len(d) > self.budget:
            raise ResourceLimitError("normal form exceeded %d live monomials" % self.budget)

    def _append(self, s, g):
        key = (s, g)
        hit = self._append_cache.get(key)
        if hit is not None:
            return hit
        one = self.alphabet.one
        if not s:
            out = {(g,): one}
        else:
            repl = self._table[s[-1]][g]
            if repl is None:
                out = {s + (g,): one}
            else:
                prefix = s[:-1]
                out = {}
                for w, c in repl:
                    for w2, c2 in self._concat(prefix, w).items():
                        _acc(out, w2, c2 if c.is_one() else c * c2)
                self._guard(out)
        if len(self._append_cache) > self.cache_limit:
            self._append_cache.clear()
        self._append_cache[key] = out
        return out

    def _concat(self, s, letters):
        """nf(s + letters) for a normal word ``s``."""
        one = self.alphabet.one
        cur = {s: one}
        for g in letters:
            nxt = {}
            for w, c in cur.items():
                for w2, c2 in self._append(w, g).items():
                    _acc(nxt, w2, c2 if c.is_one() else (c if c2.is_one() else c * c2))
            self._guard(nxt)
            cur = nxt
        return cur

    def _nf_word(self, w):
        hit = self._word_cache.get(w)
        if hit is None:
            hit = self._concat((), w)
            if len(self._word_cache) > self.cache_limit:
                self._word_cache.clear()
            self._word_cache[w] = hit
        return hit

    def _own(self, p):
        if not isinstance(p, NCPoly):
            raise TypeError("expected NCPoly, got %r" % (p,))
        if p.alphabet is not self.alphabet:
            raise ContextError("polynomial is not over this system's alphabet")

    def normal_form(self, p: NCPoly) -> NCPoly:
        self._own(p)
        out = {}
        for w, c in p._t.items():
            for w2, c2 in self._nf_word(w).items():
                _acc(out, w2, c if c2.is_one() else c * c2)
            self._guard(out)
        return NCPoly(self.alphabet, out, _trusted=True)

    def mul(self, a: NCPoly, b: NCPoly) -> NCPoly:
        """Normalized product nf(a*b)."""
        self._own(a)
        self._own(b)
        a = a if self.is_normal(a) else self.normal_form(a)
        out = {}
        for w1, c1 in a._t.items():
            for w2, c2 in b._t.items():
                c = c1 * c2
                for w, c3 in self._concat(w1, w2).items():
                    _acc(out, w, c if c3.is_one() else c * c3)
            self._guard(out)
        return NCPoly(self.alphabet, out, _trusted=True)

    def product(self, factors):
        factors = list(factors)
        result = NCPoly.const(self.alphabet, 1)
        for f in factors:
            result = self.mul(result, f)
        return result

    def gen(self, g, c=1):
        return NCPoly.gen(self.alphabet, g, c)

    def parse(self, text):
        return NCPoly.parse(text, self.alphabet)

    # -- explicit strategies (for the confluence probe) -----------------

    def redexes(self, w):
        t = self._table
        return [i for i in range(len(w) - 1) if t[w[i]][w[i + 1]] is not None]

    def reduce_with_strategy(self, p: NCPoly, strategy="leftmost", rng=None, step_limit=10 ** 6):
        """
        Reduce one redex at a time; strategy in {leftmost, rightmost, random}.
        Each word's redex is chosen once and its result memoized, so every
        word follows a single reduction path of the chosen strategy.
        """
        self._own(p)
        if strategy not in ("leftmost", "rightmost", "random"):
            raise ValueError("unknown strategy %r" % strategy)
        if strategy == "random" and rng is None:
            rng = random.Random(0)
        t = self._table
        one = self.alphabet.one
        memo = {}

        def pick(red):
            if strategy == "leftmost":
                return red[0]
            if strategy == "rightmost":
                return red[-1]
            return rng.choice(red)

        chosen = {}
        for w0 in sorted(p._t, key=lambda x: (len(x), x)):
            stack = [w0]
            while stack:
                w = stack[-1]
                if w in memo:
                    stack.pop()
                    continue
                if w not in chosen:
                    red = self.redexes(w)
                    chosen[w] = pick(red) if red else None
                i = chosen[w]
                if i is None:
                    memo[w] = {w: one}
                    stack.pop()
                    continue
                kids = [(w[:i] + r + w[i + 2:], rc) for r, rc in t[w[i]][w[i + 1]]]
                todo = [k for k, _ in kids if k not in memo]
                if todo:
                    stack.extend(todo)
                    continue
                out = {}
                for k, rc in kids:
                    for w2, c2 in memo[k].items():
                        _acc(out, w2, rc * c2)
                memo[w] = out
                stack.pop()
                if len(memo) > step_limit:
                    raise ResourceLimitError("strategy %s exceeded %d steps" % (strategy, step_limit))
        result = {}
        for w, c in p._t.items():
            for w2, c2 in memo[w].items():
                _acc(result, w2, c * c2)
        return NCPoly(self.alphabet, result, _trusted=True)


def nc_arith(kind, a, b):
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "scale":
        return a.scale(b)
    raise ValueError("unknown operation %r" % kind)


def normal_form(p, sys):
    return sys.normal_form(p)


def apply_hom(p: NCPoly, gen_map, target_sys: RewriteSystem, coeff_map=None) -> NCPoly:
    """
    Extend ``gen_map`` multiplicatively and additively, then normalize in
    ``target_sys``.  ``gen_map`` is keyed by GeneratorId, name or index of
    the source alphabet.  Coefficients must share the target parameter
    space unless ``coeff_map`` converts them.
    """
    src = p.alphabet
    images = {}
    for k, v in gen_map.items():
        if v.alphabet is not target_sys.alphabet:
            raise ContextError("image of %r is not over the target alphabet" % (k,))
        images[src.idx(k)] = v
    for a in p.generators_used():
        if a not in images:
            raise ContextError("generator %s is not mapped" % src.names[a])
    tgt = target_sys.alphabet
    out = NCPoly.zero(tgt)
    cache = {}
    for w, c in p.terms:
        c = coeff_map(c) if coeff_map else c
        if isinstance(c, LaurentPoly) and c.space != tgt.params:
            raise ContextError("coefficient space mismatch; pass coeff_map")
        # reuse the image of the longest already-computed prefix
        k = len(w)
        while k > 0 and w[:k] not in cache:
            k -= 1
        img = cache[w[:k]] if k else NCPoly.const(tgt, 1)
        for j in range(k, len(w)):
            img = target_sys.mul(img, images[w[j]])
            cache[w[:j + 1]] = img
        out = out + img.scale(c)
    return target_sys.normal_form(out)


def confluence_probe(sys: RewriteSystem, word, seed=0) -> bool:
    """True iff leftmost, rightmost and a seeded random strategy agree on ``word``."""
    w = sys.alphabet.word(word) if word and not isinstance(word[0], int) else tuple(word)
    p = NCPoly(sys.alphabet, {w: 1})
    left = sys.reduce_with_strategy(p, "leftmost")
    right = sys.reduce_with_strategy(p, "rightmost")
    rand = sys.reduce_with_strategy(p, "random", rng=random.Random(seed))
    return left == right == rand


def overlap_words(sys: RewriteSystem):
    """Words abc where both ab and bc are redexes (all patterns have length 2)."""
    out = []
    for (a, b) in sorted(sys.rules):
        for c in range(len(sys.alphabet)):
            if (b, c) in sys.rules:
                out.append((a, b, c))
    return out


def unresolved_overlaps(sys: RewriteSystem):
    """
    Overlap words whose two one-step reductions do not meet again.  Empty
    means the system is confluent (every ambiguity resolves).
    """
    bad = []
    for w in overlap_words(sys):
        p = NCPoly(sys.alphabet, {w: 1})
        if sys.reduce_with_strategy(p, "leftmost") != sys.reduce_with_strategy(p, "rightmost"):
            bad.append(w)
    return bad


def derive_pivot_inverse_rules(alphabet, base_rules, free, pivot, inverse, budget=DEFAULT_BUDGET):
    """
    Rules moving ``inverse`` (the smallest generator) to the left of every
    other generator, derived by conjugating the existing rules ``g*a -> ...``
    for the pivot ``a``.  From ``g a = alpha a g + R`` we get
    ``g a^-1 = alpha^-1 a^-1 g - alpha^-1 a^-1 R a^-1``, where the last term
    is normalized with the rules derived so far.

    Returns ``(rules, defining_system)``; the defining system contains only
    the base rules and the two cancellation rules and is what the
    multiply-back verification reduces in.
    """
    a = alphabet.idx(pivot)
    inv = alphabet.idx(inverse)
    one = alphabet.one
    cancel = [RewriteRule((a, inv), (((), one),), "cancel"),
              RewriteRule((inv, a), (((), one),), "cancel")]
    base = RewriteSystem(alphabet, list(base_rules) + cancel, free, budget=budget,
                         name="defining", complete=False)
    pending = {}
    for g in range(len(alphabet)):
        if g in (a, inv):
            continue
        rule = base.rules.get((g, a))
        if rule is None:
            raise RewriteSystemError("no rule for %s*%s; cannot derive the inverse rule"
                                     % (alphabet.names[g], alphabet.names[a]))
        alpha, rest = None, []
        for w, c in rule.replacement:
            if w == (a, g):
                alpha = c
            else:
                rest.append((w, c))
        if alpha is None or not alpha.is_monomial():
            raise RewriteSystemError("rule for %s*%s is not a skew commutation"
                                     % (alphabet.names[g], alphabet.names[a]))
        pending[g] = (alpha, rest)

    derived = {}
    while pending:
        ready = [g for g, (_, rest) in pending.items()
                 if all(x in derived or x in (a, inv) for w, _ in rest for x in w)]
        if not ready:
            raise RewriteSystemError("pivot-inverse derivation is cyclic")
        partial = RewriteSystem(alphabet, list(base_rules) + cancel + list(derived.values()),
                                free, budget=budget, complete=False)
        for g in ready:
            alpha, rest = pending.pop(g)
            ainv = alpha.inverse()
            repl = NCPoly(alphabet, {(inv, g): ainv})
            if rest:
                r = NCPoly(alphabet, {w: c for w, c in rest})
                conj = partial.normal_form(NCPoly.gen(alphabet, inv) * r * NCPoly.gen(alphabet, inv))
                repl = repl - conj.scale(ainv)
            derived[g] = RewriteRule((g, inv), tuple(repl.terms), "pivot-inverse")
    return list(derived.values()) + cancel, base


def verify_pivot_inverse_rules(rules, defining: RewriteSystem, pivot, inverse):
    """
    Multiply-back check for each derived rule ``g*a^-1 -> r``: both
    ``r*a - g`` and ``a*r*a - a*g`` must vanish using only the defining
    relations plus cancellation.  Returns a list of (rule, ok) pairs.
    """
    alphabet = defining.alphabet
    a = NCPoly.gen(alphabet, pivot)
    inv = alphabet.idx(inverse)
    out = []
    for rule in rules:
        if rule.kind != "pivot-inverse" or rule.pattern[1] != inv:
            continue
        g = NCPoly(alphabet, {(rule.pattern[0],): 1})
        r = NCPoly(alphabet, dict(rule.replacement))
        ok = (defining.normal_form(r * a - g).is_zero()
              and defining.normal_form(a * r * a - a * g).is_zero())
        out.append((rule, ok))
    return out
