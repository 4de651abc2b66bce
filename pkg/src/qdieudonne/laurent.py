"""
Exact multivariate Laurent polynomials over the rationals.

A LaurentPoly lives in a ParamSpace (an ordered tuple of parameter names) and
stores a dict mapping exponent vectors to nonzero rational coefficients.
Coefficients are plain ``int`` whenever integral and ``fractions.Fraction``
otherwise.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .errors import ContextError, NonInvertibleError, ParseError


@dataclass(frozen=True)
class ParamSpace:
    names: tuple

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if len(set(names)) != len(names):
            raise ValueError("duplicate parameter names: %r" % (names,))
        for name in names:
            if not re.fullmatch(r"[A-Za-z][A-Za-z0-9_]*", name):
                raise ValueError("bad parameter name %r" % name)

    def __len__(self):
        return len(self.names)

    def index(self, name):
        try:
            return self.names.index(name)
        except ValueError:
            raise ContextError("unknown parameter %r in %r" % (name, self.names)) from None

    def zero_exp(self):
        return (0,) * len(self.names)


def _norm_coeff(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class LaurentPoly:
    """Immutable Laurent polynomial with rational coefficients."""

    __slots__ = ("space", "_t", "_hash")

    def __init__(self, space: ParamSpace, terms=None, _trusted=False):
        self.space = space
        self._hash = None
        if _trusted:
            self._t = terms
            return
        t = {}
        width = len(space)
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != width:
                raise ContextError("exponent vector %r does not fit %r" % (exp, space.names))
            if not isinstance(c, Rational):
                raise TypeError("coefficient must be rational, got %r" % (c,))
            c = t.get(exp, 0) + c
            if c:
                t[exp] = _norm_coeff(c)
            else:
                t.pop(exp, None)
        self._t = t

    # -- constructors --------------------------------------------------

    @classmethod
    def const(cls, space, c=1):
        c = _norm_coeff(c)
        return cls(space, {space.zero_exp(): c} if c else {}, _trusted=True)

    @classmethod
    def zero(cls, space):
        return cls(space, {}, _trusted=True)

    @classmethod
    def one(cls, space):
        return cls(space, {space.zero_exp(): 1}, _trusted=True)

    @classmethod
    def var(cls, space, name, power=1):
        exp = [0] * len(space)
        exp[space.index(name)] = power
        return cls(space, {tuple(exp): 1}, _trusted=True)

    @classmethod
    def monomial(cls, space, exp, c=1):
        return cls(space, {tuple(exp): c})

    # -- inspection ----------------------------------------------------

    @property
    def terms(self):
        """Terms as a tuple of (exponent vector, coefficient), lexicographically sorted."""
        return tuple(sorted(self._t.items()))

    def is_zero(self):
        return not self._t

    def is_one(self):
        return len(self._t) == 1 and self._t.get(self.space.zero_exp()) == 1

    def is_monomial(self):
        return len(self._t) == 1

    def is_constant(self):
        return not self._t or (len(self._t) == 1 and self.space.zero_exp() in self._t)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("%s is not constant" % self)
        return self._t.get(self.space.zero_exp(), 0)

    def __bool__(self):
        return bool(self._t)

    def __len__(self):
        return len(self._t)

    # -- arithmetic ----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            if other.space != self.space:
                raise ContextError("parameter spaces differ: %r vs %r"
                                   % (self.space.names, other.space.names))
            return other
        if isinstance(other, Rational):
            return LaurentPoly.const(self.space, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other._t:
            return self
        if not self._t:
            return other
        t = dict(self._t)
        for exp, c in other._t.items():
            c = t.get(exp, 0) + c
            if c:
                t[exp] = _norm_coeff(c)
            else:
                del t[exp]
        return LaurentPoly(self.space, t, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.space, {e: -c for e, c in self._t.items()}, _trusted=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._t, other._t
        if not a or not b:
            return LaurentPoly(self.space, {}, _trusted=True)
        if len(a) == 1 and len(b) == 1:
            (ea, ca), = a.items()
            (eb, cb), = b.items()
            e = tuple(x + y for x, y in zip(ea, eb))
            return LaurentPoly(self.space, {e: _norm_coeff(ca * cb)}, _trusted=True)
        t = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                c = t.get(e, 0) + ca * cb
                if c:
                    t[e] = c
                else:
                    del t[e]
        return LaurentPoly(self.space, {e: _norm_coeff(c) for e, c in t.items()}, _trusted=True)

    __rmul__ = __mul__

    def inverse(self):
        """Inverse of a monomial c*x^e; anything else raises NonInvertibleError."""
        if len(self._t) != 1:
            raise NonInvertibleError("%s is not an invertible monomial" % self)
        (e, c), = self._t.items()
        return LaurentPoly(self.space, {tuple(-x for x in e): _norm_coeff(Fraction(1) / c)},
                           _trusted=True)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = LaurentPoly.one(self.space)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.space == other.space and self._t == other._t
        if isinstance(other, Rational):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.space, frozenset(self._t.items())))
        return self._hash

    # -- substitution --------------------------------------------------

    def specialize(self, bindings, target: ParamSpace):
        """Substitute every parameter by a LaurentPoly over ``target``."""
        missing = [n for n in self.space.names if n not in bindings]
        if missing:
            raise ContextError("no binding for %s" % ", ".join(missing))
        images = []
        for name in self.space.names:
            b = bindings[name]
            if isinstance(b, Rational):
                b = LaurentPoly.const(target, b)
            if b.space != target:
                raise ContextError("binding for %s is not over the target space" % name)
            images.append(b)
        # negative powers need invertible images
        for i, name in enumerate(self.space.names):
            if any(e[i] < 0 for e in self._t) and not images[i].is_monomial():
                raise NonInvertibleError(
                    "%s occurs with a negative exponent but is bound to %s" % (name, images[i]))
        cache = {}
        result = LaurentPoly.zero(target)
        for exp, c in self._t.items():
            term = LaurentPoly.const(target, c)
            for i, e in enumerate(exp):
                if e:
                    key = (i, e)
                    if key not in cache:
                        cache[key] = images[i] ** e
                    term = term * cache[key]
            result = result + term
        return result

    def evaluate(self, values):
        """Numeric value for a full assignment name -> rational (nonzero where inverted)."""
        total = Fraction(0)
        for exp, c in self._t.items():
            v = Fraction(c)
            for name, e in zip(self.space.names, exp):
                if e:
                    v *= Fraction(values[name]) ** e
            total += v
        return _norm_coeff(total)

    # -- text ----------------------------------------------------------

    def _monomial_str(self, exp):
        parts = []
        for name, e in zip(self.space.names, exp):
            if e == 1:
                parts.append(name)
            elif e:
                parts.append("%s^%d" % (name, e))
        return "*".join(parts)

    def __str__(self):
        if not self._t:
            return "0"
        out = []
        for exp, c in sorted(self._t.items()):
            mono = self._monomial_str(exp)
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            if mono:
                body = mono if mag == 1 else "%s*%s" % (mag, mono)
            else:
                body = str(mag)
            if not out:
                out.append(body if sign == "+" else "-" + body)
            else:
                out.append("%s %s" % (sign, body))
        return " ".join(out)

    def __repr__(self):
        return "LaurentPoly(%r, %r)" % (self.space.names, str(self))

    @classmethod
    def parse(cls, text, space):
        return _LaurentParser(text, space).parse()


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|(\S))")


def _tokenize(text):
    pos = 0
    out = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        num, name, sym = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif name is not None:
            out.append(("name", name))
        else:
            out.append(("sym", sym))
        pos = m.end()
    return out


class _LaurentParser:
    def __init__(self, text, space):
        self.text = text
        self.space = space
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None:
            raise ParseError("unexpected end of input in %r" % self.text)
        if (kind and tok[0] != kind) or (value is not None and tok[1] != value):
            raise ParseError("unexpected %r in %r" % (tok[1], self.text))
        self.i += 1
        return tok

    def parse(self):
        if not self.toks:
            raise ParseError("empty expression")
        result = self.expr()
        if self.i != len(self.toks):
            raise ParseError("trailing input %r in %r" % (self.peek()[1], self.text))
        return result

    def expr(self):
        sign = 1
        if self.peek() in (("sym", "-"), ("sym", "+")):
            sign = -1 if self.take()[1] == "-" else 1
        result = self.term() * sign
        while self.peek() in (("sym", "-"), ("sym", "+")):
            op = self.take()[1]
            t = self.term()
            result = result + t if op == "+" else result - t
        return result

    def term(self):
        result = self.factor()
        while self.peek() == ("sym", "*"):
            self.take()
            result = result * self.factor()
        return result

    def factor(self):
        base = self.atom()
        if self.peek() == ("sym", "^"):
            self.take()
            neg = False
            if self.peek() == ("sym", "-"):
                self.take()
                neg = True
            k = self.take("num")[1]
            try:
                return base ** (-k if neg else k)
            except NonInvertibleError as exc:
                raise ParseError(str(exc)) from None
        return base

    def atom(self):
        kind, val = self.peek()
        if kind == "num":
            self.take()
            c = Fraction(val)
            if self.peek() == ("sym", "/"):
                self.take()
                c = c / self.take("num")[1]
            return LaurentPoly.const(self.space, c)
        if kind == "name":
            self.take()
            try:
                return LaurentPoly.var(self.space, val)
            except ContextError as exc:
                raise ParseError(str(exc)) from None
        if (kind, val) == ("sym", "("):
            self.take()
            inner = self.expr()
            self.take("sym", ")")
            return inner
        raise ParseError("unexpected %r in %r" % (val, self.text))


def laurent_arith(kind, a, b=None):
    """Dispatch helper: kind in {'add', 'sub', 'mul', 'neg'}."""
    if kind == "neg":
        return -a
    if b is None:
        raise ValueError("%s needs two operands" % kind)
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    raise ValueError("unknown operation %r" % kind)


# frequently used spaces
Q_SPACE = ParamSpace(("q",))
EMPTY_SPACE = ParamSpace(())


def qpoly(text):
    return LaurentPoly.parse(text, Q_SPACE)
