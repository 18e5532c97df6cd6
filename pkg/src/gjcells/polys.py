"""Sparse multivariate polynomials and rational functions over the rationals.

Polynomials are immutable.  Terms are kept in a dict mapping exponent tuples to
nonzero ``mpq`` coefficients; printing and "leading term" use the graded
reverse lexicographic order with the generators in declaration order, which is
also the order used for all golden-file output.

The gcd is the classical recursive primitive-PRS algorithm; squarefree
decomposition is Yun's algorithm applied variable by variable.  Neither is
clever, but the polynomials met in practice have a handful of variables and
small degree.
"""
from __future__ import annotations

import re
from functools import lru_cache
from math import lcm

import gmpy2
from gmpy2 import mpq

__all__ = [
    "MultiPoly",
    "RatFunc",
    "rational",
    "poly_arith",
    "poly_gcd",
    "squarefree_factor",
    "refine_by_gcd",
    "ratfunc_normalize",
    "parse_poly",
]

_MPQ = type(mpq())


def rational(x) -> mpq:
    """Coerce an int, Fraction, mpq or string such as ``"6/19"`` to ``mpq``."""
    if isinstance(x, _MPQ):
        return x
    if isinstance(x, str):
        s = x.strip()
        if not s:
            raise ValueError("empty rational literal")
        try:
            return mpq(s)
        except ValueError:
            raise ValueError(f"not a rational number: {x!r}") from None
    if isinstance(x, float):
        raise TypeError("floating-point values are not accepted; use an exact rational")
    return mpq(x)


@lru_cache(maxsize=None)
def _order_key(e):
    # degrevlex: higher total degree first, then the smaller exponent in the
    # last variable wins
    return (sum(e), tuple(-x for x in reversed(e)))


def _add_exps(a, b):
    return tuple(x + y for x, y in zip(a, b))


class MultiPoly:
    __slots__ = ("gens", "terms", "_hash", "_lead")

    def __init__(self, gens, terms=None):
        self.gens = tuple(gens)
        n = len(self.gens)
        t = {}
        if terms:
            for e, c in terms.items():
                if len(e) != n:
                    raise ValueError("exponent vector length does not match generators")
                c = rational(c)
                if c:
                    t[tuple(e)] = c
        self.terms = t
        self._hash = None
        self._lead = None

    @classmethod
    def _make(cls, gens, terms):
        # trusted constructor: terms already clean
        p = object.__new__(cls)
        p.gens = gens
        p.terms = terms
        p._hash = None
        p._lead = None
        return p

    @classmethod
    def const(cls, gens, c=0):
        gens = tuple(gens)
        c = rational(c)
        return cls._make(gens, {(0,) * len(gens): c} if c else {})

    @classmethod
    def gen(cls, gens, name_or_index):
        gens = tuple(gens)
        i = gens.index(name_or_index) if isinstance(name_or_index, str) else name_or_index
        e = [0] * len(gens)
        e[i] = 1
        return cls._make(gens, {tuple(e): mpq(1)})

    @classmethod
    def monomial(cls, gens, exps, c=1):
        return cls._make(tuple(gens), {tuple(exps): rational(c)})

    # -- basic predicates -------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self):
        return self.terms.get((0,) * len(self.gens), mpq(0))

    @property
    def nvars(self):
        return len(self.gens)

    def variables(self):
        """Indices of the generators that actually occur."""
        used = set()
        for e in self.terms:
            for i, x in enumerate(e):
                if x:
                    used.add(i)
        return used

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def degree(self, k):
        return max((e[k] for e in self.terms), default=-1)

    def leading(self):
        """(exponent, coefficient) of the leading term in degrevlex order."""
        if self._lead is None:
            if not self.terms:
                raise ValueError("zero polynomial has no leading term")
            e = max(self.terms, key=_order_key)
            self._lead = (e, self.terms[e])
        return self._lead

    def lc(self):
        return self.leading()[1]

    def min_exps(self):
        it = iter(self.terms)
        m = list(next(it))
        for e in it:
            for i, x in enumerate(e):
                if x < m[i]:
                    m[i] = x
        return tuple(m)

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            if other.gens != self.gens:
                raise ValueError(f"generator mismatch: {self.gens} vs {other.gens}")
            return other
        if isinstance(other, RatFunc):
            return NotImplemented
        return MultiPoly.const(self.gens, other)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.terms:
            return self
        if not self.terms:
            return other
        t = dict(self.terms)
        for e, c in other.terms.items():
            v = t.get(e)
            if v is None:
                t[e] = c
            else:
                v = v + c
                if v:
                    t[e] = v
                else:
                    del t[e]
        return MultiPoly._make(self.gens, t)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._make(self.gens, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = rational(c)
        if not c:
            return MultiPoly._make(self.gens, {})
        if c == 1:
            return self
        return MultiPoly._make(self.gens, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            if isinstance(other, RatFunc):
                return NotImplemented
            return self.scale(other)
        other = self._coerce(other)
        if len(self.terms) < len(other.terms):
            a, b = self, other
        else:
            a, b = other, self
        t = {}
        bt = list(b.terms.items())
        for ea, ca in a.terms.items():
            for eb, cb in bt:
                e = _add_exps(ea, eb)
                v = t.get(e)
                t[e] = ca * cb if v is None else v + ca * cb
        return MultiPoly._make(self.gens, {e: c for e, c in t.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers")
        result = MultiPoly.const(self.gens, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def mul_monomial(self, m, c=1):
        c = rational(c)
        return MultiPoly._make(self.gens, {_add_exps(e, m): v * c for e, v in self.terms.items()})

    def div_monomial(self, m):
        return MultiPoly._make(
            self.gens, {tuple(x - y for x, y in zip(e, m)): v for e, v in self.terms.items()}
        )

    def divexact(self, other):
        """Exact quotient; raises ``ValueError`` when ``other`` does not divide."""
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if other.is_constant():
            return self.scale(1 / other.constant_value())
        le, lcoef = other.leading()
        r = dict(self.terms)
        q = {}
        oterms = list(other.terms.items())
        while r:
            e = max(r, key=_order_key)
            d = tuple(x - y for x, y in zip(e, le))
            if min(d) < 0:
                raise ValueError("inexact polynomial division")
            c = r[e] / lcoef
            q[d] = c
            for oe, oc in oterms:
                ne = _add_exps(oe, d)
                v = r.get(ne, 0) - c * oc
                if v:
                    r[ne] = v
                else:
                    r.pop(ne, None)
        return MultiPoly._make(self.gens, q)

    def diff(self, k):
        t = {}
        for e, c in self.terms.items():
            if e[k]:
                ne = list(e)
                ne[k] -= 1
                t[tuple(ne)] = c * e[k]
        return MultiPoly._make(self.gens, t)

    def coeffs_in(self, k):
        """Coefficients as a polynomial in generator ``k``: {degree: poly free of x_k}."""
        out = {}
        for e, c in self.terms.items():
            d = e[k]
            ne = e[:k] + (0,) + e[k + 1:]
            out.setdefault(d, {})[ne] = c
        return {d: MultiPoly._make(self.gens, t) for d, t in out.items()}

    def eval(self, point):
        """Exact value at ``point`` (a sequence of rationals, one per generator)."""
        pt = [rational(x) for x in point]
        if len(pt) != len(self.gens):
            raise ValueError("point dimension does not match generators")
        total = mpq(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(pt, e):
                if k:
                    v *= x ** k
            total += v
        return total

    def eval_float(self, point):
        total = 0.0
        for e, c in self.terms.items():
            v = float(c)
            for x, k in zip(point, e):
                if k:
                    v *= x ** k
            total += v
        return total

    def gradient_float(self, point):
        return [self.diff(k).eval_float(point) for k in range(len(self.gens))]

    def monic(self):
        if not self.terms:
            return self
        return self.scale(1 / self.lc())

    def primitive(self):
        """Return ``(c, p)`` with ``self == c * p``, ``p`` integral, primitive, positive lc."""
        if not self.terms:
            return mpq(0), self
        den = lcm(*(int(c.denominator) for c in self.terms.values()))
        ints = [int(c * den) for c in self.terms.values()]
        g = gmpy2.gcd(*ints) if len(ints) > 1 else abs(ints[0])
        c = mpq(int(g), den)
        if self.lc() < 0:
            c = -c
        return c, self.scale(1 / c)

    # -- comparison / hashing / printing ---------------------------------------

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.gens == other.gens and self.terms == other.terms
        if isinstance(other, RatFunc):
            return NotImplemented
        try:
            c = rational(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.is_constant() and self.constant_value() == c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.gens, frozenset(self.terms.items())))
        return self._hash

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _order_key(t[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                g if k == 1 else f"{g}^{k}" for g, k in zip(self.gens, e) if k
            )
            neg = c < 0
            a = -c if neg else c
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __repr__(self):
        return f"MultiPoly({str(self)!r}, gens={self.gens})"


def poly_arith(a: MultiPoly, b: MultiPoly, op: str) -> MultiPoly:
    if a.gens != b.gens:
        raise ValueError(f"generator mismatch: {a.gens} vs {b.gens}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


# -- gcd -----------------------------------------------------------------------


def _one(gens):
    return MultiPoly.const(gens, 1)


def _lead_coeff_in(p, k):
    d = p.degree(k)
    return d, p.coeffs_in(k)[d]


def _prem(a, b, k):
    db, lcb = _lead_coeff_in(b, k)
    r = a
    while r.terms:
        dr = r.degree(k)
        if dr < db:
            break
        lcr = r.coeffs_in(k)[dr]
        shift = [0] * len(a.gens)
        shift[k] = dr - db
        r = r * lcb - (lcr * b).mul_monomial(tuple(shift))
    return r


def _content_in(p, k):
    g = None
    for c in p.coeffs_in(k).values():
        g = c.monic() if g is None else poly_gcd(g, c)
        if g.is_constant():
            return _one(p.gens)
    return g


def _primitive_in(p, k):
    c = _content_in(p, k)
    return p if c.is_constant() else p.divexact(c)


def poly_gcd(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """Monic greatest common divisor (zero if both inputs are zero)."""
    if a.gens != b.gens:
        raise ValueError(f"generator mismatch: {a.gens} vs {b.gens}")
    return _gcd(a, b)


@lru_cache(maxsize=200_000)
def _gcd(a, b):
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    if a.is_constant() or b.is_constant():
        return _one(a.gens)
    if a == b:
        return a.monic()
    ma, mb = a.min_exps(), b.min_exps()
    m = tuple(map(min, ma, mb))
    if any(ma):
        a = a.div_monomial(ma)
    if any(mb):
        b = b.div_monomial(mb)
    g = _gcd_monomial_free(a, b)
    if any(m):
        g = g.mul_monomial(m)
    return g.monic()


def _gcd_monomial_free(a, b):
    gens = a.gens
    if a.is_constant() or b.is_constant():
        return _one(gens)
    va, vb = a.variables(), b.variables()
    for x, y in ((a, vb - va), (b, va - vb)):
        # a generator missing from one side cannot occur in the gcd
        if y:
            other = b if x is a else a
            k = min(y)
            g = x
            for c in other.coeffs_in(k).values():
                g = _gcd(g, c)
                if g.is_constant():
                    break
            return g
    # cheap divisibility checks handle the common "one divides the other" case
    for x, y in ((a, b), (b, a)):
        if x.total_degree() <= y.total_degree():
            try:
                y.divexact(x)
                return x
            except ValueError:
                pass
    if a.total_degree() == 1 or b.total_degree() == 1:
        return _one(gens)
    k = min(va, key=lambda i: (max(a.degree(i), b.degree(i)), i))
    ca, cb = _content_in(a, k), _content_in(b, k)
    c = _gcd(ca, cb)
    pa = a if ca.is_constant() else a.divexact(ca)
    pb = b if cb.is_constant() else b.divexact(cb)
    if pa.degree(k) < pb.degree(k):
        pa, pb = pb, pa
    while True:
        r = _prem(pa, pb, k)
        if r.is_zero():
            g = _primitive_in(pb, k)
            break
        if r.degree(k) == 0:
            g = _one(gens)
            break
        pa, pb = pb, _primitive_in(r, k)
    return g * c


# -- squarefree decomposition ------------------------------------------------------


def _yun(p, k):
    dp = p.diff(k)
    g = _gcd(p, dp)
    b = p.divexact(g)
    c = dp.divexact(g)
    d = c - b.diff(k)
    out = []
    i = 1
    while not b.is_constant():
        a = _gcd(b, d)
        if not a.is_constant():
            out.append((a, i))
        b = b.divexact(a)
        c = d.divexact(a)
        d = c - b.diff(k)
        i += 1
    return out


def _normalize_factor(p):
    return p.primitive()[1]


def squarefree_factor(p: MultiPoly, known=()) -> list[tuple[MultiPoly, int]]:
    """Squarefree decomposition of ``p``.

    Returns ``[(factor, multiplicity), ...]`` with pairwise coprime, squarefree,
    primitive integral factors of positive leading coefficient; the product of
    ``factor**multiplicity`` equals ``p`` up to a nonzero rational constant.
    Monomial factors are split per variable.  If ``known`` polynomials are given,
    factors are further split by gcds against them.
    """
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    gens = p.gens
    out = []
    m = p.min_exps()
    for i, k in enumerate(m):
        if k:
            out.append((MultiPoly.gen(gens, i), k))
    if any(m):
        p = p.div_monomial(m)
    stack = [p]
    while stack:
        q = stack.pop()
        if q.is_constant():
            continue
        k = min(q.variables())
        c = _content_in(q, k)
        if not c.is_constant():
            q = q.divexact(c)
            stack.append(c)
        out.extend(_yun(q, k))
    merged = {}
    for f, mult in out:
        f = _normalize_factor(f)
        merged[f] = merged.get(f, 0) + mult
    factors = list(merged.items())
    if known:
        factors = refine_by_gcd(factors, known)
    factors.sort(key=lambda fm: (fm[0].total_degree(), _order_key(fm[0].leading()[0]), str(fm[0])))
    return factors


def refine_by_gcd(factors, known):
    """Split each factor by its gcds with the polynomials in ``known``."""
    known = [q for q in known if not q.is_constant()]
    result = []
    work = list(factors)
    while work:
        f, mult = work.pop()
        split = False
        for q in known:
            if q == f:
                continue
            g = _gcd(f, q)
            if g.is_constant() or g.total_degree() == f.total_degree():
                continue
            g = _normalize_factor(g)
            work.append((g, mult))
            work.append((_normalize_factor(f.divexact(g)), mult))
            split = True
            break
        if not split:
            result.append((f, mult))
    merged = {}
    for f, mult in result:
        merged[f] = merged.get(f, 0) + mult
    return list(merged.items())


# -- rational functions ------------------------------------------------------------


class RatFunc:
    """Quotient ``num/den`` in lowest terms with a monic denominator."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None):
        if den is None:
            den = MultiPoly.const(num.gens, 1)
        n, d = _reduce(num, den)
        self.num = n
        self.den = d
        self._hash = None

    @classmethod
    def _make(cls, num, den):
        r = object.__new__(cls)
        r.num = num
        r.den = den
        r._hash = None
        return r

    @classmethod
    def const(cls, gens, c):
        gens = tuple(gens)
        return cls._make(MultiPoly.const(gens, c), MultiPoly.const(gens, 1))

    @property
    def gens(self):
        return self.num.gens

    def is_zero(self):
        return self.num.is_zero()

    def is_constant(self):
        return self.num.is_constant() and self.den.is_constant()

    def is_polynomial(self):
        return self.den.is_constant()

    def constant_value(self):
        return self.num.constant_value() / self.den.constant_value()

    def _lift(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, MultiPoly):
            return RatFunc._make(other, MultiPoly.const(other.gens, 1))
        return RatFunc.const(self.gens, other)

    def __add__(self, other):
        o = self._lift(other)
        if o.num.is_zero():
            return self
        if self.num.is_zero():
            return o
        if self.den == o.den:
            n = self.num + o.num
            if self.den.is_constant():
                return RatFunc._make(n, self.den)
            g = _gcd(n, self.den)
            if g.is_constant():
                return RatFunc._make(n, self.den)
            return RatFunc._make(n.divexact(g), self.den.divexact(g)).monicize()
        if self.den.is_constant():
            return RatFunc._make(self.num * o.den + o.num, o.den)
        if o.den.is_constant():
            return RatFunc._make(self.num + o.num * self.den, self.den)
        g = _gcd(self.den, o.den)
        if g.is_constant():
            n = self.num * o.den + o.num * self.den
            d = self.den * o.den
            return RatFunc._make(n, d)  # already coprime: den factors are coprime to n
        d1 = self.den.divexact(g)
        d2 = o.den.divexact(g)
        n = self.num * d2 + o.num * d1
        d = d1 * o.den
        h = _gcd(n, g)
        if not h.is_constant():
            n = n.divexact(h)
            d = d.divexact(h)
        return RatFunc._make(n, d).monicize()

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._make(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if self.num.is_zero() or o.num.is_zero():
            return RatFunc.const(self.gens, 0)
        if o.is_constant():
            return RatFunc._make(self.num.scale(o.constant_value()), self.den)
        if self.is_constant():
            return RatFunc._make(o.num.scale(self.constant_value()), o.den)
        g1 = _gcd(self.num, o.den)
        g2 = _gcd(o.num, self.den)
        n1 = self.num if g1.is_constant() else self.num.divexact(g1)
        d2 = o.den if g1.is_constant() else o.den.divexact(g1)
        n2 = o.num if g2.is_constant() else o.num.divexact(g2)
        d1 = self.den if g2.is_constant() else self.den.divexact(g2)
        return RatFunc._make(n1 * n2, d1 * d2).monicize()

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDivisionError("rational function division by zero")
        return RatFunc._make(self.den, self.num).monicize()

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def monicize(self):
        c = self.den.lc()
        if c == 1:
            return self
        inv = 1 / c
        return RatFunc._make(self.num.scale(inv), self.den.scale(inv))

    def eval(self, point):
        d = self.den.eval(point)
        if not d:
            raise ZeroDivisionError("denominator vanishes at the point")
        return self.num.eval(point) / d

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, MultiPoly):
            return self.den.is_constant() and self.num == other
        try:
            c = rational(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.is_constant() and self.constant_value() == c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __str__(self):
        if self.den == 1:
            return str(self.num)
        n = str(self.num)
        if len(self.num.terms) > 1:
            n = f"({n})"
        d = str(self.den)
        if len(self.den.terms) > 1 or "*" in d or "^" in d:
            d = f"({d})"
        return f"{n}/{d}"

    def __repr__(self):
        return f"RatFunc({str(self)!r})"


def _reduce(num, den):
    if num.gens != den.gens:
        raise ValueError(f"generator mismatch: {num.gens} vs {den.gens}")
    if den.is_zero():
        raise ZeroDivisionError("zero denominator")
    if num.is_zero():
        return num, MultiPoly.const(num.gens, 1)
    g = _gcd(num, den)
    if not g.is_constant():
        num = num.divexact(g)
        den = den.divexact(g)
    c = den.lc()
    if c != 1:
        num = num.scale(1 / c)
        den = den.scale(1 / c)
    return num, den


def ratfunc_normalize(num: MultiPoly, den: MultiPoly) -> RatFunc:
    return RatFunc(num, den)


# -- parsing ---------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def _tokenize(text):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"unexpected character at {pos} in {text!r}")
        num, ident, op = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif ident is not None:
            out.append(("id", ident))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return out


def parse_poly(text: str, gens=None) -> MultiPoly:
    """Parse ``-f^2*v + 3*f*b*v + 1/2*b`` style text.

    Division is allowed only by constants.  Without ``gens`` the generators are
    the identifiers in order of first appearance.
    """
    toks = _tokenize(text)
    if gens is None:
        seen = []
        for kind, v in toks:
            if kind == "id" and v not in seen:
                seen.append(v)
        gens = seen
    gens = tuple(gens)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else (None, None)

    def take():
        nonlocal pos
        t = peek()
        pos += 1
        return t

    def expr():
        node = term()
        while peek() in (("op", "+"), ("op", "-")):
            _, op = take()
            rhs = term()
            node = node + rhs if op == "+" else node - rhs
        return node

    def term():
        node = unary()
        while peek() in (("op", "*"), ("op", "/")):
            _, op = take()
            rhs = unary()
            if op == "*":
                node = node * rhs
            else:
                if not rhs.is_constant() or rhs.is_zero():
                    raise ValueError("division only by nonzero constants")
                node = node.scale(1 / rhs.constant_value())
        return node

    def unary():
        if peek() == ("op", "-"):
            take()
            return -unary()
        if peek() == ("op", "+"):
            take()
            return unary()
        return power()

    def power():
        base = atom()
        if peek() == ("op", "^"):
            take()
            kind, v = take()
            if kind != "num":
                raise ValueError("exponent must be a nonnegative integer")
            return base ** v
        return base

    def atom():
        kind, v = take()
        if kind == "num":
            return MultiPoly.const(gens, v)
        if kind == "id":
            if v not in gens:
                raise ValueError(f"unknown generator {v!r}; expected one of {gens}")
            return MultiPoly.gen(gens, v)
        if (kind, v) == ("op", "("):
            node = expr()
            if take() != ("op", ")"):
                raise ValueError("unbalanced parentheses")
            return node
        raise ValueError(f"unexpected token {v!r}")

    if not toks:
        raise ValueError("empty polynomial text")
    result = expr()
    if pos != len(toks):
        raise ValueError(f"trailing input in {text!r}")
    return result
