"""Exact sparse multivariate polynomials over the rationals.

Every symbolic value in this package is a :class:`Poly`: a dict from
exponent vectors to nonzero ``fractions.Fraction`` coefficients, attached to
a :class:`Ring` that fixes the variable order and a nonnegative integer
weight per variable.  The term order is weighted graded lexicographic:
terms compare first by total weighted degree, then lexicographically by
exponent vector in declaration order.  All printing and golden-value
comparison goes through the canonical string form produced by ``str()``,
e.g. ``3*x12*y - 1/2*b_135``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd, isqrt, lcm


class RingError(ArithmeticError):
    """Base class for exact-arithmetic failures."""


class ContextMismatch(RingError):
    """Operands belong to different rings."""


class NotAPerfectSquare(RingError):
    """poly_sqrt was called on a polynomial with no polynomial square root."""


class ExactDivisionError(RingError):
    """Exact polynomial division failed (the divisor does not divide)."""


_TERM_RE = re.compile(r"\s*([+-])?\s*([^+-]+)")
_FACTOR_RE = re.compile(r"([A-Za-z_][A-Za-z_0-9]*)(?:\s*(?:\^|\*\*)\s*([0-9]+))?\s*$")


class Ring:
    """A polynomial ring over Q with named, weighted variables.

    Variables are identified by position; exponent vectors are tuples of
    the same length as ``names``.  Weight 0 is allowed (defect variables
    that do not contribute to the grading).
    """

    __slots__ = ("names", "weights", "_index", "_zero_exps", "_gens")

    def __init__(self, names, weights=None):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        if weights is None:
            weights = (1,) * len(names)
        else:
            weights = tuple(int(w) for w in weights)
            if len(weights) != len(names):
                raise ValueError("weights length mismatch")
            if any(w < 0 for w in weights):
                raise ValueError("weights must be nonnegative")
        self.names = names
        self.weights = weights
        self._index = {n: i for i, n in enumerate(names)}
        self._zero_exps = (0,) * len(names)
        self._gens = None

    def __repr__(self):
        return "Ring(%s)" % ", ".join(
            "%s:%d" % (n, w) for n, w in zip(self.names, self.weights)
        )

    def __eq__(self, other):
        return (
            isinstance(other, Ring)
            and self.names == other.names
            and self.weights == other.weights
        )

    def __hash__(self):
        return hash((self.names, self.weights))

    @property
    def nvars(self):
        return len(self.names)

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise KeyError("unknown variable %r in %r" % (name, self)) from None

    def zero(self):
        return Poly(self, {})

    def one(self):
        return Poly(self, {self._zero_exps: Fraction(1)})

    def const(self, c):
        c = Fraction(c)
        return Poly(self, {self._zero_exps: c} if c else {})

    def var(self, name):
        i = self.index(name)
        exps = list(self._zero_exps)
        exps[i] = 1
        return Poly(self, {tuple(exps): Fraction(1)})

    def gens(self):
        if self._gens is None:
            self._gens = {n: self.var(n) for n in self.names}
        return dict(self._gens)

    def monomial(self, exps, coeff=1):
        exps = tuple(int(e) for e in exps)
        if len(exps) != self.nvars or any(e < 0 for e in exps):
            raise ValueError("bad exponent vector %r" % (exps,))
        c = Fraction(coeff)
        return Poly(self, {exps: c} if c else {})

    def extend(self, names, weights=None):
        """A new ring with the given variables appended after the current ones."""
        if weights is None:
            weights = (1,) * len(tuple(names))
        return Ring(self.names + tuple(names), self.weights + tuple(weights))

    def weighted_degree(self, exps):
        return sum(e * w for e, w in zip(exps, self.weights))

    def order_key(self, exps):
        """Sort key realizing weighted graded lex (larger key = larger term)."""
        return (self.weighted_degree(exps), exps)

    def monomials_of_weight(self, degree, allowed=None):
        """All exponent vectors of the given weighted degree.

        Only variables with positive weight are raised to powers; weight-0
        variables are never included (there would be infinitely many
        monomials).  ``allowed`` optionally restricts to a set of variable
        names.
        """
        if degree < 0:
            return []
        idxs = [
            i
            for i in range(self.nvars)
            if self.weights[i] > 0 and (allowed is None or self.names[i] in allowed)
        ]
        out = []
        exps = [0] * self.nvars

        def rec(pos, remaining):
            if remaining == 0:
                out.append(tuple(exps))
                return
            if pos == len(idxs):
                return
            i = idxs[pos]
            w = self.weights[i]
            kmax = remaining // w
            for k in range(kmax, -1, -1):
                exps[i] = k
                rec(pos + 1, remaining - k * w)
            exps[i] = 0

        rec(0, degree)
        return out

    def transfer_exps(self, exps, other):
        """Re-index an exponent vector of this ring into ``other`` by name."""
        out = [0] * other.nvars
        for i, e in enumerate(exps):
            if e:
                out[other.index(self.names[i])] = e
        return tuple(out)

    # -- parsing ---------------------------------------------------------

    def parse(self, text):
        """Parse the canonical flat text format (sum of coef*var^k terms)."""
        text = text.strip()
        if not text:
            raise ValueError("empty polynomial string")
        if text == "0":
            return self.zero()
        result = self.zero()
        pos = 0
        first = True
        while pos < len(text):
            m = _TERM_RE.match(text, pos)
            if not m or not m.group(2).strip():
                raise ValueError("cannot parse %r at offset %d" % (text, pos))
            sign, body = m.group(1), m.group(2).strip()
            if sign is None and not first:
                raise ValueError("missing +/- between terms in %r" % text)
            coeff = Fraction(-1 if sign == "-" else 1)
            exps = list(self._zero_exps)
            for factor in body.split("*"):
                factor = factor.strip()
                if not factor:
                    raise ValueError("empty factor in %r" % text)
                if re.fullmatch(r"[0-9]+(/[0-9]+)?", factor):
                    coeff *= Fraction(factor)
                    continue
                fm = _FACTOR_RE.match(factor)
                if not fm:
                    raise ValueError("bad factor %r in %r" % (factor, text))
                exps[self.index(fm.group(1))] += int(fm.group(2) or 1)
            result += Poly(self, {tuple(exps): coeff} if coeff else {})
            pos = m.end()
            first = False
        return result


class Poly:
    """A sparse polynomial; immutable by convention."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms

    # -- predicates ------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or (
            len(self.terms) == 1 and self.ring._zero_exps in self.terms
        )

    def constant_value(self):
        if not self.terms:
            return Fraction(0)
        if not self.is_constant():
            raise RingError("not a constant: %s" % self)
        return self.terms[self.ring._zero_exps]

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    # -- arithmetic ------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise ContextMismatch(
                    "polynomials from different rings: %r vs %r"
                    % (self.ring, other.ring)
                )
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return Poly(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not self.terms or not other.terms:
            return self.ring.zero()
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        terms = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                s = terms.get(e, 0) + c1 * c2
                if s:
                    terms[e] = s
                else:
                    del terms[e]
        return Poly(self.ring, terms)

    __rmul__ = __mul__

    def __pow__(self, k):
        k = int(k)
        if k < 0:
            raise RingError("negative power")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("polynomial division by zero")
            inv = Fraction(1) / Fraction(other)
            return Poly(self.ring, {e: c * inv for e, c in self.terms.items()})
        return NotImplemented

    # -- structure -------------------------------------------------------

    def degree(self):
        """Max weighted degree of the terms (-1 for the zero polynomial)."""
        if not self.terms:
            return -1
        wd = self.ring.weighted_degree
        return max(wd(e) for e in self.terms)

    def is_homogeneous(self, degree=None):
        if not self.terms:
            return True
        wd = self.ring.weighted_degree
        degs = {wd(e) for e in self.terms}
        if len(degs) > 1:
            return False
        return degree is None or degs == {degree}

    def leading(self):
        """(exps, coeff) of the largest term under weighted graded lex."""
        if not self.terms:
            raise RingError("zero polynomial has no leading term")
        e = max(self.terms, key=self.ring.order_key)
        return e, self.terms[e]

    def coeff(self, exps):
        return self.terms.get(tuple(exps), Fraction(0))

    def content(self):
        """Positive rational c with self/c having coprime integer coefficients."""
        if not self.terms:
            return Fraction(0)
        num = 0
        den = 1
        for c in self.terms.values():
            num = gcd(num, abs(c.numerator))
            den = lcm(den, c.denominator)
        return Fraction(num, den)

    def primitive(self):
        """(unit-normalized content, primitive part): content * part == self.

        The primitive part has integer coprime coefficients and positive
        leading coefficient; the returned content carries the sign.
        """
        if not self.terms:
            return Fraction(0), self
        c = self.content()
        _, lead = self.leading()
        if lead < 0:
            c = -c
        return c, self / c

    def substitute(self, mapping, ring=None):
        """Ring homomorphism sending named variables to polynomials.

        ``mapping`` maps variable names to Poly / Fraction / int values.
        Unmapped variables must exist (by name) in the target ring.  When
        ``ring`` is omitted it is taken from the first Poly value in the
        mapping, defaulting to this polynomial's own ring.
        """
        target = ring
        vals = {}
        for name, v in mapping.items():
            self.ring.index(name)
            if isinstance(v, Poly):
                if target is None:
                    target = v.ring
            vals[name] = v
        if target is None:
            target = self.ring
        images = []
        for i, name in enumerate(self.ring.names):
            if name in vals:
                v = vals[name]
                img = v if isinstance(v, Poly) else target.const(v)
                if img.ring != target:
                    raise ContextMismatch("substitution values from mixed rings")
            else:
                img = target.var(name)
            images.append(img)
        result = target.zero()
        cache = {}
        for exps, c in self.terms.items():
            prod = target.const(c)
            for i, e in enumerate(exps):
                if e:
                    key = (i, e)
                    p = cache.get(key)
                    if p is None:
                        p = images[i] ** e
                        cache[key] = p
                    prod = prod * p
            result = result + prod
        return result

    def transfer(self, ring):
        """Move to another ring containing (by name) every variable used here."""
        terms = {}
        for exps, c in self.terms.items():
            terms[self.ring.transfer_exps(exps, ring)] = c
        return Poly(ring, terms)

    def variables(self):
        """Names of variables actually present."""
        used = [False] * self.ring.nvars
        for exps in self.terms:
            for i, e in enumerate(exps):
                if e:
                    used[i] = True
        return [n for i, n in enumerate(self.ring.names) if used[i]]

    # -- division, gcd, square root -------------------------------------

    def exact_div(self, divisor):
        """Exact division, raising ExactDivisionError unless divisor | self."""
        divisor = self._coerce(divisor)
        if divisor is None or divisor.is_zero():
            raise ExactDivisionError("division by zero or bad divisor")
        if self.is_zero():
            return self
        de, dc = divisor.leading()
        q = self.ring.zero()
        r = self
        key = self.ring.order_key
        while r.terms:
            re_, rc = r.leading()
            exps = tuple(a - b for a, b in zip(re_, de))
            if any(e < 0 for e in exps):
                raise ExactDivisionError("%s does not divide %s" % (divisor, self))
            t = Poly(self.ring, {exps: rc / dc})
            q = q + t
            r2 = r - t * divisor
            if r2.terms and key(r2.leading()[0]) >= key(re_):
                raise ExactDivisionError("division did not reduce")
            r = r2
        return q

    def divides(self, other):
        try:
            other.exact_div(self)
            return True
        except ExactDivisionError:
            return False

    def sqrt(self):
        """Exact polynomial square root with positive leading coefficient."""
        if self.is_zero():
            return self
        le, lc = self.leading()
        if lc < 0:
            raise NotAPerfectSquare("negative leading coefficient in %s" % self)
        if any(e % 2 for e in le):
            raise NotAPerfectSquare("odd leading exponents in %s" % self)
        cn, cd = _sqrt_fraction(lc)
        if cn is None:
            raise NotAPerfectSquare("leading coefficient %s is not a square" % lc)
        half = tuple(e // 2 for e in le)
        s = Poly(self.ring, {half: Fraction(cn, cd)})
        lead2 = s * Fraction(2)
        key = self.ring.order_key
        prev = None
        r = self - s * s
        while r.terms:
            re_, _ = r.leading()
            if prev is not None and key(re_) >= prev:
                raise NotAPerfectSquare("sqrt iteration failed to reduce")
            prev = key(re_)
            lt = Poly(self.ring, {re_: r.terms[re_]})
            try:
                t = lt.exact_div(lead2)
            except ExactDivisionError:
                raise NotAPerfectSquare("%s is not a perfect square" % self) from None
            s = s + t
            r = self - s * s
        return s


def _sqrt_fraction(c):
    n, d = c.numerator, c.denominator
    sn, sd = isqrt(n), isqrt(d)
    if sn * sn != n or sd * sd != d:
        return None, None
    return sn, sd


# -- gcd ----------------------------------------------------------------


def _degree_in(p, i):
    return max((e[i] for e in p.terms), default=-1) if p.terms else -1


def _split_by_var(p, i):
    """Represent p as dict {k: coefficient Poly of var_i^k} (var_i removed)."""
    out = {}
    for exps, c in p.terms.items():
        k = exps[i]
        rest = exps[:i] + (0,) + exps[i + 1 :]
        d = out.setdefault(k, {})
        d[rest] = d.get(rest, Fraction(0)) + c
    return {k: Poly(p.ring, {e: c for e, c in d.items() if c}) for k, d in out.items()}


def _join_by_var(ring, coeffs, i):
    terms = {}
    for k, poly in coeffs.items():
        for exps, c in poly.terms.items():
            e = exps[:i] + (k,) + exps[i + 1 :]
            terms[e] = terms.get(e, Fraction(0)) + c
    return Poly(ring, {e: c for e, c in terms.items() if c})


def _content_in_var(p, i):
    """gcd of the var_i-coefficients of p (a Poly not involving var_i)."""
    coeffs = _split_by_var(p, i)
    g = p.ring.zero()
    for poly in coeffs.values():
        g = poly_gcd(g, poly)
        if g.is_constant() and not g.is_zero():
            break
    return g


def _pp_in_var(p, i):
    """Primitive part of p with respect to var_i (strip its coefficient gcd)."""
    c = _content_in_var(p, i)
    if c.is_constant():
        return p.primitive()[1]
    return p.exact_div(c).primitive()[1]


def _pseudo_rem(a, b, i):
    """Pseudo-remainder of a by b with respect to var_i."""
    da, db = _degree_in(a, i), _degree_in(b, i)
    bc = _split_by_var(b, i)
    lb = bc[db]
    r = a
    vi = [0] * a.ring.nvars
    vi[i] = 1
    var = a.ring.monomial(tuple(vi))
    while not r.is_zero() and _degree_in(r, i) >= db:
        dr = _degree_in(r, i)
        rc = _split_by_var(r, i)
        lr = rc[dr]
        r = lb * r - lr * var ** (dr - db) * b
    return r


def poly_gcd(p, q):
    """GCD up to rational scalar (primitive, positive leading coefficient).

    Primitive polynomial remainder sequences on a recursive univariate
    view; fine at this package's scale (few variables of low degree).
    """
    ring = p.ring
    if q.ring != ring:
        raise ContextMismatch("gcd operands from different rings")
    if p.is_zero():
        return q.primitive()[1] if not q.is_zero() else ring.zero()
    if q.is_zero():
        return p.primitive()[1]
    if p.is_constant() or q.is_constant():
        return ring.one()
    pv = set(p.variables())
    qv = set(q.variables())
    common = [n for n in ring.names if n in pv and n in qv]
    if not common:
        return ring.one()
    i = ring.index(common[0])
    if _degree_in(p, i) < 0 or _degree_in(q, i) < 0:
        # main variable missing from one operand: gcd lives in its content
        a, b = (p, q) if _degree_in(p, i) < 0 else (q, p)
        return poly_gcd(a, _content_in_var(b, i))
    cp = _content_in_var(p, i)
    cq = _content_in_var(q, i)
    cont = poly_gcd(cp, cq)
    a = p.exact_div(cp) if not cp.is_constant() else p.primitive()[1]
    b = q.exact_div(cq) if not cq.is_constant() else q.primitive()[1]
    if _degree_in(a, i) < _degree_in(b, i):
        a, b = b, a
    while True:
        if b.is_zero():
            g = a
            break
        if _degree_in(b, i) == 0:
            g = ring.one()
            break
        r = _pseudo_rem(a, b, i)
        if r.is_zero():
            g = b
            break
        a, b = b, _pp_in_var(r, i)
    g = _pp_in_var(g, i) if not g.is_zero() else g
    return (cont * g).primitive()[1]


def gcd_list(polys):
    """GCD of a list of polynomials (zero if all are zero)."""
    it = iter(polys)
    try:
        g = next(it)
    except StopIteration:
        raise ValueError("gcd of empty list")
    g = g.primitive()[1] if not g.is_zero() else g
    for p in it:
        if g.is_constant() and not g.is_zero():
            return g.ring.one()
        g = poly_gcd(g, p)
    return g


# -- printing -----------------------------------------------------------


def _format_monomial(ring, exps):
    parts = []
    for name, e in zip(ring.names, exps):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append("%s^%d" % (name, e))
    return "*".join(parts)


def poly_str(p):
    if not p.terms:
        return "0"
    ring = p.ring
    items = sorted(p.terms.items(), key=lambda t: ring.order_key(t[0]), reverse=True)
    chunks = []
    for exps, c in items:
        mono = _format_monomial(ring, exps)
        mag = abs(c)
        if mono and mag == 1:
            body = mono
        elif mono:
            body = "%s*%s" % (mag, mono)
        else:
            body = str(mag)
        if not chunks:
            chunks.append(body if c > 0 else "-" + body)
        else:
            chunks.append((" + " if c > 0 else " - ") + body)
    return "".join(chunks)


Poly.__str__ = poly_str
Poly.__repr__ = lambda self: "Poly(%s)" % poly_str(self)
