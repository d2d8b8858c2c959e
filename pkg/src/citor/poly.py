"""Multivariate graded polynomials over exact fields.

Monomials are exponent tuples; ``PolyRing.degree`` gives their weighted
degree.  Polynomials are immutable and keep a dict ``{exponents: coeff}``
with no stored zeros; ``terms()`` returns them in descending order.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import reduce

from .scalar import QQ, PrimeField, RationalField

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class RingMismatch(ValueError):
    pass


class PolyParseError(ValueError):
    """Malformed polynomial string; ``pos`` is the 0-based offending column."""

    def __init__(self, message: str, text: str, pos: int):
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at position {pos}: {text!r}")

    def annotated(self) -> str:
        return f"{self.text}\n{' ' * self.pos}^ {self.args[0]}"


class MonomialOrder:
    """Graded monomial orders refining the weighted degree.

    ``grevlex`` (default) and ``grlex``; ``key(exp)`` is a tuple whose natural
    tuple ordering agrees with the monomial order.
    """

    KINDS = ("grevlex", "grlex")

    def __init__(self, kind: str, weights: tuple[int, ...]):
        if kind not in self.KINDS:
            raise ValueError(f"unknown monomial order {kind!r}")
        self.kind = kind
        self.weights = weights
        self._cache: dict = {}

    def key(self, exp):
        k = self._cache.get(exp)
        if k is None:
            deg = sum(w * e for w, e in zip(self.weights, exp))
            if self.kind == "grevlex":
                k = (deg,) + tuple(-e for e in reversed(exp))
            else:
                k = (deg,) + tuple(exp)
            self._cache[exp] = k
        return k

    def __eq__(self, other):
        return (isinstance(other, MonomialOrder) and other.kind == self.kind
                and other.weights == self.weights)

    def __hash__(self):
        return hash((self.kind, self.weights))

    def __repr__(self):
        return f"MonomialOrder({self.kind!r})"


class PolyRing:
    """k[x_1..x_n] with positive integer variable weights."""

    def __init__(self, names, field=QQ, weights=None, order: str = "grevlex"):
        names = tuple(names)
        for n in names:
            if not _NAME.match(n):
                raise ValueError(f"bad variable name {n!r}")
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        if weights is None:
            weights = (1,) * len(names)
        weights = tuple(int(w) for w in weights)
        if len(weights) != len(names) or any(w < 1 for w in weights):
            raise ValueError("weights must be positive integers, one per variable")
        if not isinstance(field, (RationalField, PrimeField)):
            raise TypeError("field must be QQ or a PrimeField")
        self.names = names
        self.field = field
        self.weights = weights
        self.nvars = len(names)
        self.order = MonomialOrder(order, weights)
        self.one_exp = (0,) * self.nvars
        self._index = {n: i for i, n in enumerate(names)}

    # identity -----------------------------------------------------------
    def _sig(self):
        return (self.names, self.field, self.weights, self.order.kind)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and other._sig() == self._sig()

    def __hash__(self):
        return hash(self._sig())

    def __repr__(self):
        w = "" if all(x == 1 for x in self.weights) else f", weights={self.weights}"
        return f"PolyRing({list(self.names)}, {self.field!r}{w}, {self.order.kind})"

    def with_order(self, order: str) -> "PolyRing":
        return PolyRing(self.names, self.field, self.weights, order)

    # monomials ------------------------------------------------------------
    def degree(self, exp) -> int:
        return sum(w * e for w, e in zip(self.weights, exp))

    def monomials_of_degree(self, d: int):
        """All exponent tuples of weighted degree ``d`` (descending order)."""
        out = []
        ws = self.weights
        n = self.nvars

        def rec(i, rest, acc):
            if i == n - 1:
                if rest % ws[i] == 0:
                    out.append(tuple(acc) + (rest // ws[i],))
                return
            for e in range(rest // ws[i], -1, -1):
                rec(i + 1, rest - e * ws[i], acc + [e])

        if d < 0:
            return []
        if n == 0:
            return [()] if d == 0 else []
        rec(0, d, [])
        out.sort(key=self.order.key, reverse=True)
        return out

    # constructors -----------------------------------------------------------
    def from_dict(self, terms) -> "Polynomial":
        F = self.field
        d = {}
        for exp, c in terms.items():
            c = F(c)
            if c:
                d[tuple(exp)] = c
        return Polynomial(self, d, _trusted=True)

    def _raw(self, d) -> "Polynomial":
        return Polynomial(self, d, _trusted=True)

    @property
    def zero(self) -> "Polynomial":
        return Polynomial(self, {}, _trusted=True)

    @property
    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        c = self.field(c)
        return Polynomial(self, {self.one_exp: c} if c else {}, _trusted=True)

    def monomial(self, exp, c=1) -> "Polynomial":
        return self.from_dict({tuple(exp): c})

    def gens(self) -> list["Polynomial"]:
        out = []
        for i in range(self.nvars):
            e = [0] * self.nvars
            e[i] = 1
            out.append(self.monomial(e))
        return out

    def var(self, name: str) -> "Polynomial":
        return self.gens()[self._index[name]]

    def __call__(self, x) -> "Polynomial":
        if isinstance(x, Polynomial):
            if x.ring != self:
                raise RingMismatch("polynomial from a different ring")
            return x
        if isinstance(x, str):
            return self.parse(x)
        return self.constant(x)

    def parse(self, text: str) -> "Polynomial":
        return _Parser(self, text).parse()

    # arithmetic helpers -----------------------------------------------------
    def divide(self, f: "Polynomial", divisors):
        """Multivariate division; divisors are tried in the given order.

        Returns ``(quotients, remainder)`` with ``f = sum(q_i d_i) + r`` and no
        term of ``r`` divisible by any divisor's leading monomial.
        """
        divisors = [self(g) for g in divisors]
        f = self(f)
        F = self.field
        key = self.order.key
        leads = []
        for g in divisors:
            if not g:
                leads.append(None)
            else:
                m = g.lead_monomial()
                leads.append((m, F.inv(g._t[m])))
        quots = [dict() for _ in divisors]
        rem = {}
        p = dict(f._t)
        while p:
            m = max(p, key=key)
            c = p[m]
            for i, ld in enumerate(leads):
                if ld is None:
                    continue
                lm, linv = ld
                if all(a >= b for a, b in zip(m, lm)):
                    q = tuple(a - b for a, b in zip(m, lm))
                    qc = F.mul(c, linv)
                    quots[i][q] = F.add(quots[i].get(q, F.zero), qc)
                    for e, gc in divisors[i]._t.items():
                        e2 = tuple(a + b for a, b in zip(e, q))
                        v = F.sub(p.get(e2, F.zero), F.mul(qc, gc))
                        if v:
                            p[e2] = v
                        else:
                            p.pop(e2, None)
                    break
            else:
                rem[m] = c
                del p[m]
        qs = [self._raw({e: c for e, c in q.items() if c}) for q in quots]
        return qs, self._raw(rem)


class Polynomial:
    """An immutable element of a ``PolyRing``."""

    __slots__ = ("ring", "_t", "_hash")

    def __init__(self, ring: PolyRing, terms, _trusted=False):
        self.ring = ring
        if _trusted:
            self._t = terms
        else:
            self._t = ring.from_dict(terms)._t
        self._hash = None

    # structure -----------------------------------------------------------------
    def terms(self):
        """(exponents, coefficient) pairs, strictly descending in the ring order."""
        key = self.ring.order.key
        return sorted(self._t.items(), key=lambda t: key(t[0]), reverse=True)

    def as_dict(self) -> dict:
        return dict(self._t)

    def __bool__(self):
        return bool(self._t)

    def __len__(self):
        return len(self._t)

    def lead_monomial(self):
        if not self._t:
            raise ValueError("zero polynomial has no leading term")
        return max(self._t, key=self.ring.order.key)

    def lead_coeff(self):
        return self._t[self.lead_monomial()]

    def coefficient(self, exp):
        return self._t.get(tuple(exp), self.ring.field.zero)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._t)

    def is_homogeneous(self) -> bool:
        degs = {self.ring.degree(e) for e in self._t}
        return len(degs) <= 1

    def degree(self) -> int:
        """Max weighted degree of a term (-1 for zero)."""
        if not self._t:
            return -1
        return max(self.ring.degree(e) for e in self._t)

    # arithmetic -------------------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring!r} vs {other.ring!r}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        F = self.ring.field
        d = dict(self._t)
        for e, c in other._t.items():
            v = F.add(d.get(e, F.zero), c)
            if v:
                d[e] = v
            else:
                d.pop(e, None)
        return Polynomial(self.ring, d, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        F = self.ring.field
        return Polynomial(self.ring, {e: F.neg(c) for e, c in self._t.items()}, _trusted=True)

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
        F = self.ring.field
        d = {}
        for e1, c1 in self._t.items():
            for e2, c2 in other._t.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = F.add(d.get(e, F.zero), F.mul(c1, c2))
                if v:
                    d[e] = v
                else:
                    d.pop(e, None)
        return Polynomial(self.ring, d, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c):
        F = self.ring.field
        c = F(c)
        if not c:
            return self.ring.zero
        return Polynomial(self.ring, {e: F.mul(v, c) for e, v in self._t.items()}, _trusted=True)

    def mul_monomial(self, exp, c=1):
        F = self.ring.field
        c = F(c)
        if not c:
            return self.ring.zero
        return Polynomial(
            self.ring,
            {tuple(a + b for a, b in zip(e, exp)): F.mul(v, c) for e, v in self._t.items()},
            _trusted=True)

    def monic(self):
        if not self._t:
            return self
        return self.scale(self.ring.field.inv(self.lead_coeff()))

    # comparison / hashing ------------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._t == other._t
        if isinstance(other, (int, Fraction)):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._t.items())))
        return self._hash

    # printing -------------------------------------------------------------------------
    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Polynomial({format_poly(self)!r})"


def _format_monomial(names, exp) -> str:
    parts = []
    for n, e in zip(names, exp):
        if e == 1:
            parts.append(n)
        elif e > 1:
            parts.append(f"{n}^{e}")
    return "*".join(parts)


def format_poly(f: Polynomial) -> str:
    """Canonical string in the polynomial grammar (re-parses to ``f``)."""
    if not f._t:
        return "0"
    R = f.ring
    F = R.field
    out = []
    for i, (exp, c) in enumerate(f.terms()):
        s = F.to_str(c)
        neg = s.startswith("-")
        if neg:
            s = s[1:]
        mono = _format_monomial(R.names, exp)
        if mono:
            body = mono if s == "1" else f"{s}*{mono}"
        else:
            body = s
        if i == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


class _Parser:
    """Recursive-descent parser: ``expr := ['+'|'-'] term (('+'|'-') term)*``,
    ``term := factor ('*' factor)*``, ``factor := atom ['^' int]``,
    ``atom := int ['/' int] | name | '(' expr ')'``."""

    def __init__(self, ring: PolyRing, text: str):
        self.ring = ring
        self.text = text
        self.toks = []
        pos = 0
        text_len = len(text)
        while pos < text_len:
            m = _TOKEN.match(text, pos)
            if m is None or m.end() == pos:
                break
            if m.group(1) is not None:
                self.toks.append(("int", m.group(1), m.start(1)))
            elif m.group(2) is not None:
                self.toks.append(("name", m.group(2), m.start(2)))
            elif m.group(3) is not None:
                if m.group(3).isspace():
                    pos = m.end()
                    continue
                self.toks.append(("op", m.group(3), m.start(3)))
            pos = m.end()
        self.toks.append(("end", "", len(text)))
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise PolyParseError(msg, self.text, tok[2])

    def parse(self) -> Polynomial:
        if self.peek()[0] == "end":
            self.error("empty expression")
        e = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected {self.peek()[1]!r}")
        return e

    def expr(self):
        sign = None
        t = self.peek()
        if t[0] == "op" and t[1] in "+-":
            self.take()
            sign = t[1]
        acc = self.term()
        if sign == "-":
            acc = -acc
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] in "+-":
                self.take()
                rhs = self.term()
                acc = acc + rhs if t[1] == "+" else acc - rhs
            else:
                return acc

    def term(self):
        acc = self.factor()
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] == "*":
                self.take()
                acc = acc * self.factor()
            elif t[0] in ("int", "name") or (t[0] == "op" and t[1] == "("):
                self.error("implicit multiplication is not allowed; use '*'")
            else:
                return acc

    def factor(self):
        base = self.atom()
        t = self.peek()
        if t[0] == "op" and t[1] == "^":
            self.take()
            n = self.peek()
            if n[0] != "int":
                self.error("exponent must be a non-negative integer")
            self.take()
            return base ** int(n[1])
        return base

    def atom(self):
        t = self.peek()
        if t[0] == "int":
            self.take()
            num = int(t[1])
            s = self.peek()
            if s[0] == "op" and s[1] == "/":
                self.take()
                d = self.peek()
                if d[0] != "int":
                    self.error("denominator must be an integer literal")
                self.take()
                if int(d[1]) == 0:
                    self.error("zero denominator", d)
                try:
                    return self.ring.constant(Fraction(num, int(d[1])))
                except ZeroDivisionError:
                    self.error("denominator not invertible in the field", d)
            return self.ring.constant(num)
        if t[0] == "name":
            self.take()
            idx = self.ring._index.get(t[1])
            if idx is None:
                self.error(f"unknown variable {t[1]!r}", t)
            e = [0] * self.ring.nvars
            e[idx] = 1
            return self.ring.monomial(e)
        if t[0] == "op" and t[1] == "(":
            self.take()
            e = self.expr()
            c = self.peek()
            if not (c[0] == "op" and c[1] == ")"):
                self.error("expected ')'")
            self.take()
            return e
        if t[0] == "end":
            self.error("unexpected end of input")
        self.error(f"unexpected {t[1]!r}")


def poly_arith(a: Polynomial, b: Polynomial, op: str) -> Polynomial:
    """``add``/``sub``/``mul`` of two polynomials over the same ring."""
    if not isinstance(a, Polynomial) or not isinstance(b, Polynomial):
        raise TypeError("poly_arith expects polynomials")
    if a.ring != b.ring:
        raise RingMismatch("operands live in different rings")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def product(polys, ring: PolyRing) -> Polynomial:
    return reduce(lambda x, y: x * y, polys, ring.one)
