"""Text grammar shared by the library and the CLI.

Polynomial expressions use ``+ - * / ^`` (``**`` also accepted), integer
literals, named variables and parentheses; division is only by nonzero
constants.  Juxtaposition multiplies (``2x1`` means ``2*x1``).

Also parsed here: field descriptors (``Q``, ``F5``, ``Q[i]/(i^2+1)``,
towers like ``Q[s]/(s^2-2)[t]/(t^2-s)``), field elements, points and
polynomial maps (components separated by ``;``).
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def _tokenize(text):
    pos = 0
    out = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos:pos + 1]!r} in {text!r}")
        num, ident, op = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif ident is not None:
            out.append(("id", ident))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return out


class _Poly:
    """Sparse polynomial with Fraction coefficients, used only while parsing."""

    __slots__ = ("terms", "nvars")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        self.terms = {m: c for m, c in (terms or {}).items() if c != 0}

    @classmethod
    def const(cls, nvars, c):
        return cls(nvars, {(0,) * nvars: Fraction(c)})

    @classmethod
    def var(cls, nvars, i):
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): Fraction(1)})

    def __add__(self, o):
        t = dict(self.terms)
        for m, c in o.terms.items():
            t[m] = t.get(m, 0) + c
        return _Poly(self.nvars, t)

    def __neg__(self):
        return _Poly(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o):
        t = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                t[m] = t.get(m, 0) + c1 * c2
        return _Poly(self.nvars, t)

    def constant_value(self):
        if not self.terms:
            return Fraction(0)
        if list(self.terms) == [(0,) * self.nvars]:
            return self.terms[(0,) * self.nvars]
        return None


class _Parser:
    def __init__(self, text, variables):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.vars = list(variables)
        self.n = len(self.vars)

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, op):
        tok = self.take()
        if tok != ("op", op):
            raise ParseError(f"expected {op!r} in {self.text!r}")

    def parse(self):
        if not self.toks:
            raise ParseError("empty expression")
        out = self.expr()
        if self.i != len(self.toks):
            raise ParseError(f"trailing input in {self.text!r}")
        return out

    def expr(self):
        acc = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def _starts_factor(self, tok):
        kind, val = tok
        return kind in ("num", "id") or tok == ("op", "(")

    def term(self):
        acc = self.unary()
        while True:
            tok = self.peek()
            if tok == ("op", "*"):
                self.take()
                acc = acc * self.unary()
            elif tok == ("op", "/"):
                self.take()
                den = self.unary().constant_value()
                if den is None:
                    raise ParseError(f"division by a non-constant in {self.text!r}")
                if den == 0:
                    raise ParseError(f"division by zero in {self.text!r}")
                acc = acc * _Poly.const(self.n, 1 / den)
            elif tok[0] is not None and self._starts_factor(tok):
                acc = acc * self.power()
            else:
                return acc

    def unary(self):
        tok = self.peek()
        if tok == ("op", "-"):
            self.take()
            return -self.unary()
        if tok == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise ParseError(f"exponent must be a nonnegative integer in {self.text!r}")
            out = _Poly.const(self.n, 1)
            for _ in range(val):
                out = out * base
            return out
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return _Poly.const(self.n, val)
        if kind == "id":
            if val not in self.vars:
                raise ParseError(f"unknown variable {val!r} in {self.text!r}")
            return _Poly.var(self.n, self.vars.index(val))
        if (kind, val) == ("op", "("):
            inner = self.expr()
            self.expect(")")
            return inner
        raise ParseError(f"unexpected token in {self.text!r}")


def parse_rational_poly(text, variables):
    """Parse to a dict {exponent tuple: Fraction}."""
    return dict(_Parser(text, variables).parse().terms)


def parse_rational(text):
    terms = parse_rational_poly(text, [])
    return terms.get((), Fraction(0))


def _generators(field):
    from .fields import SimpleExtension
    gens = []
    F = field
    while isinstance(F, SimpleExtension):
        gens.append((F.name, F.gen))
        F = F.base
    return [(name, field(g)) for name, g in reversed(gens)]


def _eval_terms(field, terms, values):
    acc = field.zero
    for mono, c in terms.items():
        t = field(c)
        for v, e in zip(values, mono):
            if e:
                t = t * v ** e
        acc = acc + t
    return acc


def parse_element(field, text):
    """A rational literal or a polynomial in the field's generators."""
    gens = _generators(field)
    terms = parse_rational_poly(text, [n for n, _ in gens])
    try:
        return _eval_terms(field, terms, [g for _, g in gens])
    except ZeroDivisionError as exc:
        raise ParseError(f"{text!r} is not defined in {field}: {exc}") from exc


_FIELD_HEAD = re.compile(r"\s*(Q|F(\d+))\s*")
_EXT = re.compile(r"\[\s*([A-Za-z_][A-Za-z_0-9]*)\s*\]\s*/\s*\(")


def parse_field(text):
    from .fields import PrimeField, Q, extension
    from .errors import InvalidDescriptor

    m = _FIELD_HEAD.match(text)
    if not m:
        raise ParseError(f"cannot parse field {text!r}")
    field = Q if m.group(1) == "Q" else None
    if field is None:
        try:
            field = PrimeField(int(m.group(2)))
        except InvalidDescriptor as exc:
            raise ParseError(str(exc)) from exc
    pos = m.end()
    while pos < len(text):
        em = _EXT.match(text, pos)
        if not em:
            raise ParseError(f"cannot parse field {text!r} at {text[pos:]!r}")
        name = em.group(1)
        start = em.end()
        depth, j = 1, start
        while j < len(text) and depth:
            if text[j] == "(":
                depth += 1
            elif text[j] == ")":
                depth -= 1
            j += 1
        if depth:
            raise ParseError(f"unbalanced parentheses in {text!r}")
        body = text[start:j - 1]
        gens = _generators(field)
        names = [n for n, _ in gens]
        if name in names:
            raise ParseError(f"generator {name!r} used twice")
        terms = parse_rational_poly(body, names + [name])
        deg = max((mono[-1] for mono in terms), default=0)
        coeffs = []
        for k in range(deg + 1):
            sub = {mono[:-1]: c for mono, c in terms.items() if mono[-1] == k}
            coeffs.append(_eval_terms(field, sub, [g for _, g in gens]))
        try:
            field = extension(field, coeffs, name)
        except InvalidDescriptor as exc:
            raise ParseError(str(exc)) from exc
        pos = j
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return field


def parse_point(field, text):
    parts = [p for p in text.split(",")]
    if not text.strip():
        raise ParseError("empty point")
    return [parse_element(field, p) for p in parts]


def parse_map(field, text):
    """Components separated by ';' in the variables x1..xn (n = #components)."""
    from .polys import Polynomial

    parts = [p for p in text.split(";") if p.strip()]
    if not parts:
        raise ParseError("empty map")
    n = len(parts)
    names = [f"x{i + 1}" for i in range(n)]
    comps = []
    for part in parts:
        terms = parse_rational_poly(part, names)
        try:
            comps.append(Polynomial(field, n, {m: field(c) for m, c in terms.items()}))
        except ZeroDivisionError as exc:
            raise ParseError(str(exc)) from exc
    return comps
