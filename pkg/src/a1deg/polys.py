"""Sparse multivariate polynomials over a field, ordered by grevlex.

Variables are x1 > x2 > ... > xn.  Monomials are exponent tuples.
"""

from __future__ import annotations


def grevlex_key(m):
    return (sum(m), tuple(-e for e in reversed(m)))


def divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a, b):
    return tuple(x - y for x, y in zip(a, b))


def mono_str(m, names=None):
    if not any(m):
        return "1"
    names = names or [f"x{i + 1}" for i in range(len(m))]
    parts = []
    for name, e in zip(names, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


class Polynomial:
    __slots__ = ("field", "nvars", "terms", "_lead")

    def __init__(self, field, nvars, terms=None):
        self.field = field
        self.nvars = nvars
        self.terms = {m: c for m, c in (terms or {}).items() if not c.is_zero()}
        self._lead = None

    @classmethod
    def constant(cls, field, nvars, c):
        return cls(field, nvars, {(0,) * nvars: field(c)})

    @classmethod
    def variable(cls, field, nvars, i):
        e = [0] * nvars
        e[i] = 1
        return cls(field, nvars, {tuple(e): field.one})

    def is_zero(self):
        return not self.terms

    def lead_monomial(self):
        if self._lead is None:
            self._lead = max(self.terms, key=grevlex_key)
        return self._lead

    def lead_coeff(self):
        return self.terms[self.lead_monomial()]

    def total_degree(self):
        return max((sum(m) for m in self.terms), default=-1)

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.field, self.nvars, other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            if m in t:
                t[m] = t[m] + c
            else:
                t[m] = c
        return Polynomial(self.field, self.nvars, t)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.field, self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.field, self.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = self.field(other)
            return Polynomial(self.field, self.nvars, {m: c * v for m, v in self.terms.items()})
        t = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                v = c1 * c2
                t[m] = t[m] + v if m in t else v
        return Polynomial(self.field, self.nvars, t)

    __rmul__ = __mul__

    def __pow__(self, n):
        out = Polynomial.constant(self.field, self.nvars, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def mul_term(self, mono, c):
        return Polynomial(self.field, self.nvars,
                          {mono_mul(m, mono): c * v for m, v in self.terms.items()})

    def monic(self):
        if self.is_zero():
            return self
        inv = self.lead_coeff().inverse()
        return Polynomial(self.field, self.nvars, {m: c * inv for m, c in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def diff(self, i):
        t = {}
        for m, c in self.terms.items():
            if m[i]:
                nm = list(m)
                nm[i] -= 1
                t[tuple(nm)] = self.field(m[i]) * c
        return Polynomial(self.field, self.nvars, t)

    def evaluate(self, point):
        """Evaluate at a point whose coordinates live in the field or an extension."""
        acc = None
        for m, c in self.terms.items():
            t = c
            for x, e in zip(point, m):
                if e:
                    t = t * x ** e
            acc = t if acc is None else acc + t
        if acc is None:
            return point[0] * 0 if point else self.field.zero
        return acc

    def substitute(self, images):
        """Compose with polynomials ``images[i]`` substituted for x_i."""
        n = images[0].nvars if images else self.nvars
        out = Polynomial(self.field, n)
        for m, c in self.terms.items():
            t = Polynomial(self.field, n, {(0,) * n: c})
            for img, e in zip(images, m):
                if e:
                    t = t * img ** e
            out = out + t
        return out

    def translate(self, shift):
        """p(x + shift)."""
        xs = [Polynomial.variable(self.field, self.nvars, i) + s for i, s in enumerate(shift)]
        return self.substitute(xs)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: grevlex_key(mc[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            cs = str(c)
            if not any(m):
                parts.append(cs)
                continue
            ms = mono_str(m)
            if c.is_one():
                parts.append(ms)
            elif cs == "-1":
                parts.append("-" + ms)
            else:
                if any(op in cs[1:] for op in "+-") or " " in cs:
                    cs = f"({cs})"
                parts.append(f"{cs}*{ms}")
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__


def determinant(rows):
    """Determinant of a square matrix of polynomials (Laplace with memo on columns)."""
    n = len(rows)
    memo = {}

    def minor(r, cols):
        if r == n:
            return None
        key = (r, cols)
        if key in memo:
            return memo[key]
        acc = None
        sign = 1
        for c in range(n):
            if not (cols >> c) & 1:
                continue
            entry = rows[r][c]
            if not entry.is_zero():
                sub = minor(r + 1, cols & ~(1 << c))
                term = entry if sub is None else entry * sub
                if sign < 0:
                    term = -term
                acc = term if acc is None else acc + term
            sign = -sign
        if acc is None:
            p = rows[0][0]
            acc = Polynomial(p.field, p.nvars)
        memo[key] = acc
        return acc

    return minor(0, (1 << n) - 1)


def jacobian_determinant(components):
    n = len(components)
    return determinant([[components[i].diff(j) for j in range(n)] for i in range(n)])
