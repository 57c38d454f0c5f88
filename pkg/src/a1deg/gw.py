"""The Grothendieck-Witt ring GW(k) for k = Q or F_p.

An element is stored as a formal difference of two multisets of square
classes.  Equality is decided by a complete invariant:

* over F_p: (rank, discriminant);
* over Q: (rank, signature, discriminant, Hasse symbols).

For virtual elements the discriminant and Hasse symbols come from the total
Stiefel-Whitney class w = (w1, w2), a homomorphism from GW(Q) into the group
of pairs (d, c) with (d1, c1)(d2, c2) = (d1 d2, c1 c2 (d1, d2)).  On an
honest form these are the ordinary determinant class and product of
Hilbert symbols over i < j; on a difference they agree with the invariants
of the hyperbolically stabilized representative.
"""

from __future__ import annotations

import json
from collections import Counter
from math import gcd
from dataclasses import dataclass

from .errors import (DescriptorMismatch, ParseError, UnsupportedField,
                     UnsupportedN, ZeroInput)
from .fields import (FieldElement, PrimeField, Q, Rationals, SimpleExtension,
                     SquareClass, least_nonresidue, square_class)
from .forms import (INF, BilinearForm, PlaceSymbolTable, _nondegenerate_diagonal,
                    hilbert_symbol, place_sort_key, relevant_places)


def _check_field(field):
    if isinstance(field, SimpleExtension):
        raise UnsupportedField(f"GW({field}) is not supported; transfer to the base first")


def _sq(field, a):
    if isinstance(a, SquareClass):
        return a
    return square_class(field(a))


def _rep_cached(field, a, cache):
    # parsed inputs repeat the same generator many times
    try:
        return cache[a]
    except KeyError:
        r = cache[a] = _sq(field, a).rep
        return r
    except TypeError:
        return _sq(field, a).rep


class GWElement:
    """plus - minus, both multisets of square classes, with common classes cancelled."""

    __slots__ = ("field", "plus", "minus", "_nf")

    def __init__(self, field, plus=(), minus=()):
        _check_field(field)
        self.field = field
        reps = {}
        p = Counter(_rep_cached(field, a, reps) for a in plus)
        m = Counter(_rep_cached(field, a, reps) for a in minus)
        common = p & m
        p, m = p - common, m - common
        self.plus = tuple(sorted(p.elements()))
        self.minus = tuple(sorted(m.elements()))
        self._nf = None

    @classmethod
    def zero(cls, field=Q):
        return cls(field)

    @classmethod
    def from_int(cls, n, field=Q):
        return cls(field, [1] * n) if n >= 0 else cls(field, (), [1] * (-n))

    def _other(self, other):
        if isinstance(other, int):
            return GWElement.from_int(other, self.field)
        if not isinstance(other, GWElement):
            return NotImplemented
        if other.field != self.field:
            raise DescriptorMismatch("GW elements over different fields")
        return other

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return GWElement(self.field, self.plus + o.plus, self.minus + o.minus)

    __radd__ = __add__

    def __neg__(self):
        return GWElement(self.field, self.minus, self.plus)

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other >= 0:
                return GWElement(self.field, self.plus * other, self.minus * other)
            return -(self * (-other))
        o = self._other(other)
        if o is NotImplemented:
            return o
        F = self.field

        def prod(xs, ys):
            return [square_class(F(a) * F(b)) for a in xs for b in ys]

        return GWElement(F, prod(self.plus, o.plus) + prod(self.minus, o.minus),
                         prod(self.plus, o.minus) + prod(self.minus, o.plus))

    __rmul__ = __mul__

    def __pow__(self, n):
        out = GWElement.from_int(1, self.field)
        for _ in range(n):
            out = out * self
        return out

    def normal_form(self):
        if self._nf is None:
            self._nf = gw_normal_form(self)
        return self._nf

    def __eq__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return False
        return self.normal_form() == o.normal_form()

    def __hash__(self):
        return hash(self.normal_form())

    def rank(self):
        return len(self.plus) - len(self.minus)

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"GWElement({self.field}, plus={list(self.plus)}, minus={list(self.minus)})"


def angle(a, field=None) -> GWElement:
    """The rank-one class <a>."""
    if isinstance(a, FieldElement):
        field = a.field if field is None else field
    field = Q if field is None else field
    a = field(a)
    if a.is_zero():
        raise ZeroInput("<0> is not a nondegenerate form")
    return GWElement(field, [a])


def hyperbolic(n=1, field=Q) -> GWElement:
    if n < 0:
        raise ValueError("n must be nonnegative")
    return GWElement(field, [1, -1] * n)


def gw_from_form(f: BilinearForm) -> GWElement:
    return GWElement(f.field, list(_nondegenerate_diagonal(f)))


def gw_add(x, y):
    return x + y


def gw_sub(x, y):
    return x - y


def gw_mul(x, y):
    return x * y


# ---------------------------------------------------------------- invariants

@dataclass(frozen=True)
class GWNormalForm:
    kind: str  # "Q" or "Fp"
    rank: int
    disc: int
    signature: int = None
    hasse: tuple = ()

    def real_view(self):
        if self.kind != "Q":
            raise UnsupportedField("real view needs rational data")
        return (self.rank, self.signature)

    def complex_view(self):
        return self.rank

    def hasse_table(self):
        return PlaceSymbolTable(self.hasse)

    def __str__(self):
        if self.kind == "Fp":
            return f"rank={self.rank}, disc={self.disc}"
        return (f"rank={self.rank}, sig={self.signature}, disc={self.disc}, "
                f"hasse={self.hasse_table()}")

    def to_json(self):
        out = {"rank": self.rank, "disc": str(self.disc)}
        if self.kind == "Q":
            out["sig"] = self.signature
            out["hasse"] = {str(p): -1 for p in self.hasse}
        return out


def _sqf_mul(a, b):
    # product of squarefree integers, reduced to its squarefree part
    g = gcd(a, b)
    return (a // g) * (b // g)


def _w_of(counts, place):
    # total Stiefel-Whitney class (d, c) of sum m_a <a>; w(m <a>) = (a^m, (a, a)^C(m, 2))
    d, c = 1, 1
    for a, m in counts.items():
        am = a if m % 2 else 1
        e = hilbert_symbol(a, a, place) if (m * (m - 1) // 2) % 2 else 1
        c *= e * hilbert_symbol(d, am, place)
        d = _sqf_mul(d, am)
    return d, c


def gw_normal_form(x: GWElement) -> GWNormalForm:
    F = x.field
    r = x.rank()
    if isinstance(F, PrimeField):
        n = least_nonresidue(F.p)
        odd = sum(1 for a in x.plus + x.minus if a != 1) % 2
        return GWNormalForm("Fp", r, n if odd else 1)
    if not isinstance(F, Rationals):
        raise UnsupportedField(f"no normal form over {F}")
    plus, minus = Counter(x.plus), Counter(x.minus)
    sig = sum(m if a > 0 else -m for a, m in plus.items()) - sum(m if a > 0 else -m for a, m in minus.items())
    disc = 1
    for a, m in (plus + minus).items():
        if m % 2:
            disc = _sqf_mul(disc, a)
    minus_places = []
    for v in relevant_places(list(plus.keys() | minus.keys())):
        dp, cp = _w_of(plus, v)
        dn, cn = _w_of(minus, v)
        # w(plus) * w(minus)^{-1}, with (d, c)^{-1} = (d, c (d, d))
        c = cp * cn * hilbert_symbol(dn, dn, v) * hilbert_symbol(dp, dn, v)
        if c == -1:
            minus_places.append(v)
    minus_places.sort(key=place_sort_key)
    return GWNormalForm("Q", r, disc, sig, tuple(minus_places))


def gw_equals(x: GWElement, y: GWElement) -> bool:
    if x.field != y.field:
        raise DescriptorMismatch("GW elements over different fields")
    return gw_normal_form(x) == gw_normal_form(y)


def rank_hom(x: GWElement) -> int:
    return x.rank()


def signature_hom(x: GWElement) -> int:
    if not isinstance(x.field, Rationals):
        raise UnsupportedField("signature needs the rational field")
    return gw_normal_form(x).signature


def disc_hom(x: GWElement) -> SquareClass:
    return SquareClass(x.field, gw_normal_form(x).disc)


def in_fundamental_power(x: GWElement, n: int) -> bool:
    if n < 0:
        raise UnsupportedN("n must be nonnegative")
    if n == 0:
        return True
    if n > 2:
        raise UnsupportedN("membership in I^n is only decided for n <= 2")
    nf = gw_normal_form(x)
    if n == 1:
        return nf.rank == 0
    return nf.rank == 0 and nf.disc == 1


def milnor_symbol_image(*values, field=None) -> GWElement:
    """prod (<a_i> - <1>), the image of a_1 x ... x a_n in I^n."""
    if not values:
        raise ValueError("at least one value is needed")
    if field is None:
        field = values[0].field if isinstance(values[0], FieldElement) else Q
    out = GWElement.from_int(1, field)
    one = GWElement.from_int(1, field)
    for a in values:
        a = field(a)
        if a.is_zero():
            raise ZeroInput("symbols need nonzero entries")
        out = out * (GWElement(field, [a]) - one)
    return out


# ---------------------------------------------------------------- display / JSON

def _coeff_term(n, gen):
    if n == 1:
        return gen
    if n == -1:
        return "-" + gen
    return f"{n}*{gen}" if gen == "h" else f"{n}{gen}"


def _join(terms):
    if not terms:
        return "0"
    return " + ".join(terms).replace("+ -", "- ")


def format_element(x: GWElement) -> str:
    """A canonical short expression when one is available, else the stored generators.

    Over F_p every class is r<1> or (r-1)<1> + <n>.  Over Q, classes in the
    span of <1> and <-1> print as m<1> + k*h or m<-1> + k*h.
    """
    nf = gw_normal_form(x)
    F = x.field
    if nf.kind == "Fp":
        n = least_nonresidue(F.p)
        if nf.disc == 1:
            return _join([_coeff_term(nf.rank, "<1>")] if nf.rank else [])
        terms = [_coeff_term(nf.rank - 1, "<1>")] if nf.rank != 1 else []
        return _join(terms + [f"<{n}>"])
    if (nf.rank + nf.signature) % 2 == 0:
        a = (nf.rank + nf.signature) // 2
        b = (nf.rank - nf.signature) // 2
        candidate = GWElement(F, [1] * max(a, 0) + [-1] * max(b, 0),
                              [1] * max(-a, 0) + [-1] * max(-b, 0))
        if gw_normal_form(candidate) == nf:
            k = min(a, b)
            terms = []
            if a - k:
                terms.append(_coeff_term(a - k, "<1>"))
            if b - k:
                terms.append(_coeff_term(b - k, "<-1>"))
            if k:
                terms.append(_coeff_term(k, "h"))
            return _join(terms)
    terms = []
    for sign, reps in ((1, x.plus), (-1, x.minus)):
        for rep, cnt in sorted(Counter(reps).items()):
            terms.append(_coeff_term(sign * cnt, f"<{rep}>"))
    return _join(terms)


def gw_to_json(x: GWElement) -> dict:
    return {"field": str(x.field), "plus": [str(a) for a in x.plus],
            "minus": [str(a) for a in x.minus]}


def gw_from_json(data, field=None) -> GWElement:
    from .parsing import parse_element, parse_field

    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ParseError("GW JSON must be an object")
    if "field" in data:
        field = parse_field(data["field"])
    if field is None:
        raise ParseError("GW JSON needs a field")
    try:
        plus = [parse_element(field, s) for s in data.get("plus", [])]
        minus = [parse_element(field, s) for s in data.get("minus", [])]
        return GWElement(field, plus, minus)
    except ZeroInput as exc:
        raise ParseError(str(exc)) from exc


def parse_gw_terms(field, text):
    """Parse ``15<1>+12<-1>``, ``<2> - <3> + 2h``, ``3`` into (coeff, element) pairs.

    Element strings are returned unparsed so callers can read them in fields
    (such as extensions) where GW itself is not available.
    """
    text = text.strip()
    if not text:
        raise ParseError("empty GW expression")
    terms = []
    i = 0
    sign = 1
    expecting_term = True
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "+-":
            if expecting_term and ch == "-":
                sign = -sign
            elif not expecting_term:
                sign = 1 if ch == "+" else -1
            expecting_term = True
            i += 1
            continue
        if not expecting_term:
            raise ParseError(f"missing operator in {text!r} at {text[i:]!r}")
        j = i
        while j < len(text) and text[j].isdigit():
            j += 1
        coeff = int(text[i:j]) if j > i else None
        while j < len(text) and text[j] in " *":
            j += 1
        if j < len(text) and text[j] == "<":
            depth, k = 1, j + 1
            while k < len(text) and depth:
                if text[k] == "<":
                    depth += 1
                elif text[k] == ">":
                    depth -= 1
                k += 1
            if depth:
                raise ParseError(f"unbalanced '<' in {text!r}")
            terms.append((sign * (1 if coeff is None else coeff), text[j + 1:k - 1]))
            i = k
        elif j < len(text) and text[j] == "h" and (j + 1 == len(text) or not text[j + 1].isalnum()):
            c = sign * (1 if coeff is None else coeff)
            terms.append((c, "1"))
            terms.append((c, "-1"))
            i = j + 1
        elif coeff is not None:
            terms.append((sign * coeff, "1"))
            i = j
        else:
            raise ParseError(f"cannot parse GW term at {text[i:]!r}")
        sign = 1
        expecting_term = False
    if expecting_term:
        raise ParseError(f"dangling operator in {text!r}")
    return terms


def parse_gw(field, text) -> GWElement:
    from .parsing import parse_element

    text = text.strip()
    if text.startswith("{"):
        return gw_from_json(text, field)
    plus, minus = [], []
    for coeff, body in parse_gw_terms(field, text):
        a = parse_element(field, body)
        if a.is_zero():
            raise ParseError("<0> is not allowed")
        (plus if coeff > 0 else minus).extend([a] * abs(coeff))
    return GWElement(field, plus, minus)
