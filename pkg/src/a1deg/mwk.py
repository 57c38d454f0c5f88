"""Milnor-Witt K-theory symbols with their residue maps and transfers.

An MWElement is a Z-combination of monomials eta^e [a_1]...[a_r] of grade
r - e, kept homogeneous.  Stored monomials are normalized with rewrites that
hold in K^MW of any field:

* a monomial containing [1] is zero;
* [a]..[1-a] anywhere in a monomial is zero (Steinberg, up to a unit);
* eta^2 [-1] = -2 eta, i.e. eta h = 0, whenever e >= 2;
* under at least one eta the symbols commute, since eta [a][b] = eta [b][a],
  so their order is sorted.

Monomials without eta keep the order they were given in.  Equality is
syntactic after these rewrites; equality in grade 0 is decided in GW through
:func:`degree0_to_gw`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import (DegenerateForm, DescriptorMismatch, GradeMismatch,
                     InseparableResidueField, NotAnExtension, ParseError,
                     RewriteLimitExceeded, UnsupportedField, ZeroFunctional,
                     ZeroSymbol)
from .fields import (FieldElement, PrimeField, Q, Rationals, SimpleExtension,
                     is_separable_extension, trace)
from .forms import BilinearForm, diagonalize
from .gw import GWElement

REWRITE_LIMIT = 100_000


def _symbol_key(a: FieldElement):
    v = a.value
    if isinstance(v, Fraction):
        return (0, v, "")
    if isinstance(v, int):
        return (0, Fraction(v), "")
    return (1, Fraction(0), str(a))


def _is_steinberg_pair(a, b):
    return (a + b).is_one()


def _normalize_monomial(e, syms, coeff):
    """Return (e, syms, coeff) after the rewrites above, or None when it is zero."""
    syms = list(syms)
    while True:
        if any(a.is_one() for a in syms):
            return None
        for i in range(len(syms)):
            for j in range(i + 1, len(syms)):
                if _is_steinberg_pair(syms[i], syms[j]):
                    return None
        if e >= 2:
            idx = next((i for i, a in enumerate(syms) if (a + 1).is_zero()), None)
            if idx is not None:
                del syms[idx]
                e -= 1
                coeff *= -2
                continue
        break
    if e >= 1:
        syms.sort(key=_symbol_key)
    return e, tuple(syms), coeff


class MWElement:
    """Homogeneous element of K^MW_*(k); ``terms`` maps (e, symbols) to integers."""

    __slots__ = ("field", "terms")

    def __init__(self, field, terms=None):
        self.field = field
        acc = {}
        for (e, syms), c in (terms or {}).items():
            if e < 0:
                raise ValueError("eta powers are nonnegative")
            syms = tuple(field(a) for a in syms)
            if any(a.is_zero() for a in syms):
                raise ZeroSymbol("[0] is not a symbol")
            if c == 0:
                continue
            norm = _normalize_monomial(e, syms, c)
            if norm is None:
                continue
            ne, ns, nc = norm
            acc[(ne, ns)] = acc.get((ne, ns), 0) + nc
        self.terms = {k: v for k, v in acc.items() if v}
        grades = {len(s) - e for (e, s) in self.terms}
        if len(grades) > 1:
            raise GradeMismatch(f"inhomogeneous element with grades {sorted(grades)}")

    @property
    def grade(self):
        """Grade r - e, or None for the zero element."""
        for e, s in self.terms:
            return len(s) - e
        return None

    def is_zero(self):
        return not self.terms

    def _other(self, other):
        if isinstance(other, int):
            return MWElement(self.field, {(0, ()): other})
        if not isinstance(other, MWElement):
            return NotImplemented
        if other.field != self.field:
            raise DescriptorMismatch("MW elements over different fields")
        return other

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        if self.grade is not None and o.grade is not None and self.grade != o.grade:
            raise GradeMismatch(f"cannot add grades {self.grade} and {o.grade}")
        t = dict(self.terms)
        for k, v in o.terms.items():
            t[k] = t.get(k, 0) + v
        return MWElement(self.field, t)

    __radd__ = __add__

    def __neg__(self):
        return MWElement(self.field, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return MWElement(self.field, {k: v * other for k, v in self.terms.items()})
        o = self._other(other)
        if o is NotImplemented:
            return o
        t = {}
        for (e1, s1), c1 in self.terms.items():
            for (e2, s2), c2 in o.terms.items():
                norm = _normalize_monomial(e1 + e2, s1 + s2, c1 * c2)
                if norm is None:
                    continue
                e, s, c = norm
                t[(e, s)] = t.get((e, s), 0) + c
        return MWElement(self.field, t)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return False
        return self.terms == o.terms

    def __hash__(self):
        return hash((self.field, frozenset(self.terms.items())))

    def sorted_terms(self):
        return sorted(self.terms.items(),
                      key=lambda kv: (kv[0][0], [_symbol_key(a) for a in kv[0][1]]))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (e, syms), c in self.sorted_terms():
            body = []
            if e == 1:
                body.append("eta")
            elif e > 1:
                body.append(f"eta^{e}")
            sym = "".join(f"[{a}]" for a in syms)
            if sym:
                body.append(sym)
            mono = "*".join(body)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"MWElement({self.field}, {self})"


def mw_symbol(*values, eta_power=0, field=None) -> MWElement:
    """eta^e [a_1]...[a_r]."""
    if field is None:
        field = next((a.field for a in values if isinstance(a, FieldElement)), Q)
    return MWElement(field, {(eta_power, tuple(values)): 1})


def mw_eta(field=Q, power=1) -> MWElement:
    return MWElement(field, {(power, ()): 1})


def mw_integer(n, field=Q) -> MWElement:
    return MWElement(field, {(0, ()): n})


def mw_h(field=Q) -> MWElement:
    """h = eta[-1] + 2."""
    return MWElement(field, {(1, (-1,)): 1, (0, ()): 2})


def mw_angle(a, field=None) -> MWElement:
    """<a> = 1 + eta[a]."""
    if field is None:
        field = a.field if isinstance(a, FieldElement) else Q
    return MWElement(field, {(0, ()): 1, (1, (a,)): 1})


def mw_add(x, y):
    return x + y


def mw_mul(x, y):
    return x * y


def expand_product_symbol(a, b, field=None) -> MWElement:
    """[a] + [b] + eta[a][b], which equals [ab]."""
    if field is None:
        field = next((v.field for v in (a, b) if isinstance(v, FieldElement)), Q)
    a, b = field(a), field(b)
    if a.is_zero() or b.is_zero():
        raise ZeroSymbol("[0] is not a symbol")
    return MWElement(field, {(0, (a,)): 1}) + MWElement(field, {(0, (b,)): 1}) \
        + MWElement(field, {(1, (a, b)): 1})


def degree0_to_gw(x: MWElement) -> GWElement:
    """eta^r [a_1]..[a_r] maps to prod (<a_i> - <1>)."""
    if x.grade not in (None, 0):
        raise GradeMismatch(f"degree0_to_gw needs grade 0, got {x.grade}")
    F = x.field
    one = GWElement.from_int(1, F)
    out = GWElement.zero(F)
    for (e, syms), c in x.terms.items():
        term = one
        for a in syms:
            term = term * (GWElement(F, [a]) - one)
        out = out + term * c
    return out


# ---------------------------------------------------------------- residue

@dataclass(frozen=True)
class ValuationSpec:
    """The p-adic valuation on Q with uniformizer p and residue field F_p."""

    p: int

    def __post_init__(self):
        # PrimeField validates that p is an odd prime
        PrimeField(self.p)

    @property
    def residue_field(self):
        return PrimeField(self.p)


def _pvaluation(q: Fraction, p: int):
    k = 0
    num, den = q.numerator, q.denominator
    while num % p == 0:
        num //= p
        k += 1
    while den % p == 0:
        den //= p
        k -= 1
    return k, Fraction(num, den)


_P = "P"  # marker for the uniformizer symbol inside the rewriting loop


def _power_of_pi(k):
    """[p^k] as a list of (coeff, extra eta, symbols) using [P] and [-1]."""
    if k > 0:
        return [(k, 0, (_P,)), (k // 2, 1, (_P, Fraction(-1)))]
    m = -k
    return [(-m, 0, (_P,)), (-((m + 1) // 2), 1, (_P, Fraction(-1)))]


def _expand_symbol(a: Fraction, p):
    """[a] with a = p^k w as a combination of monomials in [P] and unit symbols."""
    k, w = _pvaluation(a, p)
    if k == 0:
        return [(1, 0, (w,))]
    out = []
    for c, de, syms in _power_of_pi(k):
        if c == 0:
            continue
        out.append((c, de, syms))
        if w != 1:
            out.append((c, de + 1, syms + (w,)))
    if w != 1:
        out.append((1, 0, (w,)))
    return out


def _shape(e, syms):
    """Canonical reshaping of a monomial under eta: sort, P first; a second P becomes [-1]."""
    syms = list(syms)
    changed = True
    coeff = 1
    while changed:
        changed = False
        if any(s != _P and s == 1 for s in syms):
            return None
        if e >= 2 and Fraction(-1) in syms:
            syms.remove(Fraction(-1))
            e -= 1
            coeff *= -2
            changed = True
            continue
        if e >= 1:
            nP = syms.count(_P)
            if nP >= 2:
                syms.remove(_P)
                syms.append(Fraction(-1))
                changed = True
                continue
    if e >= 1:
        units = sorted(s for s in syms if s != _P)
        syms = [_P] * syms.count(_P) + units
    return e, tuple(syms), coeff


def _rewrite_residue_terms(monos, limit):
    """Rewrite (coeff, e, syms) until every monomial is [P][units] or unit-only."""
    done = {}
    work = list(monos)
    steps = 0
    while work:
        steps += 1
        if steps > limit:
            raise RewriteLimitExceeded(f"residue rewriting exceeded {limit} steps")
        c, e, syms = work.pop()
        if c == 0:
            continue
        shaped = _shape(e, syms)
        if shaped is None:
            continue
        e, syms, k = shaped
        c *= k
        if _P not in syms:
            continue  # residue of a unit-only monomial is 0
        i = syms.index(_P)
        if i > 0:
            # e == 0 here: [u][P] = eps [P][u] with eps = -1 - eta[-1]
            left, u, right = syms[:i - 1], syms[i - 1], syms[i + 1:]
            work.append((-c, e, left + (_P, u) + right))
            work.append((-c, e + 1, left + (Fraction(-1), _P, u) + right))
            continue
        j = next((j for j in range(1, len(syms)) if syms[j] == _P), None)
        if j is not None:
            if j == 1:
                # [P][P] = [P][-1]
                work.append((c, e, (_P, Fraction(-1)) + syms[2:]))
            else:
                left, u, right = syms[:j - 1], syms[j - 1], syms[j + 1:]
                work.append((-c, e, left + (_P, u) + right))
                work.append((-c, e + 1, left + (Fraction(-1), _P, u) + right))
            continue
        key = (e, syms[1:])
        done[key] = done.get(key, 0) + c
    return done


def residue(x: MWElement, v: ValuationSpec, limit: int = REWRITE_LIMIT) -> MWElement:
    """The residue for the p-adic valuation with uniformizer p; lands over F_p."""
    if not isinstance(x.field, Rationals):
        raise UnsupportedField("residues are implemented for the p-adic valuations on Q")
    p = v.p
    monos = []
    for (e, syms), c in x.terms.items():
        partial = [(c, e, ())]
        for a in syms:
            pieces = _expand_symbol(a.value, p)
            partial = [(c0 * c1, e0 + e1, s0 + s1)
                       for c0, e0, s0 in partial for c1, e1, s1 in pieces]
        monos.extend(partial)
    done = _rewrite_residue_terms(monos, limit)
    F = v.residue_field
    out = {}
    for (e, units), c in done.items():
        reduced = tuple(F(u) for u in units)
        key = (e, reduced)
        out[key] = out.get(key, 0) + c
    return MWElement(F, out)


# ---------------------------------------------------------------- real realization

def real_realization(x: MWElement) -> int:
    """[a] -> 0 (a > 0) or 1 (a < 0), eta -> -2."""
    if not isinstance(x.field, Rationals):
        raise UnsupportedField("real realization needs the rational field")
    total = 0
    for (e, syms), c in x.terms.items():
        if any(a.value > 0 for a in syms):
            continue
        total += c * (-2) ** e
    return total


# ---------------------------------------------------------------- transfers

def _check_tower(L, K):
    if L != K and not L.contains_field(K):
        raise NotAnExtension(f"{L} is not an extension of {K}")


def apply_functional(f_values, a, K):
    coords = a.field.coords_over(a, K)
    acc = K.zero
    for c, fv in zip(coords, f_values):
        acc = acc + c * fv
    return acc


def functional_transfer(f_values, beta: BilinearForm, K=None) -> BilinearForm:
    """The K-form (u, v) -> f(beta(u, v)) on the K-basis {b_i * w_j}.

    ``f_values`` are the values of f on ``L.basis_over(K)`` (the power basis
    for a simple extension).  Basis vectors are ordered with b_i outer.
    """
    L = beta.field
    if K is None:
        K = L.base if isinstance(L, SimpleExtension) else L
    _check_tower(L, K)
    basis = L.basis_over(K)
    f_values = [K(c) for c in f_values]
    if len(f_values) != len(basis):
        raise ValueError(f"functional needs {len(basis)} values, got {len(f_values)}")
    if all(c.is_zero() for c in f_values):
        raise ZeroFunctional("the functional is zero")
    if any(d.is_zero() for d in diagonalize(beta).diagonal):
        raise DegenerateForm("form is degenerate")
    n, m = beta.dim, len(basis)
    gram = [[K.zero] * (n * m) for _ in range(n * m)]
    for i in range(n):
        for k in range(n):
            bik = beta.gram[i][k]
            for j in range(m):
                for l in range(m):
                    gram[i * m + j][k * m + l] = apply_functional(f_values, bik * basis[j] * basis[l], K)
    return BilinearForm(K, tuple(map(tuple, gram)))


def trace_functional(L, K):
    return [trace(b, K) if L != K else K.one for b in L.basis_over(K)]


def cohomological_transfer_form(beta: BilinearForm, K) -> BilinearForm:
    """Trace-form transfer of beta from its field L down to K, as a Gram matrix."""
    L = beta.field
    if L == K:
        return beta
    _check_tower(L, K)
    if not is_separable_extension(L, K):
        raise InseparableResidueField(f"{L} is not separable over {K}")
    return functional_transfer(trace_functional(L, K), beta, K)


def cohomological_transfer(beta, K) -> GWElement:
    """Tr_{L/K}(beta) in GW(K); beta may be a BilinearForm or a diagonal list over L."""
    from .gw import gw_from_form

    if not isinstance(beta, BilinearForm):
        entries = list(beta)
        if not entries:
            raise ValueError("empty form")
        beta = BilinearForm.diagonal(entries[0].field, entries)
    if isinstance(K, SimpleExtension):
        raise UnsupportedField(f"GW({K}) is not supported; transfer further down")
    return gw_from_form(cohomological_transfer_form(beta, K))


def geometric_transfer_functional(L):
    """tau^z: the coefficient of z^(m-1) in the power basis of a simple extension."""
    if not isinstance(L, SimpleExtension):
        raise NotAnExtension(f"{L} is not a simple extension")
    m = L.degree
    return [L.base.one if j == m - 1 else L.base.zero for j in range(m)]


def minpoly_derivative_at_generator(L):
    """P'(z) for the defining polynomial P of L = K[z]/(P)."""
    P = L.minpoly
    z = L.gen
    acc = L.zero
    for j in range(1, len(P)):
        acc = acc + L(P[j]) * j * z ** (j - 1)
    return acc


# ---------------------------------------------------------------- parsing

_MW_TOKEN = re.compile(r"\s*(?:(\d+)|(eta)|(\[)|([-+*^]))")


def _read_bracket(text, i):
    depth, j = 1, i + 1
    while j < len(text) and depth:
        if text[j] == "[":
            depth += 1
        elif text[j] == "]":
            depth -= 1
        j += 1
    if depth:
        raise ParseError(f"unbalanced '[' in {text!r}")
    return text[i + 1:j - 1], j


def parse_mw(field, text) -> MWElement:
    """Parse e.g. ``eta^2*[a][b] + 3*[c] - 2``; symbol arguments are field elements."""
    from .parsing import parse_element

    text = text.strip()
    if not text:
        raise ParseError("empty MW expression")
    terms = {}
    i = 0
    sign = 1
    expect_term = True
    current = None  # [coeff, e, symbols]

    def flush():
        c, e, syms, _ = current
        key = (e, tuple(syms))
        terms[key] = terms.get(key, 0) + sign * c

    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "+-" and (expect_term or current is not None and current[3]):
            if current is not None:
                flush()
                current = None
                sign = 1
            sign = -sign if ch == "-" else sign
            expect_term = True
            i += 1
            continue
        if ch == "*":
            if current is None:
                raise ParseError(f"unexpected '*' in {text!r}")
            current[3] = False
            i += 1
            continue
        if current is None:
            current = [1, 0, [], False]
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            current[0] *= int(text[i:j])
            i = j
        elif text.startswith("eta", i):
            i += 3
            power = 1
            k = i
            while k < len(text) and text[k].isspace():
                k += 1
            if k < len(text) and text[k] == "^":
                k += 1
                while k < len(text) and text[k].isspace():
                    k += 1
                j = k
                while j < len(text) and text[j].isdigit():
                    j += 1
                if j == k:
                    raise ParseError(f"eta exponent must be an integer in {text!r}")
                power = int(text[k:j])
                i = j
            current[1] += power
        elif ch == "[":
            body, i = _read_bracket(text, i)
            a = parse_element(field, body)
            if a.is_zero():
                raise ParseError("[0] is not a symbol")
            current[2].append(a)
        else:
            raise ParseError(f"unexpected {ch!r} in {text!r}")
        current[3] = True
        expect_term = False
    if current is None:
        raise ParseError(f"dangling operator in {text!r}")
    flush()
    sign = 1
    return MWElement(field, {k: v for k, v in terms.items()})
