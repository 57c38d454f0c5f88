"""Symmetric bilinear forms given by Gram matrices.

Diagonalization works over every supported field.  The invariants
(discriminant, signature, Hasse-Witt symbols) and the isometry test need
square classes, so they are limited to Q and F_p.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

import sympy

from . import linalg
from .errors import (DegenerateForm, DescriptorMismatch, ParseError,
                     UnsupportedField, ZeroInput)
from .fields import (FieldElement, PrimeField, Rationals, SimpleExtension,
                     SquareClass, square_class)

INF = "inf"


@dataclass(frozen=True, eq=False)
class BilinearForm:
    field: object
    gram: tuple

    def __post_init__(self):
        rows = tuple(tuple(self.field(x) for x in row) for row in self.gram)
        object.__setattr__(self, "gram", rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("Gram matrix must be square")
        if not linalg.is_symmetric([list(r) for r in rows]):
            raise ValueError("Gram matrix must be symmetric")

    @classmethod
    def diagonal(cls, field, entries):
        entries = [field(a) for a in entries]
        n = len(entries)
        gram = [[entries[i] if i == j else field.zero for j in range(n)] for i in range(n)]
        return cls(field, tuple(map(tuple, gram)))

    @property
    def dim(self):
        return len(self.gram)

    def matrix(self):
        return [list(r) for r in self.gram]

    def congruent(self, P):
        """The form with Gram matrix P^T G P."""
        F = self.field
        P = [[F(x) for x in row] for row in P]
        g = linalg.matmul(F, linalg.matmul(F, linalg.transpose(P), self.matrix()), P)
        return BilinearForm(F, tuple(map(tuple, g)))

    def __eq__(self, other):
        return (isinstance(other, BilinearForm) and self.field == other.field
                and self.gram == other.gram)

    def __hash__(self):
        return hash((self.field, self.gram))

    def __repr__(self):
        rows = ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.gram)
        return f"BilinearForm({self.field}, [{rows}])"


@dataclass(frozen=True)
class Diagonalization:
    diagonal: tuple
    P: tuple


def diagonalize(f: BilinearForm) -> Diagonalization:
    """Symmetric Gaussian elimination with P^T G P = D.

    With every remaining diagonal entry zero but some B(u, v) != 0, the basis
    vector u is replaced by u + v, whose square 2B(u, v) is nonzero since the
    characteristic is not 2.  The radical ends up as trailing zeros.
    """
    F = f.field
    n = f.dim
    A = f.matrix()
    P = linalg.identity(F, n)

    def swap(i, j):
        if i == j:
            return
        A[i], A[j] = A[j], A[i]
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in P:
            row[i], row[j] = row[j], row[i]

    def add_to(i, j, c):
        # basis vector i <- e_i + c e_j
        for row in A:
            row[i] = row[i] + c * row[j]
        A[i] = [x + c * y for x, y in zip(A[i], A[j])]
        for row in P:
            row[i] = row[i] + c * row[j]

    for k in range(n):
        piv = next((i for i in range(k, n) if not A[i][i].is_zero()), None)
        if piv is None:
            pair = next(((i, j) for i in range(k, n) for j in range(i + 1, n)
                         if not A[i][j].is_zero()), None)
            if pair is None:
                break
            i, j = pair
            add_to(i, j, F.one)
            piv = i
        swap(k, piv)
        inv = A[k][k].inverse()
        for j in range(k + 1, n):
            if not A[k][j].is_zero():
                add_to(j, k, -(A[k][j] * inv))
    return Diagonalization(tuple(A[i][i] for i in range(n)), tuple(map(tuple, P)))


def rank(f: BilinearForm) -> int:
    return sum(1 for d in diagonalize(f).diagonal if not d.is_zero())


def _square_field(field):
    if isinstance(field, SimpleExtension):
        raise UnsupportedField(f"square classes over {field} are not supported")


def _nondegenerate_diagonal(f):
    diag = diagonalize(f).diagonal
    if any(d.is_zero() for d in diag):
        raise DegenerateForm("form is degenerate")
    return diag


def discriminant(f: BilinearForm) -> SquareClass:
    _square_field(f.field)
    d = linalg.det(f.field, f.matrix())
    if d.is_zero():
        raise DegenerateForm("form is degenerate")
    return square_class(d)


def signature(f: BilinearForm) -> int:
    if not isinstance(f.field, Rationals):
        raise UnsupportedField("signature needs the rational field (real embedding)")
    return sum((1 if d.value > 0 else -1) for d in diagonalize(f).diagonal if not d.is_zero())


# ---------------------------------------------------------------- Hilbert symbols

def _as_fraction(a):
    if isinstance(a, FieldElement):
        if not isinstance(a.field, Rationals):
            raise UnsupportedField("Hilbert symbols are defined for rationals")
        a = a.value
    if isinstance(a, SquareClass):
        a = a.rep
    a = Fraction(a)
    if a == 0:
        raise ZeroInput("Hilbert symbol of zero")
    return a


def _integer_class(q: Fraction) -> int:
    # same square class, integral
    return q.numerator * q.denominator


def _split_valuation(n: int, p: int):
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n


def _legendre(u: int, p: int) -> int:
    r = pow(u % p, (p - 1) // 2, p)
    return 1 if r == 1 else -1


def hilbert_symbol(a, b, place) -> int:
    """(a, b)_v for nonzero rationals and v = INF or a prime."""
    a = _integer_class(_as_fraction(a))
    b = _integer_class(_as_fraction(b))
    if place == INF:
        return -1 if (a < 0 and b < 0) else 1
    p = int(place)
    alpha, u = _split_valuation(a, p)
    beta, v = _split_valuation(b, p)
    if p == 2:
        def eps(x):
            return ((x - 1) // 2) % 2

        def omega(x):
            return ((x * x - 1) // 8) % 2

        u8, v8 = u % 8, v % 8
        e = eps(u8) * eps(v8) + alpha * omega(v8) + beta * omega(u8)
        return -1 if e % 2 else 1
    s = 1
    if (alpha * beta) % 2 and (p - 1) // 2 % 2:
        s = -s
    if beta % 2:
        s *= _legendre(u, p)
    if alpha % 2:
        s *= _legendre(v, p)
    return s


def relevant_places(values):
    """INF plus every prime dividing 2 or a numerator/denominator of the values."""
    primes = {2}
    for a in values:
        q = _as_fraction(a)
        for n in (q.numerator, q.denominator):
            if abs(n) > 1:
                primes.update(sympy.factorint(abs(n)).keys())
    return sorted(primes) + [INF]


@dataclass(frozen=True)
class PlaceSymbolTable:
    """Places of Q where a symbol is -1; every other place is +1."""

    minus: tuple

    def __getitem__(self, place):
        return -1 if place in self.minus else 1

    def product(self):
        return -1 if len(self.minus) % 2 else 1

    def __str__(self):
        return "{" + ", ".join(f"{p}:-1" for p in self.minus) + "}"


def place_sort_key(place):
    return (1, 0) if place == INF else (0, place)


def _hasse_of_diagonal(diag, place):
    s = 1
    # running product of earlier entries turns the pair product into a linear scan
    acc = None
    for a in diag:
        if acc is not None:
            s *= hilbert_symbol(acc, a, place)
            acc = acc * a
        else:
            acc = a
    return s


def hasse_witt(f: BilinearForm, place) -> int:
    """prod_{i<j} (a_i, a_j)_v over a diagonalization."""
    if not isinstance(f.field, Rationals):
        raise UnsupportedField("Hasse-Witt symbols are computed over Q")
    diag = [d.value for d in _nondegenerate_diagonal(f)]
    return _hasse_of_diagonal(diag, place)


def hasse_table(f: BilinearForm) -> PlaceSymbolTable:
    if not isinstance(f.field, Rationals):
        raise UnsupportedField("Hasse-Witt symbols are computed over Q")
    diag = [d.value for d in _nondegenerate_diagonal(f)]
    minus = tuple(v for v in relevant_places(diag) if _hasse_of_diagonal(diag, v) == -1)
    return PlaceSymbolTable(minus)


def invariants(f: BilinearForm):
    """(rank, discriminant rep, signature, Hasse table) over Q; (rank, disc) over F_p."""
    cached = f.__dict__.get("_invariants")
    if cached is not None:
        return cached
    _square_field(f.field)
    diag = _nondegenerate_diagonal(f)
    prod = f.field.one
    for d in diag:
        prod = prod * d
    disc = square_class(prod).rep
    if isinstance(f.field, PrimeField):
        out = (len(diag), disc)
    else:
        values = [d.value for d in diag]
        sig = sum(1 if a > 0 else -1 for a in values)
        minus = tuple(v for v in relevant_places(values) if _hasse_of_diagonal(values, v) == -1)
        out = (len(diag), disc, sig, minus)
    # the Gram matrix is immutable, so the result can live on the instance
    object.__setattr__(f, "_invariants", out)
    return out


def is_isometric(f: BilinearForm, g: BilinearForm) -> bool:
    if f.field != g.field:
        raise DescriptorMismatch("forms over different fields")
    return invariants(f) == invariants(g)


def direct_sum(f: BilinearForm, g: BilinearForm) -> BilinearForm:
    if f.field != g.field:
        raise DescriptorMismatch("forms over different fields")
    m = linalg.block_diag(f.field, f.matrix(), g.matrix())
    return BilinearForm(f.field, tuple(map(tuple, m)))


def tensor_product(f: BilinearForm, g: BilinearForm) -> BilinearForm:
    if f.field != g.field:
        raise DescriptorMismatch("forms over different fields")
    return BilinearForm(f.field, tuple(map(tuple, linalg.kron(f.matrix(), g.matrix()))))


# ---------------------------------------------------------------- JSON

def form_to_json(f: BilinearForm) -> dict:
    return {"field": str(f.field), "gram": [[str(x) for x in row] for row in f.gram]}


def form_from_json(data, field=None) -> BilinearForm:
    from .parsing import parse_element, parse_field

    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ParseError("form JSON must be an object")
    if "field" in data:
        field = parse_field(data["field"])
    if field is None:
        raise ParseError("form JSON needs a field")

    def elem(s):
        if not isinstance(s, str):
            raise ParseError("form entries must be strings")
        return parse_element(field, s)

    if "gram" in data:
        gram = [[elem(x) for x in row] for row in data["gram"]]
        try:
            return BilinearForm(field, tuple(map(tuple, gram)))
        except ValueError as exc:
            raise ParseError(str(exc)) from exc
    if "diag" in data:
        return BilinearForm.diagonal(field, [elem(x) for x in data["diag"]])
    raise ParseError("form JSON needs 'gram' or 'diag'")
