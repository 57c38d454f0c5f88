"""Exact base fields: the prime fields Q and F_p (p odd), plus simple extensions K[x]/(m).

Elements are immutable :class:`FieldElement` values tied to a descriptor.
Square classes are available over Q and F_p only.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC

import sympy

from . import upoly
from .errors import (DescriptorMismatch, DivisionByZero, InvalidDescriptor,
                     NotAnExtension, UnsupportedField, ZeroInput)


class FieldElement:
    __slots__ = ("field", "value")

    def __init__(self, field, value):
        self.field = field
        self.value = value

    def _pair(self, other):
        """Both operands in a common field, or None if there is none."""
        if isinstance(other, FieldElement):
            if other.field == self.field:
                return self, other
            if self.field.contains_field(other.field):
                return self, self.field(other)
            if other.field.contains_field(self.field):
                return other.field(self), other
            return None
        if isinstance(other, (int, Fraction, _RationalABC)):
            return self, self.field(other)
        return None

    def __add__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return FieldElement(a.field, a.field._add(a.value, b.value))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, self.field._neg(self.value))

    def __sub__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a + (-b)

    def __rsub__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return b + (-a)

    def __mul__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return FieldElement(a.field, a.field._mul(a.value, b.value))

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise DivisionByZero(f"inverse of zero in {self.field}")
        return FieldElement(self.field, self.field._inv(self.value))

    def __truediv__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a * b.inverse()

    def __rtruediv__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return b * a.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out = self.field.one
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def is_zero(self):
        return self.field._is_zero(self.value)

    def is_one(self):
        return self == self.field.one

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        pair = self._pair(other)
        if pair is None:
            return False
        return pair[0].value == pair[1].value

    def __hash__(self):
        return hash(self.value)

    def __str__(self):
        return self.field._format(self.value)

    def __repr__(self):
        return f"{self.field}({self})"

    def in_base(self, K=None):
        """Return this element as an element of the subfield ``K`` (default: base).

        Raises ValueError if it does not lie in ``K``.
        """
        K = K if K is not None else self.field.base
        coords = self.field.coords_over(self, K)
        if any(not c.is_zero() for c in coords[1:]):
            raise ValueError(f"{self} does not lie in {K}")
        return coords[0]


class FieldDescriptor:
    """Common interface of the three descriptor variants."""

    characteristic = 0

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def tower(self):
        """Fields from ``self`` down to the prime field, inclusive."""
        out = [self]
        while isinstance(out[-1], SimpleExtension):
            out.append(out[-1].base)
        return out

    def contains_field(self, other):
        return other in self.tower()[1:]

    @property
    def prime_field(self):
        return self.tower()[-1]

    def degree_over(self, K):
        if K == self:
            return 1
        if not isinstance(self, SimpleExtension) or not self.contains_field(K):
            raise NotAnExtension(f"{self} is not an extension of {K}")
        return self.degree * self.base.degree_over(K)

    def basis_over(self, K):
        """K-basis of self, ordered to match :meth:`coords_over`."""
        if K == self:
            return [self.one]
        sub = self.base.basis_over(K)
        g = self.gen
        out = []
        for j in range(self.degree):
            gj = g ** j
            out.extend(gj * self(b) for b in sub)
        return out

    def coords_over(self, a, K):
        a = self(a)
        if K == self:
            return [a]
        if not isinstance(self, SimpleExtension) or not self.contains_field(K):
            raise NotAnExtension(f"{self} is not an extension of {K}")
        out = []
        for c in a.value:
            out.extend(self.base.coords_over(c, K))
        return out

    def multiplication_matrix(self, a, K):
        a = self(a)
        cols = [self.coords_over(a * b, K) for b in self.basis_over(K)]
        return [list(r) for r in zip(*cols)]

    def degree_over_prime(self):
        return self.degree_over(self.prime_field)

    def random_element(self, rng, bound=10):
        raise NotImplementedError


@dataclass(frozen=True)
class Rationals(FieldDescriptor):
    characteristic = 0

    def __call__(self, x):
        if isinstance(x, FieldElement):
            if x.field == self:
                return x
            raise DescriptorMismatch(f"cannot coerce {x!r} into Q")
        if isinstance(x, str):
            from .parsing import parse_element
            return parse_element(self, x)
        if isinstance(x, float):
            raise TypeError("floats are not exact; pass a Fraction or string")
        if isinstance(x, sympy.Rational):
            return FieldElement(self, Fraction(int(x.p), int(x.q)))
        return FieldElement(self, Fraction(x))

    def _add(self, a, b):
        return a + b

    def _neg(self, a):
        return -a

    def _mul(self, a, b):
        return a * b

    def _inv(self, a):
        return 1 / a

    def _is_zero(self, a):
        return a == 0

    def _format(self, a):
        return str(a)

    def __str__(self):
        return "Q"

    def random_element(self, rng, bound=10):
        return self(Fraction(rng.randint(-bound, bound), rng.randint(1, bound)))


@dataclass(frozen=True)
class PrimeField(FieldDescriptor):
    p: int

    def __post_init__(self):
        if self.p == 2:
            raise InvalidDescriptor("characteristic 2 is not supported")
        if self.p < 3 or not sympy.isprime(self.p):
            raise InvalidDescriptor(f"{self.p} is not an odd prime")

    @property
    def characteristic(self):
        return self.p

    def __call__(self, x):
        if isinstance(x, FieldElement):
            if x.field == self:
                return x
            raise DescriptorMismatch(f"cannot coerce {x!r} into {self}")
        if isinstance(x, str):
            from .parsing import parse_element
            return parse_element(self, x)
        if isinstance(x, float):
            raise TypeError("floats are not exact")
        if isinstance(x, sympy.Rational) and not isinstance(x, sympy.Integer):
            x = Fraction(int(x.p), int(x.q))
        if isinstance(x, (Fraction, _RationalABC)) and not isinstance(x, int):
            q = Fraction(x)
            if q.denominator % self.p == 0:
                raise DivisionByZero(f"denominator of {q} vanishes mod {self.p}")
            return FieldElement(self, q.numerator * pow(q.denominator, -1, self.p) % self.p)
        return FieldElement(self, int(x) % self.p)

    def _add(self, a, b):
        return (a + b) % self.p

    def _neg(self, a):
        return (-a) % self.p

    def _mul(self, a, b):
        return a * b % self.p

    def _inv(self, a):
        return pow(a, -1, self.p)

    def _is_zero(self, a):
        return a == 0

    def _format(self, a):
        return str(a)

    def __str__(self):
        return f"F{self.p}"

    def random_element(self, rng, bound=None):
        return self(rng.randrange(self.p))


@dataclass(frozen=True)
class SimpleExtension(FieldDescriptor):
    """``base[name]/(minpoly)``; ``minpoly`` is ascending and monic."""

    base: FieldDescriptor
    minpoly: tuple
    name: str = "t"

    def __post_init__(self):
        mp = tuple(self.base(c) for c in self.minpoly)
        object.__setattr__(self, "minpoly", mp)
        if len(mp) < 3:
            raise InvalidDescriptor("minimal polynomial must have degree >= 2")
        if not mp[-1].is_one():
            raise InvalidDescriptor("minimal polynomial must be monic")
        if not upoly.is_irreducible(self.base, list(mp)):
            raise InvalidDescriptor(
                f"{upoly.to_str(list(mp), self.name)} is reducible over {self.base}")

    @property
    def degree(self):
        return len(self.minpoly) - 1

    @property
    def characteristic(self):
        return self.base.characteristic

    @property
    def gen(self):
        z = self.base.zero
        return FieldElement(self, tuple([z, self.base.one] + [z] * (self.degree - 2)))

    def __call__(self, x):
        if isinstance(x, FieldElement):
            if x.field == self:
                return x
            if not self.contains_field(x.field):
                raise DescriptorMismatch(f"cannot coerce {x!r} into {self}")
            b = self.base(x)
        elif isinstance(x, str):
            from .parsing import parse_element
            return parse_element(self, x)
        elif isinstance(x, (list, tuple)):
            if len(x) > self.degree:
                poly = upoly.rem(self.base, upoly.trim([self.base(c) for c in x]),
                                 list(self.minpoly))
                x = poly
            vals = [self.base(c) for c in x] + [self.base.zero] * (self.degree - len(x))
            return FieldElement(self, tuple(vals))
        else:
            b = self.base(x)
        return FieldElement(self, tuple([b] + [self.base.zero] * (self.degree - 1)))

    def _add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def _neg(self, a):
        return tuple(-x for x in a)

    def _mul(self, a, b):
        m = self.degree
        prod = [self.base.zero] * (2 * m - 1)
        for i, x in enumerate(a):
            if x.is_zero():
                continue
            for j, y in enumerate(b):
                prod[i + j] = prod[i + j] + x * y
        mp = self.minpoly
        for k in range(2 * m - 2, m - 1, -1):
            c = prod[k]
            if c.is_zero():
                continue
            for i in range(m + 1):
                prod[k - m + i] = prod[k - m + i] - c * mp[i]
        return tuple(prod[:m])

    def _inv(self, a):
        g, s, _ = upoly.xgcd(self.base, upoly.trim(list(a)), list(self.minpoly))
        if upoly.degree(g) != 0:
            raise DivisionByZero("element is not invertible")
        vals = list(s) + [self.base.zero] * (self.degree - len(s))
        return tuple(vals)

    def _is_zero(self, a):
        return all(x.is_zero() for x in a)

    def _format(self, a):
        return upoly.to_str(upoly.trim(list(a)), self.name)

    def __str__(self):
        return f"{self.base}[{self.name}]/({upoly.to_str(list(self.minpoly), self.name)})"

    def random_element(self, rng, bound=10):
        return self([self.base.random_element(rng, bound) for _ in range(self.degree)])


Q = Rationals()


@dataclass(frozen=True)
class SquareClass:
    """A class in k^x/(k^x)^2 given by its canonical representative.

    Over Q the representative is the signed squarefree integer; over F_p it
    is 1 or the least positive quadratic nonresidue.
    """

    field: FieldDescriptor
    rep: int

    def __mul__(self, other):
        if self.field != other.field:
            raise DescriptorMismatch("square classes over different fields")
        return square_class(self.field(self.rep) * self.field(other.rep))

    def is_trivial(self):
        return self.rep == 1

    def element(self):
        return self.field(self.rep)

    def __str__(self):
        return str(self.rep)


def _squarefree_part(n: int) -> int:
    if n == 0:
        raise ZeroInput("zero has no square class")
    sign = -1 if n < 0 else 1
    n = abs(n)
    out = 1
    for p in (2, 3, 5, 7, 11, 13):
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e & 1:
            out *= p
    if n > 1:
        r = sympy.integer_nthroot(n, 2)
        if r[1]:
            n = 1
        for p, e in sympy.factorint(n).items():
            if e & 1:
                out *= p
    return sign * out


def least_nonresidue(p: int) -> int:
    a = 2
    while pow(a, (p - 1) // 2, p) == 1:
        a += 1
    return a


def _require_square_field(a):
    if not isinstance(a, FieldElement):
        a = Q(a)
    if isinstance(a.field, SimpleExtension):
        raise UnsupportedField(f"square classes over {a.field} are not supported")
    if a.is_zero():
        raise ZeroInput("zero has no square class")
    return a


def is_square(a) -> bool:
    a = _require_square_field(a)
    if isinstance(a.field, Rationals):
        q = a.value
        return _squarefree_part(q.numerator * q.denominator) == 1
    return pow(a.value, (a.field.p - 1) // 2, a.field.p) == 1


def square_class(a) -> SquareClass:
    a = _require_square_field(a)
    if isinstance(a.field, Rationals):
        q = a.value
        return SquareClass(a.field, _squarefree_part(q.numerator * q.denominator))
    p = a.field.p
    rep = 1 if pow(a.value, (p - 1) // 2, p) == 1 else least_nonresidue(p)
    return SquareClass(a.field, rep)


def square_class_reps(field):
    """All canonical representatives; only meaningful over F_p."""
    if isinstance(field, PrimeField):
        return [1, least_nonresidue(field.p)]
    raise UnsupportedField("Q has infinitely many square classes")


def _as_extension_pair(a, K):
    if not isinstance(a, FieldElement) or not isinstance(a.field, SimpleExtension):
        raise NotAnExtension("element does not live in a simple extension")
    K = a.field.base if K is None else K
    if not a.field.contains_field(K):
        raise NotAnExtension(f"{a.field} is not an extension of {K}")
    return a.field, K


def trace(a, K=None):
    """Trace of multiplication by ``a`` on L viewed as a K-vector space."""
    L, K = _as_extension_pair(a, K)
    m = L.multiplication_matrix(a, K)
    acc = K.zero
    for i in range(len(m)):
        acc = acc + m[i][i]
    return acc


def norm(a, K=None):
    from . import linalg
    L, K = _as_extension_pair(a, K)
    return linalg.det(K, L.multiplication_matrix(a, K))


def minimal_polynomial(a, K=None):
    """Monic minimal polynomial of ``a`` over K, ascending coefficients.

    Found as the first linear relation among 1, a, a^2, ... in K-coordinates,
    which is the minimal polynomial of the multiplication matrix.
    """
    from . import linalg
    L, K = _as_extension_pair(a, K)

    def powers():
        x = L.one
        while True:
            yield L.coords_over(x, K)
            x = x * a

    return linalg.first_dependency(K, powers())


def is_separable_polynomial(K, poly) -> bool:
    """gcd(P, P') = 1 over K; always true for irreducible P in characteristic 0."""
    p = upoly.trim([K(c) for c in poly])
    return upoly.degree(upoly.gcd(K, p, upoly.derivative(K, p))) == 0


def is_separable_extension(L, K=None) -> bool:
    if not isinstance(L, SimpleExtension):
        raise NotAnExtension(f"{L} is not a simple extension")
    K = L.base if K is None else K
    F = L
    while F != K:
        if not isinstance(F, SimpleExtension):
            raise NotAnExtension(f"{L} is not an extension of {K}")
        if F.characteristic and not is_separable_polynomial(F.base, F.minpoly):
            return False
        F = F.base
    return True


def extension(base, minpoly, name="t"):
    """Build ``base[name]/(minpoly)`` from ascending coefficients (made monic)."""
    coeffs = upoly.trim([base(c) for c in minpoly])
    if not coeffs:
        raise InvalidDescriptor("zero minimal polynomial")
    return SimpleExtension(base, tuple(upoly.monic(coeffs)), name)


def check_same_field(*elems):
    fields = {e.field for e in elems}
    if len(fields) > 1:
        raise DescriptorMismatch("elements belong to different fields")
