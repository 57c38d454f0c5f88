"""Dense univariate polynomials over a field.

A polynomial is a list of field elements in ascending degree, with no
trailing zeros (the zero polynomial is the empty list).  All functions take
the coefficient field explicitly so that empty lists stay meaningful.
"""

from __future__ import annotations


def trim(p):
    p = list(p)
    while p and p[-1].is_zero():
        p.pop()
    return p


def degree(p):
    return len(p) - 1 if p else -1


def add(p, q):
    n = max(len(p), len(q))
    out = []
    for i in range(n):
        if i < len(p) and i < len(q):
            out.append(p[i] + q[i])
        elif i < len(p):
            out.append(p[i])
        else:
            out.append(q[i])
    return trim(out)


def neg(p):
    return [-c for c in p]


def sub(p, q):
    return add(p, neg(q))


def scale(p, c):
    return trim([c * a for a in p])


def mul(field, p, q):
    if not p or not q:
        return []
    out = [field.zero] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a.is_zero():
            continue
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return trim(out)


def monic(p):
    if not p:
        return []
    lead = p[-1].inverse()
    return [c * lead for c in p]


def divmod_(field, a, b):
    if not b:
        from .errors import DivisionByZero
        raise DivisionByZero("polynomial division by zero")
    a = list(a)
    db = len(b) - 1
    inv_lead = b[-1].inverse()
    quot = [field.zero] * max(len(a) - db, 0)
    while len(a) - 1 >= db and a:
        shift = len(a) - 1 - db
        c = a[-1] * inv_lead
        quot[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] = a[shift + i] - c * bc
        a = trim(a[:-1]) if a[-1].is_zero() else trim(a)
    return trim(quot), trim(a)


def rem(field, a, b):
    return divmod_(field, a, b)[1]


def gcd(field, a, b):
    a, b = trim(a), trim(b)
    while b:
        a, b = b, rem(field, a, b)
    return monic(a)


def xgcd(field, a, b):
    """Return (g, s, t) with s*a + t*b = g, g monic."""
    r0, r1 = trim(a), trim(b)
    s0, s1 = [field.one], []
    t0, t1 = [], [field.one]
    while r1:
        q, r = divmod_(field, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(field, q, s1))
        t0, t1 = t1, sub(t0, mul(field, q, t1))
    if not r0:
        return [], s0, t0
    lead = r0[-1].inverse()
    return scale(r0, lead), scale(s0, lead), scale(t0, lead)


def derivative(field, p):
    return trim([field(i) * c for i, c in enumerate(p)][1:])


def evaluate(p, x):
    """Horner evaluation; ``x`` may live in any field the coefficients embed in."""
    acc = x * 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def power(field, p, n):
    out = [field.one]
    base = list(p)
    while n:
        if n & 1:
            out = mul(field, out, base)
        base = mul(field, base, base)
        n >>= 1
    return out


def is_squarefree(field, p):
    return degree(gcd(field, p, derivative(field, p))) == 0


def to_str(p, var="x"):
    if not p:
        return "0"
    terms = []
    for j in range(len(p) - 1, -1, -1):
        c = p[j]
        if c.is_zero():
            continue
        cs = str(c)
        if j == 0:
            terms.append(cs)
            continue
        mono = var if j == 1 else f"{var}^{j}"
        if c.is_one():
            terms.append(mono)
        elif cs == "-1":
            terms.append("-" + mono)
        else:
            if any(op in cs[1:] for op in "+-") or " " in cs:
                cs = f"({cs})"
            terms.append(f"{cs}*{mono}")
    out = " + ".join(terms)
    return out.replace("+ -", "- ")


def factor(field, p):
    """Irreducible factorization over Q or F_p as [(monic factor, multiplicity)].

    Delegates to sympy; results are sorted by (degree, coefficients) so the
    order is deterministic.
    """
    import sympy
    from .fields import PrimeField, Rationals
    from .errors import UnsupportedField

    p = trim(p)
    if degree(p) < 1:
        return []
    x = sympy.Symbol("x")
    if isinstance(field, Rationals):
        coeffs = [sympy.Rational(c.value.numerator, c.value.denominator) for c in reversed(p)]
        poly = sympy.Poly(coeffs, x, domain="QQ")
    elif isinstance(field, PrimeField):
        coeffs = [int(c.value) for c in reversed(p)]
        poly = sympy.Poly(coeffs, x, modulus=field.p)
    else:
        raise UnsupportedField(f"polynomial factorization over {field} is not supported")
    _, factors = poly.factor_list()
    out = []
    for fac, mult in factors:
        cs = fac.all_coeffs()
        if isinstance(field, Rationals):
            elems = [field(sympy.Rational(c)) for c in reversed(cs)]
        else:
            elems = [field(int(c)) for c in reversed(cs)]
        out.append((monic(trim(elems)), int(mult)))
    out.sort(key=lambda fm: (len(fm[0]), [str(c) for c in fm[0]], fm[1]))
    return out


def is_irreducible(field, p):
    """Irreducibility over any supported field.

    Prime fields go through :func:`factor`.  Over an extension ``L`` of ``K``
    the quotient ``L[x]/(p)`` is viewed as a ``K``-algebra; if some element
    ``x + s*alpha`` has a minimal polynomial over ``K`` of full degree the
    algebra is ``K[t]/(mu)`` and is a field exactly when ``mu`` is
    irreducible over ``K``.
    """
    from .fields import SimpleExtension
    from . import linalg

    p = trim(p)
    d = degree(p)
    if d < 1:
        return False
    if d == 1:
        return True
    if not isinstance(field, SimpleExtension):
        fac = factor(field, p)
        return len(fac) == 1 and fac[0][1] == 1
    base = field.base
    m = field.degree
    p = monic(p)
    dim = m * d

    # K-basis of L[x]/(p): alpha^i x^j, flattened with j outer.
    def coords(poly):
        poly = rem(field, poly, p) if degree(poly) >= d else poly
        vec = []
        for j in range(d):
            c = poly[j] if j < len(poly) else field.zero
            vec.extend(c.value)
        return vec

    basis_polys = []
    for j in range(d):
        for i in range(m):
            coeff = field.gen ** i
            basis_polys.append([field.zero] * j + [coeff])
    limit = max(2 * dim * dim, 8)
    if base.characteristic:
        limit = min(limit, base.characteristic)
    for s in range(limit):
        elem = [field(s) * field.gen, field.one]  # x + s*alpha
        op = []
        for bp in basis_polys:
            op.append(coords(mul(field, elem, bp)))
        mat = linalg.transpose(op)
        mu = linalg.minimal_polynomial(base, mat)
        if degree(mu) == dim:
            return is_irreducible(base, mu)
    raise InconclusiveIrreducibility(str(p))


class InconclusiveIrreducibility(ArithmeticError):
    pass
