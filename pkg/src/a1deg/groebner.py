"""Buchberger's algorithm in grevlex order, with the product and chain criteria."""

from __future__ import annotations

from .polys import Polynomial, divides, grevlex_key, mono_div, mono_lcm


def reduce(f: Polynomial, G) -> Polynomial:
    """Full normal form of f modulo the list G (leading terms of G must be monic-able)."""
    field, n = f.field, f.nvars
    work = dict(f.terms)
    rem = {}
    leads = [(g.lead_monomial(), g.lead_coeff().inverse(), g) for g in G if not g.is_zero()]
    while work:
        m = max(work, key=grevlex_key)
        c = work.pop(m)
        for lm, inv, g in leads:
            if divides(lm, m):
                q = mono_div(m, lm)
                factor = c * inv
                for gm, gc in g.terms.items():
                    if gm == lm:
                        continue
                    t = tuple(a + b for a, b in zip(gm, q))
                    v = work.get(t)
                    v = -(factor * gc) if v is None else v - factor * gc
                    if v.is_zero():
                        work.pop(t, None)
                    else:
                        work[t] = v
                break
        else:
            rem[m] = c
    return Polynomial(field, n, rem)


def s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    lf, lg = f.lead_monomial(), g.lead_monomial()
    lcm = mono_lcm(lf, lg)
    a = f.mul_term(mono_div(lcm, lf), f.lead_coeff().inverse())
    b = g.mul_term(mono_div(lcm, lg), g.lead_coeff().inverse())
    return a - b


def _coprime(a, b):
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def groebner_basis(generators):
    """Reduced, monic Gröbner basis, sorted by decreasing leading monomial.

    The output depends only on the ideal.  The unit ideal gives [1].
    """
    gens = [g for g in generators if not g.is_zero()]
    if not gens:
        return []
    field, n = gens[0].field, gens[0].nvars
    G = []
    for g in gens:
        r = reduce(g, G)
        if not r.is_zero():
            G.append(r.monic())
    pairs = {(i, j) for j in range(len(G)) for i in range(j)}
    while pairs:
        # normal selection strategy: smallest lcm first
        i, j = min(pairs, key=lambda ij: (grevlex_key(mono_lcm(G[ij[0]].lead_monomial(),
                                                               G[ij[1]].lead_monomial())), ij))
        pairs.discard((i, j))
        li, lj = G[i].lead_monomial(), G[j].lead_monomial()
        if _coprime(li, lj):
            continue
        lcm = mono_lcm(li, lj)
        if any(k != i and k != j and divides(G[k].lead_monomial(), lcm)
               and (min(i, k), max(i, k)) not in pairs and (min(j, k), max(j, k)) not in pairs
               for k in range(len(G))):
            continue
        r = reduce(s_polynomial(G[i], G[j]), G)
        if r.is_zero():
            continue
        r = r.monic()
        if not any(r.lead_monomial()):
            return [Polynomial.constant(field, n, 1)]
        G.append(r)
        k = len(G) - 1
        pairs.update((a, k) for a in range(k))
    return _reduce_basis(G)


def _reduce_basis(G):
    # drop redundant leading terms, then interreduce
    G = sorted(G, key=lambda g: grevlex_key(g.lead_monomial()))
    minimal = []
    for g in G:
        lm = g.lead_monomial()
        if not any(divides(h.lead_monomial(), lm) for h in minimal):
            minimal = [h for h in minimal if not divides(lm, h.lead_monomial())]
            minimal.append(g)
    out = []
    for idx, g in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1:]
        lm = g.lead_monomial()
        tail = Polynomial(g.field, g.nvars, {m: c for m, c in g.terms.items() if m != lm})
        r = reduce(tail, others)
        out.append(Polynomial(g.field, g.nvars, {lm: g.lead_coeff(), **r.terms}).monic())
    out.sort(key=lambda g: grevlex_key(g.lead_monomial()), reverse=True)
    return out


def is_unit_ideal(G):
    return any(not any(g.lead_monomial()) for g in G)


def standard_monomials(G, nvars):
    """Monomials outside the leading-term ideal, ascending in grevlex.

    Returns None when the quotient is infinite-dimensional, i.e. some
    variable has no pure power among the leading monomials.
    """
    leads = [g.lead_monomial() for g in G]
    bounds = []
    for i in range(nvars):
        pure = [m[i] for m in leads if m[i] and all(m[j] == 0 for j in range(nvars) if j != i)]
        if not pure:
            return None
        bounds.append(min(pure))
    out = []

    def rec(prefix, i):
        if i == nvars:
            m = tuple(prefix)
            if not any(divides(l, m) for l in leads):
                out.append(m)
            return
        for e in range(bounds[i]):
            prefix.append(e)
            rec(prefix, i + 1)
            prefix.pop()

    rec([], 0)
    out.sort(key=grevlex_key)
    return out
