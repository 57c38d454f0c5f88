"""Local and global A^1-degrees of polynomial maps A^n -> A^n.

The degree at an isolated zero is the class of the EKL form on the local
algebra; at a closed point with separable residue field where the map is
étale it is the trace transfer of <J(x)>.  The global degree over a value
y sums the local degrees over the fiber, which is found by splitting
k[x]/(f - y) into joint generalized eigenspaces of the multiplication
operators.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from . import linalg, upoly
from .errors import (CharDividesDim, DegenerateResult, InseparableResidueField,
                     NotAZero, NotEtale, NotZeroDimensional, UnitIdeal,
                     UnsupportedFiberPoint, ZeroJacobianClass)
from .fields import SimpleExtension, extension, is_separable_extension
from .forms import BilinearForm, diagonalize
from .groebner import groebner_basis, is_unit_ideal, reduce, standard_monomials
from .gw import GWElement, gw_from_form
from .polys import Polynomial, jacobian_determinant, mono_mul, mono_str


# ---------------------------------------------------------------- data types

class PolynomialMap:
    def __init__(self, field, components):
        components = list(components)
        n = len(components)
        if n == 0:
            raise ValueError("a map needs at least one component")
        if any(c.nvars != n for c in components):
            raise ValueError("a map A^n -> A^n needs n components in n variables")
        self.field = field
        self.components = components
        self.n = n

    @classmethod
    def parse(cls, field, text):
        from .parsing import parse_map
        return cls(field, parse_map(field, text))

    def jacobian(self) -> Polynomial:
        return jacobian_determinant(self.components)

    def __call__(self, point):
        return [c.evaluate(point) for c in self.components]

    def translate(self, point):
        """x -> f(x + p) - f(p), which has a zero at the origin."""
        pt = [self.field(c) for c in point]
        values = self(pt)
        return PolynomialMap(self.field, [c.translate(pt) - v
                                          for c, v in zip(self.components, values)])

    def minus(self, value):
        value = [self.field(c) for c in value]
        if len(value) != self.n:
            raise ValueError("value has the wrong dimension")
        return PolynomialMap(self.field, [c - v for c, v in zip(self.components, value)])

    def __str__(self):
        return "; ".join(str(c) for c in self.components)


@dataclass(frozen=True)
class RationalPoint:
    coords: tuple

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class ClosedPoint:
    """A point with residue field L, given by coordinates in L."""

    field: SimpleExtension
    coords: tuple

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.coords) + f") in {self.field}"


@dataclass
class LocalAlgebra:
    """A finite commutative k-algebra with a monomial-labelled basis.

    ``op[i]`` is multiplication by basis element ``i`` (for the global
    quotient these are the standard monomials; for a local component the
    projected monomials), ``xmat[i]`` multiplication by x_{i+1}.  Element
    coordinates always refer to ``labels``.
    """

    field: object
    labels: list
    xmat: list
    op: list
    unit: list
    groebner: list = dc_field(default_factory=list)
    # for a local component: column basis inside the parent algebra and the projector
    embedding: list = None
    parent: "LocalAlgebra" = None
    _complement: list = None

    @property
    def dim(self):
        return len(self.labels)

    @property
    def nvars(self):
        return len(self.xmat)

    def mul(self, u, v):
        acc = [self.field.zero] * self.dim
        for i, c in enumerate(u):
            if c.is_zero():
                continue
            col = linalg.matvec(self.field, self.op[i], v)
            acc = [a + c * b for a, b in zip(acc, col)]
        return acc

    def basis_strings(self):
        return [mono_str(m) for m in self.labels]

    def project(self, parent_vec):
        """Coordinates of the component of a parent vector lying in this subalgebra."""
        if self.parent is None:
            return list(parent_vec)
        cols = list(self.embedding) + list(self._complement)
        mat = linalg.transpose(cols)
        sol = linalg.solve(self.field, mat, [[x] for x in parent_vec])
        return [row[0] for row in sol[:len(self.embedding)]]

    def element_of_polynomial(self, poly: Polynomial):
        """Class of a polynomial, via reduction in the root algebra then projection."""
        root = self
        chain = []
        while root.parent is not None:
            chain.append(root)
            root = root.parent
        vec = root._reduce_to_coords(poly)
        for alg in reversed(chain):
            vec = alg.project(vec)
        return vec

    def _reduce_to_coords(self, poly):
        r = reduce(poly, self.groebner)
        index = {m: i for i, m in enumerate(self.labels)}
        vec = [self.field.zero] * self.dim
        for m, c in r.terms.items():
            vec[index[m]] = c
        return vec

    def commute(self):
        F = self.field
        return all(linalg.matmul(F, a, b) == linalg.matmul(F, b, a)
                   for i, a in enumerate(self.xmat) for b in self.xmat[i + 1:])


def _mono_operator(F, xmat, m, dim):
    out = linalg.identity(F, dim)
    for M, e in zip(xmat, m):
        for _ in range(e):
            out = linalg.matmul(F, M, out)
    return out


def quotient_algebra(f) -> LocalAlgebra:
    """k[x]/(f_1, ..., f_n) with its standard-monomial basis."""
    comps = f.components if isinstance(f, PolynomialMap) else list(f)
    F, n = comps[0].field, comps[0].nvars
    G = groebner_basis(comps)
    if is_unit_ideal(G):
        raise UnitIdeal("the ideal is the unit ideal (empty fiber)")
    basis = standard_monomials(G, n)
    if basis is None:
        raise NotZeroDimensional("the ideal is not zero-dimensional")
    index = {m: i for i, m in enumerate(basis)}
    d = len(basis)

    def coords(poly):
        vec = [F.zero] * d
        for m, c in reduce(poly, G).terms.items():
            vec[index[m]] = c
        return vec

    xmat = []
    for i in range(n):
        e = [0] * n
        e[i] = 1
        e = tuple(e)
        cols = [coords(Polynomial(F, n, {mono_mul(m, e): F.one})) for m in basis]
        xmat.append(linalg.transpose(cols))
    op = [_mono_operator(F, xmat, m, d) for m in basis]
    unit = [F.one if not any(m) else F.zero for m in basis]
    return LocalAlgebra(F, basis, xmat, op, unit, G)


# ---------------------------------------------------------------- subspaces

def _restrict(F, B, M):
    """Matrix of M on the invariant column space of B, in the basis B."""
    Bt = linalg.transpose(B)
    MB = linalg.matmul(F, M, Bt)
    return linalg.solve(F, Bt, MB)


def _generalized_kernel(F, mats, shifts, dim):
    """Columns spanning the intersection of ker (M_i - s_i)^dim."""
    rows = []
    for M, s in zip(mats, shifts):
        A = [[M[r][c] - (s if r == c else F.zero) for c in range(dim)] for r in range(dim)]
        rows.extend(linalg.mat_pow(F, A, dim))
    return linalg.nullspace(F, rows, dim)


def _generalized_image(F, mats, shifts, dim):
    vecs = []
    for M, s in zip(mats, shifts):
        A = [[M[r][c] - (s if r == c else F.zero) for c in range(dim)] for r in range(dim)]
        vecs.extend(linalg.transpose(linalg.mat_pow(F, A, dim)))
    return linalg.column_basis(F, vecs) if vecs else []


def local_component(A: LocalAlgebra, p) -> LocalAlgebra:
    """The factor of A supported at the rational point p."""
    F = A.field
    pt = [F(c) for c in (p.coords if isinstance(p, RationalPoint) else p)]
    if len(pt) != A.nvars:
        raise ValueError("point has the wrong dimension")
    d = A.dim
    W = _generalized_kernel(F, A.xmat, pt, d)
    if not W:
        raise NotAZero(f"{tuple(str(c) for c in pt)} is not a zero of the ideal")
    Wc = _generalized_image(F, A.xmat, pt, d)
    if len(W) + len(Wc) != d:
        raise DegenerateResult("generalized eigenspaces do not split the algebra")
    sub = LocalAlgebra(F, [], [], [], [], embedding=W, parent=A, _complement=Wc)
    # basis: projections e*m of the parent basis elements, first independent ones
    chosen, labels = [], []
    for i, m in enumerate(A.labels):
        e_i = [F.one if j == i else F.zero for j in range(d)]
        proj_coords = sub.project(e_i)
        vec = linalg.matvec(F, linalg.transpose(W), proj_coords)
        if linalg.rank(F, chosen + [vec]) > len(chosen):
            chosen.append(vec)
            labels.append(m)
        if len(chosen) == len(W):
            break
    sub.embedding = chosen
    xmat = [_restrict(F, chosen, M) for M in A.xmat]
    k = len(chosen)
    sub.labels = labels
    sub.xmat = xmat
    sub.op = [_mono_operator(F, xmat, m, k) for m in labels]
    sub.unit = sub.project(A.unit)
    return sub


def jacobian_element(f: PolynomialMap, Q: LocalAlgebra):
    return Q.element_of_polynomial(f.jacobian())


# ---------------------------------------------------------------- EKL

@dataclass(frozen=True)
class EtaChoice:
    index: int
    value: object

    def describe(self, labels):
        return f"eta = {self.value} * dual({mono_str(labels[self.index])})"


def default_eta(Q: LocalAlgebra, J):
    """Dual functional of the largest basis monomial in J, scaled so eta(J) = dim Q."""
    F = Q.field
    idx = max((i for i, c in enumerate(J) if not c.is_zero()), default=None)
    if idx is None:
        raise ZeroJacobianClass("the Jacobian vanishes in the local algebra")
    scale = F(Q.dim) / J[idx]
    values = [scale if i == idx else F.zero for i in range(Q.dim)]
    return values, EtaChoice(idx, scale)


def ekl_form(Q: LocalAlgebra, J, eta=None) -> BilinearForm:
    """Gram matrix (b_i, b_j) -> eta(b_i b_j)."""
    F = Q.field
    if F.characteristic and Q.dim % F.characteristic == 0:
        raise CharDividesDim(f"characteristic {F.characteristic} divides dim Q = {Q.dim}")
    J = [F(c) for c in J]
    if all(c.is_zero() for c in J):
        raise ZeroJacobianClass("the Jacobian vanishes in the local algebra")
    if eta is None:
        eta, _ = default_eta(Q, J)
    else:
        eta = [F(c) for c in eta]
        val = sum((a * b for a, b in zip(eta, J)), F.zero)
        if val != F(Q.dim):
            raise ValueError(f"eta(J) = {val}, expected {Q.dim}")
    n = Q.dim
    gram = [[F.zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            col = [row[j] for row in Q.op[i]]
            v = sum((a * b for a, b in zip(eta, col)), F.zero)
            gram[i][j] = gram[j][i] = v
    form = BilinearForm(F, tuple(map(tuple, gram)))
    if any(d.is_zero() for d in diagonalize(form).diagonal):
        raise DegenerateResult("EKL form is degenerate; the algebra is not Gorenstein-local")
    return form


def _as_map(f, field=None):
    if isinstance(f, PolynomialMap):
        return f
    return PolynomialMap(field or f[0].field, f)


def local_algebra_at(f: PolynomialMap, p):
    """(translated map, local algebra at the origin) for the zero p of f - f(p)."""
    g = f.translate(p.coords if isinstance(p, RationalPoint) else p)
    A = quotient_algebra(g)
    Q = local_component(A, [f.field.zero] * f.n)
    return g, Q


def local_degree(f, p, eta=None, with_details=False):
    """deg_p f: the EKL class at p of x -> f(x + p) - f(p)."""
    f = _as_map(f)
    g, Q = local_algebra_at(f, p)
    J = jacobian_element(g, Q)
    form = ekl_form(Q, J, eta)
    deg = gw_from_form(form)
    if with_details:
        chosen = default_eta(Q, J)[1] if eta is None else None
        return deg, {"algebra": Q, "jacobian": J, "form": form, "eta": chosen}
    return deg


def local_degree_at_closed_point(f, x: ClosedPoint):
    """Tr_{L/k} <J(x)> for an étale point with separable residue field L."""
    from .mwk import cohomological_transfer

    f = _as_map(f)
    L = x.field
    k = f.field
    if L == k:
        j = f.jacobian().evaluate([k(c) for c in x.coords])
        if j.is_zero():
            raise NotEtale("the Jacobian vanishes at the point")
        return GWElement(k, [j])
    if not is_separable_extension(L, k):
        raise InseparableResidueField(f"{L} is not separable over {k}")
    coords = [L(c) for c in x.coords]
    j = f.jacobian().evaluate(coords)
    if j.is_zero():
        raise NotEtale("the Jacobian vanishes at the point; the map is not étale there")
    return cohomological_transfer([j], k)


# ---------------------------------------------------------------- global degree

@dataclass
class FiberPiece:
    kind: str  # "rational" or "closed"
    dim: int
    point: object
    degree: GWElement


def _minpoly_factors(F, M):
    mu = linalg.minimal_polynomial(F, M)
    return upoly.factor(F, mu)


def _split(F, B, R, factors, idx, dim):
    pieces = []
    for g, mult in factors:
        G = linalg.poly_eval(F, g, R[idx])
        G = linalg.mat_pow(F, G, mult)
        ker = linalg.nullspace(F, G, dim)
        # ker is in local coords; map to the ambient space through B
        amb = [linalg.matvec(F, linalg.transpose(B), v) for v in ker]
        pieces.append(amb)
    return pieces


def _decompose(F, A):
    """Split A into pieces on which every x_i has a single irreducible minimal polynomial."""
    todo = [linalg.identity(F, A.dim)]
    done = []
    n = A.nvars
    while todo:
        B = todo.pop()
        k = len(B)
        R = [_restrict(F, B, M) for M in A.xmat]
        split = False
        for i in range(n):
            facs = _minpoly_factors(F, R[i])
            if len(facs) > 1:
                todo.extend(_split(F, B, R, facs, i, k))
                split = True
                break
        if not split:
            done.append((B, R))
    return done


def _linear_root(F, facs):
    if len(facs) == 1 and upoly.degree(facs[0][0]) == 1:
        return -facs[0][0][0]
    return None


def _closed_point(F, B, R, name="t"):
    """Residue field and coordinates of an étale piece, or None if it is not reduced."""
    k, n = len(B), len(R)
    limit = 2 * k * k + 2
    if F.characteristic:
        limit = min(limit, F.characteristic)
    for c in range(1, limit + 1):
        ell = linalg.zeros(F, k, k)
        w = F.one
        for Ri in R:
            ell = [[a + w * b for a, b in zip(r1, r2)] for r1, r2 in zip(ell, Ri)]
            w = w * F(c)
        facs = _minpoly_factors(F, ell)
        if len(facs) > 1:
            return ("split", ell, facs)
        g, mult = facs[0]
        if mult == 1 and upoly.degree(g) == k:
            L = extension(F, g, name)
            v = [F.one] + [F.zero] * (k - 1)
            kry = [v]
            for _ in range(k - 1):
                kry.append(linalg.matvec(F, ell, kry[-1]))
            kt = linalg.transpose(kry)
            coordsL = []
            for Ri in R:
                sol = linalg.solve(F, kt, [[x] for x in linalg.matvec(F, Ri, v)])
                coordsL.append(L([row[0] for row in sol]))
            return ("point", ClosedPoint(L, tuple(coordsL)), None)
        if n == 1:
            break
    return None


def global_degree_breakdown(f, y):
    """Local contributions over the fiber f^{-1}(y)."""
    f = _as_map(f)
    F = f.field
    yv = y.coords if isinstance(y, RationalPoint) else y
    g = f.minus(yv)
    A = quotient_algebra(g)
    out = []
    todo = _decompose(F, A)
    while todo:
        B, R = todo.pop()
        roots = []
        for Ri in R:
            roots.append(_linear_root(F, _minpoly_factors(F, Ri)))
        if all(r is not None for r in roots):
            pt = RationalPoint(tuple(roots))
            Q = local_component(A, list(roots))
            J = jacobian_element(g, Q)
            deg = gw_from_form(ekl_form(Q, J))
            out.append(FiberPiece("rational", Q.dim, pt, deg))
            continue
        res = _closed_point(F, B, R)
        if res is None:
            raise UnsupportedFiberPoint("a fiber point is irrational and not étale (non-reduced)")
        kind, a, b = res
        if kind == "split":
            k = len(B)
            for amb in _split(F, B, [a], b, 0, k):
                todo.append((amb, [_restrict(F, amb, M) for M in A.xmat]))
            continue
        point = a
        try:
            deg = local_degree_at_closed_point(f, point)
        except NotEtale as exc:
            raise UnsupportedFiberPoint(str(exc)) from exc
        out.append(FiberPiece("closed", len(B), point, deg))
    if sum(p.dim for p in out) != A.dim:
        raise DegenerateResult("fiber pieces do not add up to the algebra dimension")
    out.sort(key=lambda p: (p.kind != "rational", p.dim, str(p.point)))
    return out


def global_degree(f, y) -> GWElement:
    pieces = global_degree_breakdown(f, y)
    total = GWElement.zero(_as_map(f).field)
    for p in pieces:
        total = total + p.degree
    return total
