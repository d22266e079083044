"""The geometric side: manifold expressions, the bundle algebra, and delta.

Manifold expressions name closed manifolds with involution built from the
projectivizations P(n) = P(n*tau + sigma), the twisted circle construction
gamma(M) = M x_{Z/2} S^1, trivial-action classes, antipodal spheres, and
finite products.

phi sends an expression to the bundle algebra N_*[b_1, b_2, ...], where
b_i records the class of (RP(i-1), tautological line) and the grading is
by total-space dimension (b_i has degree i). The dictionary substitution
b_i -> c_{i-1} e^{-1} carries bundle classes to the Laurent model, where
they agree with the localization of the point classes.

delta is the boundary map to the free N_* module on classes s_0, s_1, ...
(s_j has degree j, and a degree-d bundle class lands in degree d - 1). On
a monomial b_{i_1} ... b_{i_r} it is computed geometrically: form the
projectivization of the corresponding sum of lines over
RP(i_1 - 1) x ... x RP(i_r - 1) and identify the resulting manifold with
its tautological class in N_*(BO(1)) by Stiefel-Whitney numbers.
"""

from dataclasses import dataclass

from .charnum import CohomClass, RP, ProjBundle, Product, identify_in_n, identify_in_nbo1
from .errors import ContractViolation
from .gf2 import GradedPoly, mono_mul


@dataclass(frozen=True)
class Proj:
    """P(n*tau + sigma), dimension n."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ContractViolation('Proj(n) needs n >= 1')

    @property
    def dim(self):
        return self.n


@dataclass(frozen=True)
class GammaOf:
    """The twisted circle gamma(M) = M x_{Z/2} S^1."""

    inner: object

    @property
    def dim(self):
        return 1 + self.inner.dim


@dataclass(frozen=True)
class ProductOf:
    """A finite product of expressions."""

    factors: tuple

    def __post_init__(self):
        if not self.factors:
            raise ContractViolation('empty product')

    @property
    def dim(self):
        return sum(f.dim for f in self.factors)


@dataclass(frozen=True)
class Trivial:
    """A coefficient class with the trivial involution."""

    coef: GradedPoly

    @property
    def dim(self):
        d = self.coef.degree()
        return 0 if d is None else d


@dataclass(frozen=True)
class AntipodalSphere:
    """S^j with the antipodal involution."""

    j: int

    def __post_init__(self):
        if self.j < 0:
            raise ContractViolation('AntipodalSphere(j) needs j >= 0')

    @property
    def dim(self):
        return self.j


def gamma_depth(expr):
    """Deepest nesting of the twisted circle construction in an expression."""
    if isinstance(expr, GammaOf):
        return 1 + gamma_depth(expr.inner)
    if isinstance(expr, ProductOf):
        return max((gamma_depth(f) for f in expr.factors), default=0)
    return 0


class FreeBZ2Elem:
    """An element of the free N_* module on s_0, s_1, ..."""

    __slots__ = ('table', 'parts')

    def __init__(self, table, parts=()):
        parts = dict(parts)
        for j in parts:
            if j < 0:
                raise ContractViolation('module components are indexed j >= 0')
        self.table = table
        self.parts = {j: p for j, p in sorted(parts.items()) if p}

    def __add__(self, other):
        if not isinstance(other, FreeBZ2Elem) or other.table is not self.table:
            raise ContractViolation('operands live over different tables')
        keys = set(self.parts) | set(other.parts)
        zero = GradedPoly.zero(self.table)
        return FreeBZ2Elem(self.table, {
            j: self.parts.get(j, zero) + other.parts.get(j, zero) for j in keys})

    def scale(self, poly):
        """Multiply every component by a coefficient polynomial."""
        return FreeBZ2Elem(self.table, {j: poly * p for j, p in self.parts.items()})

    def support(self):
        """The set of keys (j, monomial) carrying a nonzero bit."""
        return frozenset((j, m) for j, p in self.parts.items() for m in p.terms)

    def __eq__(self, other):
        return (isinstance(other, FreeBZ2Elem) and self.table is other.table
                and self.parts == other.parts)

    def __hash__(self):
        return hash(tuple(sorted((j, p.terms) for j, p in self.parts.items())))

    def __bool__(self):
        return bool(self.parts)

    def to_text(self):
        if not self.parts:
            return '0'
        out = []
        for j, poly in self.parts.items():
            text = poly.to_text()
            if text == '1':
                out.append('s%d' % j)
            elif len(poly) == 1:
                out.append('%s*s%d' % (text, j))
            else:
                out.append('(%s)*s%d' % (text, j))
        return ' + '.join(out)

    def __repr__(self):
        return self.to_text()


class Geometry:
    """phi, delta, and the point-class comparison for manifold expressions."""

    def __init__(self, mo):
        self.mo = mo
        self.coef = mo.coef
        self.laurent = mo.laurent
        self.table = mo.table
        self._b_names = {}
        for i in range(1, self.coef.max_degree + 2):
            self._b_names[i] = 'b%d' % i
        self._dict_map = None
        self._delta_cache = {}
        self._torus_cache = {}

    # --- the bundle algebra -----------------------------------------------

    def b(self, i):
        """The bundle generator b_i, the class of (RP(i-1), tautological line)."""
        if i < 1:
            raise ContractViolation('b_i needs i >= 1')
        if i > self.coef.max_degree + 1:
            raise ContractViolation('b%d exceeds the degree cap' % i)
        return GradedPoly.var(self.table, self._b_names[i])

    def is_bundle(self, poly):
        """True when poly is supported on the a_d and b_i variables."""
        names = set(self._b_names.values()) | set(self.coef._a_names.values())
        return poly.uses_only(names)

    def bundle_monomials(self, d):
        """All bundle-algebra monomials of degree d, coefficient included."""
        out = []
        for v in range(d + 1):
            for parts in _partitions_upto(d - v, self.coef.max_degree + 1):
                bpart = {}
                for i in parts:
                    bpart[i] = bpart.get(i, 0) + 1
                bmono = tuple(sorted(
                    (self.table.index(self._b_names[i]), k)
                    for i, k in bpart.items()))
                for mu in self.coef.monomials_of_degree(v):
                    out.append(GradedPoly(
                        self.table, (mono_mul(next(iter(mu.terms)), bmono),)))
        return out

    # --- the maps -----------------------------------------------------------

    def phi(self, expr):
        """Image in the bundle algebra."""
        if isinstance(expr, Proj):
            return self.b(expr.n) + self.b(1) ** expr.n
        if isinstance(expr, GammaOf):
            return self.b(1) * (self.underlying(expr.inner) + self.phi(expr.inner))
        if isinstance(expr, ProductOf):
            acc = GradedPoly.one(self.table)
            for f in expr.factors:
                acc = acc * self.phi(f)
            return acc
        if isinstance(expr, Trivial):
            return expr.coef
        if isinstance(expr, AntipodalSphere):
            return GradedPoly.zero(self.table)
        raise ContractViolation('not a manifold expression: %r' % (expr,))

    def underlying(self, expr):
        """Class of the underlying manifold in N_*, forgetting the action."""
        if isinstance(expr, Proj):
            return self.coef.rho(expr.n)
        if isinstance(expr, GammaOf):
            # gamma(M) fibers over the circle, so it bounds
            return GradedPoly.zero(self.table)
        if isinstance(expr, ProductOf):
            acc = GradedPoly.one(self.table)
            for f in expr.factors:
                acc = acc * self.underlying(f)
            return acc
        if isinstance(expr, Trivial):
            return expr.coef
        if isinstance(expr, AntipodalSphere):
            # spheres double-cover RP(j), which carries all their classes
            return GradedPoly.zero(self.table)
        raise ContractViolation('not a manifold expression: %r' % (expr,))

    def pt_class(self, expr):
        """The bordism class as a presentation."""
        if isinstance(expr, Proj):
            return self.mo.X(expr.n)
        if isinstance(expr, GammaOf):
            return self.mo.gamma(self.pt_class(expr.inner))
        if isinstance(expr, ProductOf):
            acc = self.mo.one()
            for f in expr.factors:
                acc = acc * self.pt_class(f)
            return acc
        if isinstance(expr, Trivial):
            return self.mo.iota(expr.coef)
        if isinstance(expr, AntipodalSphere):
            # free actions localize to zero
            return self.mo.zero()
        raise ContractViolation('not a manifold expression: %r' % (expr,))

    def eta(self, expr):
        """The obstruction class of an expression; zero on this catalog."""
        self.pt_class(expr)
        return self.mo.zero()

    def dictionary(self, poly):
        """Translate bundle classes to the Laurent model, b_i -> c_{i-1} e^{-1}."""
        if not self.is_bundle(poly):
            raise ContractViolation('dictionary takes bundle-algebra elements')
        if self._dict_map is None:
            L = self.laurent
            self._dict_map = {
                name: L.c(i - 1) * L.e(-1) for i, name in self._b_names.items()}
        return poly.substitute(self._dict_map)

    def delta(self, poly):
        """Boundary to the free module on s_0, s_1, ... by projectivization."""
        if not self.is_bundle(poly):
            raise ContractViolation('delta takes bundle-algebra elements')
        b_index = {self.table.index(name): i for i, name in self._b_names.items()}
        acc = FreeBZ2Elem(self.table)
        for mono in poly.terms:
            apart = []
            bmult = []
            for idx, exp in mono:
                i = b_index.get(idx)
                if i is None:
                    apart.append((idx, exp))
                else:
                    bmult.extend([i] * exp)
            if not bmult:
                continue
            expansion = self._delta_monomial(tuple(sorted(bmult)))
            acc = acc + expansion.scale(GradedPoly(self.table, (tuple(apart),)))
        return acc

    def _delta_monomial(self, bmult):
        if bmult not in self._delta_cache:
            base = Product([RP(i - 1) for i in bmult])
            lines = [base.factor_gen(pos, 'u') for pos in range(1, len(bmult) + 1)]
            pb = ProjBundle(base, lines)
            parts = identify_in_nbo1(pb, pb.fiber_class(), self.coef)
            self._delta_cache[bmult] = FreeBZ2Elem(self.table, parts)
        return self._delta_cache[bmult]

    # --- the mapping torus, computed instead of assumed ----------------------

    def torus_class(self, expr):
        """Class in N_* of the underlying mapping torus of gamma(expr).

        Removing a tubular neighborhood of the fixed set and quotienting
        shows any closed involution is bordant to the projectivizations
        P(nu + R) of its fixed data, so the torus gamma(M), whose fixed set
        is M with a trivial normal line plus the fixed set of M thickened
        by a line, has underlying class sum of P(nu_F + R^2) over the fixed
        components of M. The components are read off exact_phi(expr).
        """
        b_index = {self.table.index(name): i for i, name in self._b_names.items()}
        acc = GradedPoly.zero(self.table)
        for mono in self.exact_phi(expr).terms:
            apart = []
            bmult = []
            for idx, exp in mono:
                i = b_index.get(idx)
                if i is None:
                    apart.append((idx, exp))
                else:
                    bmult.extend([i] * exp)
            if not bmult:
                # a rank-0 component contributes F x RP(1), which bounds
                continue
            cls = self._torus_monomial(tuple(sorted(bmult)))
            acc = acc + GradedPoly(self.table, (tuple(apart),)) * cls
        return acc

    def _torus_monomial(self, bmult):
        if bmult not in self._torus_cache:
            base = Product([RP(i - 1) for i in bmult])
            lines = [base.factor_gen(pos, 'u') for pos in range(1, len(bmult) + 1)]
            lines += [CohomClass.zero(base), CohomClass.zero(base)]
            self._torus_cache[bmult] = identify_in_n(ProjBundle(base, lines), self.coef)
        return self._torus_cache[bmult]

    def exact_underlying(self, expr):
        """underlying, but with each gamma's mapping torus computed honestly."""
        if isinstance(expr, GammaOf):
            return self.torus_class(expr.inner)
        if isinstance(expr, ProductOf):
            acc = GradedPoly.one(self.table)
            for f in expr.factors:
                acc = acc * self.exact_underlying(f)
            return acc
        return self.underlying(expr)

    def exact_phi(self, expr):
        """phi with computed mapping-torus classes in place of the zero rule.

        Agrees with phi whenever no gamma is applied to a manifold whose
        own mapping torus fails to bound; delta kills its image exactly.
        """
        if isinstance(expr, GammaOf):
            return self.b(1) * (self.exact_underlying(expr.inner)
                                + self.exact_phi(expr.inner))
        if isinstance(expr, ProductOf):
            acc = GradedPoly.one(self.table)
            for f in expr.factors:
                acc = acc * self.exact_phi(f)
            return acc
        return self.phi(expr)

    # --- catalogs -------------------------------------------------------------

    def manifold_for_basis(self, fm):
        """An expression whose point class is the given e-free basis monomial."""
        if fm.epow:
            raise ContractViolation('basis monomial carries an e power')
        factors = []
        if fm.coef:
            factors.append(Trivial(GradedPoly(self.table, (fm.coef,))))
        for i, n in fm.gammas:
            expr = Proj(n)
            for _ in range(i):
                expr = GammaOf(expr)
            factors.append(expr)
        if not factors:
            return Trivial(GradedPoly.one(self.table))
        if len(factors) == 1:
            return factors[0]
        return ProductOf(tuple(factors))

    def catalog_expressions(self, max_dim):
        """A deterministic catalog of expressions of dimension <= max_dim."""
        out = []
        for d in range(max_dim + 1):
            for mu in self.coef.monomials_of_degree(d):
                out.append(Trivial(mu))
            if d >= 1:
                out.append(Proj(d))
            for n in range(2, d):
                expr = Proj(n)
                for _ in range(d - n):
                    expr = GammaOf(expr)
                out.append(expr)
            for n1 in range(1, d + 1):
                n2 = d - n1
                if n2 < n1:
                    break
                out.append(ProductOf((Proj(n1), Proj(n2))))
            for n in range(2, d - 1):
                m = d - 1 - n
                if m >= 1:
                    out.append(ProductOf((GammaOf(Proj(n)), Proj(m))))
            for v in range(2, d):
                for mu in self.coef.monomials_of_degree(v):
                    out.append(ProductOf((Trivial(mu), Proj(d - v))))
            out.append(AntipodalSphere(d))
        for v in (2, 4):
            if v + 1 <= max_dim:
                out.append(GammaOf(Trivial(self.coef.a(v))))
        return out


def _partitions_upto(total, max_part):
    out = []

    def rec(rem, cap, cur):
        if rem == 0:
            out.append(tuple(cur))
            return
        for p in range(min(cap, rem), 0, -1):
            cur.append(p)
            rec(rem - p, p, cur)
            cur.pop()

    if total >= 0:
        rec(total, max_part, [])
    return out
