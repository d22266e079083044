"""The equivariant bordism ring, presented by generators and rewriting.

Elements are GF(2) sums of formal monomials

    (monomial in the a_d) * (product of factors G(i, n)) * e^k,

where G(0, n) is written X_n, the class of the projectivization
P(n*tau + sigma) (n >= 2; X_1 = 0 and never survives construction), e is
the Euler class of the sign representation (degree -1, k >= 0 here), and
G(i, n) = Gamma^i(X_n) for the operator Gamma characterized by

    e * Gamma(x) = x + xbar,      xbar = iota(alpha(x)),

alpha being the augmentation to N_* (forget the action, then take the
underlying class) and iota the trivial-action section. Multiplication by
e is injective, so Gamma is well defined.

normal_form rewrites onto the additive basis: monomials with no G(i >= 1)
factor (any e power), and e-free monomials with exactly one factor
G(i, j), i >= 1, whose other factors X_m all have m >= j. The rewrite
rules are the Gamma product formula read in both directions:

    e * G(i, n)        -> G(i-1, n) + [i = 1] rho(n)
    G(i, m) * G(j, n)  -> Gamma(G(i-1, m) * G(j, n)) + [i = 1] rho(m) G(j+1, n)
    G(j, n) * X_m      -> Gamma(G(j-1, n) * X_m)     + [j = 1] rho(n) G(1, m)   (m < n)

with inner products normalized before Gamma is applied. Each step drops
the measure (Gamma count, total Gamma weight, ordering violations)
lexicographically, and a fuel cap backs that argument up at runtime.
"""

from dataclasses import dataclass

from .errors import CapacityError, ContractViolation, FuelExhausted, NotDivisible
from .gf2 import GradedPoly, MONO_ONE, mono_degree, mono_mul, solve_gf2


@dataclass(frozen=True)
class FormalMonomial:
    """One monomial: coefficient exponents, G(i, n) factors, Euler power."""

    coef: tuple
    gammas: tuple
    epow: int

    def __post_init__(self):
        if self.epow < 0:
            raise ContractViolation('presentation monomials need e powers >= 0')
        for i, n in self.gammas:
            if i < 0 or n < 2:
                raise ContractViolation('bad factor G(%d, %d)' % (i, n))

    def gamma_factors(self):
        """The factors with i >= 1, in sorted order."""
        return [(i, n) for i, n in self.gammas if i >= 1]

    def x_indices(self):
        """Indices n of the plain X_n factors."""
        return [n for i, n in self.gammas if i == 0]

    def gamma_weight(self):
        return sum(i for i, _ in self.gammas)

    def is_basis(self, strict=False):
        """Basis shape: no G factor, or exactly one with the X's above it."""
        gs = self.gamma_factors()
        if not gs:
            return True
        if len(gs) > 1 or self.epow:
            return False
        j = gs[0][1]
        if strict:
            return all(m > j for m in self.x_indices())
        return all(m >= j for m in self.x_indices())

    def degree(self, table):
        return (mono_degree(table, self.coef)
                + sum(i + n for i, n in self.gammas) - self.epow)


def fm_mul(f1, f2):
    return FormalMonomial(mono_mul(f1.coef, f2.coef),
                          tuple(sorted(f1.gammas + f2.gammas)),
                          f1.epow + f2.epow)


def fm_key(fm):
    return (fm.gammas, fm.epow, fm.coef)


def rewrite_measure(fm):
    """(Gamma count, Gamma weight, ordering violations), the termination measure."""
    gs = fm.gamma_factors()
    xs = fm.x_indices()
    violations = sum(1 for _, j in gs for m in xs if m < j)
    return (len(gs), fm.gamma_weight(), violations)


class Presentation:
    """A GF(2) sum of formal monomials over a shared variable table."""

    __slots__ = ('table', 'monos')

    def __init__(self, table, monos=()):
        self.table = table
        self.monos = monos if isinstance(monos, frozenset) else frozenset(monos)

    def _check_peer(self, other):
        if not isinstance(other, Presentation) or other.table is not self.table:
            raise ContractViolation('operands are not presentations over one table')

    def __add__(self, other):
        self._check_peer(other)
        return Presentation(self.table, self.monos ^ other.monos)

    __sub__ = __add__

    def __mul__(self, other):
        self._check_peer(other)
        acc = {}
        for f1 in self.monos:
            for f2 in other.monos:
                f = fm_mul(f1, f2)
                acc[f] = not acc.get(f, False)
        return Presentation(self.table, frozenset(f for f, keep in acc.items() if keep))

    def __pow__(self, n):
        if n < 0:
            raise ContractViolation('presentation powers must be nonnegative')
        result = Presentation(self.table, (FormalMonomial(MONO_ONE, (), 0),))
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        return (isinstance(other, Presentation) and self.table is other.table
                and self.monos == other.monos)

    def __hash__(self):
        return hash(self.monos)

    def __bool__(self):
        return bool(self.monos)

    def __len__(self):
        return len(self.monos)

    def degree(self):
        """Degree of a homogeneous element; None for zero."""
        degs = {fm.degree(self.table) for fm in self.monos}
        if not degs:
            return None
        if len(degs) > 1:
            raise ContractViolation('element is not homogeneous')
        return degs.pop()

    def homogeneous(self):
        return len({fm.degree(self.table) for fm in self.monos}) <= 1

    def is_coefficient_only(self):
        """True when no monomial carries a G factor or an e power."""
        return all(not fm.gammas and not fm.epow for fm in self.monos)

    def coefficient(self):
        """The underlying N_* element of a coefficient-only presentation."""
        if not self.is_coefficient_only():
            raise ContractViolation('element has G factors or e powers')
        return GradedPoly(self.table, frozenset(fm.coef for fm in self.monos))

    def _factor_text(self, fm):
        from .gf2 import mono_text
        parts = []
        if fm.coef:
            parts.append(mono_text(self.table, fm.coef))
        for i, n in sorted(fm.gammas, key=lambda g: (-g[0], g[1])):
            parts.append('X%d' % n if i == 0 else 'G(%d,%d)' % (i, n))
        if fm.epow:
            parts.append('e' if fm.epow == 1 else 'e^%d' % fm.epow)
        return '*'.join(parts) if parts else '1'

    def to_text(self):
        """Canonical text form."""
        if not self.monos:
            return '0'
        monos = sorted(self.monos, key=fm_key, reverse=True)
        return ' + '.join(self._factor_text(fm) for fm in monos)

    def __repr__(self):
        return self.to_text()


class _Undecided:
    __slots__ = ()

    def __repr__(self):
        return 'Undecided'

    def __bool__(self):
        raise ContractViolation('Undecided is neither a member nor a non-member')


UNDECIDED = _Undecided()


class QuotientElem:
    """Image in the quotient by the geometric classes: sum of f_k * x_k, k >= 1.

    Components f_k live in N_*[X_n]; the class x_k is the image of e^k, so
    the k component of a degree-d element has degree d + k. Additive only.
    """

    __slots__ = ('table', 'parts')

    def __init__(self, table, parts=()):
        parts = dict(parts)
        for k in parts:
            if k < 1:
                raise ContractViolation('quotient components are indexed k >= 1')
        self.table = table
        self.parts = {k: p for k, p in sorted(parts.items()) if p}

    def __add__(self, other):
        if not isinstance(other, QuotientElem) or other.table is not self.table:
            raise ContractViolation('operands are not quotient elements over one table')
        keys = set(self.parts) | set(other.parts)
        zero = GradedPoly.zero(self.table)
        return QuotientElem(self.table, {
            k: self.parts.get(k, zero) + other.parts.get(k, zero) for k in keys})

    def __eq__(self, other):
        return (isinstance(other, QuotientElem) and self.table is other.table
                and self.parts == other.parts)

    def __hash__(self):
        return hash(tuple(sorted((k, p.terms) for k, p in self.parts.items())))

    def __bool__(self):
        return bool(self.parts)

    def to_text(self):
        if not self.parts:
            return '0'
        out = []
        for k, poly in self.parts.items():
            text = poly.to_text()
            if text == '1':
                out.append('x%d' % k)
            elif len(poly) == 1:
                out.append('%s*x%d' % (text, k))
            else:
                out.append('(%s)*x%d' % (text, k))
        return ' + '.join(out)

    def __repr__(self):
        return self.to_text()


class BordismRing:
    """Operations on presentations: augmentation, Gamma, normal form, membership."""

    def __init__(self, laurent, fuel=500000, slack_cap=4):
        self.laurent = laurent
        self.coef = laurent.coef
        self.table = laurent.table
        self.fuel = fuel
        self.slack_cap = slack_cap
        self._nf_cache = {}
        self._gamma_cache = {}

    # --- constructors ---------------------------------------------------

    def zero(self):
        return Presentation(self.table)

    def one(self):
        return Presentation(self.table, (FormalMonomial(MONO_ONE, (), 0),))

    def e(self, k=1):
        """Euler class power e^k, k >= 0."""
        if k < 0:
            raise ContractViolation('negative e powers live in the localized ring')
        return Presentation(self.table, (FormalMonomial(MONO_ONE, (), k),))

    def X(self, n):
        """The class of P(n*tau + sigma); X_1 = 0."""
        return self.G(0, n)

    def G(self, i, n):
        """Gamma^i(X_n); zero when n = 1."""
        if i < 0 or n < 1:
            raise ContractViolation('G(i, n) needs i >= 0 and n >= 1')
        if n > self.coef.max_degree + 1:
            raise CapacityError('X%d exceeds the degree cap %d' % (n, self.coef.max_degree))
        if n == 1:
            return self.zero()
        return Presentation(self.table, (FormalMonomial(MONO_ONE, ((i, n),), 0),))

    def iota(self, c):
        """Trivial-action section of alpha; c must be a coefficient element."""
        if c.table is not self.table:
            raise ContractViolation('coefficient uses a foreign variable table')
        if not self.coef.is_coefficient(c):
            raise ContractViolation('iota takes N_* elements only')
        return Presentation(self.table, (FormalMonomial(m, (), 0) for m in c.terms))

    def _coef_scale(self, x, c):
        # multiply a presentation by an N_* polynomial
        acc = {}
        for m in c.terms:
            for fm in x.monos:
                f = FormalMonomial(mono_mul(fm.coef, m), fm.gammas, fm.epow)
                acc[f] = not acc.get(f, False)
        return Presentation(self.table, frozenset(f for f, keep in acc.items() if keep))

    def _mono_scale(self, x, fm):
        return Presentation(self.table, frozenset(fm_mul(fm, g) for g in x.monos))

    def single(self, fm):
        """The presentation with one monomial."""
        return Presentation(self.table, (fm,))

    # --- the exact sequence maps ----------------------------------------

    def alpha(self, x):
        """Augmentation to N_*: e -> 0, X_n -> rho(n), G(i >= 1, n) -> 0."""
        acc = {}
        for fm in x.monos:
            if fm.epow:
                continue
            mono = fm.coef
            dead = False
            for i, n in fm.gammas:
                r = None if i >= 1 else self.coef.rho(n)
                if not r:
                    dead = True
                    break
                mono = mono_mul(mono, next(iter(r.terms)))
            if not dead:
                acc[mono] = not acc.get(mono, False)
        return GradedPoly(self.table, frozenset(m for m, keep in acc.items() if keep))

    def bar(self, x):
        """The trivial-action class of the underlying manifold, iota(alpha(x))."""
        return self.iota(self.alpha(x))

    def gamma(self, x):
        """The Gamma operator: the unique y with e*y = x + bar(x)."""
        acc = self.zero()
        for fm in x.monos:
            acc = acc + self._gamma_mono(fm)
        return acc

    def _gamma_mono(self, fm):
        if fm.epow:
            # x = e*z has bar(x) = 0 and e-multiplication is injective, so
            # Gamma(e*z) = z
            return self.single(FormalMonomial(fm.coef, fm.gammas, fm.epow - 1))
        gs = fm.gamma_factors()
        if gs:
            # split off a Gamma factor u: Gamma(u*v) = Gamma(u)*v since
            # bar(u) = 0
            i, n = min(gs)
            pool = list(fm.gammas)
            pool.remove((i, n))
            return self.single(FormalMonomial(
                fm.coef, tuple(sorted(pool + [(i + 1, n)])), 0))
        g = self._gamma_xlist(tuple(sorted(fm.x_indices())))
        return Presentation(self.table, frozenset(
            FormalMonomial(mono_mul(fm.coef, h.coef), h.gammas, h.epow)
            for h in g.monos))

    def _gamma_xlist(self, xs):
        # Gamma(X_{n1} * rest) = G(1, n1)*rest + rho(n1)*Gamma(rest),
        # always splitting at the smallest index
        if not xs:
            return self.zero()
        if xs not in self._gamma_cache:
            n, rest = xs[0], xs[1:]
            head = FormalMonomial(
                MONO_ONE, tuple(sorted([(1, n)] + [(0, m) for m in rest])), 0)
            acc = self.single(head)
            r = self.coef.rho(n)
            if r:
                acc = acc + self._coef_scale(self._gamma_xlist(rest), r)
            self._gamma_cache[xs] = acc
        return self._gamma_cache[xs]

    def divide_e(self, x):
        """The exact quotient x / e, which exists iff alpha(x) = 0."""
        c = self.alpha(x)
        if c:
            raise NotDivisible(c)
        return self.gamma(x)

    # --- normal form ------------------------------------------------------

    def normal_form(self, x, fuel=None):
        """Rewrite onto the additive basis; raises FuelExhausted when starved."""
        budget = [self.fuel if fuel is None else fuel]
        return self._nf_pres(x, budget)

    def _nf_pres(self, x, budget):
        acc = self.zero()
        for fm in x.monos:
            acc = acc + self._nf_mono(fm, budget)
        return acc

    def _nf_mono(self, fm, budget):
        cached = self._nf_cache.get(fm)
        if cached is not None:
            return cached
        if fm.is_basis():
            result = self.single(fm)
            self._nf_cache[fm] = result
            return result
        if budget[0] <= 0:
            raise FuelExhausted('rewrite fuel exhausted', stuck=fm)
        budget[0] -= 1
        gs = fm.gamma_factors()
        if fm.epow:
            result = self._rule_euler(fm, gs, budget)
        elif len(gs) >= 2:
            result = self._rule_pair(fm, gs, budget)
        else:
            result = self._rule_order(fm, gs, budget)
        self._nf_cache[fm] = result
        return result

    def _rule_euler(self, fm, gs, budget):
        # e*G(i, n) = G(i-1, n) + [i = 1] rho(n)
        i, n = min(gs)
        pool = list(fm.gammas)
        pool.remove((i, n))
        first = FormalMonomial(fm.coef, tuple(sorted(pool + [(i - 1, n)])), fm.epow - 1)
        acc = self._nf_mono(first, budget)
        if i == 1:
            r = self.coef.rho(n)
            if r:
                second = FormalMonomial(mono_mul(fm.coef, next(iter(r.terms))),
                                        tuple(pool), fm.epow - 1)
                acc = acc + self._nf_mono(second, budget)
        return acc

    def _rule_pair(self, fm, gs, budget):
        # G(i, m)G(j, n) = Gamma(G(i-1, m)G(j, n)) + [i = 1] rho(m) G(j+1, n)
        (i, m), (j, n) = gs[0], gs[1]
        pool = list(fm.gammas)
        pool.remove((i, m))
        pool.remove((j, n))
        rest = FormalMonomial(fm.coef, tuple(pool), 0)
        inner = FormalMonomial(MONO_ONE, tuple(sorted([(i - 1, m), (j, n)])), 0)
        g = self.gamma(self._nf_mono(inner, budget))
        acc = self._nf_pres(self._mono_scale(g, rest), budget)
        if i == 1:
            r = self.coef.rho(m)
            if r:
                second = FormalMonomial(mono_mul(fm.coef, next(iter(r.terms))),
                                        tuple(sorted(pool + [(j + 1, n)])), 0)
                acc = acc + self._nf_mono(second, budget)
        return acc

    def _rule_order(self, fm, gs, budget):
        # G(j, n)X_m = Gamma(G(j-1, n)X_m) + [j = 1] rho(n) G(1, m)  for m < n
        j, n = gs[0]
        m0 = min(m for m in fm.x_indices() if m < n)
        pool = list(fm.gammas)
        pool.remove((j, n))
        pool.remove((0, m0))
        rest = FormalMonomial(fm.coef, tuple(pool), 0)
        inner = FormalMonomial(MONO_ONE, tuple(sorted([(j - 1, n), (0, m0)])), 0)
        g = self.gamma(self._nf_mono(inner, budget))
        acc = self._nf_pres(self._mono_scale(g, rest), budget)
        if j == 1:
            r = self.coef.rho(n)
            if r:
                second = FormalMonomial(mono_mul(fm.coef, next(iter(r.terms))),
                                        tuple(sorted(pool + [(1, m0)])), 0)
                acc = acc + self._nf_mono(second, budget)
        return acc

    def complication(self, x):
        """Diagnostic count of e-Gamma coincidences, min(epow, Gamma weight) per term.

        One reading of an ambiguous statistic; reported for diagnostics only
        and never used by the termination argument.
        """
        return sum(min(fm.epow, fm.gamma_weight()) for fm in x.monos)

    # --- localization -----------------------------------------------------

    def localize(self, x):
        """Image in the Laurent model: X_n -> loc_P(n), G(i, n) -> e^-i(loc_P(n) + rho(n))."""
        L = self.laurent
        acc = GradedPoly.zero(self.table)
        for fm in x.monos:
            val = GradedPoly(self.table, (fm.coef,))
            if fm.epow:
                val = val * L.e(fm.epow)
            for i, n in fm.gammas:
                factor = L.loc_P(n)
                if i >= 1:
                    factor = (factor + self.coef.rho(n)) * L.e(-i)
                val = val * factor
            acc = acc + val
        return acc

    def is_geometric(self, x):
        """True when the normal form of x is free of e powers."""
        return all(fm.epow == 0 for fm in self.normal_form(x).monos)

    def quotient_reduce(self, x):
        """Image in the quotient by geometric classes, as a QuotientElem."""
        parts = {}
        for fm in self.normal_form(x).monos:
            if not fm.epow:
                continue
            mono = fm.coef
            for n in fm.x_indices():
                mono = mono_mul(mono, ((self.table.index('X%d' % n), 1),))
            bucket = parts.setdefault(fm.epow, set())
            bucket ^= {mono}
            parts[fm.epow] = bucket
        return QuotientElem(self.table, {
            k: GradedPoly(self.table, frozenset(ms)) for k, ms in parts.items()})

    def euler(self, m, k):
        """The class e^k on the m-th suspension leg: e^k when m = 0, else 0."""
        if m < 0 or k < 0:
            raise ContractViolation('euler needs m, k >= 0')
        if m >= 1:
            return self.zero()
        return self.e(k)

    # --- basis enumeration and membership ----------------------------------

    def _coef_monomials(self, d):
        return [next(iter(p.terms)) for p in self.coef.monomials_of_degree(d)]

    def basis_monomials(self, d, e_cap=None, strict=False):
        """Additive basis monomials of degree d with e powers capped.

        The default cap max(0, -d) + 4 makes the degree-(d+1) slice map
        into the degree-d slice under multiplication by e.
        """
        if e_cap is None:
            e_cap = max(0, -d) + 4
        out = []
        maxn = self.coef.max_degree + 1
        for k in range(e_cap + 1):
            content = d + k
            if content < 0:
                continue
            for v in range(content + 1):
                for parts in _partitions(content - v, 2, maxn):
                    for coef in self._coef_monomials(v):
                        out.append(FormalMonomial(
                            coef, tuple((0, n) for n in sorted(parts)), k))
        out.extend(self._type_b(d, strict))
        out.sort(key=fm_key)
        return out

    def basis_monomials_window(self, d, t_max, strict=False):
        """Basis monomials of degree d whose localization tops out at e^t_max."""
        out = []
        maxn = self.coef.max_degree + 1
        # type A: leading e-exponent is epow - (number of X factors)
        for s in range(t_max + d + 1):
            for v in range(s + 1):
                for parts in _partitions(s - v, 1, maxn - 1):
                    k = s + len(parts) - d
                    if k < 0:
                        continue
                    for coef in self._coef_monomials(v):
                        out.append(FormalMonomial(
                            coef, tuple((0, p + 1) for p in sorted(parts)), k))
        for fm in self._type_b(d, strict):
            (i, j), = fm.gamma_factors()
            lead = -i - len(fm.x_indices()) - (j % 2)
            if lead <= t_max:
                out.append(fm)
        out.sort(key=fm_key)
        return out

    def _type_b(self, d, strict):
        out = []
        maxn = self.coef.max_degree + 1
        for j in range(2, min(d - 1, maxn) + 1):
            for i in range(1, d - j + 1):
                rest = d - i - j
                low = j + 1 if strict else j
                for w in range(rest + 1):
                    for parts in _partitions(w, low, maxn):
                        for coef in self._coef_monomials(rest - w):
                            out.append(FormalMonomial(
                                coef,
                                tuple(sorted([(i, j)] + [(0, n) for n in parts])),
                                0))
        return out

    def member(self, target, slack=None):
        """Preimage of a Laurent class under localization, if one exists.

        Escalates the window slack from 0 to the cap. Returns the basis
        expansion when two consecutive slacks agree, None when no slack up
        to the cap admits a solution, and UNDECIDED when only the last one
        does.
        """
        cap = self.slack_cap if slack is None else slack
        if cap < 0:
            raise ContractViolation('slack must be nonnegative')
        self.laurent._require_laurent(target, 'membership target')
        if not target:
            return self.zero()
        if not target.homogeneous():
            raise ContractViolation('membership target must be homogeneous')
        d = target.degree()
        t0 = target.max_inv_exp()

        def attempt(s):
            cands = self.basis_monomials_window(d, t0 + s)
            if not cands:
                return None
            images = [self.localize(self.single(fm)) for fm in cands]
            flags = solve_gf2(images, target)
            if flags is None:
                return None
            return frozenset(fm for fm, f in zip(cands, flags) if f)

        previous = attempt(0)
        for s in range(1, cap + 1):
            current = attempt(s)
            if previous is not None and previous == current:
                return Presentation(self.table, previous)
            previous = current
        return UNDECIDED if previous is not None else None


def _partitions(total, min_part, max_part):
    """Partitions of total into parts in [min_part, max_part], descending tuples."""
    out = []

    def rec(rem, cap, cur):
        if rem == 0:
            out.append(tuple(cur))
            return
        for p in range(min(cap, rem), min_part - 1, -1):
            cur.append(p)
            rec(rem - p, p, cur)
            cur.pop()

    if total >= 0:
        rec(total, max_part, [])
    return out
