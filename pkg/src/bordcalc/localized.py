"""The localized equivariant bordism ring as a Laurent model.

Inverting the Euler class e (degree -1) frees the theory: the localized
ring is L = N_*[c_1, c_2, ...][e, e^-1] with deg c_j = j, where c_j is the
stable class of RP(j) with its tautological line and c_0 = 1. The class of
P(n*tau + sigma) localizes to

    loc_P(n) = c_{n-1}*e^-1 + e^-n,

one summand per fixed component: RP(n-1) with normal line (codimension 1)
and an isolated point with n-dimensional normal bundle, a codimension-k
component contributing its stable class times e^-k. In particular
loc_P(1) = e^-1 + e^-1 = 0.

A homogeneous element of degree d has every e-exponent >= -d, since the
e-free part of a term has nonnegative degree. Window bookkeeping below
makes that bound explicit for finite linear algebra.
"""

from .errors import CapacityError, ContractViolation
from .gf2 import GradedPoly, mono_key, poly_rank, solve_sets


class LaurentRing:
    """Laurent polynomials N_*[c_j][e, e^-1] over a coefficient ring."""

    def __init__(self, coef):
        self.coef = coef
        self.table = coef.table
        self.max_degree = coef.max_degree
        self._laurent_names = set(coef._a_names.values())
        self._laurent_names.update('c%d' % j for j in range(1, self.max_degree + 1))
        self._laurent_names.add('e')
        self._cleared_names = set(coef._a_names.values())
        self._cleared_names.update('X%d' % n for n in range(2, self.max_degree + 2))
        self._cleared_names.add('e')
        self._loc_cache = {}

    def zero(self):
        return GradedPoly.zero(self.table)

    def one(self):
        return GradedPoly.one(self.table)

    def e(self, k=1):
        """Euler class power e^k, any integer k."""
        return GradedPoly.var(self.table, 'e', k)

    def c(self, j):
        """Stable projective class c_j; c_0 = 1."""
        if j < 0:
            raise ContractViolation('c_j needs j >= 0')
        if j == 0:
            return self.one()
        if j > self.max_degree:
            raise CapacityError('c%d exceeds the degree cap %d' % (j, self.max_degree))
        return GradedPoly.var(self.table, 'c%d' % j)

    def X(self, n):
        """The symbol X_n used by cleared polynomials; X_1 = 0."""
        if n < 1:
            raise ContractViolation('X_n needs n >= 1')
        if n == 1:
            return self.zero()
        if n > self.max_degree + 1:
            raise CapacityError('X%d exceeds the degree cap %d' % (n, self.max_degree))
        return GradedPoly.var(self.table, 'X%d' % n)

    def loc_P(self, n):
        """Localization c_{n-1}*e^-1 + e^-n of the class of P(n*tau + sigma)."""
        if n < 1:
            raise ContractViolation('loc_P needs n >= 1')
        if n not in self._loc_cache:
            self._loc_cache[n] = self.c(n - 1) * self.e(-1) + self.e(-n)
        return self._loc_cache[n]

    def loc_euler(self):
        """Localization of the Euler class itself."""
        return self.e(1)

    def is_laurent(self, x):
        """True when x is supported on a_d, c_j and e only."""
        return x.uses_only(self._laurent_names)

    def _require_laurent(self, x, what='element'):
        if x.table is not self.table:
            raise ContractViolation('%s uses a foreign variable table' % what)
        if not self.is_laurent(x):
            raise ContractViolation('%s is not a Laurent element' % what)

    def clear_denominators(self, x):
        """Write e^N * x as a polynomial p in e and X_n over N_*.

        Negative e-powers are cleared first, then every c_j is replaced by
        e*X_{j+1} + e^-j (one pass suffices, the images contain no c's),
        then the remaining negative powers are cleared. Returns (N, p);
        evaluating p at X_n = loc_P(n) gives back e^N * x exactly.
        """
        self._require_laurent(x)
        if not x.homogeneous():
            raise ContractViolation('clear_denominators needs a homogeneous element')
        if not x:
            return 0, x
        n1 = max(0, -x.min_inv_exp())
        y = self.e(n1) * x if n1 else x
        cs = sorted(name for name in y.support() if name.startswith('c'))
        if cs:
            mapping = {}
            for name in cs:
                j = int(name[1:])
                mapping[name] = self.e(1) * self.X(j + 1) + self.e(-j)
            y = y.substitute(mapping)
        n2 = max(0, -y.min_inv_exp()) if y else 0
        p = self.e(n2) * y if n2 else y
        return n1 + n2, p

    def eval_cleared(self, p):
        """Evaluate a cleared polynomial at X_n = loc_P(n)."""
        if not p.uses_only(self._cleared_names):
            raise ContractViolation('not a polynomial in e, X_n over N_*')
        mapping = {name: self.loc_P(int(name[1:]))
                   for name in p.support() if name.startswith('X')}
        return p.substitute(mapping) if mapping else p


class Window:
    """A degree with an e-exponent range [t_min, t_max], t_min >= -degree."""

    __slots__ = ('degree', 't_min', 't_max')

    def __init__(self, degree, t_min, t_max):
        if t_min > t_max:
            raise ContractViolation('empty window')
        if t_min < -degree:
            raise ContractViolation('window reaches below e^%d, impossible in degree %d'
                                    % (-degree, degree))
        self.degree = degree
        self.t_min = t_min
        self.t_max = t_max

    def admits(self, x):
        """True when every term of x has its e-exponent inside the window."""
        if not x:
            return True
        return (x.min_inv_exp() >= self.t_min and x.max_inv_exp() <= self.t_max)

    def __repr__(self):
        return 'Window(degree=%d, e in [%d, %d])' % (self.degree, self.t_min, self.t_max)


class WindowBasis:
    """A finite family of window-compatible vectors with exact expansion."""

    def __init__(self, ring, window, images):
        self.ring = ring
        self.window = window
        self.images = list(images)
        for x in self.images:
            ring._require_laurent(x, 'image')
            if x and x.degree() != window.degree:
                raise ContractViolation('image degree %s does not match the window'
                                        % x.degree())
            if not window.admits(x):
                raise ContractViolation('image %s falls outside the window' % x)
        self.rank = poly_rank([x for x in self.images if x])

    def expand(self, target):
        """Selection flags expressing target over the images, or None."""
        self.ring._require_laurent(target, 'target')
        if target and target.degree() != self.window.degree:
            raise ContractViolation('target degree does not match the window')
        if not self.window.admits(target):
            raise ContractViolation('target falls outside the window')
        table = self.ring.table
        return solve_sets([x.terms for x in self.images], target.terms,
                          key=lambda m: mono_key(table, m))
