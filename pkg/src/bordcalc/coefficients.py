"""The unoriented bordism coefficient ring N_*.

N_* is polynomial over GF(2) on one generator a_d for every degree d >= 2
with d + 1 not a power of two. Even-degree generators are represented by
real projective spaces RP(d); an odd degree d = 2^r(2s+1) - 1 is
represented by the Dold manifold P(2^r - 1, s*2^r). The class rho(n) of
RP(n) is a_n for even n and 0 for odd n (odd projective spaces bound).

A CoefRing instance fixes the degree cap and owns the session-wide
variable table, so every ring built on top of it shares one stable term
ordering. Elements are GradedPoly values supported on the a_d variables.
"""

from .errors import CapacityError, ContractViolation
from .gf2 import GradedPoly, standard_table


def is_power_of_two(n):
    return n > 0 and n & (n - 1) == 0


def allowed_degrees(max_degree):
    """Generator degrees up to max_degree: d >= 2 with d+1 not a power of two."""
    return [d for d in range(2, max_degree + 1) if not is_power_of_two(d + 1)]


def dold_indices(d):
    """(m, n) with P(m, n) representing the odd generator degree d."""
    if d % 2 == 0 or is_power_of_two(d + 1):
        raise ContractViolation('%d is not an odd generator degree' % d)
    r = ((d + 1) & -(d + 1)).bit_length() - 1  # 2-adic valuation of d+1
    s = ((d + 1) >> r) >> 1
    return (2 ** r - 1, s * 2 ** r)


def generator_rep(d):
    """Representing manifold of a_d as a tag: ('RP', d) or ('Dold', m, n)."""
    if d % 2 == 0:
        return ('RP', d)
    return ('Dold',) + dold_indices(d)


class CoefRing:
    """N_* up to a degree cap, plus the shared variable table."""

    def __init__(self, max_degree=16, generator_degrees=None):
        if max_degree < 0:
            raise ContractViolation('max_degree must be nonnegative')
        self.max_degree = max_degree
        if generator_degrees is None:
            generator_degrees = allowed_degrees(max_degree)
        else:
            generator_degrees = sorted(generator_degrees)
            for d in generator_degrees:
                if d < 2 or is_power_of_two(d + 1):
                    raise ContractViolation('%d is not a polynomial generator degree' % d)
            if generator_degrees and generator_degrees[-1] > max_degree:
                raise CapacityError('generator degree %d exceeds cap %d'
                                    % (generator_degrees[-1], max_degree))
        self.generator_degrees = tuple(generator_degrees)
        self.table = standard_table(self.generator_degrees, max_degree)
        self._a_names = {d: 'a%d' % d for d in self.generator_degrees}
        self._mono_cache = {}

    def zero(self):
        return GradedPoly.zero(self.table)

    def one(self):
        return GradedPoly.one(self.table)

    def a(self, d):
        """The generator a_d."""
        if d not in self._a_names:
            if 2 <= d <= self.max_degree and not is_power_of_two(d + 1):
                raise ContractViolation('a%d is not a generator of this ring' % d)
            if d > self.max_degree:
                raise CapacityError('a%d exceeds the degree cap %d' % (d, self.max_degree))
            raise ContractViolation('there is no generator in degree %d' % d)
        return GradedPoly.var(self.table, self._a_names[d])

    def rho(self, n):
        """Class of RP(n): a_n for even n, 0 for odd n."""
        if n <= 0:
            raise ContractViolation('rho is defined for n >= 1')
        if n % 2 == 1:
            return self.zero()
        if n > self.max_degree:
            raise CapacityError('rho(%d) exceeds the degree cap %d' % (n, self.max_degree))
        return self.a(n)

    def monomials_of_degree(self, d):
        """All monomials of N_d in a fixed order, largest generators first."""
        if d < 0:
            return []
        if d > self.max_degree:
            raise CapacityError('degree %d exceeds the cap %d' % (d, self.max_degree))
        if d not in self._mono_cache:
            gens = sorted(self.generator_degrees, reverse=True)
            out = []

            def rec(remaining, start, exps):
                if remaining == 0:
                    mono = tuple(sorted((self.table.index(self._a_names[g]), k)
                                        for g, k in exps.items()))
                    out.append(GradedPoly(self.table, (mono,)))
                    return
                for idx in range(start, len(gens)):
                    g = gens[idx]
                    if g <= remaining:
                        exps[g] = exps.get(g, 0) + 1
                        rec(remaining - g, idx, exps)
                        exps[g] -= 1
                        if not exps[g]:
                            del exps[g]

            rec(d, 0, {})
            self._mono_cache[d] = out
        return list(self._mono_cache[d])

    def rank(self, d):
        """GF(2) dimension of N_d."""
        return len(self.monomials_of_degree(d))

    def is_coefficient(self, poly):
        """True when poly is supported on the a_d variables only."""
        return poly.uses_only(self._a_names.values())

    def mono_degrees(self, poly):
        """Generator degrees, with multiplicity, of a single-monomial element."""
        if len(poly.terms) != 1:
            raise ContractViolation('expected a single monomial')
        by_name = {name: d for d, name in self._a_names.items()}
        out = []
        for idx, exp in next(iter(poly.terms)):
            name = self.table.names[idx]
            if name not in by_name:
                raise ContractViolation('monomial uses %s, not a generator' % name)
            out.extend([by_name[name]] * exp)
        return sorted(out, reverse=True)
