"""Sparse polynomials over GF(2) with integer-graded variables.

A polynomial is a finite set of monomials; a monomial that appears in the
set has coefficient 1, so addition is symmetric difference and p + p = 0
needs no bookkeeping. Variables live in a VarTable which assigns each one
a nonzero integer degree; exactly one variable per table may be flagged
invertible and is the only one allowed to carry negative exponents.

A monomial is a sorted tuple of (variable index, exponent) pairs with zero
exponents dropped, so monomials are hashable and compare cheaply. The
canonical text form joins terms with " + ", each term being the "*"-joined
"var^exp" factors with exponent 1 omitted and the invertible variable
printed last, for example "c1*e^-1 + e^-2". Terms are ordered by exponent
of the invertible variable descending, then by the exponents of the
remaining variables in table order, descending.

Linear algebra (rank, subset solving) works on Python integer bitmasks,
one bit per monomial, with the pivot order fixed by the term ordering, so
results are exact and deterministic.
"""

from .errors import ContractViolation

MONO_ONE = ()


class VarTable:
    """Append-only ordered table of graded variables.

    Appending never reorders existing entries, so monomial orderings and
    canonical text stay stable for the life of a session.
    """

    __slots__ = ('names', 'degrees', 'invertible', '_index')

    def __init__(self):
        self.names = []
        self.degrees = []
        self.invertible = None  # index of the invertible variable, if any
        self._index = {}

    def add(self, name, degree, invertible=False):
        """Append a variable and return its index."""
        if name in self._index:
            raise ContractViolation('duplicate variable %r' % name)
        if degree == 0:
            raise ContractViolation('variable %r must have nonzero degree' % name)
        if invertible and self.invertible is not None:
            raise ContractViolation('table already has an invertible variable')
        idx = len(self.names)
        self._index[name] = idx
        self.names.append(name)
        self.degrees.append(degree)
        if invertible:
            self.invertible = idx
        return idx

    def index(self, name):
        """Index of a variable; KeyError if absent."""
        return self._index[name]

    def __contains__(self, name):
        return name in self._index

    def __len__(self):
        return len(self.names)


def mono_mul(m1, m2):
    """Product of two exponent tuples."""
    if not m1:
        return m2
    if not m2:
        return m1
    exps = dict(m1)
    for i, x in m2:
        y = exps.get(i, 0) + x
        if y:
            exps[i] = y
        else:
            del exps[i]
    return tuple(sorted(exps.items()))


def mono_degree(table, m):
    """Total degree of an exponent tuple."""
    deg = table.degrees
    return sum(x * deg[i] for i, x in m)


def mono_key(table, m):
    """Sort key placing the leading term first under the term ordering."""
    exps = [0] * len(table)
    for i, x in m:
        exps[i] = x
    inv = table.invertible
    einv = exps[inv] if inv is not None else 0
    rest = tuple(-exps[i] for i in range(len(table)) if i != inv)
    return (-einv, rest)


def mono_text(table, m):
    """Canonical text of one exponent tuple."""
    if not m:
        return '1'
    inv = table.invertible
    head = [(i, x) for i, x in m if i != inv]
    tail = [(i, x) for i, x in m if i == inv]
    parts = []
    for i, x in head + tail:
        name = table.names[i]
        parts.append(name if x == 1 else '%s^%d' % (name, x))
    return '*'.join(parts)


class GradedPoly:
    """A set of monomials over a shared VarTable, coefficients implicitly 1."""

    __slots__ = ('table', 'terms')

    def __init__(self, table, terms=()):
        self.table = table
        self.terms = terms if isinstance(terms, frozenset) else frozenset(terms)

    @classmethod
    def zero(cls, table):
        """The zero polynomial."""
        return cls(table)

    @classmethod
    def one(cls, table):
        """The unit polynomial."""
        return cls(table, (MONO_ONE,))

    @classmethod
    def var(cls, table, name, exp=1):
        """A single variable raised to exp (invertible variable only for exp < 0)."""
        idx = table.index(name)
        if exp == 0:
            return cls.one(table)
        if exp < 0 and idx != table.invertible:
            raise ContractViolation('%s is not invertible' % name)
        return cls(table, (((idx, exp),),))

    def _check_peer(self, other):
        if not isinstance(other, GradedPoly):
            raise ContractViolation('expected a polynomial, got %r' % (other,))
        if other.table is not self.table:
            raise ContractViolation('operands use different variable tables')

    def __add__(self, other):
        self._check_peer(other)
        return GradedPoly(self.table, self.terms ^ other.terms)

    __sub__ = __add__  # characteristic 2

    def __mul__(self, other):
        self._check_peer(other)
        acc = {}
        for m1 in self.terms:
            for m2 in other.terms:
                m = mono_mul(m1, m2)
                acc[m] = not acc.get(m, False)
        return GradedPoly(self.table, frozenset(m for m, keep in acc.items() if keep))

    def __pow__(self, n):
        if n < 0:
            raise ContractViolation('polynomial powers must be nonnegative')
        result = GradedPoly.one(self.table)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        return (isinstance(other, GradedPoly) and self.table is other.table
                and self.terms == other.terms)

    def __hash__(self):
        return hash(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return self.to_text()

    def homogeneous(self):
        """True when all terms share one degree (vacuously for zero)."""
        return len({mono_degree(self.table, m) for m in self.terms}) <= 1

    def degree(self):
        """Degree of a homogeneous polynomial; None for zero."""
        degs = {mono_degree(self.table, m) for m in self.terms}
        if not degs:
            return None
        if len(degs) > 1:
            raise ContractViolation('polynomial is not homogeneous')
        return degs.pop()

    def degree_decompose(self):
        """Split into homogeneous pieces, as a degree -> polynomial map."""
        pieces = {}
        for m in self.terms:
            pieces.setdefault(mono_degree(self.table, m), set()).add(m)
        return {d: GradedPoly(self.table, ms) for d, ms in sorted(pieces.items())}

    def inv_exponents(self):
        """Exponents of the invertible variable across terms (0 when absent)."""
        inv = self.table.invertible
        out = []
        for m in self.terms:
            out.append(next((x for i, x in m if i == inv), 0))
        return out

    def min_inv_exp(self):
        exps = self.inv_exponents()
        return min(exps) if exps else None

    def max_inv_exp(self):
        exps = self.inv_exponents()
        return max(exps) if exps else None

    def support(self):
        """Names of the variables that actually occur."""
        names = self.table.names
        return {names[i] for m in self.terms for i, _ in m}

    def uses_only(self, names):
        """True when every occurring variable is in names."""
        return self.support() <= set(names)

    def substitute(self, mapping):
        """Replace variables by polynomials; unmapped variables pass through.

        Mapped variables must occur with nonnegative exponents only.
        """
        table = self.table
        idx_map = {table.index(name): poly for name, poly in mapping.items()}
        for poly in idx_map.values():
            self._check_peer(poly)
        powers = {}

        def power(i, x):
            if x < 0:
                raise ContractViolation('cannot substitute into a negative power')
            if (i, x) not in powers:
                powers[(i, x)] = idx_map[i] ** x
            return powers[(i, x)]

        acc = GradedPoly.zero(table)
        for m in self.terms:
            kept = tuple((i, x) for i, x in m if i not in idx_map)
            piece = GradedPoly(table, (kept,))
            for i, x in m:
                if i in idx_map:
                    piece = piece * power(i, x)
            acc = acc + piece
        return acc

    def to_text(self):
        """Canonical text form."""
        if not self.terms:
            return '0'
        key = lambda m: mono_key(self.table, m)
        return ' + '.join(mono_text(self.table, m) for m in sorted(self.terms, key=key))


def standard_table(generator_degrees, max_degree):
    """The session-wide alphabet, in a fixed order.

    Coefficient generators a_d come first, then stable classes c_j, the
    projective classes X_n, the bundle classes b_i, and finally the Euler
    class e of degree -1, the unique invertible variable. Ranges are sized
    so that c_j -> e*X_{j+1} + e^-j and b_i -> c_{i-1}*e^-1 never fall off
    the table.
    """
    table = VarTable()
    for d in generator_degrees:
        table.add('a%d' % d, d)
    for j in range(1, max_degree + 1):
        table.add('c%d' % j, j)
    for n in range(2, max_degree + 2):
        table.add('X%d' % n, n)
    for i in range(1, max_degree + 2):
        table.add('b%d' % i, i)
    table.add('e', -1, invertible=True)
    return table


def _reduce_mask(mask, combo, pivots):
    while mask:
        b = mask.bit_length() - 1
        if b not in pivots:
            break
        pm, pc = pivots[b]
        mask ^= pm
        combo ^= pc
    return mask, combo


def _eliminate(masks):
    # pivots: leading bit -> (row mask, combination of input rows)
    pivots = {}
    for r, mask in enumerate(masks):
        mask, combo = _reduce_mask(mask, 1 << r, pivots)
        if mask:
            pivots[mask.bit_length() - 1] = (mask, combo)
    return pivots


def _masks(rows, extra, key):
    universe = sorted(frozenset().union(extra, *rows), key=key)
    # universe[0] is the leading monomial, so give it the highest bit
    pos = {m: len(universe) - 1 - i for i, m in enumerate(universe)}
    return [sum(1 << pos[m] for m in row) for row in rows], \
        sum(1 << pos[m] for m in extra)


def rank_sets(rows, key):
    """GF(2) rank of a list of finite sets, columns ordered by key."""
    masks, _ = _masks(rows, frozenset(), key)
    return len(_eliminate(masks))


def solve_sets(rows, target, key):
    """0/1 flags with xor of the flagged sets equal to target, or None.

    Deterministic: rows are processed in the given order and pivots follow
    the column ordering induced by key.
    """
    masks, tmask = _masks(rows, target, key)
    pivots = _eliminate(masks)
    tmask, combo = _reduce_mask(tmask, 0, pivots)
    if tmask:
        return None
    return [(combo >> r) & 1 for r in range(len(rows))]


def _common_table(polys):
    tables = {p.table for p in polys}
    if len(tables) > 1:
        raise ContractViolation('polynomials use different variable tables')
    return tables.pop() if tables else None


def _check_same_degree(polys):
    degs = {p.degree() for p in polys if p}
    if len(degs) > 1:
        raise ContractViolation('inputs are not homogeneous of one degree')


def poly_rank(vectors):
    """Rank of a family of homogeneous polynomials of one degree."""
    table = _common_table(vectors)
    if table is None:
        return 0
    _check_same_degree(vectors)
    return rank_sets([v.terms for v in vectors], key=lambda m: mono_key(table, m))


def solve_gf2(vectors, target):
    """Expand target over a family of vectors, all homogeneous of one degree.

    Returns a list of 0/1 selection flags, or None when target is outside
    the span.
    """
    table = _common_table(list(vectors) + [target])
    _check_same_degree(list(vectors) + [target])
    return solve_sets([v.terms for v in vectors], target.terms,
                      key=lambda m: mono_key(table, m))
