"""Text grammars for ring elements, manifold expressions, and spaces.

All grammars share one tokenizer (names, integers, and the punctuation
^ * + - ( ) , ;) and the usual precedence: ^ binds tightest, then *, then
+. Integers reduce mod 2. Specific atoms per grammar:

  presentation:  a<d>, X<n>, G(i,n), Gamma(expr), iota(expr), e
  laurent:       a<d>, c<j>, e (the only class allowed negative powers)
  coefficient:   a<d>
  bundle:        a<d>, b<i>
  manifold:      P(n), S(j), gamma(expr), triv(coefficient)
  space:         RP(n), Dold(m,n), PB(space; line, ...)

Manifold expressions parse to a parity-reduced list standing for a formal
GF(2) sum, with products distributed over sums and gamma applied
factorwise. Space products flatten to a single Product.
"""

import re

from .charnum import CohomClass, Dold, ProjBundle, Product, RP
from .conner_floyd import AntipodalSphere, GammaOf, ProductOf, Proj, Trivial
from .errors import ParseError
from .gf2 import GradedPoly

_TOKEN = re.compile(r'\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<int>[0-9]+)'
                    r'|(?P<punct>[-^*+(),;]))')


class _Tokens:
    def __init__(self, text):
        self.items = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None:
                stripped = text[pos:].lstrip()
                if not stripped:
                    break
                at = len(text) - len(stripped)
                raise ParseError(at, ('a name, an integer, or punctuation',),
                                 found=stripped[0])
            kind = m.lastgroup
            self.items.append((kind, m.group(kind), m.start(kind)))
            pos = m.end()
        self.items.append(('end', '', len(text)))
        self.idx = 0

    def peek(self):
        return self.items[self.idx]

    def advance(self):
        tok = self.items[self.idx]
        if tok[0] != 'end':
            self.idx += 1
        return tok

    def expect_punct(self, text):
        kind, found, pos = self.peek()
        if kind != 'punct' or found != text:
            raise ParseError(pos, ("'%s'" % text,), found=found or None)
        return self.advance()

    def expect_int(self):
        kind, found, pos = self.peek()
        if kind != 'int':
            raise ParseError(pos, ('an integer',), found=found or None)
        self.advance()
        return int(found)

    def at_punct(self, text):
        kind, found, _ = self.peek()
        return kind == 'punct' and found == text

    def expect_end(self):
        kind, found, pos = self.peek()
        if kind != 'end':
            raise ParseError(pos, ('end of input',), found=found)


class _ElementParser:
    """Sum-of-products parser over a ring with atom hooks per grammar."""

    def __init__(self, toks):
        self.toks = toks

    def parse_sum(self):
        acc = self.parse_term()
        while self.toks.at_punct('+'):
            self.toks.advance()
            acc = acc + self.parse_term()
        return acc

    def parse_term(self):
        acc = self.parse_factor()
        while self.toks.at_punct('*'):
            self.toks.advance()
            acc = acc * self.parse_factor()
        return acc

    def parse_factor(self):
        atom, invertible = self.parse_atom()
        if not self.toks.at_punct('^'):
            return atom
        self.toks.advance()
        negative = False
        if self.toks.at_punct('-'):
            _, _, pos = self.toks.advance()
            if not invertible:
                raise ParseError(pos, ('a nonnegative exponent',), found='-')
            negative = True
        k = self.toks.expect_int()
        if negative:
            return self.power(atom, -k)
        return self.power(atom, k)

    def power(self, atom, k):
        return atom ** k

    def parse_atom(self):
        kind, text, pos = self.toks.peek()
        if kind == 'int':
            self.toks.advance()
            return (self.one() if int(text) % 2 else self.zero()), False
        if kind == 'punct' and text == '(':
            self.toks.advance()
            inner = self.parse_sum()
            self.toks.expect_punct(')')
            return inner, False
        if kind == 'name':
            self.toks.advance()
            return self.named_atom(text, pos)
        raise ParseError(pos, self.atom_expected(), found=text or None)


class _PresentationParser(_ElementParser):
    def __init__(self, toks, ring):
        super().__init__(toks)
        self.ring = ring

    def zero(self):
        return self.ring.zero()

    def one(self):
        return self.ring.one()

    def atom_expected(self):
        return ('a<d>', 'X<n>', 'G(i,n)', 'Gamma(...)', 'iota(...)', 'e',
                'an integer', '(')

    def named_atom(self, text, pos):
        if text == 'e':
            return self.ring.e(1), False
        if text == 'G':
            self.toks.expect_punct('(')
            i = self.toks.expect_int()
            self.toks.expect_punct(',')
            n = self.toks.expect_int()
            self.toks.expect_punct(')')
            return self.ring.G(i, n), False
        if text == 'Gamma':
            self.toks.expect_punct('(')
            inner = self.parse_sum()
            self.toks.expect_punct(')')
            return self.ring.gamma(inner), False
        if text == 'iota':
            self.toks.expect_punct('(')
            inner = self.parse_sum()
            self.toks.expect_punct(')')
            if not inner.is_coefficient_only():
                raise ParseError(pos, ('a coefficient expression inside iota',))
            return inner, False
        m = re.fullmatch(r'a([0-9]+)', text)
        if m:
            return self.ring.iota(self.ring.coef.a(int(m.group(1)))), False
        m = re.fullmatch(r'X([0-9]+)', text)
        if m:
            return self.ring.X(int(m.group(1))), False
        raise ParseError(pos, self.atom_expected(), found=text)


class _LaurentParser(_ElementParser):
    def __init__(self, toks, laurent):
        super().__init__(toks)
        self.laurent = laurent

    def zero(self):
        return self.laurent.zero()

    def one(self):
        return self.laurent.one()

    def atom_expected(self):
        return ('a<d>', 'c<j>', 'e', 'an integer', '(')

    def named_atom(self, text, pos):
        if text == 'e':
            return self.laurent.e(1), True
        m = re.fullmatch(r'a([0-9]+)', text)
        if m:
            return self.laurent.coef.a(int(m.group(1))), False
        m = re.fullmatch(r'c([0-9]+)', text)
        if m:
            return self.laurent.c(int(m.group(1))), False
        raise ParseError(pos, self.atom_expected(), found=text)

    def power(self, atom, k):
        if k < 0:
            # only reachable for e itself
            kexp = next(iter(atom.terms))[0][1]
            return self.laurent.e(kexp * k)
        return atom ** k


class _CoefficientParser(_ElementParser):
    def __init__(self, toks, coef):
        super().__init__(toks)
        self.coef = coef

    def zero(self):
        return self.coef.zero()

    def one(self):
        return self.coef.one()

    def atom_expected(self):
        return ('a<d>', 'an integer', '(')

    def named_atom(self, text, pos):
        m = re.fullmatch(r'a([0-9]+)', text)
        if m:
            return self.coef.a(int(m.group(1))), False
        raise ParseError(pos, self.atom_expected(), found=text)


class _BundleParser(_ElementParser):
    def __init__(self, toks, geometry):
        super().__init__(toks)
        self.geometry = geometry

    def zero(self):
        return GradedPoly.zero(self.geometry.table)

    def one(self):
        return GradedPoly.one(self.geometry.table)

    def atom_expected(self):
        return ('a<d>', 'b<i>', 'an integer', '(')

    def named_atom(self, text, pos):
        m = re.fullmatch(r'a([0-9]+)', text)
        if m:
            return self.geometry.coef.a(int(m.group(1))), False
        m = re.fullmatch(r'b([0-9]+)', text)
        if m:
            return self.geometry.b(int(m.group(1))), False
        raise ParseError(pos, self.atom_expected(), found=text)


def parse_presentation(text, ring):
    """Parse a presentation-ring expression."""
    toks = _Tokens(text)
    parser = _PresentationParser(toks, ring)
    out = parser.parse_sum()
    toks.expect_end()
    return out


def parse_laurent(text, laurent):
    """Parse a Laurent-model expression."""
    toks = _Tokens(text)
    parser = _LaurentParser(toks, laurent)
    out = parser.parse_sum()
    toks.expect_end()
    return out


def parse_coefficient(text, coef):
    """Parse a coefficient-ring expression."""
    toks = _Tokens(text)
    parser = _CoefficientParser(toks, coef)
    out = parser.parse_sum()
    toks.expect_end()
    return out


def parse_bundle(text, geometry):
    """Parse a bundle-algebra expression."""
    toks = _Tokens(text)
    parser = _BundleParser(toks, geometry)
    out = parser.parse_sum()
    toks.expect_end()
    return out


def _parity_list(exprs):
    acc = {}
    order = []
    for x in exprs:
        if x not in acc:
            order.append(x)
        acc[x] = not acc.get(x, False)
    return [x for x in order if acc[x]]


class _ManifoldParser:
    """Formal GF(2) sums of manifold expressions, kept as lists."""

    def __init__(self, toks, coef):
        self.toks = toks
        self.coef = coef

    def parse_sum(self):
        acc = self.parse_term()
        while self.toks.at_punct('+'):
            self.toks.advance()
            acc = acc + self.parse_term()
        return _parity_list(acc)

    def parse_term(self):
        acc = self.parse_factor()
        while self.toks.at_punct('*'):
            self.toks.advance()
            rhs = self.parse_factor()
            acc = [_product(x, y) for x in acc for y in rhs]
        return acc

    def parse_factor(self):
        atoms = self.parse_atom()
        if not self.toks.at_punct('^'):
            return atoms
        self.toks.advance()
        if self.toks.at_punct('-'):
            _, _, pos = self.toks.peek()
            raise ParseError(pos, ('a nonnegative exponent',), found='-')
        k = self.toks.expect_int()
        acc = [Trivial(GradedPoly.one(self.coef.table))]
        for _ in range(k):
            acc = [_product(x, y) for x in acc for y in atoms]
        return _parity_list(acc)

    def parse_atom(self):
        kind, text, pos = self.toks.peek()
        if kind == 'int':
            self.toks.advance()
            one = Trivial(GradedPoly.one(self.coef.table))
            return [one] if int(text) % 2 else []
        if kind == 'punct' and text == '(':
            self.toks.advance()
            inner = self.parse_sum()
            self.toks.expect_punct(')')
            return inner
        if kind != 'name':
            raise ParseError(pos, self._expected(), found=text or None)
        self.toks.advance()
        if text == 'P':
            self.toks.expect_punct('(')
            n = self.toks.expect_int()
            self.toks.expect_punct(')')
            return [Proj(n)]
        if text == 'S':
            self.toks.expect_punct('(')
            j = self.toks.expect_int()
            self.toks.expect_punct(')')
            return [AntipodalSphere(j)]
        if text == 'gamma':
            self.toks.expect_punct('(')
            inner = self.parse_sum()
            self.toks.expect_punct(')')
            return _parity_list(GammaOf(x) for x in inner)
        if text == 'triv':
            self.toks.expect_punct('(')
            parser = _CoefficientParser(self.toks, self.coef)
            poly = parser.parse_sum()
            self.toks.expect_punct(')')
            return [Trivial(poly)] if poly else []
        raise ParseError(pos, self._expected(), found=text)

    def _expected(self):
        return ('P(n)', 'S(j)', 'gamma(...)', 'triv(...)', 'an integer', '(')


def _product(x, y):
    factors = []
    for part in (x, y):
        if isinstance(part, ProductOf):
            factors.extend(part.factors)
        else:
            factors.append(part)
    kept = [f for f in factors
            if not (isinstance(f, Trivial) and f.coef == GradedPoly.one(f.coef.table))]
    if not kept:
        return Trivial(GradedPoly.one(factors[0].coef.table))
    if len(kept) == 1:
        return kept[0]
    return ProductOf(tuple(kept))


def parse_manifold(text, coef):
    """Parse a manifold expression to a parity-reduced list of terms."""
    toks = _Tokens(text)
    parser = _ManifoldParser(toks, coef)
    out = parser.parse_sum()
    toks.expect_end()
    return out


class _SpaceParser:
    def __init__(self, toks):
        self.toks = toks

    def parse_space(self):
        factors = [self.parse_atom()]
        while self.toks.at_punct('*'):
            self.toks.advance()
            factors.append(self.parse_atom())
        if len(factors) == 1:
            return factors[0]
        flat = []
        for f in factors:
            if isinstance(f, Product):
                flat.extend(f.factors)
            else:
                flat.append(f)
        return Product(flat)

    def parse_atom(self):
        kind, text, pos = self.toks.peek()
        if kind == 'punct' and text == '(':
            self.toks.advance()
            inner = self.parse_space()
            self.toks.expect_punct(')')
            return inner
        if kind != 'name':
            raise ParseError(pos, ('RP(n)', 'Dold(m,n)', 'PB(base; lines)'),
                             found=text or None)
        self.toks.advance()
        if text == 'RP':
            self.toks.expect_punct('(')
            n = self.toks.expect_int()
            self.toks.expect_punct(')')
            return RP(n)
        if text == 'Dold':
            self.toks.expect_punct('(')
            m = self.toks.expect_int()
            self.toks.expect_punct(',')
            n = self.toks.expect_int()
            self.toks.expect_punct(')')
            return Dold(m, n)
        if text == 'PB':
            self.toks.expect_punct('(')
            base = self.parse_space()
            self.toks.expect_punct(';')
            lines = [self.parse_line(base)]
            while self.toks.at_punct(','):
                self.toks.advance()
                lines.append(self.parse_line(base))
            self.toks.expect_punct(')')
            return ProjBundle(base, lines)
        raise ParseError(pos, ('RP(n)', 'Dold(m,n)', 'PB(base; lines)'), found=text)

    def parse_line(self, base):
        acc = CohomClass.zero(base)
        while True:
            kind, text, pos = self.toks.peek()
            if kind == 'name':
                self.toks.advance()
                acc = acc + base.gen(text)
            elif kind == 'int' and text == '0':
                self.toks.advance()
            else:
                raise ParseError(pos, ('a degree-1 generator name', '0'),
                                 found=text or None)
            if self.toks.at_punct('+'):
                self.toks.advance()
                continue
            return acc


def parse_space(text):
    """Parse a space description: RP, Dold, products, projectivizations."""
    toks = _Tokens(text)
    parser = _SpaceParser(toks)
    out = parser.parse_space()
    toks.expect_end()
    return out
