"""
Exact symbolic growth functions of one variable N, restricted to the
poly-log family: finite sums of terms c * N^p * (log2 N)^q with c > 0 and
rational p, q >= 0.

Within this family the limit of f(N)/g(N) as N grows always exists, so the
asymptotic relations Theta, o and omega can be decided exactly by comparing
dominant exponent pairs, with no numeric tolerance.

Growth functions have a text form used by the command line and by scenario
files, for example `3*N^2*log + N` or `N^(1/2)*log^2`. Printing a function
and parsing the result gives back the same function.
"""
import enum
import logging
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Tuple

from .errors import DomainError, GrowthError

logger = logging.getLogger(__name__)

# The smallest N we evaluate at, so that log2(N) >= 1 and every term is
# positive.
MIN_N = 2


def _as_exponent(value):
    try:
        exponent = Fraction(value)
    except (TypeError, ValueError):
        raise GrowthError('invalid exponent %r' % (value,))
    if exponent < 0:
        raise GrowthError('exponent must be non-negative, got %s' % exponent)
    return exponent


def _format_number(value):
    """
    Print a coefficient so that float() gives back exactly the same value.
    """
    if value == int(value) and abs(value) < 1e15:
        return str(int(value))
    return repr(value)


def _format_exponent(exponent):
    if exponent.denominator == 1:
        return str(exponent.numerator)
    return '(%d/%d)' % (exponent.numerator, exponent.denominator)


def _power(base, exponent):
    # Integer exponents stay in exact integer (or float) arithmetic.
    if exponent.denominator == 1:
        return base ** exponent.numerator
    return float(base) ** float(exponent)


def log2_int(n):
    """
    log2 of a positive integer, exact when n is a power of two.
    """
    if n & (n - 1) == 0:
        return float(n.bit_length() - 1)
    return math.log2(n)


@dataclass(frozen=True)
class GrowthTerm:
    """
    One term c * N^poly_exp * (log2 N)^log_exp.
    """
    coeff: float
    poly_exp: Fraction = Fraction(0)
    log_exp: Fraction = Fraction(0)

    def __post_init__(self):
        try:
            coeff = float(self.coeff)
        except (TypeError, ValueError):
            raise GrowthError('invalid coefficient %r' % (self.coeff,))
        if not math.isfinite(coeff) or coeff <= 0:
            raise GrowthError('coefficient must be a positive finite number,'
                              ' got %r' % (self.coeff,))
        object.__setattr__(self, 'coeff', coeff)
        object.__setattr__(self, 'poly_exp', _as_exponent(self.poly_exp))
        object.__setattr__(self, 'log_exp', _as_exponent(self.log_exp))

    @property
    def exponents(self):
        return (self.poly_exp, self.log_exp)

    def evaluate(self, n):
        poly = _power(n, self.poly_exp)
        log = _power(log2_int(n), self.log_exp)
        return self.coeff * poly * log

    def scaled(self, factor):
        return GrowthTerm(self.coeff * factor, self.poly_exp, self.log_exp)

    def __mul__(self, other):
        return GrowthTerm(self.coeff * other.coeff,
                          self.poly_exp + other.poly_exp,
                          self.log_exp + other.log_exp)

    def __str__(self):
        factors = []
        if self.coeff != 1 or self.exponents == (0, 0):
            factors.append(_format_number(self.coeff))
        if self.poly_exp == 1:
            factors.append('N')
        elif self.poly_exp:
            factors.append('N^' + _format_exponent(self.poly_exp))
        if self.log_exp == 1:
            factors.append('log')
        elif self.log_exp:
            factors.append('log^' + _format_exponent(self.log_exp))
        return '*'.join(factors)


@dataclass(frozen=True)
class GrowthFn:
    """
    A sum of GrowthTerms in normal form: exponent pairs strictly decreasing,
    so the first term is the dominant one.

    Build these with `normalize`, `GrowthFn.parse` or `GrowthFn.monomial`
    rather than directly.
    """
    terms: Tuple[GrowthTerm, ...]

    def __post_init__(self):
        terms = tuple(self.terms)
        if not terms:
            raise GrowthError('empty growth function')
        for higher, lower in zip(terms, terms[1:]):
            if higher.exponents <= lower.exponents:
                raise GrowthError('terms are not in normal form; use'
                                  ' normalize()')
        object.__setattr__(self, 'terms', terms)

    @classmethod
    def monomial(cls, coeff=1.0, poly_exp=0, log_exp=0):
        return cls((GrowthTerm(coeff, poly_exp, log_exp),))

    @classmethod
    def parse(cls, text):
        return parse_growth(text)

    @property
    def dominant(self):
        return self.terms[0]

    def __call__(self, n):
        return evaluate(self, n)

    def __add__(self, other):
        return add(self, other)

    def __mul__(self, other):
        return mul(self, other)

    def __str__(self):
        return ' + '.join(str(term) for term in self.terms)


class RelationKind(enum.Enum):
    THETA = 'Theta'
    LITTLE_O = 'o'
    LITTLE_OMEGA = 'omega'


@dataclass(frozen=True)
class AsymRelation:
    """
    The order-of-growth relation of f to g, read as "f = kind(g)". For
    Theta, `limit` holds lim f(N)/g(N), a positive real.
    """
    kind: RelationKind
    limit: Optional[float] = None

    def __post_init__(self):
        if self.kind is RelationKind.THETA:
            if self.limit is None or not self.limit > 0:
                raise GrowthError('a Theta relation needs a positive limit')
        elif self.limit is not None:
            raise GrowthError('only a Theta relation carries a limit')

    @classmethod
    def theta(cls, limit):
        return cls(RelationKind.THETA, limit)

    @classmethod
    def little_o(cls):
        return cls(RelationKind.LITTLE_O)

    @classmethod
    def little_omega(cls):
        return cls(RelationKind.LITTLE_OMEGA)

    @property
    def limit_value(self):
        """
        lim f(N)/g(N) as a float: 0, the Theta constant, or infinity.
        """
        if self.kind is RelationKind.LITTLE_O:
            return 0.0
        if self.kind is RelationKind.LITTLE_OMEGA:
            return math.inf
        return self.limit

    def reversed(self):
        """
        The relation of g to f.
        """
        if self.kind is RelationKind.LITTLE_O:
            return AsymRelation.little_omega()
        if self.kind is RelationKind.LITTLE_OMEGA:
            return AsymRelation.little_o()
        return AsymRelation.theta(1.0 / self.limit)

    def __str__(self):
        if self.kind is RelationKind.THETA:
            return 'Theta(limit=%s)' % _format_number(self.limit)
        return self.kind.value


def normalize(terms: Iterable[GrowthTerm]) -> GrowthFn:
    """
    Merge terms with the same exponent pair (summing their coefficients) and
    sort them by decreasing (poly_exp, log_exp).
    """
    merged = {}
    for term in terms:
        if not isinstance(term, GrowthTerm):
            raise GrowthError('not a growth term: %r' % (term,))
        merged[term.exponents] = merged.get(term.exponents, 0.0) + term.coeff
    if not merged:
        raise GrowthError('empty growth function')
    return GrowthFn(tuple(
        GrowthTerm(merged[key], *key) for key in sorted(merged, reverse=True)
    ))


def evaluate(f: GrowthFn, n: int) -> float:
    """
    The value of f at the integer n >= 2. Values beyond the float range
    raise DomainError.
    """
    try:
        n = int(n) if int(n) == n else None
    except (TypeError, ValueError, OverflowError):
        n = None
    if n is None:
        raise DomainError('growth functions are evaluated at integers')
    if n < MIN_N:
        raise DomainError('evaluation below domain: N=%d < %d' % (n, MIN_N))
    try:
        value = math.fsum(term.evaluate(n) for term in f.terms)
    except OverflowError:
        value = math.inf
    if not math.isfinite(value):
        raise DomainError('growth function overflows at N=%d' % n)
    return value


def compare(f: GrowthFn, g: GrowthFn) -> AsymRelation:
    """
    Decide lim f(N)/g(N): Theta with the coefficient ratio when the dominant
    exponent pairs tie, otherwise o or omega by lexicographic order of the
    pairs.
    """
    f_key = f.dominant.exponents
    g_key = g.dominant.exponents
    if f_key == g_key:
        return AsymRelation.theta(f.dominant.coeff / g.dominant.coeff)
    if f_key < g_key:
        return AsymRelation.little_o()
    return AsymRelation.little_omega()


def big_o(f: GrowthFn, g: GrowthFn) -> bool:
    return compare(f, g).kind is not RelationKind.LITTLE_OMEGA


def big_omega(f: GrowthFn, g: GrowthFn) -> bool:
    return compare(f, g).kind is not RelationKind.LITTLE_O


def big_theta(f: GrowthFn, g: GrowthFn) -> bool:
    return compare(f, g).kind is RelationKind.THETA


def add(f: GrowthFn, g: GrowthFn) -> GrowthFn:
    return normalize(f.terms + g.terms)


def mul(f: GrowthFn, g: GrowthFn) -> GrowthFn:
    return normalize(a * b for a in f.terms for b in g.terms)


def scale(f: GrowthFn, factor: float) -> GrowthFn:
    return normalize(term.scaled(factor) for term in f.terms)


# Constants used throughout the package
LINEAR = GrowthFn.monomial(1, 1, 0)
N_LOG_N = GrowthFn.monomial(1, 1, 1)
QUADRATIC = GrowthFn.monomial(1, 2, 0)


_TOKEN_RE = re.compile(r"""
    \s*(?:
        (?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
      | (?P<name>N|log)
      | (?P<op>[-+*^()/])
    )""", re.VERBOSE)


def _tokenize(text):
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise GrowthError('cannot parse growth function %r at %r'
                              % (text, text[pos:]))
        kind = match.lastgroup
        tokens.append((kind, match.group(kind)))
        pos = match.end()
    return tokens


class _Parser:
    """
    Recursive-descent parser for the growth function text form:

        expr     := term ('+' term)*
        term     := factor ('*' factor)*
        factor   := number | 'N' ['^' exponent] | 'log' ['^' exponent]
        exponent := number | '(' number ['/' number] ')'
    """
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def _peek(self):
        if self.pos < len(self.tokens):
            return self.tokens[self.pos]
        return (None, None)

    def _take(self, kind=None, value=None):
        token = self._peek()
        if (kind is not None and token[0] != kind) or \
                (value is not None and token[1] != value):
            expected = value or kind
            found = token[1] if token[1] is not None else 'end of input'
            raise GrowthError('cannot parse growth function %r: expected %s,'
                              ' found %s' % (self.text, expected, found))
        self.pos += 1
        return token[1]

    def parse(self):
        if not self.tokens:
            raise GrowthError('empty growth function')
        terms = [self._term()]
        while self._peek() == ('op', '+'):
            self._take()
            terms.append(self._term())
        if self._peek()[0] is not None:
            self._take(value='+')
        return normalize(terms)

    def _term(self):
        coeff = 1.0
        poly_exp = Fraction(0)
        log_exp = Fraction(0)
        while True:
            kind, value = self._peek()
            if kind == 'number':
                self._take()
                coeff *= float(value)
            elif kind == 'name':
                self._take()
                exponent = Fraction(1)
                if self._peek() == ('op', '^'):
                    self._take()
                    exponent = self._exponent()
                if value == 'N':
                    poly_exp += exponent
                else:
                    log_exp += exponent
            else:
                self._take(kind='number')
            if self._peek() != ('op', '*'):
                break
            self._take()
        return GrowthTerm(coeff, poly_exp, log_exp)

    def _exponent(self):
        if self._peek() == ('op', '('):
            self._take()
            numerator = Fraction(self._take(kind='number'))
            denominator = Fraction(1)
            if self._peek() == ('op', '/'):
                self._take()
                denominator = Fraction(self._take(kind='number'))
            self._take(value=')')
            if denominator == 0:
                raise GrowthError('zero denominator in exponent of %r'
                                  % self.text)
            return numerator / denominator
        return Fraction(self._take(kind='number'))


def parse_growth(text: str) -> GrowthFn:
    """
    Parse the text form of a growth function, such as `3*N^2*log^1 + N`.
    """
    if not isinstance(text, str):
        raise GrowthError('growth functions are parsed from strings')
    result = _Parser(text).parse()
    logger.debug('parsed %r as %s', text, result)
    return result
