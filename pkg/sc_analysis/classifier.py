"""
Asymptotic classification of waveforms.

Two questions are answered here, both exactly, from the dominant terms of
growth functions:

- Scalability: does the SC throughput B(N) / T(N) survive as N grows? It
  does exactly when B = Omega(T).
- Comp-limited regime: does the SC capacity B_max(N) / L(N), with L the
  lower bound of the baseband problem, tend to zero? Then computation,
  not spectrum or power, bounds what the waveform can carry.

The lower bound of the N-point DFT is not known, so OFDM is classified
under a conjecture the caller has to state.
"""
import enum
import logging
import re
from dataclasses import dataclass
from typing import Iterable, List, Optional

from .errors import GrowthError
from .growth import (
    LINEAR, N_LOG_N, AsymRelation, GrowthFn, RelationKind, big_omega,
    compare, normalize
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CapacityQuery:
    b_max: GrowthFn
    lower_bound: GrowthFn

    def __post_init__(self):
        for name in ('b_max', 'lower_bound'):
            if not isinstance(getattr(self, name), GrowthFn):
                raise GrowthError('%s must be a growth function' % name)


class LimitClass(enum.Enum):
    ZERO = 'zero'
    POSITIVE = 'positive'
    INFINITE = 'infinite'


@dataclass(frozen=True)
class CapacityLimit:
    kind: LimitClass
    value: float

    def __str__(self):
        if self.kind is LimitClass.POSITIVE:
            return 'Positive(%.6g)' % self.value
        return self.kind.name.capitalize()


@dataclass(frozen=True)
class Verdict:
    """
    The outcome of a classification. `relation` is the asymptotic relation
    of the bits to the complexity; `comp_limited` is None for plain
    scalability questions.
    """
    relation: AsymRelation
    scalable: bool
    comp_limited: Optional[bool]
    rationale: str

    @property
    def limit(self):
        return self.relation.limit_value

    def to_text(self):
        """
        A human-readable block.
        """
        lines = [
            'relation: B = %s(T)' % self.relation.kind.value,
            'limit: %s' % _format_limit(self.limit),
            'scalable: %s' % _yes_no(self.scalable),
        ]
        if self.comp_limited is not None:
            lines.append('comp-limited: %s' % _yes_no(self.comp_limited))
        lines.append('rationale: %s' % self.rationale)
        return '\n'.join(lines)

    def to_record(self):
        """
        A machine-readable `key = value` record.
        """
        comp_limited = ('n/a' if self.comp_limited is None
                        else str(self.comp_limited).lower())
        fields = [
            ('relation', self.relation.kind.value),
            ('limit', _format_limit(self.limit)),
            ('scalable', str(self.scalable).lower()),
            ('comp_limited', comp_limited),
            ('rationale', self.rationale),
        ]
        return ''.join('%s = %s\n' % field for field in fields)


def _yes_no(flag):
    return 'yes' if flag else 'no'


def _format_limit(value):
    if value == float('inf'):
        return 'inf'
    return '%.6g' % value


def _limit_rationale(relation, numerator, denominator):
    if relation.kind is RelationKind.THETA:
        return ('%s = Theta(%s): the ratio tends to the constant %.6g'
                % (numerator, denominator, relation.limit))
    if relation.kind is RelationKind.LITTLE_O:
        return ('%s = o(%s): the ratio tends to 0' % (numerator, denominator))
    return ('%s = omega(%s): the ratio grows without bound'
            % (numerator, denominator))


def scalability(bits: GrowthFn, complexity: GrowthFn) -> Verdict:
    """
    The SC throughput B / T nullifies as N grows unless B = Omega(T).
    """
    relation = compare(bits, complexity)
    scalable = big_omega(bits, complexity)
    rationale = _limit_rationale(relation, 'B', 'T')
    if scalable:
        rationale += '; B = Omega(T), so SC throughput does not vanish'
    else:
        rationale += '; SC throughput nullifies as N grows'
    return Verdict(relation, scalable, None, rationale)


def sc_capacity_limit(query: CapacityQuery) -> CapacityLimit:
    """
    The limit class of B_max(N) / L(N) as N grows.
    """
    relation = compare(query.b_max, query.lower_bound)
    if relation.kind is RelationKind.LITTLE_O:
        return CapacityLimit(LimitClass.ZERO, 0.0)
    if relation.kind is RelationKind.LITTLE_OMEGA:
        return CapacityLimit(LimitClass.INFINITE, float('inf'))
    return CapacityLimit(LimitClass.POSITIVE, relation.limit)


def comp_limited(query: CapacityQuery) -> Verdict:
    """
    A waveform is comp-limited when its SC capacity B_max / L tends to zero.
    """
    relation = compare(query.b_max, query.lower_bound)
    limit = sc_capacity_limit(query)
    is_limited = limit.kind is LimitClass.ZERO
    rationale = '%s; SC capacity is %s' % (
        _limit_rationale(relation, 'B_max', 'L'), limit
    )
    if is_limited:
        rationale += ', so computation bounds capacity'
    verdict = Verdict(relation, big_omega(query.b_max, query.lower_bound),
                      is_limited, rationale)
    logger.debug('B_max=%s, L=%s: %s', query.b_max, query.lower_bound,
                 verdict.rationale)
    return verdict


class ConjectureKind(enum.Enum):
    N_LOG_N = 'nlogn'
    LINEAR = 'linear'


@dataclass(frozen=True)
class DftConjecture:
    """
    An assumed lower bound for the N-point DFT: Omega(N log2 N), or Omega(N)
    with constant c.
    """
    kind: ConjectureKind
    linear_c: float = 1.0

    def __post_init__(self):
        if not self.linear_c > 0:
            raise GrowthError('the linear-time constant must be positive,'
                              ' got %r' % (self.linear_c,))

    @classmethod
    def n_log_n(cls):
        return cls(ConjectureKind.N_LOG_N)

    @classmethod
    def linear(cls, c=1.0):
        return cls(ConjectureKind.LINEAR, float(c))

    @classmethod
    def parse(cls, text):
        """
        Parse `nlogn`, `linear` or `linear:<c>`.
        """
        match = re.fullmatch(r'\s*(nlogn|linear)(?::(.+))?\s*', text or '')
        if match is None:
            raise GrowthError('unknown DFT conjecture %r; expected nlogn or'
                              ' linear[:c]' % (text,))
        kind, constant = match.groups()
        if kind == 'nlogn':
            if constant is not None:
                raise GrowthError('the nlogn conjecture takes no constant')
            return cls.n_log_n()
        if constant is None:
            return cls.linear()
        try:
            return cls.linear(float(constant))
        except ValueError:
            raise GrowthError('invalid linear-time constant %r' % constant)

    @property
    def lower_bound(self):
        if self.kind is ConjectureKind.N_LOG_N:
            return N_LOG_N
        return GrowthFn.monomial(self.linear_c, 1, 0)

    def __str__(self):
        if self.kind is ConjectureKind.N_LOG_N:
            return 'Omega(N log2 N)'
        return 'Omega(N), c=%g' % self.linear_c


def classify_ofdm(conjecture: DftConjecture,
                  procedures: Iterable[GrowthFn] = ()) -> Verdict:
    """
    Decide whether uncoded OFDM is comp-limited under a DFT lower-bound
    conjecture. The bits grow linearly in N (fixed SNR, fixed constellation).
    Extra per-symbol `procedures` are added to the DFT bound.
    """
    if not isinstance(conjecture, DftConjecture):
        raise GrowthError('classify_ofdm needs an explicit DftConjecture')
    lower_bound = normalize(
        conjecture.lower_bound.terms
        + tuple(term for proc in procedures for term in proc.terms)
    )
    verdict = comp_limited(CapacityQuery(LINEAR, lower_bound))
    if verdict.comp_limited:
        branch = ('under the %s conjecture the DFT cannot be solved in linear'
                  ' time, so OFDM is comp-limited' % conjecture)
    else:
        branch = ('under the %s conjecture the DFT is solved in linear time,'
                  ' so OFDM is not comp-limited' % conjecture)
    return Verdict(verdict.relation, verdict.scalable, verdict.comp_limited,
                   '%s (%s)' % (branch, verdict.rationale))


def dominant_procedures(models) -> List[str]:
    """
    Names of the complexity models whose symbolic cost is of the same order
    as the total cost of all of them.
    """
    models = list(models)
    if not models:
        return []
    total = normalize(term for model in models
                      for term in model.symbolic.terms)
    return [
        model.name for model in models
        if compare(model.symbolic, total).kind is RelationKind.THETA
    ]
