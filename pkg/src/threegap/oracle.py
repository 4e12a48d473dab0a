"""Brute-force partitions of [0, 1] by the points ``{k alpha}``, ``k = 1 .. m``.

Nothing here uses convergents.  Surds are handled exactly: fractional parts
are ``k*alpha - floor(k*alpha)`` and sorting uses exact comparison, so ties
are impossible.  Other sources are evaluated as intervals; precision doubles
until every point is separated from its neighbours.
"""

from __future__ import annotations

from bisect import bisect_left
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Union

from .cf import PartialQuotientSource
from .errors import AmbiguousComparison, InvalidInput, PrecisionExhausted
from .exact import (
    DEFAULT_PRECISION,
    PRECISION_CAP,
    Interval,
    QuadraticSurd,
    cf_tail_enclosure,
    surd_floor,
)

Alpha = Union[QuadraticSurd, PartialQuotientSource]


@dataclass(frozen=True)
class PartitionSample:
    m: int
    points: tuple
    gaps: tuple
    precision: int | None = None
    _counts: Counter | None = field(default=None, repr=False, compare=False)

    @property
    def exact(self) -> bool:
        return self.precision is None

    def multiset(self) -> Counter:
        """Gap length -> multiplicity (exact mode)."""
        if not self.exact:
            raise InvalidInput("gap multiset is only defined exactly for surds")
        return self._counts if self._counts is not None else Counter(self.gaps)


def _exact_alpha(alpha: Alpha) -> QuadraticSurd | None:
    if isinstance(alpha, QuadraticSurd):
        return alpha
    if alpha.exact:
        return alpha.alpha
    return None


def alpha_enclosure(src: PartialQuotientSource, precision: int) -> Interval:
    tail = cf_tail_enclosure(src, 0, _rel(precision), precision)
    return tail + src[0]


def _rel(precision: int) -> Fraction:
    return Fraction(1, 1 << precision)


def _exact_partitions(alpha: QuadraticSurd, m_max: int) -> Iterator[PartitionSample]:
    zero = QuadraticSurd.rational(0, alpha.d)
    one = QuadraticSurd.rational(1, alpha.d)
    points: list[QuadraticSurd] = []
    gaps: list[QuadraticSurd] = [one]
    counts: Counter = Counter({one: 1})
    for k in range(1, m_max + 1):
        x = k * alpha
        x = x - surd_floor(x)
        i = bisect_left(points, x)
        if i < len(points) and points[i] == x:
            raise AssertionError(f"repeated point at k={k}: alpha is rational?")
        left = points[i - 1] if i > 0 else zero
        right = points[i] if i < len(points) else one
        old, g1, g2 = gaps[i], x - left, right - x
        counts[old] -= 1
        if not counts[old]:
            del counts[old]
        counts[g1] += 1
        counts[g2] += 1
        gaps[i:i + 1] = [g1, g2]
        points.insert(i, x)
        yield PartitionSample(k, tuple(points), tuple(gaps), None, Counter(counts))


def _interval_partitions(src: PartialQuotientSource, m_max: int, precision: int) -> Iterator[PartitionSample]:
    alpha = alpha_enclosure(src, precision)
    zero, one = Interval.point(0, precision), Interval.point(1, precision)
    points: list[Interval] = []
    los: list = []
    gaps: list[Interval] = [one - zero]
    for k in range(1, m_max + 1):
        x = k * alpha
        x = x - x.floor()
        i = bisect_left(los, x.lo)
        # certified separation from both neighbours
        if i > 0 and not points[i - 1].hi < x.lo:
            raise AmbiguousComparison(f"k={k} not separated at {precision} bits")
        if i < len(points) and not x.hi < points[i].lo:
            raise AmbiguousComparison(f"k={k} not separated at {precision} bits")
        left = points[i - 1] if i > 0 else zero
        right = points[i] if i < len(points) else one
        gaps[i:i + 1] = [x - left, right - x]
        points.insert(i, x)
        los.insert(i, x.lo)
        yield PartitionSample(k, tuple(points), tuple(gaps), precision)


def iter_partitions(
    alpha: Alpha,
    m_max: int,
    precision: int = DEFAULT_PRECISION,
    precision_cap: int = PRECISION_CAP,
) -> Iterator[PartitionSample]:
    """Yield the partition for every ``m = 1 .. m_max``, inserting one point at a time."""
    if m_max < 1:
        raise InvalidInput("m_max must be >= 1")
    exact = _exact_alpha(alpha)
    if exact is not None:
        yield from _exact_partitions(exact, m_max)
        return
    done = 0
    while precision <= precision_cap:
        try:
            for sample in _interval_partitions(alpha, m_max, precision):
                if sample.m > done:
                    done = sample.m
                    yield sample
            return
        except AmbiguousComparison:
            precision *= 2
    raise PrecisionExhausted(f"points not separated within {precision_cap} bits")


def brute_force_gaps(
    alpha: Alpha,
    m: int,
    precision: int = DEFAULT_PRECISION,
    precision_cap: int = PRECISION_CAP,
) -> PartitionSample:
    """Sort ``{alpha}, ..., {m alpha}`` and measure all ``m + 1`` gaps."""
    if m < 1:
        raise InvalidInput("m must be >= 1")
    exact = _exact_alpha(alpha)
    if exact is not None:
        pts = sorted(k * exact - surd_floor(k * exact) for k in range(1, m + 1))
        edges = [QuadraticSurd.rational(0, exact.d), *pts, QuadraticSurd.rational(1, exact.d)]
        gaps = tuple(edges[j + 1] - edges[j] for j in range(m + 1))
        return PartitionSample(m, tuple(pts), gaps)
    while precision <= precision_cap:
        try:
            a = alpha_enclosure(alpha, precision)
            pts = []
            for k in range(1, m + 1):
                x = k * a
                pts.append(x - x.floor())
            pts.sort(key=lambda iv: iv.lo)
            for u, v in zip(pts, pts[1:]):
                if not u.hi < v.lo:
                    raise AmbiguousComparison("points overlap")
            edges = [Interval.point(0, precision), *pts, Interval.point(1, precision)]
            gaps = tuple(edges[j + 1] - edges[j] for j in range(m + 1))
            return PartitionSample(m, tuple(pts), gaps, precision)
        except AmbiguousComparison:
            precision *= 2
    raise PrecisionExhausted(f"m={m}: points not separated within {precision_cap} bits")


def oracle_extremes(sample: PartitionSample):
    """``(d_max, d_min)`` over all gaps of the sample."""
    if sample.exact:
        return max(sample.gaps), min(sample.gaps)
    return max(sample.gaps, key=lambda g: g.mid), min(sample.gaps, key=lambda g: g.mid)
