"""Partial-quotient sources and convergent tables.

A source answers ``src[n]`` for every ``n >= 0``.  Three kinds exist:

* ``SurdSource``: expansion of an exact quadratic surd (eventually periodic);
* ``PeriodicSource``: an explicit preperiod and period;
* ``RuleSource``: a named generator such as ``a_n = n``.

``ConvergentTable`` holds ``a_n, p_n, q_n`` and the approximation errors
``eta_n = |q_n*alpha - p_n|``.  Surd sources get exact ``eta``; the other
kinds get certified intervals.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Callable, NamedTuple, Sequence

from .errors import InvalidInput, PrecisionExhausted, RationalValue
from .exact import (
    DEFAULT_PRECISION,
    PRECISION_CAP,
    Interval,
    QuadraticSurd,
    cf_tail_enclosure,
)

DEFAULT_ETA_TOLERANCE = Fraction(1, 10**30)


class PartialQuotientSource:
    kind: str = ""

    def __getitem__(self, n: int) -> int:
        raise NotImplementedError

    def terms(self, count: int) -> list[int]:
        return [self[n] for n in range(count)]

    @property
    def exact(self) -> bool:
        return False

    @property
    def is_periodic(self) -> bool:
        return False


class PeriodicSource(PartialQuotientSource):
    """``[preperiod..., (period...)]`` repeated forever."""

    kind = "cf"

    def __init__(self, preperiod: Sequence[int], period: Sequence[int]):
        preperiod, period = tuple(preperiod), tuple(period)
        if not period:
            raise InvalidInput("period must be nonempty")
        terms = preperiod + period
        if any(a < 1 for a in terms[1:]):
            raise InvalidInput("partial quotients after a_0 must be >= 1")
        if not preperiod and period[0] < 1:
            # a_0 itself is the first period term, so it repeats at n >= 1
            raise InvalidInput("a period containing a_0 must have a_0 >= 1")
        self.preperiod = preperiod
        self.period = period

    def __getitem__(self, n: int) -> int:
        if n < 0:
            raise IndexError(n)
        if n < len(self.preperiod):
            return self.preperiod[n]
        return self.period[(n - len(self.preperiod)) % len(self.period)]

    @property
    def is_periodic(self) -> bool:
        return True

    @property
    def period_seen_at(self) -> int:
        """Index of the last term of the first full period."""
        return len(self.preperiod) + len(self.period) - 1

    def to_surd(self) -> QuadraticSurd:
        """Exact value of the periodic expansion."""
        # purely periodic part y = [b1; ..., bj, y] solves c*y^2 + (d - a)*y - b = 0
        a, b, c, d = 1, 0, 0, 1
        for t in self.period:
            a, b, c, d = a * t + b, a, c * t + d, c
        disc = (d - a) ** 2 + 4 * b * c
        # c > 0 always; the root above 1 takes the + sign
        y = QuadraticSurd.make(a - d, 1, disc, 2 * c)
        for t in reversed(self.preperiod):
            y = t + y.reciprocal()
        return y

    def __repr__(self) -> str:
        return f"PeriodicSource({list(self.preperiod)}, {list(self.period)})"


class SurdSource(PeriodicSource):
    """Continued fraction of an exact quadratic surd."""

    kind = "surd"

    def __init__(self, alpha: QuadraticSurd):
        pre, period = _expand_surd(alpha)
        super().__init__(pre, period)
        self.alpha = alpha

    @property
    def exact(self) -> bool:
        return True

    def __repr__(self) -> str:
        return f"SurdSource({self.alpha})"


class RuleSource(PartialQuotientSource):
    kind = "rule"

    def __init__(self, name: str, rule: Callable[[int], int]):
        self.name = name
        self.rule = rule

    def __getitem__(self, n: int) -> int:
        if n < 0:
            raise IndexError(n)
        a = self.rule(n)
        if n >= 1 and a < 1:
            raise InvalidInput(f"rule {self.name!r} gave a_{n} = {a} < 1")
        return a

    def __repr__(self) -> str:
        return f"RuleSource({self.name!r})"


RULES: dict[str, Callable[[int], int]] = {
    # a_0 = 0, a_n = n: unbounded partial quotients
    "natural": lambda n: n,
}


def rule_source(name: str) -> RuleSource:
    try:
        return RuleSource(name, RULES[name])
    except KeyError:
        raise InvalidInput(f"unknown rule {name!r}; known: {sorted(RULES)}") from None


def _floor_state(P: int, D: int, Q: int) -> int:
    # floor((P + sqrt(D)) / Q), D not a perfect square
    if Q > 0:
        return (P + isqrt(D)) // Q
    return -((P + isqrt(D)) // -Q) - 1


def _surd_state(x: QuadraticSurd) -> tuple[int, int, int]:
    """Write ``x`` as ``(P + sqrt(D)) / Q`` with ``Q | D - P^2``."""
    if x.is_rational:
        raise RationalValue(f"{x} is rational")
    s = 1 if x.q > 0 else -1
    P0, D0, Q0 = s * x.p, x.q * x.q * x.d, s * x.r
    return P0 * abs(Q0), D0 * Q0 * Q0, Q0 * abs(Q0)


def _expand_surd(x: QuadraticSurd) -> tuple[list[int], list[int]]:
    P, D, Q = _surd_state(x)
    seen: dict[tuple[int, int], int] = {}
    terms: list[int] = []
    while (P, Q) not in seen:
        seen[(P, Q)] = len(terms)
        a = _floor_state(P, D, Q)
        terms.append(a)
        P = a * Q - P
        Q = (D - P * P) // Q
    start = seen[(P, Q)]
    return terms[:start], terms[start:]


def surd_partial_quotients(x: QuadraticSurd, count: int) -> list[int]:
    """The first ``count + 1`` partial quotients ``a_0 .. a_count`` of ``x``."""
    return SurdSource(x).terms(count + 1)


class BoundReport(NamedTuple):
    bound: int
    certified: bool


def constant_type_bound(src: PartialQuotientSource, horizon: int) -> BoundReport:
    """Largest of ``a_1 .. a_horizon``.

    For periodic sources the value is the true supremum once the horizon
    covers a full period, and is then flagged as certified.
    """
    if horizon < 1:
        raise InvalidInput("horizon must be >= 1")
    bound = max(src[n] for n in range(1, horizon + 1))
    certified = isinstance(src, PeriodicSource) and horizon >= src.period_seen_at
    return BoundReport(bound, certified)


class ConvergentTable:
    """Convergents ``p_n/q_n`` and errors ``eta_n`` for ``n = -1 .. depth``.

    Accessors take the mathematical index, so ``table.q(-1) == 0``.  Rows are
    computed once; :meth:`extended` returns a deeper table that shares nothing
    mutable with this one.
    """

    def __init__(
        self,
        source: PartialQuotientSource,
        depth: int = 0,
        eta_tolerance: Fraction = DEFAULT_ETA_TOLERANCE,
        precision: int = DEFAULT_PRECISION,
        precision_cap: int = PRECISION_CAP,
    ):
        if depth < 0:
            raise InvalidInput("depth must be >= 0")
        self.source = source
        self.eta_tolerance = Fraction(eta_tolerance)
        self.precision = precision
        self.precision_cap = precision_cap
        self.alpha: QuadraticSurd | None = getattr(source, "alpha", None) if source.exact else None
        self._a = [source[0]]
        self._p = [1, source[0]]
        self._q = [0, 1]
        self._eta: list = []
        self._tail: list = []
        self._signed: list[QuadraticSurd] = []
        if self.exact:
            self._signed.append(QuadraticSurd.rational(1, self.alpha.d))
            self._eta.append(self._signed[0])
        else:
            self._eta.append(Interval.point(1, precision))
        self._grow(depth)

    @property
    def exact(self) -> bool:
        return self.alpha is not None

    @property
    def depth(self) -> int:
        return len(self._a) - 1

    def _grow(self, depth: int) -> None:
        while len(self._a) <= depth:
            n = len(self._a)
            a = self.source[n]
            self._a.append(a)
            self._p.append(a * self._p[-1] + self._p[-2])
            self._q.append(a * self._q[-1] + self._q[-2])
        # eta_n is filled one index behind the convergents it needs
        while len(self._eta) - 1 <= self.depth:
            n = len(self._eta) - 1
            if self.exact:
                signed = self.q(n) * self.alpha - self.p(n)
                self._signed.append(signed)
                self._eta.append(abs(signed))
            else:
                self._eta.append(self._interval_eta(n))

    def _interval_eta(self, n: int) -> Interval:
        # eta_n = t_n / (q_n + q_{n-1} t_n) with t_n = [0; a_{n+1}, ...]
        prec = self.precision
        while prec <= self.precision_cap:
            t = cf_tail_enclosure(self.source, n, self.eta_tolerance / 8, prec)
            eta = t / (self.q(n) + self.q(n - 1) * t)
            if eta.relative_width() <= self.eta_tolerance:
                self._tail.append(t)
                return eta
            prec *= 2
        raise PrecisionExhausted(
            f"eta_{n} not certified to {float(self.eta_tolerance):.1e} within {self.precision_cap} bits")

    def extended(self, depth: int) -> "ConvergentTable":
        if depth <= self.depth:
            return self
        new = object.__new__(ConvergentTable)
        new.__dict__.update(self.__dict__)
        for name in ("_a", "_p", "_q", "_eta", "_tail", "_signed"):
            setattr(new, name, list(getattr(self, name)))
        new._grow(depth)
        return new

    def covering(self, m: int, extra: int = 2) -> "ConvergentTable":
        """Table deep enough that ``q_{N} + q_{N-1} > m`` plus ``extra`` rows."""
        t = self
        while t.q(t.depth) + t.q(t.depth - 1) <= m:
            t = t.extended(t.depth + 8)
        n = t.depth
        while t.q(n - 1) + t.q(n - 2) > m:
            n -= 1
        # n - 1 is now the first index with q_j + q_{j-1} > m, i.e. k + 1
        return t.extended(n + extra)

    def a(self, n: int) -> int:
        return self._a[n]

    def p(self, n: int) -> int:
        return self._p[n + 1]

    def q(self, n: int) -> int:
        return self._q[n + 1]

    def eta(self, n: int):
        """``|q_n*alpha - p_n|``, a surd or an interval; ``eta(-1) == 1``."""
        return self._eta[n + 1]

    def signed_error(self, n: int) -> QuadraticSurd:
        """Exact ``q_n*alpha - p_n`` (surd sources only)."""
        if not self.exact:
            raise InvalidInput("signed errors are exact-only")
        return self._signed[n + 1]

    def eta_ratio(self, n: int):
        """``eta_n / eta_{n-1}`` for ``n >= 0``, equal to ``[0; a_{n+1}, ...]``."""
        if self.exact:
            return self.eta(n) / self.eta(n - 1)
        return self._tail[n]

    def eta_interval(self, n: int, precision: int | None = None) -> Interval:
        e = self.eta(n)
        if isinstance(e, Interval):
            return e
        return e.to_interval(precision or self.precision)

    def rows(self):
        for n in range(self.depth + 1):
            yield n, self.a(n), self.p(n), self.q(n), self.eta(n)

    def __repr__(self) -> str:
        return f"ConvergentTable({self.source!r}, depth={self.depth})"


def build_table(
    src: PartialQuotientSource | QuadraticSurd,
    depth: int,
    eta_tolerance: Fraction = DEFAULT_ETA_TOLERANCE,
    precision: int = DEFAULT_PRECISION,
) -> ConvergentTable:
    if isinstance(src, QuadraticSurd):
        src = SurdSource(src)
    return ConvergentTable(src, depth, eta_tolerance, precision)
