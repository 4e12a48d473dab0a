"""Closed-form three-gap structure of ``{alpha}, {2 alpha}, ..., {m alpha}``.

Every ``m >= 1`` is written uniquely as ``m = r*q_k + q_{k-1} + s`` with
``1 <= r <= a_{k+1}`` and ``0 <= s < q_k``.  From ``(k, r, s)`` the gap
lengths, their multiplicities, the extreme gaps and their ratio all follow in
O(1) table lookups, so a whole scan costs O(log m) per point.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, NamedTuple

from .cf import ConvergentTable
from .errors import ConsistencyError, InvalidInput
from .exact import Interval, QuadraticSurd

SHORT, MID, LONG = "SHORT", "MID", "LONG"
BRANCH_FULL, BRANCH_PARTIAL = "r=a", "r<a"


class GapDecomposition(NamedTuple):
    m: int
    k: int
    r: int
    s: int


@dataclass(frozen=True)
class GapEntry:
    tag: str
    length: object
    count: int

    @property
    def degenerate(self) -> bool:
        return self.count == 0


@dataclass(frozen=True)
class GapStructure:
    decomposition: GapDecomposition
    entries: tuple[GapEntry, GapEntry, GapEntry]

    def __getitem__(self, tag: str) -> GapEntry:
        for e in self.entries:
            if e.tag == tag:
                return e
        raise KeyError(tag)

    def present(self) -> list[GapEntry]:
        return [e for e in self.entries if e.count > 0]

    def multiset(self) -> dict:
        """``{length: count}`` over the gaps that actually occur (exact mode)."""
        out: dict = {}
        for e in self.present():
            out[e.length] = out.get(e.length, 0) + e.count
        return out


@dataclass(frozen=True)
class RatioPoint:
    m: int
    decomposition: GapDecomposition
    d_max: object
    d_min: object
    ratio: object
    epsilon: int
    branch: str

    @property
    def exact(self) -> bool:
        return isinstance(self.ratio, QuadraticSurd)

    @property
    def ratio_value(self) -> Fraction:
        """Scalar ratio: exact midpoint of the enclosure."""
        if self.exact:
            return self.ratio.to_interval(96).mid
        return self.ratio.mid

    @property
    def ratio_error(self) -> Fraction:
        return Fraction(0) if self.exact else self.ratio.radius


def _same(x, y) -> bool:
    if isinstance(x, Interval) or isinstance(y, Interval):
        return _as_iv(x).overlaps(_as_iv(y))
    return x == y


def _as_iv(x) -> Interval:
    return x if isinstance(x, Interval) else x.to_interval()


def _max(values):
    if any(isinstance(v, Interval) for v in values):
        return max(values, key=lambda v: v.mid)
    return max(values)


def _min(values):
    if any(isinstance(v, Interval) for v in values):
        return min(values, key=lambda v: v.mid)
    return min(values)


def decompose(m: int, table: ConvergentTable) -> GapDecomposition:
    """The unique ``(k, r, s)`` with ``m = r*q_k + q_{k-1} + s``."""
    if m < 1:
        raise InvalidInput(f"m must be >= 1, got {m}")
    table = table.covering(m, extra=0)
    sums = [table.q(j) + table.q(j - 1) for j in range(table.depth + 1)]
    k = bisect_right(sums, m) - 1
    qk, qk1 = table.q(k), table.q(k - 1)
    r = (m - qk1) // qk
    s = m - r * qk - qk1
    if not (1 <= r <= table.a(k + 1) and 0 <= s < qk):
        raise ConsistencyError(f"m={m}: (k, r, s) = ({k}, {r}, {s}) out of range")
    return GapDecomposition(m, k, r, s)


def _structure(dec: GapDecomposition, t: ConvergentTable) -> GapStructure:
    m, k, r, s = dec
    qk = t.q(k)
    short = t.eta(k)
    mid = t.eta(k + 1) + (t.a(k + 1) - r) * t.eta(k)
    entries = (
        GapEntry(SHORT, short, (r - 1) * qk + t.q(k - 1) + s + 1),
        GapEntry(MID, mid, s + 1),
        GapEntry(LONG, short + mid, qk - (s + 1)),
    )
    return GapStructure(dec, entries)


def gap_structure(m: int, table: ConvergentTable) -> GapStructure:
    """Lengths and multiplicities of the (at most) three gap sizes.

    The LONG slot is always filled; when ``q_k == s + 1`` its count is zero.
    """
    table = table.covering(m)
    gs = _structure(decompose(m, table), table)
    if sum(e.count for e in gs.entries) != m + 1:
        raise ConsistencyError(f"m={m}: gap counts do not sum to m+1")
    return gs


def _extremes(dec: GapDecomposition, t: ConvergentTable):
    _, k, r, s = dec
    a = t.a(k + 1)
    e0, e1 = t.eta(k), t.eta(k + 1)
    if t.q(k) > s + 1:
        d_max = e1 + e0 if r == a else e1 + (a - r + 1) * e0
    else:
        d_max = e0 if r == a else e1 + (a - r) * e0
    d_min = e1 if r == a else e0
    return d_max, d_min


def extremes(m: int, table: ConvergentTable):
    """``(d_max, d_min)``: longest and shortest gap among the ``m + 1``."""
    table = table.covering(m)
    dec = decompose(m, table)
    d_max, d_min = _extremes(dec, table)
    present = [e.length for e in _structure(dec, table).present()]
    if not (_same(d_max, _max(present)) and _same(d_min, _min(present))):
        raise ConsistencyError(f"m={m}: extremes disagree with gap structure")
    return d_max, d_min


def _ratio_point(dec: GapDecomposition, t: ConvergentTable, check: bool = True) -> RatioPoint:
    m, k, r, s = dec
    eps = 1 if t.q(k) > s + 1 else 0
    if r == t.a(k + 1):
        value = eps + t.eta_ratio(k + 2) + t.a(k + 2)
        branch = BRANCH_FULL
    else:
        value = eps + t.eta_ratio(k + 1) + (t.a(k + 1) - r)
        branch = BRANCH_PARTIAL
    d_max, d_min = _extremes(dec, t)
    if check and not _same(value, d_max / d_min):
        raise ConsistencyError(f"m={m}: closed-form ratio differs from d_max/d_min")
    return RatioPoint(m, dec, d_max, d_min, value, eps, branch)


def ratio(m: int, table: ConvergentTable) -> RatioPoint:
    """``d_max / d_min`` through the two-branch closed form."""
    table = table.covering(m)
    return _ratio_point(decompose(m, table), table)


class ScanResult(NamedTuple):
    points: list[RatioPoint]
    sup: object
    argmax: int


def _decompositions(table: ConvergentTable, m_max: int) -> Iterator[GapDecomposition]:
    # walk m upward, bumping k whenever m reaches q_{k+1} + q_k
    k = 0
    for m in range(1, m_max + 1):
        while table.q(k + 1) + table.q(k) <= m:
            k += 1
        qk, qk1 = table.q(k), table.q(k - 1)
        r = (m - qk1) // qk
        yield GapDecomposition(m, k, r, m - r * qk - qk1)


def convergent_ms(table: ConvergentTable, k_max: int) -> list[int]:
    """``m = q_{k+1}`` for ``k = 0 .. k_max``: one full-branch point per level."""
    return [table.q(k + 1) for k in range(k_max + 1)]


def ratio_scan(
    table: ConvergentTable,
    m_max: int | None = None,
    convergents_only: bool = False,
    k_max: int | None = None,
) -> ScanResult:
    """Ratio points for ``m = 1 .. m_max`` with the running supremum.

    With ``convergents_only`` only ``m = q_{k+1}`` is visited (``r = a_{k+1}``,
    ``s = 0``), up to ``k_max`` levels or while ``q_{k+1} <= m_max``.
    """
    if convergents_only:
        if k_max is None:
            if m_max is None or m_max < 1:
                raise InvalidInput("need m_max >= 1 or k_max")
            t = table.covering(m_max)
            k_max = max(k for k in range(t.depth) if t.q(k + 1) <= m_max)
        t = table.extended(k_max + 3)
        ms = convergent_ms(t, k_max)
        decs = (decompose(m, t) for m in ms)
    else:
        if m_max is None or m_max < 1:
            raise InvalidInput(f"m_max must be >= 1, got {m_max}")
        t = table.covering(m_max)
        decs = _decompositions(t, m_max)
    points: list[RatioPoint] = []
    sup, argmax = None, 0
    for dec in decs:
        pt = _ratio_point(dec, t)
        points.append(pt)
        if sup is None or _greater(pt.ratio, sup):
            sup, argmax = pt.ratio, pt.m
    return ScanResult(points, sup, argmax)


def _greater(x, y) -> bool:
    if isinstance(x, Interval):
        return x.mid > y.mid
    return x > y
