"""Cross-check the closed forms against the brute-force oracle for a range of m."""

from __future__ import annotations

from dataclasses import dataclass, field

from .cf import ConvergentTable, PartialQuotientSource, build_table
from .errors import AmbiguousComparison, ConsistencyError, PrecisionExhausted
from .exact import DEFAULT_PRECISION
from .gaps import _extremes, _ratio_point, _structure, decompose
from .oracle import iter_partitions, oracle_extremes


@dataclass
class VerifyReport:
    m_max: int
    exact: bool
    checked: int = 0
    disagreements: list[str] = field(default_factory=list)
    precision: int | None = None

    @property
    def ok(self) -> bool:
        return not self.disagreements and self.checked == self.m_max

    def summary(self) -> str:
        mode = "exact surd mode" if self.exact else f"interval mode, oracle precision {self.precision} bits"
        head = f"checked m = 1..{self.checked} ({mode}): {len(self.disagreements)} disagreement(s)"
        if self.disagreements:
            head += f"\nfirst divergence: {self.disagreements[0]}"
        return head


def _check_exact(m, table, sample) -> str | None:
    dec = decompose(m, table)
    gs = _structure(dec, table)
    if gs.multiset() != dict(sample.multiset()):
        return f"m={m}: gap multiset differs"
    d_max, d_min = _extremes(dec, table)
    o_max, o_min = oracle_extremes(sample)
    if (d_max, d_min) != (o_max, o_min):
        return f"m={m}: extremes differ"
    if _ratio_point(dec, table).ratio != o_max / o_min:
        return f"m={m}: ratio differs"
    return None


def _check_interval(m, table, sample) -> str | None:
    dec = decompose(m, table)
    present = _structure(dec, table).present()
    for i, e in enumerate(present):
        for f in present[i + 1:]:
            if e.length.overlaps(f.length):
                raise AmbiguousComparison(f"m={m}: {e.tag} and {f.tag} lengths not separated")
    counts = [0] * len(present)
    for g in sample.gaps:
        hits = [i for i, e in enumerate(present) if e.length.overlaps(g)]
        if len(hits) != 1:
            return f"m={m}: oracle gap {g} matches {len(hits)} closed-form lengths"
        counts[hits[0]] += 1
    if counts != [e.count for e in present]:
        return f"m={m}: counts {counts} != {[e.count for e in present]}"
    d_max, d_min = _extremes(dec, table)
    o_max, o_min = oracle_extremes(sample)
    if not (d_max.overlaps(o_max) and d_min.overlaps(o_min)):
        return f"m={m}: extremes differ"
    if not _ratio_point(dec, table).ratio.overlaps(o_max / o_min):
        return f"m={m}: ratio differs"
    return None


def verify(
    source: PartialQuotientSource,
    m_max: int,
    precision: int = DEFAULT_PRECISION,
    table: ConvergentTable | None = None,
    stop_at_first: bool = False,
) -> VerifyReport:
    """Compare gap structure, extremes and ratio with the oracle for m = 1..m_max.

    Raises :class:`PrecisionExhausted` when the oracle cannot separate points.
    """
    table = (table or build_table(source, 0, precision=precision)).covering(m_max)
    report = VerifyReport(m_max, table.exact)
    check = _check_exact if table.exact else _check_interval
    try:
        for sample in iter_partitions(source, m_max, precision):
            report.precision = sample.precision
            try:
                problem = check(sample.m, table, sample)
            except ConsistencyError as exc:
                problem = str(exc)
            report.checked = sample.m
            if problem:
                report.disagreements.append(problem)
                if stop_at_first:
                    break
    except AmbiguousComparison as exc:
        raise PrecisionExhausted(str(exc)) from exc
    return report

