"""Exact quadratic-surd arithmetic and outward-rounded rational intervals.

``QuadraticSurd`` holds ``(p + q*sqrt(d)) / r`` with integer parts.  Values
produced by arithmetic stay inside the field Q(sqrt(d)) and may be rational
(``q == 0``); only :func:`surd_normalize` insists on an irrational value.

``Interval`` holds rational endpoints rounded outward to a fixed number of
significant bits, so every operation returns an enclosure of the exact result.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_CEILING, ROUND_HALF_EVEN, Context, Decimal
from fractions import Fraction
from math import gcd, isqrt
from typing import Sequence, Union

from .errors import (
    AmbiguousComparison,
    InsufficientDepth,
    InvalidInput,
    RationalValue,
    UnsupportedComparison,
)

Rational = Union[int, Fraction]

DEFAULT_PRECISION = 128
PRECISION_CAP = 8192


def _squarefree_split(d: int) -> tuple[int, int]:
    """Return ``(f, c)`` with ``d == f*f*c`` and ``c`` squarefree."""
    f, c = 1, d
    i = 2
    while i * i <= c:
        while c % (i * i) == 0:
            c //= i * i
            f *= i
        i += 1 if i == 2 else 2
    return f, c


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


def _sign_quadratic(a: int, b: int, d: int) -> int:
    """Exact sign of ``a + b*sqrt(d)`` for non-square ``d``."""
    sa, sb = _sign(a), _sign(b)
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    return sa if a * a > b * b * d else sb


@dataclass(frozen=True)
class QuadraticSurd:
    """The number ``(p + q*sqrt(d)) / r`` in canonical form.

    Canonical means ``d`` squarefree and greater than one, ``r > 0`` and
    ``gcd(p, q, r) == 1``.  Build instances with :meth:`make` or
    :func:`surd_normalize`; the raw constructor trusts its arguments.
    """

    p: int
    q: int
    d: int
    r: int

    @classmethod
    def make(cls, p: int, q: int, d: int, r: int = 1) -> "QuadraticSurd":
        if r == 0:
            raise InvalidInput("denominator r must be nonzero")
        if d < 0:
            raise InvalidInput(f"radicand must be nonnegative, got {d}")
        f, c = _squarefree_split(d) if d > 0 else (0, 0)
        q *= f
        if c <= 1:
            # sqrt(d) is an integer: fold it into p and keep a placeholder radical
            p, q, c = p + q * (1 if c == 1 else 0), 0, 2
        return cls._canonical(p, q, c, r)

    @classmethod
    def _canonical(cls, p: int, q: int, d: int, r: int) -> "QuadraticSurd":
        if r < 0:
            p, q, r = -p, -q, -r
        g = gcd(gcd(p, q), r)
        if g > 1:
            p, q, r = p // g, q // g, r // g
        return cls(p, q, d, r)

    @classmethod
    def rational(cls, x: Rational, d: int) -> "QuadraticSurd":
        x = Fraction(x)
        return cls._canonical(x.numerator, 0, d, x.denominator)

    @property
    def is_rational(self) -> bool:
        return self.q == 0

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.q == 0 and Fraction(self.p, self.r) == other
        if not isinstance(other, QuadraticSurd):
            return NotImplemented
        if self.q == 0 or other.q == 0:
            return self.q == other.q and self.p == other.p and self.r == other.r
        return (self.p, self.q, self.d, self.r) == (other.p, other.q, other.d, other.r)

    def __hash__(self):
        if self.q == 0:
            return hash(Fraction(self.p, self.r))
        return hash((self.p, self.q, self.d, self.r))

    def conjugate(self) -> "QuadraticSurd":
        return QuadraticSurd(self.p, -self.q, self.d, self.r)

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "QuadraticSurd":
        if isinstance(other, QuadraticSurd):
            if other.d != self.d:
                if other.q == 0:
                    return QuadraticSurd(other.p, 0, self.d, other.r)
                if self.q == 0:
                    # caller swaps roles through _pair
                    return other
                raise UnsupportedComparison(
                    f"mixed radicals sqrt({self.d}) and sqrt({other.d})")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadraticSurd.rational(other, self.d)
        return NotImplemented

    def _pair(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        s = self
        if o.d != s.d:
            s = QuadraticSurd(s.p, 0, o.d, s.r)
        return s, o

    def __add__(self, other):
        pair = self._pair(other)
        if pair is NotImplemented:
            return NotImplemented
        x, y = pair
        return QuadraticSurd._canonical(
            x.p * y.r + y.p * x.r, x.q * y.r + y.q * x.r, x.d, x.r * y.r)

    __radd__ = __add__

    def __neg__(self) -> "QuadraticSurd":
        return QuadraticSurd(-self.p, -self.q, self.d, self.r)

    def __sub__(self, other):
        pair = self._pair(other)
        if pair is NotImplemented:
            return NotImplemented
        x, y = pair
        return x + (-y)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        pair = self._pair(other)
        if pair is NotImplemented:
            return NotImplemented
        x, y = pair
        return QuadraticSurd._canonical(
            x.p * y.p + x.q * y.q * x.d, x.p * y.q + x.q * y.p, x.d, x.r * y.r)

    __rmul__ = __mul__

    def reciprocal(self) -> "QuadraticSurd":
        norm = self.p * self.p - self.q * self.q * self.d
        if norm == 0:
            raise ZeroDivisionError("reciprocal of zero surd")
        return QuadraticSurd._canonical(
            self.r * self.p, -self.r * self.q, self.d, norm)

    def __truediv__(self, other):
        pair = self._pair(other)
        if pair is NotImplemented:
            return NotImplemented
        x, y = pair
        return x * y.reciprocal()

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def __abs__(self) -> "QuadraticSurd":
        return -self if self.sign() < 0 else self

    # -- ordering ----------------------------------------------------------

    def sign(self) -> int:
        return _sign_quadratic(self.p, self.q, self.d)

    def __lt__(self, other):
        return surd_compare(self, other) < 0

    def __le__(self, other):
        return surd_compare(self, other) <= 0

    def __gt__(self, other):
        return surd_compare(self, other) > 0

    def __ge__(self, other):
        return surd_compare(self, other) >= 0

    def __floor__(self) -> int:
        return surd_floor(self)

    def __float__(self) -> float:
        return float(self.to_interval(80).mid)

    # -- conversions -------------------------------------------------------

    def to_interval(self, precision: int = DEFAULT_PRECISION) -> "Interval":
        """Enclose the value with relative width at most ``2**-precision``."""
        if self.q == 0:
            return Interval.point(Fraction(self.p, self.r), precision)
        n = self.q * self.q * self.d
        bits = precision + 8 + max(self.p.bit_length(), n.bit_length() // 2)
        while True:
            root = isqrt(n << (2 * bits))
            scale = 1 << bits
            lo_root, hi_root = Fraction(root, scale), Fraction(root + 1, scale)
            if self.q < 0:
                lo_root, hi_root = -hi_root, -lo_root
            lo = (self.p + lo_root) / self.r
            hi = (self.p + hi_root) / self.r
            if hi - lo <= min(abs(lo), abs(hi)) * Fraction(1, 1 << precision):
                return Interval.enclose(lo, hi, precision + 4)
            bits *= 2

    def __str__(self) -> str:
        sign = "+" if self.q >= 0 else "-"
        return f"({self.p}{sign}{abs(self.q)}*sqrt({self.d}))/{self.r}"


def surd_normalize(p: int, q: int, d: int, r: int) -> QuadraticSurd:
    """Canonical irrational surd ``(p + q*sqrt(d)) / r``.

    Square factors of ``d`` move into ``q``; the sign lives in the numerator.

    >>> surd_normalize(0, 2, 8, 4)
    QuadraticSurd(p=0, q=1, d=2, r=1)
    """
    x = QuadraticSurd.make(p, q, d, r)
    if x.is_rational:
        raise RationalValue(f"rational value: ({p}+{q}*sqrt({d}))/{r}")
    return x


def surd_floor(x: QuadraticSurd) -> int:
    """Greatest integer not exceeding ``x``, by integer square roots only."""
    if x.q == 0:
        return x.p // x.r
    root = isqrt(x.q * x.q * x.d)
    # q*sqrt(d) is irrational, so its floor is root or -(root + 1)
    floor_qd = root if x.q > 0 else -root - 1
    return (x.p + floor_qd) // x.r


def surd_compare(x: QuadraticSurd, y) -> int:
    """Return -1, 0 or 1 as ``x`` is less than, equal to or greater than ``y``."""
    if isinstance(y, (int, Fraction)):
        y = QuadraticSurd.rational(y, x.d)
    if x.d != y.d and x.q != 0 and y.q != 0:
        raise UnsupportedComparison(
            f"cannot compare across radicals sqrt({x.d}) and sqrt({y.d})")
    d = x.d if x.q != 0 else y.d
    return _sign_quadratic(x.p * y.r - y.p * x.r, x.q * y.r - y.q * x.r, d)


# -- intervals ---------------------------------------------------------------


def _round(x: Fraction, precision: int, up: bool) -> Fraction:
    """Round ``x`` to ``precision`` significant bits, toward +inf if ``up``."""
    n, den = x.numerator, x.denominator
    if n == 0:
        return x
    shift = precision - (abs(n).bit_length() - den.bit_length())
    if shift >= 0:
        num = (n << shift)
        m = -((-num) // den) if up else num // den
        return Fraction(m, 1 << shift)
    div = den << -shift
    m = -((-n) // div) if up else n // div
    return Fraction(m << -shift)


@dataclass(frozen=True)
class Interval:
    """Closed interval ``[lo, hi]`` with dyadic-rational endpoints."""

    lo: Fraction
    hi: Fraction
    precision: int = DEFAULT_PRECISION

    def __post_init__(self):
        if self.lo > self.hi:
            raise InvalidInput(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def enclose(cls, lo: Rational, hi: Rational, precision: int = DEFAULT_PRECISION) -> "Interval":
        return cls(_round(Fraction(lo), precision, False),
                   _round(Fraction(hi), precision, True), precision)

    @classmethod
    def point(cls, x: Rational, precision: int = DEFAULT_PRECISION) -> "Interval":
        return cls.enclose(x, x, precision)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def radius(self) -> Fraction:
        return (self.hi - self.lo) / 2

    def relative_width(self) -> Fraction:
        m = min(abs(self.lo), abs(self.hi))
        if self.lo <= 0 <= self.hi or m == 0:
            raise AmbiguousComparison("interval contains zero")
        return self.width / m

    def contains(self, x) -> bool:
        if isinstance(x, Interval):
            return self.lo <= x.lo and x.hi <= self.hi
        return self.lo <= x <= self.hi

    def __contains__(self, x) -> bool:
        return self.contains(x)

    def overlaps(self, other: "Interval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def _as_interval(self, other) -> "Interval":
        if isinstance(other, Interval):
            return other
        if isinstance(other, (int, Fraction)):
            return Interval(Fraction(other), Fraction(other), self.precision)
        return NotImplemented

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        o = self._as_interval(other)
        if o is NotImplemented:
            return NotImplemented
        prec = max(self.precision, o.precision)
        return Interval.enclose(self.lo + o.lo, self.hi + o.hi, prec)

    __radd__ = __add__

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo, self.precision)

    def __sub__(self, other):
        o = self._as_interval(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._as_interval(other)
        if o is NotImplemented:
            return NotImplemented
        prods = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Interval.enclose(min(prods), max(prods), max(self.precision, o.precision))

    __rmul__ = __mul__

    def reciprocal(self) -> "Interval":
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError("interval contains zero")
        return Interval.enclose(1 / self.hi, 1 / self.lo, self.precision)

    def __truediv__(self, other):
        o = self._as_interval(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.reciprocal()

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    # -- certified ordering ------------------------------------------------

    def _cmp(self, other) -> int:
        o = self._as_interval(other)
        if self.hi < o.lo:
            return -1
        if self.lo > o.hi:
            return 1
        if self.lo == self.hi == o.lo == o.hi:
            return 0
        raise AmbiguousComparison(f"overlapping intervals {self} and {o}")

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def floor(self) -> int:
        f = self.lo.__floor__()
        if self.hi.__floor__() != f:
            raise AmbiguousComparison(f"floor undecided on {self}")
        return f

    def __float__(self) -> float:
        return float(self.mid)

    def __str__(self) -> str:
        return f"[{format_decimal(self.lo, 17)}, {format_decimal(self.hi, 17)}]"


def interval_eval_cf_tail(
    a: Sequence[int],
    start: int,
    depth: int,
    precision: int = DEFAULT_PRECISION,
    max_width: Rational | None = None,
) -> Interval:
    """Enclose the tail ``[0; a[start+1], a[start+2], ...]``.

    Only ``depth`` terms are read.  Whatever the unread terms are, the tail
    lies between ``P/Q`` (next term infinite) and ``(P+P')/(Q+Q')`` (next
    term one), where ``P/Q`` and ``P'/Q'`` are the last two continuants.
    """
    if depth < 1:
        raise InvalidInput("depth must be at least 1")
    p_prev, p, q_prev, q = 1, 0, 0, 1
    for i in range(start + 1, start + depth + 1):
        try:
            ai = a[i]
        except IndexError:
            raise InsufficientDepth(f"no partial quotient at index {i}") from None
        if ai < 1:
            raise InvalidInput(f"partial quotient a[{i}] = {ai} must be >= 1")
        p_prev, p = p, ai * p + p_prev
        q_prev, q = q, ai * q + q_prev
    x, y = Fraction(p, q), Fraction(p + p_prev, q + q_prev)
    iv = Interval.enclose(min(x, y), max(x, y), precision)
    if max_width is not None and iv.width > max_width:
        raise InsufficientDepth(
            f"width {float(iv.width):.3g} exceeds {float(max_width):.3g} after {depth} terms")
    return iv


def cf_tail_enclosure(
    a: Sequence[int],
    start: int,
    rel_tol: Rational,
    precision: int = DEFAULT_PRECISION,
    max_terms: int = 1 << 16,
) -> Interval:
    """Tail enclosure with as many terms as needed for relative width ``rel_tol``."""
    p_prev, p, q_prev, q = 1, 0, 0, 1
    for depth in range(1, max_terms + 1):
        i = start + depth
        try:
            ai = a[i]
        except IndexError:
            raise InsufficientDepth(f"no partial quotient at index {i}") from None
        if ai < 1:
            raise InvalidInput(f"partial quotient a[{i}] = {ai} must be >= 1")
        p_prev, p = p, ai * p + p_prev
        q_prev, q = q, ai * q + q_prev
        # bracket width is 1/(q*(q+q_prev)); the smaller endpoint bounds the value
        lower = min(Fraction(p, q), Fraction(p + p_prev, q + q_prev))
        if Fraction(1, q * (q + q_prev)) <= rel_tol * lower:
            return interval_eval_cf_tail(a, start, depth, precision)
    raise InsufficientDepth(f"relative width {rel_tol} not reached in {max_terms} terms")


def format_decimal(x: Rational, digits: int = 12, round_up: bool = False) -> str:
    """Render a rational with ``digits`` significant decimal digits."""
    x = Fraction(x)
    ctx = Context(prec=digits, rounding=ROUND_CEILING if round_up else ROUND_HALF_EVEN)
    value = ctx.divide(Decimal(x.numerator), Decimal(x.denominator))
    return f"{value:g}" if value != 0 else "0"
