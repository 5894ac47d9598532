"""Certified rational enclosures for p-th powers and p-norms

Endpoints are exact fractions. Only the irrational steps (non-integer
powers and roots) go through mpmath interval arithmetic, whose outward
rounded endpoints are converted back to fractions without loss.
"""

from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Tuple, Union

from mpmath import iv

from config.defaults import INTERVAL_PREC_BITS, INTERVAL_WIDTH

Number = Union[int, Fraction]


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, value: Number) -> 'Interval':
        q = Fraction(value)
        return cls(q, q)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, value: Number) -> bool:
        return self.lo <= value <= self.hi

    def __add__(self, other: Union['Interval', Number]) -> 'Interval':
        if isinstance(other, Interval):
            return Interval(self.lo + other.lo, self.hi + other.hi)
        return Interval(self.lo + other, self.hi + other)

    __radd__ = __add__

    def scale(self, factor: Number) -> 'Interval':
        factor = Fraction(factor)
        if factor < 0:
            return Interval(self.hi * factor, self.lo * factor)
        return Interval(self.lo * factor, self.hi * factor)

    def hull_max(self, other: 'Interval') -> 'Interval':
        """Enclosure of max(a, b) for a in self, b in other"""
        return Interval(max(self.lo, other.lo), max(self.hi, other.hi))

    def to_dict(self) -> Dict[str, str]:
        return {'lo': _q(self.lo), 'hi': _q(self.hi)}

    def __str__(self) -> str:
        return f"[{float(self.lo):.12g}, {float(self.hi):.12g}]"


def _q(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


@contextmanager
def _precision(bits: int):
    saved = iv.prec
    iv.prec = bits
    try:
        yield
    finally:
        iv.prec = saved


def _raw_to_fraction(raw) -> Fraction:
    sign, man, exp, bc = raw
    man = int(man)
    if not man:
        if bc < 0:
            raise ArithmeticError("interval endpoint is not finite")
        return Fraction(0)
    value = Fraction(man << exp) if exp >= 0 else Fraction(man, 1 << -exp)
    return -value if sign else value


def _to_iv(value: Fraction):
    return iv.mpf(value.numerator) / iv.mpf(value.denominator)


def _endpoints(x) -> Tuple[Fraction, Fraction]:
    a, b = x._mpi_
    return _raw_to_fraction(a), _raw_to_fraction(b)


def _pow_point(value: Fraction, p: Fraction, bits: int) -> Tuple[Fraction, Fraction]:
    if value == 0:
        return Fraction(0), Fraction(0)
    if p.denominator == 1:
        exact = value ** p.numerator
        return exact, exact
    with _precision(bits):
        enclosure = iv.exp(iv.log(_to_iv(value)) * _to_iv(p))
    lo, hi = _endpoints(enclosure)
    return max(lo, Fraction(0)), hi


def power(x: Union[Interval, Number], p: Number, bits: int = INTERVAL_PREC_BITS) -> Interval:
    """Enclosure of t**p over a nonnegative interval (p > 0)"""
    if not isinstance(x, Interval):
        x = Interval.point(x)
    p = Fraction(p)
    if x.lo < 0:
        raise ValueError(f"power needs a nonnegative base, got {x}")
    if p <= 0:
        raise ValueError(f"power needs a positive exponent, got {p}")
    lo = _pow_point(x.lo, p, bits)[0]
    hi = _pow_point(x.hi, p, bits)[1]
    return Interval(lo, hi)


def root(x: Union[Interval, Number], p: Number, bits: int = INTERVAL_PREC_BITS) -> Interval:
    return power(x, 1 / Fraction(p), bits)


def conjugate(p: Number) -> Fraction:
    """p* with 1/p + 1/p* = 1"""
    p = Fraction(p)
    if p <= 1:
        raise ValueError(f"conjugate exponent needs p > 1, got {p}")
    return p / (p - 1)


def power_sum(values: Iterable[Number], p: Number, bits: int = INTERVAL_PREC_BITS) -> Interval:
    """Enclosure of sum |v|**p"""
    total = Interval.point(0)
    for v in values:
        total = total + power(abs(Fraction(v)), p, bits)
    return total


def pnorm(values: Iterable[Number], p: Number, precision: Number = Fraction(INTERVAL_WIDTH),
          bits: int = INTERVAL_PREC_BITS) -> Interval:
    """Outward enclosure of (sum |v|^p)^(1/p) no wider than precision

    values may also be a Vec; its coordinates are used.
    """
    p = Fraction(p)
    if p <= 1:
        raise ValueError(f"pnorm needs p > 1, got {p}")
    if hasattr(values, 'items'):
        values = [v for _, v in values.items()]
    nonzero = [abs(Fraction(v)) for v in values if v != 0]
    if not nonzero:
        return Interval.point(0)
    if len(nonzero) == 1:
        return Interval.point(nonzero[0])
    precision = Fraction(precision)
    for _ in range(8):
        total = power_sum(nonzero, p, bits)
        out = Interval(root(total.lo, p, bits).lo, root(total.hi, p, bits).hi)
        if out.width <= precision:
            return out
        bits *= 2
    return out


def floor_dyadic(value: Fraction, bits: int) -> Fraction:
    """Largest k / 2**bits not above value"""
    scale = 1 << bits
    return Fraction((value.numerator * scale) // value.denominator, scale)
