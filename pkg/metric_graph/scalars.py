"""
Exact Scalars
Rational lengths, offsets and values with a saturating signed infinity
"""

import functools
from fractions import Fraction

from troplin.exceptions import ConflictingInfinityError

ExactScalar = Fraction


@functools.total_ordering
class Infinity:
    """Signed infinity; x + inf = inf, min(x, inf) = x."""

    __slots__ = ('sign',)

    def __init__(self, sign):
        self.sign = 1 if sign > 0 else -1

    def __repr__(self):
        return '+inf' if self.sign > 0 else '-inf'

    def __eq__(self, other):
        return isinstance(other, Infinity) and other.sign == self.sign

    def __hash__(self):
        return hash(('infinity', self.sign))

    def __lt__(self, other):
        if isinstance(other, Infinity):
            return self.sign < other.sign
        return self.sign < 0

    def __neg__(self):
        return NEG_INF if self.sign > 0 else INF

    def __add__(self, other):
        if isinstance(other, Infinity) and other.sign != self.sign:
            raise ConflictingInfinityError('+inf + -inf is undefined')
        return self

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, factor):
        if factor == 0:
            raise ConflictingInfinityError('0 * inf is undefined')
        return self if factor > 0 else -self

    __rmul__ = __mul__


INF = Infinity(1)
NEG_INF = Infinity(-1)


def is_infinite(value):
    return isinstance(value, Infinity)


def to_scalar(value):
    """Parse an int, Fraction or "p/q" / "inf" / "+inf" / "-inf" string exactly."""
    if isinstance(value, (Infinity, Fraction)):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise ValueError(f'not an exact rational: {value!r}')
    if isinstance(value, int):
        return Fraction(value)
    text = str(value).strip()
    if text in ('inf', '+inf'):
        return INF
    if text == '-inf':
        return NEG_INF
    return Fraction(text)


def format_scalar(value):
    """Lowest terms, whole numbers without a denominator: "3/2", "1", "-2", "+inf"."""
    if isinstance(value, Infinity):
        return repr(value)
    return str(Fraction(value))
