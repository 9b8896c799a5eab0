"""Exact rational values with a distinguished +inf.

Graph parameters are ratios of vertex counts, so a `Fraction` carries every
finite value exactly; complete graphs take the value +inf by convention.
Comparisons never touch floating point.
"""
from fractions import Fraction
from functools import total_ordering
from numbers import Rational as _RationalABC
from typing import Optional, Union

Comparable = Union["Rational", Fraction, int]


@total_ordering
class Rational:
    """Finite fraction in lowest terms, or positive infinity"""

    __slots__ = ("_value",)

    def __init__(self, numerator: int = 0, denominator: int = 1):
        self._value: Optional[Fraction] = Fraction(numerator, denominator)

    @classmethod
    def infinity(cls) -> "Rational":
        r = cls.__new__(cls)
        r._value = None
        return r

    @classmethod
    def of(cls, value: Comparable) -> "Rational":
        if isinstance(value, Rational):
            return value
        if isinstance(value, _RationalABC):
            return cls(value.numerator, value.denominator)
        raise TypeError(f"cannot build a Rational from {value!r}")

    @classmethod
    def parse(cls, text: str) -> "Rational":
        """Inverse of str(): accepts "inf", "p" and "p/q" """
        text = text.strip()
        if text == "inf":
            return cls.infinity()
        value = Fraction(text)
        return cls(value.numerator, value.denominator)

    @property
    def is_infinite(self) -> bool:
        return self._value is None

    @property
    def numerator(self) -> int:
        if self._value is None:
            raise ValueError("+inf has no numerator")
        return self._value.numerator

    @property
    def denominator(self) -> int:
        if self._value is None:
            raise ValueError("+inf has no denominator")
        return self._value.denominator

    def as_fraction(self) -> Fraction:
        if self._value is None:
            raise ValueError("+inf is not a fraction")
        return self._value

    def _key(self):
        # (1, 0) sorts after every (0, fraction)
        return (1, 0) if self._value is None else (0, self._value)

    def __eq__(self, other) -> bool:
        try:
            other = Rational.of(other)
        except TypeError:
            return NotImplemented
        return self._key() == other._key()

    def __lt__(self, other) -> bool:
        try:
            other = Rational.of(other)
        except TypeError:
            return NotImplemented
        return self._key() < other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __str__(self) -> str:
        return "inf" if self._value is None else str(self._value)

    def __repr__(self) -> str:
        return f"Rational({self})"


INFINITY = Rational.infinity()
