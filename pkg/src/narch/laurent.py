"""Exact formal Laurent series over the rationals with lexicographic order.

A value is a finite sum of terms ``c * eps^e`` with rational coefficient
``c`` and integer exponent ``e``, kept in normalized form: exponents
strictly ascending, no zero coefficients, the empty sum is zero. ``eps``
behaves as a positive infinitesimal, so ``1 eps^1`` sits below every
positive rational while ``1 eps^-1`` sits above every rational. Two series
are ordered by comparing coefficients at the smallest exponent where they
differ.

Coefficients are exact :class:`fractions.Fraction` values, never floats,
so ordering decisions are never corrupted by rounding. All values are
immutable and all functions are pure; sharing across threads is safe.

Division of series is deliberately absent: the inverse of a finite-support
series generally has infinite support.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Tuple, Union

RationalLike = Union[Fraction, int, str]
TermPair = Tuple[int, Fraction]


class Ordering(Enum):
    """Result of a three-way exact comparison."""

    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"


class PlusInfinity:
    """Order marker for the zero series.

    Compares strictly greater than every integer and equal to itself, and
    absorbs integer addition.
    """

    _instance: "PlusInfinity | None" = None

    def __new__(cls) -> "PlusInfinity":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "PlusInfinity"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PlusInfinity)

    def __hash__(self) -> int:
        return hash("PlusInfinity")

    def __lt__(self, other: object):
        if isinstance(other, (int, PlusInfinity)):
            return False
        return NotImplemented

    def __le__(self, other: object):
        if isinstance(other, PlusInfinity):
            return True
        if isinstance(other, int):
            return False
        return NotImplemented

    def __gt__(self, other: object):
        if isinstance(other, PlusInfinity):
            return False
        if isinstance(other, int):
            return True
        return NotImplemented

    def __ge__(self, other: object):
        if isinstance(other, (int, PlusInfinity)):
            return True
        return NotImplemented

    def __add__(self, other: object):
        if isinstance(other, (int, PlusInfinity)):
            return self
        return NotImplemented

    __radd__ = __add__


PLUS_INFINITY = PlusInfinity()

OrderValue = Union[int, PlusInfinity]


def as_rational(value: RationalLike) -> Fraction:
    """Coerce an int, a string such as ``-3/4``, or a Fraction to a Fraction.

    Floats are rejected: every quantity in this package is exact.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational: {value!r}") from exc
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


@dataclass(frozen=True)
class LaurentSeries:
    """A finite-support formal Laurent series with rational coefficients.

    ``terms`` holds (exponent, coefficient) pairs, strictly ascending by
    exponent, with no zero coefficients; the empty tuple is the zero
    series. Build values through :func:`normalize`, :func:`monomial` or
    :func:`parse` rather than by hand; the constructor validates but does
    not repair.
    """

    terms: tuple[TermPair, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "terms", tuple(tuple(pair) for pair in self.terms))
        previous = None
        for pair in self.terms:
            if len(pair) != 2:
                raise ValueError(f"term {pair!r} is not an (exponent, coefficient) pair")
            exponent, coeff = pair
            if not isinstance(exponent, int) or isinstance(exponent, bool):
                raise TypeError(f"exponent {exponent!r} is not an integer")
            if not isinstance(coeff, Fraction):
                raise TypeError(f"coefficient {coeff!r} is not a Fraction")
            if coeff == 0:
                raise ValueError("normalized series cannot store a zero coefficient")
            if previous is not None and exponent <= previous:
                raise ValueError("exponents must be strictly ascending and unique")
            previous = exponent

    def is_zero(self) -> bool:
        return not self.terms

    def order(self) -> OrderValue:
        """Smallest exponent carrying a nonzero coefficient; infinite for zero."""
        if not self.terms:
            return PLUS_INFINITY
        return self.terms[0][0]

    def leading_coeff(self) -> Fraction:
        """Coefficient at the order, or 0 for the zero series."""
        if not self.terms:
            return Fraction(0)
        return self.terms[0][1]

    def coefficient(self, exponent: int) -> Fraction:
        """Coefficient at a given exponent (0 when the term is absent)."""
        for e, c in self.terms:
            if e == exponent:
                return c
            if e > exponent:
                break
        return Fraction(0)

    def __add__(self, other: "LaurentSeries") -> "LaurentSeries":
        if isinstance(other, LaurentSeries):
            return add(self, other)
        return NotImplemented

    def __sub__(self, other: "LaurentSeries") -> "LaurentSeries":
        if isinstance(other, LaurentSeries):
            return sub(self, other)
        return NotImplemented

    def __neg__(self) -> "LaurentSeries":
        return neg(self)

    def __mul__(self, other: object) -> "LaurentSeries":
        if isinstance(other, LaurentSeries):
            return mul(self, other)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return scalar_mul(other, self)
        return NotImplemented

    def __rmul__(self, other: object) -> "LaurentSeries":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return scalar_mul(other, self)
        return NotImplemented

    def __lt__(self, other: "LaurentSeries") -> bool:
        if isinstance(other, LaurentSeries):
            return compare(self, other) is Ordering.LESS
        return NotImplemented

    def __le__(self, other: "LaurentSeries") -> bool:
        if isinstance(other, LaurentSeries):
            return compare(self, other) is not Ordering.GREATER
        return NotImplemented

    def __gt__(self, other: "LaurentSeries") -> bool:
        if isinstance(other, LaurentSeries):
            return compare(self, other) is Ordering.GREATER
        return NotImplemented

    def __ge__(self, other: "LaurentSeries") -> bool:
        if isinstance(other, LaurentSeries):
            return compare(self, other) is not Ordering.LESS
        return NotImplemented

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __str__(self) -> str:
        return format_series(self)

    def __repr__(self) -> str:
        return f"LaurentSeries({format_series(self)!r})"


ZERO = LaurentSeries()
ONE = LaurentSeries(((0, Fraction(1)),))


def _raw(terms: tuple[TermPair, ...]) -> LaurentSeries:
    # Arithmetic-internal constructor: callers guarantee the normalized-form
    # invariants, so the validating __init__ is bypassed.
    series = object.__new__(LaurentSeries)
    object.__setattr__(series, "terms", terms)
    return series


def normalize(pairs: Iterable[tuple[int, RationalLike]]) -> LaurentSeries:
    """Build a series from raw (exponent, coefficient) pairs.

    Duplicate exponents are summed, zero coefficients dropped, exponents
    sorted ascending.
    """
    acc: dict[int, Fraction] = {}
    for exponent, raw in pairs:
        if not isinstance(exponent, int) or isinstance(exponent, bool):
            raise TypeError(f"exponent {exponent!r} is not an integer")
        coeff = acc.get(exponent, Fraction(0)) + as_rational(raw)
        if coeff == 0:
            acc.pop(exponent, None)
        else:
            acc[exponent] = coeff
    return _raw(tuple(sorted(acc.items())))


def monomial(coefficient: RationalLike, exponent: int) -> LaurentSeries:
    """The single-term series ``coefficient * eps^exponent`` (zero if c = 0)."""
    coeff = as_rational(coefficient)
    if coeff == 0:
        return ZERO
    if not isinstance(exponent, int) or isinstance(exponent, bool):
        raise TypeError(f"exponent {exponent!r} is not an integer")
    return _raw(((exponent, coeff),))


def embed_rational(value: RationalLike) -> LaurentSeries:
    """Embed a rational as the eps^0 term; this embedding preserves order."""
    return monomial(value, 0)


def add(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    if not b.terms:
        return a
    if not a.terms:
        return b
    acc = dict(a.terms)
    for exponent, coeff in b.terms:
        total = acc.get(exponent, Fraction(0)) + coeff
        if total == 0:
            acc.pop(exponent, None)
        else:
            acc[exponent] = total
    return _raw(tuple(sorted(acc.items())))


def neg(a: LaurentSeries) -> LaurentSeries:
    return _raw(tuple((e, -c) for e, c in a.terms))


def sub(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    return add(a, neg(b))


def mul(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    """Convolution product over the finite supports."""
    acc: dict[int, Fraction] = {}
    for ea, ca in a.terms:
        for eb, cb in b.terms:
            exponent = ea + eb
            total = acc.get(exponent, Fraction(0)) + ca * cb
            if total == 0:
                acc.pop(exponent, None)
            else:
                acc[exponent] = total
    return _raw(tuple(sorted(acc.items())))


def scalar_mul(q: RationalLike, a: LaurentSeries) -> LaurentSeries:
    scale = as_rational(q)
    if scale == 0:
        return ZERO
    if scale == 1:
        return a
    return _raw(tuple((e, scale * c) for e, c in a.terms))


def compare(a: LaurentSeries, b: LaurentSeries) -> Ordering:
    """Three-way comparison at the smallest exponent where a and b differ.

    Absent terms count as coefficient 0, so a series whose first surplus
    term is positive is the greater one at that exponent.
    """
    ta, tb = a.terms, b.terms
    i = j = 0
    while i < len(ta) and j < len(tb):
        ea, ca = ta[i]
        eb, cb = tb[j]
        if ea == eb:
            if ca != cb:
                return Ordering.LESS if ca < cb else Ordering.GREATER
            i += 1
            j += 1
        elif ea < eb:
            return Ordering.GREATER if ca > 0 else Ordering.LESS
        else:
            return Ordering.LESS if cb > 0 else Ordering.GREATER
    if i < len(ta):
        return Ordering.GREATER if ta[i][1] > 0 else Ordering.LESS
    if j < len(tb):
        return Ordering.LESS if tb[j][1] > 0 else Ordering.GREATER
    return Ordering.EQUAL


def compare_scaled(a: LaurentSeries, ka: int, b: LaurentSeries, kb: int) -> Ordering:
    """Compare ka * a against kb * b for positive integer scales.

    Equivalent to ``compare(scalar_mul(ka, a), scalar_mul(kb, b))`` but
    walks the terms directly, cross-multiplying coefficient components as
    integers, so nothing is allocated. Positive scaling preserves signs,
    which keeps the surplus-term cases unchanged.
    """
    if ka < 1 or kb < 1:
        raise ValueError("scales must be positive")
    ta, tb = a.terms, b.terms
    i = j = 0
    while i < len(ta) and j < len(tb):
        ea, ca = ta[i]
        eb, cb = tb[j]
        if ea == eb:
            lhs = ka * ca.numerator * cb.denominator
            rhs = kb * cb.numerator * ca.denominator
            if lhs != rhs:
                return Ordering.LESS if lhs < rhs else Ordering.GREATER
            i += 1
            j += 1
        elif ea < eb:
            return Ordering.GREATER if ca > 0 else Ordering.LESS
        else:
            return Ordering.LESS if cb > 0 else Ordering.GREATER
    if i < len(ta):
        return Ordering.GREATER if ta[i][1] > 0 else Ordering.LESS
    if j < len(tb):
        return Ordering.LESS if tb[j][1] > 0 else Ordering.GREATER
    return Ordering.EQUAL


def order(a: LaurentSeries) -> OrderValue:
    return a.order()


def leading_coeff(a: LaurentSeries) -> Fraction:
    return a.leading_coeff()


class SeriesParseError(ValueError):
    """Malformed series text; ``position`` is the zero-based character offset."""

    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} (at position {position})")
        self.position = position


def parse(text: str) -> LaurentSeries:
    """Parse series text such as ``5 eps^-1 + 2 eps^3`` or ``0``.

    Grammar: ``series := term (("+" | "-") term)*``,
    ``term := rational ["eps^" integer]``,
    ``rational := ["-"] digits ["/" digits]``; an omitted exponent means
    ``eps^0``. Raises :class:`SeriesParseError` on malformed input.
    """
    pos = 0
    length = len(text)

    def skip_ws() -> None:
        nonlocal pos
        while pos < length and text[pos].isspace():
            pos += 1

    def read_digits(what: str) -> int:
        nonlocal pos
        start = pos
        while pos < length and text[pos].isdigit():
            pos += 1
        if pos == start:
            raise SeriesParseError(f"expected {what}", start)
        return int(text[start:pos])

    def read_term(sign: int) -> tuple[int, Fraction]:
        nonlocal pos
        skip_ws()
        if pos < length and text[pos] == "-":
            sign = -sign
            pos += 1
        numerator = read_digits("digits")
        denominator = 1
        if pos < length and text[pos] == "/":
            pos += 1
            den_pos = pos
            denominator = read_digits("denominator digits")
            if denominator == 0:
                raise SeriesParseError("denominator must be nonzero", den_pos)
        exponent = 0
        before_ws = pos
        skip_ws()
        if text.startswith("eps", pos):
            pos += 3
            if pos >= length or text[pos] != "^":
                raise SeriesParseError("expected '^' after 'eps'", pos)
            pos += 1
            exp_sign = 1
            if pos < length and text[pos] == "-":
                exp_sign = -1
                pos += 1
            exponent = exp_sign * read_digits("exponent digits")
        else:
            pos = before_ws
        return exponent, Fraction(sign * numerator, denominator)

    pairs = [read_term(1)]
    skip_ws()
    while pos < length:
        connective = text[pos]
        if connective not in "+-":
            raise SeriesParseError(f"expected '+' or '-', found {connective!r}", pos)
        pos += 1
        pairs.append(read_term(1 if connective == "+" else -1))
        skip_ws()
    return normalize(pairs)


def format_series(a: LaurentSeries) -> str:
    """Canonical text form, ascending exponents; inverse of :func:`parse`."""
    if not a.terms:
        return "0"
    first_exp, first_coeff = a.terms[0]
    parts = [f"{first_coeff} eps^{first_exp}"]
    for exponent, coeff in a.terms[1:]:
        connective = " + " if coeff > 0 else " - "
        parts.append(f"{connective}{abs(coeff)} eps^{exponent}")
    return "".join(parts)


def series_to_json(a: LaurentSeries) -> dict:
    """JSON form ``{"terms": [[exponent, "num/den"], ...]}``, ascending."""
    return {"terms": [[e, f"{c.numerator}/{c.denominator}"] for e, c in a.terms]}


def series_from_json(obj: object) -> LaurentSeries:
    if not isinstance(obj, dict) or "terms" not in obj:
        raise ValueError("series JSON must be an object with a 'terms' list")
    raw = obj["terms"]
    if not isinstance(raw, list):
        raise ValueError("'terms' must be a list of [exponent, coefficient] pairs")
    pairs = []
    for entry in raw:
        if not isinstance(entry, (list, tuple)) or len(entry) != 2:
            raise ValueError(f"bad term entry {entry!r}")
        exponent, coeff = entry
        if not isinstance(exponent, int) or isinstance(exponent, bool):
            raise ValueError(f"bad exponent {exponent!r}")
        pairs.append((exponent, as_rational(coeff)))
    return normalize(pairs)
