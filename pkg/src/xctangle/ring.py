"""Exact coefficient arithmetic.

A :class:`Coefficient` is an arbitrary-precision integer, a rational in lowest
terms, or a single-variable Laurent polynomial in ``q`` with integer
coefficients.  All values are immutable and normalized on construction:
Laurent payloads store no zero coefficients, rationals keep a positive
denominator.  No floating point is used anywhere.

Laurent text syntax (also used by algebra files and CLI output): terms joined
by ``+``/``-``; a term is an optional integer coefficient, optionally followed
by ``q`` with an optional ``^<int>`` exponent (which may be negative), e.g.
``1 - q^2 + 3q^-1``.  Whitespace is insignificant.  Canonical printing lists
terms by descending exponent with explicit signs; a coefficient of 1 is
suppressed except on the constant term.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable

from .errors import DomainError, ParseError, VariantMismatchError

INTEGER = "integer"
RATIONAL = "rational"
LAURENT = "laurent"

_VARIANTS = (INTEGER, RATIONAL, LAURENT)


class Coefficient:
    """An immutable exact scalar tagged with its ring variant."""

    __slots__ = ("variant", "_payload", "_hash")

    def __init__(self, variant: str, payload):
        if variant not in _VARIANTS:
            raise DomainError(f"unknown coefficient variant {variant!r}")
        if variant == INTEGER:
            payload = int(payload)
        elif variant == RATIONAL:
            payload = Fraction(payload)
        else:
            payload = tuple(sorted((int(e), int(c)) for e, c in dict(payload).items() if c))
        object.__setattr__(self, "variant", variant)
        object.__setattr__(self, "_payload", payload)
        object.__setattr__(self, "_hash", hash((variant, payload)))

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("Coefficient is immutable")

    # -- constructors -------------------------------------------------

    @staticmethod
    def integer(n: int) -> "Coefficient":
        return Coefficient(INTEGER, n)

    @staticmethod
    def rational(p, q: int = 1) -> "Coefficient":
        return Coefficient(RATIONAL, Fraction(p, q))

    @staticmethod
    def laurent(terms: dict[int, int] | Iterable[tuple[int, int]]) -> "Coefficient":
        if not isinstance(terms, dict):
            terms = dict(terms)
        return Coefficient(LAURENT, terms)

    @staticmethod
    def q_power(e: int, coeff: int = 1) -> "Coefficient":
        return Coefficient(LAURENT, {e: coeff})

    @staticmethod
    def zero(variant: str = LAURENT) -> "Coefficient":
        if variant == INTEGER:
            return Coefficient(INTEGER, 0)
        if variant == RATIONAL:
            return Coefficient(RATIONAL, 0)
        return Coefficient(LAURENT, {})

    @staticmethod
    def one(variant: str = LAURENT) -> "Coefficient":
        if variant == INTEGER:
            return Coefficient(INTEGER, 1)
        if variant == RATIONAL:
            return Coefficient(RATIONAL, 1)
        return Coefficient(LAURENT, {0: 1})

    # -- accessors ----------------------------------------------------

    @property
    def terms(self) -> dict[int, int]:
        if self.variant != LAURENT:
            raise DomainError("terms only defined for laurent coefficients")
        return dict(self._payload)

    def as_fraction(self) -> Fraction:
        if self.variant == INTEGER:
            return Fraction(self._payload)
        if self.variant == RATIONAL:
            return self._payload
        raise DomainError("laurent coefficient has no rational value")

    def is_zero(self) -> bool:
        if self.variant == LAURENT:
            return not self._payload
        return self._payload == 0

    def is_one(self) -> bool:
        if self.variant == LAURENT:
            return self._payload == ((0, 1),)
        return self._payload == 1

    # -- arithmetic ---------------------------------------------------

    def _check(self, other: "Coefficient") -> None:
        if not isinstance(other, Coefficient):
            raise VariantMismatchError(f"expected Coefficient, got {type(other).__name__}")
        if self.variant != other.variant:
            raise VariantMismatchError(
                f"coefficient variant mismatch: {self.variant} vs {other.variant}"
            )

    def __add__(self, other: "Coefficient") -> "Coefficient":
        self._check(other)
        if self.variant != LAURENT:
            return Coefficient(self.variant, self._payload + other._payload)
        acc = dict(self._payload)
        for e, c in other._payload:
            v = acc.get(e, 0) + c
            if v:
                acc[e] = v
            else:
                acc.pop(e, None)
        return Coefficient(LAURENT, acc)

    def __neg__(self) -> "Coefficient":
        if self.variant != LAURENT:
            return Coefficient(self.variant, -self._payload)
        return Coefficient(LAURENT, {e: -c for e, c in self._payload})

    def __sub__(self, other: "Coefficient") -> "Coefficient":
        return self + (-other)

    def __mul__(self, other: "Coefficient") -> "Coefficient":
        self._check(other)
        if self.variant != LAURENT:
            return Coefficient(self.variant, self._payload * other._payload)
        acc: dict[int, int] = {}
        for e1, c1 in self._payload:
            for e2, c2 in other._payload:
                e = e1 + e2
                v = acc.get(e, 0) + c1 * c2
                if v:
                    acc[e] = v
                else:
                    del acc[e]
        return Coefficient(LAURENT, acc)

    def __pow__(self, n: int) -> "Coefficient":
        if not isinstance(n, int):
            raise DomainError("exponent must be an integer")
        if n < 0:
            inv = self.inverse()
            return inv ** (-n)
        acc = Coefficient.one(self.variant)
        base = self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def inverse(self) -> "Coefficient":
        """Multiplicative inverse; defined for nonzero rationals, the integer
        units +/-1, and Laurent monomials with unit coefficient."""
        if self.is_zero():
            raise DomainError("zero has no inverse")
        if self.variant == RATIONAL:
            return Coefficient(RATIONAL, 1 / self._payload)
        if self.variant == INTEGER:
            if self._payload in (1, -1):
                return self
            raise DomainError(f"integer {self._payload} is not invertible")
        if len(self._payload) == 1 and self._payload[0][1] in (1, -1):
            e, c = self._payload[0]
            return Coefficient(LAURENT, {-e: c})
        raise DomainError("laurent coefficient is not an invertible monomial")

    # -- comparison / hashing -----------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Coefficient)
            and self.variant == other.variant
            and self._payload == other._payload
        )

    def __hash__(self) -> int:
        return self._hash

    # -- printing / parsing -------------------------------------------

    def __repr__(self) -> str:
        return f"Coefficient({self.variant}, {self!s})"

    def __str__(self) -> str:
        if self.variant == INTEGER:
            return str(self._payload)
        if self.variant == RATIONAL:
            return str(self._payload)
        return format_laurent(dict(self._payload))


def format_laurent(terms: dict[int, int]) -> str:
    """Canonical Laurent printing: descending exponents, explicit signs."""
    if not terms:
        return "0"
    parts: list[str] = []
    for e in sorted(terms, reverse=True):
        c = terms[e]
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            var = "q" if e == 1 else f"q^{e}"
            body = var if mag == 1 else f"{mag}{var}"
        if not parts:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts)


_TERM_RE = re.compile(r"\s*(?P<sign>[+-])?\s*(?P<coeff>\d+)?\s*(?P<q>q(\^(?P<exp>-?\d+))?)?")


def parse_laurent(text: str, line: int = 0, column_offset: int = 0) -> Coefficient:
    """Parse the Laurent text syntax into a laurent :class:`Coefficient`."""
    s = text.strip()
    if not s:
        raise ParseError("empty laurent expression", line, column_offset + 1)
    pos = 0
    acc: dict[int, int] = {}
    first = True
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or m.end() == pos or (m.group("coeff") is None and m.group("q") is None):
            raise ParseError(
                f"unexpected token {s[pos:pos + 10]!r} in laurent expression",
                line,
                column_offset + pos + 1,
            )
        sign = m.group("sign")
        if sign is None and not first:
            raise ParseError("missing + or - between terms", line, column_offset + pos + 1)
        c = int(m.group("coeff")) if m.group("coeff") is not None else 1
        if sign == "-":
            c = -c
        if m.group("q") is not None:
            e = int(m.group("exp")) if m.group("exp") is not None else 1
        else:
            e = 0
        acc[e] = acc.get(e, 0) + c
        pos = m.end()
        first = False
    return Coefficient.laurent(acc)


def ring_add(a: Coefficient, b: Coefficient) -> Coefficient:
    """Exact sum of two coefficients of the same variant."""
    return a + b


def ring_mul(a: Coefficient, b: Coefficient) -> Coefficient:
    """Exact product of two coefficients of the same variant."""
    return a * b
