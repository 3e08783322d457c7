"""Polynomials over GF(2) in r1..rk, division by linear forms, and fractions
whose denominators are products of linear forms.

Monomials are packed into ints: exponent of ``r{i+1}`` lives in an 8-bit
field at shift ``8*(k-1-i)`` and the total degree sits above all of them.
Integer order on packed monomials is then graded lex with r1 > r2 > ... > rk,
and multiplying monomials is integer addition.
"""

from __future__ import annotations

import re
from collections import Counter
from typing import Iterable, Sequence

from .gf2 import format_bits

FIELD_BITS = 8
MAX_DEGREE = (1 << FIELD_BITS) - 1
_MASK = MAX_DEGREE


class CapacityError(OverflowError):
    """A product would exceed the supported exponent width."""


class NotDivisible(ArithmeticError):
    def __init__(self, remainder: "GF2Poly", form: int):
        self.remainder = remainder
        self.form = form
        super().__init__(f"not divisible by {form_str(form, remainder.k)}; remainder {remainder}")


def _var_shift(i: int, k: int) -> int:
    return FIELD_BITS * (k - 1 - i)


def _var_unit(i: int, k: int) -> int:
    """Packed monomial of the single variable r{i+1} (0-based ``i``)."""
    return (1 << (FIELD_BITS * k)) | (1 << _var_shift(i, k))


def _form_units(form: int, k: int) -> list[int]:
    return [_var_unit(i, k) for i in range(k) if (form >> (k - 1 - i)) & 1]


def exponents(m: int, k: int) -> tuple[int, ...]:
    return tuple((m >> _var_shift(i, k)) & _MASK for i in range(k))


def pack(exps: Sequence[int]) -> int:
    k = len(exps)
    if any(e < 0 for e in exps):
        raise ValueError("negative exponent")
    deg = sum(exps)
    if deg > MAX_DEGREE:
        raise CapacityError(f"degree {deg} exceeds supported maximum {MAX_DEGREE}")
    m = deg << (FIELD_BITS * k)
    for i, e in enumerate(exps):
        m |= e << _var_shift(i, k)
    return m


class GF2Poly:
    """Immutable element of GF(2)[r1, ..., rk]."""

    __slots__ = ("k", "terms")

    def __init__(self, k: int, terms: Iterable[int] = ()):
        self.k = k
        self.terms = terms if isinstance(terms, frozenset) else frozenset(terms)

    @classmethod
    def zero(cls, k: int) -> "GF2Poly":
        return cls(k, frozenset())

    @classmethod
    def one(cls, k: int) -> "GF2Poly":
        return cls(k, frozenset((0,)))

    @classmethod
    def variable(cls, i: int, k: int) -> "GF2Poly":
        """r{i}, 1-based."""
        return cls(k, frozenset((_var_unit(i - 1, k),)))

    @classmethod
    def from_form(cls, form: int, k: int) -> "GF2Poly":
        return cls(k, frozenset(_form_units(form, k)))

    @classmethod
    def from_exponents(cls, monomials: Iterable[Sequence[int]], k: int) -> "GF2Poly":
        acc: set[int] = set()
        for e in monomials:
            if len(e) != k:
                raise ValueError(f"exponent vector {tuple(e)} has wrong length for k={k}")
            acc ^= {pack(e)}
        return cls(k, frozenset(acc))

    @classmethod
    def parse(cls, text: str, k: int) -> "GF2Poly":
        """Parse ``"r1^2 + r1 r2 + 1"``; ``*`` between factors is optional."""
        acc: set[int] = set()
        text = text.strip()
        if text == "0":
            return cls.zero(k)
        for chunk in text.split("+"):
            exps = [0] * k
            chunk = chunk.replace("*", " ").strip()
            if not chunk:
                raise ValueError(f"empty term in {text!r}")
            for factor in chunk.split():
                if factor == "1":
                    continue
                m = re.fullmatch(r"r(\d+)(?:\^(\d+))?", factor)
                if not m:
                    raise ValueError(f"bad factor {factor!r}")
                i = int(m.group(1))
                if not 1 <= i <= k:
                    raise ValueError(f"variable r{i} out of range for k={k}")
                exps[i - 1] += int(m.group(2) or 1)
            acc ^= {pack(exps)}
        return cls(k, frozenset(acc))

    def _check(self, other: "GF2Poly") -> None:
        if self.k != other.k:
            raise ValueError(f"rank mismatch: {self.k} vs {other.k}")

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int) and other in (0, 1):
            return self.terms == (frozenset((0,)) if other else frozenset())
        return isinstance(other, GF2Poly) and self.k == other.k and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.k, self.terms))

    def __add__(self, other: "GF2Poly") -> "GF2Poly":
        self._check(other)
        return GF2Poly(self.k, self.terms ^ other.terms)

    __sub__ = __add__

    def __mul__(self, other: "GF2Poly") -> "GF2Poly":
        self._check(other)
        a, b = self.terms, other.terms
        if not a or not b:
            return GF2Poly.zero(self.k)
        if self.degree() + other.degree() > MAX_DEGREE:
            raise CapacityError(f"product degree exceeds {MAX_DEGREE}")
        if len(a) < len(b):
            a, b = b, a
        acc: set[int] = set()
        for t in b:
            acc ^= {m + t for m in a}
        return GF2Poly(self.k, frozenset(acc))

    def __pow__(self, e: int) -> "GF2Poly":
        result = GF2Poly.one(self.k)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def mul_form(self, form: int) -> "GF2Poly":
        """Multiply by the degree-one form ``form`` (a color bitset)."""
        if self.terms and self.degree() + 1 > MAX_DEGREE:
            raise CapacityError(f"product degree exceeds {MAX_DEGREE}")
        acc: set[int] = set()
        for u in _form_units(form, self.k):
            acc ^= {m + u for m in self.terms}
        return GF2Poly(self.k, frozenset(acc))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(self.terms) >> (FIELD_BITS * self.k)

    def is_homogeneous(self) -> bool:
        return len({m >> (FIELD_BITS * self.k) for m in self.terms}) <= 1

    def monomials(self) -> list[tuple[int, ...]]:
        """Exponent vectors in graded lex order, largest first."""
        return [exponents(m, self.k) for m in sorted(self.terms, reverse=True)]

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for exps in self.monomials():
            factors = [f"r{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(exps) if e]
            out.append(" ".join(factors) or "1")
        return " + ".join(out)

    def __repr__(self) -> str:
        return f"GF2Poly(k={self.k}, {self})"


def poly_add(a: GF2Poly, b: GF2Poly) -> GF2Poly:
    return a + b


def poly_mul(a: GF2Poly, b: GF2Poly) -> GF2Poly:
    return a * b


def form_product(forms: Iterable[int], k: int) -> GF2Poly:
    p = GF2Poly.one(k)
    for f in forms:
        p = p.mul_form(f)
    return p


def form_str(form: int, k: int) -> str:
    return str(GF2Poly.from_form(form, k)) if form else "0"


def divmod_form(p: GF2Poly, form: int) -> tuple[GF2Poly, GF2Poly]:
    """Divide by a linear form, returning ``(q, r)`` with ``p = q*form + r``.

    The pivot is the lowest-index variable ``x`` of ``form``; writing
    ``form = x + rest``, the remainder is ``p`` with ``x := rest`` substituted,
    so ``form | p`` iff ``r == 0``.
    """
    k = p.k
    if form <= 0 or form >> k:
        raise ValueError(f"form {form:b} is not a nonzero vector of rank {k}")
    top = form.bit_length() - 1
    j = k - 1 - top
    shift = _var_shift(j, k)
    unit = _var_unit(j, k)
    rest = _form_units(form ^ (1 << top), k)

    coeffs: dict[int, set[int]] = {}
    for m in p.terms:
        a = (m >> shift) & _MASK
        coeffs.setdefault(a, set()).add(m - a * unit)
    if not coeffs:
        return GF2Poly.zero(k), GF2Poly.zero(k)

    def times_rest(c: set[int]) -> set[int]:
        acc: set[int] = set()
        for u in rest:
            acc ^= {m + u for m in c}
        return acc

    quotient: set[int] = set()
    carry: set[int] = set()  # q_a, coefficient of x^a in the quotient
    for a in range(max(coeffs), 0, -1):
        carry = coeffs.get(a, set()) ^ times_rest(carry)
        step = (a - 1) * unit
        quotient |= {m + step for m in carry}
    remainder = coeffs.get(0, set()) ^ times_rest(carry)
    return GF2Poly(k, frozenset(quotient)), GF2Poly(k, frozenset(remainder))


def divide_by_form(p: GF2Poly, form: int) -> GF2Poly:
    """Exact quotient ``p / form``; raises :class:`NotDivisible` with the remainder."""
    q, r = divmod_form(p, form)
    if r:
        raise NotDivisible(r, form)
    return q


class GF2Fraction:
    """``numerator / prod(denominator)`` with the denominator kept as a sorted
    multiset of linear forms.  Instances built by :func:`fraction_sum` are reduced."""

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator: GF2Poly, denominator: Iterable[int] = ()):
        self.numerator = numerator
        self.denominator = tuple(sorted(denominator))

    @property
    def k(self) -> int:
        return self.numerator.k

    def is_polynomial(self) -> bool:
        return not self.denominator

    def is_zero(self) -> bool:
        return not self.numerator

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, GF2Fraction)
            and self.numerator == other.numerator
            and self.denominator == other.denominator
        )

    def __hash__(self) -> int:
        return hash((self.numerator, self.denominator))

    def __add__(self, other: "GF2Fraction") -> "GF2Fraction":
        return fraction_sum([(self.numerator, self.denominator), (other.numerator, other.denominator)])

    def denominator_str(self) -> str:
        counts = Counter(self.denominator)
        parts = []
        for f in sorted(counts, reverse=True):
            s = form_str(f, self.k)
            if " " in s:
                s = f"({s})"
            parts.append(s + (f"^{counts[f]}" if counts[f] > 1 else ""))
        return " ".join(parts)

    def __str__(self) -> str:
        num = str(self.numerator)
        if not self.denominator:
            return num
        if " " in num:
            num = f"({num})"
        den = self.denominator_str()
        if len(set(self.denominator)) > 1:
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self) -> str:
        return f"GF2Fraction({self})"

    def to_json(self) -> dict:
        return {
            "numerator": str(self.numerator),
            "denominator": [format_bits(f, self.k) for f in self.denominator],
            "polynomial": self.is_polynomial(),
            "text": str(self),
        }


def reduce_fraction(numerator: GF2Poly, denominator: Iterable[int]) -> GF2Fraction:
    """Cancel every denominator form that divides the numerator."""
    counts = Counter(denominator)
    if not numerator:
        return GF2Fraction(numerator, ())
    for f in sorted(counts):
        while counts[f]:
            q, r = divmod_form(numerator, f)
            if r:
                break
            numerator = q
            counts[f] -= 1
    return GF2Fraction(numerator, counts.elements())


def fraction_sum(terms: Iterable[tuple[GF2Poly, Iterable[int]]]) -> GF2Fraction:
    """Reduced sum of ``num / prod(forms)`` terms over their common denominator.

    Terms sharing a denominator are added first; the least common multiple takes
    each form with its largest multiplicity.
    """
    grouped: dict[tuple[int, ...], GF2Poly] = {}
    k = None
    for num, forms in terms:
        if k is None:
            k = num.k
        elif num.k != k:
            raise ValueError(f"rank mismatch: {num.k} vs {k}")
        key = tuple(sorted(forms))
        grouped[key] = grouped[key] + num if key in grouped else num
    if k is None:
        raise ValueError("fraction_sum needs at least one term to fix the rank")

    reduced = [reduce_fraction(num, den) for den, num in sorted(grouped.items())]
    reduced = [r for r in reduced if not r.is_zero()]
    if not reduced:
        return GF2Fraction(GF2Poly.zero(k), ())

    lcm: Counter[int] = Counter()
    for r in reduced:
        for f, c in Counter(r.denominator).items():
            lcm[f] = max(lcm[f], c)
    total = GF2Poly.zero(k)
    for r in reduced:
        num = r.numerator
        for f in (lcm - Counter(r.denominator)).elements():
            num = num.mul_form(f)
        total = total + num
    return reduce_fraction(total, lcm.elements())
