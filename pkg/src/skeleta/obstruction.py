"""Fixed-point localization sums and the realizability verdicts built on them."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Sequence

from .poly import GF2Fraction, GF2Poly, fraction_sum
from .skeleton import ColoredSkeleton


class ArityError(ValueError):
    pass


class SymmetricExpr:
    """GF(2)-polynomial in the elementary symmetric functions s1, s2, ...

    Terms are sparse exponent maps stored as sorted ``(i, power)`` tuples.
    """

    __slots__ = ("terms", "n")

    def __init__(self, terms=(), n: int | None = None):
        acc: set[tuple[tuple[int, int], ...]] = set()
        for t in terms:
            t = tuple(sorted((i, a) for i, a in dict(t).items() if a))
            acc ^= {t}
        self.terms = frozenset(acc)
        self.n = n
        if n is not None and self.max_index() > n:
            raise ArityError(f"s{self.max_index()} does not exist in {n} variables")

    @classmethod
    def one(cls) -> "SymmetricExpr":
        return cls([()])

    @classmethod
    def monomial(cls, exps: Sequence[int]) -> "SymmetricExpr":
        """From an exponent vector ``(a1, ..., an)`` for ``s1^a1 ... sn^an``."""
        return cls([{i + 1: a for i, a in enumerate(exps)}], n=len(exps))

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> "SymmetricExpr":
        """``"s2*s3"``, ``"s1^2 + s4"``, ``"1"``; whitespace is ignored."""
        text = re.sub(r"\s+", "", text)
        if not text:
            raise ValueError("empty expression")
        if text == "0":
            return cls((), n)
        terms = []
        for chunk in text.split("+"):
            if not chunk:
                raise ValueError(f"empty term in {text!r}")
            exps: dict[int, int] = {}
            for factor in chunk.split("*"):
                if factor == "1":
                    continue
                m = re.fullmatch(r"s(\d+)(?:\^(\d+))?", factor)
                if not m or int(m.group(1)) < 1:
                    raise ValueError(f"bad factor {factor!r} in {text!r}")
                i = int(m.group(1))
                exps[i] = exps.get(i, 0) + int(m.group(2) or 1)
            terms.append(exps)
        return cls(terms, n)

    def max_index(self) -> int:
        return max((i for t in self.terms for i, _ in t), default=0)

    def degree(self) -> int:
        """Total degree with ``deg s_i = i``; -1 for zero."""
        return max((sum(i * a for i, a in t) for t in self.terms), default=-1)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SymmetricExpr) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for t in sorted(self.terms, key=lambda t: (-sum(i * a for i, a in t), t)):
            out.append("*".join(f"s{i}" + (f"^{a}" if a > 1 else "") for i, a in t) or "1")
        return " + ".join(out)

    def __repr__(self) -> str:
        return f"SymmetricExpr({self})"


def elementary_symmetric_all(forms: Sequence[int], k: int) -> list[GF2Poly]:
    """``[sigma_0, ..., sigma_n]`` of the linear forms, built one form at a time."""
    sig = [GF2Poly.one(k)] + [GF2Poly.zero(k)] * len(forms)
    for j, f in enumerate(forms, start=1):
        for i in range(j, 0, -1):
            sig[i] = sig[i] + sig[i - 1].mul_form(f)
    return sig


def elementary_symmetric(forms: Sequence[int], i: int, k: int) -> GF2Poly:
    if not 0 <= i <= len(forms):
        raise ValueError(f"sigma_{i} undefined for {len(forms)} variables")
    return elementary_symmetric_all(forms, k)[i]


def _check_arity(f: SymmetricExpr, n: int) -> None:
    if f.n is not None and f.n != n:
        raise ArityError(f"expression has arity {f.n}, got {n} forms")
    if f.max_index() > n:
        raise ArityError(f"s{f.max_index()} needs at least {f.max_index()} forms, got {n}")


class _Evaluator:
    """Evaluates symmetric expressions on one multiset of forms, caching powers of sigma_i."""

    def __init__(self, forms: Sequence[int], k: int):
        self.k = k
        self.n = len(forms)
        self.sig = elementary_symmetric_all(forms, k)
        self.powers: dict[tuple[int, int], GF2Poly] = {}

    def power(self, i: int, a: int) -> GF2Poly:
        key = (i, a)
        if key not in self.powers:
            self.powers[key] = self.sig[i] if a == 1 else self.power(i, a - 1) * self.sig[i]
        return self.powers[key]

    def __call__(self, f: SymmetricExpr) -> GF2Poly:
        _check_arity(f, self.n)
        total = GF2Poly.zero(self.k)
        for term in f.terms:
            value = GF2Poly.one(self.k)
            for i, a in term:
                value = value * self.power(i, a)
                if not value:
                    break
            total = total + value
        return total


def eval_symmetric(f: SymmetricExpr, forms: Sequence[int], k: int) -> GF2Poly:
    """Substitute sigma_i(forms) for s_i and expand."""
    _check_arity(f, len(forms))
    return _Evaluator(forms, k)(f)


class LocalizationSum:
    """Localization sums over one skeleton, reusing per-vertex symmetric data."""

    def __init__(self, s: ColoredSkeleton):
        self.skeleton = s
        self.denominators = [tuple(s.colors_at(p)) for p in s.vertices]
        # vertices with equal color multisets contribute identical terms
        self.evaluators: dict[tuple[int, ...], _Evaluator] = {}
        for d in self.denominators:
            key = tuple(sorted(d))
            if key not in self.evaluators:
                self.evaluators[key] = _Evaluator(key, s.k)

    def __call__(self, f: SymmetricExpr) -> GF2Fraction:
        terms = []
        for d in self.denominators:
            key = tuple(sorted(d))
            terms.append((self.evaluators[key](f), key))
        return fraction_sum(terms)


def localization_sum(s: ColoredSkeleton, f: SymmetricExpr) -> GF2Fraction:
    """Reduced ``sum_p f(alpha(E_p)) / prod_{e in E_p} alpha(e)``."""
    return LocalizationSum(s)(f)


def symmetric_monomials(n: int, max_degree: int) -> Iterator[SymmetricExpr]:
    """Monomials in s1..sn by weighted degree, then ascending exponent vector."""
    def parts(d: int, i: int) -> Iterator[list[int]]:
        # exponent vectors (a_i..a_n) with sum_j j*a_j == d, lexicographically ascending
        if i > n:
            if d == 0:
                yield []
            return
        for a in range(d // i + 1):
            for rest in parts(d - a * i, i + 1):
                yield [a] + rest

    for d in range(max_degree + 1):
        for exps in parts(d, 1):
            yield SymmetricExpr.monomial(exps)


@dataclass(frozen=True)
class RealizabilityVerdict:
    kind: str
    witness: SymmetricExpr | None = None
    sum: GF2Fraction | None = None
    max_degree: int | None = None
    checked: int = 0
    vertex_count: int = 0

    OBSTRUCTED = "obstructed"
    NO_OBSTRUCTION = "no_obstruction_up_to_degree"
    REALIZABLE_K1 = "realizable_k1"
    NOT_REALIZABLE_K1 = "not_realizable_k1"

    @property
    def obstructed(self) -> bool:
        return self.kind in (self.OBSTRUCTED, self.NOT_REALIZABLE_K1)

    def to_json(self) -> dict:
        out: dict = {"verdict": self.kind}
        if self.witness is not None:
            out["witness"] = str(self.witness)
        if self.sum is not None:
            out["sum"] = self.sum.to_json()
        if self.max_degree is not None:
            out["max_degree"] = self.max_degree
        if self.kind in (self.REALIZABLE_K1, self.NOT_REALIZABLE_K1):
            out["vertex_count"] = self.vertex_count
        else:
            out["monomials_checked"] = self.checked
        return out


def realizability_check(s: ColoredSkeleton, max_degree: int | None = None) -> RealizabilityVerdict:
    """Parity criterion when k = 1; otherwise search for a symmetric monomial
    of degree at most ``max_degree`` (default ``2n``) with non-polynomial sum.

    For k >= 2 a clean pass only means no obstruction was found up to the bound.
    """
    if not s.is_connected():
        raise ValueError("realizability_check needs a connected skeleton")
    if s.k == 1:
        sum_one = localization_sum(s, SymmetricExpr.one())
        kind = RealizabilityVerdict.REALIZABLE_K1 if len(s.vertices) % 2 == 0 else RealizabilityVerdict.NOT_REALIZABLE_K1
        return RealizabilityVerdict(kind, SymmetricExpr.one(), sum_one, vertex_count=len(s.vertices))
    D = 2 * s.n if max_degree is None else max_degree
    checked = 0
    sums = LocalizationSum(s)
    for f in symmetric_monomials(s.n, D):
        checked += 1
        total = sums(f)
        if not total.is_polynomial():
            return RealizabilityVerdict(RealizabilityVerdict.OBSTRUCTED, f, total, D, checked)
    return RealizabilityVerdict(RealizabilityVerdict.NO_OBSTRUCTION, max_degree=D, checked=checked)
