"""Linear algebra over GF(2) on int bitsets.

A vector of length ``k`` is a plain ``int`` in ``[0, 2**k)``.  Bit ``k-1-i``
holds the coefficient of the basis vector ``r{i+1}``, so the usual bitstring
reading (``"110"`` is ``r1 + r2``) is just ``int(s, 2)`` and lexicographic
order on bitstrings coincides with integer order.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence


class DimensionMismatch(ValueError):
    pass


def parse_bits(text: str, k: int | None = None) -> int:
    """Parse a bitstring such as ``"110"`` (r1 leftmost)."""
    text = text.strip()
    if not text or any(c not in "01" for c in text):
        raise ValueError(f"not a bitstring: {text!r}")
    if k is not None and len(text) != k:
        raise DimensionMismatch(f"bitstring {text!r} has length {len(text)}, expected {k}")
    return int(text, 2)


def format_bits(v: int, k: int) -> str:
    return format(v, f"0{k}b") if k else ""


def basis_vector(i: int, k: int) -> int:
    """The vector r{i}, 1-based."""
    if not 1 <= i <= k:
        raise ValueError(f"basis index {i} out of range for k={k}")
    return 1 << (k - i)


def dot(u: int, v: int) -> int:
    return (u & v).bit_count() & 1


def rref(vectors: Iterable[int]) -> list[int]:
    """Reduced row-echelon basis of the span, pivots (leading bits) decreasing."""
    rows: list[int] = []
    for v in vectors:
        for r in rows:
            if v ^ r < v:
                v ^= r
        if v:
            lead = v.bit_length() - 1
            rows = [r ^ v if (r >> lead) & 1 else r for r in rows]
            rows.append(v)
    rows.sort(reverse=True)
    return rows


def rank(vectors: Iterable[int]) -> int:
    return len(rref(vectors))


def reduce(v: int, basis: Sequence[int]) -> int:
    """Reduce ``v`` against an echelon basis; zero iff ``v`` lies in the span."""
    for r in basis:
        if v ^ r < v:
            v ^= r
    return v


@dataclass(frozen=True)
class GF2Subspace:
    k: int
    basis: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def __contains__(self, v: int) -> bool:
        return reduce(v, self.basis) == 0

    def __iter__(self):
        for mask in range(1 << self.rank):
            v = 0
            for i, row in enumerate(self.basis):
                if (mask >> i) & 1:
                    v ^= row
            yield v

    def nonzero(self) -> list[int]:
        return sorted(v for v in self if v)

    def bitstrings(self) -> list[str]:
        return [format_bits(r, self.k) for r in self.basis]

    def __str__(self) -> str:
        return "span{" + ", ".join(self.bitstrings()) + "}"


def span(vectors: Iterable[int], k: int) -> GF2Subspace:
    vectors = list(vectors)
    for v in vectors:
        if v < 0 or v >> k:
            raise DimensionMismatch(f"vector {v:b} does not fit in rank {k}")
    return GF2Subspace(k, tuple(rref(vectors)))


def span_bits(vectors: Sequence[str]) -> GF2Subspace:
    """Span of bitstring vectors; all must share one length."""
    lengths = {len(v) for v in vectors}
    if len(lengths) > 1:
        raise DimensionMismatch(f"mixed vector lengths {sorted(lengths)}")
    k = lengths.pop() if lengths else 0
    return span((parse_bits(v) for v in vectors), k)


def is_l_independent(vectors: Sequence[int], l: int) -> bool:
    """True iff every ``l`` of the (multiset of) vectors are linearly independent.

    Asking for more than ``len(vectors)`` is vacuously true.
    """
    if l < 1:
        raise ValueError("l must be at least 1")
    if l > len(vectors):
        return True
    return all(rank(c) == l for c in combinations(vectors, l))


def independence_level(vectors: Sequence[int]) -> int:
    """Largest ``l`` for which ``vectors`` is l-independent.

    Over GF(2) the smallest dependent sub-multiset sums to zero, so this is one
    less than the smallest zero-sum subset (or ``len(vectors)`` if none).
    """
    n = len(vectors)
    for size in range(1, n + 1):
        for combo in combinations(vectors, size):
            acc = 0
            for v in combo:
                acc ^= v
            if acc == 0:
                return size - 1
    return n


def quotient_rep(v: int, mod: int) -> int:
    """Canonical representative of ``v`` in the quotient by ``<mod>``."""
    if mod == 0:
        raise ValueError("cannot take a quotient by the zero vector")
    return min(v, v ^ mod)


def annihilator(s: GF2Subspace) -> GF2Subspace:
    """``{w : w.v = 0 for every v in s}`` in the dual space (same bit layout)."""
    k = s.k
    pivots = {r.bit_length() - 1: r for r in s.basis}
    free = [b for b in range(k) if b not in pivots]
    rows = []
    for f in free:
        # w has a 1 at free bit f; pivot bits are fixed by the equations w.r = 0.
        w = 1 << f
        for b, r in pivots.items():
            if (r >> f) & 1:
                w |= 1 << b
        rows.append(w)
    return span(rows, k)


def all_subspaces(k: int) -> list[GF2Subspace]:
    """Every subspace of GF(2)^k, by brute force (small k only)."""
    seen: dict[tuple[int, ...], GF2Subspace] = {}
    vectors = range(1, 1 << k)
    for r in range(k + 1):
        for combo in combinations(vectors, r):
            s = span(combo, k)
            seen.setdefault(s.basis, s)
    return sorted(seen.values(), key=lambda s: (s.rank, s.basis))
