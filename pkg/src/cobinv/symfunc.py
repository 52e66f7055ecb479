"""Graded polynomials over GF(2) and the symmetric-function identities built on them.

Variables are v1, v2, ... with deg(v_i) = i; read v_i as the i-th elementary
symmetric function.  A polynomial is a set of monomials (coefficient 1 when
present), so addition is symmetric difference.

The canonical text form orders terms by degree, then by exponent vector with
higher powers of lower-indexed variables first, e.g. ``v1^4+v1^2*v2+v2^2+v4``.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

import numpy as np

Partition = tuple[int, ...]


def partition(parts: Iterable[int]) -> Partition:
    """Normalize to a weakly decreasing tuple of positive parts."""
    out = tuple(sorted(parts, reverse=True))
    if out and out[-1] <= 0:
        raise ValueError(f"partition parts must be positive: {out}")
    return out


@lru_cache(maxsize=None)
def partitions(n: int, largest: int | None = None) -> tuple[Partition, ...]:
    """All partitions of n, largest part first, in reverse-lex order."""
    if n < 0:
        return ()
    if n == 0:
        return ((),)
    top = n if largest is None else min(n, largest)
    out = []
    for first in range(top, 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


@dataclass(frozen=True)
class Monomial:
    """Product of v_i^e_i, stored as sorted (i, e) pairs with e >= 1."""

    exps: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        prev = 0
        for i, e in self.exps:
            if i <= prev or e < 1:
                raise ValueError(f"malformed exponents {self.exps}")
            prev = i

    @classmethod
    def from_dict(cls, exps: dict[int, int]) -> Monomial:
        return cls(tuple(sorted((i, e) for i, e in exps.items() if e)))

    @classmethod
    def from_partition(cls, parts: Iterable[int]) -> Monomial:
        counts: dict[int, int] = {}
        for p in parts:
            counts[p] = counts.get(p, 0) + 1
        return cls.from_dict(counts)

    @property
    def degree(self) -> int:
        return sum(i * e for i, e in self.exps)

    def partition(self) -> Partition:
        return tuple(i for i, e in reversed(self.exps) for _ in range(e))

    def sort_key(self):
        deg = self.degree
        dense = dict(self.exps)
        return (deg, tuple(-dense.get(i, 0) for i in range(1, deg + 1)))

    def __mul__(self, other: Monomial) -> Monomial:
        out = dict(self.exps)
        for i, e in other.exps:
            out[i] = out.get(i, 0) + e
        return Monomial.from_dict(out)

    def __lt__(self, other: Monomial) -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        if not self.exps:
            return "1"
        return "*".join(f"v{i}" if e == 1 else f"v{i}^{e}" for i, e in self.exps)


ONE_MONOMIAL = Monomial()


class PolyGF2:
    """Immutable polynomial over GF(2) in the graded variables v_i."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Iterable[Monomial] = ()):
        acc: set[Monomial] = set()
        for m in terms:
            acc ^= {m}
        self.terms = frozenset(acc)
        self._hash = hash(self.terms)

    @classmethod
    def var(cls, i: int) -> PolyGF2:
        if i < 1:
            raise ValueError("variables are v1, v2, ...")
        return cls([Monomial(((i, 1),))])

    @classmethod
    def one(cls) -> PolyGF2:
        return cls([ONE_MONOMIAL])

    @classmethod
    def zero(cls) -> PolyGF2:
        return cls()

    @classmethod
    def parse(cls, text: str) -> PolyGF2:
        """Inverse of ``str``: accepts the canonical text form."""
        text = text.replace(" ", "")
        if text == "0":
            return cls()
        terms = []
        for tok in text.split("+"):
            if tok == "1":
                terms.append(ONE_MONOMIAL)
                continue
            exps: dict[int, int] = {}
            for factor in tok.split("*"):
                m = re.fullmatch(r"v(\d+)(?:\^(\d+))?", factor)
                if not m:
                    raise ValueError(f"cannot parse term {tok!r}")
                i, e = int(m.group(1)), int(m.group(2) or 1)
                exps[i] = exps.get(i, 0) + e
            terms.append(Monomial.from_dict(exps))
        return cls(terms)

    def __add__(self, other: PolyGF2) -> PolyGF2:
        return PolyGF2(self.terms ^ other.terms)

    __sub__ = __add__

    def __mul__(self, other: PolyGF2) -> PolyGF2:
        return poly_mul(self, other)

    def __pow__(self, k: int) -> PolyGF2:
        out = PolyGF2.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyGF2):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __iter__(self) -> Iterator[Monomial]:
        return iter(self.sorted_terms())

    def __len__(self) -> int:
        return len(self.terms)

    def sorted_terms(self) -> list[Monomial]:
        return sorted(self.terms, key=Monomial.sort_key)

    def homogeneous_part(self, d: int) -> PolyGF2:
        return PolyGF2(m for m in self.terms if m.degree == d)

    def degrees(self) -> set[int]:
        return {m.degree for m in self.terms}

    def is_homogeneous(self, d: int | None = None) -> bool:
        degs = self.degrees()
        if not degs:
            return True
        return len(degs) == 1 and (d is None or degs == {d})

    @property
    def degree(self) -> int:
        """Top degree; -1 for the zero polynomial."""
        return max(self.degrees(), default=-1)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return "+".join(str(m) for m in self.sorted_terms())

    def __repr__(self) -> str:
        return f"PolyGF2({str(self)!r})"


def poly_mul(a: PolyGF2, b: PolyGF2) -> PolyGF2:
    acc: set[Monomial] = set()
    for x in a.terms:
        for y in b.terms:
            m = x * y
            if m in acc:
                acc.remove(m)
            else:
                acc.add(m)
    return PolyGF2(acc)


V = PolyGF2.var


@lru_cache(maxsize=None)
def _dual_class(i: int) -> PolyGF2:
    if i == 0:
        return PolyGF2.one()
    out = PolyGF2.zero()
    for j in range(i):
        out = out + V(i - j) * _dual_class(j)
    return out


def dual_classes(d: int) -> list[PolyGF2]:
    """[vbar_0, ..., vbar_d]: coefficients of the inverse of 1 + v1 t + v2 t^2 + ..."""
    if d < 0:
        raise ValueError("d must be >= 0")
    return [_dual_class(i) for i in range(d + 1)]


def dual_class(i: int) -> PolyGF2:
    return _dual_class(i)


@lru_cache(maxsize=None)
def power_sum(j: int) -> PolyGF2:
    """p_j in the elementary basis via Newton's recurrence, all signs dropped mod 2."""
    if j < 1:
        raise ValueError("power sums start at p_1")
    out = V(j) if j % 2 else PolyGF2.zero()
    for i in range(1, j):
        out = out + V(i) * power_sum(j - i)
    return out


# --- expansion in honest variables x_1..x_N --------------------------------


class XPoly:
    """Polynomial over GF(2) in x_1..x_N with exponent vectors packed into uint64 keys.

    Only used to check identities by brute force, so it favors a dumb but
    vectorized product over anything clever.
    """

    def __init__(self, n_vars: int, bits: int, keys: np.ndarray):
        self.n_vars = n_vars
        self.bits = bits
        self.keys = keys

    @classmethod
    def from_terms(cls, n_vars: int, bits: int, terms: Iterable[tuple[int, ...]]) -> XPoly:
        keys = [_pack(t, bits) for t in terms]
        arr = np.array(keys, dtype=np.uint64)
        return cls(n_vars, bits, _odd_keys(arr))

    def __mul__(self, other: XPoly) -> XPoly:
        if len(self.keys) == 0 or len(other.keys) == 0:
            return XPoly(self.n_vars, self.bits, np.zeros(0, dtype=np.uint64))
        small, big = sorted((self.keys, other.keys), key=len)
        chunk = max(1, 4_000_000 // len(big))
        parts = [(small[i:i + chunk, None] + big[None, :]).ravel()
                 for i in range(0, len(small), chunk)]
        return XPoly(self.n_vars, self.bits, _odd_keys(np.concatenate(parts)))

    def __add__(self, other: XPoly) -> XPoly:
        return XPoly(self.n_vars, self.bits, np.setxor1d(self.keys, other.keys))

    def __eq__(self, other) -> bool:
        if not isinstance(other, XPoly):
            return NotImplemented
        return self.n_vars == other.n_vars and np.array_equal(self.keys, other.keys)

    def __len__(self) -> int:
        return len(self.keys)

    def terms(self) -> set[tuple[int, ...]]:
        mask = (1 << self.bits) - 1
        out = set()
        for k in self.keys.tolist():
            out.add(tuple((k >> (self.bits * i)) & mask for i in range(self.n_vars)))
        return out


def _pack(exps: tuple[int, ...], bits: int) -> int:
    key = 0
    for i, e in enumerate(exps):
        if e >= 1 << bits:
            raise OverflowError("exponent does not fit the packing width")
        key |= e << (bits * i)
    return key


def _odd_keys(arr: np.ndarray) -> np.ndarray:
    if len(arr) == 0:
        return arr.astype(np.uint64)
    uniq, counts = np.unique(arr, return_counts=True)
    return uniq[counts % 2 == 1]


def _bits_for(degree: int) -> int:
    return max(1, int(degree).bit_length())


def expand_in_variables(expr: PolyGF2, n_vars: int) -> XPoly:
    """Substitute v_i -> e_i(x_1..x_N).

    Faithful only when N >= deg(expr): below that, distinct symmetric
    polynomials can collapse to the same expansion, so it is rejected.
    """
    deg = max(expr.degree, 0)
    if n_vars < deg:
        raise ValueError(f"N={n_vars} is below the degree {deg}; expansion not faithful")
    bits = _bits_for(deg)
    if bits * n_vars > 63:
        raise ValueError("too many variables for the packed representation")
    cache: dict[Partition, XPoly] = {}

    def elementary(i: int) -> XPoly:
        terms = []
        for combo in itertools.combinations(range(n_vars), i):
            t = [0] * n_vars
            for c in combo:
                t[c] = 1
            terms.append(tuple(t))
        return XPoly.from_terms(n_vars, bits, terms)

    def expand_partition(parts: Partition) -> XPoly:
        if parts in cache:
            return cache[parts]
        if not parts:
            res = XPoly.from_terms(n_vars, bits, [(0,) * n_vars])
        else:
            res = expand_partition(parts[1:]) * expand_partition((parts[0],)) if len(parts) > 1 \
                else elementary(parts[0])
        cache[parts] = res
        return res

    out = XPoly(n_vars, bits, np.zeros(0, dtype=np.uint64))
    for m in expr.sorted_terms():
        out = out + expand_partition(m.partition())
    return out
