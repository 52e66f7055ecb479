"""The polynomials I_{n,d} and the invariant I(n, M, tau) on fixed-point profiles."""
from __future__ import annotations

from functools import lru_cache

from .profiles import InvolutionProfile, NormalProfile
from .symfunc import Monomial, PolyGF2, dual_class, power_sum


def binom_mod2(n: int, j: int) -> int:
    """C(n, j) mod 2 by Lucas: odd iff every binary digit of j is a digit of n."""
    if n < 0 or j < 0:
        raise ValueError("arguments must be non-negative")
    return int(j & ~n == 0)


def period(d: int) -> int:
    """Smallest 2^q with q > 0 and 2^q > d."""
    p = 2
    while p <= d:
        p *= 2
    return p


def is_mersenne(n: int) -> bool:
    """True for n = 2^k - 1 (k >= 0), where phi^n has no generator to detect."""
    return n >= 0 and (n + 1) & n == 0


@lru_cache(maxsize=None)
def _ind_poly_reduced(r: int, d: int) -> PolyGF2:
    out = dual_class(d) if (r - d + 1) % 2 else PolyGF2.zero()
    for j in range(1, d + 1):
        if binom_mod2(r, j):
            out = out + dual_class(d - j) * power_sum(j)
    return out


def ind_poly(n: int, d: int) -> PolyGF2:
    """I_{n,d}: homogeneous of degree d in v1..vd (or zero), defined for all n, d >= 0."""
    if n < 0 or d < 0:
        raise ValueError("n and d must be >= 0")
    # the coefficients only see n mod period(d), so this cache key is exact
    return _ind_poly_reduced(n % period(d), d)


def ind_poly_uncached(n: int, d: int) -> PolyGF2:
    return _ind_poly_reduced.__wrapped__(n, d)


def is_gray(n: int, d: int) -> bool:
    return n <= d or is_mersenne(n)


def ind_table(n_max: int, d_max: int) -> list[list[str]]:
    """Row n, column d holds I_{n,d} in canonical text form."""
    if n_max < 0 or d_max < 0:
        raise ValueError("table bounds must be >= 0")
    return [[str(ind_poly(n, d)) for d in range(d_max + 1)] for n in range(n_max + 1)]


def verify_periodicity(n: int, d: int) -> int:
    p = period(d)
    return int(ind_poly_uncached(n, d) == ind_poly_uncached(n + p, d))


def verify_initial_zeros(k: int, m_odd: int) -> int:
    """Check that I_{n,d} = 0 for d < 2^k and I_{n,2^k} = v1^(2^k), n = m 2^k - 1."""
    if k < 1 or m_odd < 1 or m_odd % 2 == 0:
        raise ValueError("need k >= 1 and odd m >= 1")
    n = m_odd * 2 ** k - 1
    top = 2 ** k
    if any(ind_poly_uncached(n, d) for d in range(top)):
        return 0
    return int(ind_poly_uncached(n, top) == PolyGF2.var(1) ** top)


def evaluate(p: PolyGF2, prof: NormalProfile) -> int:
    """Pair a degree-d polynomial in the normal classes with [X] for a d-dimensional X."""
    if not p.is_homogeneous(prof.dim):
        raise ValueError(f"polynomial {p} is not homogeneous of degree {prof.dim}")
    total = 0
    for m in p.terms:
        total ^= prof[m.partition()]
    return total


def monomial_value(m: Monomial, prof: NormalProfile) -> int:
    return prof[m.partition()]


def invariant(n: int, prof: InvolutionProfile) -> int:
    """I(n, M, tau): sum over fixed components X of I_{n, dim X} evaluated on nu X.

    Equals phi^n[M] when dim M = n and n is not of the form 2^k - 1.
    """
    total = 0
    for comp in prof.components:
        if comp.dim >= n:
            continue
        total ^= evaluate(ind_poly(n, comp.dim), comp.profile)
    return total
