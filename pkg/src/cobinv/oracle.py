"""Brute-force check of the I_{n,d} formula on explicit projective bundles.

Cohomology rings are modeled as small graded GF(2)-algebras given by a basis
and a multiplication table.  Elements are ints read as bit vectors over the
basis (bit i <-> basis element i), so addition is XOR.

For a bundle xi of rank n - d + 1 over a d-dimensional base X, the
projectivization P(xi) is an n-manifold model; phi^n[P(xi)] is computed from
its total Stiefel-Whitney class by Newton's recurrence and compared with the
evaluation of I_{n,d} on the classes of xi.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .ind import evaluate, ind_poly, is_mersenne
from .profiles import NormalProfile
from .symfunc import partitions


@dataclass(frozen=True)
class GradedAlgebra:
    names: tuple[str, ...]
    degrees: tuple[int, ...]
    mult: dict  # (i, j) -> int bitmask, for i <= j
    top_degree: int
    top_index: int

    @property
    def dim(self) -> int:
        return len(self.names)

    def basis(self, i: int) -> int:
        return 1 << i

    @property
    def one(self) -> int:
        return self.basis(self.degrees.index(0))

    def mul(self, x: int, y: int) -> int:
        out = 0
        for i in _bits(x):
            for j in _bits(y):
                out ^= self.mult[(i, j) if i <= j else (j, i)]
        return out

    def power(self, x: int, k: int) -> int:
        out = self.one
        for _ in range(k):
            out = self.mul(out, x)
        return out

    def degree_part(self, x: int, d: int) -> int:
        return sum(1 << i for i in _bits(x) if self.degrees[i] == d)

    def is_homogeneous(self, x: int, d: int) -> bool:
        return all(self.degrees[i] == d for i in _bits(x))

    def top_eval(self, x: int) -> int:
        return (x >> self.top_index) & 1

    def show(self, x: int) -> str:
        if not x:
            return "0"
        return "+".join(self.names[i] for i in _bits(x))

    def check(self) -> None:
        """Raise if the table is not graded, commutative-associative, unital, with 1-dim top."""
        n = self.dim
        unit = self.one
        for i in range(n):
            if self.mul(unit, self.basis(i)) != self.basis(i):
                raise ValueError("unit axiom fails")
        for i, j in itertools.combinations_with_replacement(range(n), 2):
            prod = self.mult[(i, j)]
            deg = self.degrees[i] + self.degrees[j]
            if deg > self.top_degree and prod:
                raise ValueError("product above top degree")
            if not self.is_homogeneous(prod, deg):
                raise ValueError(f"product {self.names[i]}*{self.names[j]} not graded")
        for i, j, k in itertools.product(range(n), repeat=3):
            a, b, c = self.basis(i), self.basis(j), self.basis(k)
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)):
                raise ValueError("multiplication is not associative")
        tops = [i for i in range(n) if self.degrees[i] == self.top_degree]
        if tops != [self.top_index]:
            raise ValueError("top degree is not one-dimensional")


def _bits(x: int):
    i = 0
    while x:
        if x & 1:
            yield i
        x >>= 1
        i += 1


def truncated_poly(m: int, var: str = "a") -> GradedAlgebra:
    """H*(RP^m) = GF(2)[a]/(a^(m+1))."""
    names = tuple("1" if i == 0 else (var if i == 1 else f"{var}^{i}") for i in range(m + 1))
    mult = {(i, j): (1 << (i + j)) if i + j <= m else 0
            for i in range(m + 1) for j in range(i, m + 1)}
    return GradedAlgebra(names, tuple(range(m + 1)), mult, m, m)


def point() -> GradedAlgebra:
    return truncated_poly(0)


def tensor(a: GradedAlgebra, b: GradedAlgebra) -> GradedAlgebra:
    """Künneth product over GF(2); basis index i * b.dim + j <-> a_i (x) b_j."""
    n = b.dim
    names, degrees = [], []
    for i, j in itertools.product(range(a.dim), range(b.dim)):
        left, right = a.names[i], b.names[j]
        names.append(right if left == "1" else left if right == "1" else f"{left}{right}")
        degrees.append(a.degrees[i] + b.degrees[j])
    mult = {}
    size = a.dim * n
    for x, y in itertools.combinations_with_replacement(range(size), 2):
        (i1, j1), (i2, j2) = divmod(x, n), divmod(y, n)
        out = 0
        for p in _bits(a.mult[(min(i1, i2), max(i1, i2))]):
            for q in _bits(b.mult[(min(j1, j2), max(j1, j2))]):
                out ^= 1 << (p * n + q)
        mult[(x, y)] = out
    return GradedAlgebra(tuple(names), tuple(degrees), mult,
                         a.top_degree + b.top_degree, a.top_index * n + b.top_index)


def embed(a: GradedAlgebra, b: GradedAlgebra, side: int):
    """Inclusion of a factor into tensor(a, b): side 0 maps a, side 1 maps b."""
    n = b.dim

    def f(x: int) -> int:
        out = 0
        for i in _bits(x):
            out |= 1 << (i * n + b.degrees.index(0)) if side == 0 else 1 << (a.degrees.index(0) * n + i)
        return out
    return f


@dataclass(frozen=True)
class BundleSpec:
    base: GradedAlgebra
    total_w_base: tuple[int, ...]    # w_0..w_d of the base manifold
    total_w_bundle: tuple[int, ...]  # v_0..v_d of the bundle
    rank: int
    label: str = ""

    def __post_init__(self):
        d = self.base.top_degree
        if self.rank < 1:
            raise ValueError("rank must be >= 1")
        for name, classes in (("w", self.total_w_base), ("v", self.total_w_bundle)):
            if len(classes) != d + 1:
                raise ValueError(f"{name} needs components 0..{d}")
            if classes[0] != self.base.one:
                raise ValueError(f"{name}_0 must be 1")
            for i, x in enumerate(classes):
                if not self.base.is_homogeneous(x, i):
                    raise ValueError(f"{name}_{i} does not live in degree {i}")
        for i in range(self.rank + 1, d + 1):
            if self.total_w_bundle[i]:
                raise ValueError(f"v_{i} must vanish above the rank")


def total_class_components(alg: GradedAlgebra, total: int, top: int) -> tuple[int, ...]:
    return tuple(alg.degree_part(total, i) for i in range(top + 1))


class _ProjectiveModel:
    """H*(B)[c]/(c^k + c^(k-1) v_1 + ... + v_k) as lists of base coefficients."""

    def __init__(self, spec: BundleSpec):
        self.spec = spec
        self.k = spec.rank
        base = spec.base
        # padded so that v_i for i > d reads as 0
        self.v = list(spec.total_w_bundle) + [0] * max(0, self.k + 1 - len(spec.total_w_bundle))

    def reduce(self, coeffs: list[int]) -> list[int]:
        base, k = self.spec.base, self.k
        coeffs = list(coeffs)
        for m in range(len(coeffs) - 1, k - 1, -1):
            a = coeffs[m]
            if not a:
                continue
            coeffs[m] = 0
            # c^m = sum_{i=1..k} c^(m-i) v_i
            for i in range(1, k + 1):
                if self.v[i]:
                    coeffs[m - i] ^= base.mul(a, self.v[i])
        return coeffs[:k] + [0] * max(0, k - len(coeffs))

    def mul(self, x: list[int], y: list[int]) -> list[int]:
        base = self.spec.base
        out = [0] * (len(x) + len(y))
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if b:
                    out[i + j] ^= base.mul(a, b)
        return self.reduce(out)


def projectivize(spec: BundleSpec) -> GradedAlgebra:
    """Basis {b c^j : b in basis(base), 0 <= j < k}; index j * dim(base) + b."""
    if spec.rank < 1:
        raise ValueError("rank must be >= 1")
    base, k = spec.base, spec.rank
    model = _ProjectiveModel(spec)
    nb = base.dim
    names, degrees = [], []
    for j in range(k):
        for b in range(nb):
            cpart = "" if j == 0 else ("c" if j == 1 else f"c^{j}")
            bname = base.names[b]
            names.append(cpart or bname if bname == "1" else bname + cpart)
            degrees.append(base.degrees[b] + j)

    def as_coeffs(idx: int) -> list[int]:
        j, b = divmod(idx, nb)
        out = [0] * k
        out[j] = 1 << b
        return out

    def from_coeffs(coeffs: list[int]) -> int:
        out = 0
        for j, a in enumerate(coeffs):
            for b in _bits(a):
                out |= 1 << (j * nb + b)
        return out

    mult = {}
    for x, y in itertools.combinations_with_replacement(range(nb * k), 2):
        mult[(x, y)] = from_coeffs(model.mul(as_coeffs(x), as_coeffs(y)))
    # the top class is [top of base] * c^(k-1)
    top_index = (k - 1) * nb + base.top_index
    return GradedAlgebra(tuple(names), tuple(degrees), mult, base.top_degree + k - 1, top_index)


def lift(spec: BundleSpec, x: int) -> int:
    """Pullback of a base class into projectivize(spec)."""
    return x  # base classes occupy indices 0..dim(base)-1 (the c^0 block)


def c_class(spec: BundleSpec) -> int:
    if spec.rank == 1:
        # c satisfies c = v_1 for a line bundle
        return lift(spec, spec.total_w_bundle[1]) if len(spec.total_w_bundle) > 1 else 0
    return 1 << (spec.base.dim + spec.base.degrees.index(0))


def total_w_projective(spec: BundleSpec) -> tuple[int, ...]:
    """Graded pieces of w(B) * sum_i (1 + c)^(k - i) v_i computed in H*(P(xi))."""
    alg = projectivize(spec)
    k = spec.rank
    one = alg.one
    c = c_class(spec)
    w_base = 0
    for x in spec.total_w_base:
        w_base ^= lift(spec, x)
    one_plus_c = one ^ c
    fiber = 0
    for i, v in enumerate(spec.total_w_bundle):
        if i > k or not v:
            continue
        fiber ^= alg.mul(alg.power(one_plus_c, k - i), lift(spec, v))
    total = alg.mul(w_base, fiber)
    return total_class_components(alg, total, alg.top_degree)


def newton_power_sum(alg: GradedAlgebra, w: Sequence[int], n: int) -> int:
    """Sum of n-th powers of the formal roots, with w_i as elementary symmetric functions."""
    wc = list(w) + [0] * max(0, n + 1 - len(w))
    s = [0] * (n + 1)
    for j in range(1, n + 1):
        acc = wc[j] if j % 2 else 0
        for i in range(1, j):
            if wc[i] and s[j - i]:
                acc ^= alg.mul(wc[i], s[j - i])
        s[j] = acc
    return s[n]


def phi_direct(alg: GradedAlgebra, total_w: Sequence[int], n: int) -> int:
    if alg.top_degree != n:
        raise ValueError(f"algebra has top degree {alg.top_degree}, expected {n}")
    if not total_w or total_w[0] != alg.one:
        raise ValueError("w_0 must be 1")
    s = newton_power_sum(alg, total_w, n)
    return alg.top_eval(alg.degree_part(s, n))


def bundle_profile(spec: BundleSpec) -> NormalProfile:
    """Characteristic numbers of the bundle's classes over the base."""
    base = spec.base
    d = base.top_degree
    nums = {}
    for part in partitions(d):
        x = base.one
        for i in part:
            x = base.mul(x, spec.total_w_bundle[i])
        nums[part] = base.top_eval(x)
    return NormalProfile(d, nums)


def cross_check(n: int, spec: BundleSpec) -> tuple[int, int, int]:
    """Return (ok, lhs, rhs) with lhs = phi^n[P(xi)] and rhs = I_{n,d} on xi."""
    d = spec.base.top_degree
    if spec.rank != n - d + 1:
        raise ValueError(f"rank {spec.rank} does not give an {n}-manifold over a {d}-dim base")
    if is_mersenne(n):
        raise ValueError(f"phi^n is not exposed for n = {n} = 2^k - 1")
    lhs = phi_direct(projectivize(spec), total_w_projective(spec), n)
    rhs = evaluate(ind_poly(n, d), bundle_profile(spec))
    return int(lhs == rhs), lhs, rhs


# --- catalog ------------------------------------------------------------------


@dataclass(frozen=True)
class CatalogBase:
    name: str
    alg: GradedAlgebra
    w: tuple[int, ...]
    line_classes: dict  # name -> w_1 of a line bundle over the base


def real_projective(m: int) -> CatalogBase:
    alg = truncated_poly(m)
    one, a = alg.one, alg.basis(1) if m >= 1 else 0
    total = alg.power(one ^ a, m + 1)
    lines = {"eps": 0}
    if m >= 1:
        lines["gamma"] = a
    return CatalogBase(f"RP{m}" if m else "point", alg,
                       total_class_components(alg, total, m), lines)


def _torus_base() -> CatalogBase:
    a1, b1 = truncated_poly(1, "a"), truncated_poly(1, "b")
    alg = tensor(a1, b1)
    ia, ib = embed(a1, b1, 0), embed(a1, b1, 1)
    a, b = ia(a1.basis(1)), ib(b1.basis(1))
    # RP1 x RP1 is parallelizable
    w = total_class_components(alg, alg.one, 2)
    return CatalogBase("RP1xRP1", alg, w, {"eps": 0, "gamma_a": a, "gamma_b": b, "gamma_ab": a ^ b})


def product(x: CatalogBase, y: CatalogBase) -> CatalogBase:
    """X x Y with w(X x Y) = w(X) w(Y); line bundles pulled back from either factor."""
    alg = tensor(x.alg, y.alg)
    ix, iy = embed(x.alg, y.alg, 0), embed(x.alg, y.alg, 1)
    total = alg.mul(ix(sum(x.w)), iy(sum(y.w)))
    lines = {"eps": 0}
    lines.update({f"{k}_1": ix(v) for k, v in x.line_classes.items() if v})
    lines.update({f"{k}_2": iy(v) for k, v in y.line_classes.items() if v})
    return CatalogBase(f"{x.name}x{y.name}", alg, total_class_components(alg, total, alg.top_degree), lines)


def phi_of(base: CatalogBase) -> int:
    return phi_direct(base.alg, base.w, base.alg.top_degree)


def catalog_bases() -> list[CatalogBase]:
    return [real_projective(0), real_projective(1), real_projective(2), _torus_base(), real_projective(3)]


def line_sum_spec(base: CatalogBase, lines: Sequence[str], rank: int) -> BundleSpec:
    """Sum of the named line bundles padded with trivial summands to the given rank."""
    if len(lines) > rank:
        raise ValueError("more line summands than the rank")
    alg = base.alg
    total = alg.one
    for name in lines:
        total = alg.mul(total, alg.one ^ base.line_classes[name])
    d = alg.top_degree
    label = "+".join(list(lines) + [f"eps^{rank - len(lines)}"] if rank > len(lines) else list(lines))
    return BundleSpec(alg, base.w, total_class_components(alg, total, d), rank, label)


def default_catalog(max_rank: int = 9, n_max: int = 10) -> list[tuple[str, str, int, BundleSpec]]:
    """(base, bundle, n, spec) cases with rank n - d + 1 <= max_rank, n not 2^k - 1."""
    cases = []
    for base in catalog_bases():
        d = base.alg.top_degree
        nontrivial = sorted(k for k in base.line_classes if k != "eps")
        for n in range(d + 1, n_max + 1):
            rank = n - d + 1
            if is_mersenne(n) or rank > max_rank:
                continue
            # up to d nontrivial summands suffice to realize every class pattern
            for count in range(0, min(d, rank) + 1):
                for combo in itertools.combinations_with_replacement(nontrivial, count):
                    spec = line_sum_spec(base, combo, rank)
                    cases.append((base.name, spec.label, n, spec))
    return cases
