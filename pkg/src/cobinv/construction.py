"""The embed/twist induction on fixed-point profiles.

Each step embeds the current manifold M^m with involution as a fixed
hypersurface of some (M', tau') whose remaining fixed data is unknown and
supplied by the caller.  If the invariant dropped, the twist along M^m
swaps M^m back out for the old fixed set.  Only the data these moves
transform is tracked: normal characteristic numbers and Euler parity.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field, replace

from .ind import ind_poly, invariant, is_mersenne, period
from .profiles import FixedComponent, InvolutionProfile, NormalProfile
from .symfunc import PolyGF2, partitions


class ConstructionError(ValueError):
    pass


def embed_step(cur: InvolutionProfile, extra: InvolutionProfile) -> InvolutionProfile:
    """Fixed data of tau' on M': the extras plus M itself with trivial normal bundle."""
    m = cur.ambient_dim
    if m < 1:
        raise ConstructionError("cannot embed a 0-dimensional manifold (the case m = k = 0 is excluded)")
    for c in extra.components:
        if c.dim > m:
            raise ConstructionError(f"extra component of dim {c.dim} exceeds m = {m}")
    me = FixedComponent(NormalProfile.trivial(m), f"M^{m}", distinguished=True)
    comps = tuple(replace(c, distinguished=False) for c in extra.components) + (me,)
    return InvolutionProfile(m + 1, comps, euler_parity=extra.euler_parity
                             if extra.ambient_dim == m + 1 else None)


def twist_step(prev: InvolutionProfile, embedded: InvolutionProfile) -> InvolutionProfile:
    """F(tau'') = F(tau) + F(tau') - {M}; normal data of F(tau) is unchanged by adding a trivial line."""
    rest = [c for c in embedded.components if not c.distinguished]
    if len(rest) == len(embedded.components):
        raise ConstructionError("embedded profile lacks the distinguished component M")
    if prev.ambient_dim + 1 != embedded.ambient_dim:
        raise ConstructionError("twist must follow the embedding of prev")
    comps = tuple(replace(c, distinguished=False) for c in prev.components) + tuple(rest)
    return InvolutionProfile(embedded.ambient_dim, comps, euler_parity=embedded.euler_parity)


@dataclass
class Step:
    kind: str                       # "embed" or "twist"
    extra: InvolutionProfile | None = None
    ambient_dim: int = 0
    invariant_after: int = 0
    note: str = ""

    def to_json(self) -> dict:
        out = {"kind": self.kind, "ambient_dim": self.ambient_dim,
               "invariant_after": self.invariant_after}
        if self.extra is not None:
            out["extra"] = self.extra.to_json()
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class ConstructionPlan:
    start: InvolutionProfile
    target_n: int
    steps: list[Step] = field(default_factory=list)
    final: InvolutionProfile | None = None
    even_chi_requested: bool = False
    report: str = ""

    def to_json(self) -> dict:
        out = {
            "start": self.start.to_json(),
            "target_n": self.target_n,
            "start_invariant": invariant(self.target_n, self.start),
            "steps": [s.to_json() for s in self.steps],
            "final": self.final.to_json() if self.final else None,
            "final_invariant": invariant(self.target_n, self.final) if self.final else None,
            "even_chi_requested": self.even_chi_requested,
        }
        if self.report:
            out["report"] = self.report
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=1)


def certify(start: InvolutionProfile, target_n: int,
            extras: list[InvolutionProfile]) -> ConstructionPlan:
    """Run the induction from dim k to target_n, twisting whenever the invariant drops."""
    k = start.ambient_dim
    if k > target_n:
        raise ConstructionError(f"start dimension {k} exceeds the target {target_n}")
    if invariant(target_n, start) != 1:
        raise ConstructionError(f"I({target_n}, M, tau) = 0 for the start profile")
    if k < 1:
        raise ConstructionError("start manifold must have positive dimension")
    if len(extras) != target_n - k:
        raise ConstructionError(f"need {target_n - k} extras, got {len(extras)}")
    plan = ConstructionPlan(start, target_n)
    cur = start
    for extra in extras:
        embedded = embed_step(cur, extra)
        value = invariant(target_n, embedded)
        plan.steps.append(Step("embed", extra, embedded.ambient_dim, value))
        if value == 1:
            cur = embedded
        else:
            cur = twist_step(cur, embedded)
            plan.steps.append(Step("twist", None, cur.ambient_dim, invariant(target_n, cur)))
        if invariant(target_n, cur) != 1:  # pragma: no cover - guarded by additivity
            raise ConstructionError("induction lost the invariant")
    plan.final = cur
    return plan


def random_profile(rng: random.Random, ambient: int, max_dim: int, count: int) -> InvolutionProfile:
    """Adversarial extra fixed data: random dims <= max_dim, random normal numbers."""
    comps = []
    for i in range(count):
        d = rng.randint(0, max_dim)
        nums = {p: (1 if d == 0 else rng.randint(0, 1)) for p in partitions(d)}
        comps.append(FixedComponent(NormalProfile(d, nums), f"extra{i}"))
    return InvolutionProfile(ambient, tuple(comps))


def random_extras(seed: int, start_dim: int, target_n: int, max_count: int = 4) -> list[InvolutionProfile]:
    rng = random.Random(seed)
    out = []
    for m in range(start_dim, target_n):
        out.append(random_profile(rng, m + 1, m, rng.randint(0, max_count)))
    return out


def empty_extras(start_dim: int, target_n: int) -> list[InvolutionProfile]:
    return [InvolutionProfile(m + 1) for m in range(start_dim, target_n)]


def cobordism_rank(n: int) -> int:
    """dim N_n over GF(2): partitions of n into parts not of the form 2^k - 1."""
    return sum(1 for p in partitions(n) if not any(is_mersenne(x) for x in p))


def ensure_even_characteristic(plan: ConstructionPlan) -> ConstructionPlan:
    """Annotate each embedding so chi(M') is even, and report what that pins down.

    Separating case: M' is a double.  Non-separating case: pass to the double
    cover cut out by M.  Either way chi(M') is even and the twist keeps it.
    """
    steps = []
    for s in plan.steps:
        if s.kind == "embed":
            s = replace(s, note="chi(M') even: M' is a double if M separates, "
                                "else replaced by the double cover defined by M")
        steps.append(s)
    final = replace(plan.final, euler_parity=0) if plan.final else None
    n = plan.target_n
    phi = invariant(n, final) if final else None
    if n == 4 and phi == 1:
        report = "class = [RP4 + RP2xRP2] determined by phi^4 = 1 and w_4 = 0"
    elif phi == 1 and cobordism_rank(n) == 1:
        report = f"class = x_{n} determined by phi^{n} = 1 (N_{n} has rank 1)"
    else:
        report = f"class not determined by phi^{n} and w_{n} (N_{n} has rank {cobordism_rank(n)})"
    return replace(plan, steps=steps, final=final, even_chi_requested=True, report=report)


# --- reports --------------------------------------------------------------------


def coverage_report(prof: InvolutionProfile, n_max: int) -> dict:
    """Dimensions n in [dim M, n_max] with I(n, M, tau) = 1, grouped by residue class."""
    k = prof.ambient_dim
    if k < 1:
        raise ConstructionError("profile must have positive ambient dimension")
    top = max((c.dim for c in prof.components), default=0)
    mod = period(top)
    hits = [n for n in range(k, n_max + 1) if invariant(n, prof) == 1]
    classes = []
    for r in range(mod):
        # periodicity holds for every n >= 0, so one value decides the class
        members = [n for n in range(k, n_max + 1) if n % mod == r]
        if members and invariant(members[0], prof) == 1:
            classes.append({"residue": r, "modulus": mod, "from": members[0],
                            "description": f"n = {r} mod {mod}, n >= {members[0]}"})
    return {
        "ambient_dim": k,
        "modulus": mod,
        "classes": classes,
        "values": hits,
        "phi_undefined": [n for n in hits if is_mersenne(n)],
    }


@dataclass(frozen=True)
class Requirement:
    n: int
    k: int
    m: int
    start_dim: int
    condition: str

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k, "m": self.m, "start_dim": self.start_dim,
                "condition": self.condition}


def feasibility_requirement(n: int) -> Requirement:
    """For odd n = 2^k (2m + 1) - 1, the lowest fixed dimension that can contribute."""
    if n % 2 == 0:
        raise ConstructionError("even n is handled by starting from a 3-manifold")
    if is_mersenne(n):
        raise ConstructionError(f"n = {n} is of the form 2^k - 1")
    k, q = 0, n + 1
    while q % 2 == 0:
        q //= 2
        k += 1
    top = 2 ** k
    for d in range(top):
        if ind_poly(n, d):
            raise ConstructionError(f"I_{{{n},{d}}} is nonzero, contradicting the initial zeros")
    if ind_poly(n, top) != PolyGF2.var(1) ** top:
        raise ConstructionError(f"I_{{{n},{top}}} is not v1^{top}")
    return Requirement(n, k, (q - 1) // 2, top + 1,
                       f"sum over X in F_{top} of w1^{top}(nu X) = 1")
