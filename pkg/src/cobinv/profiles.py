"""Fixed-point data of an involution: normal characteristic numbers per component."""
from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Mapping

from .symfunc import Partition, partition, partitions


@dataclass(frozen=True)
class NormalProfile:
    """Evaluations of every degree-d monomial in w_i(nu X) on [X].

    ``charnums`` must be total over partitions of ``dim``; a missing key is an
    error, never an implicit zero.
    """

    dim: int
    charnums: Mapping[Partition, int]

    def __post_init__(self):
        if self.dim < 0:
            raise ValueError("dimension must be >= 0")
        clean = {partition(k): int(v) & 1 for k, v in self.charnums.items()}
        if len(clean) != len(self.charnums):
            raise ValueError("duplicate partition keys after normalization")
        expected = set(partitions(self.dim))
        if set(clean) != expected:
            missing = sorted(expected - set(clean))
            extra = sorted(set(clean) - expected)
            raise ValueError(f"profile of dim {self.dim} is not total: missing={missing} extra={extra}")
        if self.dim == 0 and clean[()] != 1:
            raise ValueError("a point evaluates the constant 1 to 1")
        object.__setattr__(self, "charnums", dict(sorted(clean.items(), reverse=True)))

    @classmethod
    def trivial(cls, dim: int) -> NormalProfile:
        """Trivial normal bundle: all positive-degree classes vanish."""
        return cls(dim, {p: int(dim == 0) for p in partitions(dim)})

    @classmethod
    def point(cls) -> NormalProfile:
        return cls(0, {(): 1})

    def __getitem__(self, key: Partition) -> int:
        return self.charnums[key]

    def __hash__(self):
        return hash((self.dim, tuple(self.charnums.items())))

    def to_json(self) -> dict:
        return {"dim": self.dim,
                "charnums": {",".join(map(str, k)): v for k, v in self.charnums.items()}}

    @classmethod
    def from_json(cls, obj: dict) -> NormalProfile:
        nums = {}
        for k, v in obj["charnums"].items():
            nums[tuple(int(p) for p in k.split(",") if p)] = v
        return cls(int(obj["dim"]), nums)


@dataclass(frozen=True)
class Topology:
    euler_char: int
    orientable: bool

    def __post_init__(self):
        if self.orientable and self.euler_char % 2:
            raise ValueError("a closed orientable surface has even Euler characteristic")


@dataclass(frozen=True)
class FixedComponent:
    profile: NormalProfile
    label: str = ""
    topology: Topology | None = None
    distinguished: bool = False  # the submanifold M just embedded, needed by a twist

    @property
    def dim(self) -> int:
        return self.profile.dim

    def to_json(self) -> dict:
        out = {"label": self.label, **self.profile.to_json()}
        if self.topology is not None:
            out["euler_char"] = self.topology.euler_char
            out["orientable"] = int(self.topology.orientable)
        if self.distinguished:
            out["distinguished"] = 1
        return out

    @classmethod
    def from_json(cls, obj: dict) -> FixedComponent:
        topo = None
        if "euler_char" in obj:
            topo = Topology(int(obj["euler_char"]), bool(obj.get("orientable", 0)))
        return cls(NormalProfile.from_json(obj), obj.get("label", ""), topo,
                   bool(obj.get("distinguished", 0)))


@dataclass(frozen=True)
class InvolutionProfile:
    """The fixed set F(tau) of an involution on a connected ambient_dim-manifold."""

    ambient_dim: int
    components: tuple[FixedComponent, ...] = field(default_factory=tuple)
    euler_parity: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        for c in self.components:
            if c.dim >= self.ambient_dim:
                raise ValueError(
                    f"fixed component {c.label or '?'} of dim {c.dim} in an "
                    f"ambient manifold of dim {self.ambient_dim}")

    def by_dim(self, d: int) -> list[FixedComponent]:
        return [c for c in self.components if c.dim == d]

    def with_components(self, comps: Iterable[FixedComponent]) -> InvolutionProfile:
        return replace(self, components=tuple(comps))

    def disjoint_union(self, other: InvolutionProfile) -> InvolutionProfile:
        if other.ambient_dim != self.ambient_dim:
            raise ValueError("ambient dimensions differ")
        return replace(self, components=self.components + other.components)

    def to_json(self) -> dict:
        out = {"ambient_dim": self.ambient_dim,
               "components": [c.to_json() for c in self.components]}
        if self.euler_parity is not None:
            out["euler_parity"] = self.euler_parity
        return out

    @classmethod
    def from_json(cls, obj: dict) -> InvolutionProfile:
        parity = obj.get("euler_parity")
        return cls(int(obj["ambient_dim"]),
                   tuple(FixedComponent.from_json(c) for c in obj.get("components", [])),
                   None if parity is None else int(parity) & 1)


def load_profile(path: str | Path) -> InvolutionProfile:
    return InvolutionProfile.from_json(json.loads(Path(path).read_text()))
