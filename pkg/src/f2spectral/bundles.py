"""Sphere bundles: Stiefel-Whitney data, transgressions, Gysin, Borel bases."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Mapping, Optional, Sequence, Union

from .algebra import (
    AlgebraPresentation,
    Element,
    RewriteSystem,
    free_algebra,
    lift,
    normalize,
    tensor,
)
from .linalg import rank
from .spectral import FiberSpec, Page, TransgressionSeed, run_to_einfty


class BundleError(ValueError):
    pass


@dataclass(frozen=True)
class SWClass:
    """Total Stiefel-Whitney class ``w_0 + ... + w_k`` of a rank-k bundle."""

    ring: RewriteSystem
    components: tuple[Element, ...]

    def __post_init__(self):
        if not self.components:
            raise BundleError("a Stiefel-Whitney class needs w_0")
        if self.components[0] != self.ring.one():
            raise BundleError("w_0 must be 1")
        for j, w in enumerate(self.components):
            if w.ring is not self.ring:
                raise BundleError("components live in different rings")
            if w and w.degree != j:
                raise BundleError(f"w_{j} has degree {w.degree}")

    @classmethod
    def parse(cls, ring: RewriteSystem, components: Sequence[Union[str, Element]]) -> "SWClass":
        out = []
        for j, c in enumerate(components):
            if isinstance(c, Element):
                out.append(c if c.ring is ring else lift(c, ring))
            else:
                out.append(ring.element(str(c), j) if str(c).strip() != "0" else ring.zero(j))
        return cls(ring, tuple(out))

    @classmethod
    def trivial(cls, ring: RewriteSystem, k: int) -> "SWClass":
        return cls(ring, (ring.one(),) + tuple(ring.zero(j) for j in range(1, k + 1)))

    @property
    def rank(self) -> int:
        return len(self.components) - 1

    def lift(self, target: RewriteSystem) -> "SWClass":
        return SWClass(target, tuple(lift(w, target) for w in self.components))

    def __str__(self):
        terms = [str(w) for w in self.components if w]
        return " + ".join(terms)


def euler_transgression(sw: SWClass) -> Element:
    """Top class ``w_k``: the transgression of the fiber class of the sphere bundle."""
    return sw.components[-1]


def dold_transgression(sw: SWClass, t: Element) -> Element:
    """``sum_j w_j t^(k-j)`` for a degree-one polynomial generator ``t``."""
    if t.degree != 1 or len(t.terms) != 1:
        raise BundleError("t must be a degree-one generator")
    ring = t.ring
    w = sw.lift(ring) if sw.ring is not ring else sw
    k = w.rank
    out = ring.zero(k)
    for j, wj in enumerate(w.components):
        if wj:
            out = out + wj * t ** (k - j)
    return out


def gysin_betti(base: RewriteSystem, euler: Element, sphere_dim: int, bound: int) -> list[int]:
    """Betti numbers of an ``S^(k-1)`` bundle from the Gysin sequence.

    ``dim H^i(E) = dim coker(e: H^{i-k} -> H^i) + dim ker(e: H^{i-k+1} -> H^{i+1})``.
    """
    k = sphere_dim + 1
    if euler and euler.degree != k:
        raise BundleError(f"Euler class has degree {euler.degree}, expected {k}")
    if base.bound < bound + 1:
        base = normalize(base.presentation, bound + 1)
        euler = lift(euler, base) if euler else base.zero(k)
    elif euler.ring is not base:
        euler = lift(euler, base) if euler else base.zero(k)
    if not euler:
        euler = base.zero(k)

    def cup_rank(src: int) -> int:
        if src < 0:
            return 0
        return rank(base.multiplication_matrix(euler, src)) if euler else 0

    out = []
    for i in range(bound + 1):
        coker = base.dim(i) - cup_rank(i - k)
        src = i - k + 1
        ker = (base.dim(src) - cup_rank(src)) if src >= 0 else 0
        out.append(coker + ker)
    return out


def borel_generator_names(m: int) -> tuple[str, ...]:
    return ("t",) if m == 1 else tuple(f"t{i + 1}" for i in range(m))


def borel_base(m: int, base: AlgebraPresentation) -> AlgebraPresentation:
    """``F2[t_1..t_m] (x) base`` for an action trivial on the base cohomology."""
    if m < 0:
        raise BundleError("group rank must be non-negative")
    if m == 0:
        return base
    return tensor(free_algebra([(n, 1) for n in borel_generator_names(m)]), base)


@dataclass(frozen=True)
class GroupAction:
    """What one Z2 factor does.

    ``"trivial"``, ``"base"`` (acts on the base, trivially on its
    cohomology) or ``"antipodal"`` on fiber factor ``target``.
    """

    kind: str = "trivial"
    target: Optional[int] = None

    def __post_init__(self):
        if self.kind not in ("trivial", "base", "antipodal"):
            raise BundleError(f"unknown action kind {self.kind!r}")
        if (self.kind == "antipodal") != (self.target is not None):
            raise BundleError("an antipodal action needs exactly one fiber factor")

    @classmethod
    def parse(cls, value) -> "GroupAction":
        if isinstance(value, GroupAction):
            return value
        if isinstance(value, Mapping):
            return cls(value.get("kind", "trivial"), value.get("target"))
        text = str(value)
        if text.startswith("antipodal"):
            _, _, idx = text.partition(":")
            return cls("antipodal", int(idx or 0))
        return cls(text)

    def to_json(self):
        return f"antipodal:{self.target}" if self.kind == "antipodal" else self.kind


@dataclass(frozen=True)
class EquivariantBundleSpec:
    """Cohomological data of a sphere bundle with a Z2^m action.

    ``sw`` holds one list of component strings per fiber factor; a single
    entry is reused for every factor.
    """

    base: AlgebraPresentation
    fiber: FiberSpec
    sw: tuple[tuple[str, ...], ...] = ()
    group_rank: int = 0
    actions: tuple[GroupAction, ...] = ()
    seeds: Optional[tuple[Optional[str], ...]] = None
    name: str = ""
    note: str = ""

    def __post_init__(self):
        object.__setattr__(self, "sw", tuple(tuple(str(c) for c in w) for w in self.sw))
        object.__setattr__(self, "actions", tuple(GroupAction.parse(a) for a in self.actions))
        if len(self.actions) != self.group_rank:
            raise BundleError(f"{self.group_rank} group factors but {len(self.actions)} actions")
        nf = len(self.fiber.dims) if self.fiber.kind == "spheres" else 1
        claimed: dict[int, int] = {}
        for k, act in enumerate(self.actions):
            if act.kind != "antipodal":
                continue
            if self.fiber.kind != "spheres" or not 0 <= act.target < nf:
                raise BundleError(f"group factor {k + 1} targets a missing sphere factor {act.target}")
            if act.target in claimed:
                raise BundleError(
                    f"group factors {claimed[act.target] + 1} and {k + 1} both act on sphere factor {act.target}")
            claimed[act.target] = k
        if self.sw and len(self.sw) not in (1, nf):
            raise BundleError("give one Stiefel-Whitney class, or one per fiber factor")
        if self.seeds is not None and len(self.seeds) != nf:
            raise BundleError("explicit seeds must cover every fiber generator")

    def sw_for(self, i: int) -> Optional[tuple[str, ...]]:
        if not self.sw:
            return None
        return self.sw[0] if len(self.sw) == 1 else self.sw[i]

    def without_group(self) -> "EquivariantBundleSpec":
        """The underlying non-equivariant bundle."""
        return replace(self, group_rank=0, actions=())

    def to_json(self) -> dict:
        out = {
            "base": self.base.to_json(),
            "fiber": self.fiber.to_json(),
            "sw": [list(w) for w in self.sw],
            "group": {"rank": self.group_rank, "actions": [a.to_json() for a in self.actions]},
        }
        if self.seeds is not None:
            out["seeds"] = list(self.seeds)
        return out


def assemble_equivariant_seeds(spec: EquivariantBundleSpec, bound: int):
    """Borel base ring and the transgressions of the fiber generators.

    A factor acted on antipodally by group factor ``k`` gets the Dold
    polynomial in ``t_k``; other factors get their Euler class.
    """
    pres = borel_base(spec.group_rank, spec.base)
    ring = normalize(pres, bound + 1)
    tnames = borel_generator_names(spec.group_rank) if spec.group_rank else ()
    by_target = {a.target: k for k, a in enumerate(spec.actions) if a.kind == "antipodal"}
    base_ring = normalize(spec.base, bound + 1)
    images: dict[str, Element] = {}
    for i, (name, deg) in enumerate(spec.fiber.generators):
        if spec.seeds is not None:
            text = spec.seeds[i]
            images[name] = ring.zero(deg + 1) if text in (None, "0") else ring.element(text, deg + 1)
            continue
        comps = spec.sw_for(i)
        k = deg + 1
        if comps is None:
            sw = SWClass.trivial(base_ring, k)
        else:
            sw = SWClass.parse(base_ring, comps)
        if sw.rank != k:
            raise BundleError(
                f"fiber factor {i} is S^{deg}, so its Stiefel-Whitney class needs rank {k}, got {sw.rank}")
        if i in by_target:
            t = ring.gen(tnames[by_target[i]])
            images[name] = dold_transgression(sw, t)
        else:
            images[name] = lift(euler_transgression(sw), ring) if euler_transgression(sw) else ring.zero(k)
    return ring, TransgressionSeed(images)


def run_bundle(spec: EquivariantBundleSpec, bound: int, equivariant: bool = True, **kwargs) -> Page:
    """Stable page for the bundle, or for its Borel construction when ``equivariant``."""
    if not equivariant:
        spec = spec.without_group()
    ring, seed = assemble_equivariant_seeds(spec, bound)
    return run_to_einfty(ring, spec.fiber, seed, bound, **kwargs)


def single_sphere_euler(spec: EquivariantBundleSpec, bound: int):
    """(base ring, Euler class, sphere dimension) of a one-sphere bundle."""
    if spec.fiber.kind != "spheres" or len(spec.fiber.dims) != 1:
        raise BundleError("the Gysin sequence needs a single sphere fiber")
    ring, seed = assemble_equivariant_seeds(spec.without_group(), bound)
    name = spec.fiber.names[0]
    return ring, seed.images[name], spec.fiber.dims[0]


def spec_from_json(data: Mapping, resolve_space=None) -> EquivariantBundleSpec:
    """Build a spec from the bundle JSON format.

    ``base`` is either an inline presentation or a name passed to
    ``resolve_space``.
    """
    base = data["base"]
    if isinstance(base, str):
        if resolve_space is None:
            raise BundleError(f"cannot resolve base {base!r}")
        base = resolve_space(base)
    else:
        base = AlgebraPresentation.from_json(base)
    fib = data.get("fiber", {})
    if "cp" in fib:
        fiber = FiberSpec.projective(int(fib["cp"]))
    else:
        fiber = FiberSpec.spheres(fib.get("spheres", []), fib.get("names"))
    group = data.get("group", {}) or {}
    actions = tuple(GroupAction.parse(a) for a in group.get("actions", []))
    rank_ = int(group.get("rank", len(actions)))
    seeds = data.get("seeds")
    return EquivariantBundleSpec(
        base=base,
        fiber=fiber,
        sw=tuple(tuple(w) for w in data.get("sw", [])),
        group_rank=rank_,
        actions=actions,
        seeds=tuple(seeds) if seeds is not None else None,
        name=str(data.get("name", "")),
    )


__all__ = [
    "BundleError",
    "EquivariantBundleSpec",
    "GroupAction",
    "SWClass",
    "assemble_equivariant_seeds",
    "borel_base",
    "borel_generator_names",
    "run_bundle",
    "single_sphere_euler",
    "dold_transgression",
    "euler_transgression",
    "gysin_betti",
    "spec_from_json",
]
