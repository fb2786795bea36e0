"""Built-in spaces and bundles.

Spaces are mod-2 cohomology rings; bundles reference their base by name so
a modified catalog (for instance one with a relation dropped) propagates to
every check that uses it.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

from .algebra import AlgebraPresentation, free_algebra
from .bundles import EquivariantBundleSpec, GroupAction, borel_generator_names
from .spectral import FiberSpec


class CatalogError(KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else ""


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    presentation: AlgebraPresentation
    manifold_dim: Optional[int] = None
    note: str = ""


@dataclass(frozen=True)
class BundleEntry:
    """A bundle family; ``build`` takes the catalog and the parameters."""

    name: str
    base: str
    make: Callable[..., EquivariantBundleSpec]
    params: tuple[str, ...] = ()
    note: str = ""

    def build(self, catalog: "Catalog", **params) -> EquivariantBundleSpec:
        args = {k: v for k, v in params.items() if k in self.params and v is not None}
        return self.make(catalog.presentation(self.base), **args)


def _p(gens, rels) -> AlgebraPresentation:
    return AlgebraPresentation.parse(gens, rels)


G2_SO4 = _p([("u2", 2), ("u3", 3)], ["u2^3 + u3^2", "u2^2*u3"])
G2_U2 = _p([("x", 6), ("y", 2)], ["x^2", "y^3"])
G2_T2 = _p([("x", 6), ("y", 2), ("z", 2)], ["x^2", "y^3", "z^2"])
S6 = _p([("x", 6)], ["x^2"])
POINT = AlgebraPresentation((), ())

SW_RHO = ("1", "0", "u2", "u3")
SW_ZETA = ("1", "0", "y", "0", "y^2")


def sphere(k: int) -> AlgebraPresentation:
    return _p([("s", k)], ["s^2"])


def cp(m: int) -> AlgebraPresentation:
    return _p([("y", 2)], [f"y^{m + 1}"])


def bz2(m: int) -> AlgebraPresentation:
    return free_algebra([(n, 1) for n in borel_generator_names(m)])


# -- bundle builders --------------------------------------------------------

def _rho_sphere(base):
    # Conjugation is antipodal on the S^2 fibers and trivial on the base cohomology.
    return EquivariantBundleSpec(base, FiberSpec.spheres([2]), (SW_RHO,), 1, ("antipodal:0",))


def _rho3(base):
    return EquivariantBundleSpec(base, FiberSpec.spheres([2, 2]), (SW_RHO,))


def _rho45(base):
    # No degree-3 class in the base, so the transgression vanishes.
    return EquivariantBundleSpec(base, FiberSpec.spheres([2]), seeds=("0",))


def _rho6(base):
    return EquivariantBundleSpec(base, FiberSpec.projective(2), seeds=("0",))


def _zeta(base, n: int = 1):
    return EquivariantBundleSpec(base, FiberSpec.spheres([3] * n), (SW_ZETA,))


def _phi(base, n: int = 1):
    actions = (GroupAction("base"),) + tuple(GroupAction("antipodal", i) for i in range(n))
    return EquivariantBundleSpec(base, FiberSpec.spheres([3] * n), (SW_ZETA,), n + 1, actions)


def phi_factor(base, n: int, k: int) -> EquivariantBundleSpec:
    """Single-sphere bundle with the Z2^(n+1) action where factor ``k`` (2..n+1) is antipodal.

    Target of the projection onto the (k-1)-th sphere factor of the n-fold bundle.
    """
    if not 2 <= k <= n + 1:
        raise ValueError("k must lie in 2..n+1")
    actions = [GroupAction("base")] + [GroupAction("trivial")] * n
    actions[k - 1] = GroupAction("antipodal", 0)
    return EquivariantBundleSpec(base, FiberSpec.spheres([3]), (SW_ZETA,), n + 1, tuple(actions))


def _free_sphere(base, k: int = 3):
    if k < 2:
        raise ValueError("k must be at least 2")
    return EquivariantBundleSpec(base, FiberSpec.spheres([k - 1]), (("1",) + ("0",) * k,), 1, ("antipodal:0",))


# -- catalog ---------------------------------------------------------------

_PARAM_SPACE = [
    (re.compile(r"Sphere\((\d+)\)\Z"), lambda k: CatalogEntry(f"Sphere({k})", sphere(k), k, "sphere")),
    (re.compile(r"S(\d+)\Z"), lambda k: CatalogEntry(f"Sphere({k})", sphere(k), k, "sphere")),
    (re.compile(r"CP\((\d+)\)\Z"), lambda m: CatalogEntry(f"CP({m})", cp(m), 2 * m, "complex projective space")),
    (re.compile(r"BZ2\^(\d+)\Z"), lambda m: CatalogEntry(f"BZ2^{m}", bz2(m), None, "classifying space of Z2^m")),
]


@dataclass
class Catalog:
    spaces: dict[str, CatalogEntry] = field(default_factory=dict)
    bundles: dict[str, BundleEntry] = field(default_factory=dict)
    aliases: dict[str, str] = field(default_factory=dict)

    @classmethod
    def default(cls) -> "Catalog":
        spaces = {
            "point": CatalogEntry("point", POINT, 0, "a point"),
            "G2_SO4": CatalogEntry("G2_SO4", G2_SO4, 8, "quaternionic flag manifold G2/SO(4)"),
            "G2_U2pm": CatalogEntry("G2_U2pm", G2_U2, 10, "G2/U(2), either of the two conjugacy classes"),
            "G2_T2": CatalogEntry("G2_T2", G2_T2, 12, "full flag manifold G2/T"),
            "S6": CatalogEntry("S6", S6, 6, "six-sphere"),
        }
        aliases = {"G2_U2p": "G2_U2pm", "G2_U2m": "G2_U2pm", "G2_U2+": "G2_U2pm", "G2_U2-": "G2_U2pm"}
        bundles = {
            "rho1": BundleEntry("rho1", "G2_SO4", _rho_sphere,
                                note="G2/U(2)+ -> G2/SO(4), fiber S^2, w = 1 + u2 + u3"),
            "rho2": BundleEntry("rho2", "G2_SO4", _rho_sphere,
                                note="G2/U(2)- -> G2/SO(4), fiber S^2, w = 1 + u2 + u3"),
            "rho3": BundleEntry("rho3", "G2_SO4", _rho3,
                                note="G2/T -> G2/SO(4), fiber SO(4)/T = S^2 x S^2, both factors transgress to u3"),
            "rho4": BundleEntry("rho4", "G2_U2pm", _rho45, note="G2/T -> G2/U(2)+, fiber S^2"),
            "rho5": BundleEntry("rho5", "G2_U2pm", _rho45, note="G2/T -> G2/U(2)-, fiber S^2"),
            "rho6": BundleEntry("rho6", "S6", _rho6, note="G2/U(2)- -> S^6, fiber CP^2"),
            "zeta_n": BundleEntry("zeta_n", "G2_U2pm", _zeta, ("n",),
                                  note="n-fold fiber product of the S^3 bundle with w = 1 + y + y^2"),
            "phi_n": BundleEntry("phi_n", "G2_U2pm", _phi, ("n",),
                                 note="zeta_n with Z2^(n+1): conjugation on the base, antipodal on each sphere"),
            "free-sphere": BundleEntry("free-sphere", "point", _free_sphere, ("k",),
                                       note="S^(k-1) over a point with the antipodal Z2 action"),
        }
        return cls(spaces, bundles, aliases)

    # -- spaces -------------------------------------------------------
    def space(self, name: str) -> CatalogEntry:
        key = self.aliases.get(name, name)
        if key in self.spaces:
            return self.spaces[key]
        for pattern, make in _PARAM_SPACE:
            hit = pattern.match(name)
            if hit:
                arg = int(hit.group(1))
                if arg < 1:
                    break
                return make(arg)
        raise CatalogError(f"unknown space {name!r}; valid names: {', '.join(self.space_names())}")

    def presentation(self, name: str) -> AlgebraPresentation:
        return self.space(name).presentation

    def space_names(self) -> list[str]:
        return sorted(self.spaces) + ["Sphere(k)", "CP(m)", "BZ2^m"]

    def with_space(self, name: str, presentation: AlgebraPresentation) -> "Catalog":
        spaces = dict(self.spaces)
        spaces[name] = replace(spaces[name], presentation=presentation) if name in spaces else \
            CatalogEntry(name, presentation)
        return Catalog(spaces, dict(self.bundles), dict(self.aliases))

    # -- bundles ------------------------------------------------------
    def bundle_entry(self, name: str) -> BundleEntry:
        key = name
        if key not in self.bundles:
            hit = re.match(r"(zeta|phi)_(\d+)\Z", name)
            if hit:
                key = f"{hit.group(1)}_n"
        if key not in self.bundles:
            raise CatalogError(f"unknown bundle {name!r}; valid names: {', '.join(self.bundle_names())}")
        return self.bundles[key]

    def bundle(self, name: str, n: Optional[int] = None, k: Optional[int] = None) -> EquivariantBundleSpec:
        entry = self.bundle_entry(name)
        hit = re.match(r"(zeta|phi)_(\d+)\Z", name)
        if hit and n is None:
            n = int(hit.group(2))
        if "n" in entry.params:
            n = 1 if n is None else n
            if n < 1:
                raise ValueError("n must be at least 1")
        spec = entry.build(self, n=n, k=k)
        label = entry.name.replace("_n", f"_{n}") if "n" in entry.params else entry.name
        return replace(spec, name=label, note=entry.note)

    def bundle_names(self) -> list[str]:
        return sorted(self.bundles)

    def rows(self) -> list[tuple[str, str, str]]:
        out = []
        for name in sorted(self.spaces):
            e = self.spaces[name]
            dim = "" if e.manifold_dim is None else f"dim {e.manifold_dim}"
            out.append(("space", name, f"{e.presentation}  {dim}".rstrip()))
        out.append(("space", "Sphere(k)", "F2[s]/<s^2>, deg s = k"))
        out.append(("space", "CP(m)", "F2[y]/<y^(m+1)>, deg y = 2"))
        out.append(("space", "BZ2^m", "F2[t1..tm], deg 1"))
        for name in sorted(self.bundles):
            b = self.bundles[name]
            out.append(("bundle", name, b.note))
        return out


def bundle_top_degree(catalog: Catalog, spec: EquivariantBundleSpec) -> Optional[int]:
    """Top degree of the total space, when the base is a closed manifold in the catalog.

    Any group action is ignored; the Borel construction picks its own bound.
    """
    for entry in catalog.spaces.values():
        if entry.presentation == spec.base and entry.manifold_dim is not None:
            return entry.manifold_dim + spec.fiber.top_degree
    return None


DEFAULT_BOUND_CAP = 24


def default_bound(top: Optional[int]) -> int:
    """Twice the top degree, capped so every default run stays at desk scale."""
    if top is None:
        return DEFAULT_BOUND_CAP
    return max(1, min(2 * top, DEFAULT_BOUND_CAP))


__all__ = [
    "BundleEntry",
    "Catalog",
    "CatalogEntry",
    "CatalogError",
    "DEFAULT_BOUND_CAP",
    "G2_SO4",
    "G2_T2",
    "G2_U2",
    "S6",
    "SW_RHO",
    "SW_ZETA",
    "bundle_top_degree",
    "bz2",
    "cp",
    "default_bound",
    "phi_factor",
    "sphere",
]
