"""Multiplicative Serre spectral sequences with trivial coefficients.

The E2 term ``H*(B) (x) H*(F)`` is realized as the bigraded algebra ``C``
(the tensor ring).  Transgression seeds ``z_i -> tau_i`` extend to a
derivation ``D`` of ``C`` that vanishes on the base, which is the Leibniz
propagation of the seeds.  Filtering ``C`` by base degree turns ``(C, D)``
into a filtered complex whose spectral sequence has exactly the pages
obtained by seeding, propagating and turning.

Each page stores, for every bidegree ``(p, q)``, two subspaces of the
``(p, q)`` summand of ``C``: cycles ``zz`` (leading parts of elements that
survive to page r) and boundaries ``bb`` (leading parts of what has been
hit).  ``E_r^{p,q} = zz / bb``.

Vectors in total degree ``n`` put filtration ``p = n`` in the lowest bits
and ``p = 0`` in the highest, so the echelon pivot of any element sits in
its lowest filtration.  Inside a filtration block the smallest monomial
gets the highest bit, so pivots and representatives prefer small
monomials.

Pieces in total degree ``bound + 1`` form a frontier: only their
boundaries are tracked, so differentials leaving degree ``bound`` have an
honest target.  The frontier is never reported.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional, Sequence

from .algebra import (
    AlgebraPresentation,
    Element,
    GradedIdeal,
    Monomial,
    RewriteSystem,
    lift,
    multiply,
    normalize,
    tensor_renaming,
)
from .linalg import (
    BitMatrix,
    ContainmentError,
    Quotient,
    Subspace,
    bits,
    kernel_basis,
    quotient_reps,
    rank,
    solve,
)


class SpectralError(ValueError):
    pass


class SeedError(SpectralError):
    pass


# ---------------------------------------------------------------------------
# fibers

@dataclass(frozen=True)
class FiberSpec:
    kind: str  # "spheres" or "cp"
    dims: tuple[int, ...]
    names: tuple[str, ...]

    @classmethod
    def spheres(cls, dims: Sequence[int], names: Optional[Sequence[str]] = None) -> "FiberSpec":
        dims = tuple(int(d) for d in dims)
        if any(d < 1 for d in dims):
            raise ValueError("sphere dimensions must be positive")
        if names is None:
            names = ("z",) if len(dims) == 1 else tuple(f"z{i + 1}" for i in range(len(dims)))
        if len(names) != len(dims):
            raise ValueError("one name per sphere factor")
        return cls("spheres", dims, tuple(names))

    @classmethod
    def projective(cls, m: int, name: str = "y") -> "FiberSpec":
        if m < 1:
            raise ValueError("complex dimension must be positive")
        return cls("cp", (m,), (name,))

    @classmethod
    def point(cls) -> "FiberSpec":
        return cls("spheres", (), ())

    @property
    def generators(self) -> tuple[tuple[str, int], ...]:
        if self.kind == "cp":
            return ((self.names[0], 2),)
        return tuple(zip(self.names, self.dims))

    @property
    def presentation(self) -> AlgebraPresentation:
        if self.kind == "cp":
            return AlgebraPresentation.parse(self.generators, [f"{self.names[0]}^{self.dims[0] + 1}"])
        return AlgebraPresentation.parse(self.generators, [f"{n}^2" for n in self.names])

    @property
    def top_degree(self) -> int:
        if self.kind == "cp":
            return 2 * self.dims[0]
        return sum(self.dims)

    def to_json(self) -> dict:
        if self.kind == "cp":
            return {"cp": self.dims[0]}
        return {"spheres": list(self.dims)}

    def __str__(self):
        if self.kind == "cp":
            return f"CP^{self.dims[0]}"
        if not self.dims:
            return "point"
        return " x ".join(f"S^{d}" for d in self.dims)


@dataclass(frozen=True)
class TransgressionSeed:
    """Images of fiber generators in the base ring."""

    images: Mapping[str, Element]

    def __post_init__(self):
        object.__setattr__(self, "images", dict(self.images))


# ---------------------------------------------------------------------------
# the filtered model

class SerreModel:
    """The bigraded algebra ``C`` with the derivation defined by the seeds."""

    def __init__(self, base: RewriteSystem, fiber: FiberSpec, seeds: Optional[Mapping[str, Element]], bound: int):
        if bound < 0:
            raise ValueError("bound must be non-negative")
        self.bound = bound
        self.fiber = fiber
        if base.bound < bound + 1:
            base = normalize(base.presentation, bound + 1)
        self.base = base
        pres, rename = tensor_renaming(base.presentation, fiber.presentation)
        self.rename = rename
        self.ring = normalize(pres, bound + 1)
        self.nbase = len(base.names)
        self.fiber_names = tuple(rename[n] for n in fiber.names)
        self.tau: list[Optional[Element]] = []
        seeds = dict(seeds or {})
        for orig, (name, deg) in zip(fiber.names, fiber.generators):
            img = seeds.pop(orig, None)
            if img is None:
                img = seeds.pop(name, None)
            if img is None or not img:
                self.tau.append(None)
                continue
            if img.degree != deg + 1:
                raise SeedError(f"seed for {orig} has degree {img.degree}, expected {deg + 1}")
            if fiber.kind == "cp" and fiber.dims[0] % 2 == 0:
                raise SeedError(
                    f"a nonzero transgression of the generator of CP^{fiber.dims[0]} is incompatible "
                    "with its top relation")
            self.tau.append(lift(img, self.ring))
        if seeds:
            raise SeedError(f"seeds given for unknown fiber generators {sorted(seeds)}")
        self._layouts: dict[int, tuple] = {}
        self._dcols: dict[int, list[int]] = {}

    # -- layout -------------------------------------------------------
    def base_degree(self, m: Monomial) -> int:
        return sum(w * e for w, e in zip(self.ring.weights[: self.nbase], m[: self.nbase]))

    def layout(self, n: int):
        """(monomials in bit order, monomial -> bit, p -> (lo, hi))."""
        hit = self._layouts.get(n)
        if hit is not None:
            return hit
        by_p: dict[int, list] = {}
        for m in self.ring.degree_basis(n):
            by_p.setdefault(self.base_degree(m), []).append(m)
        mons: list = []
        groups = {}
        for p in range(n, -1, -1):
            block = by_p.get(p, [])
            groups[p] = (len(mons), len(mons) + len(block))
            mons.extend(block)
        index = {m: i for i, m in enumerate(mons)}
        hit = (tuple(mons), index, groups)
        self._layouts[n] = hit
        return hit

    def dim(self, n: int) -> int:
        return len(self.layout(n)[0])

    def group(self, p: int, q: int) -> tuple[int, int]:
        if p < 0 or q < 0:
            return (0, 0)
        return self.layout(p + q)[2][p]

    def group_mask(self, p: int, q: int) -> int:
        lo, hi = self.group(p, q)
        return ((1 << hi) - 1) ^ ((1 << lo) - 1)

    def group_dim(self, p: int, q: int) -> int:
        lo, hi = self.group(p, q)
        return hi - lo

    def above_mask(self, n: int, p: int) -> int:
        """Bits of filtration strictly below ``p`` in total degree ``n``."""
        full = (1 << self.dim(n)) - 1
        if p > n:
            return full
        if p <= 0:
            return 0
        hi = self.layout(n)[2][p][1]
        return full >> hi << hi

    # -- conversion ---------------------------------------------------
    def to_vector(self, e: Element) -> int:
        idx = self.layout(e.degree)[1]
        v = 0
        for m in e.terms:
            v |= 1 << idx[m]
        return v

    def element(self, n: int, v: int) -> Element:
        mons = self.layout(n)[0]
        return Element(self.ring, n, frozenset(mons[j] for j in bits(v)))

    def label(self, n: int, v: int) -> str:
        return str(self.element(n, v))

    # -- differential -------------------------------------------------
    def d_columns(self, n: int) -> list[int]:
        """Images under D of the degree-``n`` basis, as degree ``n+1`` vectors."""
        hit = self._dcols.get(n)
        if hit is not None:
            return hit
        if n > self.bound:
            raise SpectralError(f"differential out of degree {n} lies beyond the frontier")
        mons = self.layout(n)[0]
        cols = []
        for m in mons:
            cols.append(self.to_vector(self.derivative(Element(self.ring, n, frozenset((m,))))))
        self._dcols[n] = cols
        return cols

    def derivative(self, e: Element) -> Element:
        out = self.ring.zero(e.degree + 1)
        for m in e.terms:
            for k, tau in enumerate(self.tau):
                i = self.nbase + k
                if tau is None or m[i] % 2 == 0:
                    continue
                rest = list(m)
                rest[i] -= 1
                out = out + multiply(Element(self.ring, e.degree - self.ring.weights[i], frozenset((tuple(rest),))), tau)
        return out

    def apply_d(self, n: int, v: int) -> int:
        cols = self.d_columns(n)
        out = 0
        for j in bits(v):
            out ^= cols[j]
        return out

    def shift(self) -> Optional[int]:
        """Smallest filtration jump of D, or None when D = 0."""
        jumps = [w + 1 for (tau, w) in zip(self.tau, self.ring.weights[self.nbase:]) if tau is not None]
        return min(jumps) if jumps else None


# ---------------------------------------------------------------------------
# pages

class Page:
    """One page E_r, as cycle and boundary subspaces per bidegree."""

    def __init__(self, model: SerreModel, r: int, zz: Mapping, bb: Mapping, stable: bool = False):
        self.model = model
        self.r = r
        self.zz: dict[tuple[int, int], Subspace] = dict(zz)
        self.bb: dict[tuple[int, int], Subspace] = dict(bb)
        self.stable = stable
        self.bound = model.bound
        self._quot: dict = {}
        self._dmat: dict = {}
        self._dvals: dict = {}

    # -- shape ----------------------------------------------------------
    def keys(self, frontier: bool = False):
        top = self.bound + (1 if frontier else 0)
        return sorted(k for k in self.zz if sum(k) <= top)

    def is_frontier(self, p: int, q: int) -> bool:
        return p + q == self.bound + 1

    def dim(self, p: int, q: int) -> int:
        key = (p, q)
        if key not in self.zz:
            return 0
        return self.zz[key].dim - self.bb[key].dim

    @property
    def pieces(self) -> dict[tuple[int, int], int]:
        return {k: self.dim(*k) for k in self.keys() if self.dim(*k)}

    def quotient(self, p: int, q: int) -> Quotient:
        key = (p, q)
        hit = self._quot.get(key)
        if hit is None:
            hit = Quotient(self.bb[key], self.zz[key])
            self._quot[key] = hit
        return hit

    def reps(self, p: int, q: int) -> tuple[int, ...]:
        if (p, q) not in self.zz:
            return ()
        return self.quotient(p, q).reps

    def rep_elements(self, p: int, q: int) -> list[Element]:
        return [self.model.element(p + q, v) for v in self.reps(p, q)]

    def labels(self, p: int, q: int) -> list[str]:
        return [str(e) for e in self.rep_elements(p, q)]

    def total_dims(self) -> list[int]:
        out = [0] * (self.bound + 1)
        for (p, q) in self.keys():
            out[p + q] += self.dim(p, q)
        return out

    def target(self, p: int, q: int) -> Optional[tuple[int, int]]:
        t = (p + self.r, q - self.r + 1)
        if t[1] < 0 or t not in self.zz:
            return None
        return t

    # -- differential ---------------------------------------------------
    def d_value(self, p: int, q: int, a: int) -> int:
        """``pi_{p+r}(D c)`` for a lift ``c`` of the cycle ``a`` in ``zz[p, q]``.

        Returned as a vector in total degree ``p + q + 1``; zero when the
        target bidegree does not exist.
        """
        if self.target(p, q) is None or not a:
            return 0
        m = self.model
        n = p + q
        r = self.r
        dv = m.apply_d(n, a)
        low = m.above_mask(n + 1, p + r)
        if dv & low:
            # Cancel components of filtration p+1 .. p+r-1 using elements of F^{p+1}.
            units = []
            for s in range(p + 1, p + r):
                if s > n:
                    break
                lo, hi = m.group(s, n - s)
                units.extend(range(lo, hi))
            cols = [m.d_columns(n)[j] & low for j in units]
            rows = m.dim(n + 1)
            x = solve(BitMatrix.from_columns(cols, rows), dv & low) if units else None
            if x is None:
                raise SpectralError(f"element of E_{r}^{{{p},{q}}} is not a cycle on page {r}")
            for i in bits(x):
                dv ^= m.d_columns(n)[units[i]]
        return dv & m.group_mask(p + r, q - r + 1)

    def differential(self, p: int, q: int) -> Optional[BitMatrix]:
        """Matrix of d_r from coordinates of E_r^{p,q} to those of its target."""
        key = (p, q)
        if key in self._dmat:
            return self._dmat[key]
        t = self.target(p, q)
        if t is None or self.is_frontier(p, q) or p + q > self.bound:
            self._dmat[key] = None
            return None
        tq = self.quotient(*t)
        vals = []
        cols = []
        for a in self.reps(p, q):
            v = self.d_value(p, q, a)
            vals.append(v)
            try:
                cols.append(tq.coords(v))
            except ContainmentError:
                raise SpectralError(
                    f"d_{self.r} of a class in bidegree ({p},{q}) does not land in the cycles of {t}") from None
        mat = BitMatrix.from_columns(cols, tq.dim)
        self._dmat[key] = mat
        self._dvals[key] = vals
        return mat

    def d_class(self, p: int, q: int, a: int) -> int:
        """Coordinates of d_r of the class of ``a`` (0 if there is no target)."""
        t = self.target(p, q)
        if t is None:
            return 0
        return self.quotient(*t).coords(self.d_value(p, q, a))

    def differentials(self) -> dict[tuple[int, int], BitMatrix]:
        out = {}
        for (p, q) in self.keys():
            mat = self.differential(p, q)
            if mat is not None and not mat.is_zero():
                out[(p, q)] = mat
        return out

    def check_d_squared(self):
        for (p, q) in self.keys():
            first = self.differential(p, q)
            t = self.target(p, q)
            if first is None or t is None or sum(t) > self.bound:
                continue
            second = self.differential(*t)
            if second is None:
                continue
            if not (second @ first).is_zero():
                raise SpectralError(f"d_{self.r} o d_{self.r} is nonzero starting at bidegree ({p},{q})")

    def is_vacuous(self) -> bool:
        """True when no d_s with s >= r can have both source and target nonzero."""
        for (p, q) in self.keys():
            if not self.dim(p, q):
                continue
            s = self.r
            while q - s + 1 >= 0:
                t = (p + s, q - s + 1)
                if t in self.zz and self.dim(*t):
                    return False
                s += 1
        return True

    # -- multiplication -------------------------------------------------
    def product(self, p1: int, q1: int, a: int, p2: int, q2: int, b: int) -> int:
        m = self.model
        e = multiply(m.element(p1 + q1, a), m.element(p2 + q2, b))
        return m.to_vector(e)

    def check_leibniz(self, trials: int = 100, rng: Optional[random.Random] = None) -> int:
        """d(ab) = d(a) b + a d(b) on random pairs of classes; returns the count checked."""
        rng = rng or random.Random(0)
        keys = [k for k in self.keys() if self.dim(*k)]
        pairs = [(k1, k2) for k1 in keys for k2 in keys if sum(k1) + sum(k2) <= self.bound]
        if not pairs:
            return 0
        done = 0
        for _ in range(trials):
            (p1, q1), (p2, q2) = pairs[rng.randrange(len(pairs))]
            a = self.quotient(p1, q1).lift(rng.randrange(1, 1 << self.dim(p1, q1)))
            b = self.quotient(p2, q2).lift(rng.randrange(1, 1 << self.dim(p2, q2)))
            p, q = p1 + p2, q1 + q2
            ab = self.product(p1, q1, a, p2, q2, b)
            t = self.target(p, q)
            if t is None:
                done += 1
                continue
            lhs = self.d_value(p, q, ab)
            da = self.d_value(p1, q1, a)
            db = self.d_value(p2, q2, b)
            rhs = 0
            if da:
                rhs ^= self.product(p1 + self.r, q1 - self.r + 1, da, p2, q2, b)
            if db:
                rhs ^= self.product(p1, q1, a, p2 + self.r, q2 - self.r + 1, db)
            diff = (lhs ^ rhs) & self.model.group_mask(*t)
            if diff not in self.bb[t]:
                raise SpectralError(
                    f"Leibniz rule fails on page {self.r} for classes in ({p1},{q1}) and ({p2},{q2})")
            done += 1
        return done

    # -- output ---------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "page": self.r,
            "bound": self.bound,
            "stable": self.stable,
            "pieces": [
                {"p": p, "q": q, "dim": self.dim(p, q), "reps": self.labels(p, q)}
                for (p, q) in self.keys() if self.dim(p, q)
            ],
            "total": self.total_dims(),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    def grid(self) -> str:
        """Text grid of dimensions, q upward, p to the right."""
        keys = [k for k in self.keys() if self.dim(*k)]
        if not keys:
            return "(empty)"
        pmax = max(p for p, _ in keys)
        qmax = max(q for _, q in keys)
        width = max(2, len(str(max(self.dim(*k) for k in keys))))
        lines = []
        for q in range(qmax, -1, -1):
            cells = []
            for p in range(pmax + 1):
                d = self.dim(p, q)
                cells.append(str(d).rjust(width) if d else ".".rjust(width))
            lines.append(f"{q:>3} | " + " ".join(cells))
        lines.append("    +-" + "-" * ((width + 1) * (pmax + 1)))
        lines.append("      " + " ".join(str(p).rjust(width) for p in range(pmax + 1)))
        return "\n".join(lines)

    def __repr__(self):
        return f"Page(r={self.r}, bound={self.bound}, stable={self.stable}, total={sum(self.total_dims())})"


# ---------------------------------------------------------------------------
# operations

def _e2(model: SerreModel, r: int = 2) -> Page:
    zz = {}
    bb = {}
    for n in range(model.bound + 2):
        for p in range(n + 1):
            q = n - p
            g = model.group_dim(p, q)
            if not g:
                continue
            lo, _ = model.group(p, q)
            zz[(p, q)] = Subspace(model.dim(n), tuple(1 << (lo + i) for i in reversed(range(g))))
            bb[(p, q)] = Subspace.zero(model.dim(n))
    return Page(model, r, zz, bb)


def build_e2(base: RewriteSystem, fiber: FiberSpec, bound: int) -> Page:
    """E2 = H*(B) (x) H*(F) with all differentials zero."""
    return _e2(SerreModel(base, fiber, None, bound))


def seed_transgression(pg: Page, seed) -> Page:
    """Attach transgressions ``z_i -> seed(z_i)`` to a fresh page."""
    if isinstance(seed, TransgressionSeed):
        seed = seed.images
    if pg.model.shift() is not None:
        raise SeedError("page already carries transgressions")
    model = SerreModel(pg.model.base, pg.model.fiber, seed, pg.bound)
    jump = model.shift()
    if jump is not None and pg.r > jump:
        raise SeedError(f"a transgression on page {jump} cannot be seeded on page {pg.r}")
    return Page(model, pg.r, pg.zz, pg.bb)


def propagate_leibniz(pg: Page) -> Page:
    """Fill in d_r on every piece within bound (the Leibniz extension of the seeds)."""
    for (p, q) in pg.keys():
        pg.differential(p, q)
    return pg


def turn_page(pg: Page, check: bool = True) -> Page:
    """E_{r+1} = ker d_r / im d_r, with bookkeeping checks."""
    propagate_leibniz(pg)
    if check:
        pg.check_d_squared()
    zz = dict(pg.zz)
    bb = dict(pg.bb)
    rank_out = [0] * (pg.bound + 2)
    for (p, q) in pg.keys():
        mat = pg.differential(p, q)
        if mat is None:
            continue
        t = pg.target(p, q)
        quot = pg.quotient(p, q)
        ker = kernel_basis(mat)
        zz[(p, q)] = pg.bb[(p, q)].extend(quot.lift(c) for c in ker.basis)
        vals = pg._dvals[(p, q)]
        if any(vals):
            bb[t] = bb[t].extend(v for v in vals if v)
        rank_out[p + q] = rank_out[p + q] + rank(mat)
    nxt = Page(pg.model, pg.r + 1, zz, bb)
    if check:
        before = pg.total_dims()
        after = nxt.total_dims()
        for n in range(pg.bound + 1):
            expect = before[n] - rank_out[n] - (rank_out[n - 1] if n else 0)
            if after[n] != expect:
                raise SpectralError(
                    f"dimension bookkeeping fails in total degree {n} turning page {pg.r}: "
                    f"{before[n]} - {rank_out[n]} - {rank_out[n - 1] if n else 0} != {after[n]}")
        for key, sub in bb.items():
            if not sub.issubspace(zz[key]):
                raise SpectralError(f"boundaries escape the cycles at {key} on page {nxt.r}")
    return nxt


def run_to_einfty(base: RewriteSystem, fiber: FiberSpec, seeds, bound: int,
                  observer: Optional[Callable[[Page], None]] = None,
                  leibniz_trials: int = 0, rng: Optional[random.Random] = None) -> Page:
    """Turn pages until no differential can be nonzero; returns the stable page."""
    pg = build_e2(base, fiber, bound)
    if seeds:
        pg = seed_transgression(pg, seeds)
    rng = rng or random.Random(0)
    while True:
        if pg.is_vacuous():
            pg.stable = True
            if observer:
                observer(pg)
            return pg
        if observer:
            observer(pg)
        propagate_leibniz(pg)
        if leibniz_trials and pg.differentials():
            pg.check_leibniz(leibniz_trials, rng)
        pg = turn_page(pg)


def additive_total(pg: Page) -> list[int]:
    if not pg.stable:
        raise SpectralError("additive_total needs a stable page")
    return pg.total_dims()


def complex_homology(model: SerreModel) -> list[int]:
    """Betti numbers of ``(C, D)`` ignoring the filtration; an oracle for E_infinity."""
    out = []
    ranks = {}

    def rk(n):
        if n < 0:
            return 0
        if n not in ranks:
            ranks[n] = rank(BitMatrix.from_columns(model.d_columns(n), model.dim(n + 1)))
        return ranks[n]

    for n in range(model.bound + 1):
        out.append(model.dim(n) - rk(n) - rk(n - 1))
    return out


# ---------------------------------------------------------------------------
# ring reconstruction

@dataclass
class RingReconstruction:
    additive: list[int]
    graded_presentation: Optional[AlgebraPresentation]
    labels: dict[str, str] = field(default_factory=dict)
    bidegrees: dict[str, tuple[int, int]] = field(default_factory=dict)
    exact: bool = False
    ambiguities: tuple[str, ...] = ()

    @property
    def presentation(self) -> Optional[AlgebraPresentation]:
        """The ring of the total space, or None when only the additive answer is certain."""
        return self.graded_presentation if self.exact else None

    @property
    def additive_only(self) -> bool:
        return not self.exact

    def to_json(self) -> dict:
        return {
            "additive": self.additive,
            "exact": self.exact,
            "presentation": self.graded_presentation.to_json() if self.graded_presentation else None,
            "labels": self.labels,
            "bidegrees": {k: list(v) for k, v in self.bidegrees.items()},
            "ambiguities": list(self.ambiguities),
        }


def reconstruct_ring(pg: Page) -> RingReconstruction:
    """Present E_infinity as an algebra and decide whether it is the total ring.

    Relations are computed in the associated graded ring.  A relation in
    bidegree (p, q) can only pick up correction terms of higher filtration
    in the same total degree; when all of those pieces vanish for every
    relation, the associated graded presentation is the ring itself.
    """
    additive = additive_total(pg)
    m = pg.model
    bound = pg.bound
    keys = [k for k in pg.keys() if pg.dim(*k)]
    notes: list[str] = []

    def in_cycles(key, v):
        return key in pg.zz and v in pg.zz[key]

    # Multiplicative generators, bidegree by bidegree.
    gens: list[tuple[str, tuple[int, int], int]] = []
    for key in sorted(keys, key=lambda k: (sum(k), k[0])):
        if key == (0, 0):
            continue
        p, q = key
        dec = []
        for _, (p1, q1), v1 in gens:
            p2, q2 = p - p1, q - q1
            if (p2, q2) == (0, 0) or p2 < 0 or q2 < 0 or not pg.dim(p2, q2):
                continue
            for v2 in pg.reps(p2, q2):
                prod = pg.product(p1, q1, v1, p2, q2, v2)
                if not in_cycles(key, prod):
                    return RingReconstruction(additive, None, exact=False,
                                              ambiguities=(f"products into {key} are not permanent cycles",))
                dec.append(prod)
        lower = pg.bb[key].extend(dec)
        new = quotient_reps(lower, pg.zz[key])
        for i, v in enumerate(new):
            name = f"e{p}_{q}" if len(new) == 1 else f"e{p}_{q}_{i + 1}"
            gens.append((name, key, v))

    if not gens:
        pres = AlgebraPresentation((), ())
        return RingReconstruction(additive, pres, exact=True)

    free = normalize(AlgebraPresentation(tuple((g[0], sum(g[1])) for g in gens), ()), bound)
    # Evaluate monomials in the generators inside C, degree by degree.
    values: dict[Monomial, tuple[tuple[int, int], int]] = {}
    zero = (0,) * len(gens)
    values[zero] = ((0, 0), m.to_vector(m.ring.one()))
    pieces = [Subspace.zero(free.dim(0))]
    for n in range(1, bound + 1):
        basis = free.degree_basis(n)
        cols = []
        for mono in basis:
            i = next(j for j, e in enumerate(mono) if e)
            prev = list(mono)
            prev[i] -= 1
            pkey, pv = values[tuple(prev)]
            gkey, gv = gens[i][1], gens[i][2]
            key = (pkey[0] + gkey[0], pkey[1] + gkey[1])
            v = pg.product(pkey[0], pkey[1], pv, gkey[0], gkey[1], gv) if pv else 0
            if key in pg.zz:
                v = pg.bb[key].reduce(v)
                if v and v not in pg.zz[key]:
                    return RingReconstruction(additive, None, exact=False,
                                              ambiguities=(f"a product lands outside the cycles at {key}",))
            else:
                v = 0
            values[mono] = (key, v)
            cols.append(v)
        mat = BitMatrix.from_columns(cols, m.dim(n))
        pieces.append(kernel_basis(mat))
    ideal = GradedIdeal.from_pieces(free, pieces)
    relations = tuple(g.terms for g in ideal.minimal_generators)
    pres = AlgebraPresentation(free.presentation.generators, relations)

    for rel in ideal.minimal_generators:
        mono = next(iter(rel.terms))
        key = values[mono][0]
        n = rel.degree
        higher = [(p2, n - p2) for p2 in range(key[0] + 1, n + 1) if pg.dim(p2, n - p2)]
        if higher:
            notes.append(f"relation {rel} in bidegree {key} may pick up terms from " +
                         ", ".join(f"E_inf^{{{a},{b}}}" for a, b in higher))
    series = normalize(pres, bound).hilbert_series(bound)
    if series != additive:
        notes.append("presented ring does not reproduce the additive total within the bound")
    labels = {g[0]: m.label(sum(g[1]), g[2]) for g in gens}
    bidegrees = {g[0]: g[1] for g in gens}
    return RingReconstruction(additive, pres, labels, bidegrees, exact=not notes, ambiguities=tuple(notes))


def class_span_equals(pg: Page, n: int, elements: Sequence[Element]) -> bool:
    """Do ``elements`` (bihomogeneous, total degree ``n``) span E_inf in degree ``n``?"""
    m = pg.model
    for e in elements:
        if e.degree != n:
            raise ValueError("element of the wrong total degree")
    vecs = [m.to_vector(lift(e, m.ring)) if e.ring is not m.ring else m.to_vector(e) for e in elements]
    cycles = Subspace.zero(m.dim(n))
    bounds = Subspace.zero(m.dim(n))
    for p in range(n + 1):
        key = (p, n - p)
        if key in pg.zz:
            cycles = cycles + pg.zz[key]
            bounds = bounds + pg.bb[key]
    if not all(v in cycles for v in vecs):
        return False
    return bounds.extend(vecs) == cycles


__all__ = [
    "FiberSpec",
    "Page",
    "RingReconstruction",
    "SeedError",
    "SerreModel",
    "SpectralError",
    "TransgressionSeed",
    "additive_total",
    "build_e2",
    "class_span_equals",
    "complex_homology",
    "propagate_leibniz",
    "reconstruct_ring",
    "run_to_einfty",
    "seed_transgression",
    "turn_page",
]
