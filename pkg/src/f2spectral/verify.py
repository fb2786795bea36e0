"""Regression checks replaying the catalog computations.

Each check is a function ``(catalog, bound) -> (ok, detail)`` registered
under a subset name.  ``bound=None`` means the check's own default.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from typing import Callable, Optional

from .algebra import (
    AlgebraPresentation,
    convolve,
    find_isomorphism,
    normalize,
    poincare_duality,
)
from .bundles import gysin_betti, run_bundle, single_sphere_euler
from .catalog import Catalog, G2_U2, phi_factor
from .index import check_monotonicity, compute_index, verify_ideal_equality
from .spectral import additive_total, class_span_equals, reconstruct_ring

SUBSETS = ("rings", "spectral", "gysin", "index", "properties")

ZETA2_TABLE = [1, 0, 1, 1, 0, 2, 1, 1, 2, 1, 1, 2, 0, 1, 1, 0, 1]
ZETA2_LABELS = {
    0: ["1"], 2: ["y"], 3: ["z1 + z2"], 5: ["y*z1", "y*z2"], 6: ["x"], 7: ["y^2*z1"],
    8: ["x*y", "y*z1*z2"], 9: ["x*z1 + x*z2"], 10: ["y^2*z1*z2"], 11: ["x*y*z1", "x*y*z2"],
    13: ["x*y^2*z1"], 14: ["x*y*z1*z2"], 16: ["x*y^2*z1*z2"],
}
RHO_INDEX = "t^3 + u2*t + u3"


def phi_generators(n: int) -> list[str]:
    return [f"y^2 + y*t{k}^2 + t{k}^4" for k in range(2, n + 2)]


@dataclass
class CheckResult:
    name: str
    subset: str
    ok: bool
    detail: str
    seconds: float

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status}  {self.name:<34} {self.seconds:6.2f}s  {self.detail}"


REGISTRY: list[tuple[str, str, Callable]] = []


def check(subset: str, name: str):
    def wrap(fn):
        REGISTRY.append((subset, name, fn))
        return fn
    return wrap


def _series(cat: Catalog, name: str, upto: int) -> list[int]:
    return normalize(cat.presentation(name), upto).hilbert_series(upto)


# -- rings --------------------------------------------------------------------

@check("rings", "series G2_SO4")
def _series_so4(cat, bound):
    got = _series(cat, "G2_SO4", 8)
    return got == [1, 0, 1, 1, 1, 1, 1, 0, 1], str(got)


@check("rings", "series G2_U2pm")
def _series_u2(cat, bound):
    got = _series(cat, "G2_U2pm", 10)
    return got == [1, 0] * 5 + [1], str(got)


@check("rings", "series G2_T2")
def _series_t2(cat, bound):
    got = _series(cat, "G2_T2", 12)
    want = convolve(_series(cat, "G2_U2pm", 12), [1, 0, 1], 12)
    return got == want, str(got)


def _pd(name):
    def fn(cat, bound):
        entry = cat.space(name)
        rs = normalize(entry.presentation, max(2 * entry.manifold_dim, entry.manifold_dim + 1))
        return poincare_duality(rs, entry.manifold_dim)
    return fn


for _name in ("G2_SO4", "G2_U2pm", "G2_T2"):
    check("rings", f"poincare duality {_name}")(_pd(_name))


@check("rings", "confluence")
def _confluence(cat, bound):
    rng = random.Random(7)
    trials = 0
    for name in ("G2_SO4", "G2_U2pm", "G2_T2", "S6"):
        entry = cat.space(name)
        rs = normalize(entry.presentation, 2 * entry.manifold_dim)
        for _ in range(100):
            d = rng.randrange(rs.bound + 1)
            mons = _all_monomials(rs, d)
            if not mons:
                continue
            poly = frozenset(m for m in mons if rng.random() < 0.5)
            if rs.reduce_randomly(poly, rng) != rs.normal_form(poly):
                return False, f"{name}: order-dependent normal form in degree {d}"
            trials += 1
    return True, f"{trials} random reductions"


def _all_monomials(rs, d):
    out = []

    def walk(i, rem, pre):
        if i == rs.ngens:
            if rem == 0:
                out.append(tuple(pre))
            return
        for e in range(rem // rs.weights[i] + 1):
            walk(i + 1, rem - e * rs.weights[i], pre + [e])

    walk(0, d, [])
    return out


# -- spectral -------------------------------------------------------------------

@check("spectral", "rho1 total G2_SO4 + S^2, z -> u3")
def _rho1_total(cat, bound):
    spec = cat.bundle("rho1")
    pg = run_bundle(spec, bound or 20, equivariant=False)
    tot = additive_total(pg)
    want = _series(cat, "G2_U2pm", pg.bound)
    if tot != want:
        return False, f"total {tot}"
    rr = reconstruct_ring(pg)
    if not rr.exact:
        return False, "; ".join(rr.ambiguities)
    a = normalize(rr.presentation, pg.bound)
    b = normalize(G2_U2, pg.bound)
    iso = find_isomorphism(a, b)
    return iso is not None, f"E{pg.r} stable, ring {rr.presentation}"


@check("spectral", "zeta_2 table")
def _zeta2(cat, bound):
    pg = run_bundle(cat.bundle("zeta_2"), 16)
    tot = additive_total(pg)
    if tot != ZETA2_TABLE:
        return False, f"total {tot}"
    ring = pg.model.ring
    for n, labels in ZETA2_LABELS.items():
        if not class_span_equals(pg, n, [ring.element(s, n) for s in labels]):
            return False, f"classes in degree {n} differ from {labels}"
    return True, "17 entries and generator lists agree"


@check("spectral", "rho6 S^6 + CP^2")
def _rho6(cat, bound):
    pg = run_bundle(cat.bundle("rho6"), bound or 20, equivariant=False)
    tot = additive_total(pg)
    want = [1 if d % 2 == 0 and d <= 10 else 0 for d in range(pg.bound + 1)]
    rr = reconstruct_ring(pg)
    graded = normalize(rr.graded_presentation, pg.bound)
    iso = find_isomorphism(graded, normalize(G2_U2, pg.bound))
    return tot == want and iso is not None, f"total {tot[:11]}, exact={rr.exact}"


@check("spectral", "rho3 S^2 x S^2 total")
def _rho3(cat, bound):
    pg = run_bundle(cat.bundle("rho3"), bound or 24, equivariant=False)
    want = _series(cat, "G2_T2", pg.bound)
    return additive_total(pg) == want, f"total {sum(additive_total(pg))}"


@check("spectral", "rho4/5 trivial S^2 total")
def _rho45(cat, bound):
    pg = run_bundle(cat.bundle("rho4"), bound or 24, equivariant=False)
    want = _series(cat, "G2_T2", pg.bound)
    rr = reconstruct_ring(pg)
    iso = find_isomorphism(normalize(rr.graded_presentation, pg.bound), normalize(cat.presentation("G2_T2"), pg.bound))
    return additive_total(pg) == want and iso is not None, f"associated graded ring matches, exact={rr.exact}"


# -- gysin ------------------------------------------------------------------------

def _gysin(bundle, **params):
    def fn(cat, bound):
        spec = cat.bundle(bundle, **params)
        b = bound or 20
        ring, euler, k = single_sphere_euler(spec, b)
        gys = gysin_betti(ring, euler, k, b)
        ss = additive_total(run_bundle(spec, b, equivariant=False))
        return gys == ss, f"{gys[:12]}"
    return fn


check("gysin", "gysin rho1")(_gysin("rho1"))
check("gysin", "gysin rho2")(_gysin("rho2"))
check("gysin", "gysin zeta_1")(_gysin("zeta_1"))
check("gysin", "gysin free-sphere")(_gysin("free-sphere", k=3))


@check("gysin", "sw consistency")
def _sw(cat, bound):
    pairs = [("rho1", "G2_U2pm"), ("rho2", "G2_U2pm"), ("rho4", "G2_T2"), ("rho5", "G2_T2")]
    for bundle, total in pairs:
        spec = cat.bundle(bundle)
        ring, euler, k = single_sphere_euler(spec, 20)
        if gysin_betti(ring, euler, k, 20) != _series(cat, total, 20):
            return False, f"{bundle} does not reproduce {total}"
    return True, "Euler classes reproduce the catalog totals"


# -- index -------------------------------------------------------------------------

def _rho_index(bundle):
    def fn(cat, bound):
        b = bound or 12
        res = compute_index(cat.bundle(bundle), b)
        ring = res.ambient
        rep = verify_ideal_equality(res.ideal.minimal_generators, [ring.element(RHO_INDEX)], b)
        quotient = normalize(ring.presentation.quotient([RHO_INDEX]), b).hilbert_series(b)
        bottom = [res.page.dim(d, 0) for d in range(b + 1)]
        ok = rep.equal and bottom == quotient
        return ok, f"<{', '.join(map(str, res.ideal.minimal_generators))}>"
    return fn


check("index", "index rho1")(_rho_index("rho1"))
check("index", "index rho2")(_rho_index("rho2"))


def _phi_index(n):
    def fn(cat, bound):
        b = bound or (12 if n < 3 else 10)
        spec = cat.bundle("phi_n", n=n)
        res = compute_index(spec, b)
        ring = res.ambient
        rep = verify_ideal_equality(res.ideal.minimal_generators, [ring.element(g) for g in phi_generators(n)], b)
        if not rep.equal:
            return False, f"first difference in degree {rep.first_failure}"
        base = cat.presentation("G2_U2pm")
        for k in range(2, n + 2):
            mono = check_monotonicity(spec, phi_factor(base, n, k), b)
            if not mono:
                return False, f"monotonicity fails for k={k} in degree {mono.first_failure}"
        return True, f"{n} generators, monotone in every factor"
    return fn


for _n in (1, 2, 3):
    check("index", f"index phi_{_n}")(_phi_index(_n))


@check("index", "Z2^3 Borel cohomology")
def _final(cat, bound):
    b = bound or 16
    spec = cat.bundle("phi_n", n=2)
    pg = run_bundle(spec, b)
    ring = pg.model.base
    quotient = normalize(ring.presentation.quotient(phi_generators(2)), b).hilbert_series(b)
    tot = additive_total(pg)
    return tot == quotient, f"{tot}"


# -- properties ---------------------------------------------------------------------

@check("properties", "page invariants")
def _pages(cat, bound):
    runs = [
        (cat.bundle("rho1"), False, 16), (cat.bundle("rho1"), True, 10),
        (cat.bundle("rho3"), False, 16), (cat.bundle("rho6"), False, 16),
        (cat.bundle("zeta_2"), False, 16), (cat.bundle("phi_n", n=1), True, 10),
        (cat.bundle("phi_n", n=2), True, 8),
    ]
    turns = 0
    products = 0
    for spec, eq, b in runs:
        pages = []
        run_bundle(spec, b, equivariant=eq, observer=pages.append, leibniz_trials=100)
        turns += len(pages) - 1
        products += 100 * sum(1 for p in pages if p.differentials())
    return True, f"{len(runs)} runs, {turns} page turns, {products} Leibniz products"


# -- runner -------------------------------------------------------------------------

def run_checks(subset: Optional[str] = None, bound: Optional[int] = None,
               catalog: Optional[Catalog] = None, echo: Optional[Callable[[str], None]] = None) -> list[CheckResult]:
    if subset is not None and subset not in SUBSETS:
        raise ValueError(f"unknown subset {subset!r}; choose from {', '.join(SUBSETS)}")
    catalog = catalog or Catalog.default()
    out = []
    for sub, name, fn in REGISTRY:
        if subset is not None and sub != subset:
            continue
        start = time.perf_counter()
        try:
            ok, detail = fn(catalog, bound)
        except Exception as exc:  # a crash is a failed check, reported in line
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        res = CheckResult(name, sub, bool(ok), str(detail), time.perf_counter() - start)
        out.append(res)
        if echo:
            echo(res.line())
    return out


def mutated_catalog(space: str, drop: str) -> Catalog:
    """Default catalog with one relation of ``space`` removed (for mutation tests)."""
    cat = Catalog.default()
    pres = cat.presentation(space)
    target = AlgebraPresentation.parse(pres.generators, [drop]).relations[0]
    rels = tuple(r for r in pres.relations if r != target)
    if len(rels) == len(pres.relations):
        raise ValueError(f"{drop!r} is not a relation of {space}")
    return cat.with_space(space, AlgebraPresentation(pres.generators, rels))


__all__ = ["CheckResult", "REGISTRY", "SUBSETS", "mutated_catalog", "phi_generators", "run_checks"]
