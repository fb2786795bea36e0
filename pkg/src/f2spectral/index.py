"""Fadell-Husseini indices of equivariant sphere bundles.

The index is the kernel of ``H*_G(B) -> H*_G(E)``.  In the Serre spectral
sequence of the Borel construction that kernel is exactly what the
differentials kill in the bottom row, so it is read off the accumulated
boundaries at ``q = 0`` of the stable page.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .algebra import Element, GradedIdeal, RewriteSystem, ideal_piece
from .bundles import EquivariantBundleSpec, assemble_equivariant_seeds
from .linalg import Subspace
from .spectral import Page, run_to_einfty

REPORT_SCHEMA = "f2spectral/ideal-report/1"


@dataclass
class IndexResult:
    ideal: GradedIdeal
    page: Page
    seeds: dict

    @property
    def ambient(self) -> RewriteSystem:
        return self.ideal.ambient


def bottom_row_ideal(pg: Page) -> GradedIdeal:
    """Classes of the base killed by the differentials, as an ideal of the base ring."""
    model = pg.model
    base = model.base
    pieces = []
    for d in range(pg.bound + 1):
        piece = pg.bb.get((d, 0))
        vectors = []
        if piece is not None:
            for v in piece.basis:
                e = model.element(d, v)
                terms = frozenset(m[: model.nbase] for m in e.terms)
                vectors.append(base.to_vector(Element(base, d, terms)))
        pieces.append(Subspace.span(vectors, base.dim(d)))
    return GradedIdeal.from_pieces(base, pieces)


def compute_index(spec: EquivariantBundleSpec, bound: int, observer=None, leibniz_trials: int = 0) -> IndexResult:
    ring, seed = assemble_equivariant_seeds(spec, bound)
    pg = run_to_einfty(ring, spec.fiber, seed, bound, observer=observer, leibniz_trials=leibniz_trials)
    ideal = bottom_row_ideal(pg)
    return IndexResult(ideal, pg, dict(seed.images))


def fh_index(spec: EquivariantBundleSpec, bound: int) -> GradedIdeal:
    return compute_index(spec, bound).ideal


@dataclass
class IdealReport:
    equal: bool
    bound: int
    first_failure: Optional[int] = None
    per_degree: list = field(default_factory=list)

    def __bool__(self):
        return self.equal


def default_equality_bound(*gen_lists: Sequence[Element]) -> int:
    degs = [g.degree for gens in gen_lists for g in gens if g]
    return 4 + max(degs, default=0)


def verify_ideal_equality(a: Sequence[Element], b: Sequence[Element], bound: Optional[int] = None) -> IdealReport:
    """Two-sided inclusion of ``<a>`` and ``<b>``, degree by degree up to ``bound``."""
    a = [g for g in a if g]
    b = [g for g in b if g]
    bound = default_equality_bound(a, b) if bound is None else bound
    rings = {id(g.ring) for g in a + b}
    if len(rings) > 1:
        raise ValueError("generators live in different rings")
    if not a and not b:
        return IdealReport(True, bound)
    ring = (a + b)[0].ring
    rows = []
    first = None
    for d in range(bound + 1):
        pa = ideal_piece(ring, a, d)
        pb = ideal_piece(ring, b, d)
        a_in_b = pa.issubspace(pb)
        b_in_a = pb.issubspace(pa)
        rows.append({"degree": d, "dim_a": pa.dim, "dim_b": pb.dim, "a_in_b": a_in_b, "b_in_a": b_in_a})
        if first is None and not (a_in_b and b_in_a):
            first = d
    return IdealReport(first is None, bound, first, rows)


@dataclass
class MonotonicityReport:
    holds: bool
    bound: int
    first_failure: Optional[int]
    domain: GradedIdeal
    codomain: GradedIdeal

    def __bool__(self):
        return self.holds


def check_monotonicity(domain: EquivariantBundleSpec, codomain: EquivariantBundleSpec, bound: int) -> MonotonicityReport:
    """For an equivariant map of bundles ``domain -> codomain`` over the same base,
    check ``index(domain) >= index(codomain)`` in every degree up to ``bound``."""
    di = fh_index(domain, bound)
    ci = fh_index(codomain, bound)
    if di.ambient.presentation != ci.ambient.presentation:
        raise ValueError("the two bundles have different Borel base rings")
    first = None
    for d in range(bound + 1):
        if not ci.pieces[d].issubspace(di.pieces[d]):
            first = d
            break
    return MonotonicityReport(first is None, bound, first, di, ci)


def ideal_report(ideal: GradedIdeal, verified_against: Optional[Sequence[str]] = None,
                 equal: Optional[bool] = None) -> dict:
    out = {
        "schema": REPORT_SCHEMA,
        "ambient": str(ideal.ambient.presentation),
        "bound": ideal.bound,
        "generators": [str(g) for g in ideal.minimal_generators],
        "hilbert": ideal.hilbert(),
    }
    if verified_against is not None:
        out["verified_against"] = {"generators": list(verified_against), "equal": equal}
    return out


__all__ = [
    "IdealReport",
    "IndexResult",
    "MonotonicityReport",
    "REPORT_SCHEMA",
    "bottom_row_ideal",
    "check_monotonicity",
    "compute_index",
    "default_equality_bound",
    "fh_index",
    "ideal_report",
    "verify_ideal_equality",
]
