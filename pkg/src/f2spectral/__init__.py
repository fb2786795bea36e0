"""F2 engine for Serre spectral sequences and Fadell-Husseini indices."""

from .algebra import (
    AlgebraMorphism,
    AlgebraPresentation,
    BoundError,
    Element,
    GradedIdeal,
    PresentationError,
    RewriteSystem,
    ideal_membership,
    morphism_kernel,
    normalize,
    tensor,
)
from .bundles import (
    BundleError,
    EquivariantBundleSpec,
    GroupAction,
    SWClass,
    borel_base,
    dold_transgression,
    euler_transgression,
    gysin_betti,
    run_bundle,
)
from .catalog import Catalog, CatalogError
from .index import check_monotonicity, compute_index, fh_index, verify_ideal_equality
from .linalg import BitMatrix, Subspace, kernel_basis, rank, solve
from .spectral import (
    FiberSpec,
    Page,
    SpectralError,
    TransgressionSeed,
    additive_total,
    reconstruct_ring,
    run_to_einfty,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraMorphism", "AlgebraPresentation", "BitMatrix", "BoundError", "BundleError", "Catalog",
    "CatalogError", "Element", "EquivariantBundleSpec", "FiberSpec", "GradedIdeal", "GroupAction",
    "Page", "PresentationError", "RewriteSystem", "SWClass", "SpectralError", "Subspace",
    "TransgressionSeed", "additive_total", "borel_base", "check_monotonicity", "compute_index",
    "dold_transgression", "euler_transgression", "fh_index", "gysin_betti", "ideal_membership",
    "kernel_basis", "morphism_kernel", "normalize", "rank", "reconstruct_ring", "run_bundle",
    "run_to_einfty", "solve", "tensor", "verify_ideal_equality",
]
