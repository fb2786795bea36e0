import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from f2spectral.algebra import AlgebraMorphism, convolve, morphism_kernel, normalize, tensor
from f2spectral.bundles import (
    BundleError,
    EquivariantBundleSpec,
    GroupAction,
    SWClass,
    assemble_equivariant_seeds,
    borel_base,
    dold_transgression,
    euler_transgression,
    gysin_betti,
    run_bundle,
    single_sphere_euler,
    spec_from_json,
)
from f2spectral.catalog import G2_SO4, G2_U2, POINT, SW_RHO, SW_ZETA, bz2, cp
from f2spectral.spectral import FiberSpec, additive_total


def test_euler_is_top_class(so4):
    sw = SWClass.parse(so4, SW_RHO)
    assert str(euler_transgression(sw)) == "u3"
    assert sw.rank == 3


@pytest.mark.parametrize("base, comps, t, expected", [
    (G2_SO4, SW_RHO, "t", "t^3 + t*u2 + u3"),
    (G2_U2, SW_ZETA, "t2", "t2^4 + t2^2*y + y^2"),
    (POINT, ("1", "0", "0", "0"), "t", "t^3"),
])
def test_dold_examples(base, comps, t, expected):
    names = ("t",) if t == "t" else ("t1", "t2")
    ring = normalize(borel_base(len(names), base), 12)
    sw = SWClass.parse(normalize(base, 12), comps)
    assert str(dold_transgression(sw, ring.gen(t))) == expected


def test_sw_validation(so4):
    with pytest.raises(BundleError):
        SWClass.parse(so4, ("0", "0", "u2"))
    with pytest.raises(BundleError):
        dold_transgression(SWClass.parse(so4, SW_RHO), so4.gen("u2"))


@pytest.mark.parametrize("m, names", [(0, ("u2", "u3")), (1, ("t", "u2", "u3")), (2, ("t1", "t2", "u2", "u3"))])
def test_borel_base_names(m, names):
    assert borel_base(m, G2_SO4).names == names


def test_borel_base_negative_rank():
    with pytest.raises(BundleError):
        borel_base(-1, G2_SO4)


@pytest.mark.parametrize("bundle, series", [
    ("rho1", [1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 0]),
    ("zeta_1", [1, 0, 1, 0, 0, 1, 1, 1, 1, 0, 0, 1, 0, 1]),
])
def test_gysin_examples(catalog, bundle, series):
    ring, euler, k = single_sphere_euler(catalog.bundle(bundle), len(series) - 1)
    assert gysin_betti(ring, euler, k, len(series) - 1) == series


@pytest.mark.parametrize("bundle, params", [
    ("rho1", {}), ("rho2", {}), ("rho4", {}), ("zeta_1", {}), ("free-sphere", {"k": 4}),
])
def test_gysin_matches_spectral(catalog, bundle, params):
    spec = catalog.bundle(bundle, **params)
    ring, euler, k = single_sphere_euler(spec, 16)
    assert gysin_betti(ring, euler, k, 16) == additive_total(run_bundle(spec, 16, equivariant=False))


def test_gysin_pins_down_the_projection(catalog):
    # H^2(G2/SO(4)) -> H^2(G2/U(2)) must be injective: the Gysin cokernel in
    # degree 2 is the image, and it is one-dimensional.
    ring, euler, k = single_sphere_euler(catalog.bundle("rho1"), 10)
    assert gysin_betti(ring, euler, k, 10)[2] == 1
    src, tgt = normalize(G2_SO4, 10), normalize(G2_U2, 10)
    f = AlgebraMorphism(src, tgt, {"u2": "y", "u3": 0})
    ker = morphism_kernel(f, 10)
    assert ker.pieces[2].dim == 0
    assert [str(g) for g in ker.minimal_generators] == ["u3"]


def test_same_sphere_twice_rejected():
    with pytest.raises(BundleError):
        EquivariantBundleSpec(POINT, FiberSpec.spheres([2]), group_rank=2,
                              actions=("antipodal:0", "antipodal:0"))


@pytest.mark.parametrize("kwargs", [
    {"group_rank": 1, "actions": ()},
    {"group_rank": 1, "actions": ("antipodal:3",)},
    {"sw": (("1",), ("1",), ("1",))},
    {"seeds": ("0",)},
])
def test_spec_validation(kwargs):
    with pytest.raises(BundleError):
        EquivariantBundleSpec(POINT, FiberSpec.spheres([2, 2]), **kwargs)


def test_group_action_parse():
    assert GroupAction.parse("antipodal:2") == GroupAction("antipodal", 2)
    assert GroupAction.parse({"kind": "base"}) == GroupAction("base")
    with pytest.raises(BundleError):
        GroupAction.parse("flip")


def test_free_circle_seed():
    spec = EquivariantBundleSpec(POINT, FiberSpec.spheres([1]), (("1", "0", "0"),), 1, ("antipodal:0",))
    _, seed = assemble_equivariant_seeds(spec, 6)
    assert str(seed.images["z"]) == "t^2"


def test_sw_rank_mismatch():
    spec = EquivariantBundleSpec(POINT, FiberSpec.spheres([2]), (("1", "0"),))
    with pytest.raises(BundleError):
        assemble_equivariant_seeds(spec, 6)


def test_spec_json_roundtrip(catalog):
    spec = catalog.bundle("phi_2")
    again = spec_from_json(spec.to_json())
    assert again.base == spec.base
    assert again.actions == spec.actions
    assert again.sw == spec.sw
    assert spec_from_json({"base": "G2_SO4", "fiber": {"spheres": [2]}}, catalog.presentation).base == G2_SO4


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([("G2_SO4", SW_RHO), ("G2_U2", SW_ZETA)]))
def test_dold_at_zero_is_euler(case):
    name, comps = case
    pres = G2_SO4 if name == "G2_SO4" else G2_U2
    base = normalize(pres, 12)
    big = normalize(borel_base(1, pres), 12)
    sw = SWClass.parse(base, comps)
    t_zero = AlgebraMorphism(big, base, {n: (0 if n == "t" else n) for n in big.names})
    assert t_zero(dold_transgression(sw, big.gen("t"))) == euler_transgression(sw)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([G2_SO4, G2_U2, cp(2), bz2(1)]), st.integers(1, 4))
def test_trivial_bundle_is_product(pres, k):
    bound = 10
    spec = EquivariantBundleSpec(pres, FiberSpec.spheres([k]))
    got = additive_total(run_bundle(spec, bound, equivariant=False))
    sphere_series = [1] + [0] * (k - 1) + [1]
    assert got == convolve(normalize(pres, bound).hilbert_series(bound), sphere_series, bound)
