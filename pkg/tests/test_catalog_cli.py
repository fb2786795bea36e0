import io
import json

import pytest

from f2spectral.algebra import AlgebraPresentation, normalize
from f2spectral.catalog import (
    Catalog,
    CatalogError,
    G2_SO4,
    bundle_top_degree,
    default_bound,
)
from f2spectral.cli import main, parse_fiber
from f2spectral.verify import mutated_catalog, run_checks


def run(*argv, catalog=None):
    out = io.StringIO()
    code = main(list(argv), out=out, catalog=catalog)
    return code, out.getvalue()


# -- catalog ---------------------------------------------------------------

@pytest.mark.parametrize("name, series", [
    ("G2_SO4", [1, 0, 1, 1, 1, 1, 1, 0, 1]),
    ("G2_U2p", [1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1]),
    ("G2_U2-", [1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1]),
    ("Sphere(3)", [1, 0, 0, 1]),
    ("S2", [1, 0, 1]),
    ("CP(2)", [1, 0, 1, 0, 1]),
])
def test_space_series(catalog, name, series):
    entry = catalog.space(name)
    assert normalize(entry.presentation, len(series) - 1).hilbert_series(len(series) - 1) == series


@pytest.mark.parametrize("name", ["G2", "Sphere(0)", "BZ2", "rho1"])
def test_unknown_space(catalog, name):
    with pytest.raises(CatalogError):
        catalog.space(name)


def test_unknown_bundle_lists_valid_names(catalog):
    with pytest.raises(CatalogError) as info:
        catalog.bundle("rho9")
    assert "rho1" in str(info.value)


def test_bundle_references_resolve(catalog):
    for name in catalog.bundle_names():
        spec = catalog.bundle(name)
        assert spec.base == catalog.presentation(catalog.bundle_entry(name).base)


def test_parametric_bundles(catalog):
    assert catalog.bundle("zeta_3").fiber.dims == (3, 3, 3)
    assert catalog.bundle("phi_n", n=2).group_rank == 3
    assert catalog.bundle("phi_2").name == "phi_2"
    with pytest.raises(ValueError):
        catalog.bundle("zeta_n", n=0)


def test_closed_manifolds_satisfy_duality(catalog):
    from f2spectral.algebra import poincare_duality
    for name in ("G2_SO4", "G2_U2pm", "G2_T2", "S6"):
        e = catalog.space(name)
        ok, msg = poincare_duality(normalize(e.presentation, e.manifold_dim + 2), e.manifold_dim)
        assert ok, (name, msg)


@pytest.mark.parametrize("top, bound", [(None, 24), (8, 16), (10, 20), (16, 24), (0, 1)])
def test_default_bound(top, bound):
    assert default_bound(top) == bound


def test_bundle_top_degree(catalog):
    assert bundle_top_degree(catalog, catalog.bundle("rho1")) == 10
    assert bundle_top_degree(catalog, catalog.bundle("phi_1")) == 13
    assert bundle_top_degree(catalog, catalog.bundle("rho6")) == 10


def test_with_space_is_a_copy(catalog):
    other = catalog.with_space("G2_SO4", AlgebraPresentation.parse(G2_SO4.generators, ["u2^3 + u3^2"]))
    assert catalog.presentation("G2_SO4") == G2_SO4
    assert other.presentation("G2_SO4") != G2_SO4
    assert other.bundle("rho1").base == other.presentation("G2_SO4")


@pytest.mark.parametrize("text, dims", [("S3", (3,)), ("S3xS3", (3, 3)), ("S2,S2", (2, 2)), ("Sphere(4)", (4,))])
def test_parse_fiber(text, dims):
    assert parse_fiber(text).dims == dims


def test_parse_fiber_cp_and_point():
    assert parse_fiber("CP2").kind == "cp"
    assert parse_fiber("point").generators == ()


# -- cli -------------------------------------------------------------------

def test_cli_space_text():
    code, out = run("space", "G2_SO4")
    assert code == 0
    assert "series: 1,0,1,1,1,1,1,0,1" in out
    assert "u3^2 -> u2^3" in out


def test_cli_space_json():
    code, out = run("space", "Sphere(3)", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["hilbert"][:4] == [1, 0, 0, 1]
    assert data["manifold_dim"] == 3


def test_cli_space_md():
    code, out = run("space", "S6", "--format", "md", "--bound", "6")
    assert code == 0
    assert "| dim | 1 | 0 | 0 | 0 | 0 | 0 | 1 |" in out


@pytest.mark.parametrize("argv, expected", [
    (["index", "rho1"], "index: <t^3 + t*u2 + u3>"),
    (["index", "rho2"], "index: <t^3 + t*u2 + u3>"),
    (["index", "phi_1"], "index: <t2^4 + t2^2*y + y^2>"),
    (["index", "free-sphere", "--k", "3"], "index: <t^3>"),
])
def test_cli_index(argv, expected):
    code, out = run(*argv)
    assert code == 0
    assert expected in out


def test_cli_index_expect():
    code, out = run("index", "rho1", "--expect", "t^3 + u2*t + u3")
    assert code == 0
    assert "matches" in out
    code, out = run("index", "rho1", "--expect", "t^3")
    assert code == 1
    assert "differs from <t^3> in degree 3" in out


def test_cli_index_json():
    code, out = run("index", "phi_2", "--bound", "10", "--format", "json",
                    "--expect", "y^2 + y*t2^2 + t2^4", "y^2 + y*t3^2 + t3^4")
    data = json.loads(out)
    assert code == 0
    assert data["verified_against"]["equal"] is True
    assert data["bundle"] == "phi_2"


def test_cli_index_md():
    code, out = run("index", "free-sphere", "--k", "4", "--format", "md")
    assert code == 0
    assert "| 4 | t^4 |" in out


def test_cli_total_ring():
    code, out = run("total", "rho1", "--ring")
    assert code == 0
    assert "total: 1,0,1,0,1,0,1,0,1,0,1" in out
    assert "bound 20" in out
    assert "ring: F2[e2_0, e4_2]/<e2_0^3, e4_2^2>" in out


def test_cli_total_additive_only():
    code, out = run("total", "rho6", "--ring")
    assert code == 0
    assert "additive only" in out


def test_cli_total_trivial_product():
    code, out = run("total", "--base", "point", "--fiber", "S3", "--ring")
    assert code == 0
    assert "total: 1,0,0,1" in out
    assert "F2[e0_3]/<e0_3^2>" in out


def test_cli_total_borel_json():
    code, out = run("total", "phi_1", "--borel", "--bound", "8", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["borel"] is True
    assert data["total"][:5] == [1, 2, 4, 6, 8]


def test_cli_total_md():
    code, out = run("total", "zeta_1", "--format", "md", "--bound", "13")
    assert code == 0
    assert "| 13 | 1 |" in out


def test_cli_spec_file(tmp_path):
    path = tmp_path / "bundle.json"
    path.write_text(json.dumps({
        "base": "G2_SO4", "fiber": {"spheres": [2]}, "sw": [["1", "0", "u2", "u3"]],
        "group": {"rank": 1, "actions": ["antipodal:0"]}, "name": "from-file",
    }))
    code, out = run("index", "--spec", str(path))
    assert code == 0
    assert "t^3 + t*u2 + u3" in out


@pytest.mark.parametrize("argv", [
    ["space", "nowhere"],
    ["index", "rho9"],
    ["index", "rho3"],            # no group action
    ["total"],
    ["total", "rho1", "--base", "point"],
    ["total", "--base", "point", "--fiber", "T2"],
    ["space", "G2_SO4", "--bound", "-1"],
    ["space"],
    ["frobnicate"],
])
def test_cli_usage_errors(argv, capsys):
    code, _ = run(*argv)
    assert code == 2


@pytest.mark.parametrize("argv", [
    ["space", "G2_T2", "--format", "json"],
    ["total", "zeta_2", "--format", "json"],
    ["index", "phi_2", "--bound", "9"],
    ["catalog", "list"],
])
def test_cli_byte_stable(argv):
    assert run(*argv) == run(*argv)


def test_cli_catalog_list_formats():
    code, out = run("catalog", "list")
    assert code == 0
    assert "rho1" in out and "G2_SO4" in out
    code, out = run("catalog", "list", "--format", "json")
    names = {row["name"] for row in json.loads(out)}
    assert {"phi_n", "zeta_n", "free-sphere", "G2_T2"} <= names


# -- verify ----------------------------------------------------------------

def test_cli_verify_subset():
    code, out = run("verify", "--subset", "rings")
    lines = [l for l in out.splitlines() if l.startswith(("PASS", "FAIL"))]
    assert code == 0
    assert lines and all(l.startswith("PASS") for l in lines)
    assert not any("index" in l for l in lines)
    assert out.rstrip().endswith(f"{len(lines)}/{len(lines)} checks passed")


def test_cli_verify_index_subset_only():
    code, out = run("verify", "--subset", "index", "--bound", "10")
    names = [l.split()[1] for l in out.splitlines() if l.startswith(("PASS", "FAIL"))]
    assert code == 0
    assert names and all(n in ("index", "Z2^3") for n in names)


def test_verify_mutation_breaks_duality(catalog):
    mutated = mutated_catalog("G2_SO4", "u2^2*u3")
    results = {r.name: r for r in run_checks("rings", None, mutated)}
    assert not results["poincare duality G2_SO4"].ok
    assert results["poincare duality G2_U2pm"].ok
    code, _ = run("verify", "--subset", "rings", catalog=mutated)
    assert code == 1
