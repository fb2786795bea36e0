"""Command line front end: ``f2spectral space|total|index|verify|catalog``."""

from __future__ import annotations

import argparse
import json
import re
import sys
from typing import Optional, Sequence

from .algebra import BoundError, PresentationError, normalize
from .bundles import BundleError, EquivariantBundleSpec, run_bundle, spec_from_json
from .catalog import Catalog, CatalogError, bundle_top_degree, default_bound
from .index import compute_index, ideal_report, verify_ideal_equality
from .spectral import FiberSpec, SpectralError, additive_total, reconstruct_ring
from .verify import SUBSETS, run_checks

INDEX_DEFAULT_BOUND = 12
BOREL_DEFAULT_BOUND = 12


class UsageError(Exception):
    pass


def _trim(series: Sequence[int]) -> list[int]:
    out = list(series)
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _csv(series: Sequence[int]) -> str:
    return ",".join(str(x) for x in series)


def parse_fiber(text: str) -> FiberSpec:
    """``S3``, ``S3xS3``, ``S2,S2``, ``CP2`` or ``point``."""
    t = text.strip().replace(" ", "")
    if t in ("point", "pt", ""):
        return FiberSpec.point()
    hit = re.fullmatch(r"CP\(?(\d+)\)?", t)
    if hit:
        return FiberSpec.projective(int(hit.group(1)))
    dims = []
    for part in re.split(r"[x,*]", t):
        hit = re.fullmatch(r"(?:S|Sphere\()(\d+)\)?", part)
        if not hit:
            raise UsageError(f"cannot parse fiber {text!r}; use S3, S3xS3, CP2 or point")
        dims.append(int(hit.group(1)))
    return FiberSpec.spheres(dims)


def _resolve_spec(cat: Catalog, args) -> EquivariantBundleSpec:
    if getattr(args, "spec", None):
        with open(args.spec) as fh:
            data = json.load(fh)
        return spec_from_json(data, cat.presentation)
    if getattr(args, "base", None) or getattr(args, "fiber", None):
        if getattr(args, "bundle", None):
            raise UsageError("give either a bundle name or --base/--fiber, not both")
        base = cat.presentation(args.base or "point")
        fiber = parse_fiber(args.fiber or "point")
        nf = len(fiber.dims) if fiber.kind == "spheres" else 1
        return EquivariantBundleSpec(base, fiber, seeds=("0",) * nf,
                                     name=f"{args.base or 'point'} x {fiber}")
    if not getattr(args, "bundle", None):
        raise UsageError("name a bundle, or pass --spec or --base/--fiber")
    return cat.bundle(args.bundle, n=getattr(args, "n", None), k=getattr(args, "k", None))


# -- commands -------------------------------------------------------------------

def cmd_space(args, cat: Catalog, out) -> int:
    entry = cat.space(args.name)
    bound = args.bound if args.bound is not None else default_bound(entry.manifold_dim or None)
    rs = normalize(entry.presentation, bound)
    series = rs.hilbert_series(bound)
    if args.format == "json":
        json.dump({
            "name": entry.name,
            "presentation": entry.presentation.to_json(),
            "manifold_dim": entry.manifold_dim,
            "bound": bound,
            "rules": rs.rule_strings(),
            "hilbert": series,
        }, out, indent=2, sort_keys=True)
        out.write("\n")
    elif args.format == "md":
        out.write(f"### {entry.name}\n\n`{entry.presentation}`\n\n")
        out.write("| degree | " + " | ".join(str(d) for d in range(len(series))) + " |\n")
        out.write("|---" * (len(series) + 1) + "|\n")
        out.write("| dim | " + " | ".join(str(x) for x in series) + " |\n")
    else:
        out.write(f"{entry.name}: {entry.presentation}\n")
        if entry.manifold_dim is not None:
            out.write(f"manifold dimension: {entry.manifold_dim}\n")
        out.write(f"bound: {bound}\n")
        out.write("rules: " + ("; ".join(rs.rule_strings()) or "none") + "\n")
        out.write(f"series: {_csv(_trim(series))}\n")
    return 0


def cmd_total(args, cat: Catalog, out) -> int:
    spec = _resolve_spec(cat, args)
    equivariant = bool(args.borel and spec.group_rank)
    if args.bound is not None:
        bound = args.bound
    elif equivariant:
        bound = BOREL_DEFAULT_BOUND
    else:
        bound = default_bound(bundle_top_degree(cat, spec))
    pg = run_bundle(spec, bound, equivariant=equivariant)
    total = additive_total(pg)
    ring = reconstruct_ring(pg) if args.ring else None
    if args.format == "json":
        data = {"bundle": spec.name, "bound": bound, "borel": equivariant, "total": total, "page": pg.to_json()}
        if ring is not None:
            data["ring"] = ring.to_json()
        json.dump(data, out, indent=2, sort_keys=True)
        out.write("\n")
        return 0
    if args.format == "md":
        out.write(f"### {spec.name or 'bundle'}: stable at E{pg.r}\n\n")
        out.write("| degree | dim | classes |\n|---|---|---|\n")
        for n in range(len(_trim(total))):
            labels = []
            for p in range(n + 1):
                labels.extend(pg.labels(p, n - p))
            out.write(f"| {n} | {total[n]} | {', '.join(labels) if labels else '0'} |\n")
    else:
        out.write(f"{spec.name or 'bundle'}: base {spec.base}, fiber {spec.fiber}"
                  f"{', Borel construction' if equivariant else ''}\n")
        out.write(f"stable at E{pg.r}, bound {bound}\n")
        out.write(pg.grid() + "\n")
        out.write(f"total: {_csv(_trim(total))}\n")
    if ring is not None:
        if ring.graded_presentation is None:
            out.write("ring: additive only (" + "; ".join(ring.ambiguities) + ")\n")
        else:
            gens = ", ".join(f"{k} = [{v}]" for k, v in ring.labels.items())
            if ring.exact:
                out.write(f"ring: {ring.graded_presentation}\n")
            else:
                out.write(f"ring: additive only; associated graded {ring.graded_presentation}\n")
                for note in ring.ambiguities:
                    out.write(f"  ambiguity: {note}\n")
            if gens:
                out.write(f"generators: {gens}\n")
    return 0


def cmd_index(args, cat: Catalog, out) -> int:
    spec = _resolve_spec(cat, args)
    if not spec.group_rank:
        raise UsageError(f"{spec.name or 'bundle'} carries no group action")
    bound = INDEX_DEFAULT_BOUND if args.bound is None else args.bound
    res = compute_index(spec, bound)
    status = 0
    report = None
    if args.expect:
        expected = [res.ambient.element(g) for g in args.expect]
        report = verify_ideal_equality(res.ideal.minimal_generators, expected, bound)
        status = 0 if report.equal else 1
    if args.format == "json":
        data = ideal_report(res.ideal, args.expect, report.equal if report else None)
        data["bundle"] = spec.name
        json.dump(data, out, indent=2, sort_keys=True)
        out.write("\n")
        return status
    gens = [str(g) for g in res.ideal.minimal_generators]
    if args.format == "md":
        out.write(f"### index of {spec.name or 'bundle'}\n\n")
        out.write("| degree | generator |\n|---|---|\n")
        for g in res.ideal.minimal_generators:
            out.write(f"| {g.degree} | {g} |\n")
    else:
        out.write(f"ambient: {res.ambient.presentation}\n")
        out.write(f"bound: {bound}\n")
        out.write("index: <" + ", ".join(gens) + ">\n")
        for g in gens:
            out.write(f"  {g}\n")
        out.write(f"hilbert: {_csv(res.ideal.hilbert())}\n")
    if report is not None:
        if report.equal:
            out.write(f"matches <{', '.join(args.expect)}> up to degree {bound}\n")
        else:
            out.write(f"differs from <{', '.join(args.expect)}> in degree {report.first_failure}\n")
    return status


def cmd_verify(args, cat: Catalog, out) -> int:
    results = run_checks(args.subset, args.bound, cat, echo=lambda line: out.write(line + "\n"))
    failed = [r for r in results if not r.ok]
    out.write(f"{len(results) - len(failed)}/{len(results)} checks passed\n")
    return 1 if failed else 0


def cmd_catalog(args, cat: Catalog, out) -> int:
    rows = cat.rows()
    if args.format == "json":
        json.dump([{"kind": k, "name": n, "description": d} for k, n, d in rows], out, indent=2)
        out.write("\n")
    elif args.format == "md":
        out.write("| kind | name | description |\n|---|---|---|\n")
        for k, n, d in rows:
            out.write(f"| {k} | {n} | {d} |\n")
    else:
        width = max(len(n) for _, n, _ in rows)
        for k, n, d in rows:
            out.write(f"{k:<7}{n:<{width + 2}}{d}\n")
    return 0


# -- parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="f2spectral", description="Mod-2 Serre spectral sequences and indices.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--bound", type=int, default=None, help="top degree to compute")
        p.add_argument("--format", choices=("text", "json", "md"), default="text")

    p = sub.add_parser("space", help="presentation and Hilbert series of a catalog space")
    p.add_argument("name")
    common(p)
    p.set_defaults(func=cmd_space)

    def bundle_args(p):
        p.add_argument("bundle", nargs="?", help="catalog bundle, e.g. rho1, zeta_2, phi_1, free-sphere")
        p.add_argument("--n", type=int, default=None, help="parameter of zeta_n / phi_n")
        p.add_argument("--k", type=int, default=None, help="parameter of free-sphere")
        p.add_argument("--spec", help="bundle spec JSON file")

    p = sub.add_parser("total", help="additive cohomology of a total space")
    bundle_args(p)
    p.add_argument("--base", help="catalog space for a trivial bundle")
    p.add_argument("--fiber", help="fiber of a trivial bundle: S3, S3xS3, CP2, ...")
    p.add_argument("--ring", action="store_true", help="also reconstruct the ring")
    p.add_argument("--borel", action="store_true", help="use the Borel construction of the group action")
    common(p)
    p.set_defaults(func=cmd_total)

    p = sub.add_parser("index", help="Fadell-Husseini index of an equivariant bundle")
    bundle_args(p)
    p.add_argument("--expect", nargs="+", help="claimed generators to compare against")
    common(p)
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("verify", help="run the regression checks")
    p.add_argument("--subset", choices=SUBSETS)
    p.add_argument("--bound", type=int, default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("catalog", help="catalog listing")
    p.add_argument("action", choices=("list",))
    p.add_argument("--format", choices=("text", "json", "md"), default="text")
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None, catalog: Optional[Catalog] = None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "bound", None) is not None and args.bound < 0:
        sys.stderr.write("error: --bound must be non-negative\n")
        return 2
    cat = catalog or Catalog.default()
    try:
        return args.func(args, cat, out)
    except (CatalogError, UsageError, PresentationError, BundleError, BoundError, ValueError) as exc:
        if isinstance(exc, SpectralError):
            sys.stderr.write(f"error: {exc}\n")
            return 1
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
