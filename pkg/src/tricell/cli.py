"""Batch command-line front end: ingest, validate, compute, report.

Subcommands
-----------

``validate``   lint the raw transcription, apply the errata ledger, check
               that every boundary operator squares to zero and that the
               incidence grids match the formula lists.
``homology``   Betti numbers, generator chains and the degree-2 class
               relations.
``codim``      instantiate one cell's condition system (seeded or explicit
               parameters), print it with its exact rank and containment
               checks.
``report``     the full machine-readable dossier; byte-stable for a fixed
               seed.

Exit codes: 0 success, 1 mathematical check failure, 2 environment or
parse failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import conditions, homology, ingest, oracle
from .catalog import (
    FAMILIES,
    FAMILY_ORDER,
    Cell,
    UnknownCellError,
    census_by_dimension,
    enumerate_cells,
    first_type_census,
    parse_cell,
)

SCHEMA_VERSION = "1"
DEFAULT_SEED = 2024
DEFAULT_DEGREE_BOUND = 40
CODIM_DRAWS = 3

EXIT_OK = 0
EXIT_MATH = 1
EXIT_ENV = 2

D3_MATRIX_PARTS = ("d3-left-top", "d3-right-top", "d3-left-bottom", "d3-right-bottom")


def default_data_dir() -> Path:
    env = os.environ.get("TRICELL_DATA")
    if env:
        return Path(env)
    return Path(__file__).resolve().parent / "data"


@dataclass
class RunConfig:
    data_dir: Path
    errata_path: Path | None
    output: str = "text"  # text | json
    seed: int = DEFAULT_SEED
    degree_bound: int = DEFAULT_DEGREE_BOUND
    jobs: int = 1


def config_from_args(args) -> RunConfig:
    data_dir = Path(args.data) if args.data else default_data_dir()
    if args.errata:
        errata = Path(args.errata)
    elif args.no_errata:
        errata = None
    else:
        shipped = data_dir / "errata.txt"
        errata = shipped if shipped.is_file() else None
    return RunConfig(
        data_dir=data_dir,
        errata_path=errata,
        output="json" if args.json else "text",
        seed=args.seed,
        degree_bound=args.degree,
        jobs=args.jobs,
    )


# ---------------------------------------------------------------------------
# shared pipeline


@dataclass
class Pipeline:
    dataset: ingest.Dataset
    raw_lint: dict[int, ingest.LintReport]
    corrected: dict[int, ingest.BoundaryFile]
    errata_reports: dict[int, ingest.ErrataReport]
    post_lint: dict[int, ingest.LintReport]
    complex: homology.ChainComplex | None
    validation: homology.ValidationReport | None
    cross_checks: dict[str, ingest.CrossCheckReport]
    census_ok: bool

    @property
    def clean(self) -> bool:
        return (
            all(r.clean for r in self.post_lint.values())
            and self.validation is not None
            and self.validation.ok
            and self.census_ok
        )


def run_pipeline(config: RunConfig) -> Pipeline:
    ds = ingest.load_dataset(config.data_dir, config.errata_path)
    raw_lint = {d: ingest.lint(bf) for d, bf in ds.boundaries.items()}
    corrected = {}
    errata_reports = {}
    for d, bf in ds.boundaries.items():
        fixed, rep = ingest.apply_errata(bf, ds.errata)
        corrected[d] = fixed
        errata_reports[d] = rep
    post_lint = {d: ingest.lint(bf) for d, bf in corrected.items()}
    merged_d3 = ingest.merge_matrix_parts(
        [ds.matrices[t] for t in D3_MATRIX_PARTS], "d3"
    )
    cross = {
        "d2": ingest.cross_check_matrices(corrected[2], ds.matrices["d2"]),
        "d3": ingest.cross_check_matrices(corrected[3], merged_d3),
    }
    # the complex only assembles over dimension-homogeneous data
    cx = validation = None
    if all(r.clean for r in post_lint.values()):
        cx = homology.build_complex(corrected)
        validation = cx.validate()
    catalog_census = {c.name: c.dimension for c in enumerate_cells()}
    census_ok = ds.cells == catalog_census
    return Pipeline(
        ds, raw_lint, corrected, errata_reports, post_lint, cx, validation, cross,
        census_ok,
    )


# ---------------------------------------------------------------------------
# codimension sweep


def sweep_codimension(config: RunConfig) -> list[dict]:
    """Every family, both types, CODIM_DRAWS seeded draws each."""
    basis = oracle.FunctionBasis(config.degree_bound)
    jobs = []
    for tag in FAMILY_ORDER:
        fam = FAMILIES[tag]
        for barred in (False, True):
            cell = Cell(tag, fam.index_domain[0], fam.sign_domain[0], barred)
            for k in range(CODIM_DRAWS):
                jobs.append((cell, k))

    def run_one(cell: Cell, k: int) -> dict:
        rng = conditions.seeded_rng(config.seed, f"{cell.name}/{k}")
        support, moduli = conditions.random_parameters(cell, rng)
        system = conditions.instantiate(cell, support, moduli)
        rank = oracle.codimension(system, basis)
        contain = oracle.verify_containments(system)
        return {
            "cell": cell.name,
            "draw": k,
            "rank": rank,
            "constants_ok": contain.constants_ok,
            "ideal_ok": contain.ideal_ok,
        }

    if config.jobs > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=config.jobs) as pool:
            results = list(pool.map(lambda jk: run_one(*jk), jobs))
    else:
        results = [run_one(*jk) for jk in jobs]
    results.sort(key=lambda r: (r["cell"], r["draw"]))
    return results


# ---------------------------------------------------------------------------
# report assembly


def chain_names(cx: homology.ChainComplex, chain: homology.Chain) -> list[str]:
    return list(chain.names(cx))


def h2_relation_checks(cx: homology.ChainComplex) -> dict[str, bool]:
    def by_names(names):
        return cx.chain(2, [c for c in cx.bases[2] if c.name in names])

    x = by_names({"bX+", "bX-"})
    om = by_names({"bOM"})
    s1 = by_names({"bS1"})
    s2 = by_names({"bS2"})
    v1 = by_names({"bV1+", "bV1-"})
    v2 = by_names({"bV2+", "bV2-"})
    return {
        "bX+ + bX- is not a boundary": not cx.is_boundary(x),
        "bOM = bV1+ + bV1-": cx.class_equal(om, v1),
        "bOM = bV2+ + bV2-": cx.class_equal(om, v2),
        "bS1 = bS2": cx.class_equal(s1, s2),
        "(bX+ + bX-) + bOM + bS1 = 0": cx.is_boundary(x + om + s1),
        "three classes pairwise distinct": (
            not cx.class_equal(x, om)
            and not cx.class_equal(x, s1)
            and not cx.class_equal(om, s1)
        ),
    }


def build_dossier(config: RunConfig, pipe: Pipeline) -> dict:
    cx = pipe.complex
    if cx is None:
        raise ingest.DataError(
            "dossier needs dimension-homogeneous data; apply the errata ledger"
        )
    krep = homology.verify_kernel_generators(cx, pipe.dataset.kernel_cycles)
    erep = homology.verify_expansions(
        cx, pipe.dataset.kernel_cycles, pipe.dataset.expansions
    )
    sweep = sweep_codimension(config)
    betti = {str(d): cx.betti(d) for d in range(7)}
    return {
        "schema_version": SCHEMA_VERSION,
        "seed": config.seed,
        "degree_bound": config.degree_bound,
        "census": {
            "total": len(enumerate_cells()),
            "by_dimension": {str(d): n for d, n in census_by_dimension().items()},
            "first_type_by_dimension": {
                str(d): n for d, n in sorted(first_type_census().items())
            },
            "matches_cells_file": pipe.census_ok,
        },
        "lint": {
            "raw_findings": [
                {"degree": d, "generator": f.generator, "term": f.term, "reason": f.reason}
                for d, rep in sorted(pipe.raw_lint.items())
                for f in rep.findings
            ],
            "post_errata_clean": all(r.clean for r in pipe.post_lint.values()),
        },
        "errata": {
            "entries": [e.describe() for e in pipe.dataset.errata.entries],
            "applied": [
                e.describe()
                for d in sorted(pipe.errata_reports)
                for e in pipe.errata_reports[d].applied
            ],
        },
        "validation": {
            "d_squared_zero": pipe.validation is not None and pipe.validation.ok,
            "failures": [
                {"generator": g, "offending": list(cells)}
                for g, cells in (pipe.validation.failures if pipe.validation else ())
            ],
        },
        "cross_check": {
            tag: {
                "clean": rep.clean,
                "only_in_formulas": [list(p) for p in rep.only_in_formulas],
                "only_in_matrix": [list(p) for p in rep.only_in_matrix],
            }
            for tag, rep in pipe.cross_checks.items()
        },
        "ranks": {str(d): cx.rank(d) for d in range(1, 7)},
        "betti": betti,
        "euler_characteristic": cx.euler_characteristic(),
        "homology_generators": {
            str(d): [chain_names(cx, ch) for ch in cx.homology_generators(d)]
            for d in range(7)
        },
        "h2_relations": h2_relation_checks(cx),
        "kernel_corollary": {
            "all_cycles": krep.all_cycles,
            "independent": krep.independent,
            "spanning": krep.spanning,
            "kernel_dim": krep.kernel_dim,
        },
        "expansions": {
            "total": erep.total,
            "matches": erep.matches,
            "mismatches": [
                {"cell": name, "stated": list(stated), "recomputed": list(got)}
                for name, stated, got in erep.mismatches
            ],
        },
        "codimension_sweep": {
            "draws_per_cell": CODIM_DRAWS,
            "all_rank_4": all(r["rank"] == 4 for r in sweep),
            "all_containments_ok": all(
                r["constants_ok"] and r["ideal_ok"] for r in sweep
            ),
            "results": sweep,
        },
    }


def dossier_ok(doc: dict) -> bool:
    return (
        doc["census"]["matches_cells_file"]
        and doc["lint"]["post_errata_clean"]
        and doc["validation"]["d_squared_zero"]
        and all(c["clean"] for c in doc["cross_check"].values())
        and doc["kernel_corollary"]["all_cycles"]
        and doc["kernel_corollary"]["independent"]
        and doc["kernel_corollary"]["spanning"]
        and all(doc["h2_relations"].values())
        and doc["codimension_sweep"]["all_rank_4"]
        and doc["codimension_sweep"]["all_containments_ok"]
    )


# ---------------------------------------------------------------------------
# subcommands


def cmd_validate(config: RunConfig) -> int:
    try:
        pipe = run_pipeline(config)
    except (ingest.DataError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ENV
    ok = True
    for d in sorted(pipe.raw_lint):
        rep = pipe.raw_lint[d]
        for f in rep.findings:
            print(f"lint d{d}: {f.generator}: term {f.term} ({f.reason})")
    applied = [e for d in sorted(pipe.errata_reports) for e in pipe.errata_reports[d].applied]
    for e in applied:
        print(f"errata applied: {e.describe()}")
    post_clean = all(r.clean for r in pipe.post_lint.values())
    print(f"post-errata lint: {'clean' if post_clean else 'FINDINGS REMAIN'}")
    ok &= post_clean
    print(f"census matches cells file: {pipe.census_ok}")
    ok &= pipe.census_ok
    if pipe.validation is None:
        ok = False
        print("d-squared check: skipped (data not dimension-homogeneous)")
    elif pipe.validation.ok:
        print("d-squared check: zero for every generator (degrees 2..6)")
    else:
        ok = False
        print("d-squared check: FAILURES")
        for g, cells in pipe.validation.failures:
            print(f"  dd({g}) = {' + '.join(cells)}")
    for tag, rep in pipe.cross_checks.items():
        if rep.clean:
            print(f"cross-check {tag}: formulas and grid agree")
        else:
            ok = False
            print(f"cross-check {tag}: DIFFERENCES")
            for gen, term in rep.only_in_formulas:
                print(f"  only in formulas: ({gen}, {term})")
            for gen, term in rep.only_in_matrix:
                print(f"  only in grid:     ({gen}, {term})")
    return EXIT_OK if ok else EXIT_MATH


def cmd_homology(config: RunConfig) -> int:
    try:
        pipe = run_pipeline(config)
    except (ingest.DataError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ENV
    if not pipe.clean:
        print("error: validation failed; run the validate subcommand", file=sys.stderr)
        return EXIT_MATH
    cx = pipe.complex
    doc = {
        "betti": {str(d): cx.betti(d) for d in range(7)},
        "generators": {
            str(d): [chain_names(cx, ch) for ch in cx.homology_generators(d)]
            for d in range(7)
        },
        "h2_relations": h2_relation_checks(cx),
        "kernel_corollary": homology.verify_kernel_generators(
            cx, pipe.dataset.kernel_cycles
        ).ok,
    }
    if config.output == "json":
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        for d in range(7):
            gens = doc["generators"][str(d)]
            gen_text = "; ".join(" + ".join(g) for g in gens) if gens else "-"
            print(f"b_{d} = {doc['betti'][str(d)]}   generators: {gen_text}")
        print("degree-2 class relations:")
        for name, val in doc["h2_relations"].items():
            print(f"  {name}: {'ok' if val else 'FAIL'}")
        print(f"kernel corollary: {'ok' if doc['kernel_corollary'] else 'FAIL'}")
    relations_ok = all(doc["h2_relations"].values()) and doc["kernel_corollary"]
    return EXIT_OK if relations_ok else EXIT_MATH


def _parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"bad rational {text!r}: {exc}")


def cmd_codim(config: RunConfig, args) -> int:
    try:
        cell = parse_cell(args.cell)
    except UnknownCellError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ENV
    moduli_args = {
        nm: getattr(args, nm)
        for nm in ("alpha", "beta", "gamma")
        if getattr(args, nm) is not None
    }
    try:
        if args.points:
            support = [Fraction(tok) for tok in args.points.split(",")]
            rng = conditions.seeded_rng(config.seed, f"{cell.name}/explicit")
            _, drawn = conditions.random_parameters(cell, rng)
            drawn.update(moduli_args)
            system = conditions.instantiate(cell, support, drawn)
        else:
            rng = conditions.seeded_rng(config.seed, f"{cell.name}/0")
            support, drawn = conditions.random_parameters(cell, rng)
            drawn.update(moduli_args)
            system = conditions.instantiate(cell, support, drawn)
    except conditions.ConstraintError as exc:
        print(f"constraint error: {exc}", file=sys.stderr)
        return EXIT_ENV
    basis = oracle.FunctionBasis(config.degree_bound)
    rank = oracle.codimension(system, basis)
    contain = oracle.verify_containments(system)
    doc = {
        "cell": cell.name,
        "support": {f"p{i}": str(q) for i, q in system.points.items()},
        "moduli": {k: str(v) for k, v in system.moduli.items()},
        "rank": rank,
        "constants_ok": contain.constants_ok,
        "ideal_ok": contain.ideal_ok,
    }
    if config.output == "json":
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        print(f"cell {cell.name}")
        print(f"support: " + ", ".join(f"p{i} = {q}" for i, q in system.points.items()))
        if system.moduli:
            print("moduli: " + ", ".join(f"{k} = {v}" for k, v in system.moduli.items()))
        if args.show_system:
            print(system.describe())
        print(f"exact rank at degree {config.degree_bound}: {rank}")
        print(f"constants annihilated: {contain.constants_ok}")
        print(f"multiplicity ideal annihilated: {contain.ideal_ok}")
    ok = rank == 4 and contain.ok
    return EXIT_OK if ok else EXIT_MATH


def cmd_report(config: RunConfig) -> int:
    try:
        pipe = run_pipeline(config)
        doc = build_dossier(config, pipe)
    except (ingest.DataError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ENV
    print(json.dumps(doc, indent=2, sort_keys=True))
    return EXIT_OK if dossier_ok(doc) else EXIT_MATH


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tricell",
        description="Verification engine for the 244-cell mod-2 chain complex.",
    )
    parser.add_argument("--data", help="data directory (default: bundled files, or $TRICELL_DATA)")
    parser.add_argument("--errata", help="errata ledger path (default: <data>/errata.txt)")
    parser.add_argument(
        "--no-errata", action="store_true", help="run on the raw transcription"
    )
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
    parser.add_argument(
        "--degree", type=int, default=DEFAULT_DEGREE_BOUND,
        help="polynomial model degree bound (certification needs >= 35)",
    )
    parser.add_argument("--jobs", type=int, default=1, help="parallel codimension sweeps")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("validate", help="lint, errata, d-squared and grid cross-checks")
    sub.add_parser("homology", help="Betti numbers, generators, class relations")
    p_codim = sub.add_parser("codim", help="certify one cell's condition system")
    p_codim.add_argument("cell", help="cell name, e.g. V1+ or bOM")
    p_codim.add_argument("--points", help="comma-separated rational support points")
    p_codim.add_argument("--alpha", type=_parse_rational)
    p_codim.add_argument("--beta", type=_parse_rational)
    p_codim.add_argument("--gamma", type=_parse_rational)
    p_codim.add_argument(
        "--show-system", action="store_true", help="print the instantiated functionals"
    )
    sub.add_parser("report", help="full JSON dossier")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    config = config_from_args(args)
    if args.command == "validate":
        return cmd_validate(config)
    if args.command == "homology":
        return cmd_homology(config)
    if args.command == "codim":
        return cmd_codim(config, args)
    if args.command == "report":
        return cmd_report(config)
    raise AssertionError(args.command)


if __name__ == "__main__":
    sys.exit(main())
