"""Command-line front end.

Subcommands on arrangement files: `betti`, `e1`, `e2`, `poset`, `oracle`,
`check`; on double-complex files: `ss`.  Exit codes: 0 success, 1 parse or
validation error, 2 enumeration cap exceeded, 3 consistency failure (oracle
mismatch, negative alternating sum, non-unique degree, degeneration or
convergence failure).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .arrangement import PROJECTIVE, Hyperplane, decone, parse_arrangement
from .betti import BettiReport, compute_betti
from .errors import CapExceededError, ConsistencyError, ParseError, ValidationError
from .flats import DEFAULT_CAP, build_intersection_poset, mobius_betti, whitney_betti
from .spectral import (
    HORIZONTAL,
    VERTICAL,
    cohomology_dims,
    pages,
    parse_double_complex,
    total_complex,
    verify_convergence,
)


@dataclass
class RunConfig:
    subcommand: str
    input_path: str
    infinity_index: int | None = None
    enumeration_cap: int = DEFAULT_CAP
    output: str = "text"
    verbose: bool = False
    run_oracles: bool = True


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mvbetti",
        description="Betti numbers of hyperplane arrangement complements "
        "and spectral sequences of double complexes, computed exactly.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)
    arrangement_cmds = {
        "betti": "Betti numbers and Poincare polynomial of the complement",
        "e1": "first page of the Mayer-Vietoris spectral sequence",
        "e2": "second (limit) page of the Mayer-Vietoris spectral sequence",
        "poset": "intersection poset with codimensions and Moebius values",
        "oracle": "both combinatorial Betti oracles",
        "check": "full pipeline plus every cross-check; nonzero exit on failure",
    }
    for name, help_text in arrangement_cmds.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("input", help="arrangement file")
        p.add_argument("--infinity", type=int, default=None, metavar="K",
                       help="index (0-based) of the hyperplane at infinity (projective input)")
        p.add_argument("--cap", type=int, default=DEFAULT_CAP, metavar="R",
                       help=f"subset enumeration cap (default {DEFAULT_CAP})")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--verbose", action="store_true")
        p.add_argument("--no-oracle", action="store_true", help="skip the oracle cross-checks")
    p = sub.add_parser("ss", help="pages and convergence of a double-complex file")
    p.add_argument("input", help="double complex file")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--verbose", action="store_true")
    return parser


def _config(args) -> RunConfig:
    cap = getattr(args, "cap", DEFAULT_CAP)
    if cap < 1:
        raise ValidationError("enumeration cap must be at least 1")
    return RunConfig(
        subcommand=args.subcommand,
        input_path=args.input,
        infinity_index=getattr(args, "infinity", None),
        enumeration_cap=cap,
        output="json" if args.json else "text",
        verbose=args.verbose,
        run_oracles=not getattr(args, "no_oracle", False),
    )


def _page_entries(page) -> list:
    return [[p, q, d] for (p, q), d in sorted(page.dims.items())] if page else None


def _report_json(report: BettiReport) -> dict:
    oracle = None
    if report.oracle_betti is not None:
        oracle = {"mobius": list(report.oracle_betti), "whitney": list(report.oracle_whitney)}
    return {
        "kind": report.kind,
        "n": report.n,
        "r": report.r,
        "essential_rank": report.essential_rank,
        "shift": report.shift,
        "betti": list(report.betti),
        "poincare": list(report.poincare),
        "e1": _page_entries(report.e1),
        "e2": _page_entries(report.e2),
        "oracle": oracle,
        "agreement": report.agreement,
    }


def _format_page(dims: dict) -> str:
    if not dims:
        return "  (empty page)"
    ps = sorted({p for p, _ in dims})
    qs = sorted({q for _, q in dims}, reverse=True)
    width = max(
        [len(str(d)) for d in dims.values()]
        + [len(str(p)) for p in ps]
        + [len(str(q)) for q in qs]
    )
    header = "q\\p".rjust(6) + "".join(str(p).rjust(width + 2) for p in ps)
    lines = [header]
    for q in qs:
        cells = "".join(str(dims.get((p, q), ".")).rjust(width + 2) for p in ps)
        lines.append(str(q).rjust(6) + cells)
    return "\n".join(lines)


def _poincare_str(coeffs) -> str:
    terms = []
    for k, c in enumerate(coeffs):
        if not c:
            continue
        if k == 0:
            terms.append(str(c))
        else:
            t = "t" if k == 1 else f"t^{k}"
            terms.append(t if c == 1 else f"{c}{t}")
    return " + ".join(terms) if terms else "0"


def _print_report(config: RunConfig, report: BettiReport, out):
    if config.output == "json":
        print(json.dumps(_report_json(report), sort_keys=True), file=out)
        return
    if config.subcommand in ("betti", "check"):
        print("betti: " + " ".join(str(b) for b in report.betti), file=out)
        print("poincare: " + _poincare_str(report.poincare), file=out)
        if config.verbose:
            print(f"kind: {report.kind}", file=out)
            print(f"n: {report.n}  r: {report.r}", file=out)
            print(f"essential rank: {report.essential_rank}  shift: {report.shift}", file=out)
            print(f"general position: {'yes' if report.general_position else 'no'}", file=out)
            grading = " ".join(f"H^{i}={d}" for i, d in sorted(report.graded.items()))
            print(f"direct-image grading: {grading}", file=out)
        if report.agreement is not None:
            print(f"oracle agreement: {'yes' if report.agreement else 'NO'}", file=out)
            if config.verbose or not report.agreement:
                print("  mobius:  " + " ".join(str(b) for b in report.oracle_betti), file=out)
                print("  whitney: " + " ".join(str(b) for b in report.oracle_whitney), file=out)
    elif config.subcommand in ("e1", "e2"):
        page = report.e1 if config.subcommand == "e1" else report.e2
        if page is None:
            print("(no hyperplanes: no spectral sequence)", file=out)
        else:
            print(f"page {page.page} (n={page.n}, r={page.r}):", file=out)
            print(_format_page(page.dims), file=out)


def _run_arrangement(config: RunConfig, out) -> int:
    with open(config.input_path, encoding="utf-8") as fh:
        arr = parse_arrangement(fh.read())
    if config.infinity_index is not None and arr.kind != PROJECTIVE:
        raise ValidationError("--infinity is only valid for projective input")

    if config.subcommand in ("poset", "oracle"):
        # These inspect the affine picture directly, so decone here.
        if arr.kind == PROJECTIVE:
            infinity = config.infinity_index
            arr = decone(arr, arr.r - 1 if infinity is None else infinity)

    if config.subcommand == "poset":
        poset = build_intersection_poset(arr, config.enumeration_cap)
        if config.output == "json":
            flats = [
                {
                    "dim": f.dimension,
                    "codim": poset.codim[i],
                    "mobius": poset.mobius[i],
                    "equations": _flat_equations(f, arr.ambient_dim),
                }
                for i, f in enumerate(poset.flats)
            ]
            doc = {"kind": arr.kind, "n": arr.ambient_dim, "r": arr.r, "flats": flats}
            print(json.dumps(doc, sort_keys=True), file=out)
        else:
            print(f"{len(poset.flats)} flats:", file=out)
            for i, f in enumerate(poset.flats):
                eqs = "; ".join(_flat_equations(f, arr.ambient_dim)) or "(ambient space)"
                print(
                    f"  dim={f.dimension} codim={poset.codim[i]} mu={poset.mobius[i]:+d}  {eqs}",
                    file=out,
                )
        return 0

    if config.subcommand == "oracle":
        mobius = mobius_betti(build_intersection_poset(arr, config.enumeration_cap))
        whitney = whitney_betti(arr, config.enumeration_cap)
        agree = mobius == whitney
        if config.output == "json":
            doc = {
                "kind": arr.kind,
                "n": arr.ambient_dim,
                "r": arr.r,
                "oracle": {"mobius": list(mobius), "whitney": list(whitney)},
                "agreement": agree,
            }
            print(json.dumps(doc, sort_keys=True), file=out)
        else:
            print("mobius:  " + " ".join(str(b) for b in mobius), file=out)
            print("whitney: " + " ".join(str(b) for b in whitney), file=out)
        return 0 if agree else 3

    report = compute_betti(
        arr,
        infinity_index=config.infinity_index,
        cap=config.enumeration_cap,
        oracles=config.run_oracles or config.subcommand == "check",
    )
    _print_report(config, report, out)
    if report.agreement is False:
        print(
            f"inconsistency: pipeline {report.betti} disagrees with oracles "
            f"(mobius {report.oracle_betti}, whitney {report.oracle_whitney})",
            file=sys.stderr,
        )
        return 3
    return 0


def _flat_equations(flat, n) -> list:
    eqs = []
    for i in range(flat.system.rows):
        row = flat.system.row(i)
        normal, constant = row[:n], row[n]
        if all(x == 0 for x in normal):
            eqs.append(f"0 = {constant}")
        else:
            eqs.append(str(Hyperplane(tuple(normal), constant)))
    return eqs


def _run_ss(config: RunConfig, out) -> int:
    with open(config.input_path, encoding="utf-8") as fh:
        dc = parse_double_complex(fh.read())
    tc = total_complex(dc)
    h = cohomology_dims(tc)
    box = dc.support_box()
    r_max = 2 if box is None else max(2, max(box[1] - box[0], box[3] - box[2]) + 2)
    results = {}
    converged = True
    for filtration in (HORIZONTAL, VERTICAL):
        pt = pages(dc, filtration, r_max)
        ok = verify_convergence(pt, h)
        converged = converged and ok
        results[filtration] = (pt, ok)
    if config.output == "json":
        doc = {
            "total_cohomology": {str(k): v for k, v in sorted(h.items())},
            "r_max": r_max,
            "filtrations": {
                name: {
                    "stable_at": pt.stable_at,
                    "converges": ok,
                    "pages": {
                        str(r): [[p, q, d] for (p, q), d in sorted(pt.page(r).items())]
                        for r in range(r_max + 1)
                    },
                }
                for name, (pt, ok) in results.items()
            },
            "converges": converged,
        }
        print(json.dumps(doc, sort_keys=True), file=out)
    else:
        htext = " ".join(f"H^{k}={v}" for k, v in sorted(h.items())) or "0"
        print(f"total cohomology: {htext}", file=out)
        for name, (pt, ok) in results.items():
            stable = pt.stable_at if pt.stable_at <= r_max else f">{r_max}"
            print(f"filtration {name}: stable at r={stable}, "
                  f"converges: {'yes' if ok else 'NO'}", file=out)
            shown = (1, 2) if not config.verbose else tuple(range(r_max + 1))
            for r in shown:
                print(f"  E_{r}:", file=out)
                print(_indent(_format_page(pt.page(r)), 2), file=out)
            limit = pt.limit()
            print("  E_inf:", file=out)
            print(_indent(_format_page(limit), 2), file=out)
    return 0 if converged else 3


def _indent(text: str, by: int) -> str:
    pad = " " * by
    return "\n".join(pad + line for line in text.splitlines())


def run(config: RunConfig, out=None) -> int:
    out = out if out is not None else sys.stdout
    try:
        if config.subcommand == "ss":
            return _run_ss(config, out)
        return _run_arrangement(config, out)
    except (ParseError, ValidationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ConsistencyError as exc:
        print(f"inconsistency: {exc}", file=sys.stderr)
        return 3


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        config = _config(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return run(config)


def entry():
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
