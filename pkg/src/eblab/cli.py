"""Command-line entry point.

Exit codes: 0 all checks passed / query succeeded, 1 a counterexample or
failing check was found in well-formed input, 2 usage or input error.

Machine-readable lines have the shape ``RESULT <check-id> <pass|fail>
[witness=<k=v,...>]`` with stable ordering; ``--mode machine`` suppresses the
human commentary, ``--mode both`` (default) prints both.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from . import suite
from .config import RunConfig, load_config
from .core import AxiomReport, FiniteBLAlgebra, elements_of, mask_of, verify_bl
from .correspond import equivalence_boolean, equivalence_godel, monadic_subset_check
from .epistemic import enumerate_ebl, verify_ebl
from .errors import EblabError
from .filters import enumerate_filters, is_epistemic_filter, quotient
from .frames import (
    complex_structure,
    constant_image,
    frame_coincidence,
    function_algebra,
    normalization_square,
    solvability,
)
from .terms import check_statement, parse, parse_statement, print_term
from .textio import (
    Bundle,
    builtin,
    format_algebra,
    format_structure,
    load_bundle,
)


class Reporter:
    """Collects check outcomes and prints them per the output mode."""

    def __init__(self, mode: str):
        self.mode = mode
        self.failed = 0
        self.checked = 0

    def info(self, text: str = ""):
        if self.mode in ("human", "both"):
            print(text)

    def data(self, text: str):
        print(text)

    def result(self, check_id: str, ok: bool, witness: dict | None = None):
        self.checked += 1
        if not ok:
            self.failed += 1
        if self.mode in ("machine", "both"):
            line = f"RESULT {check_id} {'pass' if ok else 'fail'}"
            if witness:
                line += " witness=" + ",".join(f"{k}={v}" for k, v in witness.items())
            print(line)

    def report(self, prefix: str, report: AxiomReport):
        for entry in report.entries:
            self.result(f"{prefix}.{entry.axiom}", entry.holds, entry.witness)

    @property
    def exit_code(self) -> int:
        return 1 if self.failed else 0


def _single_algebra(bundle: Bundle) -> FiniteBLAlgebra:
    names = list(bundle.algebras)
    if len(names) != 1:
        raise EblabError(
            f"expected exactly one algebra block, found {len(names)}; "
            "keep one algebra per file for this command"
        )
    return bundle.algebra(names[0])


def _parse_filter_list(text: str) -> int:
    try:
        return mask_of(int(tok) for tok in text.split(",") if tok.strip() != "")
    except ValueError as exc:
        raise EblabError(f"bad filter element list {text!r}: {exc}") from exc


# ---------------------------------------------------------------------------
# subcommands


def cmd_builtin(args, cfg: RunConfig, out: Reporter) -> int:
    alg = builtin(args.spec, cfg.size_cap)
    Path(args.out).write_text(format_algebra(alg), encoding="utf-8")
    out.info(f"wrote {alg.name} (n={alg.n}) to {args.out}")
    return 0


def cmd_check_bl(args, cfg: RunConfig, out: Reporter) -> int:
    bundle = load_bundle(args.file)
    if not bundle.algebras:
        raise EblabError(f"{args.file}: no algebra blocks")
    for name, raw in bundle.algebras.items():
        report = verify_bl(*raw.tables())
        out.report(f"bl.{name}", report)
        if report.ok:
            flags = ", ".join(k for k, v in report.classifiers.items() if v) or "none"
            out.info(f"{name}: valid (classifiers: {flags})")
        else:
            first = report.failures[0]
            out.info(f"{name}: {first.axiom} fails with witness {first.witness}")
    return out.exit_code


def cmd_check_ebl(args, cfg: RunConfig, out: Reporter) -> int:
    bundle = load_bundle(args.file)
    raw = bundle.raw_structure(args.structure)
    alg = bundle.algebra(raw.over)
    report = verify_ebl(alg, raw.forall, raw.exists)
    out.report(f"ebl.{args.structure}", report)
    if report.ok:
        st = bundle.structure(args.structure)
        out.info(f"{args.structure}: valid epistemic structure, focal element {st.focal}")
    else:
        first = report.failures[0]
        out.info(f"{args.structure}: {first.axiom} fails with witness {first.witness}")
    return out.exit_code


def cmd_enumerate(args, cfg: RunConfig, out: Reporter) -> int:
    bundle = load_bundle(args.file)
    alg = _single_algebra(bundle)
    method = args.method or cfg.method
    structures = enumerate_ebl(alg, method, cfg.pair_budget, cfg.effective_workers)
    if method == "both":
        out.result("enumerate.method-agreement", True)
    if args.emit == "tables":
        for i, st in enumerate(structures):
            named = replace(st, name=f"s{i}")
            out.data(format_structure(named, over=alg.name).rstrip("\n"))
    else:
        out.data(str(len(structures)))
    return out.exit_code


def cmd_focal(args, cfg: RunConfig, out: Reporter) -> int:
    bundle = load_bundle(args.file)
    st = bundle.structure(args.structure)
    out.info(f"focal element of {args.structure}:")
    out.data(str(st.focal))
    return 0


def cmd_filters(args, cfg: RunConfig, out: Reporter) -> int:
    bundle = load_bundle(args.file)
    st = bundle.structure(args.structure)
    for mask in enumerate_filters(st.algebra):
        if args.epistemic and not is_epistemic_filter(st, mask)[0]:
            continue
        out.data(",".join(str(i) for i in elements_of(mask)))
    return 0


def cmd_quotient(args, cfg: RunConfig, out: Reporter) -> int:
    bundle = load_bundle(args.file)
    st = bundle.structure(args.structure)
    mask = _parse_filter_list(args.filter)
    q = quotient(st, mask)
    out.data(format_algebra(q.algebra).rstrip("\n"))
    out.data(format_structure(q, over=q.algebra.name).rstrip("\n"))
    return 0


def cmd_frame_complex(args, cfg: RunConfig, out: Reporter) -> int:
    bundle = load_bundle(args.file)
    frame = bundle.frame(args.frame)
    fa = function_algebra(frame.base, frame.worlds, cfg.size_cap)
    st, fa = complex_structure(frame, fa, cfg.size_cap)
    out.info(
        f"complex algebra of {args.frame}: {fa.algebra.n} elements over "
        f"{frame.base.name}^{frame.worlds}"
    )
    out.result(f"frame.{args.frame}.ebl", True)
    out.result(f"frame.{args.frame}.focal-is-pi", st.focal == fa.encode(frame.pi))
    out.info(f"focal element: {st.focal} = tuple {fa.decode(st.focal)}")
    if args.verify_all:
        out.result(f"frame.{args.frame}.normalization-square", normalization_square(frame))
        out.result(f"frame.{args.frame}.solvability", solvability(frame)[0])
        out.result(f"frame.{args.frame}.constant-image", constant_image(st, fa))
        out.result(f"frame.{args.frame}.coincidence", frame_coincidence(frame, fa))
    return out.exit_code


def cmd_correspond(args, cfg: RunConfig, out: Reporter) -> int:
    bundle = load_bundle(args.file)
    alg = _single_algebra(bundle)
    workers = cfg.effective_workers
    if args.family == "pseudomonadic":
        res = equivalence_boolean(
            alg, cfg.method if cfg.method != "both" else "pairs",
            cfg.pair_budget, cfg.table_budget, workers,
        )
        out.info(
            f"epistemic structures: {len(res.ebl_structures)}, "
            f"pseudomonadic tables: {len(res.family_structures)}"
        )
    elif args.family == "godel-kd45":
        res = equivalence_godel(
            alg, cfg.method if cfg.method != "both" else "pairs", cfg.pair_budget, workers
        )
        out.info(
            f"epistemic structures: {len(res.ebl_structures)}, "
            f"bi-modal pairs: {len(res.family_structures)}"
        )
    else:
        res = monadic_subset_check(
            alg, cfg.method if cfg.method != "both" else "pairs", cfg.pair_budget, workers
        )
        out.info(
            f"monadic pairs: {len(res.family_structures)} of "
            f"{len(res.ebl_structures)} epistemic structures"
        )
    out.result(f"correspond.{args.family}", res.equal)
    return out.exit_code


def cmd_prove(args, cfg: RunConfig, out: Reporter) -> int:
    bundle = load_bundle(args.file)
    st = bundle.structure(args.structure)
    statements: list[tuple[str, str]] = []
    if args.stmt:
        statements.append(("stmt", args.stmt))
    if args.stmts:
        for lineno, raw in enumerate(
            Path(args.stmts).read_text(encoding="utf-8").splitlines(), start=1
        ):
            line = raw.split("#", 1)[0].strip()
            if line:
                statements.append((f"line{lineno}", line))
    if not statements:
        raise EblabError("nothing to prove: pass --stmt or --stmts")
    for label, text in statements:
        stmt = parse_statement(text)
        ok, witness = check_statement(stmt, st)
        out.result(f"prove.{label}", ok, witness)
        verdict = "holds" if ok else f"fails at {witness}"
        out.info(f"{print_term(stmt)}  {verdict}")
    return out.exit_code


def cmd_paper_suite(args, cfg: RunConfig, out: Reporter) -> int:
    for res in suite.run_all(cfg):
        out.result(res.check_id, res.ok)
        out.info(f"  {res.check_id}: {res.detail}")
    return out.exit_code


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eblab",
        description="Finite-model workbench for epistemic BL-algebras.",
    )
    parser.add_argument("--config", help="key=value config file mirroring the run options")
    parser.add_argument("--size-cap", type=int, help="largest carrier to construct")
    parser.add_argument("--workers", type=int, help="worker threads for sweeps")
    parser.add_argument("--mode", choices=("human", "machine", "both"), help="output mode")
    parser.add_argument("--method", choices=("pairs", "brute", "both"),
                        help="default enumeration method")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("builtin", help="write a builtin algebra to a file")
    p.add_argument("spec", help="mv:N | godel:N | bool:K | osum:mv2+mv3 | prod:godel2xgodel3")
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_builtin)

    p = sub.add_parser("check-bl", help="verify the BL axioms of every algebra in a file")
    p.add_argument("file")
    p.set_defaults(fn=cmd_check_bl)

    p = sub.add_parser("check-ebl", help="verify the epistemic axioms of a structure")
    p.add_argument("file")
    p.add_argument("--structure", required=True)
    p.set_defaults(fn=cmd_check_ebl)

    p = sub.add_parser("enumerate", help="enumerate all epistemic structures on an algebra")
    p.add_argument("file")
    p.add_argument("--method", choices=("pairs", "brute", "both"))
    p.add_argument("--emit", choices=("count", "tables"), default="count")
    p.set_defaults(fn=cmd_enumerate)

    p = sub.add_parser("focal", help="print the focal element of a structure")
    p.add_argument("file")
    p.add_argument("--structure", required=True)
    p.set_defaults(fn=cmd_focal)

    p = sub.add_parser("filters", help="list implicative (or epistemic) filters")
    p.add_argument("file")
    p.add_argument("--structure", required=True)
    p.add_argument("--epistemic", action="store_true")
    p.set_defaults(fn=cmd_filters)

    p = sub.add_parser("quotient", help="quotient a structure by an epistemic filter")
    p.add_argument("file")
    p.add_argument("--structure", required=True)
    p.add_argument("--filter", required=True, help="comma-separated element indices")
    p.set_defaults(fn=cmd_quotient)

    p = sub.add_parser("frame-complex", help="build the complex algebra of a frame")
    p.add_argument("file")
    p.add_argument("--frame", required=True)
    p.add_argument("--verify-all", action="store_true")
    p.set_defaults(fn=cmd_frame_complex)

    p = sub.add_parser("correspond", help="compare epistemic and family structure sets")
    p.add_argument("file")
    p.add_argument("--family", required=True,
                   choices=("pseudomonadic", "godel-kd45", "monadic"))
    p.set_defaults(fn=cmd_correspond)

    p = sub.add_parser("prove", help="evaluate statements on a structure")
    p.add_argument("file")
    p.add_argument("--structure", required=True)
    p.add_argument("--stmt")
    p.add_argument("--stmts")
    p.set_defaults(fn=cmd_prove)

    p = sub.add_parser("paper-suite", help="run the full verification suite")
    p.set_defaults(fn=cmd_paper_suite)
    return parser


def _config_from_args(args) -> RunConfig:
    cfg = RunConfig()
    if args.config:
        cfg = load_config(args.config, cfg)
    overrides = {}
    if args.size_cap is not None:
        overrides["size_cap"] = args.size_cap
    if args.workers is not None:
        overrides["workers"] = args.workers
    if args.mode is not None:
        overrides["output_mode"] = args.mode
    if args.method is not None:
        overrides["method"] = args.method
    return replace(cfg, **overrides) if overrides else cfg


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config_from_args(args)
        out = Reporter(cfg.output_mode)
        return args.fn(args, cfg, out)
    except EblabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
