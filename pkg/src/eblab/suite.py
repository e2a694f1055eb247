"""The desk-scale verification suite behind ``eblab paper-suite``.

Each criterion is a pure function of the run configuration returning a
:class:`CheckResult`; the harness runs every criterion twice (single worker
and configured workers) and adds a determinism criterion comparing the two,
so any nondeterminism in a sweep shows up as a red line rather than flaky
output.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product

import numpy as np

from .config import RunConfig, parallel_map
from .core import (
    FiniteBLAlgebra,
    boolean_algebra,
    direct_product,
    elements_of,
    godel_chain,
    mv_chain,
    ordinal_sum,
)
from .correspond import (
    equivalence_boolean,
    equivalence_godel,
    forall_filter_equivalence,
    monadic_subset_check,
    pseudomonadic_structure_set,
    verify_pseudomonadic,
)
from .epistemic import (
    AXIOM_CHECKS,
    EBL_AXIOMS,
    CRelCompletePair,
    brute_pair_count,
    check_c_relatively_complete,
    enumerate_ebl,
    epistemic_structure,
    image_subalgebra,
    pair_from_structure,
    structure_from_pair,
    verify_derived,
    verify_ebl,
    verify_focal_formula,
    verify_monadic,
)
from .filters import (
    compatible_congruences,
    congruence_of_filter,
    enumerate_filters,
    epistemic_filters,
    filter_of_congruence,
    quotient,
)
from .frames import (
    coincidence,
    complex_structure,
    constant_image,
    frame_coincidence,
    function_algebra,
    normalization_square,
    pointwise_lift_structure,
    possibilistic_frame,
    solvability,
    unnormalized_focal_structure,
)
from .terms import (
    Box,
    Dia,
    Fusion,
    Impl,
    Join,
    Meet,
    One,
    Statement,
    Var,
    Zero,
    check_statement_tables,
    named_library,
    parse,
    print_term,
)


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    ok: bool
    detail: str


def _result(check_id: str, failures: list[str], detail: str) -> CheckResult:
    if failures:
        return CheckResult(check_id, False, "; ".join(failures[:5]))
    return CheckResult(check_id, True, detail)


def family_algebras() -> list[FiniteBLAlgebra]:
    """The desk family: MV and Goedel chains, Boolean algebras, ordinal sums
    of two chains of size two or three."""
    algebras = [mv_chain(n) for n in range(2, 6)]
    algebras += [godel_chain(n) for n in range(2, 6)]
    algebras += [boolean_algebra(k) for k in range(1, 4)]
    small_chains = [mv_chain(2), mv_chain(3), godel_chain(3)]
    for left, right in product(small_chains, repeat=2):
        algebras.append(ordinal_sum([left, right]))
    return algebras


def _enumeration_method(alg: FiniteBLAlgebra, cfg: RunConfig) -> str:
    return "both" if brute_pair_count(alg) <= cfg.pair_budget else "pairs"


def check_example_chain(cfg: RunConfig, workers: int) -> CheckResult:
    """The worked 4-chain example: all epistemic and derived laws hold, the
    monadic law fails at 2/3, and the focal element is 2/3."""
    failures: list[str] = []
    alg = mv_chain(4)
    report = verify_ebl(alg, [0, 0, 3, 3], [0, 0, 3, 3])
    if not report.ok:
        failures.append(f"defining axioms fail: {report.failures[0].axiom}")
    structure = epistemic_structure(alg, [0, 0, 3, 3], [0, 0, 3, 3], "example")
    derived = verify_derived(structure)
    if not derived.ok:
        failures.append(f"derived law fails: {derived.failures[0].axiom}")
    m1 = verify_monadic(structure).entry("M1")
    if m1.holds or m1.witness != {"a": 2}:
        failures.append(f"M1 expected to fail at a=2, got {m1}")
    if structure.focal != 2:
        failures.append(f"focal expected 2, got {structure.focal}")
    ok, witness = verify_focal_formula(structure)
    if not ok:
        failures.append(f"focal formula fails at {witness}")
    if elements_of(image_subalgebra(structure)) != (0, 3):
        failures.append("image expected {0, 3}")
    return _result(
        "example-chain", failures, "mv4 example verified (E/derived pass, M1 fails at 2, focal 2)"
    )


def check_derived_soundness(cfg: RunConfig, workers: int) -> CheckResult:
    """Every enumerated structure on the desk family satisfies the derived laws."""
    failures: list[str] = []
    structures = 0
    checks = 0
    for alg in family_algebras():
        for st in enumerate_ebl(
            alg, _enumeration_method(alg, cfg), cfg.pair_budget, workers
        ):
            structures += 1
            report = verify_derived(st)
            checks += len(report.entries)
            if not report.ok:
                failures.append(
                    f"{alg.name} {st.key()}: {report.failures[0].axiom} fails"
                )
    return _result(
        "derived-soundness",
        failures,
        f"{checks} derived-law checks over {structures} structures, 0 failures",
    )


def check_enumeration_agreement(cfg: RunConfig, workers: int) -> CheckResult:
    """pairs-method enumeration equals the brute table scan wherever brute
    fits the budget; counts match the frozen oracles."""
    oracle_counts = {"mv2": 1, "mv3": 2, "mv4": 3, "godel3": 3}
    failures: list[str] = []
    compared = 0
    for alg in family_algebras():
        if brute_pair_count(alg) > cfg.pair_budget:
            continue
        via_pairs = [s.key() for s in enumerate_ebl(alg, "pairs", cfg.pair_budget, workers)]
        via_brute = [s.key() for s in enumerate_ebl(alg, "brute", cfg.pair_budget)]
        compared += 1
        if via_pairs != via_brute:
            failures.append(f"{alg.name}: pairs {len(via_pairs)} != brute {len(via_brute)}")
        want = oracle_counts.get(alg.name)
        if want is not None and len(via_brute) != want:
            failures.append(f"{alg.name}: count {len(via_brute)} != oracle {want}")
    return _result(
        "enumeration-agreement",
        failures,
        f"pairs == brute on {compared} algebras; oracle counts match",
    )


def check_reconstruction_roundtrip(cfg: RunConfig, workers: int) -> CheckResult:
    """(B, c) -> structure -> (B, c) and structure -> (B, c) -> structure are
    mutually inverse on every algebra of size at most five."""
    from .core import subalgebras

    failures: list[str] = []
    pairs_checked = 0
    structures_checked = 0
    for alg in [a for a in family_algebras() if a.n <= 5]:
        for mask in subalgebras(alg):
            for c in range(alg.n):
                if not check_c_relatively_complete(alg, mask, c).ok:
                    continue
                pairs_checked += 1
                st = structure_from_pair(CRelCompletePair(alg, mask, c))
                back = pair_from_structure(st)
                if back.subalgebra != mask or back.c != c:
                    failures.append(f"{alg.name}: pair ({mask:#x},{c}) round trip broke")
        for st in enumerate_ebl(alg, "pairs", cfg.pair_budget, workers):
            structures_checked += 1
            rebuilt = structure_from_pair(pair_from_structure(st))
            if rebuilt.key() != st.key():
                failures.append(f"{alg.name}: structure {st.key()} round trip broke")
    return _result(
        "reconstruction-roundtrip",
        failures,
        f"{pairs_checked} pairs and {structures_checked} structures round-trip",
    )


def check_boolean_equivalence(cfg: RunConfig, workers: int) -> CheckResult:
    """Epistemic pairs coincide with pseudomonadic tables on 1..3 atoms, and
    every accepted table satisfies the derived pseudomonadic laws."""
    failures: list[str] = []
    counts = []
    for k in (1, 2, 3):
        alg = boolean_algebra(k)
        res = equivalence_boolean(
            alg, method="pairs", pair_budget=cfg.pair_budget,
            table_budget=cfg.table_budget, workers=workers,
        )
        counts.append(len(res.family_structures))
        if not res.equal:
            failures.append(
                f"bool{k}: EBL {len(res.ebl_structures)} != PM {len(res.family_structures)}"
            )
        for _, etab in pseudomonadic_structure_set(alg, cfg.table_budget):
            report = verify_pseudomonadic(alg, list(etab), include_derived=True)
            if not report.ok:
                failures.append(f"bool{k}: derived {report.failures[0].axiom} fails")
    return _result(
        "boolean-equivalence",
        failures,
        f"structure sets equal on bool1..3 (counts {counts}); derived laws hold",
    )


def check_godel_equivalence(cfg: RunConfig, workers: int) -> CheckResult:
    """Epistemic pairs coincide with the bi-modal KD45 pairs on Goedel
    chains 2..4 and on the 2x2 product."""
    failures: list[str] = []
    counts = []
    targets = [godel_chain(2), godel_chain(3), godel_chain(4),
               direct_product(godel_chain(2), godel_chain(2))]
    for alg in targets:
        res = equivalence_godel(alg, method="pairs", pair_budget=cfg.pair_budget, workers=workers)
        counts.append(len(res.ebl_structures))
        if not res.equal:
            failures.append(
                f"{alg.name}: EBL {len(res.ebl_structures)} != KD45 {len(res.family_structures)}"
            )
    monadic = monadic_subset_check(mv_chain(4), pair_budget=cfg.pair_budget, workers=workers)
    if not monadic.equal:
        failures.append("monadic pairs not a subset of epistemic pairs on mv4")
    if len(monadic.family_structures) >= len(monadic.ebl_structures):
        failures.append("monadic subset not strict on mv4")
    return _result(
        "godel-equivalence",
        failures,
        f"structure sets equal on godel2..4 and 2x2 product (counts {counts}); "
        f"monadic strictly below epistemic on mv4",
    )


def check_filter_bijection(cfg: RunConfig, workers: int) -> CheckResult:
    """Epistemic filters and compatible congruences (independently enumerated
    as partitions) are in mutually inverse bijection; quotients validate."""
    failures: list[str] = []
    structures = 0
    quotients = 0
    boolean_cases = 0
    for alg in [a for a in family_algebras() if a.n <= 5]:
        for st in enumerate_ebl(alg, "pairs", cfg.pair_budget, workers):
            structures += 1
            masks = epistemic_filters(st)
            from_filters = sorted(congruence_of_filter(st, m).key() for m in masks)
            from_partitions = sorted(c.key() for c in compatible_congruences(st))
            if from_filters != from_partitions:
                failures.append(
                    f"{alg.name} {st.key()}: {len(from_filters)} filter congruences vs "
                    f"{len(from_partitions)} partition congruences"
                )
            for cong in compatible_congruences(st):
                mask = filter_of_congruence(st, cong)
                if mask not in masks:
                    failures.append(f"{alg.name}: congruence maps outside the filter set")
            for mask in masks:
                q = quotient(st, mask)  # factory re-validates the axioms
                quotients += 1
                if verify_ebl(q.algebra, q.forall, q.exists).ok is False:
                    failures.append(f"{alg.name}: quotient by {mask:#x} invalid")
    for k in (1, 2, 3):
        alg = boolean_algebra(k)
        for st in enumerate_ebl(alg, "pairs", cfg.pair_budget, workers):
            for mask in enumerate_filters(alg):
                ok, witness = forall_filter_equivalence(st, mask)
                boolean_cases += 1
                if not ok:
                    failures.append(f"bool{k}: forall-filter divergence at {witness}")
    return _result(
        "filter-bijection",
        failures,
        f"bijection on {structures} structures, {quotients} quotients valid, "
        f"forall-filter equivalence on {boolean_cases} Boolean cases",
    )


def _chain_bases() -> list[FiniteBLAlgebra]:
    return [
        mv_chain(2),
        mv_chain(3),
        mv_chain(4),
        godel_chain(3),
        godel_chain(4),
        ordinal_sum([mv_chain(2), mv_chain(3)]),
    ]


def _normalized_distributions(alg: FiniteBLAlgebra, worlds: int):
    top = alg.top
    for pi in product(range(alg.n), repeat=worlds):
        if top in pi:
            yield pi


def check_frame_suite(cfg: RunConfig, workers: int) -> CheckResult:
    """Every frame with chain base of size at most four and at most three
    worlds: the complex structure validates with focal pi, the normalization
    square and solvability lemmas hold, the operator image is the constants,
    and the rebuild from the focal distribution is table-identical."""
    failures: list[str] = []
    frames = 0
    for base in _chain_bases():
        for worlds in (1, 2, 3):
            fa = function_algebra(base, worlds, cfg.size_cap)

            def run(pi, fa=fa, base=base):
                frame = possibilistic_frame(base, list(pi))
                st, _ = complex_structure(frame, fa)  # validates, asserts focal == pi
                problems = []
                if not normalization_square(frame):
                    problems.append("normalization-square")
                if not solvability(frame)[0]:
                    problems.append("solvability")
                if not constant_image(st, fa):
                    problems.append("constant-image")
                if not frame_coincidence(frame, fa):
                    problems.append("coincidence")
                return pi, problems

            for pi, problems in parallel_map(
                run, _normalized_distributions(base, worlds), workers
            ):
                frames += 1
                for problem in problems:
                    failures.append(f"{base.name} pi={pi}: {problem}")
    return _result(
        "frame-suite", failures, f"{frames} frames verified on {len(_chain_bases())} chain bases"
    )


def check_coincidence_hypotheses(cfg: RunConfig, workers: int) -> CheckResult:
    """The two boundary structures show both rebuild hypotheses are needed:
    one has an unnormalized focal tuple, the other a non-constant image."""
    failures: list[str] = []
    st, fa = unnormalized_focal_structure(2, cfg.size_cap)
    if fa.decode(st.focal) != (2, 2):
        failures.append(f"unnormalized: focal tuple {fa.decode(st.focal)}")
    image = elements_of(image_subalgebra(st))
    if len(image) != 2:
        failures.append(f"unnormalized: image size {len(image)}")
    res = coincidence(st, fa)
    if res.normalized or res.constants or res.applicable:
        failures.append("unnormalized: hypotheses unexpectedly satisfied")
    base_structure, base_fa = unnormalized_focal_structure(1, cfg.size_cap)
    if base_structure.forall.tolist() != [0, 0, 3, 3] or base_structure.exists.tolist() != [0, 0, 3, 3]:
        failures.append("unnormalized: one-world case differs from the mv4 example")

    st2, fa2 = pointwise_lift_structure(2, cfg.size_cap)
    if fa2.decode(st2.focal) != (3, 3):
        failures.append(f"pointwise: focal tuple {fa2.decode(st2.focal)}")
    image2 = [fa2.decode(v) for v in elements_of(image_subalgebra(st2))]
    if all(len(set(t)) == 1 for t in image2):
        failures.append("pointwise: image is all-constant")
    res2 = coincidence(st2, fa2)
    if not res2.normalized or res2.constants or res2.applicable:
        failures.append("pointwise: hypothesis pattern unexpected")
    return _result(
        "coincidence-hypotheses",
        failures,
        "unnormalized-focal and pointwise-lift witnesses behave as claimed",
    )


def _random_term(rng: random.Random, depth: int):
    if depth == 0 or rng.random() < 0.25:
        return rng.choice(
            [Var("x"), Var("y"), Var("z"), Var("w"), Zero(), One()]
        )
    kind = rng.randrange(7)
    if kind == 0:
        return Box(_random_term(rng, depth - 1))
    if kind == 1:
        return Dia(_random_term(rng, depth - 1))
    left = _random_term(rng, depth - 1)
    right = _random_term(rng, depth - 1)
    return (
        Meet(left, right),
        Join(left, right),
        Fusion(left, right),
        Impl(left, right),
        Impl(left, Zero()),
    )[kind - 2]


def check_term_language(cfg: RunConfig, workers: int) -> CheckResult:
    """Printer/parser round trips; term-path verdicts agree with the
    table-path verdicts; the worked example's monadic failure reproduces
    through the term evaluator."""
    failures: list[str] = []
    library = named_library()
    for name, stmt in library.items():
        if parse(print_term(stmt)) != stmt:
            failures.append(f"library {name} does not round trip")
        if print_term(parse(print_term(stmt))) != print_term(stmt):
            failures.append(f"library {name} printing is not a fixpoint")
    rng = random.Random(170_451)
    for _ in range(1000):
        term = _random_term(rng, 6)
        if parse(print_term(term)) != term:
            failures.append(f"random term round trip broke: {print_term(term)}")
            break

    candidates = [mv_chain(2), mv_chain(3), mv_chain(4), godel_chain(3),
                  godel_chain(4), boolean_algebra(2)]
    agreements = 0
    for i in range(100):
        alg = candidates[i % len(candidates)]
        f = [rng.randrange(alg.n) for _ in range(alg.n)]
        e = [rng.randrange(alg.n) for _ in range(alg.n)]
        fa = np.array(f)
        ea = np.array(e)
        for axiom in EBL_AXIOMS:
            table_verdict = AXIOM_CHECKS[axiom](alg, fa, ea) is None
            term_verdict = check_statement_tables(library[axiom], alg, f, e)[0]
            agreements += 1
            if table_verdict != term_verdict:
                failures.append(f"{axiom} verdicts disagree on {alg.name} {f}/{e}")
    # inequality desugaring: s <= t behaves exactly like s -> t = 1
    alg = mv_chain(4)
    st = epistemic_structure(alg, [0, 0, 3, 3], [0, 0, 3, 3])
    for _ in range(50):
        lhs = _random_term(rng, 3)
        rhs = _random_term(rng, 3)
        direct = check_statement_tables(Statement("le", lhs, rhs), alg, st.forall, st.exists)
        sugared = check_statement_tables(
            Statement("eq", Impl(lhs, rhs), One()), alg, st.forall, st.exists
        )
        if direct != sugared:
            failures.append("inequality desugaring mismatch")
            break
    m1 = check_statement_tables(library["M1"], alg, st.forall, st.exists)
    if m1 != (False, {"x": 2}):
        failures.append(f"term-path M1 witness {m1} != (False, x=2)")
    return _result(
        "term-language",
        failures,
        f"library+1000 random terms round-trip; {agreements} verdicts agree across routes",
    )


CORE_CRITERIA = (
    check_example_chain,
    check_derived_soundness,
    check_enumeration_agreement,
    check_reconstruction_roundtrip,
    check_boolean_equivalence,
    check_godel_equivalence,
    check_filter_bijection,
    check_frame_suite,
    check_coincidence_hypotheses,
    check_term_language,
)


def run_core(cfg: RunConfig, workers: int) -> list[CheckResult]:
    return [criterion(cfg, workers) for criterion in CORE_CRITERIA]


def run_all(cfg: RunConfig) -> list[CheckResult]:
    """Run every criterion, then re-run with one worker and compare: the
    suite's own output must not depend on the worker count."""
    workers = max(2, cfg.effective_workers)
    results = run_core(cfg, workers)
    single = run_core(cfg, 1)
    deterministic = [(r.check_id, r.ok, r.detail) for r in results] == [
        (r.check_id, r.ok, r.detail) for r in single
    ]
    results.append(
        CheckResult(
            "determinism",
            deterministic,
            f"results identical with 1 worker and {workers} workers",
        )
    )
    return results
