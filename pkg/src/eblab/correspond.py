"""Equivalences between epistemic structures and the two classical families.

On Boolean carriers the exists-operator alone determines the pair (forall is
``~E~``), so the pseudomonadic side enumerates single tables while the
epistemic side enumerates pairs: comparing the two sets is an independent
double count.  On Goedel carriers both sides enumerate pairs, one through the
bi-modal KD45 axioms, one through the epistemic axioms.

Family axioms are evaluated through the named statement library, so the axiom
texts have a single home.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import _kernels
from .config import DEFAULT_PAIR_BUDGET, DEFAULT_TABLE_BUDGET
from .core import AxiomReport, FiniteBLAlgebra, _entry
from .epistemic import EpistemicStructure, as_unary_table, brute_pair_count, enumerate_ebl
from .errors import NotApplicableError, SizeLimitError
from .filters import is_epistemic_filter, is_implicative_filter
from .terms import check_statement_tables, named_library

PSEUDOMONADIC_AXIOMS = ("P1", "P2", "P3", "P4")
PSEUDOMONADIC_DERIVED = tuple(f"P{i}" for i in range(5, 20))
BIMODAL_AXIOMS = ("G1", "G2", "G3", "G4", "G5", "G6", "G7", "G8a", "G8b", "G9a", "G9b")

PairKey = tuple[tuple[int, ...], tuple[int, ...]]


@dataclass(frozen=True, eq=False)
class FamilyCheck:
    family: str
    applicable: bool
    witness: Optional[dict]
    report: Optional[AxiomReport]

    @property
    def ok(self) -> bool:
        return self.applicable and self.report is not None and self.report.ok


@dataclass(frozen=True, eq=False)
class EquivalenceResult:
    family: str
    equal: bool
    ebl_structures: tuple[PairKey, ...]
    family_structures: tuple[PairKey, ...]


def boolean_witness(alg: FiniteBLAlgebra):
    """First element violating a /\\ ~a = 0 or a \\/ ~a = 1, else None."""
    idx = np.arange(alg.n)
    neg = alg.neg
    bad = np.flatnonzero((alg.meet[idx, neg] != alg.bot) | (alg.join[idx, neg] != alg.top))
    return {"a": int(bad[0])} if bad.size else None


def godel_witness(alg: FiniteBLAlgebra):
    """First element violating a * a = a, else None."""
    idx = np.arange(alg.n)
    bad = np.flatnonzero(alg.mult[idx, idx] != idx)
    return {"a": int(bad[0])} if bad.size else None


def derived_forall(alg: FiniteBLAlgebra, exists: np.ndarray) -> np.ndarray:
    """The necessity table ~E~ induced by an exists table."""
    neg = alg.neg
    return neg[exists[neg]]


def _library_report(keys: Sequence[str], alg, forall, exists) -> AxiomReport:
    library = named_library()
    entries = []
    for key in keys:
        ok, witness = check_statement_tables(library[key], alg, forall, exists)
        entries.append(_entry(key, None if ok else witness))
    return AxiomReport(tuple(entries))


def verify_pseudomonadic(
    alg: FiniteBLAlgebra, exists, include_derived: bool = True
) -> AxiomReport:
    """Check P1-P4 (and the derived P5-P19) with forall taken to be ~E~.

    Only meaningful on Boolean carriers; anything else raises
    :class:`NotApplicableError` with the classifier witness.
    """
    witness = boolean_witness(alg)
    if witness is not None:
        raise NotApplicableError(
            f"{alg.name} is not Boolean, witness a={witness['a']}"
        )
    e = as_unary_table(alg, exists, "exists")
    f = derived_forall(alg, e)
    keys = PSEUDOMONADIC_AXIOMS + (PSEUDOMONADIC_DERIVED if include_derived else ())
    return _library_report(keys, alg, f, e)


def verify_bimodal_godel(alg: FiniteBLAlgebra, forall, exists) -> AxiomReport:
    """Check the serial/transitive/euclidean bi-modal axioms on a Goedel carrier."""
    witness = godel_witness(alg)
    if witness is not None:
        raise NotApplicableError(f"{alg.name} is not Goedel, witness a={witness['a']}")
    f = as_unary_table(alg, forall, "forall")
    e = as_unary_table(alg, exists, "exists")
    return _library_report(BIMODAL_AXIOMS, alg, f, e)


def family_check(alg: FiniteBLAlgebra, forall, exists, family: str) -> FamilyCheck:
    """Non-raising family verdict for one candidate operator pair.

    Inapplicable carriers (wrong reduct) come back with the failing
    classifier witness instead of a report.
    """
    if family == "pseudomonadic":
        witness = boolean_witness(alg)
        if witness is not None:
            return FamilyCheck(family, False, witness, None)
        return FamilyCheck(family, True, None, verify_pseudomonadic(alg, exists))
    if family == "godel-kd45":
        witness = godel_witness(alg)
        if witness is not None:
            return FamilyCheck(family, False, witness, None)
        return FamilyCheck(family, True, None, verify_bimodal_godel(alg, forall, exists))
    if family == "monadic":
        f = as_unary_table(alg, forall, "forall")
        e = as_unary_table(alg, exists, "exists")
        keys = ("M1", "M2", "M3", "M4", "M5")
        return FamilyCheck(family, True, None, _library_report(keys, alg, f, e))
    raise ValueError(f"unknown family {family!r}")


# ---------------------------------------------------------------------------
# structure-set enumeration per family


def _ebl_keys(alg: FiniteBLAlgebra, method: str, pair_budget: int, workers: int):
    return tuple(
        s.key() for s in enumerate_ebl(alg, method=method, pair_budget=pair_budget, workers=workers)
    )


def pseudomonadic_structure_set(
    alg: FiniteBLAlgebra, table_budget: int = DEFAULT_TABLE_BUDGET
) -> tuple[PairKey, ...]:
    """All (~E~, E) pairs with E passing P1-P4, by scanning every exists table."""
    if boolean_witness(alg) is not None:
        raise NotApplicableError(f"{alg.name} is not Boolean")
    if alg.n**alg.n > table_budget:
        raise SizeLimitError(
            f"pseudomonadic scan needs {alg.n ** alg.n} tables, budget {table_budget}"
        )
    rows = _kernels.pseudomonadic_scan(alg.meet, alg.join, alg.impl, alg.leq, alg.bot, alg.top)
    keys = []
    for row in rows:
        e = row.astype(np.int64)
        f = derived_forall(alg, e)
        keys.append((tuple(int(v) for v in f), tuple(int(v) for v in e)))
    return tuple(sorted(keys))


def bimodal_structure_set(
    alg: FiniteBLAlgebra, pair_budget: int = DEFAULT_PAIR_BUDGET
) -> tuple[PairKey, ...]:
    """All pairs passing G1-G9, by brute scan over unary table pairs."""
    if godel_witness(alg) is not None:
        raise NotApplicableError(f"{alg.name} is not Goedel")
    if brute_pair_count(alg) > pair_budget:
        raise SizeLimitError(
            f"bi-modal scan needs {brute_pair_count(alg)} pairs, budget {pair_budget}"
        )
    rows = _kernels.godel_pair_scan(
        alg.meet, alg.join, alg.mult, alg.impl, alg.leq, alg.bot, alg.top
    )
    return tuple(
        sorted(
            (tuple(int(v) for v in row[: alg.n]), tuple(int(v) for v in row[alg.n :]))
            for row in rows
        )
    )


def monadic_structure_set(
    alg: FiniteBLAlgebra, pair_budget: int = DEFAULT_PAIR_BUDGET
) -> tuple[PairKey, ...]:
    """All pairs passing M1-M5 (no epistemic axioms assumed), by brute scan."""
    if brute_pair_count(alg) > pair_budget:
        raise SizeLimitError(
            f"monadic scan needs {brute_pair_count(alg)} pairs, budget {pair_budget}"
        )
    rows = _kernels.monadic_pair_scan(
        alg.meet, alg.join, alg.mult, alg.impl, alg.leq, alg.bot, alg.top
    )
    return tuple(
        sorted(
            (tuple(int(v) for v in row[: alg.n]), tuple(int(v) for v in row[alg.n :]))
            for row in rows
        )
    )


def equivalence_boolean(
    alg: FiniteBLAlgebra,
    method: str = "pairs",
    pair_budget: int = DEFAULT_PAIR_BUDGET,
    table_budget: int = DEFAULT_TABLE_BUDGET,
    workers: int = 1,
) -> EquivalenceResult:
    """Compare the epistemic structure set with the pseudomonadic one."""
    family = pseudomonadic_structure_set(alg, table_budget)
    ebl = _ebl_keys(alg, method, pair_budget, workers)
    return EquivalenceResult("pseudomonadic", ebl == family, ebl, family)


def equivalence_godel(
    alg: FiniteBLAlgebra,
    method: str = "pairs",
    pair_budget: int = DEFAULT_PAIR_BUDGET,
    workers: int = 1,
) -> EquivalenceResult:
    """Compare the epistemic structure set with the bi-modal KD45 one."""
    family = bimodal_structure_set(alg, pair_budget)
    ebl = _ebl_keys(alg, method, pair_budget, workers)
    return EquivalenceResult("godel-kd45", ebl == family, ebl, family)


def monadic_subset_check(
    alg: FiniteBLAlgebra,
    method: str = "pairs",
    pair_budget: int = DEFAULT_PAIR_BUDGET,
    workers: int = 1,
) -> EquivalenceResult:
    """Monadic pairs must be a (often strict) subset of the epistemic pairs.

    ``equal`` reports the subset relation here, and ``family_structures``
    carries the monadic set.
    """
    monadic = monadic_structure_set(alg, pair_budget)
    ebl = _ebl_keys(alg, method, pair_budget, workers)
    subset = all(key in set(ebl) for key in monadic)
    return EquivalenceResult("monadic", subset, ebl, monadic)


def forall_filter_equivalence(structure: EpistemicStructure, mask: int):
    """Epistemic filters coincide with forall-closed filters on Boolean carriers.

    Returns (verdict, witness); a witness would be a divergence element and
    never occurs on valid inputs.
    """
    alg = structure.algebra
    if boolean_witness(alg) is not None:
        raise NotApplicableError(f"{alg.name} is not Boolean")
    if not is_implicative_filter(alg, mask):
        raise NotApplicableError(f"mask {mask:#x} is not an implicative filter")
    epi, epi_witness = is_epistemic_filter(structure, mask)
    members = [a for a in range(alg.n) if (mask >> a) & 1]
    closed = True
    closed_witness = None
    for a in members:
        if not (mask >> int(structure.forall[a])) & 1:
            closed = False
            closed_witness = {"a": a}
            break
    if epi == closed:
        return True, None
    return False, (closed_witness if epi else epi_witness)
