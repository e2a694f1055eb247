"""Epistemic operator pairs (forall, exists) on finite BL-algebras.

The verification functions here are the table-level evaluation route: each
axiom is checked by direct numpy sweeps over the operation tables and reports
the first counterexample in lexicographic variable order.  The term-language
module provides an independent second route over the same named axioms; the
test suite cross-validates the two.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import _kernels
from .config import DEFAULT_PAIR_BUDGET, parallel_map
from .core import (
    AxiomReport,
    FiniteBLAlgebra,
    TABLE_DTYPE,
    _entry,
    elements_of,
    is_subalgebra,
    mask_of,
    subalgebras,
)
from .errors import (
    AxiomError,
    EblabError,
    MalformedInputError,
    NotASubalgebraError,
    PreconditionError,
    SizeLimitError,
)


@dataclass(frozen=True, eq=False)
class EpistemicStructure:
    """A validated (forall, exists) pair over a finite BL-algebra.

    ``focal`` is the least element mapped to top by forall; it always exists
    on a finite algebra and is computed once at acceptance time.
    """

    algebra: FiniteBLAlgebra
    forall: np.ndarray
    exists: np.ndarray
    focal: int
    name: str = ""

    def key(self) -> tuple:
        return (tuple(self.forall.tolist()), tuple(self.exists.tolist()))

    def __repr__(self) -> str:
        return (
            f"EpistemicStructure({self.name or '?'} over {self.algebra.name}, "
            f"forall={self.forall.tolist()}, exists={self.exists.tolist()})"
        )


@dataclass(frozen=True, eq=False)
class CRelCompletePair:
    """A subalgebra mask plus an element c satisfying relative completeness."""

    algebra: FiniteBLAlgebra
    subalgebra: int
    c: int


# ---------------------------------------------------------------------------
# table-level axiom checks; each returns None or the first failing witness


def _first2(bad_mask: np.ndarray):
    bad = np.argwhere(bad_mask)
    if bad.size == 0:
        return None
    return {"a": int(bad[0][0]), "b": int(bad[0][1])}


def _first1(bad_mask: np.ndarray):
    bad = np.flatnonzero(bad_mask)
    if bad.size == 0:
        return None
    return {"a": int(bad[0])}


def _chk_ea(alg, f, e):
    return None if f[alg.top] == alg.top else {}


def _chk_ee(alg, f, e):
    return None if e[alg.bot] == alg.bot else {}


def _chk_e1(alg, f, e):
    return _first1(alg.impl[f, e] != alg.top)


def _chk_e2(alg, f, e):
    lhs = f[alg.impl[:, f]]
    rhs = alg.impl[e[:, None], f[None, :]]
    return _first2(lhs != rhs)


def _chk_e3(alg, f, e):
    lhs = f[alg.impl[f, :]]
    rhs = alg.impl[np.ix_(f, f)]
    return _first2(lhs != rhs)


def _chk_e4(alg, f, e):
    return _first1(alg.impl[e, f[e]] != alg.top)


def _chk_e4a(alg, f, e):
    return _first2(f[alg.meet] != alg.meet[np.ix_(f, f)])


def _chk_e4b(alg, f, e):
    return _first2(e[alg.join] != alg.join[np.ix_(e, e)])


def _chk_e5(alg, f, e):
    lhs = e[alg.mult[:, e]]
    rhs = alg.mult[np.ix_(e, e)]
    return _first2(lhs != rhs)


def _chk_e6(alg, f, e):
    return None if f[alg.bot] == alg.bot else {}


def _chk_e7(alg, f, e):
    return None if e[alg.top] == alg.top else {}


def _chk_e8(alg, f, e):
    return _first1(f[f] != f)


def _chk_e9(alg, f, e):
    return _first1(e[f] != f)


def _chk_e10(alg, f, e):
    return _first1(e[e] != e)


def _chk_e11(alg, f, e):
    return _first1(f[e] != e)


def _chk_e12(alg, f, e):
    val = alg.join[np.ix_(e, e)]
    return _first2(e[val] != val)


def _chk_e13(alg, f, e):
    val = alg.mult[np.ix_(e, e)]
    return _first2(e[val] != val)


def _chk_e14(alg, f, e):
    lhs = f[alg.impl[e, :]]
    rhs = alg.impl[e[:, None], f[None, :]]
    return _first2(lhs != rhs)


def _chk_e15(alg, f, e):
    val = alg.impl[np.ix_(e, e)]
    return _first2(e[val] != val)


def _chk_e16(alg, f, e):
    val = alg.meet[np.ix_(e, e)]
    return _first2(e[val] != val)


def _chk_e17(alg, f, e):
    neg = alg.neg
    return _first1(f[neg] != neg[e])


def _chk_e18(alg, f, e):
    idx = np.arange(alg.n)
    return _first1(f[alg.impl[f, idx]] != alg.top)


def _chk_e19(alg, f, e):
    idx = np.arange(alg.n)
    return _first1(f[alg.impl[idx, e]] != alg.top)


def _chk_ma(alg, f, e):
    # monotonicity: a <= b implies forall a <= forall b
    return _first2(alg.leq & ~alg.leq[np.ix_(f, f)])


def _chk_me(alg, f, e):
    return _first2(alg.leq & ~alg.leq[np.ix_(e, e)])


def _chk_m1(alg, f, e):
    idx = np.arange(alg.n)
    return _first1(alg.impl[f, idx] != alg.top)


def _chk_m4(alg, f, e):
    lhs = f[alg.join[e, :]]
    rhs = alg.join[e[:, None], f[None, :]]
    return _first2(lhs != rhs)


def _chk_m5(alg, f, e):
    idx = np.arange(alg.n)
    return _first1(e[alg.mult[idx, idx]] != alg.mult[e, e])


EBL_AXIOMS: tuple[str, ...] = ("EA", "EE", "E1", "E2", "E3", "E4", "E4a", "E4b", "E5")
DERIVED_AXIOMS: tuple[str, ...] = tuple(f"E{i}" for i in range(6, 20)) + ("MA", "ME")
MONADIC_AXIOMS: tuple[str, ...] = ("M1", "M2", "M3", "M4", "M5")

AXIOM_CHECKS: dict[str, Callable] = {
    "EA": _chk_ea,
    "EE": _chk_ee,
    "E1": _chk_e1,
    "E2": _chk_e2,
    "E3": _chk_e3,
    "E4": _chk_e4,
    "E4a": _chk_e4a,
    "E4b": _chk_e4b,
    "E5": _chk_e5,
    "E6": _chk_e6,
    "E7": _chk_e7,
    "E8": _chk_e8,
    "E9": _chk_e9,
    "E10": _chk_e10,
    "E11": _chk_e11,
    "E12": _chk_e12,
    "E13": _chk_e13,
    "E14": _chk_e14,
    "E15": _chk_e15,
    "E16": _chk_e16,
    "E17": _chk_e17,
    "E18": _chk_e18,
    "E19": _chk_e19,
    "MA": _chk_ma,
    "ME": _chk_me,
    "M1": _chk_m1,
    "M2": _chk_e2,
    "M3": _chk_e3,
    "M4": _chk_m4,
    "M5": _chk_m5,
}


def as_unary_table(alg: FiniteBLAlgebra, table, label: str = "table") -> np.ndarray:
    arr = np.asarray(table)
    if arr.ndim != 1 or arr.shape[0] != alg.n:
        raise MalformedInputError(f"{label} must have length {alg.n}, got shape {arr.shape}")
    if not np.issubdtype(arr.dtype, np.integer):
        raise MalformedInputError(f"{label} entries must be integers")
    if arr.size and (arr.min() < 0 or arr.max() >= alg.n):
        raise MalformedInputError(f"{label} has entries outside 0..{alg.n - 1}")
    return arr.astype(TABLE_DTYPE)


def axiom_witness(axiom: str, alg: FiniteBLAlgebra, forall, exists):
    """Evaluate one named axiom on raw tables; None means it holds."""
    f = as_unary_table(alg, forall, "forall")
    e = as_unary_table(alg, exists, "exists")
    return AXIOM_CHECKS[axiom](alg, f, e)


def _report(axioms: Sequence[str], alg, f, e) -> AxiomReport:
    return AxiomReport(tuple(_entry(name, AXIOM_CHECKS[name](alg, f, e)) for name in axioms))


def verify_ebl(alg: FiniteBLAlgebra, forall, exists) -> AxiomReport:
    """Check the defining epistemic axioms, one report entry per axiom."""
    f = as_unary_table(alg, forall, "forall")
    e = as_unary_table(alg, exists, "exists")
    return _report(EBL_AXIOMS, alg, f, e)


def verify_derived(structure: EpistemicStructure) -> AxiomReport:
    """Check the derived laws plus monotonicity; must pass on every structure."""
    return _report(DERIVED_AXIOMS, structure.algebra, structure.forall, structure.exists)


def verify_monadic(structure: EpistemicStructure) -> AxiomReport:
    """Check the stronger monadic axioms, which single out fuzzy-S5 structures."""
    return _report(MONADIC_AXIOMS, structure.algebra, structure.forall, structure.exists)


# ---------------------------------------------------------------------------
# structures


def _compute_focal(alg: FiniteBLAlgebra, f: np.ndarray) -> int:
    members = np.flatnonzero(f == alg.top)
    c = int(members[0])
    for m in members[1:]:
        c = int(alg.meet[c, m])
    if f[c] != alg.top:
        # cannot happen for a structure that passed the meet axiom; a finite
        # algebra always has a focal element
        raise EblabError(f"internal: focal candidate {c} not mapped to top")
    return c


def epistemic_structure(
    alg: FiniteBLAlgebra, forall, exists, name: str = ""
) -> EpistemicStructure:
    """Validate tables and build a structure; raises AxiomError on failure."""
    f = as_unary_table(alg, forall, "forall")
    e = as_unary_table(alg, exists, "exists")
    report = verify_ebl(alg, f, e)
    if not report.ok:
        first = report.failures[0]
        raise AxiomError(
            f"structure {name or '?'} over {alg.name}: {first.axiom} fails "
            f"with witness {first.witness}",
            report,
        )
    f.flags.writeable = False
    e.flags.writeable = False
    return EpistemicStructure(alg, f, e, _compute_focal(alg, f), name)


def identity_structure(alg: FiniteBLAlgebra, name: str = "identity") -> EpistemicStructure:
    idx = np.arange(alg.n, dtype=TABLE_DTYPE)
    return epistemic_structure(alg, idx, idx.copy(), name)


def focal_element(structure: EpistemicStructure) -> int:
    """Least element with forall(a) = top (always present at finite size)."""
    return structure.focal


def image_subalgebra(structure: EpistemicStructure) -> int:
    """The common image of forall and exists, as a subalgebra mask."""
    fset = mask_of(structure.forall.tolist())
    eset = mask_of(structure.exists.tolist())
    if fset != eset:
        raise EblabError("internal: forall and exists images differ on a valid structure")
    if not is_subalgebra(structure.algebra, fset):
        raise EblabError("internal: operator image is not operation-closed")
    return fset


def verify_focal_formula(structure: EpistemicStructure):
    """Check focal = min over a of (forall a -> a) /\\ (a -> exists a)."""
    alg = structure.algebra
    f, e = structure.forall, structure.exists
    idx = np.arange(alg.n)
    vals = alg.meet[alg.impl[f, idx], alg.impl[idx, e]]
    c = structure.focal
    below = np.flatnonzero(~alg.leq[c, vals])
    if below.size:
        return False, {"a": int(below[0])}
    if not np.any(vals == c):
        return False, {"a": int(c)}
    return True, None


# ---------------------------------------------------------------------------
# reconstruction from (subalgebra, c) pairs


def _greatest_member(alg: FiniteBLAlgebra, members: np.ndarray, bound: int):
    sel = members[alg.leq[members, bound]]
    if sel.size == 0:
        return None
    hits = np.flatnonzero(alg.leq[np.ix_(sel, sel)].all(axis=0))
    return int(sel[hits[0]]) if hits.size else None


def _least_member(alg: FiniteBLAlgebra, members: np.ndarray, lower: int):
    sel = members[alg.leq[lower, members]]
    if sel.size == 0:
        return None
    hits = np.flatnonzero(alg.leq[np.ix_(sel, sel)].all(axis=1))
    return int(sel[hits[0]]) if hits.size else None


def check_c_relatively_complete(alg: FiniteBLAlgebra, subalgebra: int, c: int) -> AxiomReport:
    """Check the bound-existence and collapse conditions for a (B, c) pair.

    Bound existence is checked by membership of a greatest / least element in
    the bounded set, not by a mere supremum: B need not be a chain.  The
    collapse condition requires that top is the only member of B above c*c.
    """
    if not is_subalgebra(alg, subalgebra):
        raise NotASubalgebraError(f"mask {subalgebra:#x} is not a subalgebra of {alg.name}")
    if not 0 <= c < alg.n:
        raise MalformedInputError(f"element {c} outside carrier of {alg.name}")
    members = np.array(elements_of(subalgebra), dtype=np.int64)

    max_witness = None
    min_witness = None
    for a in range(alg.n):
        if max_witness is None and _greatest_member(alg, members, int(alg.impl[c, a])) is None:
            max_witness = {"a": a}
        if min_witness is None and _least_member(alg, members, int(alg.mult[c, a])) is None:
            min_witness = {"a": a}

    c2 = int(alg.mult[c, c])
    above = members[alg.leq[c2, members]]
    e2_witness = None
    for x in above.tolist():
        if x != alg.top:
            e2_witness = {"a": int(x)}
            break
    if not np.any(above == alg.top):
        e2_witness = {"a": int(alg.top)}

    return AxiomReport(
        (
            _entry("e1-max", max_witness),
            _entry("e1-min", min_witness),
            _entry("e2", e2_witness),
        )
    )


def c_rel_complete_pair(alg: FiniteBLAlgebra, subalgebra: int, c: int) -> CRelCompletePair:
    report = check_c_relatively_complete(alg, subalgebra, c)
    if not report.ok:
        first = report.failures[0]
        raise PreconditionError(
            f"(B, c) pair fails {first.axiom} with witness {first.witness}"
        )
    return CRelCompletePair(alg, subalgebra, c)


def structure_from_pair(pair: CRelCompletePair, name: str = "") -> EpistemicStructure:
    """Rebuild the operators from a relatively complete pair.

    forall(a) is the greatest member of B below c -> a and exists(a) the least
    member above c * a; the result is validated and must have image B and
    focal element c.
    """
    alg = pair.algebra
    report = check_c_relatively_complete(alg, pair.subalgebra, pair.c)
    if not report.ok:
        raise PreconditionError(f"pair invariants fail: {report.failures[0].axiom}")
    members = np.array(elements_of(pair.subalgebra), dtype=np.int64)
    f = np.empty(alg.n, dtype=TABLE_DTYPE)
    e = np.empty(alg.n, dtype=TABLE_DTYPE)
    for a in range(alg.n):
        f[a] = _greatest_member(alg, members, int(alg.impl[pair.c, a]))
        e[a] = _least_member(alg, members, int(alg.mult[pair.c, a]))
    structure = epistemic_structure(alg, f, e, name)
    if image_subalgebra(structure) != pair.subalgebra:
        raise EblabError("internal: rebuilt structure has wrong image")
    if structure.focal != pair.c:
        raise EblabError("internal: rebuilt structure has wrong focal element")
    return structure


def pair_from_structure(structure: EpistemicStructure) -> CRelCompletePair:
    """Extract (image, focal); round-trips back to the same operator tables."""
    pair = c_rel_complete_pair(
        structure.algebra, image_subalgebra(structure), structure.focal
    )
    rebuilt = structure_from_pair(pair)
    if rebuilt.key() != structure.key():
        raise EblabError("internal: pair does not reproduce the structure tables")
    return pair


# ---------------------------------------------------------------------------
# enumeration


def brute_pair_count(alg: FiniteBLAlgebra) -> int:
    return (alg.n ** alg.n) ** 2


def enumerate_ebl(
    alg: FiniteBLAlgebra,
    method: str = "pairs",
    pair_budget: int = DEFAULT_PAIR_BUDGET,
    workers: int = 1,
) -> list[EpistemicStructure]:
    """All epistemic structures on ``alg``, canonically sorted.

    ``pairs`` walks subalgebras x focal candidates through the reconstruction
    theorem; ``brute`` scans every pair of unary tables (budgeted) and is the
    independent oracle.  ``both`` runs the two and insists they agree.
    """
    if method == "both":
        via_pairs = enumerate_ebl(alg, "pairs", pair_budget, workers)
        via_brute = enumerate_ebl(alg, "brute", pair_budget, workers)
        pk = [s.key() for s in via_pairs]
        bk = [s.key() for s in via_brute]
        if pk != bk:
            only_pairs = [k for k in pk if k not in bk]
            only_brute = [k for k in bk if k not in pk]
            raise EblabError(
                f"enumeration methods disagree on {alg.name}: "
                f"pairs-only={only_pairs} brute-only={only_brute}"
            )
        return via_pairs
    if method == "pairs":
        cells = [(mask, c) for mask in subalgebras(alg) for c in range(alg.n)]

        def run_cell(cell):
            mask, c = cell
            if not check_c_relatively_complete(alg, mask, c).ok:
                return None
            return structure_from_pair(CRelCompletePair(alg, mask, c))

        found = [s for s in parallel_map(run_cell, cells, workers) if s is not None]
    elif method == "brute":
        if brute_pair_count(alg) > pair_budget:
            raise SizeLimitError(
                f"brute scan over {alg.name} needs {brute_pair_count(alg)} pairs, "
                f"budget is {pair_budget}"
            )
        rows = _kernels.ebl_pair_scan(
            alg.meet, alg.join, alg.mult, alg.impl, alg.leq, alg.bot, alg.top
        )
        found = [epistemic_structure(alg, row[: alg.n], row[alg.n :]) for row in rows]
    else:
        raise MalformedInputError(f"unknown enumeration method {method!r}")

    unique: dict[tuple, EpistemicStructure] = {}
    for s in found:
        unique.setdefault(s.key(), s)
    return [unique[k] for k in sorted(unique)]
