"""Implicative and epistemic filters, induced congruences, quotients.

Filters and congruences are the two faces of the same data: ``a == b modulo
F`` iff both implications land in F, and F is recovered as the class of top.
Congruences are additionally enumerable directly as set partitions, which
gives the filter path an independent oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .core import FiniteBLAlgebra, TABLE_DTYPE, bl_algebra, elements_of, mask_of
from .epistemic import EpistemicStructure, epistemic_structure
from .errors import EblabError, MalformedInputError, PreconditionError


@dataclass(frozen=True, eq=False)
class Congruence:
    """An operation-compatible equivalence, stored as least-member map."""

    structure: EpistemicStructure
    class_of: np.ndarray  # element -> least member of its class

    def key(self) -> tuple:
        return tuple(self.class_of.tolist())

    @property
    def classes(self) -> tuple[tuple[int, ...], ...]:
        reps = sorted(set(self.class_of.tolist()))
        return tuple(
            tuple(np.flatnonzero(self.class_of == rep).tolist()) for rep in reps
        )


def _member_flags(alg: FiniteBLAlgebra, mask: int) -> np.ndarray:
    flags = np.zeros(alg.n, dtype=bool)
    for a in elements_of(mask):
        flags[a] = True
    return flags


def closed_under_modus_ponens(alg: FiniteBLAlgebra, mask: int) -> bool:
    flags = _member_flags(alg, mask)
    members = np.flatnonzero(flags)
    if members.size == 0:
        return True
    # x in F and x -> y in F imply y in F
    for x in members:
        ys = np.flatnonzero(flags[alg.impl[x]])
        if not flags[ys].all():
            return False
    return True


def upward_and_mult_closed(alg: FiniteBLAlgebra, mask: int) -> bool:
    flags = _member_flags(alg, mask)
    members = np.flatnonzero(flags)
    if members.size == 0:
        return True
    up = alg.leq[members].any(axis=0)  # everything above some member
    if not flags[up].all():
        return False
    return bool(flags[alg.mult[np.ix_(members, members)]].all())


def is_implicative_filter(alg: FiniteBLAlgebra, mask: int) -> bool:
    """Top-containing, modus-ponens closed subset.

    The equivalent upward-and-fusion-closed characterization is evaluated as
    well; the two agreeing is a theorem, so a mismatch is an internal error.
    """
    if mask & ~((1 << alg.n) - 1):
        raise MalformedInputError(f"mask {mask:#x} outside carrier of size {alg.n}")
    if not (mask >> alg.top) & 1:
        return False
    mp = closed_under_modus_ponens(alg, mask)
    um = upward_and_mult_closed(alg, mask)
    if mp != um:
        raise EblabError(
            f"internal: filter characterizations disagree on mask {mask:#x}"
        )
    return mp


def enumerate_filters(alg: FiniteBLAlgebra) -> list[int]:
    """All implicative filters as bitmasks, in canonical (sorted) order.

    A filter of a finite BL-algebra is the upset of its least element, which
    must be idempotent; conversely every idempotent upset qualifies.
    """
    idx = np.arange(alg.n)
    out = []
    for e in idx[alg.mult[idx, idx] == idx]:
        mask = mask_of(np.flatnonzero(alg.leq[int(e)]).tolist())
        if not is_implicative_filter(alg, mask):
            raise EblabError(f"internal: idempotent upset {mask:#x} not a filter")
        out.append(mask)
    return sorted(set(out))


def is_epistemic_filter(structure: EpistemicStructure, mask: int):
    """Does the filter respect the operators?  (a -> b in F forces both
    forall a -> forall b and exists a -> exists b into F.)

    Returns (verdict, witness): the first failing (a, b) pair, or None.
    """
    alg = structure.algebra
    if not is_implicative_filter(alg, mask):
        raise PreconditionError(f"mask {mask:#x} is not an implicative filter")
    flags = _member_flags(alg, mask)
    f, e = structure.forall, structure.exists
    ok = ~flags[alg.impl] | (
        flags[alg.impl[np.ix_(f, f)]] & flags[alg.impl[np.ix_(e, e)]]
    )
    bad = np.argwhere(~ok)
    if bad.size:
        return False, {"a": int(bad[0][0]), "b": int(bad[0][1])}
    return True, None


def epistemic_filters(structure: EpistemicStructure) -> list[int]:
    return [
        mask
        for mask in enumerate_filters(structure.algebra)
        if is_epistemic_filter(structure, mask)[0]
    ]


# ---------------------------------------------------------------------------
# congruences


def _compatibility_witness(structure: EpistemicStructure, class_of: np.ndarray):
    alg = structure.algebra
    reps = class_of
    for table in (alg.meet, alg.join, alg.mult, alg.impl):
        if not np.array_equal(class_of[table], class_of[table[np.ix_(reps, reps)]]):
            return "binary"
    for table in (structure.forall, structure.exists):
        if not np.array_equal(class_of[table], class_of[table[reps]]):
            return "unary"
    return None


def _as_class_of(alg: FiniteBLAlgebra, class_of) -> np.ndarray:
    arr = np.asarray(class_of, dtype=TABLE_DTYPE)
    if arr.shape != (alg.n,):
        raise MalformedInputError(f"class map must have length {alg.n}")
    # must be idempotent and point at least members
    if not np.array_equal(arr[arr], arr):
        raise MalformedInputError("class map is not an equivalence (not idempotent)")
    for rep in sorted(set(arr.tolist())):
        if int(np.flatnonzero(arr == rep)[0]) != rep:
            raise MalformedInputError("class map representatives must be least members")
    return arr


def congruence_of_filter(structure: EpistemicStructure, mask: int) -> Congruence:
    """The congruence a == b iff a -> b and b -> a both lie in the filter."""
    alg = structure.algebra
    ok, witness = is_epistemic_filter(structure, mask)
    if not ok:
        raise PreconditionError(f"filter is not epistemic, witness {witness}")
    flags = _member_flags(alg, mask)
    related = flags[alg.impl] & flags[alg.impl.T]
    class_of = np.argmax(related, axis=1).astype(TABLE_DTYPE)  # least related member
    if _compatibility_witness(structure, class_of) is not None:
        raise EblabError("internal: filter congruence is not compatible")
    top_class = np.flatnonzero(class_of == class_of[alg.top])
    if mask_of(top_class.tolist()) != mask:
        raise EblabError("internal: filter is not the class of top")
    return Congruence(structure, class_of)


def filter_of_congruence(structure: EpistemicStructure, congruence: Congruence) -> int:
    """The class of top; round-trips with :func:`congruence_of_filter`."""
    class_of = _as_class_of(structure.algebra, congruence.class_of)
    if _compatibility_witness(structure, class_of) is not None:
        raise PreconditionError("relation is not compatible with the operations")
    alg = structure.algebra
    mask = mask_of(np.flatnonzero(class_of == class_of[alg.top]).tolist())
    back = congruence_of_filter(structure, mask)
    if not np.array_equal(back.class_of, class_of):
        raise EblabError("internal: congruence round trip changed the relation")
    return mask


def quotient(structure: EpistemicStructure, mask: int) -> EpistemicStructure:
    """Collapse along the filter congruence; the result is re-validated.

    Classes are indexed by ascending least representative.
    """
    cong = congruence_of_filter(structure, mask)
    alg = structure.algebra
    reps = sorted(set(cong.class_of.tolist()))
    new_index = {rep: i for i, rep in enumerate(reps)}
    proj = np.array([new_index[int(c)] for c in cong.class_of], dtype=TABLE_DTYPE)
    sel = np.array(reps, dtype=np.int64)

    def collapse(table):
        return proj[table[np.ix_(sel, sel)]]

    quotient_alg = bl_algebra(
        f"{alg.name}_mod{mask:x}",
        collapse(alg.meet),
        collapse(alg.join),
        collapse(alg.mult),
        collapse(alg.impl),
    )
    f = proj[structure.forall[sel]]
    e = proj[structure.exists[sel]]
    return epistemic_structure(quotient_alg, f, e, name=f"{structure.name or 'q'}_mod")


# ---------------------------------------------------------------------------
# partition-scan oracle


def _restricted_growth_strings(n: int) -> Iterator[list[int]]:
    a = [0] * n
    while True:
        yield a.copy()
        i = n - 1
        while i > 0 and a[i] == max(a[:i]) + 1:
            i -= 1
        if i == 0:
            return
        a[i] += 1
        for j in range(i + 1, n):
            a[j] = 0


def partitions_as_class_maps(n: int) -> Iterator[np.ndarray]:
    """All set partitions of 0..n-1 as least-member maps (Bell-number scan)."""
    for rgs in _restricted_growth_strings(n):
        first = {}
        class_of = np.empty(n, dtype=TABLE_DTYPE)
        for i, cid in enumerate(rgs):
            first.setdefault(cid, i)
            class_of[i] = first[cid]
        yield class_of


def compatible_congruences(structure: EpistemicStructure) -> list[Congruence]:
    """Every congruence of the structure, found by scanning raw partitions.

    Deliberately independent of the filter machinery so the bijection theorem
    can be checked against it.
    """
    out = []
    for class_of in partitions_as_class_maps(structure.algebra.n):
        if _compatibility_witness(structure, class_of) is None:
            out.append(Congruence(structure, class_of))
    return sorted(out, key=lambda c: c.key())
