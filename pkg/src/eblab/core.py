"""Finite BL-algebras: representation, constructors, validation.

Elements of an algebra are the integer indices ``0..n-1``; the four binary
operations are dense ``(n, n)`` index tables and everything is exact integer
arithmetic.  A :class:`FiniteBLAlgebra` value exists only after
:func:`verify_bl` has accepted its tables (eager validation), so downstream
code may assume residuation, divisibility and prelinearity without
re-checking.

Chain constructors index elements in ascending order, so index ``k`` of the
n-element Lukasiewicz chain denotes the rational ``k/(n-1)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np

from . import _kernels
from .config import DEFAULT_SIZE_CAP
from .errors import (
    AxiomError,
    InvalidSizeError,
    MalformedInputError,
    NotAChainError,
    SizeLimitError,
)

TABLE_DTYPE = np.int32


# ---------------------------------------------------------------------------
# axiom reports


@dataclass(frozen=True)
class AxiomEntry:
    """Outcome of one named axiom check.

    ``witness`` is present exactly when the axiom fails; it assigns element
    indices to the axiom's variables and replaying it falsifies the axiom.
    """

    axiom: str
    holds: bool
    witness: Optional[dict] = None

    def __post_init__(self):
        if self.holds and self.witness is not None:
            raise ValueError("witness only allowed on failing entries")


@dataclass(frozen=True, eq=False)
class AxiomReport:
    entries: tuple[AxiomEntry, ...]
    classifiers: Mapping[str, bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(entry.holds for entry in self.entries)

    @property
    def failures(self) -> tuple[AxiomEntry, ...]:
        return tuple(entry for entry in self.entries if not entry.holds)

    def entry(self, axiom: str) -> AxiomEntry:
        for item in self.entries:
            if item.axiom == axiom:
                return item
        raise KeyError(axiom)

    def __str__(self) -> str:
        lines = []
        for item in self.entries:
            status = "pass" if item.holds else "fail"
            extra = "" if item.witness is None else f"  witness={item.witness}"
            lines.append(f"{item.axiom:<14} {status}{extra}")
        return "\n".join(lines)


def _entry(axiom: str, witness) -> AxiomEntry:
    if witness is None:
        return AxiomEntry(axiom, True)
    return AxiomEntry(axiom, False, witness)


# ---------------------------------------------------------------------------
# the algebra value


@dataclass(frozen=True, eq=False)
class FiniteBLAlgebra:
    """A validated finite BL-algebra on carrier ``0..n-1``.

    Instances are immutable (tables are read-only arrays) and safe to share
    across threads.  ``leq`` is the partial order derived from ``meet``;
    ``classifiers`` records the equational subfamilies the tables satisfy
    (``chain``, ``idempotent``, ``boolean``, ``involutive``).
    """

    name: str
    n: int
    meet: np.ndarray
    join: np.ndarray
    mult: np.ndarray
    impl: np.ndarray
    bot: int
    top: int
    leq: np.ndarray
    classifiers: Mapping[str, bool]

    def le(self, a: int, b: int) -> bool:
        return bool(self.leq[a, b])

    @property
    def neg(self) -> np.ndarray:
        """The negation table ``a -> bot`` as a length-n vector."""
        return self.impl[:, self.bot]

    @property
    def is_chain(self) -> bool:
        return self.classifiers["chain"]

    def table_key(self) -> tuple:
        return (
            self.n,
            tuple(self.meet.ravel().tolist()),
            tuple(self.join.ravel().tolist()),
            tuple(self.mult.ravel().tolist()),
            tuple(self.impl.ravel().tolist()),
        )

    def ascending(self) -> list[int]:
        """Carrier sorted by the algebra order (requires a chain)."""
        if not self.is_chain:
            raise NotAChainError(f"algebra {self.name!r} is not a chain")
        return sorted(range(self.n), key=lambda a: int(self.leq[a].sum()), reverse=True)

    def __repr__(self) -> str:
        return f"FiniteBLAlgebra({self.name!r}, n={self.n})"


def _freeze(arr: np.ndarray) -> np.ndarray:
    out = np.ascontiguousarray(arr, dtype=TABLE_DTYPE)
    out.flags.writeable = False
    return out


def _as_tables(meet, join, mult, impl) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray, int]:
    tables = []
    n = None
    for label, raw in (("meet", meet), ("join", join), ("mult", mult), ("impl", impl)):
        arr = np.asarray(raw)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise MalformedInputError(f"{label} table must be square, got shape {arr.shape}")
        if n is None:
            n = int(arr.shape[0])
            if n < 1:
                raise MalformedInputError("carrier must be nonempty")
        elif arr.shape[0] != n:
            raise MalformedInputError(f"{label} table size {arr.shape[0]} != {n}")
        if not np.issubdtype(arr.dtype, np.integer):
            raise MalformedInputError(f"{label} table entries must be integers")
        if arr.size and (arr.min() < 0 or arr.max() >= n):
            bad = np.argwhere((arr < 0) | (arr >= n))[0]
            raise MalformedInputError(
                f"{label}[{bad[0]},{bad[1]}] = {int(arr[bad[0], bad[1]])} out of range 0..{n - 1}"
            )
        tables.append(arr.astype(TABLE_DTYPE))
    return tables[0], tables[1], tables[2], tables[3], n


def _first_mismatch2(lhs: np.ndarray, rhs: np.ndarray, names=("a", "b")):
    bad = np.argwhere(lhs != rhs)
    if bad.size == 0:
        return None
    return {names[0]: int(bad[0][0]), names[1]: int(bad[0][1])}


def _assoc_witness(op: np.ndarray):
    # (a op b) op c == a op (b op c), scanning a outermost keeps the first
    # counterexample lexicographic in (a, b, c)
    n = op.shape[0]
    for a in range(n):
        lhs = op[op[a], :]
        rhs = op[a, op]
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            return {"a": a, "b": int(bad[0][0]), "c": int(bad[0][1])}
    return None


def _bounds(leq: np.ndarray):
    """Infer (bot, top) from the derived order; None where absent."""
    bots = np.flatnonzero(leq.all(axis=1))
    tops = np.flatnonzero(leq.all(axis=0))
    bot = int(bots[0]) if bots.size == 1 else None
    top = int(tops[0]) if tops.size == 1 else None
    return bot, top


def _minimal_pair(leq: np.ndarray):
    # witness for a missing least element: two incomparable minimal elements
    n = leq.shape[0]
    minimal = [a for a in range(n) if not any(leq[b, a] and b != a for b in range(n))]
    for i, a in enumerate(minimal):
        for b in minimal[i + 1 :]:
            if not leq[a, b] and not leq[b, a]:
                return {"a": a, "b": b}
    return {"a": 0, "b": 0}


def verify_bl(meet, join, mult, impl) -> AxiomReport:
    """Check raw operation tables against the BL-algebra axioms.

    The report covers the bounded-lattice laws, the commutative monoid laws
    for fusion, residuation, divisibility, prelinearity, the order law
    ``a <= b iff a -> b = top``, and the derived currying and
    implication/meet distribution identities.  Every failing entry carries the
    first counterexample in lexicographic variable order.  Checks that
    presuppose earlier structure (the monoid unit needs a top, residuation
    needs the order) are omitted once a prerequisite stage has failed.
    Tables that are not square integer matrices with in-range entries raise
    :class:`MalformedInputError` instead of producing a report.
    """
    meet, join, mult, impl, n = _as_tables(meet, join, mult, impl)
    idx = np.arange(n)
    left = np.broadcast_to(idx[:, None], (n, n))
    entries = [
        _entry("meet-comm", _first_mismatch2(meet, meet.T)),
        _entry("join-comm", _first_mismatch2(join, join.T)),
        _entry("meet-assoc", _assoc_witness(meet)),
        _entry("join-assoc", _assoc_witness(join)),
        _entry("absorb-meet", _first_mismatch2(meet[idx[:, None], join], left)),
        _entry("absorb-join", _first_mismatch2(join[idx[:, None], meet], left)),
    ]
    if not all(e.holds for e in entries):
        return AxiomReport(tuple(entries))

    leq = meet == idx[:, None]  # a <= b  iff  meet(a, b) = a
    bot, top = _bounds(leq)
    entries.append(_entry("bot-least", None if bot is not None else _minimal_pair(leq)))
    entries.append(_entry("top-greatest", None if top is not None else _minimal_pair(leq.T)))
    if bot is None or top is None:
        return AxiomReport(tuple(entries))

    entries.append(_entry("mult-comm", _first_mismatch2(mult, mult.T)))
    entries.append(_entry("mult-assoc", _assoc_witness(mult)))
    unit_bad = np.flatnonzero(mult[top] != idx)
    entries.append(_entry("mult-unit", None if unit_bad.size == 0 else {"a": int(unit_bad[0])}))

    res = _kernels.residuation_witness(mult, impl, leq)
    entries.append(_entry("residuation", None if res is None else {"a": res[0], "b": res[1], "c": res[2]}))
    entries.append(_entry("divisibility", _first_mismatch2(meet, mult[idx[:, None], impl])))
    prel = join[impl, impl.T]
    bad = np.argwhere(prel != top)
    entries.append(_entry("prelinearity", None if bad.size == 0 else {"a": int(bad[0][0]), "b": int(bad[0][1])}))
    entries.append(_entry("order-law", _first_mismatch2(leq, impl == top)))

    curry = None
    for a in range(n):
        lhs = impl[a, impl]  # (b, c) -> a -> (b -> c)
        rhs = impl[mult[a], :]  # (b, c) -> (a * b) -> c
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            curry = {"a": a, "b": int(bad[0][0]), "c": int(bad[0][1])}
            break
    entries.append(_entry("currying", curry))

    dist = None
    for a in range(n):
        lhs = impl[a, meet]  # (b, c) -> a -> (b /\ c)
        rhs = meet[impl[a][:, None], impl[a][None, :]]
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            dist = {"a": a, "b": int(bad[0][0]), "c": int(bad[0][1])}
            break
    entries.append(_entry("impl-meet-dist", dist))

    report = AxiomReport(tuple(entries))
    if not report.ok:
        return report

    neg = impl[:, bot]
    classifiers = {
        "chain": bool(np.all((join == idx[:, None]) | (join == idx[None, :]))),
        "idempotent": bool(np.all(mult[idx, idx] == idx)),
        "boolean": bool(np.all(meet[idx, neg] == bot) and np.all(join[idx, neg] == top)),
        "involutive": bool(np.all(neg[neg] == idx)),
    }
    return AxiomReport(tuple(entries), classifiers)


def bl_algebra(name: str, meet, join, mult, impl) -> FiniteBLAlgebra:
    """Validate raw tables and wrap them as an immutable algebra value.

    ``bot`` and ``top`` are inferred from the derived order and re-checked by
    the validation itself; a failing report raises :class:`AxiomError`.
    """
    report = verify_bl(meet, join, mult, impl)
    if not report.ok:
        first = report.failures[0]
        raise AxiomError(f"{name}: {first.axiom} fails with witness {first.witness}", report)
    meet, join, mult, impl, n = _as_tables(meet, join, mult, impl)
    leq = meet == np.arange(n)[:, None]
    bot, top = _bounds(leq)
    leq = np.ascontiguousarray(leq)
    leq.flags.writeable = False
    return FiniteBLAlgebra(
        name=name,
        n=n,
        meet=_freeze(meet),
        join=_freeze(join),
        mult=_freeze(mult),
        impl=_freeze(impl),
        bot=bot,
        top=top,
        leq=leq,
        classifiers=report.classifiers,
    )


# ---------------------------------------------------------------------------
# constructors


def mv_chain(n: int) -> FiniteBLAlgebra:
    """The n-element Lukasiewicz chain (truncated addition, index k ~ k/(n-1))."""
    if n < 2:
        raise InvalidSizeError(f"mv chain needs n >= 2, got {n}")
    a = np.arange(n)[:, None]
    b = np.arange(n)[None, :]
    meet = np.minimum(a, b)
    join = np.maximum(a, b)
    mult = np.maximum(0, a + b - (n - 1))
    impl = np.minimum(n - 1, n - 1 - a + b)
    return bl_algebra(f"mv{n}", meet, join, mult, impl)


def godel_chain(n: int) -> FiniteBLAlgebra:
    """The n-element Goedel chain: fusion is min, implication is top-or-b."""
    if n < 2:
        raise InvalidSizeError(f"godel chain needs n >= 2, got {n}")
    a = np.arange(n)[:, None]
    b = np.arange(n)[None, :]
    meet = np.minimum(a, b)
    join = np.maximum(a, b)
    impl = np.where(a <= b, n - 1, b)
    return bl_algebra(f"godel{n}", meet, join, meet, impl)


def boolean_algebra(k: int, size_cap: int = DEFAULT_SIZE_CAP) -> FiniteBLAlgebra:
    """The Boolean algebra with k atoms; elements are the bitmasks 0..2^k-1."""
    if k < 1:
        raise InvalidSizeError(f"boolean algebra needs k >= 1, got {k}")
    n = 1 << k
    if n > size_cap:
        raise SizeLimitError(f"boolean algebra 2^{k} = {n} exceeds cap {size_cap}")
    a = np.arange(n)[:, None]
    b = np.arange(n)[None, :]
    meet = a & b
    join = a | b
    impl = ((n - 1) ^ a) | b
    return bl_algebra(f"bool{k}", meet, join, meet, impl)


def direct_product(
    left: FiniteBLAlgebra, right: FiniteBLAlgebra, size_cap: int = DEFAULT_SIZE_CAP
) -> FiniteBLAlgebra:
    """Componentwise product; pair (i, j) is encoded as ``i * right.n + j``."""
    n = left.n * right.n
    if n > size_cap:
        raise SizeLimitError(f"product size {n} exceeds cap {size_cap}")
    idx = np.arange(n)
    ai, aj = idx[:, None] // right.n, idx[:, None] % right.n
    bi, bj = idx[None, :] // right.n, idx[None, :] % right.n

    def pointwise(op_l, op_r):
        return op_l[ai, bi].astype(np.int64) * right.n + op_r[aj, bj]

    return bl_algebra(
        f"prod_{left.name}_{right.name}",
        pointwise(left.meet, right.meet),
        pointwise(left.join, right.join),
        pointwise(left.mult, right.mult),
        pointwise(left.impl, right.impl),
    )


def ordinal_sum(
    components: Sequence[FiniteBLAlgebra], size_cap: int = DEFAULT_SIZE_CAP
) -> FiniteBLAlgebra:
    """Stack BL-chains so that all component tops are identified.

    The first component contributes the bottom; component-local bottoms stay
    distinct elements.  Fusion of elements from different components is the
    lower one, implication upward is top and downward is the lower element.
    """
    if not components:
        raise InvalidSizeError("ordinal sum needs at least one component")
    for comp in components:
        if not comp.is_chain:
            raise NotAChainError(f"ordinal sum component {comp.name!r} is not a chain")
    n = sum(comp.n - 1 for comp in components) + 1
    if n > size_cap:
        raise SizeLimitError(f"ordinal sum size {n} exceeds cap {size_cap}")

    # position -> (component index, local element); top is the final position
    layout: list[tuple[int, int]] = []
    for ci, comp in enumerate(components):
        order = comp.ascending()
        layout.extend((ci, local) for local in order[:-1])
    top = n - 1

    local_pos: list[dict[int, int]] = [dict() for _ in components]
    for pos, (ci, local) in enumerate(layout):
        local_pos[ci][local] = pos
    for ci, comp in enumerate(components):
        local_pos[ci][comp.top] = top

    meet = np.empty((n, n), dtype=TABLE_DTYPE)
    join = np.empty((n, n), dtype=TABLE_DTYPE)
    mult = np.empty((n, n), dtype=TABLE_DTYPE)
    impl = np.empty((n, n), dtype=TABLE_DTYPE)
    for p in range(n):
        for q in range(n):
            meet[p, q] = min(p, q)
            join[p, q] = max(p, q)
            if p == top:
                mult[p, q], impl[p, q] = q, q
            elif q == top:
                mult[p, q], impl[p, q] = p, top
            else:
                ci, a = layout[p]
                cj, b = layout[q]
                if ci == cj:
                    comp = components[ci]
                    mult[p, q] = local_pos[ci][int(comp.mult[a, b])]
                    impl[p, q] = local_pos[ci][int(comp.impl[a, b])]
                elif ci < cj:
                    mult[p, q], impl[p, q] = p, top
                else:
                    mult[p, q], impl[p, q] = q, q

    name = "osum_" + "_".join(comp.name for comp in components)
    return bl_algebra(name, meet, join, mult, impl)


# ---------------------------------------------------------------------------
# subalgebras (subsets as int bitmasks, bit i = element i)


def mask_of(elements: Iterable[int]) -> int:
    mask = 0
    for a in elements:
        mask |= 1 << int(a)
    return mask


def elements_of(mask: int) -> tuple[int, ...]:
    out = []
    a = 0
    while mask:
        if mask & 1:
            out.append(a)
        mask >>= 1
        a += 1
    return tuple(out)


def close_subset(alg: FiniteBLAlgebra, mask: int) -> int:
    """Smallest operation-closed superset of ``mask`` containing bot and top."""
    mask |= (1 << alg.bot) | (1 << alg.top)
    tables = (alg.meet, alg.join, alg.mult, alg.impl)
    while True:
        members = elements_of(mask)
        new = mask
        for table in tables:
            sub = table[np.ix_(members, members)]
            for v in np.unique(sub):
                new |= 1 << int(v)
        if new == mask:
            return mask
        mask = new


def is_subalgebra(alg: FiniteBLAlgebra, mask: int) -> bool:
    if mask & ~((1 << alg.n) - 1):
        return False
    if not (mask >> alg.bot) & 1 or not (mask >> alg.top) & 1:
        return False
    return close_subset(alg, mask) == mask


def subalgebras(alg: FiniteBLAlgebra) -> list[int]:
    """All operation-closed subsets containing {bot, top}, sorted by bitmask.

    Enumerated by closure search: starting from the closure of {bot, top},
    repeatedly extend each closed set by one absent element and close again.
    Output-polynomial, so it stays cheap even on function algebras where the
    power set is out of reach.
    """
    seed = close_subset(alg, 0)
    seen = {seed}
    frontier = [seed]
    while frontier:
        mask = frontier.pop()
        for a in range(alg.n):
            if (mask >> a) & 1:
                continue
            bigger = close_subset(alg, mask | (1 << a))
            if bigger not in seen:
                seen.add(bigger)
                frontier.append(bigger)
    return sorted(seen)


# ---------------------------------------------------------------------------
# isomorphism search


def is_isomorphic(left: FiniteBLAlgebra, right: FiniteBLAlgebra) -> Optional[np.ndarray]:
    """A table- and constant-preserving bijection left -> right, or None.

    Backtracking over images, pruned by local invariants (row multisets of
    each operation table), picking the lexicographically first bijection.
    """
    if left.n != right.n:
        return None

    def profile(alg, a):
        rows = []
        for table in (alg.meet, alg.join, alg.mult, alg.impl):
            rows.append(tuple(sorted(np.bincount(table[a], minlength=alg.n).tolist())))
        return (int(a == alg.bot), int(a == alg.top), tuple(rows))

    left_prof = [profile(left, a) for a in range(left.n)]
    right_prof = [profile(right, a) for a in range(right.n)]
    n = left.n
    image = [-1] * n
    used = [False] * n
    tables = list(zip((left.meet, left.join, left.mult, left.impl),
                      (right.meet, right.join, right.mult, right.impl)))

    def consistent(a, b):
        for tl, tr in tables:
            for x in range(n):
                if image[x] < 0:
                    continue
                v = image[int(tl[a, x])]
                if v >= 0 and tr[b, image[x]] != v:
                    return False
                v = image[int(tl[x, a])]
                if v >= 0 and tr[image[x], b] != v:
                    return False
        return True

    def extend(a):
        if a == n:
            return True
        for b in range(n):
            if used[b] or left_prof[a] != right_prof[b]:
                continue
            if (a == left.bot) != (b == right.bot) or (a == left.top) != (b == right.top):
                continue
            image[a] = b
            if consistent(a, b):
                used[b] = True
                if extend(a + 1):
                    return True
                used[b] = False
            image[a] = -1
        return False

    if extend(0):
        return np.array(image, dtype=TABLE_DTYPE)
    return None
