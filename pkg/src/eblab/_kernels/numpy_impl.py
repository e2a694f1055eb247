"""Pure-numpy kernel backend.

Candidate tables are materialised as int16 matrices in lexicographic order and
narrowed by one axiom at a time; boolean masking preserves order, so the
surviving rows come out exactly as the naive nested-loop scan would emit them.
"""

from __future__ import annotations

import numpy as np


def residuation_witness(mult, impl, leq):
    n = mult.shape[0]
    for a in range(n):
        lhs = leq[mult[a], :]  # (b, c): a*b <= c
        rhs = leq[a, impl]  # (b, c): a <= b -> c
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            return (a, int(bad[0][0]), int(bad[0][1]))
    return None


def _unary_tables(n: int, fix_pos: int | None = None, fix_val: int = 0) -> np.ndarray:
    """All length-n tables over 0..n-1 (optionally with one position pinned),
    one per row, lexicographic."""
    free = [p for p in range(n) if p != fix_pos]
    k = len(free)
    total = n**k
    out = np.empty((total, n), dtype=np.int16)
    if fix_pos is not None:
        out[:, fix_pos] = fix_val
    t = np.arange(total)
    for i, pos in enumerate(free):
        out[:, pos] = (t // (n ** (k - 1 - i))) % n
    return out


def _rows(cand: np.ndarray) -> np.ndarray:
    return np.arange(cand.shape[0])


def _forall_candidates(meet, impl, top, n):
    """Tables passing the forall-only epistemic axioms (unit, E3, E4a)."""
    F = _unary_tables(n, fix_pos=top, fix_val=top)
    # E4a: A(a /\ b) = A a /\ A b
    lhs = F[_rows(F)[:, None, None], meet[None, :, :]]
    rhs = meet[F[:, :, None], F[:, None, :]]
    F = F[(lhs == rhs).all(axis=(1, 2))]
    # E3: A(A a -> b) = A a -> A b
    inner = impl[F[:, :, None], np.arange(n)[None, None, :]]
    lhs = F[_rows(F)[:, None, None], inner]
    rhs = impl[F[:, :, None], F[:, None, :]]
    F = F[(lhs == rhs).all(axis=(1, 2))]
    return F


def _exists_candidates(join, mult, bot, n):
    """Tables passing the exists-only epistemic axioms (zero, E4b, E5)."""
    E = _unary_tables(n, fix_pos=bot, fix_val=bot)
    # E4b: E(a \/ b) = E a \/ E b
    lhs = E[_rows(E)[:, None, None], join[None, :, :]]
    rhs = join[E[:, :, None], E[:, None, :]]
    E = E[(lhs == rhs).all(axis=(1, 2))]
    # E5: E(a * E b) = E a * E b
    inner = mult[np.arange(n)[None, :, None], E[:, None, :]]
    lhs = E[_rows(E)[:, None, None], inner]
    rhs = mult[E[:, :, None], E[:, None, :]]
    E = E[(lhs == rhs).all(axis=(1, 2))]
    return E


def ebl_pair_scan(meet, join, mult, impl, leq, bot, top):
    n = meet.shape[0]
    idx = np.arange(n)
    F = _forall_candidates(meet, impl, top, n)
    E = _exists_candidates(join, mult, bot, n)
    accepted = []
    for f in F:
        f = f.astype(np.int64)
        keep = np.ones(E.shape[0], dtype=bool)
        # E1: A a -> E a = top
        implf = impl[f]  # (a, x) -> A a -> x
        keep &= (implf[idx[None, :], E] == top).all(axis=1)
        # E2: A(a -> A b) = E a -> A b
        lhs2 = f[impl[:, f]]  # (a, b) -> A(a -> A b)
        rhs2 = impl[E[:, :, None], f[None, None, :]]
        keep &= (rhs2 == lhs2[None, :, :]).all(axis=(1, 2))
        # E4: E a -> A E a = top
        fe = f[E]  # (row, a) -> A E a
        keep &= (impl[E, fe] == top).all(axis=1)
        for e in E[keep]:
            accepted.append(np.concatenate([f, e.astype(np.int64)]))
    if not accepted:
        return np.empty((0, 2 * n), dtype=np.int64)
    return np.stack(accepted)


def pseudomonadic_scan(meet, join, impl, leq, bot, top):
    n = meet.shape[0]
    neg = impl[:, bot]
    E = _unary_tables(n, fix_pos=bot, fix_val=bot)  # P1 pinned
    # P2: E(a \/ b) = E a \/ E b, one (a, b) cell at a time to keep memory flat
    for a in range(n):
        for b in range(n):
            keep = E[:, join[a, b]] == join[E[:, a], E[:, b]]
            E = E[keep]
            if not E.size:
                return np.empty((0, n), dtype=np.int64)
    # P3: E(E a /\ b) = E a /\ E b
    for a in range(n):
        for b in range(n):
            lhs = E[_rows(E), meet[E[:, a], b]]
            rhs = meet[E[:, a], E[:, b]]
            E = E[lhs == rhs]
            if not E.size:
                return np.empty((0, n), dtype=np.int64)
    # P4: ~E a <= E ~a
    for a in range(n):
        E = E[leq[neg[E[:, a]], E[:, neg[a]]]]
    return E.astype(np.int64)


def _godel_forall_candidates(mult, top, n):
    F = _unary_tables(n, fix_pos=top, fix_val=top)  # G2
    # G1: A(a * b) = A a * A b
    lhs = F[_rows(F)[:, None, None], mult[None, :, :]]
    rhs = mult[F[:, :, None], F[:, None, :]]
    F = F[(lhs == rhs).all(axis=(1, 2))]
    return F


def godel_pair_scan(meet, join, mult, impl, leq, bot, top):
    n = meet.shape[0]
    idx = np.arange(n)
    F = _godel_forall_candidates(mult, top, n)
    # G8a: A a <= A A a
    F = F[leq[F, F[_rows(F)[:, None], F]].all(axis=1)]
    E = _unary_tables(n, fix_pos=bot, fix_val=bot)  # G5
    # G4: E(a \/ b) = E a \/ E b
    lhs = E[_rows(E)[:, None, None], join[None, :, :]]
    rhs = join[E[:, :, None], E[:, None, :]]
    E = E[(lhs == rhs).all(axis=(1, 2))]
    # G8b: E E a <= E a
    E = E[leq[E[_rows(E)[:, None], E], E].all(axis=1)]

    accepted = []
    for f in F:
        f = f.astype(np.int64)
        keep = np.ones(E.shape[0], dtype=bool)
        # G7: A a <= E a
        keep &= leq[f[None, :], E].all(axis=1)
        # G3: E a -> A b <= A(a -> b)
        fi = f[impl]  # (a, b) -> A(a -> b)
        lhs3 = impl[E[:, :, None], f[None, None, :]]
        keep &= leq[lhs3, fi[None, :, :]].all(axis=(1, 2))
        # G6: E(a -> b) <= A a -> E b
        implf = impl[f]  # (a, x) -> A a -> x
        lhs6 = E[_rows(E)[:, None, None], impl[None, :, :]]
        rhs6 = implf[idx[None, :, None], E[:, None, :]]
        keep &= leq[lhs6, rhs6].all(axis=(1, 2))
        # G9a: E a <= A E a
        keep &= leq[E, f[E]].all(axis=1)
        # G9b: E A a <= A a
        keep &= leq[E[:, f], f[None, :]].all(axis=1)
        for e in E[keep]:
            accepted.append(np.concatenate([f, e.astype(np.int64)]))
    if not accepted:
        return np.empty((0, 2 * n), dtype=np.int64)
    return np.stack(accepted)


def monadic_pair_scan(meet, join, mult, impl, leq, bot, top):
    n = meet.shape[0]
    idx = np.arange(n)
    F = _unary_tables(n)
    # M1: A a -> a = top, i.e. A a <= a
    F = F[leq[F, idx[None, :]].all(axis=1)]
    # M3: A(A a -> b) = A a -> A b
    inner = impl[F[:, :, None], idx[None, None, :]]
    lhs = F[_rows(F)[:, None, None], inner]
    rhs = impl[F[:, :, None], F[:, None, :]]
    F = F[(lhs == rhs).all(axis=(1, 2))]
    E = _unary_tables(n)
    # M5: E(a * a) = E a * E a
    diag = mult[idx, idx]
    E = E[(E[:, diag] == mult[E, E]).all(axis=1)]

    accepted = []
    for f in F:
        f = f.astype(np.int64)
        keep = np.ones(E.shape[0], dtype=bool)
        # M2: A(a -> A b) = E a -> A b
        lhs2 = f[impl[:, f]]
        rhs2 = impl[E[:, :, None], f[None, None, :]]
        keep &= (rhs2 == lhs2[None, :, :]).all(axis=(1, 2))
        # M4: A(E a \/ b) = E a \/ A b
        fj = f[join]  # (x, b) -> A(x \/ b)
        lhs4 = fj[E[:, :, None], idx[None, None, :]]
        rhs4 = join[E[:, :, None], f[None, None, :]]
        keep &= (lhs4 == rhs4).all(axis=(1, 2))
        for e in E[keep]:
            accepted.append(np.concatenate([f, e.astype(np.int64)]))
    if not accepted:
        return np.empty((0, 2 * n), dtype=np.int64)
    return np.stack(accepted)
