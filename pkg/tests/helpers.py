"""Shared test oracles, deliberately dumber than the library code.

Everything here recomputes results by definition-level brute force (scan all
elements / subsets / tables) so library outputs can be checked against an
independent path.
"""

from __future__ import annotations

from itertools import product

import numpy as np

from eblab.core import FiniteBLAlgebra


def leq_from_meet(meet) -> np.ndarray:
    meet = np.asarray(meet)
    n = meet.shape[0]
    return meet == np.arange(n)[:, None]


def residuum_oracle(alg: FiniteBLAlgebra, a: int, b: int) -> int:
    """max{x : x * a <= b} found by scanning the whole carrier."""
    candidates = [x for x in range(alg.n) if alg.leq[alg.mult[x, a], b]]
    best = candidates[0]
    for x in candidates[1:]:
        if alg.leq[best, x]:
            best = x
    assert all(alg.leq[x, best] for x in candidates), "set has no maximum"
    return best


def subalgebras_oracle(alg: FiniteBLAlgebra) -> list[int]:
    """All closed subsets containing bot and top, by scanning the power set."""
    tables = (alg.meet, alg.join, alg.mult, alg.impl)
    out = []
    for bits in range(1 << alg.n):
        if not (bits >> alg.bot) & 1 or not (bits >> alg.top) & 1:
            continue
        members = [i for i in range(alg.n) if (bits >> i) & 1]
        closed = all(
            (bits >> int(t[x, y])) & 1 for t in tables for x in members for y in members
        )
        if closed:
            out.append(bits)
    return sorted(out)


def filters_oracle(alg: FiniteBLAlgebra) -> list[int]:
    """All modus-ponens-closed subsets containing top, by power-set scan."""
    out = []
    for bits in range(1 << alg.n):
        if not (bits >> alg.top) & 1:
            continue
        members = [i for i in range(alg.n) if (bits >> i) & 1]
        ok = all(
            (bits >> y) & 1
            for x in members
            for y in range(alg.n)
            if (bits >> int(alg.impl[x, y])) & 1
        )
        if ok:
            out.append(bits)
    return sorted(out)


def bijections(n: int):
    from itertools import permutations

    yield from permutations(range(n))


def is_iso_oracle(left: FiniteBLAlgebra, right: FiniteBLAlgebra) -> bool:
    """Try every bijection; feasible up to n ~ 6."""
    if left.n != right.n:
        return False
    tables = list(
        zip(
            (left.meet, left.join, left.mult, left.impl),
            (right.meet, right.join, right.mult, right.impl),
        )
    )
    for perm in bijections(left.n):
        if perm[left.bot] != right.bot or perm[left.top] != right.top:
            continue
        if all(
            perm[int(tl[a, b])] == int(tr[perm[a], perm[b]])
            for tl, tr in tables
            for a in range(left.n)
            for b in range(left.n)
        ):
            return True
    return False


def ebl_pairs_reference(alg: FiniteBLAlgebra) -> list[tuple[tuple, tuple]]:
    """Dead-simple reference enumeration: all table pairs through verify_ebl."""
    from eblab.epistemic import verify_ebl

    accepted = []
    for f in product(range(alg.n), repeat=alg.n):
        for e in product(range(alg.n), repeat=alg.n):
            if verify_ebl(alg, list(f), list(e)).ok:
                accepted.append((f, e))
    return accepted
