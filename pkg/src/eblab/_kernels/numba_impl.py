"""Numba kernel backend: the same scans as ``numpy_impl`` as jitted loops.

Tables arrive as int64 C-contiguous arrays.  Candidate tables are walked with
an in-place odometer (last free position fastest), which reproduces the
lexicographic order of the numpy backend exactly.
"""

from __future__ import annotations

import numpy as np
from numba import njit

_BUF_ROWS = 4096


@njit(cache=True)
def _residuation(mult, impl, leq):
    n = mult.shape[0]
    for a in range(n):
        for b in range(n):
            ab = mult[a, b]
            row = impl[b]
            for c in range(n):
                if leq[ab, c] != leq[a, row[c]]:
                    return (a * n + b) * n + c
    return -1


def residuation_witness(mult, impl, leq):
    code = _residuation(mult, impl, leq)
    if code < 0:
        return None
    n = mult.shape[0]
    a, rest = divmod(code, n * n)
    b, c = divmod(rest, n)
    return (int(a), int(b), int(c))


@njit(cache=True)
def _advance(table, n, skip):
    i = table.shape[0] - 1
    while i >= 0:
        if i == skip:
            i -= 1
            continue
        table[i] += 1
        if table[i] < n:
            return True
        table[i] = 0
        i -= 1
    return False


@njit(cache=True)
def _forall_ok(meet, impl, f):
    n = meet.shape[0]
    for a in range(n):
        fa = f[a]
        for b in range(n):
            if f[meet[a, b]] != meet[fa, f[b]]:  # E4a
                return False
            if f[impl[fa, b]] != impl[fa, f[b]]:  # E3
                return False
    return True


@njit(cache=True)
def _exists_ok(join, mult, e):
    n = join.shape[0]
    for a in range(n):
        ea = e[a]
        for b in range(n):
            if e[join[a, b]] != join[ea, e[b]]:  # E4b
                return False
            if e[mult[a, e[b]]] != mult[ea, e[b]]:  # E5
                return False
    return True


@njit(cache=True)
def _collect(ok_kind, meet, join, mult, impl, pin_pos, pin_val, out):
    n = meet.shape[0]
    t = np.zeros(n, np.int64)
    t[pin_pos] = pin_val
    count = 0
    while True:
        if ok_kind == 0:
            good = _forall_ok(meet, impl, t)
        else:
            good = _exists_ok(join, mult, t)
        if good:
            out[count] = t
            count += 1
        if not _advance(t, n, pin_pos):
            return count


@njit(cache=True)
def _ebl_scan(meet, join, mult, impl, leq, bot, top, out):
    n = meet.shape[0]
    max_tables = n ** (n - 1)
    F = np.empty((max_tables, n), np.int64)
    fc = _collect(0, meet, join, mult, impl, top, top, F)
    E = np.empty((max_tables, n), np.int64)
    ec = _collect(1, meet, join, mult, impl, bot, bot, E)
    count = 0
    for i in range(fc):
        f = F[i]
        for j in range(ec):
            e = E[j]
            ok = True
            for a in range(n):
                if impl[f[a], e[a]] != top:  # E1
                    ok = False
                    break
                if impl[e[a], f[e[a]]] != top:  # E4
                    ok = False
                    break
            if ok:
                for a in range(n):
                    ea = e[a]
                    for b in range(n):
                        fb = f[b]
                        if f[impl[a, fb]] != impl[ea, fb]:  # E2
                            ok = False
                            break
                    if not ok:
                        break
            if ok:
                if count < out.shape[0]:
                    out[count, :n] = f
                    out[count, n:] = e
                count += 1
    return count


@njit(cache=True)
def _pm_scan(meet, join, impl, leq, bot, top, out):
    n = meet.shape[0]
    neg = impl[:, bot].copy()
    e = np.zeros(n, np.int64)
    e[bot] = bot
    count = 0
    while True:
        ok = True
        for a in range(n):
            ea = e[a]
            if not leq[neg[ea], e[neg[a]]]:  # P4
                ok = False
                break
            for b in range(n):
                if e[join[a, b]] != join[ea, e[b]]:  # P2
                    ok = False
                    break
                if e[meet[ea, b]] != meet[ea, e[b]]:  # P3
                    ok = False
                    break
            if not ok:
                break
        if ok:
            if count < out.shape[0]:
                out[count] = e
            count += 1
        if not _advance(e, n, bot):
            return count


@njit(cache=True)
def _godel_forall_ok(mult, leq, f):
    n = mult.shape[0]
    for a in range(n):
        fa = f[a]
        if not leq[fa, f[fa]]:  # G8a
            return False
        for b in range(n):
            if f[mult[a, b]] != mult[fa, f[b]]:  # G1
                return False
    return True


@njit(cache=True)
def _godel_exists_ok(join, leq, e):
    n = join.shape[0]
    for a in range(n):
        ea = e[a]
        if not leq[e[ea], ea]:  # G8b
            return False
        for b in range(n):
            if e[join[a, b]] != join[ea, e[b]]:  # G4
                return False
    return True


@njit(cache=True)
def _godel_scan(meet, join, mult, impl, leq, bot, top, out):
    n = meet.shape[0]
    max_tables = n ** (n - 1)
    F = np.empty((max_tables, n), np.int64)
    fc = 0
    t = np.zeros(n, np.int64)
    t[top] = top
    while True:
        if _godel_forall_ok(mult, leq, t):
            F[fc] = t
            fc += 1
        if not _advance(t, n, top):
            break
    E = np.empty((max_tables, n), np.int64)
    ec = 0
    t = np.zeros(n, np.int64)
    t[bot] = bot
    while True:
        if _godel_exists_ok(join, leq, t):
            E[ec] = t
            ec += 1
        if not _advance(t, n, bot):
            break
    count = 0
    for i in range(fc):
        f = F[i]
        for j in range(ec):
            e = E[j]
            ok = True
            for a in range(n):
                ea = e[a]
                fa = f[a]
                if not leq[fa, ea]:  # G7
                    ok = False
                    break
                if not leq[ea, f[ea]]:  # G9a
                    ok = False
                    break
                if not leq[e[fa], fa]:  # G9b
                    ok = False
                    break
            if ok:
                for a in range(n):
                    ea = e[a]
                    fa = f[a]
                    for b in range(n):
                        if not leq[impl[ea, f[b]], f[impl[a, b]]]:  # G3
                            ok = False
                            break
                        if not leq[e[impl[a, b]], impl[fa, e[b]]]:  # G6
                            ok = False
                            break
                    if not ok:
                        break
            if ok:
                if count < out.shape[0]:
                    out[count, :n] = f
                    out[count, n:] = e
                count += 1
    return count


@njit(cache=True)
def _monadic_forall_ok(impl, leq, f):
    n = impl.shape[0]
    for a in range(n):
        fa = f[a]
        if not leq[fa, a]:  # M1
            return False
        for b in range(n):
            if f[impl[fa, b]] != impl[fa, f[b]]:  # M3
                return False
    return True


@njit(cache=True)
def _monadic_scan(meet, join, mult, impl, leq, bot, top, out):
    n = meet.shape[0]
    max_tables = n**n
    F = np.empty((max_tables, n), np.int64)
    fc = 0
    t = np.zeros(n, np.int64)
    while True:
        if _monadic_forall_ok(impl, leq, t):
            F[fc] = t
            fc += 1
        if not _advance(t, n, -1):
            break
    E = np.empty((max_tables, n), np.int64)
    ec = 0
    t = np.zeros(n, np.int64)
    while True:
        ok = True
        for a in range(n):
            if t[mult[a, a]] != mult[t[a], t[a]]:  # M5
                ok = False
                break
        if ok:
            E[ec] = t
            ec += 1
        if not _advance(t, n, -1):
            break
    count = 0
    for i in range(fc):
        f = F[i]
        for j in range(ec):
            e = E[j]
            ok = True
            for a in range(n):
                ea = e[a]
                for b in range(n):
                    fb = f[b]
                    if f[impl[a, fb]] != impl[ea, fb]:  # M2
                        ok = False
                        break
                    if f[join[ea, b]] != join[ea, f[b]]:  # M4
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                if count < out.shape[0]:
                    out[count, :n] = f
                    out[count, n:] = e
                count += 1
    return count


def _run_pair_scan(jitted, args, n):
    out = np.empty((_BUF_ROWS, 2 * n), dtype=np.int64)
    count = jitted(*args, out)
    if count > out.shape[0]:
        out = np.empty((count, 2 * n), dtype=np.int64)
        count = jitted(*args, out)
    return out[:count].copy()


def ebl_pair_scan(meet, join, mult, impl, leq, bot, top):
    return _run_pair_scan(_ebl_scan, (meet, join, mult, impl, leq, bot, top), meet.shape[0])


def pseudomonadic_scan(meet, join, impl, leq, bot, top):
    n = meet.shape[0]
    out = np.empty((_BUF_ROWS, n), dtype=np.int64)
    count = _pm_scan(meet, join, impl, leq, bot, top, out)
    if count > out.shape[0]:
        out = np.empty((count, n), dtype=np.int64)
        count = _pm_scan(meet, join, impl, leq, bot, top, out)
    return out[:count].copy()


def godel_pair_scan(meet, join, mult, impl, leq, bot, top):
    return _run_pair_scan(_godel_scan, (meet, join, mult, impl, leq, bot, top), meet.shape[0])


def monadic_pair_scan(meet, join, mult, impl, leq, bot, top):
    return _run_pair_scan(_monadic_scan, (meet, join, mult, impl, leq, bot, top), meet.shape[0])
