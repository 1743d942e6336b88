"""Hot loops for arc enumeration.

The kernel checks whether two lifts of one arc (given as a letter array) are
forced to cross.  It walks every pair of vertices along the path, finds the
maximal stretches where two lifts run together, and compares on which side
each lift leaves the stretch at both ends.  With `complete` false the last
vertex has no outgoing half-edge yet, and only stretches that are already
decided are used; this is what prunes the enumeration.

numba is used when available unless VEERKIT_NUMBA=0; the pure python version
is the same source.
"""
import os

import numpy as np

USE_NUMBA = os.environ.get('VEERKIT_NUMBA', '1') not in ('0', 'false', 'no')

try:
    if not USE_NUMBA:
        raise ImportError
    from numba import njit
except ImportError:
    USE_NUMBA = False

    def njit(*args, **kw):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


def _cross_scan_py(wa, La, ta, wb, Lb, tb, h0, N, li, m, complete, same, stop_first):
    """Number of lifts of b crossing the base lift of a (a == b when `same`)."""
    count = 0
    for s in range(La + 1):
        for t in range(Lb + 1):
            if same and s == t:
                continue
            # only start at the beginning of a maximal common stretch
            if s > 0 and t > 0 and wa[s - 1] == wb[t - 1]:
                continue
            if s > 0 and t < Lb and wa[s - 1] == -wb[t]:
                continue
            ia = h0 if s == 0 else li[m - wa[s - 1]]
            ib = h0 if t == 0 else li[m - wb[t - 1]]
            if s < La:
                oa = li[m + wa[s]]
            elif complete:
                oa = ta
            else:
                continue
            if t < Lb:
                ob = li[m + wb[t]]
            elif complete:
                ob = tb
            else:
                continue
            par = s < La and t < Lb and wa[s] == wb[t]
            anti = s < La and t > 0 and wa[s] == -wb[t - 1]
            hit = False
            if not par and not anti:
                # lifts meet in a single vertex
                if ib == ia or ib == oa or ob == ia or ob == oa:
                    continue
                ka = (oa - ia) % N
                k1 = (ib - ia) % N
                k2 = (ob - ia) % N
                hit = (k1 < ka) != (k2 < ka)
            elif par:
                s1, t1 = s, t
                while s1 < La and t1 < Lb and wa[s1] == wb[t1]:
                    s1 += 1
                    t1 += 1
                seg_end = li[m - wa[s1 - 1]]
                if s1 < La:
                    xa = li[m + wa[s1]]
                elif complete:
                    xa = ta
                else:
                    continue
                if t1 < Lb:
                    xb = li[m + wb[t1]]
                elif complete:
                    xb = tb
                else:
                    continue
                if ia == ib or xa == xb:
                    continue
                left_start = ((ia - oa) % N) > ((ib - oa) % N)
                left_end = ((xa - seg_end) % N) < ((xb - seg_end) % N)
                hit = left_start != left_end
            else:
                s1, t1 = s, t
                while s1 < La and t1 > 0 and wa[s1] == -wb[t1 - 1]:
                    s1 += 1
                    t1 -= 1
                seg_end = li[m - wa[s1 - 1]]
                if s1 < La:
                    xa = li[m + wa[s1]]
                elif complete:
                    xa = ta
                else:
                    continue
                # read along a, the lift of b comes in through its in-half at
                # t1 and leaves through its out-half at t
                xb = h0 if t1 == 0 else li[m - wb[t1 - 1]]
                if ia == ob or xa == xb:
                    continue
                left_start = ((ia - oa) % N) > ((ob - oa) % N)
                left_end = ((xa - seg_end) % N) < ((xb - seg_end) % N)
                hit = left_start != left_end
            if hit:
                count += 1
                if stop_first:
                    return count
    return count


def _self_crossing_py(w, L, term, h0, N, li, m, complete):
    return cross_scan(w, L, term, w, L, term, h0, N, li, m, complete, True, True) > 0


if USE_NUMBA:
    cross_scan = njit(cache=True)(_cross_scan_py)
else:
    cross_scan = _cross_scan_py


self_crossing_kernel = njit(cache=True)(_self_crossing_py) if USE_NUMBA else _self_crossing_py


_LI = {}


def _li(s):
    li = _LI.get(s)
    if li is None:
        li = np.asarray(s.letter_index, dtype=np.int64) if USE_NUMBA else list(s.letter_index)
        _LI[s] = li
    return li


def _arr(word):
    if USE_NUMBA:
        w = np.zeros(max(len(word), 1), dtype=np.int64)
        w[:len(word)] = word
        return w
    return word


def self_crosses(s, word, term, h0, complete=True):
    w = _arr(word)
    return bool(self_crossing_kernel(w, len(word), term, h0, s.N, _li(s), s.m, complete))


def crossing_count(s, wa, ta, wb, tb, h0):
    return int(cross_scan(_arr(wa), len(wa), ta, _arr(wb), len(wb), tb, h0,
                          s.N, _li(s), s.m, True, wa == wb and ta == tb, False))


def enumerate_words(s, h0, max_len, prune=True, kernel=None):
    """All reduced words of length <= max_len whose prefixes are not already
    forced to self-cross.  Yields tuples in shortlex-by-depth-first order."""
    kern = kernel or self_crossing_kernel
    m = s.m
    N = s.N
    if USE_NUMBA and kernel is None:
        buf = np.zeros(max_len + 1, dtype=np.int64)
    else:
        buf = [0] * (max_len + 1)
    li = _li(s) if kernel is None else list(s.letter_index)
    letters = [x for k in range(1, m + 1) for x in (k, -k)]
    yield ()

    def rec(depth):
        for x in letters:
            if depth and buf[depth - 1] == -x:
                continue
            buf[depth] = x
            if prune and kern(buf, depth + 1, 0, h0, N, li, m, False):
                continue
            yield tuple(int(v) for v in buf[:depth + 1])
            if depth + 1 < max_len:
                yield from rec(depth + 1)
    if max_len > 0:
        yield from rec(0)
