"""Compiled inner loops: SA-IS suffix sorting and the PSV/NSV greedy parse.

The recursion of SA-IS lives in Python (depth is logarithmic); each level's
linear passes are numba kernels.
"""

import numpy as np
from numba import njit

_NAIVE_BELOW = 16


@njit(cache=True)
def _classify(s, upper):
    n = s.shape[0]
    ls = np.zeros(n, dtype=np.bool_)
    for i in range(n - 2, -1, -1):
        if s[i] == s[i + 1]:
            ls[i] = ls[i + 1]
        else:
            ls[i] = s[i] < s[i + 1]
    sum_l = np.zeros(upper + 2, dtype=np.int64)
    sum_s = np.zeros(upper + 2, dtype=np.int64)
    for i in range(n):
        if not ls[i]:
            sum_s[s[i]] += 1
        else:
            sum_l[s[i] + 1] += 1
    for i in range(upper + 1):
        sum_s[i] += sum_l[i]
        if i < upper:
            sum_l[i + 1] += sum_s[i]
    return ls, sum_l, sum_s


@njit(cache=True)
def _induce(s, ls, sum_l, sum_s, lms, sa):
    n = s.shape[0]
    sa[:] = -1
    buf = sum_s.copy()
    for d in lms:
        if d == n:
            continue
        sa[buf[s[d]]] = d
        buf[s[d]] += 1
    buf[:] = sum_l
    sa[buf[s[n - 1]]] = n - 1
    buf[s[n - 1]] += 1
    for i in range(n):
        v = sa[i]
        if v >= 1 and not ls[v - 1]:
            sa[buf[s[v - 1]]] = v - 1
            buf[s[v - 1]] += 1
    buf[:] = sum_l
    for i in range(n - 1, -1, -1):
        v = sa[i]
        if v >= 1 and ls[v - 1]:
            buf[s[v - 1] + 1] -= 1
            sa[buf[s[v - 1] + 1]] = v - 1


@njit(cache=True)
def _lms_positions(ls):
    n = ls.shape[0]
    lms_map = np.full(n + 1, -1, dtype=np.int64)
    m = 0
    for i in range(1, n):
        if not ls[i - 1] and ls[i]:
            lms_map[i] = m
            m += 1
    lms = np.empty(m, dtype=np.int64)
    m = 0
    for i in range(1, n):
        if not ls[i - 1] and ls[i]:
            lms[m] = i
            m += 1
    return lms, lms_map


@njit(cache=True)
def _reduce(s, sa, lms, lms_map):
    n = s.shape[0]
    m = lms.shape[0]
    sorted_lms = np.empty(m, dtype=np.int64)
    c = 0
    for v in sa:
        if lms_map[v] != -1:
            sorted_lms[c] = v
            c += 1
    rec_s = np.zeros(m, dtype=np.int64)
    rec_upper = 0
    rec_s[lms_map[sorted_lms[0]]] = 0
    for i in range(1, m):
        left = sorted_lms[i - 1]
        right = sorted_lms[i]
        end_l = lms[lms_map[left] + 1] if lms_map[left] + 1 < m else n
        end_r = lms[lms_map[right] + 1] if lms_map[right] + 1 < m else n
        same = True
        if end_l - left != end_r - right:
            same = False
        else:
            while left < end_l:
                if s[left] != s[right]:
                    break
                left += 1
                right += 1
            if left == n or s[left] != s[right]:
                same = False
        if not same:
            rec_upper += 1
        rec_s[lms_map[sorted_lms[i]]] = rec_upper
    return rec_s, rec_upper


def _sa_naive(s):
    n = len(s)
    items = s.tolist()
    order = sorted(range(n), key=lambda i: items[i:])
    return np.array(order, dtype=np.int64)


def sa_is(s, upper):
    """Suffix array of the int64 array ``s`` with symbols in ``[0, upper]``."""
    n = s.shape[0]
    if n < _NAIVE_BELOW:
        return _sa_naive(s)
    ls, sum_l, sum_s = _classify(s, upper)
    lms, lms_map = _lms_positions(ls)
    sa = np.empty(n, dtype=np.int64)
    _induce(s, ls, sum_l, sum_s, lms, sa)
    if lms.shape[0]:
        rec_s, rec_upper = _reduce(s, sa, lms, lms_map)
        rec_sa = sa_is(rec_s, rec_upper)
        _induce(s, ls, sum_l, sum_s, lms[rec_sa], sa)
    return sa


@njit(cache=True)
def greedy_factor_lengths(s, sa):
    """Greedy LZ77 factor lengths, 0 marking a literal (first occurrence).

    For each factor start only the nearest smaller text positions in suffix
    order can realize the longest previous factor; their extensions are
    compared directly, which costs O(factor length) per factor.
    """
    n = s.shape[0]
    psv = np.full(n, -1, dtype=np.int64)
    nsv = np.full(n, -1, dtype=np.int64)
    stack = np.empty(n, dtype=np.int64)
    top = 0
    for r in range(n):
        p = sa[r]
        while top > 0 and stack[top - 1] > p:
            top -= 1
            nsv[stack[top]] = p
        psv[p] = stack[top - 1] if top > 0 else -1
        stack[top] = p
        top += 1
    out = np.empty(n, dtype=np.int64)
    z = 0
    i = 0
    while i < n:
        best = 0
        for j in (psv[i], nsv[i]):
            if j < 0:
                continue
            k = 0
            while i + k < n and s[j + k] == s[i + k]:
                k += 1
            if k > best:
                best = k
        out[z] = best
        z += 1
        i += best if best > 0 else 1
    return out[:z]
