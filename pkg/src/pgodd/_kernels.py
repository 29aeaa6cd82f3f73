"""Compiled inner loops for the search module."""

from __future__ import annotations

import numba as nb
import numpy as np

_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)
_ONE = np.uint64(1)


@nb.njit(cache=True, inline="always")
def popcount64(x):
    x = x - ((x >> np.uint64(1)) & _M1)
    x = (x & _M2) + ((x >> np.uint64(2)) & _M2)
    x = (x + (x >> np.uint64(4))) & _M4
    return np.int64((x * _H01) >> np.uint64(56))


@nb.njit(cache=True)
def gray_scan(masks, n_free, par0, cnt0, prefix, best, wit):
    """Reflected Gray code over the first n_free line masks.

    par0/cnt0/prefix describe the fixed lines above n_free.  best[c] and
    wit[c] hold the running minimum parity weight over subsets of size c
    and the first subset attaining it.  Returns the number of subsets seen.
    """
    par = par0
    cnt = cnt0
    g = np.uint64(0)
    v = popcount64(par)
    if v < best[cnt]:
        best[cnt] = v
        wit[cnt] = prefix
    total = np.int64(1) << n_free
    for i in range(1, total):
        b = 0
        t = i
        while (t & 1) == 0:
            t >>= 1
            b += 1
        bit = _ONE << np.uint64(b)
        par ^= masks[b]
        g ^= bit
        if g & bit:
            cnt += 1
        else:
            cnt -= 1
        v = popcount64(par)
        if v < best[cnt]:
            best[cnt] = v
            wit[cnt] = g | prefix
    return total


@nb.njit(cache=True, inline="always")
def _toggle_point(point_lines, cnt, p, delta):
    """Add (delta=1) or remove (delta=-1) point p; return change in odd-line count."""
    d = 0
    for j in range(point_lines.shape[1]):
        l = point_lines[p, j]
        cnt[l] += delta
        if cnt[l] & 1:
            d += 1
        else:
            d -= 1
    return d


@nb.njit(cache=True)
def _dominated(xw, members, n_members, m, perms, gw):
    """Some g maps X to a set whose least difference from X is a new point below m."""
    W = xw.shape[0]
    for g in range(perms.shape[0]):
        for w in range(W):
            gw[w] = np.uint64(0)
        for a in range(n_members):
            y = perms[g, members[a]]
            gw[y >> 6] |= _ONE << np.uint64(y & 63)
        for w in range(W):
            diff = xw[w] ^ gw[w]
            if diff:
                low = diff & (~diff + _ONE)
                e = w * 64 + popcount64(low - _ONE)
                if e < m and (gw[w] & low):
                    return True
                break
    return False


@nb.njit(cache=True)
def frame_sweep(point_lines, cand, base_members, depth, perms, stop_value, found, wit):
    """Enumerate base + X for all depth-subsets X of cand (sorted), pruning by perms.

    found[v] / wit[v] record the first set seen with exactly v odd lines.
    Returns (leaves, interior nodes, hit) where hit says stop_value was found.
    """
    N = point_lines.shape[0]
    W = wit.shape[1]
    cnt = np.zeros(N, np.int64)
    xw = np.zeros(W, np.uint64)
    nb_ = base_members.shape[0]
    members = np.empty(nb_ + depth, np.int64)
    odd = 0
    for a in range(nb_):
        p = base_members[a]
        members[a] = p
        odd += _toggle_point(point_lines, cnt, p, 1)
        xw[p >> 6] |= _ONE << np.uint64(p & 63)
    gw = np.zeros(W, np.uint64)
    leaves = 0
    interior = 0
    if depth == 0:
        if not found[odd]:
            found[odd] = True
            wit[odd, :] = xw
        return 1, 0, odd == stop_value
    n = cand.shape[0]
    chosen = np.empty(depth, np.int64)
    active = np.zeros(depth, np.bool_)
    level = 0
    chosen[0] = -1
    while level >= 0:
        if active[level]:
            p = cand[chosen[level]]
            odd += _toggle_point(point_lines, cnt, p, -1)
            xw[p >> 6] ^= _ONE << np.uint64(p & 63)
            active[level] = False
        chosen[level] += 1
        i = chosen[level]
        if i > n - (depth - level):
            level -= 1
            continue
        p = cand[i]
        odd += _toggle_point(point_lines, cnt, p, 1)
        xw[p >> 6] |= _ONE << np.uint64(p & 63)
        members[nb_ + level] = p
        active[level] = True
        if level == depth - 1:
            leaves += 1
            if not found[odd]:
                found[odd] = True
                wit[odd, :] = xw
                if odd == stop_value:
                    return leaves, interior, True
        else:
            interior += 1
            if perms.shape[0] and _dominated(xw, members, nb_ + level + 1, p, perms, gw):
                continue
            level += 1
            chosen[level] = i
            active[level] = False
    return leaves, interior, False


@nb.njit(cache=True)
def _random_members(n_el, size, in_set, members):
    for a in range(n_el):
        in_set[a] = False
    a = 0
    while a < size:
        x = np.random.randint(n_el)
        if not in_set[x]:
            in_set[x] = True
            members[a] = x
            a += 1


@nb.njit(cache=True)
def local_search(rows, size, target, init, seed, max_steps, stall_limit):
    """Swap search over size-subsets of elements minimising |odd count - target|.

    rows[x] lists the dual elements incident with x (lines of a point, or
    points of a line).  Sideways moves are accepted; after stall_limit
    moves without a new best the search restarts from a random set.
    Returns (best members, best objective, steps used).
    """
    np.random.seed(seed)
    n_el, k = rows.shape
    cnt = np.zeros(n_el, np.int64)
    in_set = np.zeros(n_el, np.bool_)
    members = np.empty(size, np.int64)
    mark = np.zeros(n_el, np.int64)
    if init.shape[0] == size:
        for a in range(size):
            members[a] = init[a]
            in_set[init[a]] = True
    else:
        _random_members(n_el, size, in_set, members)
    odd = 0
    for a in range(size):
        odd += _toggle_point(rows, cnt, members[a], 1)
    cur = abs(odd - target)
    best_obj = cur
    best = members.copy()
    since = 0
    stamp = 0
    steps = 0
    while steps < max_steps and best_obj > 0:
        steps += 1
        a = np.random.randint(size)
        p = members[a]
        b = np.random.randint(n_el)
        if in_set[b]:
            continue
        stamp += 1
        for j in range(k):
            mark[rows[p, j]] = stamp
        common = -1
        d = 0
        for j in range(k):
            l = rows[b, j]
            if mark[l] == stamp:
                common = l
            elif cnt[l] & 1:
                d -= 1
            else:
                d += 1
        for j in range(k):
            l = rows[p, j]
            if l == common:
                continue
            if cnt[l] & 1:
                d -= 1
            else:
                d += 1
        new = abs(odd + d - target)
        if new <= cur:
            _toggle_point(rows, cnt, p, -1)
            _toggle_point(rows, cnt, b, 1)
            in_set[p] = False
            in_set[b] = True
            members[a] = b
            odd += d
            cur = new
            if cur < best_obj:
                best_obj = cur
                best[:] = members
                since = 0
                continue
        since += 1
        if since > stall_limit:
            for l in range(n_el):
                cnt[l] = 0
            _random_members(n_el, size, in_set, members)
            odd = 0
            for a2 in range(size):
                odd += _toggle_point(rows, cnt, members[a2], 1)
            cur = abs(odd - target)
            since = 0
    return best, best_obj, steps
