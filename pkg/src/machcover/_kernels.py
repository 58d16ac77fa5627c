"""Integer hot loops: lex-ordered branch and bound, and the covering DP fill.

Both kernels run on integer data only (callers scale rationals to a common
denominator first), so the compiled and fallback paths give bit-identical
answers.  Set ``MACHCOVER_DISABLE_NUMBA=1`` to force the fallback path.

The branch-and-bound fallback executes the same source uncompiled on Python
ints, which never overflow; the compiled path is only taken when every
intermediate fits comfortably in int64.
"""

import os

import numpy as np

try:
    from numba import njit

    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    NUMBA_AVAILABLE = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]):
            return args[0]
        return lambda f: f


def numba_enabled() -> bool:
    flag = os.environ.get("MACHCOVER_DISABLE_NUMBA", "").strip().lower()
    return NUMBA_AVAILABLE and flag not in ("1", "true", "yes", "on")


INT64_SAFE = 1 << 62


# ---------------------------------------------------------------------------
# branch and bound over job -> machine-id sequences, in lexicographic order
# ---------------------------------------------------------------------------

def _bb_search(sizes, bids, suffix, threshold, improve, assign, best_assign, works):
    """Depth-first search over assignments in lexicographic order.

    ``sizes[k]`` are integer job sizes (largest first), ``bids[i]`` integer
    bids indexed by machine id, ``suffix[k]`` the total size of jobs k..n-1.
    A leaf is accepted when its cover (min work*bid) is >= ``threshold``.
    With ``improve`` the threshold is raised past every accepted leaf, so the
    last accepted leaf is the lex-first optimum above the start threshold;
    without it the search stops at the first accepted leaf.

    Returns (found, best cover accepted, leaves evaluated).
    """
    n = len(sizes)
    m = len(bids)
    found = False
    best_cover = 0
    leaves = 0
    for i in range(m):
        works[i] = 0
    k = 0
    assign[0] = -1
    while k >= 0:
        i = assign[k]
        if i >= 0:
            works[i] -= sizes[k]
        i += 1
        while i < m:
            # an equal-bid, equal-work machine with a smaller id dominates
            dup = False
            for t in range(i):
                if bids[t] == bids[i] and works[t] == works[i]:
                    dup = True
                    break
            if not dup:
                works[i] += sizes[k]
                need = 0
                short = 0
                for t in range(m):
                    req = (threshold + bids[t] - 1) // bids[t] - works[t]
                    if req > 0:
                        need += req
                        short += 1
                if need <= suffix[k + 1] and short <= n - k - 1:
                    break
                works[i] -= sizes[k]
            i += 1
        if i == m:
            assign[k] = -1
            k -= 1
            continue
        assign[k] = i
        if k == n - 1:
            leaves += 1
            cover = works[0] * bids[0]
            for t in range(1, m):
                c = works[t] * bids[t]
                if c < cover:
                    cover = c
            if cover >= threshold:
                found = True
                best_cover = cover
                for t in range(n):
                    best_assign[t] = assign[t]
                if not improve:
                    return found, best_cover, leaves
                threshold = cover + 1
            continue
        k += 1
        assign[k] = -1
    return found, best_cover, leaves


_bb_search_jit = njit(cache=True)(_bb_search) if NUMBA_AVAILABLE else _bb_search


def bb_search(sizes, bids, threshold, improve, force_python=False):
    """Run the lexicographic branch and bound; picks the compiled path when safe.

    Returns (found, cover, assignment by machine id per job, leaves).
    """
    n = len(sizes)
    m = len(bids)
    suffix = [0] * (n + 1)
    for k in range(n - 1, -1, -1):
        suffix[k] = suffix[k + 1] + sizes[k]
    bound = suffix[0] * max(bids) + max(bids) + threshold
    if numba_enabled() and not force_python and bound < INT64_SAFE:
        assign = np.full(n, -1, dtype=np.int64)
        best = np.full(n, -1, dtype=np.int64)
        works = np.zeros(m, dtype=np.int64)
        found, cover, leaves = _bb_search_jit(
            np.asarray(sizes, dtype=np.int64),
            np.asarray(bids, dtype=np.int64),
            np.asarray(suffix, dtype=np.int64),
            np.int64(threshold),
            bool(improve),
            assign,
            best,
            works,
        )
        return bool(found), int(cover), [int(x) for x in best], int(leaves)
    assign = [-1] * n
    best = [-1] * n
    works = [0] * m
    found, cover, leaves = _bb_search(
        [int(x) for x in sizes], [int(x) for x in bids], suffix, int(threshold), bool(improve), assign, best, works
    )
    return found, cover, best, leaves


# ---------------------------------------------------------------------------
# covering DP: T[k, a] = largest machine (1-based) job k can go to so that
# jobs 1..k reach rounded load vector a (or better); 0 = unreachable
# ---------------------------------------------------------------------------

@njit(cache=True)
def _mark_axis(prev, cur, st, side, cells, step, clamp, mark):
    """cur[x] = mark wherever prev[x - ell on axis i, clamped at 0] > 0.

    Works on slices: slice-relative indices are provably non-negative, which
    lets the inner loops vectorize.
    """
    block = st * side
    top = step if step < side else side
    for base in range(0, cells, block):
        if step < side:
            shift = step * st
            dst = cur[base + shift : base + block]
            src = prev[base : base + block - shift]
            for r in range(dst.shape[0]):
                dst[r] = mark if src[r] > 0 else dst[r]
        if not clamp:
            continue
        # rows with a < step all fall back to the a = 0 row of this block
        if st == 1:
            if prev[base] > 0:
                cur[base : base + top] = mark
            continue
        src = prev[base : base + st]
        for a in range(top):
            dst = cur[base + a * st : base + (a + 1) * st]
            for r in range(st):
                dst[r] = mark if src[r] > 0 else dst[r]


@njit(cache=True)
def _dp_fill_jit(loads, S, clamp):
    n, m = loads.shape
    side = S + 1
    cells = side ** m
    table = np.zeros((n + 1, cells), dtype=np.int8)
    table[0, 0] = m
    strides = np.empty(m, dtype=np.int64)
    s = 1
    for i in range(m - 1, -1, -1):
        strides[i] = s
        s *= side
    target = cells - 1
    for k in range(1, n + 1):
        # ascending machine order, so the largest feasible index is kept
        for i in range(m):
            _mark_axis(table[k - 1], table[k], strides[i], side, cells, loads[k - 1, i], clamp, np.int8(i + 1))
        if table[k, target] > 0:
            return table[: k + 1], k
    return table, -1


def _dp_fill_numpy(loads, S, clamp):
    n, m = loads.shape
    side = S + 1
    shape = (side,) * m
    table = np.zeros((n + 1,) + shape, dtype=np.int8)
    table[(0,) + (0,) * m] = m
    grid = np.arange(side)
    full = (S,) * m
    for k in range(1, n + 1):
        prev = table[k - 1]
        cur = table[k]
        for i in range(m):
            step = int(loads[k - 1, i])
            idx = np.maximum(grid - step, 0)
            pred = np.take(prev, idx, axis=i)
            ok = pred > 0
            if not clamp:
                valid = (grid >= step).reshape([-1 if ax == i else 1 for ax in range(m)])
                ok &= valid
            cur[ok] = i + 1
        if cur[full] > 0:
            return table[: k + 1].reshape(k + 1, -1), k
    return table.reshape(n + 1, -1), -1


def dp_fill(loads, S, clamp=True, force_numpy=False):
    """Fill DP tables until the all-S vector is reachable.

    ``loads`` is an (n, m) integer array of rounded loads.  Returns the
    flattened tables (C order over the load vector) for k = 0..k* and the
    minimal k* reaching (S, ..., S), or -1.
    """
    loads = np.ascontiguousarray(loads, dtype=np.int64)
    if numba_enabled() and not force_numpy:
        table, k = _dp_fill_jit(loads, int(S), bool(clamp))
    else:
        table, k = _dp_fill_numpy(loads, int(S), bool(clamp))
    return table, int(k)
