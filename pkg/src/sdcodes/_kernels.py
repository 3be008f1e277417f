"""Numba kernels for Gray-code traversal of affine spaces ``start + span(rows)``.

Two layouts: a single uint64 per vector (length <= 64) and ``(k, W)`` word
arrays for longer vectors.  Traversal of the ``2**k`` elements is split into
``2**p`` contiguous Gray-index ranges; every range yields its own histogram
and the totals are summed, so results never depend on the thread count.
"""

from __future__ import annotations

import os

import llvmlite.ir as ir
import numba
import numpy as np
from numba import njit, prange, types
from numba.extending import intrinsic

if "NUMBA_THREADING_LAYER" not in os.environ:
    numba.config.THREADING_LAYER_PRIORITY = ["omp", "workqueue", "tbb"]


@intrinsic
def _popcnt(typingctx, x):
    sig = types.uint64(types.uint64)

    def codegen(context, builder, signature, args):
        return builder.ctpop(args[0])

    return sig, codegen


@intrinsic
def _ctz(typingctx, x):
    sig = types.uint64(types.uint64)

    def codegen(context, builder, signature, args):
        return builder.cttz(args[0], ir.Constant(ir.IntType(1), 0))

    return sig, codegen


@njit(cache=True)
def _gray(i):
    return i ^ (i >> np.uint64(1))


@njit(cache=True)
def _chunk_start_1(rows, start, first):
    w = start
    g = _gray(first)
    j = 0
    while g:
        if g & np.uint64(1):
            w ^= rows[j]
        g >>= np.uint64(1)
        j += 1
    return w


@njit(parallel=True, cache=True)
def histogram_1(rows, start, n, p):
    k = rows.shape[0]
    nchunks = 1 << p
    span = np.uint64(1) << np.uint64(k - p)
    out = np.zeros((nchunks, n + 1), dtype=np.uint64)
    for c in prange(nchunks):
        first = np.uint64(c) * span
        w = _chunk_start_1(rows, start, first)
        h = out[c]
        h[_popcnt(w)] += 1
        for i in range(first + np.uint64(1), first + span):
            w ^= rows[_ctz(i)]
            h[_popcnt(w)] += 1
    return out.sum(axis=0)


@njit(cache=True)
def _wt_m(w):
    s = np.uint64(0)
    for x in w:
        s += _popcnt(x)
    return s


@njit(parallel=True, cache=True)
def histogram_m(rows, start, n, p):
    k = rows.shape[0]
    nw = rows.shape[1]
    nchunks = 1 << p
    span = np.uint64(1) << np.uint64(k - p)
    out = np.zeros((nchunks, n + 1), dtype=np.uint64)
    for c in prange(nchunks):
        first = np.uint64(c) * span
        w = start.copy()
        g = _gray(first)
        j = 0
        while g:
            if g & np.uint64(1):
                for t in range(nw):
                    w[t] ^= rows[j, t]
            g >>= np.uint64(1)
            j += 1
        h = out[c]
        h[_wt_m(w)] += 1
        for i in range(first + np.uint64(1), first + span):
            r = _ctz(i)
            for t in range(nw):
                w[t] ^= rows[r, t]
            h[_wt_m(w)] += 1
    return out.sum(axis=0)


@njit(cache=True)
def first_below_1(rows, start, threshold):
    """Weight of the first nonzero element lighter than ``threshold``, else -1."""
    k = rows.shape[0]
    w = start
    wt = _popcnt(w)
    if wt > 0 and wt < threshold:
        return np.int64(wt)
    total = np.uint64(1) << np.uint64(k)
    for i in range(np.uint64(1), total):
        w ^= rows[_ctz(i)]
        wt = _popcnt(w)
        if wt > 0 and wt < threshold:
            return np.int64(wt)
    return np.int64(-1)


@njit(cache=True)
def first_below_m(rows, start, threshold):
    k = rows.shape[0]
    nw = rows.shape[1]
    w = start.copy()
    wt = _wt_m(w)
    if wt > 0 and wt < threshold:
        return np.int64(wt)
    total = np.uint64(1) << np.uint64(k)
    for i in range(np.uint64(1), total):
        r = _ctz(i)
        for t in range(nw):
            w[t] ^= rows[r, t]
        wt = _wt_m(w)
        if wt > 0 and wt < threshold:
            return np.int64(wt)
    return np.int64(-1)


@njit(cache=True)
def collect_1(rows, start, lo, hi, count):
    """All elements with weight in ``[lo, hi]``; ``count`` must be exact."""
    k = rows.shape[0]
    out = np.empty(count, dtype=np.uint64)
    m = 0
    w = start
    wt = _popcnt(w)
    if wt >= lo and wt <= hi:
        out[m] = w
        m += 1
    total = np.uint64(1) << np.uint64(k)
    for i in range(np.uint64(1), total):
        if m == count:
            break
        w ^= rows[_ctz(i)]
        wt = _popcnt(w)
        if wt >= lo and wt <= hi:
            out[m] = w
            m += 1
    return out


@njit(cache=True)
def collect_m(rows, start, lo, hi, count):
    k = rows.shape[0]
    nw = rows.shape[1]
    out = np.empty((count, nw), dtype=np.uint64)
    m = 0
    w = start.copy()
    wt = _wt_m(w)
    if wt >= lo and wt <= hi:
        out[m] = w
        m += 1
    total = np.uint64(1) << np.uint64(k)
    for i in range(np.uint64(1), total):
        if m == count:
            break
        r = _ctz(i)
        for t in range(nw):
            w[t] ^= rows[r, t]
        wt = _wt_m(w)
        if wt >= lo and wt <= hi:
            out[m] = w
            m += 1
    return out
