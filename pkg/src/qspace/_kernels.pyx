# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; mirrors ``qspace._kernels_py`` exactly."""

from libc.stdint cimport uint64_t, int64_t
from libc.stdlib cimport malloc, free

from qspace import _kernels_py

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_clzll(unsigned long long) nogil

cdef uint64_t MASK64 = 0xFFFFFFFFFFFFFFFFULL


cdef inline int popcount_and(const uint64_t* a, const uint64_t* b, int w) nogil:
    cdef int i, s = 0
    for i in range(w):
        s += __builtin_popcountll(a[i] & b[i])
    return s


cdef inline int popcount(const uint64_t* a, int w) nogil:
    cdef int i, s = 0
    for i in range(w):
        s += __builtin_popcountll(a[i])
    return s


cdef inline void and_into(uint64_t* dst, const uint64_t* a, const uint64_t* b, int w) nogil:
    cdef int i
    for i in range(w):
        dst[i] = a[i] & b[i]


cdef int _words(list masks):
    cdef int bits = 1
    for m in masks:
        if m.bit_length() > bits:
            bits = m.bit_length()
    return (bits + 63) // 64


cdef uint64_t* _pack(list masks, int w) except NULL:
    cdef Py_ssize_t n = len(masks)
    cdef uint64_t* buf = <uint64_t*>malloc(max(n, 1) * w * sizeof(uint64_t))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    cdef int j
    for i in range(n):
        m = masks[i]
        for j in range(w):
            buf[i * w + j] = <uint64_t>((m >> (64 * j)) & MASK64)
    return buf


def gf2_rref(rows):
    """Reduced row-echelon form of GF(2) rows packed as ints (< 2**63)."""
    cdef uint64_t lead[64]
    cdef int present[64]
    cdef int h, g
    cdef uint64_t v, p, bit
    rows = tuple(rows)
    for h in range(64):
        present[h] = 0
    for row in rows:
        if row >= (1 << 63) or row < 0:
            return _kernels_py.gf2_rref(rows)
    for row in rows:
        v = <uint64_t>row
        while v:
            h = 63 - __builtin_clzll(v)
            if present[h]:
                v ^= lead[h]
            else:
                lead[h] = v
                present[h] = 1
                break
    for h in range(63, -1, -1):
        if not present[h]:
            continue
        p = lead[h]
        bit = (<uint64_t>1) << h
        for g in range(64):
            if g != h and present[g] and (lead[g] & bit):
                lead[g] ^= p
    out = []
    for h in range(63, -1, -1):
        if present[h]:
            out.append(lead[h])
    return tuple(out)


cdef bint _leaf_ok(uint64_t* data, int* chosen, int size, int w, int threshold,
                   uint64_t* suffix, uint64_t* pre) nogil:
    cdef int i, p, j
    for j in range(w):
        suffix[size * w + j] = MASK64
    for i in range(size - 1, -1, -1):
        and_into(suffix + i * w, suffix + (i + 1) * w, data + chosen[i] * w, w)
    for j in range(w):
        pre[j] = MASK64
    for p in range(size - 1):
        if popcount_and(pre, suffix + (p + 1) * w, w) < threshold:
            return False
        and_into(pre, pre, data + chosen[p] * w, w)
    return True


def count_simplices(masks, int r, int threshold, int first_lo, int first_hi, bint check_subsets):
    """See ``qspace._kernels_py.count_simplices``."""
    cdef list ms = list(masks)
    cdef int n = len(ms)
    cdef int size = r + 1
    if n < size:
        return 0, 0, 0
    cdef int w = _words(ms)
    cdef uint64_t* data = _pack(ms, w)
    cdef uint64_t* acc = <uint64_t*>malloc((size + 1) * w * sizeof(uint64_t))
    cdef uint64_t* suffix = <uint64_t*>malloc((size + 1) * w * sizeof(uint64_t))
    cdef uint64_t* pre = <uint64_t*>malloc(w * sizeof(uint64_t))
    cdef int* chosen = <int*>malloc(size * sizeof(int))
    cdef int64_t count = 0, visited = 0, pruned = 0
    cdef int depth, c, j, hi
    if first_hi > n - size + 1:
        first_hi = n - size + 1
    try:
        with nogil:
            for j in range(w):
                acc[j] = MASK64
            for c in range(first_lo, first_hi):
                # iterative DFS; acc level d holds AND of chosen[0..d-1]
                chosen[0] = c
                and_into(acc + w, acc, data + c * w, w)
                if check_subsets and popcount(acc + w, w) < threshold:
                    pruned += 1
                    continue
                depth = 1
                chosen[1] = c
                while depth >= 1:
                    chosen[depth] += 1
                    hi = n - (size - 1 - depth)
                    if chosen[depth] >= hi:
                        depth -= 1
                        continue
                    if depth == size - 1:
                        visited += 1
                        if popcount_and(acc + depth * w, data + chosen[depth] * w, w) < threshold:
                            if check_subsets and not _leaf_ok(data, chosen, size, w, threshold, suffix, pre):
                                continue
                            count += 1
                        continue
                    and_into(acc + (depth + 1) * w, acc + depth * w, data + chosen[depth] * w, w)
                    if check_subsets and popcount(acc + (depth + 1) * w, w) < threshold:
                        pruned += 1
                        continue
                    chosen[depth + 1] = chosen[depth]
                    depth += 1
    finally:
        free(data)
        free(acc)
        free(suffix)
        free(pre)
        free(chosen)
    return count, visited, pruned


def all_intersecting(masks, int r, int threshold):
    """True iff every subset of at most r masks has popcount >= threshold."""
    cdef list ms = list(masks)
    cdef int n = len(ms)
    if n == 0 or r <= 0:
        return True
    cdef int w = _words(ms)
    cdef uint64_t* data = _pack(ms, w)
    cdef uint64_t* acc = <uint64_t*>malloc((r + 1) * w * sizeof(uint64_t))
    cdef int* chosen = <int*>malloc((r + 1) * sizeof(int))
    cdef int depth, j
    cdef bint ok = True
    try:
        with nogil:
            for j in range(w):
                acc[j] = MASK64
            depth = 0
            chosen[0] = -1
            while depth >= 0:
                chosen[depth] += 1
                if chosen[depth] >= n:
                    depth -= 1
                    continue
                and_into(acc + (depth + 1) * w, acc + depth * w, data + chosen[depth] * w, w)
                if popcount(acc + (depth + 1) * w, w) < threshold:
                    ok = False
                    break
                if depth + 1 < r:
                    chosen[depth + 1] = chosen[depth]
                    depth += 1
    finally:
        free(data)
        free(acc)
        free(chosen)
    return ok


def adjacency(masks, int threshold):
    """Neighbour bitsets of the graph joining masks that meet in >= threshold points."""
    cdef list ms = list(masks)
    cdef int n = len(ms)
    if n == 0:
        return []
    cdef int w = _words(ms)
    cdef uint64_t* data = _pack(ms, w)
    cdef int i, j
    cdef list adj = [0] * n
    cdef object one = 1  # Python int shift: bitsets exceed 64 bits
    try:
        for i in range(n):
            for j in range(i + 1, n):
                if popcount_and(data + i * w, data + j * w, w) >= threshold:
                    adj[i] |= one << j
                    adj[j] |= one << i
    finally:
        free(data)
    return adj


def count_sequences(masks, int length, int target):
    """Ordered sequences (repetition allowed) whose AND has popcount == target."""
    cdef list ms = list(masks)
    cdef int n = len(ms)
    if n == 0 or length == 0:
        return 0
    cdef int w = _words(ms)
    cdef uint64_t* data = _pack(ms, w)
    cdef uint64_t* acc = <uint64_t*>malloc((length + 1) * w * sizeof(uint64_t))
    cdef int* chosen = <int*>malloc((length + 1) * sizeof(int))
    cdef int depth, j
    cdef int64_t total = 0
    try:
        with nogil:
            for j in range(w):
                acc[j] = MASK64
            depth = 0
            chosen[0] = -1
            while depth >= 0:
                chosen[depth] += 1
                if chosen[depth] >= n:
                    depth -= 1
                    continue
                and_into(acc + (depth + 1) * w, acc + depth * w, data + chosen[depth] * w, w)
                if popcount(acc + (depth + 1) * w, w) < target:
                    continue
                if depth + 1 == length:
                    if popcount(acc + (depth + 1) * w, w) == target:
                        total += 1
                    continue
                chosen[depth + 1] = -1
                depth += 1
    finally:
        free(data)
        free(acc)
        free(chosen)
    return total
