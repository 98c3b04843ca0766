"""Pure-Python hot kernels.

Reference implementation for the compiled ``_kernels`` extension; both must
return identical results.  Subspaces enter these kernels as *point masks*:
integers whose bit ``i`` is set iff vector number ``i`` of F_q^n lies in the
subspace.  Intersection is bitwise AND and ``dim >= t`` is
``popcount >= q**t``.
"""


def gf2_rref(rows):
    """Reduced row-echelon form of GF(2) rows packed as ints.

    The most significant bit is the first coordinate, so the result is sorted
    by leading bit descending (pivot columns ascending).
    """
    lead = {}
    for v in rows:
        while v:
            h = v.bit_length() - 1
            b = lead.get(h)
            if b is None:
                lead[h] = v
                break
            v ^= b
    hs = sorted(lead, reverse=True)
    for h in hs:
        p = lead[h]
        bit = 1 << h
        for g in hs:
            if g != h and lead[g] & bit:
                lead[g] ^= p
    return tuple(lead[h] for h in hs)


def _leaf_ok(chosen, masks, r, threshold):
    # every r-subset must still be t-intersecting; dropping the last member
    # is the prefix already checked by the caller
    size = r + 1
    suffix = [0] * (size + 1)
    suffix[size] = -1
    for i in range(size - 1, -1, -1):
        suffix[i] = suffix[i + 1] & masks[chosen[i]]
    pre = -1
    for p in range(size - 1):
        if (pre & suffix[p + 1]).bit_count() < threshold:
            return False
        pre &= masks[chosen[p]]
    return True


def count_simplices(masks, r, threshold, first_lo, first_hi, check_subsets):
    """Count (r+1)-subsets whose full intersection has popcount < threshold.

    Only subsets whose smallest index lies in ``[first_lo, first_hi)`` are
    considered.  With ``check_subsets`` every r-subset is also required to
    reach ``threshold`` and prefixes that already fall below it are pruned.
    Returns ``(count, visited, pruned)``.
    """
    n = len(masks)
    size = r + 1
    count = visited = pruned = 0
    chosen = [0] * size

    if not check_subsets and r == 2:
        for a in range(first_lo, min(first_hi, n)):
            ma = masks[a]
            for b in range(a + 1, n):
                mab = ma & masks[b]
                rest = masks[b + 1:]
                visited += len(rest)
                count += sum(1 for m in rest if (mab & m).bit_count() < threshold)
        return count, visited, pruned

    def rec(depth, start, acc):
        nonlocal count, visited, pruned
        if depth == size - 1:
            for c in range(start, n):
                visited += 1
                if (acc & masks[c]).bit_count() < threshold:
                    if check_subsets:
                        chosen[depth] = c
                        if not _leaf_ok(chosen, masks, r, threshold):
                            continue
                    count += 1
            return
        for c in range(start, n - (size - 1 - depth)):
            nxt = acc & masks[c]
            if check_subsets and nxt.bit_count() < threshold:
                pruned += 1
                continue
            chosen[depth] = c
            rec(depth + 1, c + 1, nxt)

    for a in range(first_lo, min(first_hi, n - size + 1)):
        ma = masks[a]
        if check_subsets and ma.bit_count() < threshold:
            pruned += 1
            continue
        chosen[0] = a
        rec(1, a + 1, ma)
    return count, visited, pruned


def all_intersecting(masks, r, threshold):
    """True iff every subset of at most r masks has popcount >= threshold."""
    n = len(masks)

    def rec(depth, start, acc):
        for c in range(start, n):
            nxt = acc & masks[c]
            if nxt.bit_count() < threshold:
                return False
            if depth + 1 < r and not rec(depth + 1, c + 1, nxt):
                return False
        return True

    return rec(0, 0, -1)


def adjacency(masks, threshold):
    """Neighbour bitsets of the graph joining masks that meet in >= threshold points."""
    n = len(masks)
    adj = [0] * n
    for i in range(n):
        mi = masks[i]
        for j in range(i + 1, n):
            if (mi & masks[j]).bit_count() >= threshold:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return adj


def count_sequences(masks, length, target):
    """Ordered sequences (repetition allowed) whose AND has popcount == target."""
    n = len(masks)

    def rec(depth, acc):
        if depth == length:
            return 1 if acc.bit_count() == target else 0
        total = 0
        for c in range(n):
            nxt = acc & masks[c]
            if nxt.bit_count() >= target:
                total += rec(depth + 1, nxt)
        return total

    if length == 0:
        return 0
    return rec(0, -1) if n else 0
