"""Row reduction over GF(q).

Rows have two native representations:

* q == 2: an ``int`` with coordinate ``j`` stored at bit ``n - 1 - j`` (the
  first coordinate is the most significant bit), so row addition is XOR;
* q > 2: a tuple of ``n`` element codes.

All functions take ``(field, n, ...)`` and dispatch on ``field.q``.
"""

from itertools import product

from qspace import kernels


def is_binary(field):
    return field.q == 2


def zero_row(field, n):
    return 0 if field.q == 2 else (0,) * n


def from_vector(field, n, vec):
    if field.q == 2:
        v = 0
        for x in vec:
            v = (v << 1) | x
        return v
    return tuple(vec)


def to_vector(field, n, row):
    if field.q == 2:
        return tuple((row >> (n - 1 - j)) & 1 for j in range(n))
    return tuple(row)


def point_index(field, n, row):
    """Index of a vector in ``[0, q**n)``: base-q digits, first coordinate most significant."""
    if field.q == 2:
        return row
    q = field.q
    idx = 0
    for x in row:
        idx = idx * q + x
    return idx


def pivot_of(field, n, row):
    if field.q == 2:
        return n - row.bit_length()
    for j, x in enumerate(row):
        if x:
            return j
    return n


def pivots(field, n, rows):
    return tuple(pivot_of(field, n, row) for row in rows)


def _rref_general(field, n, rows):
    add, mul, neg, inv = field.add_table, field.mul_table, field.neg_table, field.inv_table
    mat = [list(row) for row in rows]
    m = len(mat)
    rank = 0
    for col in range(n):
        if rank == m:
            break
        piv = None
        for i in range(rank, m):
            if mat[i][col]:
                piv = i
                break
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        lead = mat[rank][col]
        if lead != 1:
            c = inv[lead]
            mat[rank] = [mul[c][x] for x in mat[rank]]
        prow = mat[rank]
        for i in range(m):
            if i != rank and mat[i][col]:
                f = mul[neg[mat[i][col]]]
                mat[i] = [add[x][f[y]] for x, y in zip(mat[i], prow)]
        rank += 1
    return tuple(tuple(row) for row in mat[:rank])


def rref(field, n, rows):
    """Canonical reduced row-echelon basis (nonzero rows only)."""
    if field.q == 2:
        return kernels.gf2_rref(rows)
    return _rref_general(field, n, rows)


def reduce_vector(field, n, basis, row):
    """Residual of ``row`` after eliminating against an RREF ``basis``."""
    if field.q == 2:
        for b in basis:
            if row >> (b.bit_length() - 1) & 1:
                row ^= b
        return row
    add, mul, neg = field.add_table, field.mul_table, field.neg_table
    row = list(row)
    for b in basis:
        p = pivot_of(field, n, b)
        c = row[p]
        if c:
            f = mul[neg[c]]
            row = [add[x][f[y]] for x, y in zip(row, b)]
    return tuple(row)


def is_zero(row):
    return not row if isinstance(row, int) else not any(row)


def add_rows(field, a, b):
    if field.q == 2:
        return a ^ b
    add = field.add_table
    return tuple(add[x][y] for x, y in zip(a, b))


def scale_row(field, c, a):
    if field.q == 2:
        return a if c else 0
    mul = field.mul_table[c]
    return tuple(mul[x] for x in a)


def combine(field, n, rows, coeffs):
    acc = zero_row(field, n)
    for c, row in zip(coeffs, rows):
        if c:
            acc = add_rows(field, acc, scale_row(field, c, row))
    return acc


def span_rows(field, n, rows):
    """Every vector in the span of ``rows`` (q**len(rows) of them, with repeats if dependent)."""
    vecs = [zero_row(field, n)]
    if field.q == 2:
        for row in rows:
            vecs += [v ^ row for v in vecs]
        return vecs
    for row in rows:
        multiples = [scale_row(field, c, row) for c in range(1, field.q)]
        vecs = vecs + [add_rows(field, v, m) for m in multiples for v in vecs]
    return vecs


def point_mask(field, n, rows):
    mask = 0
    for v in span_rows(field, n, rows):
        mask |= 1 << point_index(field, n, v)
    return mask


def zassenhaus(field, n, a_rows, b_rows):
    """Return ``(sum_basis, meet_basis)`` of two row spaces in one elimination."""
    if field.q == 2:
        stacked = [(a << n) | a for a in a_rows] + [b << n for b in b_rows]
        red = kernels.gf2_rref(stacked)
        low = (1 << n) - 1
        total = tuple(r >> n for r in red if r >> n)
        meet = tuple(r & low for r in red if not r >> n)
        return total, meet
    zero = (0,) * n
    stacked = [tuple(a) + tuple(a) for a in a_rows] + [tuple(b) + zero for b in b_rows]
    red = _rref_general(field, 2 * n, stacked)
    total = tuple(r[:n] for r in red if any(r[:n]))
    meet = tuple(r[n:] for r in red if not any(r[:n]))
    return total, meet


def apply_matrix(field, n, rows, matrix):
    """Row vectors times an n x n matrix (list of n row tuples of codes)."""
    out = []
    for row in rows:
        vec = to_vector(field, n, row)
        img = [0] * n
        for i, x in enumerate(vec):
            if x:
                mrow = matrix[i]
                mul = field.mul_table[x]
                img = [field.add_table[a][mul[b]] for a, b in zip(img, mrow)]
        out.append(from_vector(field, n, img))
    return out


def rank_of_matrix(field, n, matrix):
    rows = [from_vector(field, n, r) for r in matrix]
    return len(rref(field, n, rows))


def all_vectors(field, n):
    for vec in product(range(field.q), repeat=n):
        yield from_vector(field, n, vec)
