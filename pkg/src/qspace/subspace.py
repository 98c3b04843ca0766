"""Subspaces of F_q^n in canonical reduced row-echelon form."""

from itertools import combinations, product

from qspace import linalg
from qspace.errors import (
    AmbientMismatch,
    DimensionMismatch,
    InvalidDimension,
    InvariantViolation,
    NotDirectSum,
    ValidationError,
)
from qspace.gfq import field_new

# point masks are used for intersection dimensions while q**n stays below this
MASK_LIMIT = 1 << 16


class Subspace:
    """Immutable subspace; equality and hashing use the canonical RREF rows."""

    __slots__ = ("field", "n", "rows", "_mask", "_sort_key", "_hash")

    def __init__(self, field, n, rows, canonical=False):
        self.field = field
        self.n = n
        self.rows = tuple(rows) if canonical else linalg.rref(field, n, rows)
        self._mask = None
        self._sort_key = None
        self._hash = hash((field.q, n, self.rows))

    @property
    def dim(self):
        return len(self.rows)

    @property
    def q(self):
        return self.field.q

    @property
    def mask(self):
        """Point mask: bit i set iff vector number i lies in the subspace."""
        if self._mask is None:
            self._mask = linalg.point_mask(self.field, self.n, self.rows)
        return self._mask

    def pivots(self):
        return linalg.pivots(self.field, self.n, self.rows)

    def sort_key(self):
        """Position in enumeration order: pivot pattern, then free entries row-major."""
        if self._sort_key is None:
            piv = self.pivots()
            pset = set(piv)
            free = []
            for p, row in zip(piv, self.vectors()):
                free.extend(row[j] for j in range(p + 1, self.n) if j not in pset)
            self._sort_key = (piv, tuple(free))
        return self._sort_key

    def vectors(self):
        return [linalg.to_vector(self.field, self.n, r) for r in self.rows]

    def encode(self):
        """Text encoding: RREF rows as comma-separated codes joined by ';'."""
        return ";".join(",".join(str(x) for x in v) for v in self.vectors())

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.field.q == other.field.q and self.n == other.n and self.rows == other.rows

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __repr__(self):
        return f"Subspace(q={self.q}, n={self.n}, dim={self.dim}, '{self.encode()}')"

    def __reduce__(self):
        return (_rebuild, (self.field.q, self.n, self.rows))


def _rebuild(q, n, rows):
    return Subspace(field_new(q), n, rows, canonical=True)


# -- construction ---------------------------------------------------------------


def from_vectors(field, n, vectors):
    """Span of the given row vectors (sequences of element codes)."""
    rows = []
    for v in vectors:
        v = tuple(v)
        if len(v) != n:
            raise DimensionMismatch(f"vector {v} has length {len(v)}, expected {n}", param="vectors")
        if any(not 0 <= x < field.q for x in v):
            raise ValidationError(f"vector {v} has entries outside [0, {field.q})", param="vectors")
        rows.append(linalg.from_vector(field, n, v))
    return Subspace(field, n, rows)


def decode(field, n, text):
    """Inverse of :meth:`Subspace.encode`; the empty string is the zero subspace."""
    text = text.strip()
    if not text:
        return zero(field, n)
    try:
        vectors = [tuple(int(x) for x in part.split(",")) for part in text.split(";")]
    except ValueError as exc:
        raise ValidationError(f"cannot parse subspace '{text}'", param="subspace") from exc
    return from_vectors(field, n, vectors)


def zero(field, n):
    return Subspace(field, n, (), canonical=True)


def full(field, n):
    return coordinate(field, n, range(n))


def coordinate(field, n, cols):
    """Span of the standard basis vectors e_j for j in ``cols``."""
    rows = []
    for j in sorted(set(cols)):
        vec = [0] * n
        vec[j] = 1
        rows.append(linalg.from_vector(field, n, vec))
    return Subspace(field, n, rows, canonical=True)


def _check_ambient(*subs):
    a = subs[0]
    for b in subs[1:]:
        if b.field.q != a.field.q or b.n != a.n:
            raise AmbientMismatch(
                f"subspaces live in different ambients: (q={a.q}, n={a.n}) vs (q={b.q}, n={b.n})",
                param="subspace",
            )


# -- lattice operations ---------------------------------------------------------


def intersect(a, b):
    _check_ambient(a, b)
    total, meet = linalg.zassenhaus(a.field, a.n, a.rows, b.rows)
    if a.dim + b.dim != len(total) + len(meet):
        raise InvariantViolation("modular law violated in intersect", param="subspace")
    return Subspace(a.field, a.n, meet, canonical=True)


def span(a, *others):
    """Smallest subspace containing ``a`` and every subspace or vector in ``others``."""
    rows = list(a.rows)
    for o in others:
        if isinstance(o, Subspace):
            _check_ambient(a, o)
            rows.extend(o.rows)
        else:
            o = tuple(o)
            if len(o) != a.n:
                raise DimensionMismatch(f"vector {o} has length {len(o)}, expected {a.n}", param="vectors")
            rows.append(linalg.from_vector(a.field, a.n, o))
    return Subspace(a.field, a.n, rows)


def contains(a, b):
    """True iff b is a subspace of a."""
    _check_ambient(a, b)
    if b.dim > a.dim:
        return False
    return all(linalg.is_zero(linalg.reduce_vector(a.field, a.n, a.rows, r)) for r in b.rows)


def meet_dim(a, b):
    """dim(a ∩ b) without building the intersection."""
    _check_ambient(a, b)
    if a.q ** a.n <= MASK_LIMIT:
        return log_q(a.q, (a.mask & b.mask).bit_count())
    return a.dim + b.dim - len(linalg.rref(a.field, a.n, a.rows + b.rows))


def log_q(q, count):
    d = 0
    while count > 1:
        count //= q
        d += 1
    return d


def complement(x):
    """Coordinate subspace on the non-pivot columns of x."""
    piv = set(x.pivots())
    return coordinate(x.field, x.n, [j for j in range(x.n) if j not in piv])


def is_direct_sum(x, y):
    _check_ambient(x, y)
    return x.dim + y.dim == x.n and len(linalg.rref(x.field, x.n, x.rows + y.rows)) == x.n


def project(f, x, y):
    """Projection of f onto (x, y) for V = x ⊕ y: returns (f ∩ x, f(y))."""
    _check_ambient(f, x, y)
    if not is_direct_sum(x, y):
        raise NotDirectSum("x and y do not form a direct sum decomposition of V", param="y")
    meet = intersect(f, x)
    fx = span(f, x)
    fy = intersect(fx, y)
    if fy.dim != f.dim - meet.dim:
        raise InvariantViolation("projection dimension mismatch", param="f")
    rebuilt = span(meet, fy)
    if intersect(rebuilt, x) != meet or span(rebuilt, x) != fx:
        raise InvariantViolation("projection not equivalent to f with respect to x", param="f")
    return meet, fy


def equivalent(f, g, x):
    """f and g are equivalent with respect to x: same meet with x and same sum with x."""
    return intersect(f, x) == intersect(g, x) and span(f, x) == span(g, x)


# -- enumeration ----------------------------------------------------------------


def pivot_patterns(n, k):
    return combinations(range(n), k)


def enumerate_pattern(field, n, piv):
    """All RREF subspaces with the given pivot columns, free entries lexicographic."""
    k = len(piv)
    pset = set(piv)
    free = [(i, j) for i, p in enumerate(piv) for j in range(p + 1, n) if j not in pset]
    for values in product(range(field.q), repeat=len(free)):
        mat = [[0] * n for _ in range(k)]
        for i, p in enumerate(piv):
            mat[i][p] = 1
        for (i, j), v in zip(free, values):
            mat[i][j] = v
        yield Subspace(field, n, [linalg.from_vector(field, n, r) for r in mat], canonical=True)


def enumerate_subspaces(field, n, k):
    """Every k-subspace of F_q^n exactly once, in pivot-pattern then free-entry order."""
    if not 0 <= k <= n:
        raise InvalidDimension(f"k={k} outside [0, {n}]", param="k")
    for piv in pivot_patterns(n, k):
        yield from enumerate_pattern(field, n, piv)


def embed(s, coords):
    """Vector of V with coordinates ``coords`` in the RREF basis of s."""
    return linalg.combine(s.field, s.n, s.rows, coords)


def subspaces_of(s, d):
    """Every d-subspace of s (images of the d-subspaces of F_q^{dim s})."""
    if not 0 <= d <= s.dim:
        raise InvalidDimension(f"d={d} outside [0, {s.dim}]", param="d")
    small = field_new(s.q)
    for sub in enumerate_subspaces(small, s.dim, d):
        rows = [embed(s, v) for v in sub.vectors()]
        yield Subspace(s.field, s.n, rows)


def extend_basis(inner, outer):
    """Rows of ``outer``'s basis that extend ``inner`` to ``outer`` (inner ⊆ outer)."""
    field, n = outer.field, outer.n
    basis = list(inner.rows)
    extra = []
    for r in outer.rows:
        red = linalg.reduce_vector(field, n, linalg.rref(field, n, basis), r)
        if not linalg.is_zero(red):
            basis.append(r)
            extra.append(r)
    return extra


def enumerate_with_intersection(a, j, ell):
    """Every j-subspace B with dim(a ∩ B) = ell, built directly.

    B is determined by C = a ∩ B, by its projection H onto a fixed complement Y
    of a, and by a linear map H -> a/C; each choice gives a distinct B.
    """
    n, field = a.n, a.field
    i = a.dim
    if not (0 <= ell <= min(i, j) and 0 <= j <= n):
        raise InvalidDimension(f"need 0 <= ell={ell} <= min(dim A={i}, j={j}) and j <= n={n}", param="ell")
    if j - ell > n - i:
        return
    y = complement(a)
    q = field.q
    for c in subspaces_of(a, ell):
        d_rows = extend_basis(c, a)
        for h in subspaces_of(y, j - ell):
            for coeffs in product(range(q), repeat=(j - ell) * (i - ell)):
                rows = list(c.rows)
                for s, hrow in enumerate(h.rows):
                    shift = linalg.combine(field, n, d_rows, coeffs[s * (i - ell):(s + 1) * (i - ell)])
                    rows.append(linalg.add_rows(field, hrow, shift))
                yield Subspace(field, n, rows)


# -- change of basis ------------------------------------------------------------


def transform(s, matrix):
    """Image of s under v -> v @ matrix."""
    return Subspace(s.field, s.n, linalg.apply_matrix(s.field, s.n, s.rows, matrix))


def random_invertible(field, n, rng):
    """Uniformly random invertible n x n matrix (rejection sampling)."""
    while True:
        m = [tuple(rng.randrange(field.q) for _ in range(n)) for _ in range(n)]
        if linalg.rank_of_matrix(field, n, m) == n:
            return m


def random_subspace(field, n, k, rng):
    while True:
        vecs = [tuple(rng.randrange(field.q) for _ in range(n)) for _ in range(k)]
        s = from_vectors(field, n, vecs)
        if s.dim == k:
            return s
