"""k-uniform families of subspaces: intersection properties, t-covers, and the
extremal families F_{X,k} / F*_{X,k}."""

from dataclasses import dataclass
from pathlib import Path

from qspace import kernels
from qspace.errors import (
    AmbientMismatch,
    EmptyFamily,
    InvalidDimension,
    InvariantViolation,
    InfeasibleScale,
    ValidationError,
    guard,
)
from qspace.gfq import field_new
from qspace.qbinom import gauss_binom, intersection_count
from qspace import subspace as sp


class Family:
    """Deduplicated k-uniform family kept in enumeration order."""

    def __init__(self, field, n, k, members=()):
        uniq = {}
        for m in members:
            if m.q != field.q or m.n != n:
                raise AmbientMismatch(f"member {m!r} not in ambient (q={field.q}, n={n})", param="members")
            if m.dim != k:
                raise InvalidDimension(f"member {m!r} has dim {m.dim}, family is {k}-uniform", param="members")
            uniq[m] = None
        self.field = field
        self.n = n
        self.k = k
        self.members = tuple(sorted(uniq, key=sp.Subspace.sort_key))
        self._index = {m: i for i, m in enumerate(self.members)}
        self._masks = None

    @property
    def q(self):
        return self.field.q

    @property
    def masks(self):
        if self._masks is None:
            if self.q ** self.n > sp.MASK_LIMIT:
                raise InfeasibleScale(f"q^n = {self.q ** self.n} too large for point masks", param="n")
            self._masks = [m.mask for m in self.members]
        return self._masks

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, s):
        return s in self._index

    def index(self, s):
        return self._index[s]

    def __eq__(self, other):
        if not isinstance(other, Family):
            return NotImplemented
        return (self.q, self.n, self.k, self.members) == (other.q, other.n, other.k, other.members)

    def __hash__(self):
        return hash((self.q, self.n, self.k, self.members))

    def key(self):
        """Canonical ordering key used for deterministic tie-breaking."""
        return tuple(m.sort_key() for m in self.members)

    def without(self, s):
        return Family(self.field, self.n, self.k, [m for m in self.members if m != s])

    def with_members(self, extra):
        return Family(self.field, self.n, self.k, list(self.members) + list(extra))

    def issubset(self, other):
        return all(m in other for m in self.members)

    def transform(self, matrix):
        return Family(self.field, self.n, self.k, [sp.transform(m, matrix) for m in self.members])

    def __repr__(self):
        return f"Family(q={self.q}, n={self.n}, k={self.k}, size={len(self)})"


def all_k_subspaces(field, n, k, guard_limit=1.0):
    guard(gauss_binom(n, k, field.q), 200_000, "k", guard_limit)
    return Family(field, n, k, sp.enumerate_subspaces(field, n, k))


# -- predicates -----------------------------------------------------------------


def _check_rt(r, t):
    if r < 2:
        raise ValidationError(f"r={r} must be >= 2", param="r")
    if t < 1:
        raise ValidationError(f"t={t} must be >= 1", param="t")


def is_r_wise_t_intersecting(fam, r, t):
    """Every r members meet in dimension >= t (vacuously true below r members)."""
    _check_rt(r, t)
    if len(fam) < r:
        return True
    return kernels.all_intersecting(fam.masks, r, fam.q**t)


def is_trivial(fam, t):
    """All members share a common t-subspace."""
    acc = -1
    for m in fam.masks:
        acc &= m
    return len(fam) > 0 and acc.bit_count() >= fam.q**t


def is_t_cover(cover, fam, t):
    if t < 1:
        raise ValidationError(f"t={t} must be >= 1", param="t")
    if cover.q != fam.q or cover.n != fam.n:
        raise AmbientMismatch("cover and family ambients differ", param="cover")
    cm = cover.mask
    thr = fam.q**t
    return all((cm & m).bit_count() >= thr for m in fam.masks)


def meet_masks(masks, depth):
    """Distinct point masks of intersections of 1..depth members."""
    out = set()

    def rec(start, acc, size):
        for c in range(start, len(masks)):
            nxt = acc & masks[c]
            out.add(nxt)
            if size + 1 < depth:
                rec(c + 1, nxt, size + 1)

    if depth >= 1:
        rec(0, -1, 0)
    return out


def admissible(meets, mask, threshold):
    return all((mask & m).bit_count() >= threshold for m in meets)


def is_maximal(fam, r, t, guard_limit=1.0):
    """No k-subspace outside fam can be added keeping r-wise t-intersection."""
    if not is_r_wise_t_intersecting(fam, r, t):
        return False
    if len(fam) + 1 < r:
        return False
    meets = meet_masks(fam.masks, r - 1)
    thr = fam.q**t
    guard(gauss_binom(fam.n, fam.k, fam.q), 200_000, "k", guard_limit)
    for g in sp.enumerate_subspaces(fam.field, fam.n, fam.k):
        if g not in fam and admissible(meets, g.mask, thr):
            return False
    return True


# -- covers ---------------------------------------------------------------------


@dataclass(frozen=True)
class CoverReport:
    tau: int
    covers: tuple

    def to_record(self):
        return {"tau": self.tau, "covers": [c.encode() for c in self.covers]}


def covering_number(fam, t, mode="pruned"):
    """Minimum dimension of a t-cover and the full list of minimum t-covers.

    ``pruned`` searches only inside the span S of the members (a minimum cover
    T satisfies T = T ∩ S) and only through candidates containing a t-subspace
    of the first member (T must meet it in >= t dimensions).  ``exhaustive``
    scans every d-subspace of V and serves as the oracle.
    """
    if len(fam) == 0:
        raise EmptyFamily("covering number of an empty family", param="family")
    if t < 1:
        raise ValidationError(f"t={t} must be >= 1", param="t")
    if t > fam.k:
        raise ValidationError(f"t={t} exceeds member dimension k={fam.k}", param="t")
    if mode == "exhaustive":
        report = _covers_exhaustive(fam, t)
    elif mode == "pruned":
        report = _covers_pruned(fam, t)
    else:
        raise ValidationError(f"unknown cover mode {mode!r}", param="mode")
    if (report.tau == t) != is_trivial(fam, t):
        raise InvariantViolation("tau_t == t must coincide with triviality", param="family")
    return report


def _covers_exhaustive(fam, t):
    for d in range(t, fam.n + 1):
        covers = [c for c in sp.enumerate_subspaces(fam.field, fam.n, d) if is_t_cover(c, fam, t)]
        if covers:
            return CoverReport(d, tuple(sorted(covers, key=sp.Subspace.sort_key)))
    raise InvariantViolation("V itself must be a t-cover", param="family")


def _covers_pruned(fam, t):
    whole = sp.span(fam.members[0], *fam.members[1:])
    first = fam.members[0]
    anchors = list(sp.subspaces_of(first, t))
    rests = [sp.Subspace(fam.field, fam.n, sp.extend_basis(u, whole)) for u in anchors]
    for d in range(t, whole.dim + 1):
        seen = set()
        covers = []
        for u, rest in zip(anchors, rests):
            for w in sp.subspaces_of(rest, d - t):
                cand = sp.span(u, w)
                if cand in seen:
                    continue
                seen.add(cand)
                if is_t_cover(cand, fam, t):
                    covers.append(cand)
        if covers:
            return CoverReport(d, tuple(sorted(covers, key=sp.Subspace.sort_key)))
    raise InvariantViolation("span of the members must be a t-cover", param="family")


def is_cover_complete(x, fam, t, report=None):
    """Every (t+1)-subspace of x is a minimum t-cover of fam."""
    if x.dim < t + 1:
        raise InvalidDimension(f"dim X={x.dim} < t+1={t + 1}", param="x")
    if report is None:
        report = covering_number(fam, t)
    if report.tau != t + 1:
        return False
    covers = set(report.covers)
    return all(z in covers for z in sp.subspaces_of(x, t + 1))


# -- extremal constructions -------------------------------------------------------


def _check_fx(x, k):
    m = x.dim
    if not (1 <= m <= k + 1 <= x.n + 1):
        raise InvalidDimension(f"need 1 <= dim X={m} <= k+1={k + 1} <= n+1={x.n + 1}", param="k")


def build_F_X_k(x, k):
    """All k-subspaces F with dim(F ∩ X) >= dim X - 1."""
    _check_fx(x, k)
    m = x.dim
    members = list(sp.enumerate_with_intersection(x, k, m - 1))
    if m <= k:
        members += sp.enumerate_with_intersection(x, k, m)
    fam = Family(x.field, x.n, k, members)
    expected = intersection_count(x.n, m, k, m - 1, x.q) + intersection_count(x.n, m, k, m, x.q)
    if len(fam) != expected:
        raise InvariantViolation(f"|F_X,k| = {len(fam)} but the intersection counts give {expected}", param="x")
    return fam


def build_F_star_X_k(x, k):
    """All k-subspaces F with dim(F ∩ X) = dim X - 1."""
    _check_fx(x, k)
    m = x.dim
    fam = Family(x.field, x.n, k, sp.enumerate_with_intersection(x, k, m - 1))
    if len(fam) != intersection_count(x.n, m, k, m - 1, x.q):
        raise InvariantViolation("|F*_X,k| disagrees with the intersection count", param="x")
    return fam


def derived_intersection_level(r, ell, t):
    """Pairwise intersection dimension forced when tau_t = ell."""
    if r < 2 or ell < t:
        raise ValidationError(f"need r >= 2 and ell >= t (r={r}, ell={ell}, t={t})", param="ell")
    return (r - 2) * (ell - t) + t


# -- file format ----------------------------------------------------------------


def format_family(fam):
    lines = [f"q={fam.q} n={fam.n} k={fam.k}"]
    lines += [m.encode() for m in fam.members]
    return "\n".join(lines) + "\n"


def parse_family(text):
    header = None
    vals = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if header is None:
            try:
                header = dict(part.split("=", 1) for part in line.split())
                q, n, k = int(header["q"]), int(header["n"]), int(header["k"])
            except (ValueError, KeyError) as exc:
                raise ValidationError(f"bad family header {line!r}; expected 'q=<q> n=<n> k=<k>'", param="family") from exc
            continue
        vals.append(line)
    if header is None:
        raise ValidationError("family file has no header", param="family")
    field = field_new(q)
    members = [sp.decode(field, n, v) for v in vals]
    return Family(field, n, k, members)


def read_family(path):
    return parse_family(Path(path).read_text())


def write_family(fam, path):
    Path(path).write_text(format_family(fam))
