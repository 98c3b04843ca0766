"""Simplex predicate and exact simplex counting, the extremal value n_{t+r,k},
its closed-form lower bound, and the step-by-step counts behind that bound."""

import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb, factorial

from qspace import kernels
from qspace import subspace as sp
from qspace.errors import (
    DuplicateMember,
    InvalidDimension,
    InvariantViolation,
    NotIntersecting,
    RangeViolation,
    ValidationError,
    guard,
)
from qspace.family import (
    _check_rt,
    build_F_X_k,
    build_F_star_X_k,
    is_r_wise_t_intersecting,
)
from qspace.gfq import field_new
from qspace.qbinom import gauss_binom


def is_simplex(members, r, t):
    """r+1 distinct members: every r of them meet in dim >= t, all of them in dim < t."""
    _check_rt(r, t)
    members = list(members)
    if len(members) != r + 1:
        raise ValidationError(f"expected {r + 1} members, got {len(members)}", param="members")
    if len(set(members)) != len(members):
        raise DuplicateMember("simplex members must be distinct", param="members")
    first = members[0]
    for m in members[1:]:
        if m.q != first.q or m.n != first.n or m.dim != first.dim:
            raise ValidationError("members must be k-uniform in one ambient", param="members")
    whole = members[0]
    for m in members[1:]:
        whole = sp.intersect(whole, m)
    if whole.dim >= t:
        return False
    for subset in combinations(members, r):
        acc = subset[0]
        for m in subset[1:]:
            acc = sp.intersect(acc, m)
        if acc.dim < t:
            return False
    return True


@dataclass(frozen=True)
class SimplexCountResult:
    count: int
    n: int
    k: int
    q: int
    r: int
    t: int
    members: int
    visited: int
    pruned: int

    def to_record(self):
        return {
            "n": self.n, "k": self.k, "q": self.q, "r": self.r, "t": self.t,
            "count": str(self.count),
            "members": self.members, "visited": self.visited, "pruned": self.pruned,
        }


def _count_block(args):
    masks, r, threshold, lo, hi, check = args
    return kernels.count_simplices(masks, r, threshold, lo, hi, check)


def _blocks(n, size, parts):
    """Contiguous first-index ranges carrying roughly equal numbers of subsets."""
    weights = [comb(n - i - 1, size - 1) for i in range(n)]
    total = sum(weights)
    if total == 0 or parts <= 1:
        return [(0, n)]
    target = total / parts
    bounds, acc, lo = [], 0, 0
    for i, w in enumerate(weights):
        acc += w
        if acc >= target and len(bounds) < parts - 1:
            bounds.append((lo, i + 1))
            lo, acc = i + 1, 0
    bounds.append((lo, n))
    return bounds


def count_simplices(fam, r, t, waive=False, workers=1, guard_limit=1.0):
    """Number of unordered (r+1)-subsets of fam forming a simplex.

    Raises NotIntersecting on a family that is not r-wise t-intersecting unless
    ``waive`` is set, in which case every r-subset is checked explicitly.
    Blocks of first indices are counted independently and summed, so the
    result does not depend on ``workers``.
    """
    _check_rt(r, t)
    if not waive and not is_r_wise_t_intersecting(fam, r, t):
        raise NotIntersecting(f"family is not {r}-wise {t}-intersecting", param="family")
    size = r + 1
    n_members = len(fam)
    guard(comb(n_members, size), 200_000_000, "family", guard_limit)
    masks = fam.masks
    thr = fam.q**t
    check = bool(waive)
    blocks = _blocks(n_members, size, max(1, workers) * 4 if workers > 1 else 1)
    jobs = [(masks, r, thr, lo, hi, check) for lo, hi in blocks]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_count_block, jobs))
    else:
        parts = [_count_block(j) for j in jobs]
    count = sum(p[0] for p in parts)
    if count > comb(n_members, size):
        raise InvariantViolation("simplex count exceeds the number of subsets", param="family")
    return SimplexCountResult(
        count=count, n=fam.n, k=fam.k, q=fam.q, r=r, t=t, members=n_members,
        visited=sum(p[1] for p in parts), pruned=sum(p[2] for p in parts),
    )


def deletion_counts(fam, r, t, workers=1):
    """Simplex count of fam with each member removed in turn."""
    return [count_simplices(fam.without(m), r, t, workers=workers).count for m in fam.members]


# -- n_{t+r,k} ----------------------------------------------------------------------


def _check_ntrk(n, k, r, t):
    _check_rt(r, t)
    if r + t > n:
        raise InvalidDimension(f"r+t={r + t} exceeds n={n}", param="n")
    if k < r + t - 1:
        raise InvalidDimension(f"k={k} < r+t-1={r + t - 1}", param="k")
    if k > n:
        raise InvalidDimension(f"k={k} exceeds n={n}", param="k")


def canonical_x(field, n, r, t):
    return sp.coordinate(field, n, range(r + t))


def n_trk_result(n, k, q, r, t, workers=1, guard_limit=1.0, x=None):
    """Simplex count of F_{X,k} for a (t+r)-subspace X (coordinate X unless given)."""
    _check_ntrk(n, k, r, t)
    field = field_new(q)
    if x is None:
        x = canonical_x(field, n, r, t)
    elif x.dim != r + t:
        raise InvalidDimension(f"dim X={x.dim} must equal r+t={r + t}", param="x")
    guard(gauss_binom(n, k, q), 2_000_000, "n", guard_limit)
    return count_simplices(build_F_X_k(x, k), r, t, workers=workers, guard_limit=guard_limit)


def n_trk_exact(n, k, q, r, t, workers=1, guard_limit=1.0):
    return n_trk_result(n, k, q, r, t, workers=workers, guard_limit=guard_limit).count


def lower_bound_value(n, k, q, r, t):
    """The closed-form lower bound on n_{t+r,k}, evaluated without range checks."""
    d = k - r - t + 1
    prod = 1
    for i in range(r + 1):
        prod *= gauss_binom(t + i, t + i - 1, q)
    num = q ** (r * d + r * (r + 1) // 2) * gauss_binom(n - r - t, d, q) ** (r + 1) * prod
    return Fraction(num, 2 * factorial(r + 1))


def n_trk_lower_bound(n, k, q, r, t):
    """Exact rational lower bound on n_{t+r,k}, valid for n > 2k."""
    _check_rt(r, t)
    if n <= 2 * k:
        raise RangeViolation(f"lower bound needs n > 2k (n={n}, k={k})", param="n")
    return lower_bound_value(n, k, q, r, t)


def lower_bound_log_exponent(n, k, r, t):
    """Integer exponent L with q**L <= the closed-form lower bound (log_q relaxation)."""
    d = k - r - t + 1
    return (r + 1) * d * n - (k + 1) * (r + 1) * d + r * (k + 1) - r * r


# -- step-by-step construction counts ---------------------------------------------


@dataclass
class StepReport:
    n: int
    k: int
    q: int
    r: int
    t: int
    f_exact: int = 0
    f_bound: int = 0
    g_exact: int = 0
    g_bound: Fraction = Fraction(0)
    g_inclusion_exclusion: int = 0
    fiber_size: int = 0
    fiber_expected: int = 0
    fiber_pairs: int = 0
    fiber_pairs_expected: int = 0
    fibers_uniform: bool = False
    h_exact: int = 0
    h_stated: int = 0
    assembled: Fraction = Fraction(0)
    assembled_stated: Fraction = Fraction(0)
    n_trk: int = 0
    step1_checked: int = 0
    step1_degenerate: int = 0
    step1_failures: int = 0
    checks: dict = field(default_factory=dict)

    @property
    def ok(self):
        return all(self.checks.values())

    def to_record(self):
        rec = {}
        for key, val in self.__dict__.items():
            if isinstance(val, Fraction):
                rec[key] = str(val)
            elif isinstance(val, int) and not isinstance(val, bool) and key not in ("n", "k", "q", "r", "t"):
                rec[key] = str(val)
            else:
                rec[key] = val
        rec["ok"] = self.ok
        return rec


def _random_sequence(rng, masks, length, target, tries=100_000):
    for _ in range(tries):
        idx = [rng.randrange(len(masks)) for _ in range(length)]
        acc = -1
        for i in idx:
            acc &= masks[i]
        if acc.bit_count() == target:
            return idx
    return None


def lemma23_step_counts(n, k, q, r, t, samples=200, seed=0, workers=1, guard_limit=1.0):
    """Exact counts for each stage of the F*_{X,k} simplex construction.

    f: ordered (r+1)-sequences of (t+r-1)-subspaces of X meeting in dim t-1;
    g: ordered (r+1)-sequences of (k-t-r+1)-subspaces of Y meeting in 0;
    fibers: members of F*_{X,k} projecting to each (G, H) pair;
    assembled = f*g*h/(r+1)!, compared with n_{t+r,k}.
    """
    _check_ntrk(n, k, r, t)
    field = field_new(q)
    x = canonical_x(field, n, r, t)
    y = sp.complement(x)
    d = k - r - t + 1
    rep = StepReport(n, k, q, r, t)

    hyper = list(sp.subspaces_of(x, t + r - 1))
    guard(len(hyper) ** (r + 1), 20_000_000, "r", guard_limit)
    pieces = list(sp.subspaces_of(y, d))
    guard(len(pieces) ** (r + 1), 20_000_000, "n", guard_limit)

    # step 2
    hmasks = [h.mask for h in hyper]
    rep.f_exact = kernels.count_sequences(hmasks, r + 1, q ** (t - 1))
    rep.f_bound = q ** (r * (r + 1) // 2)
    for i in range(r + 1):
        rep.f_bound *= gauss_binom(t + i, t + i - 1, q)
    rep.checks["step2.f_bound"] = rep.f_exact >= rep.f_bound

    # step 3
    pmasks = [p.mask for p in pieces]
    rep.g_exact = kernels.count_sequences(pmasks, r + 1, 1)
    top = gauss_binom(n - r - t, d, q)
    rep.g_bound = Fraction(top ** (r + 1), 2)
    rep.g_inclusion_exclusion = top ** (r + 1) - gauss_binom(n - r - t, 1, q) * gauss_binom(n - r - t - 1, d - 1, q) ** (r + 1)
    rep.checks["step3.g_half_bound"] = rep.g_exact >= rep.g_bound
    rep.checks["step3.g_inclusion_exclusion"] = rep.g_exact >= rep.g_inclusion_exclusion

    # step 4: projections of F*_{X,k} onto (X, Y)
    star = build_F_star_X_k(x, k)
    fibers = {}
    for f in star:
        fibers.setdefault(sp.project(f, x, y), []).append(f)
    sizes = Counter(len(v) for v in fibers.values())
    rep.fiber_expected = q**d
    rep.fiber_pairs = len(fibers)
    rep.fiber_pairs_expected = len(hyper) * len(pieces)
    rep.fibers_uniform = len(sizes) == 1 and rep.fiber_pairs == rep.fiber_pairs_expected
    rep.fiber_size = next(iter(sizes)) if len(sizes) == 1 else 0
    rep.checks["step4.fibers_uniform"] = rep.fibers_uniform
    rep.checks["step4.fiber_size"] = rep.fiber_size == rep.fiber_expected
    rep.h_exact = rep.fiber_size ** (r + 1)
    rep.h_stated = q ** (d * r)
    rep.checks["step4.h_stated_le_exact"] = rep.h_stated <= rep.h_exact

    # step 5
    rep.n_trk = n_trk_exact(n, k, q, r, t, workers=workers, guard_limit=guard_limit)
    rep.assembled = Fraction(rep.f_exact * rep.g_exact * rep.h_exact, factorial(r + 1))
    rep.assembled_stated = Fraction(rep.f_exact * rep.g_exact * rep.h_stated, factorial(r + 1))
    rep.checks["step5.assembled_le_ntrk"] = rep.assembled <= rep.n_trk

    # step 1: sampled assemblies are simplices
    rng = random.Random(seed)
    for _ in range(samples):
        gi = _random_sequence(rng, hmasks, r + 1, q ** (t - 1))
        hi = _random_sequence(rng, pmasks, r + 1, 1)
        if gi is None or hi is None:
            break
        chosen = [rng.choice(fibers[(hyper[a], pieces[b])]) for a, b in zip(gi, hi)]
        if len(set(chosen)) < len(chosen):
            rep.step1_degenerate += 1
            continue
        rep.step1_checked += 1
        if not is_simplex(chosen, r, t):
            rep.step1_failures += 1
    rep.checks["step1.assemblies_are_simplices"] = rep.step1_failures == 0
    return rep
