"""Desk-scale exploration of maximal r-wise t-intersecting families and of
which families carry the most simplices."""

import random
from collections import Counter
from dataclasses import dataclass, field

from qspace import kernels
from qspace import subspace as sp
from qspace.errors import InfeasibleScale, InvalidDimension, ValidationError, guard
from qspace.family import Family, _check_rt, covering_number, derived_intersection_level
from qspace.gfq import field_new
from qspace.qbinom import gauss_binom, intersection_count
from qspace.simplex import count_simplices, n_trk_exact

CLIQUE_VERTEX_LIMIT = 2000
UNIVERSE_LIMIT = 200_000


def _bits(x):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def _degeneracy_order(adj):
    """Repeatedly remove a vertex of minimum remaining degree (lowest index on ties)."""
    left = (1 << len(adj)) - 1
    order = []
    while left:
        v = min(_bits(left), key=lambda u: ((adj[u] & left).bit_count(), u))
        order.append(v)
        left &= ~(1 << v)
    return order


def maximal_cliques(adj):
    """Every maximal clique of the graph given by neighbour bitsets, as sorted index tuples.

    Bron-Kerbosch with Tomita pivoting, outer loop in degeneracy order.
    """
    out = []

    def expand(clique, p, x):
        if not p and not x:
            out.append(tuple(sorted(clique)))
            return
        pivot = max(_bits(p | x), key=lambda u: ((p & adj[u]).bit_count(), -u))
        for v in list(_bits(p & ~adj[pivot])):
            bit = 1 << v
            expand(clique + [v], p & adj[v], x & adj[v])
            p &= ~bit
            x |= bit

    done = 0
    for v in _degeneracy_order(adj):
        bit = 1 << v
        expand([v], adj[v] & ~done, adj[v] & done)
        done |= bit
    return out


def _universe(field, n, k, guard_limit):
    guard(gauss_binom(n, k, field.q), UNIVERSE_LIMIT, "k", guard_limit)
    if field.q**n > sp.MASK_LIMIT:
        raise InfeasibleScale(f"q^n = {field.q ** n} too large for point masks", param="n")
    return list(sp.enumerate_subspaces(field, n, k))


def enumerate_maximal_families_r2(n, k, q, t, guard_limit=1.0):
    """Every maximal pairwise t-intersecting k-uniform family, in canonical order."""
    if t < 1 or not 0 <= k <= n:
        raise InvalidDimension(f"need t >= 1 and 0 <= k <= n (n={n}, k={k}, t={t})", param="k")
    field = field_new(q)
    guard(gauss_binom(n, k, q), CLIQUE_VERTEX_LIMIT, "n", guard_limit)
    verts = _universe(field, n, k, guard_limit)
    adj = kernels.adjacency([v.mask for v in verts], q**t)
    fams = [Family(field, n, k, [verts[i] for i in c]) for c in maximal_cliques(adj)]
    fams.sort(key=Family.key)
    yield from fams


class _Closure:
    """Incremental state for growing an r-wise t-intersecting family."""

    def __init__(self, r, threshold):
        self.r = r
        self.threshold = threshold
        self.levels = [set() for _ in range(r)]  # levels[s]: meets of s members

    def admissible(self, mask):
        thr = self.threshold
        return all((mask & m).bit_count() >= thr for lvl in self.levels[1:] for m in lvl)

    def add(self, mask):
        for s in range(self.r - 1, 1, -1):
            self.levels[s] |= {m & mask for m in self.levels[s - 1]}
        self.levels[1].add(mask)


def greedy_closure(start, r, t, rng, universe=None):
    """Grow ``start`` by random admissible k-subspaces until none is left.

    A candidate is admissible when it meets every intersection of at most r-1
    current members in dimension >= t.
    """
    _check_rt(r, t)
    if universe is None:
        universe = list(sp.enumerate_subspaces(start.field, start.n, start.k))
    state = _Closure(r, start.q**t)
    members = list(start.members)
    for m in members:
        state.add(m.mask)
    taken = set(members)
    pool = [u for u in universe if u not in taken]
    while True:
        cands = [u for u in pool if state.admissible(u.mask)]
        if not cands:
            break
        pick = rng.choice(cands)
        members.append(pick)
        state.add(pick.mask)
        pool = [u for u in cands if u != pick]
    return Family(start.field, start.n, start.k, members)


def sample_maximal_families(n, k, q, r, t, seed=0, iterations=10, guard_limit=1.0):
    """Greedy closures from random single members; deterministic for a given seed."""
    _check_rt(r, t)
    if iterations <= 0:
        return
    field = field_new(q)
    universe = _universe(field, n, k, guard_limit)
    rng = random.Random(seed)
    for _ in range(iterations):
        first = rng.choice(universe)
        yield greedy_closure(Family(field, n, k, [first]), r, t, rng, universe)


def sandwich_witness(fam, r, t):
    """First (r+t)-subspace X in enumeration order with F*_{X,k} ⊆ fam ⊆ F_{X,k}, else None."""
    m = r + t
    n, k, q = fam.n, fam.k, fam.q
    if not m <= min(n, k + 1):
        return None
    need = intersection_count(n, m, k, m - 1, q)
    lo, exact = q ** (m - 1), q**m
    masks = fam.masks
    for x in sp.enumerate_subspaces(fam.field, n, m):
        xm = x.mask
        hits = 0
        for fm in masks:
            c = (fm & xm).bit_count()
            if c < lo:
                break
            if c < exact:
                hits += 1
        else:
            if hits == need:
                return x
    return None


def min_pairwise_level(fam):
    masks = fam.masks
    best = fam.k
    for i in range(len(masks)):
        for j in range(i + 1, len(masks)):
            best = min(best, sp.log_q(fam.q, (masks[i] & masks[j]).bit_count()))
    return best


@dataclass
class SearchResult:
    n: int
    k: int
    q: int
    r: int
    t: int
    mode: str
    examined: int = 0
    distinct: int = 0
    best_count: int = 0
    witnesses: list = field(default_factory=list)
    sandwiches: list = field(default_factory=list)
    sizes: Counter = field(default_factory=Counter)
    taus: Counter = field(default_factory=Counter)
    n_trk: int = None
    shadow: list = field(default_factory=list)
    pairwise_level_ok: bool = True

    def to_record(self):
        return {
            "n": self.n, "k": self.k, "q": self.q, "r": self.r, "t": self.t,
            "mode": self.mode,
            "examined": self.examined,
            "distinct": self.distinct,
            "best_count": str(self.best_count),
            "n_trk": None if self.n_trk is None else str(self.n_trk),
            "witnesses": [[m.encode() for m in w] for w in self.witnesses],
            "sandwich": [None if x is None else x.encode() for x in self.sandwiches],
            "sizes": sorted(self.sizes.items()),
            "taus": sorted(self.taus.items()),
            "shadow": self.shadow,
            "pairwise_level_ok": self.pairwise_level_ok,
        }


def extremal_report(n, k, q, r, t, mode="exhaustive", seed=0, iterations=10, workers=1, guard_limit=1.0):
    """Simplex counts over maximal families, the maximizers, and their sandwich status.

    Families with tau_t >= t+2 are compared against n_{t+r,k} and the outcome
    recorded, never asserted.
    """
    _check_rt(r, t)
    if mode == "exhaustive":
        if r != 2:
            raise ValidationError("exhaustive search exists only for r = 2; use mode=sampled", param="r")
        stream = enumerate_maximal_families_r2(n, k, q, t, guard_limit)
    elif mode == "sampled":
        stream = sample_maximal_families(n, k, q, r, t, seed, iterations, guard_limit)
    else:
        raise ValidationError(f"unknown search mode {mode!r}", param="mode")

    res = SearchResult(n, k, q, r, t, mode)
    try:
        res.n_trk = n_trk_exact(n, k, q, r, t, workers=workers, guard_limit=guard_limit)
    except (InvalidDimension, InfeasibleScale):
        res.n_trk = None

    counts = {}
    for fam in stream:
        res.examined += 1
        if fam in counts:
            continue
        counts[fam] = count_simplices(fam, r, t, workers=workers, guard_limit=guard_limit).count
        res.sizes[len(fam)] += 1
        tau = covering_number(fam, t).tau if fam.k >= t else None
        res.taus[tau] += 1
        if tau is not None and tau >= t:
            if min_pairwise_level(fam) < derived_intersection_level(r, tau, t):
                res.pairwise_level_ok = False
        if tau is not None and tau >= t + 2 and res.n_trk is not None:
            res.shadow.append({
                "size": len(fam), "tau": tau, "count": str(counts[fam]),
                "below_n_trk": counts[fam] < res.n_trk,
            })
    res.distinct = len(counts)
    if counts:
        res.best_count = max(counts.values())
        res.witnesses = sorted((f for f, c in counts.items() if c == res.best_count), key=Family.key)
        res.sandwiches = [sandwich_witness(f, r, t) for f in res.witnesses]
    return res
