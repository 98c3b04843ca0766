"""Self-check suites: each returns records with an ``ok`` flag and enough
detail to see what was compared."""

import random
from collections import Counter
from itertools import product

from qspace import subspace as sp
from qspace.errors import ValidationError
from qspace.family import build_F_X_k, build_F_star_X_k
from qspace.gfq import SUPPORTED, field_new
from qspace.qbinom import check_identities, intersection_count
from qspace.search import extremal_report
from qspace.simplex import canonical_x, count_simplices, deletion_counts, lemma23_step_counts


def field_axioms(q):
    f = field_new(q)
    els = range(q)
    ok = True
    for a, b in product(els, els):
        ok &= f.add(a, b) == f.add(b, a) and f.mul(a, b) == f.mul(b, a)
        ok &= f.add(a, f.neg(a)) == 0
        for c in els:
            ok &= f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
            ok &= f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
            ok &= f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
    for a in els:
        ok &= f.add(a, 0) == a and f.mul(a, 1) == a
        if a:
            ok &= f.mul(a, f.inv(a)) == 1
    return {"suite": "field", "q": q, "ok": bool(ok)}


def lemma1_mismatches(field, n, a, check_construction=True, by_dim=None):
    """(j, ell, counted, formula) for every disagreement with the intersection-count formula."""
    if by_dim is None:
        by_dim = {j: list(sp.enumerate_subspaces(field, n, j)) for j in range(n + 1)}
    bad = []
    i = a.dim
    for j in range(n + 1):
        counts = Counter(sp.meet_dim(a, b) for b in by_dim[j])
        for ell in range(j + 1):
            want = intersection_count(n, i, j, ell, field.q)
            if counts[ell] != want:
                bad.append((j, ell, counts[ell], want))
            elif check_construction and want:
                built = list(sp.enumerate_with_intersection(a, j, ell))
                if len(built) != want or len(set(built)) != want or any(sp.meet_dim(a, b) != ell for b in built):
                    bad.append((j, ell, len(set(built)), want))
    return bad


def lemma1(q, n, samples=None, seed=0):
    """Every subspace A (or ``samples`` random ones) against every (j, ell)."""
    field = field_new(q)
    by_dim = {j: list(sp.enumerate_subspaces(field, n, j)) for j in range(n + 1)}
    if samples is None:
        subjects = [a for j in range(n + 1) for a in by_dim[j]]
    else:
        rng = random.Random(seed)
        subjects = [sp.random_subspace(field, n, rng.randrange(n + 1), rng) for _ in range(samples)]
    bad = []
    for a in subjects:
        bad.extend((a.encode(),) + m for m in lemma1_mismatches(field, n, a, by_dim=by_dim))
    return {"suite": "lemma1", "q": q, "n": n, "subspaces": len(subjects), "mismatches": [list(b) for b in bad], "ok": not bad}


def prop22(max_m=12, qs=(2, 3, 4, 5)):
    failed = []
    checked = 0
    for q in qs:
        for m in range(1, max_m + 1):
            for i in range(1, m + 1):
                rep = check_identities(m, i, q, raise_on_failure=False)
                checked += 1
                if not rep.ok:
                    failed.append([m, i, q, [k for k, v in rep.checks.items() if not v]])
    return {"suite": "prop22", "max_m": max_m, "qs": list(qs), "checked": checked, "failed": failed, "ok": not failed}


def projection(q, n, m):
    """Every k-subspace projects onto (X, Y) with fibers of size q^{(m-ell)(k-ell)}."""
    field = field_new(q)
    x = sp.coordinate(field, n, range(m))
    y = sp.complement(x)
    bad = []
    for k in range(n + 1):
        fibers = Counter(sp.project(f, x, y) for f in sp.enumerate_subspaces(field, n, k))
        for (c, h), size in fibers.items():
            want = q ** ((m - c.dim) * (k - c.dim))
            if size != want:
                bad.append([k, c.encode(), h.encode(), size, want])
        for ell in range(min(m, k) + 1):
            pairs = sum(1 for c, h in fibers if c.dim == ell)
            want = intersection_count(n, m, k, ell, q) // q ** ((m - ell) * (k - ell))
            if pairs != want:
                bad.append([k, ell, pairs, want])
    return {"suite": "projection", "q": q, "n": n, "m": m, "failures": bad, "ok": not bad}


def steps(n, k, q, r, t, workers=1, guard_limit=1.0):
    rep = lemma23_step_counts(n, k, q, r, t, workers=workers, guard_limit=guard_limit)
    rec = {"suite": "steps"}
    rec.update(rep.to_record())
    return rec


def _fx_pair(n, k, q, r, t):
    x = canonical_x(field_new(q), n, r, t)
    return build_F_X_k(x, k), build_F_star_X_k(x, k)


def fstar(n, k, q, r, t, workers=1):
    full, star = _fx_pair(n, k, q, r, t)
    a = count_simplices(full, r, t, workers=workers).count
    b = count_simplices(star, r, t, workers=workers).count
    return {"suite": "fstar", "n": n, "k": k, "q": q, "r": r, "t": t,
            "full_count": str(a), "star_count": str(b), "ok": a == b}


def deletion(n, k, q, r, t, workers=1):
    _, star = _fx_pair(n, k, q, r, t)
    base = count_simplices(star, r, t, workers=workers).count
    after = deletion_counts(star, r, t, workers=workers)
    worst = max(after) if after else None
    return {"suite": "deletion", "n": n, "k": k, "q": q, "r": r, "t": t, "members": len(star),
            "count": str(base), "max_after_deletion": None if worst is None else str(worst),
            "ok": all(c < base for c in after)}


def lemma24(n, k, q, r, t, seed=0, iterations=20, workers=1):
    """Pairwise meets of found maximal families respect the level forced by tau_t."""
    mode = "exhaustive" if r == 2 else "sampled"
    res = extremal_report(n, k, q, r, t, mode=mode, seed=seed, iterations=iterations, workers=workers)
    return {"suite": "lemma24", "n": n, "k": k, "q": q, "r": r, "t": t, "mode": mode,
            "families": res.distinct, "taus": sorted(res.taus.items()), "ok": res.pairwise_level_ok}


SUITES = ("field", "lemma1", "prop22", "projection", "steps", "fstar", "deletion", "lemma24", "all")


def run_suite(name, q=2, n=None, k=None, r=2, t=1, m=None, workers=1, seed=0, guard_limit=1.0):
    """Records for one suite; unspecified parameters fall back to small defaults."""
    if name not in SUITES:
        raise ValidationError(f"unknown suite {name!r}; expected one of {SUITES}", param="suite")
    if name == "all":
        out = []
        for s in SUITES[:-1]:
            out.extend(run_suite(s, q=q, n=n, k=k, r=r, t=t, m=m, workers=workers, seed=seed, guard_limit=guard_limit))
        return out
    if name == "field":
        return [field_axioms(x) for x in SUPPORTED] if q is None else [field_axioms(q)]
    if name == "lemma1":
        return [lemma1(q, 4 if n is None else n)]
    if name == "prop22":
        return [prop22(12 if m is None else m)]
    if name == "projection":
        nn = 4 if n is None else n
        return [projection(q, nn, (nn // 2) if m is None else m)]
    if name == "lemma24":
        nn = 4 if n is None else n
        return [lemma24(nn, 2 if k is None else k, q, r, t, seed=seed, workers=workers)]
    nn = 6 if n is None else n
    kk = 3 if k is None else k
    if name == "steps":
        return [steps(nn, kk, q, r, t, workers=workers, guard_limit=guard_limit)]
    if name == "fstar":
        return [fstar(nn, kk, q, r, t, workers=workers)]
    return [deletion(nn, kk, q, r, t, workers=workers)]
