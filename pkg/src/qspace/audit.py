"""Exact evaluation of the upper-bound chains used to rule out non-extremal
families, compared against the exact lower bound on n_{t+r,k}.

Every quantity is an ``int`` or ``Fraction``; the log_q estimates are kept as
integer exponents and compared after exponentiation.
"""

from dataclasses import dataclass
from fractions import Fraction

from qspace.errors import RangeViolation, ValidationError
from qspace.qbinom import gauss_binom, intersection_count
from qspace.simplex import lower_bound_log_exponent, lower_bound_value

CHAIN_IDS = ("lemma2.6", "lemma3.3-sub2.2", "lemma3.4", "lemma3.5")
BOUND_IDS = CHAIN_IDS + ("prop3.2",)


def _g(a, b, q):
    return gauss_binom(a, b, q)


FORMS = ("stated", "derived")


def _cross_value(k, ell, s, t, n, q, form="stated"):
    den = _g(s, ell - 1, q)
    if den == 0:
        return None
    # the counting argument fixes span(X, H) of dimension >= s + ell - t, which
    # leaves [n - s + t - ell, k - s + t - ell] completions; "stated" keeps n - k on top
    top = n - k + t - ell if form == "stated" else n - s + t - ell
    return Fraction(_g(k, ell - 1, q) * _g(k, s, q) * _g(top, k - s + t - ell, q), den)


def _check_form(form):
    if form not in FORMS:
        raise ValidationError(f"unknown bound form {form!r}; expected one of {FORMS}", param="form")


def cross_intersecting_bound(k, ell, s, t, n, q, form="stated"):
    """Upper bound on each member family of an m-cross s-intersecting system with tau_t >= ell."""
    _check_form(form)
    if ell < t + 1:
        raise RangeViolation(f"need ell >= t+1 (ell={ell}, t={t})", param="ell")
    if n < 2 * k - s:
        raise RangeViolation(f"need n >= 2k-s (n={n}, k={k}, s={s})", param="n")
    value = _cross_value(k, ell, s, t, n, q, form)
    if value is None:
        raise RangeViolation(f"[s, ell-1] = [{s},{ell - 1}] vanishes; bound undefined", param="s")
    return value


def _family_value(k, r, t, n, q, form="stated"):
    top = n - k - 1 if form == "stated" else n - r - t + 1
    return Fraction(
        _g(k, t, q) * _g(k, r + t - 2, q) * _g(top, k - r - t + 1, q),
        _g(r + t - 2, t, q),
    )


def family_size_bound(k, r, t, n, q, form="stated"):
    """Size bound for r-wise t-intersecting families with tau_t = t+1."""
    _check_form(form)
    if r < 2 or t < 1:
        raise ValidationError(f"need r >= 2, t >= 1 (r={r}, t={t})", param="r")
    if n < 2 * k - r - t + 2:
        raise RangeViolation(f"need n >= 2k-r-t+2 (n={n}, k={k})", param="n")
    return _family_value(k, r, t, n, q, form)


def _tail_exponent(n, k, r, t):
    # log_q estimate of (family_size_bound)^r used in every tau_t = t+1 chain
    return r * (t * (k - t + 1) - t * (r - 2) + (r + t - 2) * (k - r - t + 1)) + r * (
        (k - r - t + 1) * (n - 2 * k + r + t - 1)
    )


@dataclass(frozen=True)
class BoundReport:
    named_bound: str
    n: int
    k: int
    r: int
    t: int
    q: int
    lhs: Fraction
    rhs: Fraction
    strict: bool
    holds: bool
    m: int = None
    basis: str = "exact"
    upper_exponent: int = None
    upper_relaxation_ok: bool = None
    lower_exponent: int = None
    lower_relaxation_ok: bool = None
    note: str = ""

    def to_record(self):
        rec = {
            "named_bound": self.named_bound,
            "n": self.n, "k": self.k, "r": self.r, "t": self.t, "q": self.q,
            "m": self.m,
            "lhs": str(self.lhs), "rhs": str(self.rhs),
            "direction": "<" if self.strict else "<=",
            "holds": self.holds,
            "basis": self.basis,
            "upper_exponent": self.upper_exponent,
            "upper_relaxation_ok": self.upper_relaxation_ok,
            "lower_exponent": self.lower_exponent,
            "lower_relaxation_ok": self.lower_relaxation_ok,
            "note": self.note,
        }
        return rec


def threshold_audit(n, k, r, t, q, form="stated"):
    """One report per chain; the tau_t = t+1 lemmas report every m in range."""
    _check_form(form)
    if r < 2 or t < 1 or k < 1 or n < 1:
        raise ValidationError("need r >= 2, t >= 1, k >= 1, n >= 1", param="r")
    lb = lower_bound_value(n, k, q, r, t)
    lower_exp = lower_bound_log_exponent(n, k, r, t)
    lower_ok = Fraction(q) ** lower_exp <= lb
    notes = []
    if n <= 2 * k:
        notes.append("n <= 2k: lower bound evaluated outside its hypothesis")
    if form == "derived":
        notes.append("derived size bounds")
    base_note = "; ".join(notes)
    tail = _family_value(k, r, t, n, q, form) if _g(r + t - 2, t, q) else None
    tail_exp = _tail_exponent(n, k, r, t)
    reports = []

    def chain(name, factor, factor_exp, power_of_tail=True, m=None, degenerate_note=""):
        note = "; ".join(x for x in (base_note, degenerate_note) if x)
        upper_exp = factor_exp + (tail_exp if power_of_tail else 0)
        if factor is None:
            lhs = Fraction(q) ** upper_exp
            basis, relax = "log-relaxation", None
        else:
            lhs = factor * tail**r if power_of_tail else factor
            basis = "exact"
            relax = lhs <= Fraction(q) ** upper_exp
        reports.append(BoundReport(
            named_bound=name, n=n, k=k, r=r, t=t, q=q, lhs=lhs, rhs=lb, strict=True,
            holds=lhs < lb, m=m, basis=basis, upper_exponent=upper_exp,
            upper_relaxation_ok=relax, lower_exponent=lower_exp, lower_relaxation_ok=lower_ok,
            note=note,
        ))

    # tau_t >= t+2: |F| bounded through the cross-intersecting lemma, N <= |F|^{r+1}
    s = 2 * r + t - 4
    ell = t + 2
    single = _cross_value(k, ell, s, t, n, q, form)
    exp26 = (r + 1) * (
        (t + 1) * (k - t - 1) - (t + 1) * (2 * r - 5)
        + (2 * r + t - 4) * (k - 2 * r - t + 5)
        + (k - 2 * r - t + 2) * (n - 2 * k + 2 * r + t - 3)
    )
    chain(
        "lemma2.6",
        None if single is None else single ** (r + 1),
        exp26,
        power_of_tail=False,
        degenerate_note="" if single is not None else f"[s, ell-1] = [{s},{ell - 1}] vanishes; log_q estimate used",
    )

    if tail is not None:
        # tau_t = t+1, F' bounded, N <= |F'| |F|^r
        f22 = _g(k, r + t - 2, q) * q ** (2 * t) * _g(n - r - t, k - r - t, q)
        e22 = (r + t - 2) * (k - r - t + 3) + 2 * t + (k - r - t) * (n - k + 1)
        chain("lemma3.3-sub2.2", Fraction(f22), e22)

        for m in range(t + r + 1, k + 2):
            f34 = _g(t, t - 1, q) * q ** (t * (m - t)) * _g(n - m + 1, k - m + 1, q)
            e34 = 2 * (t - 1) + t * (m - t) + (k - m + 1) * (n - k + 1)
            chain("lemma3.4", Fraction(f34), e34, m=m)

        for m in range(t + 1, t + r):
            f35 = (_g(m, m - 1, q) * _g(k - m + 1, 1, q) * _g(k - m + 1, r + t - m, q)
                   * _g(n - r - t - 1, k - r - t, q))
            e35 = 2 * (m - 1) + (k - m + 1) + (r + t - m) * (k - r - t + 2) + (k - r - t) * (n - k)
            chain("lemma3.5", Fraction(f35), e35, m=m)

    return reports


def family_size_report(n, k, r, t, q):
    """Compare |F_{X,k}| (dim X = r+t) with the size bound in both forms."""
    if r < 2 or t < 1:
        raise ValidationError(f"need r >= 2, t >= 1 (r={r}, t={t})", param="r")
    mx = r + t
    if not mx <= k + 1 <= n + 1:
        raise RangeViolation(f"need r+t <= k+1 <= n+1 (r+t={mx}, k={k}, n={n})", param="k")
    bound = family_size_bound(k, r, t, n, q)
    derived = family_size_bound(k, r, t, n, q, form="derived")
    size = Fraction(intersection_count(n, mx, k, mx - 1, q) + intersection_count(n, mx, k, mx, q))
    note = f"derived bound {derived}: {'holds' if size <= derived else 'fails'}"
    return BoundReport(
        named_bound="prop3.2", n=n, k=k, r=r, t=t, q=q, lhs=size, rhs=bound,
        strict=False, holds=size <= bound, basis="exact", note=note,
    )


def general_threshold(k, r, t):
    """n from which the chains are claimed for every r and t."""
    return 3 * k * r * r + 3 * k * r * t


def pair_threshold(k):
    """Smaller claimed threshold for the case r = 2, t = 1."""
    return 2 * k + 9
