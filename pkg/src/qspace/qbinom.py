"""Exact Gaussian binomial coefficients and their standard identities.

Counts are plain ``int`` (arbitrary precision); bound formulas that divide use
:class:`fractions.Fraction`.  Nothing here touches floating point.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from qspace.errors import IdentityViolation, InvalidDimension

BigCount = int
BigRatio = Fraction


@lru_cache(maxsize=65536)
def gauss_binom(a, b, q):
    """[a, b]_q as an exact integer; 1 for b == 0, 0 for b < 0 or b > a."""
    if b < 0 or b > a:
        return 0
    value = 1
    for i in range(b):
        # value is [a, i]; stepping to [a, i+1] must divide exactly
        num = value * (q ** (a - i) - 1)
        den = q ** (i + 1) - 1
        value, rem = divmod(num, den)
        if rem:
            raise IdentityViolation(f"non-integral step computing [{a},{b}]_{q}", param="b")
    return value


def intersection_count(n, i, j, ell, q):
    """Number of j-subspaces meeting a fixed i-subspace of F_q^n in exactly ell dimensions."""
    if ell < 0 or ell > min(i, j):
        return 0
    return q ** ((i - ell) * (j - ell)) * gauss_binom(i, ell, q) * gauss_binom(n - i, j - ell, q)


@dataclass
class IdentityReport:
    m: int
    i: int
    q: int
    checks: dict = field(default_factory=dict)

    @property
    def ok(self):
        return all(self.checks.values())


def check_identities(m, i, q, raise_on_failure=True):
    """Evaluate the recurrence, ratio form, and the three estimate families for [m, i]."""
    if not 1 <= i <= m:
        raise InvalidDimension(f"need 1 <= i={i} <= m={m}", param="i")
    g = gauss_binom
    ratio = Fraction(q**m - 1, q**i - 1)
    inv_ratio = 1 / ratio
    strict = i < m
    qp = lambda e: Fraction(q) ** e  # noqa: E731

    rep = IdentityReport(m, i, q)
    c = rep.checks
    c["i.pascal"] = g(m, i, q) == g(m - 1, i - 1, q) + q**i * g(m - 1, i, q)
    c["i.ratio"] = g(m, i, q) * (q**i - 1) == (q**m - 1) * g(m - 1, i - 1, q)
    if strict:
        c["ii.ratio_bounds"] = qp(m - i) < ratio < qp(m - i + 1)
        c["ii.inverse_bounds"] = qp(i - m - 1) < inv_ratio < qp(i - m)
    else:
        c["ii.ratio_bounds"] = qp(m - i) <= ratio < qp(m - i + 1)
        c["ii.inverse_bounds"] = qp(i - m - 1) < inv_ratio <= qp(i - m)
    c["iii.weak"] = q ** (i * (m - i)) <= g(m, i, q) < q ** (i * (m - i + 1))
    if strict:
        c["iii.strict_lower"] = q ** (i * (m - i)) < g(m, i, q)
    c["iv"] = ratio < 2 * qp(m - i)

    if raise_on_failure and not rep.ok:
        failed = [k for k, v in c.items() if not v]
        raise IdentityViolation(f"[{m},{i}]_{q}: failed {failed}", param="m")
    return rep
