"""Arithmetic in GF(q) for the small prime powers used at desk scale.

Elements are integer codes in ``[0, q)``.  For q = p^e with e > 1 the code
packs the coefficients of the polynomial representative in base p, lowest
degree first: code ``c0 + c1*p + c2*p**2 + ...`` stands for
``c0 + c1*x + c2*x**2 + ...`` modulo the fixed irreducible polynomial below.
"""

from functools import lru_cache

from qspace.errors import DivisionByZero, UnsupportedCardinality

SUPPORTED = (2, 3, 4, 5, 7, 8, 9, 11, 13, 16)

# Monic irreducible moduli, coefficients lowest degree first (leading 1 omitted).
#   GF(4):  x^2 + x + 1
#   GF(8):  x^3 + x + 1
#   GF(9):  x^2 + 1
#   GF(16): x^4 + x + 1
IRREDUCIBLE = {
    4: (1, 1),
    8: (1, 1, 0),
    9: (1, 0),
    16: (1, 1, 0, 0),
}


def _factor_prime_power(q):
    for p in range(2, q + 1):
        if q % p == 0:
            e, m = 0, q
            while m % p == 0:
                m //= p
                e += 1
            return (p, e) if m == 1 else None
    return None


class FieldCtx:
    """Immutable GF(q) context with full operation tables."""

    __slots__ = ("q", "p", "e", "modulus", "add_table", "mul_table", "neg_table", "inv_table")

    def __init__(self, q):
        if q not in SUPPORTED:
            raise UnsupportedCardinality(f"q={q} is not a supported prime power {SUPPORTED}", param="q")
        p, e = _factor_prime_power(q)
        self.q, self.p, self.e = q, p, e
        self.modulus = IRREDUCIBLE.get(q, ())
        add = [[self.encode(self._padd(self.decode(a), self.decode(b))) for b in range(q)] for a in range(q)]
        mul = [[self.encode(self._pmul(self.decode(a), self.decode(b))) for b in range(q)] for a in range(q)]
        self.add_table = tuple(tuple(row) for row in add)
        self.mul_table = tuple(tuple(row) for row in mul)
        self.neg_table = tuple(add[a].index(0) for a in range(q))
        inv = [None] * q
        for a in range(1, q):
            inv[a] = mul[a].index(1)
        self.inv_table = tuple(inv)

    # -- encoding ---------------------------------------------------------

    def decode(self, code):
        """Code -> tuple of e base-p coefficients, lowest degree first."""
        coeffs = []
        for _ in range(self.e):
            code, c = divmod(code, self.p)
            coeffs.append(c)
        return tuple(coeffs)

    def encode(self, coeffs):
        code = 0
        for c in reversed(coeffs):
            code = code * self.p + c
        return code

    def _padd(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def _pmul(self, a, b):
        p, e = self.p, self.e
        prod = [0] * (2 * e - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] = (prod[i + j] + x * y) % p
        # reduce using x^e = -(modulus)
        for deg in range(len(prod) - 1, e - 1, -1):
            c = prod[deg]
            if c:
                prod[deg] = 0
                for i, m in enumerate(self.modulus):
                    prod[deg - e + i] = (prod[deg - e + i] - c * m) % p
        return tuple(prod[:e])

    # -- operations ---------------------------------------------------------

    def add(self, a, b):
        return self.add_table[a][b]

    def sub(self, a, b):
        return self.add_table[a][self.neg_table[b]]

    def mul(self, a, b):
        return self.mul_table[a][b]

    def neg(self, a):
        return self.neg_table[a]

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of 0 in GF(%d)" % self.q, param="a")
        return self.inv_table[a]

    def div(self, a, b):
        return self.mul_table[a][self.inv(b)]

    def elements(self):
        return range(self.q)

    def __repr__(self):
        return f"GF({self.q})"

    def __reduce__(self):
        return (field_new, (self.q,))


@lru_cache(maxsize=None)
def field_new(q):
    """Return the shared context for GF(q)."""
    return FieldCtx(q)
