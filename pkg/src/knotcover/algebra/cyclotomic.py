"""Exact arithmetic in Q(zeta_p) = Q[x]/(Phi_p) for p prime, plus matrix rank.

Elements are tuples of p-1 Fractions (coordinates in the power basis
1, zeta, ..., zeta^(p-2)).  Rank computations are plain Gaussian
elimination over the field; matrices here stay small, exactness matters
more than speed.
"""

from __future__ import annotations

from fractions import Fraction

from .modp import is_prime


class CyclotomicField:
    """Q(zeta_p), p prime.  For p = 2 this degenerates to Q with zeta = -1."""

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.degree = p - 1

    def __repr__(self):
        return f"Q(zeta_{self.p})"

    def __eq__(self, other):
        return isinstance(other, CyclotomicField) and self.p == other.p

    def __hash__(self):
        return hash(("cyclotomic", self.p))

    def zero(self):
        return (Fraction(0),) * self.degree

    def one(self):
        return self.elem_from_ints([1] + [0] * (self.degree - 1))

    def elem_from_ints(self, coords):
        if len(coords) != self.degree:
            raise ValueError("wrong coordinate length")
        return tuple(Fraction(c) for c in coords)

    def zeta_power(self, e: int):
        """zeta^e reduced mod Phi_p: zeta^(p-1) = -(1 + zeta + ... + zeta^(p-2))."""
        e %= self.p
        v = [Fraction(0)] * self.degree
        if e < self.degree:
            v[e] = Fraction(1)
        else:
            for i in range(self.degree):
                v[i] = Fraction(-1)
        return tuple(v)

    def from_exponent_counts(self, counts) -> tuple:
        """Element sum_e counts[e] * zeta^e from integer counts indexed 0..p-1."""
        v = [Fraction(counts[i]) for i in range(self.degree)]
        if len(counts) == self.p and counts[self.p - 1]:
            c = counts[self.p - 1]
            for i in range(self.degree):
                v[i] -= c
        return tuple(v)

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def smul(self, k, a):
        k = Fraction(k)
        return tuple(k * x for x in a)

    def mul(self, a, b):
        n = self.degree
        prod = [Fraction(0)] * (2 * n - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        # reduce powers >= p-1 using zeta^p = 1 then Phi_p
        counts = [Fraction(0)] * self.p
        for e, c in enumerate(prod):
            counts[e % self.p] += c
        v = [counts[i] for i in range(n)]
        if counts[self.p - 1]:
            c = counts[self.p - 1]
            for i in range(n):
                v[i] -= c
        return tuple(v)

    def is_zero(self, a):
        return all(x == 0 for x in a)

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError
        # extended Euclid of a against Phi_p in Q[x]
        phi = [Fraction(1)] * self.p
        r0 = phi
        r1 = _trim([Fraction(x) for x in a])
        s0, s1 = [], [Fraction(1)]
        while r1:
            q, r = _q_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _q_sub(s0, _q_mul(q, s1))
        lead = r0[-1]
        inv_coeffs = [c / lead for c in s0]
        red = _q_mod(inv_coeffs, phi)
        out = list(red) + [Fraction(0)] * (self.degree - len(red))
        return tuple(out[:self.degree])

    def rank(self, rows: list[list[tuple]]) -> int:
        """Exact rank of a matrix with entries in this field."""
        if not rows:
            return 0
        for row in rows:
            for e in row:
                if len(e) != self.degree:
                    raise ValueError("mixed cyclotomic fields in one matrix")
        m, n = len(rows), len(rows[0])
        a = [list(r) for r in rows]
        rank = 0
        r = 0
        for c in range(n):
            piv = next((i for i in range(r, m) if not self.is_zero(a[i][c])), None)
            if piv is None:
                continue
            a[r], a[piv] = a[piv], a[r]
            inv = self.inv(a[r][c])
            a[r] = [self.mul(inv, v) for v in a[r]]
            for i in range(r + 1, m):
                if not self.is_zero(a[i][c]):
                    f = a[i][c]
                    a[i] = [self.sub(a[i][j], self.mul(f, a[r][j])) for j in range(n)]
            rank += 1
            r += 1
            if r == m:
                break
        return rank


def _trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _q_divmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        f = a[-1] / b[-1]
        d = len(a) - len(b)
        q[d] = f
        for i, v in enumerate(b):
            a[i + d] -= f * v
        _trim(a)
    return _trim(q), a


def _q_mod(a, b):
    return _q_divmod(list(a), b)[1]


def _q_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return _trim(out)


def _q_sub(a, b):
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, v in enumerate(a):
        out[i] += v
    for i, v in enumerate(b):
        out[i] -= v
    return _trim(out)
