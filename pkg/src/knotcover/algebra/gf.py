"""Finite field extensions F_p[t]/(g) with exact arithmetic.

Elements are coefficient tuples of length d = deg g over 0..p-1.  The
class of t is the canonical generator; when g is an irreducible factor of
an Alexander polynomial mod p this realizes the root alpha directly.
"""

from __future__ import annotations

from . import modp
from .modp import fp_is_irreducible, fp_mod, fp_mul, fp_trim, is_prime


class GF:
    """Handle for F_{p^d} = F_p[t]/(modulus)."""

    def __init__(self, p: int, modulus: list[int]):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        modulus = modp.fp_monic([c % p for c in modulus], p)
        if len(modulus) < 2:
            raise ValueError("modulus must have degree >= 1")
        if not fp_is_irreducible(modulus, p):
            raise ValueError("modulus is not irreducible")
        self.p = p
        self.modulus = modulus
        self.d = len(modulus) - 1
        self.order = p ** self.d

    def __repr__(self):
        return f"GF({self.p}^{self.d})"

    def __eq__(self, other):
        return (isinstance(other, GF) and self.p == other.p
                and self.modulus == other.modulus)

    def __hash__(self):
        return hash((self.p, tuple(self.modulus)))

    # -- element constructors ------------------------------------------------

    def elem(self, coeffs) -> tuple[int, ...]:
        if isinstance(coeffs, int):
            coeffs = [coeffs]
        c = fp_mod([v % self.p for v in coeffs], self.modulus, self.p)
        return tuple(c) + (0,) * (self.d - len(c))

    def zero(self):
        return (0,) * self.d

    def one(self):
        return self.elem(1)

    def gen(self):
        """The class of t (the root alpha when modulus divides Delta mod p)."""
        return self.elem([0, 1])

    def from_int_poly(self, coeffs):
        return self.elem([c % self.p for c in coeffs])

    def elements(self):
        """All p^d field elements, lexicographic in coordinates."""
        p, d = self.p, self.d
        for n in range(self.order):
            v = []
            m = n
            for _ in range(d):
                v.append(m % p)
                m //= p
            yield tuple(v)

    # -- arithmetic ----------------------------------------------------------

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple((-x) % p for x in a)

    def mul(self, a, b):
        c = fp_mod(fp_mul(fp_trim(list(a)), fp_trim(list(b)), self.p),
                   self.modulus, self.p)
        return tuple(c) + (0,) * (self.d - len(c))

    def smul(self, k, a):
        p = self.p
        k %= p
        return tuple(x * k % p for x in a)

    def inv(self, a):
        if not any(a):
            raise ZeroDivisionError("inverse of zero field element")
        # extended Euclid in F_p[t]
        p = self.p
        r0, r1 = list(self.modulus), fp_trim(list(a))
        s0, s1 = [], [1]
        while r1:
            q, r = modp.fp_divmod(r0, r1, p)
            r0, r1 = r1, r
            s0, s1 = s1, modp.fp_sub(s0, fp_mul(q, s1, p), p)
        inv_lead = pow(r0[-1], p - 2, p)
        c = fp_mod(modp.fp_scale(s0, inv_lead, p), self.modulus, p)
        return tuple(c) + (0,) * (self.d - len(c))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        if e < 0:
            return self.pow(self.inv(a), -e)
        out = self.one()
        base = a
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def is_zero(self, a):
        return not any(a)

    def mult_order(self, a) -> int:
        """Exact multiplicative order, by stripping prime factors of p^d - 1."""
        if self.is_zero(a):
            raise ValueError("zero has no multiplicative order")
        n = self.order - 1
        order = n
        for q in _prime_factors(n):
            while order % q == 0 and self.pow(a, order // q) == self.one():
                order //= q
        assert self.pow(a, order) == self.one()
        return order

    # -- linear algebra ------------------------------------------------------

    def nullspace(self, rows: list[list[tuple]]) -> list[list[tuple]]:
        """Basis of the right null space of a matrix with GF entries."""
        m = len(rows)
        n = len(rows[0]) if m else 0
        a = [list(r) for r in rows]
        pivots = []
        r = 0
        for c in range(n):
            piv = next((i for i in range(r, m) if not self.is_zero(a[i][c])), None)
            if piv is None:
                continue
            a[r], a[piv] = a[piv], a[r]
            inv = self.inv(a[r][c])
            a[r] = [self.mul(inv, v) for v in a[r]]
            for i in range(m):
                if i != r and not self.is_zero(a[i][c]):
                    f = a[i][c]
                    a[i] = [self.sub(a[i][j], self.mul(f, a[r][j])) for j in range(n)]
            pivots.append(c)
            r += 1
            if r == m:
                break
        free = [c for c in range(n) if c not in pivots]
        basis = []
        for fc in free:
            v = [self.zero()] * n
            v[fc] = self.one()
            for ri, pc in enumerate(pivots):
                v[pc] = self.neg(a[ri][fc])
            basis.append(v)
        return basis

    def rank(self, rows: list[list[tuple]]) -> int:
        m = len(rows)
        n = len(rows[0]) if m else 0
        return (n - len(self.nullspace(rows))) if m else 0

    def fp_span_dim(self, vectors: list[tuple]) -> int:
        """Dimension over F_p of the span of field elements viewed as
        vectors in F_p^d."""
        p = self.p
        basis: list[list[int]] = []
        for v in vectors:
            w = list(v)
            for b in basis:
                lead = next(i for i, x in enumerate(b) if x)
                if w[lead]:
                    f = w[lead] * pow(b[lead], p - 2, p) % p
                    w = [(x - f * y) % p for x, y in zip(w, b)]
            if any(w):
                basis.append(w)
        return len(basis)


def field_from_factor(p: int, factor: list[int]) -> GF:
    """Field F_p(alpha) for alpha the class of t modulo an irreducible
    factor of an Alexander polynomial mod p."""
    return GF(p, factor)


def _prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out
