"""Exact integer polynomial and Laurent polynomial arithmetic.

Ordinary polynomials over Z are plain coefficient lists, index = degree,
normalized so the last entry is nonzero ([] is the zero polynomial).
Laurent polynomials carry an explicit lowest degree alongside such a list.

Everything here is exact; there is no floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd


def zp_trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def zp_add(a, b):
    n = max(len(a), len(b))
    out = [0] * n
    for i, v in enumerate(a):
        out[i] += v
    for i, v in enumerate(b):
        out[i] += v
    return zp_trim(out)


def zp_neg(a):
    return [-v for v in a]


def zp_sub(a, b):
    return zp_add(a, zp_neg(b))


def zp_scale(a, k):
    if k == 0:
        return []
    return [v * k for v in a]


def zp_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        if u:
            for j, v in enumerate(b):
                if v:
                    out[i + j] += u * v
    return zp_trim(out)


def zp_shift(a, k):
    """Multiply by t^k (k >= 0)."""
    if not a:
        return []
    return [0] * k + list(a)


def zp_eval(a, x):
    out = 0
    for c in reversed(a):
        out = out * x + c
    return out


def zp_eval_frac(a, x: Fraction) -> Fraction:
    out = Fraction(0)
    for c in reversed(a):
        out = out * x + c
    return out


def zp_deg(a):
    return len(a) - 1 if a else -1


def zp_content(a):
    g = 0
    for v in a:
        g = gcd(g, abs(v))
    return g


def zp_primitive(a):
    g = zp_content(a)
    if g <= 1:
        return list(a)
    return [v // g for v in a]


def zp_divmod_exact(a, b):
    """Division of a by b assuming the quotient has integer coefficients
    at every step (true when b is monic, or when b | a over Z)."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [0] * max(len(a) - len(b) + 1, 0)
    lb = b[-1]
    while len(a) >= len(b) and a:
        c, r = divmod(a[-1], lb)
        if r != 0:
            raise ValueError("inexact polynomial division")
        d = len(a) - len(b)
        q[d] = c
        for i, v in enumerate(b):
            a[i + d] -= c * v
        zp_trim(a)
    return zp_trim(q), a


def zp_div_exact(a, b):
    q, r = zp_divmod_exact(a, b)
    if r:
        raise ValueError("inexact polynomial division")
    return q


def zp_pseudo_rem(a, b):
    """Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b."""
    da, db = zp_deg(a), zp_deg(b)
    if db < 0:
        raise ZeroDivisionError
    a = list(a)
    lb = b[-1]
    while zp_deg(a) >= db:
        d = zp_deg(a) - db
        la = a[-1]
        a = zp_scale(a, lb)
        for i, v in enumerate(b):
            a[i + d] -= la * v
        zp_trim(a)
    return a


def zp_gcd(a, b):
    """Primitive gcd in Z[t] (subresultant-free, pseudo-remainder chain with
    primitive reduction; fine at the sizes seen here)."""
    a, b = zp_primitive(a), zp_primitive(b)
    if not a:
        return b
    if not b:
        return a
    ca = 1
    while b:
        r = zp_primitive(zp_pseudo_rem(a, b))
        a, b = b, r
    a = zp_primitive(a)
    if a and a[-1] < 0:
        a = zp_neg(a)
    return zp_scale(a, ca)


def int_det_bareiss(m: list[list[int]]) -> int:
    """Exact determinant of an integer matrix (fraction-free elimination)."""
    a = [list(row) for row in m]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        piv = next((i for i in range(k, n) if a[i][k] != 0), -1)
        if piv < 0:
            return 0
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def zp_resultant(a, b):
    """Resultant of a, b in Z[t] as the Sylvester-matrix determinant, so
    zp_resultant([-1, 1], [-2, 1]) == -1."""
    if not a or not b:
        return 0
    da, db = zp_deg(a), zp_deg(b)
    if da == 0:
        return a[0] ** db
    if db == 0:
        return b[0] ** da
    n = da + db
    rows = []
    fa = list(reversed(a))
    fb = list(reversed(b))
    for i in range(db):
        rows.append([0] * i + fa + [0] * (db - 1 - i))
    for i in range(da):
        rows.append([0] * i + fb + [0] * (da - 1 - i))
    assert all(len(r) == n for r in rows)
    return int_det_bareiss(rows)


@dataclass(frozen=True)
class Laurent:
    """Laurent polynomial over Z: coeffs[i] is the coefficient of t^(low+i).

    Normalized so coeffs is [] (zero) or has nonzero first and last entries.
    """

    low: int
    coeffs: tuple[int, ...]

    @staticmethod
    def make(coeffs, low=0) -> "Laurent":
        c = list(coeffs)
        lead_trim = 0
        while c and c[-1] == 0:
            c.pop()
        while c and c[0] == 0:
            c.pop(0)
            lead_trim += 1
        if not c:
            return Laurent(0, ())
        return Laurent(low + lead_trim, tuple(c))

    @staticmethod
    def zero() -> "Laurent":
        return Laurent(0, ())

    @staticmethod
    def one() -> "Laurent":
        return Laurent(0, (1,))

    @staticmethod
    def t(k=1) -> "Laurent":
        return Laurent(k, (1,))

    @staticmethod
    def const(c) -> "Laurent":
        return Laurent.make([c])

    def is_zero(self):
        return not self.coeffs

    def degree(self):
        """Span of degrees (top minus bottom); -1 for zero."""
        return len(self.coeffs) - 1 if self.coeffs else -1

    def top(self):
        return self.low + len(self.coeffs) - 1

    def __add__(self, other):
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        low = min(self.low, other.low)
        top = max(self.top(), other.top())
        out = [0] * (top - low + 1)
        for i, v in enumerate(self.coeffs):
            out[self.low - low + i] += v
        for i, v in enumerate(other.coeffs):
            out[other.low - low + i] += v
        return Laurent.make(out, low)

    def __neg__(self):
        return Laurent(self.low, tuple(-v for v in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if self.is_zero() or other.is_zero():
            return Laurent.zero()
        return Laurent.make(zp_mul(list(self.coeffs), list(other.coeffs)),
                            self.low + other.low)

    def eval_frac(self, x: Fraction) -> Fraction:
        if self.is_zero():
            return Fraction(0)
        v = zp_eval_frac(list(self.coeffs), x)
        return v * Fraction(x) ** self.low

    def poly(self):
        """Coefficient list of the unit-shifted ordinary polynomial."""
        return list(self.coeffs)

    def unit_normal(self) -> "Laurent":
        """Canonical form up to units of Z[t, 1/t]: lowest degree 0 and
        positive leading coefficient."""
        if self.is_zero():
            return Laurent.zero()
        c = list(self.coeffs)
        if c[-1] < 0:
            c = [-v for v in c]
        return Laurent(0, tuple(c))

    def equals_up_to_unit(self, other) -> bool:
        return self.unit_normal() == other.unit_normal()

    def nonzero_terms(self):
        return sum(1 for v in self.coeffs if v)

    def __str__(self):
        return laurent_str(self)


def laurent_str(f: Laurent, var="t") -> str:
    if f.is_zero():
        return "0"
    parts = []
    for i in range(len(f.coeffs) - 1, -1, -1):
        c = f.coeffs[i]
        if c == 0:
            continue
        e = f.low + i
        if e == 0:
            term = str(abs(c))
        else:
            base = var if e == 1 else f"{var}^{e}"
            term = base if abs(c) == 1 else f"{abs(c)}*{base}"
        if not parts:
            parts.append(term if c > 0 else "-" + term)
        else:
            parts.append(("+ " if c > 0 else "- ") + term)
    return " ".join(parts)


def _mat_shift_rows(m):
    """Shift each row of a Laurent matrix down to low degree 0.

    Returns (matrix of coefficient lists, total degree shift)."""
    rows = []
    total = 0
    for row in m:
        lows = [f.low for f in row if not f.is_zero()]
        if not lows:
            rows.append([[] for _ in row])
            continue
        s = min(lows)
        total += s
        shifted = []
        for f in row:
            if f.is_zero():
                shifted.append([])
            else:
                shifted.append(zp_shift(list(f.coeffs), f.low - s))
        rows.append(shifted)
    return rows, total


def det_bareiss(m: list[list[Laurent]]) -> Laurent:
    """Exact determinant of a square Laurent-polynomial matrix by
    fraction-free (Bareiss) elimination; t-units are factored out of the
    rows first to keep degrees small."""
    n = len(m)
    if n == 0:
        return Laurent.one()
    for row in m:
        if len(row) != n:
            raise ValueError("matrix is not square")
    a, shift = _mat_shift_rows(m)
    sign = 1
    prev = [1]
    for k in range(n - 1):
        piv = -1
        best = None
        for i in range(k, n):
            if a[i][k]:
                d = zp_deg(a[i][k])
                if best is None or d < best:
                    best, piv = d, i
        if piv < 0:
            return Laurent.zero()
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = zp_sub(zp_mul(a[i][j], a[k][k]), zp_mul(a[i][k], a[k][j]))
                a[i][j] = zp_div_exact(num, prev) if num else []
            a[i][k] = []
        prev = a[k][k]
    det = a[n - 1][n - 1]
    if sign < 0:
        det = zp_neg(det)
    return Laurent.make(det, shift)


def resultant(f: Laurent, g: Laurent) -> int:
    """Resultant of the unit-shifted ordinary polynomial parts of f and g."""
    if f.is_zero() or g.is_zero():
        raise ValueError("resultant of the zero polynomial")
    return zp_resultant(f.poly(), g.poly())
