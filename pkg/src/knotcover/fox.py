"""Fox free differential calculus and the Alexander polynomial.

The derivative D_i on the free group ring satisfies D_i(x_j) = delta_ij and
D_i(uv) = D_i(u) + u D_i(v), forcing D_i(x_j^-1) = -x_j^-1 delta_ij.
Abelianizing the prefixes (every generator to a power of t) turns the matrix
of partials of the relators into the presentation matrix of the knot module,
whose largest invariant factor is the Alexander polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd

from .algebra.modp import (fp_divmod, fp_from_int_poly, fp_gcd, fp_monic,
                           fp_mul, fp_snf, is_prime)
from .algebra.polyz import (Laurent, det_bareiss, zp_content, zp_gcd, zp_mul,
                            zp_primitive, zp_trim)
from .presentations import GroupPresentation, Word


def fox_derivative(w: Word, i: int) -> list[tuple[int, Word]]:
    """D_i of a free word as a formal sum of signed group elements.

    Returns [(sign, prefix), ...]: +1 terms are prefixes before a positive
    occurrence of x_i, -1 terms are prefix*x_i^-1 at inverse occurrences."""
    if i <= 0:
        raise IndexError("generator index must be positive")
    terms: list[tuple[int, Word]] = []
    for k, g in enumerate(w):
        if g == i:
            terms.append((1, w[:k]))
        elif g == -i:
            terms.append((-1, w[:k] + (-i,)))
    return terms


def _word_t_degree(w: Word, degrees: list[int]) -> int:
    return sum((1 if g > 0 else -1) * degrees[abs(g) - 1] for g in w)


def fox_entry(w: Word, i: int, degrees: list[int]) -> Laurent:
    """q* D_i(w): the derivative with every prefix sent to its t-power."""
    out = Laurent.zero()
    for sign, prefix in fox_derivative(w, i):
        out = out + Laurent(_word_t_degree(prefix, degrees), (sign,))
    return out


def jacobian(pres: GroupPresentation) -> list[list[Laurent]]:
    """Matrix [q* D_i(R_j)] over Z[t, 1/t]; rows = relators, columns =
    generators.  Requires infinite-cyclic abelianization."""
    degrees = pres.abelianization_degrees()
    return [[fox_entry(r, i + 1, degrees) for i in range(pres.num_generators)]
            for r in pres.relators]


def _minor_det(jac, rows, cols) -> Laurent:
    return det_bareiss([[jac[i][j] for j in cols] for i in rows])


def alexander_poly(pres: GroupPresentation) -> Laurent:
    """Alexander polynomial, canonical up to units of Z[t, 1/t]: computed as
    a one-column-deleted minor of the Jacobian, cross-checked against every
    other column of meridian degree."""
    r = pres.num_generators
    if r == 1:
        if any(pres.relators):
            raise ValueError("one-generator presentation with nontrivial relators")
        return Laurent.one()
    degrees = pres.abelianization_degrees()
    jac = jacobian(pres)
    s = len(jac)
    if s < r - 1:
        raise ValueError("too few relators; Jacobian rank below r-1")
    rows = list(range(r - 1))
    candidates = [j for j in range(r) if abs(degrees[j]) == 1]
    if not candidates:
        raise ValueError("no generator of meridian degree to delete")
    dets = []
    for j in candidates:
        cols = [c for c in range(r) if c != j]
        dets.append(_minor_det(jac, rows, cols).unit_normal())
    first = dets[0]
    for other in dets[1:]:
        if other != first:
            raise ValueError(
                f"column-deleted minors disagree beyond units: {first} vs {other}")
    if first.is_zero():
        raise ValueError("Jacobian minor vanished; rank below r-1")
    return first


def alexander_mod_p(delta: Laurent, p: int) -> list[int]:
    """Reduce a canonical Alexander polynomial mod p (coefficient list)."""
    return fp_from_int_poly(delta.poly(), p)


@dataclass(frozen=True)
class ModPAlexander:
    p: int
    delta_mod_p: tuple[int, ...]          # reduction of Delta(t), unit included
    invariant_factors: tuple[tuple[int, ...], ...]  # monic nonzero chain

    @property
    def largest_factor(self) -> list[int]:
        return list(self.invariant_factors[-1]) if self.invariant_factors else []

    def is_trivial(self) -> bool:
        return sum(1 for c in self.delta_mod_p if c) < 3


def alexander_modp(pres: GroupPresentation, p: int) -> ModPAlexander:
    """Invariant factors of the Jacobian over F_p[t] plus the reduction of
    the integer Alexander polynomial (which carries the unit)."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    delta = alexander_poly(pres)
    jac = jacobian(pres)
    fp_mat = [_jacobian_row_mod_p(row, p) for row in jac]
    factors = [f for f in fp_snf(fp_mat, p) if f]
    nonunit = tuple(tuple(_strip_t(f)) for f in factors
                    if len(_strip_t(f)) > 1)
    return ModPAlexander(p, tuple(alexander_mod_p(delta, p)), nonunit)


def _jacobian_row_mod_p(row: list[Laurent], p: int) -> list[list[int]]:
    """Reduce a Jacobian row mod p, shifting the whole row by a uniform
    t-power (a row operation) so every entry is an honest polynomial."""
    lows = [e.low for e in row if not e.is_zero()]
    shift = -min(min(lows), 0) if lows else 0
    out = []
    for e in row:
        if e.is_zero():
            out.append([])
        else:
            out.append(fp_from_int_poly([0] * (e.low + shift) + list(e.coeffs), p))
    return out


# ---------------------------------------------------------------------------
# reduction congruence (invariant factors commute with reduction mod p)


def _zp_gcd_full(a, b):
    """gcd in Z[t] including integer content."""
    if not a:
        return list(b)
    if not b:
        return list(a)
    c = gcd(zp_content(a), zp_content(b))
    g = zp_gcd(zp_primitive(a), zp_primitive(b))
    return [v * c for v in g]


@dataclass(frozen=True)
class CongruenceReport:
    knot: str | None
    p: int
    levels: tuple[int, ...]           # minor sizes checked
    ok: bool
    detail: str = ""


def check_congruence(pres: GroupPresentation, p: int,
                     name: str | None = None,
                     max_minor_count: int = 600) -> CongruenceReport:
    """Check that the gcd of k x k Jacobian minors commutes with reduction
    mod p, for every minor size k whose enumeration stays below
    max_minor_count choices of rows times columns."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    jac = jacobian(pres)
    s, r = len(jac), pres.num_generators
    levels = []
    for k in range(min(s, r) - (1 if s == r else 0), 0, -1):
        n_minors = _ncomb(s, k) * _ncomb(r, k)
        if n_minors <= max_minor_count:
            levels.append(k)
    checked = []
    for k in levels:
        g_int: list[int] = []
        g_mod: list[int] = []
        for rows in combinations(range(s), k):
            for cols in combinations(range(r), k):
                det = _minor_det(jac, rows, cols)
                g_int = _zp_gcd_full(g_int, det.poly())
                g_mod = fp_gcd(g_mod, fp_from_int_poly(det.poly(), p), p)
        lhs = fp_monic(fp_from_int_poly(g_int, p), p)
        lhs = _strip_t(lhs)
        rhs = _strip_t(g_mod)
        if lhs != rhs:
            return CongruenceReport(name, p, tuple(checked),
                                    False,
                                    f"size-{k} minors: gcd reduced {lhs} != {rhs}")
        checked.append(k)
    return CongruenceReport(name, p, tuple(checked), True)


def _strip_t(f):
    f = list(f)
    while f and f[0] == 0:
        f.pop(0)
    return f


def _ncomb(n, k):
    if k < 0 or k > n:
        return 0
    out = 1
    for i in range(k):
        out = out * (n - i) // (i + 1)
    return out


# ---------------------------------------------------------------------------
# structural properties of a knot polynomial


@dataclass(frozen=True)
class PropertyReport:
    at_one: bool          # Delta(1) = +-1
    palindromic: bool
    degree_ok: bool
    coeff_count_ok: bool

    @property
    def ok(self):
        return self.at_one and self.palindromic and self.degree_ok and self.coeff_count_ok


def check_props(delta: Laurent, crossing_count: int) -> PropertyReport:
    c = delta.unit_normal().poly()
    at_one = sum(c) in (1, -1)
    palindromic = c == c[::-1]
    degree_ok = len(c) - 1 <= max(crossing_count - 1, 0)
    nonzero = sum(1 for v in c if v)
    trivial = len(c) == 1 and c and abs(c[0]) == 1
    coeff_count_ok = trivial or nonzero >= 3
    return PropertyReport(at_one, palindromic, degree_ok, coeff_count_ok)


# ---------------------------------------------------------------------------
# closed-form families


def twist_knot_poly(k: int, l: int) -> Laurent:
    """Alexander polynomial of the double-twist knot J(k, l), l = 2n even."""
    if k == 0 or l == 0:
        raise ValueError("twist parameters must be nonzero")
    if l % 2 != 0:
        raise ValueError("second twist parameter must be even")
    n = l // 2
    if k % 2 == 0:
        m = k // 2
        return Laurent.make([n * m, 1 - 2 * m * n, n * m]).unit_normal()
    m = (k - 1) // 2
    if n > 0:
        end = m
        width = 2 * n
    else:
        end = m + 1
        width = -2 * n
    coeffs = [end] + [(1 + 2 * m) * (-1 if j % 2 else 1) for j in range(1, width)] + [end]
    return Laurent.make(coeffs).unit_normal()


def pretzel_poly(p: int, q: int, r: int) -> Laurent:
    """Alexander polynomial of the (p, q, r) pretzel knot, p, q, r odd."""
    if any(v % 2 == 0 for v in (p, q, r)):
        raise ValueError("pretzel parameters p, q, r must be odd")
    lam = p * q + q * r + r * p
    quarter = [Fraction(lam + 1, 4), Fraction(-2 * lam + 2, 4), Fraction(lam + 1, 4)]
    if any(v.denominator != 1 for v in quarter):
        raise ValueError(f"pretzel polynomial is not integral for (p,q,r)=({p},{q},{r})")
    return Laurent.make([int(v) for v in quarter]).unit_normal()


def torus_poly(p: int, q: int) -> Laurent:
    """Alexander polynomial of the (p, q) torus knot via exact division of
    (t^pq - 1)(t - 1) by (t^p - 1)(t^q - 1)."""
    if p < 2 or q < 2 or gcd(p, q) != 1:
        raise ValueError("torus parameters must be coprime and >= 2")

    def cyc(n):
        return [-1] + [0] * (n - 1) + [1]

    num = zp_mul(cyc(p * q), cyc(1))
    den = zp_mul(cyc(p), cyc(q))
    from .algebra.polyz import zp_div_exact
    return Laurent.make(zp_div_exact(num, den)).unit_normal()


def family_poly(family: str, *params: int) -> Laurent:
    if family == "twist":
        return twist_knot_poly(*params)
    if family == "pretzel":
        return pretzel_poly(*params)
    if family == "torus":
        return torus_poly(*params)
    raise ValueError(f"unknown family {family!r}")
