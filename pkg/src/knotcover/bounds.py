"""Degree bounds for the covers, good-prime search, and the determinant
coefficient bound underlying them.

All bounds are exact big integers; the regular-cover bound 4^(2c^2 - c)
overflows machine words already at c = 4.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra.modp import is_prime
from .algebra.polyz import Laurent, det_bareiss
from .fox import alexander_mod_p


@dataclass(frozen=True)
class IndexBounds:
    crossing_count: int
    regular: int            # bound for the kernel cover degree
    irregular: int          # bound for the multiplier-preimage cover degree
    regular_coarse: int     # 2^(4c^2) form
    irregular_coarse: int   # 2^(2c^2) form


def cover_index_bounds(crossing_count: int) -> IndexBounds:
    """Exact values of the degree bounds 4^(2c^2-c) and 4^(c^2-2c), plus the
    coarser powers of two quoted alongside them."""
    c = crossing_count
    if c < 3:
        raise ValueError("no nontrivial knot has fewer than 3 crossings")
    return IndexBounds(c,
                       4 ** (2 * c * c - c),
                       4 ** (c * c - 2 * c),
                       2 ** (4 * c * c),
                       2 ** (2 * c * c))


def _next_prime(n: int) -> int:
    n = max(n, 2)
    while not is_prime(n):
        n += 1
    return n


def _nontrivial_mod(delta: Laurent, p: int) -> bool:
    """Nontrivial mod p means not a unit times a power of t, i.e. at least
    two nonzero coefficients survive; exactly then a nonzero root exists in
    some extension.  (A reduction can drop to two nonzero coefficients and
    still be nontrivial, e.g. 2t^2 + 2 mod 3.)"""
    reduced = alexander_mod_p(delta, p)
    return sum(1 for c in reduced if c) >= 2


@dataclass(frozen=True)
class GoodPrime:
    p: int
    window: tuple[int, int]        # Bertrand interval [4^(c-1), 2*4^(c-1)-2]
    window_prime: int              # a prime inside it, checked nontrivial
    threshold: int                 # 4^(c-2): nontriviality is guaranteed from here


def smallest_good_prime(delta: Laurent, crossing_count: int) -> GoodPrime:
    """Least prime keeping the Alexander polynomial nontrivial mod p.

    Also certifies the existence window: a prime in [4^(c-1), 2*4^(c-1)-2]
    (Bertrand) at which reduction is still nontrivial, and that the found
    prime does not exceed it."""
    if delta.unit_normal().nonzero_terms() < 3:
        raise ValueError("Alexander polynomial is trivial; no good prime exists")
    c = crossing_count
    p = 2
    while not _nontrivial_mod(delta, p):
        p = _next_prime(p + 1)
    lo = 4 ** (c - 1)
    hi = 2 * 4 ** (c - 1) - 2
    wp = _next_prime(lo)
    if wp > hi:
        raise AssertionError(f"no prime in [{lo}, {hi}]")
    # above the coefficient bound every coefficient survives outright
    assert sum(1 for v in alexander_mod_p(delta, wp) if v) >= 3, \
        "reduction lost coefficients above the coefficient-bound threshold"
    assert p <= wp
    return GoodPrime(p, (lo, hi), wp, 4 ** (c - 2))


# ---------------------------------------------------------------------------
# coefficient bound for determinants of Wirtinger-shaped matrices


ALLOWED_ENTRIES = (Laurent.zero(), Laurent.one(), Laurent.t(), Laurent.make([-1, 1]))


def det_coeff_bound_check(m: list[list[Laurent]]) -> dict:
    """For a square matrix with entries in {0, 1, t, t-1}, each of 1, t, t-1
    at most once per row and no zero row, every coefficient of the
    determinant is bounded by 4^(n-1) in absolute value."""
    n = len(m)
    one, t, t1 = ALLOWED_ENTRIES[1:]
    for row in m:
        if len(row) != n:
            raise ValueError("matrix not square")
        seen = []
        nonzero = 0
        for e in row:
            if e.is_zero():
                continue
            if e not in (one, t, t1):
                raise ValueError(f"entry {e} outside {{0, 1, t, t-1}}")
            if e in seen:
                raise ValueError(f"entry {e} repeats within a row")
            seen.append(e)
            nonzero += 1
        if nonzero == 0:
            raise ValueError("zero row")
    det = det_bareiss(m)
    bound = 4 ** (n - 1)
    max_coeff = max((abs(v) for v in det.coeffs), default=0)
    return {"n": n, "det": det, "max_coeff": max_coeff, "bound": bound,
            "ok": max_coeff <= bound}


# ---------------------------------------------------------------------------
# family bounds


@dataclass(frozen=True)
class FamilyBound:
    family: str
    bound: int
    detail: dict = field(default_factory=dict)


def family_bound(family: str, **params) -> FamilyBound:
    """Degree bound for the irregular cover for special families:

    - twist(k, l): double twist knots, cases by parity of k;
    - fibered(genus) / fibered(crossing_count): monic polynomial, prime 2;
    - pretzel(p, q, r): odd parameters;
    - degree(n): any knot whose polynomial has degree n."""
    if family == "twist":
        k, l = params["k"], params["l"]
        if l % 2 or l == 0 or k == 0:
            raise ValueError("twist knots need l = 2n nonzero")
        n = l // 2
        if k % 2 == 0:
            m = k // 2
            b = (2 * m * n) ** 2 - 4 * m * n + 4
        else:
            m = (k - 1) // 2
            if l == 2:
                b = (2 * m) ** 2
            elif l > 2:
                b = 2 ** (2 * n - 1)
            else:
                b = 2 ** (-2 * n)
        return FamilyBound("twist", b, {"k": k, "l": l})
    if family == "fibered":
        if "genus" in params and params["genus"]:
            g = params["genus"]
            return FamilyBound("fibered", 2 ** (2 * g), {"genus": g})
        c = params["crossing_count"]
        return FamilyBound("fibered", 2 ** c, {"crossing_count": c})
    if family == "pretzel":
        p, q, r = params["p"], params["q"], params["r"]
        if any(v % 2 == 0 for v in (p, q, r)):
            raise ValueError("pretzel parameters p, q, r must be odd")
        biggest = max(abs(p), abs(q), abs(r))
        return FamilyBound("pretzel", 4 * biggest * biggest,
                           {"p": p, "q": q, "r": r})
    if family == "degree":
        n = params["n"]
        return FamilyBound("degree", 2 ** (2 * n * n),
                           {"n": n, "window_form": (2 * 4 ** (n - 1) - 2) ** n})
    raise ValueError(f"unknown family {family!r}")


@dataclass(frozen=True)
class BoundReport:
    crossing_count: int
    regular_bound: int
    irregular_bound: int
    good_prime: int
    witness_d: int | None
    witness_n: int | None
    achieved_regular: int | None     # n * p^d at the good prime
    achieved_irregular: int | None   # p^d
    family: FamilyBound | None = None

    @property
    def ok(self):
        if self.achieved_regular is None:
            return True
        fine = (self.achieved_regular <= self.regular_bound
                and self.achieved_irregular <= self.irregular_bound)
        if self.family is not None:
            fine = fine and self.achieved_irregular <= self.family.bound
        return fine

    def to_json(self):
        out = {
            "crossing_count": self.crossing_count,
            "regular_bound": str(self.regular_bound),
            "irregular_bound": str(self.irregular_bound),
            "good_prime": self.good_prime,
            "witness_d": self.witness_d,
            "witness_n": self.witness_n,
            "achieved_regular": self.achieved_regular,
            "achieved_irregular": self.achieved_irregular,
            "bounds_hold": self.ok,
        }
        if self.family:
            out["family"] = {"name": self.family.family,
                             "bound": str(self.family.bound),
                             **{k: str(v) for k, v in self.family.detail.items()}}
        return out
