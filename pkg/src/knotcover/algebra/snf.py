"""Exact Smith normal form over Z and abelian group invariants.

The presentation matrices coming from rewriting subgroup presentations are
large and very sparse with almost all entries in {-1, 0, 1}.  Elimination
happens in two phases: a sparse phase that only ever pivots on +-1 entries
(choosing pivots Markowitz-style to limit fill-in, with no entry growth from
division), and a dense phase on the small residue that runs the classical
gcd-reduction Smith algorithm with arbitrary-precision integers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd


@dataclass(frozen=True)
class AbelianGroup:
    """Finitely generated abelian group as free rank plus invariant factors
    d1 | d2 | ... (each >= 2)."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a != 0:
                raise ValueError(f"invariant factors violate divisibility: {self.torsion}")
        if any(d < 2 for d in self.torsion):
            raise ValueError("invariant factors must be >= 2")

    def torsion_order(self) -> int:
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def elementary_divisors(self) -> list[int]:
        """Prime-power decomposition, sorted by prime then exponent."""
        out = []
        for d in self.torsion:
            n = d
            p = 2
            while p * p <= n:
                if n % p == 0:
                    q = 1
                    while n % p == 0:
                        n //= p
                        q *= p
                    out.append(q)
                p += 1
            if n > 1:
                out.append(n)
        return sorted(out, key=lambda q: (smallest_prime_factor(q), q))

    def __str__(self):
        parts = []
        if self.free_rank:
            parts.append("0" if self.free_rank == 1 else f"0^{self.free_rank}")
        divs = self.elementary_divisors()
        i = 0
        while i < len(divs):
            j = i
            while j < len(divs) and divs[j] == divs[i]:
                j += 1
            mult = j - i
            parts.append(str(divs[i]) if mult == 1 else f"{divs[i]}^{mult}")
            i = j
        return "[" + ", ".join(parts) + "]" if parts else "[]"


def smallest_prime_factor(n: int) -> int:
    p = 2
    while p * p <= n:
        if n % p == 0:
            return p
        p += 1
    return n


def abelian_from_divisor_list(free_rank: int, divisors: list[int]) -> AbelianGroup:
    """Build the canonical invariant-factor form from any list of cyclic
    orders (e.g. elementary divisors as printed in homology tables)."""
    primary: dict[int, list[int]] = {}
    for d in divisors:
        n = d
        p = 2
        while p * p <= n:
            if n % p == 0:
                q = 1
                while n % p == 0:
                    n //= p
                    q *= p
                primary.setdefault(p, []).append(q)
            p += 1
        if n > 1:
            primary.setdefault(n, []).append(n)
    width = max((len(v) for v in primary.values()), default=0)
    factors = [1] * width
    for p, powers in primary.items():
        powers.sort(reverse=True)
        for i, q in enumerate(powers):
            factors[i] *= q
    factors = sorted(f for f in factors if f > 1)
    return AbelianGroup(free_rank, tuple(factors))


# ---------------------------------------------------------------------------
# sparse phase


class SparseIntMatrix:
    """Row-sparse integer matrix supporting unit-pivot elimination."""

    def __init__(self, rows: list[dict[int, int]], ncols: int):
        self.rows: dict[int, dict[int, int]] = {}
        self.ncols = ncols
        self.col_index: dict[int, set[int]] = {}
        for i, r in enumerate(rows):
            clean = {j: v for j, v in r.items() if v}
            if clean:
                self.rows[i] = clean
                for j in clean:
                    self.col_index.setdefault(j, set()).add(i)
        self.units_removed = 0

    def _drop_entry(self, i, j):
        self.col_index[j].discard(i)
        if not self.col_index[j]:
            del self.col_index[j]

    def _score(self, i, j):
        return (len(self.rows[i]) - 1) * (len(self.col_index[j]) - 1)

    def eliminate_units(self):
        """Clear +-1 pivots with integer row operations, picking pivots by
        Markowitz fill count (lazy heap, scores revalidated on pop).  Each
        cleared pivot contributes an invariant factor 1; removing its row and
        column is valid because the leftover row entries are clearable by
        column operations that touch nothing else."""
        import heapq

        heap = []
        for i, row in self.rows.items():
            for j, v in row.items():
                if v in (1, -1):
                    heap.append((self._score(i, j), i, j))
        heapq.heapify(heap)
        while heap:
            score, i, j = heapq.heappop(heap)
            row = self.rows.get(i)
            if row is None:
                continue
            v = row.get(j)
            if v not in (1, -1):
                continue
            now = self._score(i, j)
            if now > score:
                heapq.heappush(heap, (now, i, j))
                continue
            changed = self._eliminate_at(i, j)
            for (ii, jj) in changed:
                vv = self.rows.get(ii, {}).get(jj)
                if vv in (1, -1):
                    heapq.heappush(heap, (self._score(ii, jj), ii, jj))

    def _eliminate_at(self, i, j):
        """Row-reduce column j with the unit pivot at (i, j); returns the
        set of (row, col) positions whose values changed."""
        prow = self.rows.pop(i)
        pval = prow[j]
        for jj in prow:
            self._drop_entry(i, jj)
        changed = set()
        targets = list(self.col_index.get(j, ()))
        for k in targets:
            row = self.rows[k]
            mult = row[j] * pval  # pval in {1,-1}: row -= mult * prow
            for jj, v in prow.items():
                if jj == j:
                    continue
                cur = row.get(jj, 0) - mult * v
                if cur:
                    if jj not in row:
                        self.col_index.setdefault(jj, set()).add(k)
                    row[jj] = cur
                    changed.add((k, jj))
                elif jj in row:
                    del row[jj]
                    self._drop_entry(k, jj)
            del row[j]
            self._drop_entry(k, j)
            if not row:
                del self.rows[k]
        self.units_removed += 1
        return changed

    def dense_residue(self):
        """Remaining matrix as a dense list-of-lists (possibly empty)."""
        live_rows = sorted(self.rows)
        cols = sorted({j for r in self.rows.values() for j in r})
        col_pos = {j: k for k, j in enumerate(cols)}
        dense = [[0] * len(cols) for _ in live_rows]
        for ii, i in enumerate(live_rows):
            for j, v in self.rows[i].items():
                dense[ii][col_pos[j]] = v
        return dense


# ---------------------------------------------------------------------------
# dense phase


def _echelon_gcd(a: list[list[int]]) -> list[list[int]]:
    """Row-span-preserving echelonization: repeatedly pick the column holding
    the smallest nonzero entry, run Euclid among the rows meeting it, set the
    surviving row aside as a pivot row.  Redundant rows vanish early, which
    keeps entry growth down on the long near-dependent inputs produced by
    subgroup rewriting.  Finishes with mutual Hermite reduction of the pivot
    rows."""
    rows = [list(r) for r in a if any(r)]
    done: list[tuple[int, list[int]]] = []
    while rows:
        best = None
        for r in rows:
            for j, v in enumerate(r):
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        j = best[1]
        while True:
            nz = [r for r in rows if r[j]]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda r: abs(r[j]))
            r0 = nz[0]
            for r in nz[1:]:
                q = r[j] // r0[j]
                if q:
                    for k, v in enumerate(r0):
                        if v:
                            r[k] -= q * v
        piv = next((r for r in rows if r[j]), None)
        if piv is not None:
            done.append((j, piv))
            rows = [r for r in rows if r is not piv and any(r)]
        else:
            rows = [r for r in rows if any(r)]
    # Hermite-reduce every pivot row against the others to cap entry sizes
    for jp, rp in done:
        for j2, r2 in done:
            if r2 is rp or not rp[j2]:
                continue
            q = rp[j2] // r2[j2]
            if q:
                for k, v in enumerate(r2):
                    if v:
                        rp[k] -= q * v
    return [r for _, r in done]


def _dense_smith(a: list[list[int]]) -> list[int]:
    """Invariant factors (including zeros) of a dense integer matrix by the
    classical pivot/gcd-reduction algorithm."""
    m = len(a)
    n = len(a[0]) if m else 0
    a = [list(r) for r in a]
    factors = []
    top = 0
    while top < min(m, n):
        # find the nonzero entry of least absolute value in the working block
        piv = None
        best = None
        for i in range(top, m):
            for j in range(top, n):
                v = a[i][j]
                if v:
                    if best is None or abs(v) < best:
                        best, piv = abs(v), (i, j)
        if piv is None:
            break
        i0, j0 = piv
        a[top], a[i0] = a[i0], a[top]
        for row in a:
            row[top], row[j0] = row[j0], row[top]
        changed = True
        while changed:
            changed = False
            p = a[top][top]
            for i in range(top + 1, m):
                if a[i][top]:
                    q = a[i][top] // p
                    if q:
                        for j in range(top, n):
                            a[i][j] -= q * a[top][j]
                    if a[i][top]:
                        a[top], a[i] = a[i], a[top]
                        changed = True
                        break
            if changed:
                continue
            p = a[top][top]
            for j in range(top + 1, n):
                if a[top][j]:
                    q = a[top][j] // p
                    if q:
                        for i in range(top, m):
                            a[i][j] -= q * a[i][top]
                    if a[top][j]:
                        for row in a:
                            row[top], row[j] = row[j], row[top]
                        changed = True
                        break
            if changed:
                continue
            # pivot divides its row and column; enforce divisibility of the
            # rest of the block
            p = a[top][top]
            for i in range(top + 1, m):
                bad = next((j for j in range(top + 1, n) if a[i][j] % p != 0), None)
                if bad is not None:
                    for j in range(top, n):
                        a[top][j] += a[i][j]
                    changed = True
                    break
        factors.append(abs(a[top][top]))
        top += 1
    # normalize the divisibility chain (paranoia; the algorithm already
    # guarantees it)
    for i in range(len(factors) - 1):
        for j in range(i + 1, len(factors)):
            if factors[i] and factors[j] % factors[i] != 0:
                g = gcd(factors[i], factors[j])
                factors[j] = factors[i] * factors[j] // g
                factors[i] = g
    return factors


def smith_invariant_factors(rows: list[dict[int, int]], ncols: int) -> list[int]:
    """All nonzero invariant factors (ones included) of the integer matrix
    given as sparse rows over columns 0..ncols-1."""
    sp = SparseIntMatrix(rows, ncols)
    sp.eliminate_units()
    dense = sp.dense_residue()
    if dense:
        dense = _echelon_gcd(dense)
    tail = _dense_smith(dense) if dense else []
    return [1] * sp.units_removed + [f for f in tail if f]


def cokernel(rows: list[dict[int, int]], ncols: int) -> AbelianGroup:
    """Z^ncols modulo the row space of the given sparse matrix."""
    facs = smith_invariant_factors(rows, ncols)
    rank = len(facs)
    torsion = tuple(f for f in facs if f > 1)
    return AbelianGroup(ncols - rank, torsion)


def cokernel_dense(mat: list[list[int]]) -> AbelianGroup:
    ncols = len(mat[0]) if mat else 0
    rows = [{j: v for j, v in enumerate(r) if v} for r in mat]
    return cokernel(rows, ncols)


def int_rank(rows: list[dict[int, int]]) -> int:
    """Exact rank over Q of a sparse integer matrix."""
    sp = SparseIntMatrix([dict(r) for r in rows], 0)
    sp.eliminate_units()
    dense = sp.dense_residue()
    return sp.units_removed + (_dense_rank(dense) if dense else 0)


def _dense_rank(a: list[list[int]]) -> int:
    """Rank by fraction-free elimination."""
    a = [list(r) for r in a]
    m, n = len(a), len(a[0]) if a else 0
    rank = 0
    row = 0
    prev = 1
    for col in range(n):
        piv = next((i for i in range(row, m) if a[i][col]), None)
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        for i in range(row + 1, m):
            if any(a[i]):
                for j in range(col + 1, n):
                    a[i][j] = (a[i][j] * a[row][col] - a[i][col] * a[row][j]) // prev
                a[i][col] = 0
        prev = a[row][col]
        rank += 1
        row += 1
        if row == m:
            break
    return rank


# ---------------------------------------------------------------------------
# small dense SNF with column transform (for abelianization degree maps)


def smith_with_column_basis(mat: list[list[int]]):
    """Invariant factors plus the unimodular column transform V with
    U*A*V = diag(factors).  Quotient coordinates of Z^n / rowspace(A) are
    read through V: generator e_j has coordinates row j of V.  Dense and
    only intended for small matrices."""
    m = len(mat)
    n = len(mat[0]) if m else 0
    a = [list(r) for r in mat]
    v = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def col_op(j, k, q):  # col_k -= q * col_j
        for i in range(m):
            a[i][k] -= q * a[i][j]
        for i in range(n):
            v[i][k] -= q * v[i][j]

    def col_swap(j, k):
        for i in range(m):
            a[i][j], a[i][k] = a[i][k], a[i][j]
        for i in range(n):
            v[i][j], v[i][k] = v[i][k], v[i][j]

    factors = []
    top = 0
    while top < min(m, n):
        piv = None
        best = None
        for i in range(top, m):
            for j in range(top, n):
                if a[i][j] and (best is None or abs(a[i][j]) < best):
                    best, piv = abs(a[i][j]), (i, j)
        if piv is None:
            break
        i0, j0 = piv
        a[top], a[i0] = a[i0], a[top]
        if j0 != top:
            col_swap(top, j0)
        while True:
            p = a[top][top]
            done = True
            for i in range(top + 1, m):
                if a[i][top]:
                    q = a[i][top] // p
                    for j in range(n):
                        a[i][j] -= q * a[top][j]
                    if a[i][top]:
                        a[top], a[i] = a[i], a[top]
                        done = False
                        break
            if not done:
                continue
            for j in range(top + 1, n):
                if a[top][j]:
                    q = a[top][j] // p
                    col_op(top, j, q)
                    if a[top][j]:
                        col_swap(top, j)
                        done = False
                        break
            if done:
                break
        factors.append(abs(a[top][top]))
        top += 1
    return factors, v
