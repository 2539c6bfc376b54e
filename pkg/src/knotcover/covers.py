"""Covers of a knot complement and their first homology.

Three covers per representation: the kernel cover (degree n*p^d, regular),
the preimage of the multiplier subgroup (degree p^d, irregular), and the
cyclic covers (degree n).  Coset tables are permutation actions; subgroup
presentations come from Reidemeister-Schreier rewriting over a breadth-first
Schreier transversal, and homology from exact integer Smith normal form.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .algebra.polyz import Laurent, zp_gcd, zp_trim
from .algebra.snf import AbelianGroup, cokernel, cokernel_dense, int_rank
from .presentations import GroupPresentation, Word, free_reduce, word_inverse
from .reps import AffineRep


class BudgetExceeded(RuntimeError):
    def __init__(self, what, value, limit):
        super().__init__(f"{what} {value} exceeds budget {limit}")
        self.what, self.value, self.limit = what, value, limit


@dataclass(frozen=True)
class CosetTable:
    degree: int
    actions: tuple[tuple[int, ...], ...]   # one permutation per generator

    def __post_init__(self):
        for perm in self.actions:
            if sorted(perm) != list(range(self.degree)):
                raise ValueError("generator action is not a permutation")

    def act(self, coset: int, g: int) -> int:
        if g > 0:
            return self.actions[g - 1][coset]
        return self.inverse_actions()[abs(g) - 1][coset]

    def inverse_actions(self):
        if not hasattr(self, "_inv"):
            inv = []
            for perm in self.actions:
                ip = [0] * self.degree
                for c, d in enumerate(perm):
                    ip[d] = c
                inv.append(tuple(ip))
            object.__setattr__(self, "_inv", tuple(inv))
        return self._inv

    def word_perm(self, w: Word) -> tuple[int, ...]:
        cur = list(range(self.degree))
        for g in w:
            perm = self.actions[g - 1] if g > 0 else self.inverse_actions()[abs(g) - 1]
            cur = [perm[c] for c in cur]
        return tuple(cur)

    def is_transitive(self) -> bool:
        seen = {0}
        frontier = [0]
        inv = self.inverse_actions()
        while frontier:
            nxt = []
            for c in frontier:
                for perm in list(self.actions) + list(inv):
                    d = perm[c]
                    if d not in seen:
                        seen.add(d)
                        nxt.append(d)
            frontier = nxt
        return len(seen) == self.degree

    def relators_close(self, pres: GroupPresentation) -> bool:
        return all(self.word_perm(r) == tuple(range(self.degree))
                   for r in pres.relators)


# ---------------------------------------------------------------------------
# table constructors


def cyclic_table(pres: GroupPresentation, n: int) -> CosetTable:
    """Action of the abelianization-degree map on Z/n."""
    if n < 1:
        raise ValueError("cyclic cover index must be >= 1")
    degrees = pres.abelianization_degrees()
    actions = [tuple((c + e) % n for c in range(n)) for e in degrees]
    return CosetTable(n, tuple(actions))


def kernel_table(rep: AffineRep) -> CosetTable:
    """Cosets of ker(rho) are the image group elements; generators act by
    right multiplication.  The meridian's permutation must consist of p^d
    cycles of length n."""
    F = rep.field
    n = rep.order_alpha
    elems = [(k, u) for k in range(n) for u in F.elements()]
    index = {m: i for i, m in enumerate(elems)}
    actions = []
    for g in range(1, rep.presentation.num_generators + 1):
        img = rep.generator_map(g)
        actions.append(tuple(index[rep.compose(m, img)] for m in elems))
    table = CosetTable(len(elems), tuple(actions))
    mer = rep.presentation.meridian_index
    cycles = _cycle_lengths(table.actions[mer - 1])
    assert sorted(cycles) == [n] * F.order, \
        "meridian cycle type is not p^d cycles of length n"
    return table


def preimage_alpha_table(rep: AffineRep) -> CosetTable:
    """Cosets of the preimage of the multiplier subgroup <alpha>, degree p^d.
    Representatives are field elements; (e, v) sends w to alpha^-e (w + v)."""
    F = rep.field
    elems = list(F.elements())
    index = {u: i for i, u in enumerate(elems)}
    actions = []
    for g in range(1, rep.presentation.num_generators + 1):
        e, v = rep.generator_map(g)
        ainv = F.pow(F.gen(), (-e) % rep.order_alpha)
        actions.append(tuple(index[F.mul(ainv, F.add(w, v))] for w in elems))
    return CosetTable(len(elems), tuple(actions))


def _cycle_lengths(perm):
    seen = [False] * len(perm)
    out = []
    for c in range(len(perm)):
        if seen[c]:
            continue
        ln = 0
        d = c
        while not seen[d]:
            seen[d] = True
            d = perm[d]
            ln += 1
        out.append(ln)
    return out


# ---------------------------------------------------------------------------
# Reidemeister-Schreier


@dataclass(frozen=True)
class SchreierData:
    table: CosetTable
    transversal: tuple[Word, ...]          # word reaching each coset from 0
    generator_of: tuple[tuple[int, int], ...]  # Schreier gen -> (coset, gen)
    index_of: dict

    def rewrite(self, w: Word, start: int = 0) -> Word:
        """Rewrite a subgroup word (a loop at `start` in the coset graph)
        in Schreier generators."""
        out: list[int] = []
        c = start
        for g in w:
            if g > 0:
                key = (c, g)
                sg = self.index_of.get(key)
                if sg is not None:
                    out.append(sg)
                c = self.table.act(c, g)
            else:
                c = self.table.act(c, g)
                sg = self.index_of.get((c, -g))
                if sg is not None:
                    out.append(-sg)
        if c != start:
            raise ValueError("word does not lie in the subgroup of the table")
        return free_reduce(out)


def schreier_transversal(pres: GroupPresentation, table: CosetTable):
    """Breadth-first spanning tree with generators tried in index order,
    inverses after positives.  Returns (transversal words, tree edge set)."""
    letters = [g for i in range(1, pres.num_generators + 1) for g in (i, -i)]
    tau: list[Word | None] = [None] * table.degree
    tau[0] = ()
    tree: set[tuple[int, int]] = set()
    frontier = [0]
    while frontier:
        nxt = []
        for c in frontier:
            for g in letters:
                d = table.act(c, g)
                if tau[d] is None:
                    tau[d] = tau[c] + (g,)
                    tree.add((c, g) if g > 0 else (d, -g))
                    nxt.append(d)
        frontier = nxt
    if any(t is None for t in tau):
        raise ValueError("coset table is not transitive")
    return tuple(tau), tree


def rs_presentation(pres: GroupPresentation, table: CosetTable):
    """Presentation of the subgroup attached to a coset table.

    Output has N(r-1)+1 generators for an r-generator input over N cosets
    (tree edges give trivial Schreier generators) and one rewritten relator
    per (relator, coset) pair."""
    tau, tree = schreier_transversal(pres, table)
    index_of = {}
    generator_of = []
    for c in range(table.degree):
        for g in range(1, pres.num_generators + 1):
            if (c, g) not in tree:
                index_of[(c, g)] = len(generator_of) + 1
                generator_of.append((c, g))
    data = SchreierData(table, tau, tuple(generator_of), index_of)
    expected = table.degree * (pres.num_generators - 1) + 1
    assert len(generator_of) == expected, "Schreier generator count mismatch"
    relators = []
    for r in pres.relators:
        for c in range(table.degree):
            w = data.rewrite(r, c)
            if w:
                relators.append(w)
    sub = GroupPresentation(len(generator_of), tuple(relators))
    return sub, data


# ---------------------------------------------------------------------------
# homology of covers


@dataclass(frozen=True)
class CoverHomology:
    which: str                   # 'kernel' | 'preimage_alpha' | 'cyclic'
    degree: int
    h1: AbelianGroup
    boundary_components: int | None = None
    peripheral_rank: int | None = None
    nonperipheral_rank: int | None = None

    @property
    def betti(self) -> int:
        return self.h1.free_rank

    @property
    def torsion_order(self) -> int:
        return self.h1.torsion_order()


def _abelianized_rows(sub: GroupPresentation) -> list[dict[int, int]]:
    rows = []
    for r in sub.relators:
        row: dict[int, int] = {}
        for g in r:
            j = abs(g) - 1
            row[j] = row.get(j, 0) + (1 if g > 0 else -1)
        rows.append({j: v for j, v in row.items() if v})
    return rows


def _guard(pres: GroupPresentation, table: CosetTable, budget):
    if budget is None:
        return
    if table.degree > budget.degree:
        raise BudgetExceeded("cover degree", table.degree, budget.degree)
    gens = table.degree * (pres.num_generators - 1) + 1
    cells = gens * table.degree * max(len(pres.relators), 1)
    if cells > budget.matrix_cells:
        raise BudgetExceeded("presentation matrix size", cells, budget.matrix_cells)


@dataclass(frozen=True)
class Budget:
    degree: int = 200
    matrix_cells: int = 4_000_000


def cover_homology(pres: GroupPresentation, table: CosetTable, which: str,
                   budget: Budget | None = Budget(),
                   peripheral: bool = True) -> CoverHomology:
    """H_1 of the cover given by a coset table, with boundary counting and
    peripheral/non-peripheral rank splitting when the presentation carries a
    longitude."""
    if len(pres.relators) != pres.num_generators - 1:
        raise ValueError("cover machinery expects a deficiency-1 presentation")
    _guard(pres, table, budget)
    sub, data = rs_presentation(pres, table)
    # deficiency 1 is preserved: N(r-1)+1 generators, N(r-1) relators
    assert sub.num_generators - table.degree * len(pres.relators) == 1
    rows = _abelianized_rows(sub)
    h1 = cokernel(rows, sub.num_generators)
    boundary = None
    peri = nonperi = None
    if pres.longitude is not None:
        orbits, stab_words = _peripheral_orbits(pres, table)
        boundary = len(orbits)
        if peripheral:
            vecs = []
            for words in stab_words:
                for w in words:
                    rw = data.rewrite(w)
                    row: dict[int, int] = {}
                    for g in rw:
                        j = abs(g) - 1
                        row[j] = row.get(j, 0) + (1 if g > 0 else -1)
                    vecs.append({j: v for j, v in row.items() if v})
            base_rank = sub.num_generators - h1.free_rank
            total_rank = int_rank(rows + vecs)
            peri = total_rank - base_rank
            nonperi = h1.free_rank - peri
    return CoverHomology(which, table.degree, h1, boundary, peri, nonperi)


def _peripheral_orbits(pres: GroupPresentation, table: CosetTable):
    """Orbits of the peripheral subgroup <meridian, longitude> on cosets,
    plus, per orbit, conjugated generator words of the boundary-torus
    subgroup based at coset 0."""
    mer = (pres.meridian_index,)
    lam = pres.longitude
    pm = table.word_perm(mer)
    pl = table.word_perm(lam)
    # abelian Z^2 action: orbit-label BFS gives the stabilizer lattice
    tau, _tree = schreier_transversal(pres, table)
    seen = [None] * table.degree
    orbits = []
    stab_words = []
    for c0 in range(table.degree):
        if seen[c0] is not None:
            continue
        labels = {c0: (0, 0)}
        closing = []
        frontier = [c0]
        while frontier:
            nxt = []
            for c in frontier:
                a, b = labels[c]
                for perm, da, db in ((pm, 1, 0), (pl, 0, 1)):
                    d = perm[c]
                    if d in labels:
                        la, lb = labels[d]
                        v = (a + da - la, b + db - lb)
                        if v != (0, 0):
                            closing.append(v)
                    else:
                        labels[d] = (a + da, b + db)
                        nxt.append(d)
            frontier = nxt
        for c in labels:
            seen[c] = len(orbits)
        basis = _lattice_basis(closing)
        words = []
        conj = tau[c0]
        for a, b in basis:
            wa = mer * a if a >= 0 else word_inverse(mer) * (-a)
            wb = lam * b if b >= 0 else word_inverse(lam) * (-b)
            words.append(free_reduce(conj + wa + wb + word_inverse(conj)))
        orbits.append(sorted(labels))
        stab_words.append(words)
    return orbits, stab_words


def _lattice_basis(vectors):
    """Hermite basis of the sublattice of Z^2 spanned by the given vectors:
    [], [(a, b)], or [(a, b), (0, c)] with a > 0, c > 0."""
    rows = [list(v) for v in vectors if v != (0, 0)]
    if not rows:
        return []
    while True:
        nz = [r for r in rows if r[0] != 0]
        if len(nz) <= 1:
            break
        nz.sort(key=lambda r: abs(r[0]))
        r0 = nz[0]
        for r in nz[1:]:
            q = r[0] // r0[0]
            r[0] -= q * r0[0]
            r[1] -= q * r0[1]
        rows = [r for r in rows if r != [0, 0]]
    first = next((r for r in rows if r[0] != 0), None)
    g2 = 0
    for r in rows:
        if r[0] == 0:
            g2 = gcd(g2, r[1])
    out = []
    if first is not None:
        a, b = first
        if a < 0:
            a, b = -a, -b
        if g2:
            b %= g2
        out.append((a, b))
    if g2:
        out.append((0, g2))
    return out


# ---------------------------------------------------------------------------
# closed-form cyclic cover invariants


@dataclass(frozen=True)
class CyclicInvariants:
    n: int
    betti: int
    torsion_order: int
    h1: AbelianGroup


def cyclic_cover_invariants(delta: Laurent, n: int) -> CyclicInvariants:
    """H_1 of the n-fold cyclic cover from the Alexander polynomial alone:
    Z plus the cokernel of Delta evaluated at the cyclic shift on Z^n.
    The betti number is 1 + deg gcd(Delta, t^n - 1); the torsion order is
    the product of the nonzero invariant factors (equal to |Res| of the
    root-free parts when Delta shares no root with t^n - 1)."""
    if n < 1:
        raise ValueError("cover index must be >= 1")
    coeffs = delta.unit_normal().poly()
    mat = [[0] * n for _ in range(n)]
    for j in range(n):
        for k, a in enumerate(coeffs):
            if a:
                mat[(j + k) % n][j] += a
    cok = cokernel_dense(mat)
    tn1 = [-1] + [0] * (n - 1) + [1]
    g = zp_gcd(coeffs, tn1)
    betti = 1 + (len(g) - 1)
    assert betti == 1 + cok.free_rank, "root count disagrees with corank"
    h1 = AbelianGroup(1 + cok.free_rank, cok.torsion)
    return CyclicInvariants(n, betti, cok.torsion_order(), h1)


# ---------------------------------------------------------------------------
# verdicts


@dataclass(frozen=True)
class BettiBounds:
    lower: int
    upper: int
    betti: int

    @property
    def ok(self):
        return self.lower <= self.betti <= self.upper

    @property
    def lower_tight(self):
        return self.betti == self.lower

    @property
    def upper_tight(self):
        return self.betti == self.upper


def betti_sandwich(crossing_count: int, n: int, p: int, d: int,
                   betti_cover: int, betti_cyclic: int) -> BettiBounds:
    """First betti number of the kernel cover against the boundary-count
    lower bound and the stratification upper bound."""
    q = p ** d
    lower = q - 1 + betti_cyclic
    upper = n * (crossing_count - 1) * (q - 1) + betti_cyclic
    return BettiBounds(lower, upper, betti_cover)


@dataclass(frozen=True)
class TorsionRatioVerdict:
    status: str        # 'holds' | 'fails' | 'both_torsion_free'
    cover_torsion: int
    cyclic_torsion: int
    degree_ratio: int


def torsion_ratio_check(cover: CoverHomology, cyclic: CyclicInvariants,
                        p: int, d: int) -> TorsionRatioVerdict:
    """Whether |Torsion(H_1(kernel cover))| equals |Torsion(H_1(X_n))| / p^d."""
    q = p ** d
    ct = cover.torsion_order
    nt = cyclic.torsion_order
    if ct == 1 and nt == 1:
        return TorsionRatioVerdict("both_torsion_free", ct, nt, q)
    status = "holds" if ct * q == nt else "fails"
    return TorsionRatioVerdict(status, ct, nt, q)
