"""Character-variety computation of cover betti numbers.

For the elementary abelian cover attached to a representation, the first
betti number equals the cyclic-cover betti number plus, summed over the
nontrivial characters chi of the deck group, the corank drop of the Fox
Jacobian of the cyclic-cover group evaluated through chi.  Everything runs
in exact cyclotomic arithmetic; scalar multiples of a character are Galois
conjugates and are evaluated once.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra.cyclotomic import CyclotomicField
from .covers import SchreierData, cyclic_table, cyclic_cover_invariants, rs_presentation
from .fox import fox_derivative
from .presentations import GroupPresentation
from .reps import AffineRep


def deck_map(pres: GroupPresentation, rep: AffineRep):
    """The quotient map from the cyclic-cover group onto the translation
    group (Z/p)^d: each Schreier generator maps to the translation part of
    its image, in coordinates of the power basis of F_p(alpha).

    Returns (cyclic-cover presentation, SchreierData, coordinate vector per
    Schreier generator)."""
    n = rep.order_alpha
    table = cyclic_table(pres, n)
    sub, data = rs_presentation(pres, table)
    F = rep.field
    images = []
    for c, g in data.generator_of:
        word = data.transversal[c] + (g,)
        # transversal back to base: tau(c g) appears inverted
        target = table.act(c, g)
        word = word + tuple(-x for x in reversed(data.transversal[target]))
        e, u = rep.word_image(word)
        assert e % n == 0
        images.append(tuple(u))
    # the deck image must be the whole translation group
    assert F.fp_span_dim([tuple(v) for v in images]) == F.d, \
        "Schreier generators do not surject onto the deck group"
    # t^n is a Schreier generator word with trivial translation: meridian
    # cycle closes with image zero because the meridian translation is zero
    return sub, data, images


def character_matrix(sub: GroupPresentation, images: list[tuple], chi: tuple[int, ...],
                     p: int, field: CyclotomicField):
    """Fox Jacobian of the cyclic-cover presentation evaluated through the
    character zeta^<q(.), chi>."""
    d = len(chi)

    def pair(vec) -> int:
        return sum(int(a) * int(b) for a, b in zip(vec, chi)) % p

    rows = []
    for r in sub.relators:
        counts_row = [[0] * p for _ in range(sub.num_generators)]
        # incremental prefix image in (Z/p)^d
        pref = [0] * d
        for g in r:
            i = abs(g) - 1
            q = images[i]
            if g > 0:
                e = sum(int(a) * int(b) for a, b in zip(pref, chi)) % p
                counts_row[i][e] += 1
                pref = [(a + b) % p for a, b in zip(pref, q)]
            else:
                pref = [(a - b) % p for a, b in zip(pref, q)]
                e = sum(int(a) * int(b) for a, b in zip(pref, chi)) % p
                counts_row[i][e] -= 1
        rows.append([field.from_exponent_counts(c) for c in counts_row])
    return rows


def _nonzero_characters_up_to_scaling(p: int, d: int):
    """One representative per projective class of nonzero chi in (Z/p)^d:
    vectors whose first nonzero coordinate is 1."""
    out = []
    for lead in range(d):
        for tail_count in range(p ** (d - lead - 1)):
            vec = [0] * lead + [1]
            rest = tail_count
            for _ in range(d - lead - 1):
                vec.append(rest % p)
                rest //= p
            out.append(tuple(vec))
    return out


@dataclass(frozen=True)
class StratificationBetti:
    betti: int
    betti_cyclic: int
    contributions: tuple[int, ...]   # corank drop per character class
    classes: int                     # character classes evaluated
    scale: int                       # conjugates per class (p - 1)
    presentation_gens: int           # generator count of the cyclic-cover presentation


def stratification_betti(pres: GroupPresentation, rep: AffineRep,
                         delta=None) -> StratificationBetti:
    """First betti number of the kernel cover by summing character coranks
    over the deck group of the cyclic cover, entirely independent of the
    integer Smith normal form pipeline."""
    from .fox import alexander_poly

    sub, data, images = deck_map(pres, rep)
    p, d = rep.p, rep.d
    if delta is None:
        delta = alexander_poly(pres)
    b_cyc = cyclic_cover_invariants(delta, rep.order_alpha).betti
    field = CyclotomicField(p)
    r = sub.num_generators
    total = 0
    contribs = []
    for chi in _nonzero_characters_up_to_scaling(p, d):
        rows = character_matrix(sub, images, chi, p, field)
        rank = field.rank(rows)
        drop = max(0, (r - 1) - rank)
        contribs.append(drop)
        total += (p - 1) * drop
    return StratificationBetti(total + b_cyc, b_cyc, tuple(contribs),
                               len(contribs), p - 1, r)


@dataclass(frozen=True)
class FiberedBoundVerdict:
    applicable: bool
    genus: int | None = None
    top_stratum_empty: bool | None = None
    betti: int | None = None
    upper_bound: int | None = None

    @property
    def ok(self):
        if not self.applicable:
            return True
        return self.top_stratum_empty and self.betti <= self.upper_bound


def fibered_bound_check(pres: GroupPresentation, rep: AffineRep, fibered: bool,
                        genus: int | None, delta=None,
                        strat: StratificationBetti | None = None) -> FiberedBoundVerdict:
    """For a fibered knot of genus g, every nontrivial character must keep
    the Jacobian of rank >= 1, and each contributes at most 2g - 1, bounding
    the cover's betti number by (2g-1)(p^d - 1) + betti(cyclic)."""
    if not fibered or not genus:
        return FiberedBoundVerdict(False)
    res = strat if strat is not None else stratification_betti(pres, rep, delta=delta)
    r = res.presentation_gens
    top_empty = all(drop < r - 1 for drop in res.contributions)
    per_char_ok = all(drop <= 2 * genus - 1 for drop in res.contributions)
    bound = (2 * genus - 1) * (rep.field.order - 1) + res.betti_cyclic
    return FiberedBoundVerdict(True, genus, top_empty and per_char_ok,
                               res.betti, bound)
