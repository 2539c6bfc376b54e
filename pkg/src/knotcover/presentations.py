"""Finitely presented groups as plain data.

Words are tuples of signed 1-based generator indices: 3 means x3, -3 means
x3^-1.  The same word type carries Wirtinger relators, longitudes, rewritten
subgroup relators, and peripheral elements.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .algebra.snf import AbelianGroup, cokernel_dense, smith_with_column_basis

Word = tuple[int, ...]


def word_inverse(w: Word) -> Word:
    return tuple(-g for g in reversed(w))


def free_reduce(w) -> Word:
    out: list[int] = []
    for g in w:
        if out and out[-1] == -g:
            out.pop()
        else:
            out.append(g)
    return tuple(out)


def cyclic_reduce(w: Word) -> Word:
    w = list(free_reduce(w))
    while len(w) >= 2 and w[0] == -w[-1]:
        w = w[1:-1]
    return tuple(w)


def word_exponents(w: Word, num_generators: int) -> list[int]:
    out = [0] * num_generators
    for g in w:
        out[abs(g) - 1] += 1 if g > 0 else -1
    return out


def substitute(w, gen: int, image: Word) -> Word:
    """Replace generator `gen` by `image` (and its inverse accordingly)."""
    inv = word_inverse(image)
    out: list[int] = []
    for g in w:
        if g == gen:
            out.extend(image)
        elif g == -gen:
            out.extend(inv)
        else:
            out.append(g)
    return free_reduce(out)


def reindex_word(w, drop: int) -> Word:
    """Renumber after deleting generator `drop` (which must not occur)."""
    out = []
    for g in w:
        a = abs(g)
        assert a != drop
        if a > drop:
            a -= 1
        out.append(a if g > 0 else -a)
    return tuple(out)


@dataclass(frozen=True)
class GroupPresentation:
    num_generators: int
    relators: tuple[Word, ...]
    meridian_index: int = 1
    longitude: Word | None = None

    def __post_init__(self):
        for r in self.relators:
            for g in r:
                if g == 0 or abs(g) > self.num_generators:
                    raise ValueError(f"generator index {g} out of range in relator {r}")
        if not (1 <= self.meridian_index <= max(self.num_generators, 1)):
            raise ValueError("meridian index out of range")
        if self.longitude is not None:
            for g in self.longitude:
                if g == 0 or abs(g) > self.num_generators:
                    raise ValueError("longitude index out of range")

    def relator_matrix(self) -> list[list[int]]:
        return [word_exponents(r, self.num_generators) for r in self.relators]

    def abelianization(self) -> AbelianGroup:
        m = self.relator_matrix()
        if not m:
            return AbelianGroup(self.num_generators)
        return cokernel_dense(m)

    def abelianization_degrees(self) -> list[int]:
        """Images of the generators under the map to H_1 when H_1 is
        infinite cyclic, normalized so the meridian maps to +1."""
        m = self.relator_matrix()
        if not m:
            if self.num_generators != 1:
                raise ValueError("free group of rank != 1 has no canonical Z-grading")
            return [1]
        factors, v = smith_with_column_basis(m)
        zero_cols = [k for k in range(self.num_generators)
                     if k >= len(factors) or factors[k] == 0]
        if len(zero_cols) != 1 or any(f not in (0, 1) for f in factors):
            raise ValueError("abelianization is not infinite cyclic")
        k = zero_cols[0]
        degs = [v[j][k] for j in range(self.num_generators)]
        mer = degs[self.meridian_index - 1]
        if mer not in (1, -1):
            raise ValueError("meridian does not generate the abelianization")
        if mer == -1:
            degs = [-d for d in degs]
        return degs

    def word_degree(self, w: Word) -> int:
        degs = self.abelianization_degrees()
        return sum((1 if g > 0 else -1) * degs[abs(g) - 1] for g in w)


def is_conjugation_relator(r: Word):
    """Detect a length-4 relator of the form a^e b a^-e c^-1 (some cyclic
    rotation), i.e. one generator written as a conjugate of another.

    Returns (eliminated_gen, replacement_word) or None.  The replacement
    expresses the eliminated generator in the other two."""
    r = cyclic_reduce(r)
    if len(r) != 4:
        return None
    for k in range(4):
        rot = r[k:] + r[:k]
        a, b, c, d = rot
        # pattern a * b * a^-1 * d with d = c^-1: conjugate relation c = a b a^-1
        if a == -c and abs(b) != abs(a) and abs(d) != abs(a) and abs(d) != abs(b):
            # rot spells a b a^-1 d = 1, so d^-1 = a b a^-1
            target = -d
            if target > 0:
                return target, free_reduce((a, b, c))
            return -target, word_inverse(free_reduce((a, b, c)))
    return None


def eliminate_generator(pres: GroupPresentation, gen: int, image: Word,
                        used_relator: int,
                        images: list[Word] | None = None):
    """Tietze move removing `gen` (defined by relator `used_relator` as
    `image`), substituting through all other relators.  Returns the new
    presentation and updated original-generator images."""
    assert all(abs(g) != gen for g in image)
    new_relators = []
    for i, r in enumerate(pres.relators):
        if i == used_relator:
            continue
        w = reindex_word(substitute(r, gen, image), gen)
        if w:
            new_relators.append(w)
    new_mer = pres.meridian_index
    assert new_mer != gen, "never eliminate the meridian"
    if new_mer > gen:
        new_mer -= 1
    new_long = None
    if pres.longitude is not None:
        new_long = reindex_word(substitute(pres.longitude, gen, image), gen)
    if images is None:
        images = [(i + 1,) for i in range(pres.num_generators)]
    images = [reindex_word(substitute(w, gen, image), gen) for w in images]
    out = GroupPresentation(pres.num_generators - 1, tuple(new_relators),
                            new_mer, new_long)
    return out, images


def simplify(pres: GroupPresentation) -> GroupPresentation:
    """One conjugation-relator elimination on a Wirtinger-form presentation;
    returns the input unchanged when no such move applies (fixpoint)."""
    for i, r in enumerate(pres.relators):
        hit = is_conjugation_relator(r)
        if hit is None:
            continue
        gen, image = hit
        if gen == pres.meridian_index:
            continue
        out, _ = eliminate_generator(pres, gen, image, i)
        return out
    return pres


def _try_shorten(r: Word, s: Word) -> Word | None:
    """Shorten relator r by replacing a long cyclic piece of s (or of its
    inverse) with the inverse of the complementary short piece; returns the
    shorter equivalent relator or None."""
    n, m = len(r), len(s)
    if n == 0 or m == 0:
        return None
    doubled = r + r
    for t in (s, word_inverse(s)):
        for k in range(m):
            v = t[k:] + t[:k]
            for wl in range(m, m // 2, -1):
                w = v[:wl]
                repl = word_inverse(v[wl:])
                if wl > n:
                    continue
                for st in range(n):
                    if doubled[st:st + wl] == w:
                        rot = doubled[st:st + n]
                        cand = cyclic_reduce(repl + rot[wl:])
                        if len(cand) < n:
                            return cand
    return None


def _shorten_relators(relators: list[Word]) -> bool:
    changed = False
    improving = True
    while improving:
        improving = False
        for i in range(len(relators)):
            for j in range(len(relators)):
                if i == j or not relators[j]:
                    continue
                cand = _try_shorten(relators[i], relators[j])
                if cand is not None:
                    relators[i] = cand
                    improving = changed = True
    return changed


def reduce_presentation(pres: GroupPresentation):
    """Repeated Tietze moves: eliminate any generator occurring exactly once
    in some relator, and shorten relators against each other when
    elimination stalls.  Keeps the meridian.  Returns (reduced presentation,
    images of the original generators as words in the reduced generators)."""
    images = [(i + 1,) for i in range(pres.num_generators)]
    cur = pres
    while cur.num_generators > 2:
        best = None  # (relator length, relator index, gen, image)
        for i, r in enumerate(cur.relators):
            counts: dict[int, list[int]] = {}
            for pos, g in enumerate(r):
                counts.setdefault(abs(g), []).append(pos)
            for g, positions in counts.items():
                if len(positions) != 1 or g == cur.meridian_index:
                    continue
                pos = positions[0]
                s = 1 if r[pos] > 0 else -1
                u, v = r[:pos], r[pos + 1:]
                w = free_reduce(word_inverse(u) + word_inverse(v))
                if s == -1:
                    w = word_inverse(w)
                cand = (len(r), i, g, w)
                if best is None or cand[0] < best[0]:
                    best = cand
        if best is not None:
            _, i, g, w = best
            cur, images = eliminate_generator(cur, g, w, i, images)
            continue
        rels = [cyclic_reduce(r) for r in cur.relators]
        if _shorten_relators(rels):
            cur = replace(cur, relators=tuple(r for r in rels if r))
            continue
        break
    # final cleanup: drop empty relators, cyclically reduce
    rels = tuple(cyclic_reduce(r) for r in cur.relators if cyclic_reduce(r))
    cur = replace(cur, relators=rels)
    return cur, images


def drop_redundant_relator(pres: GroupPresentation) -> GroupPresentation:
    """Remove the last relator.  Valid for Wirtinger presentations, where any
    single relator is a consequence of the others."""
    if not pres.relators:
        raise ValueError("no relator to drop")
    return replace(pres, relators=pres.relators[:-1])


def word_image(images: list[Word], w: Word) -> Word:
    """Push a word in the original generators through generator images."""
    out: list[int] = []
    for g in w:
        piece = images[abs(g) - 1]
        out.extend(piece if g > 0 else word_inverse(piece))
    return free_reduce(out)
