"""Exhaustive low-index subgroup enumeration by coset-table backtracking.

Tables are built in standard form (cosets numbered by first appearance in
row-scan order); every new edge triggers relator scans through that edge
which force deductions or detect contradictions; conjugacy classes are kept
once via the usual canonicity test (no basepoint change relabels the table
to something lexicographically smaller).
"""

from __future__ import annotations

from dataclasses import dataclass

from .presentations import GroupPresentation, Word

UNDEF = -1


def _nletters(num_generators):
    # letter 2g-2 acts as generator g, letter 2g-1 as its inverse
    return 2 * num_generators


def _letter(g: int) -> int:
    return 2 * (g - 1) if g > 0 else 2 * (-g - 1) + 1


def _inv_letter(letter: int) -> int:
    return letter ^ 1


class _Collapse(Exception):
    pass


class _Partial:
    """Partial coset table with incremental deduction propagation and a
    trail for O(changes) backtracking."""

    def __init__(self, num_generators, relators, max_cosets):
        self.nl = _nletters(num_generators)
        self.rel_letters = [[_letter(g) for g in r] for r in relators]
        # occurrences[letter] = [(relator letters, position), ...]
        occ: dict[int, list] = {letter: [] for letter in range(self.nl)}
        for rl in self.rel_letters:
            for pos, letter in enumerate(rl):
                occ[letter].append((rl, pos))
                if _inv_letter(letter) != letter:
                    occ[_inv_letter(letter)].append((rl, pos))
        self.occurrences = occ
        self.max_cosets = max_cosets
        self.table = [[UNDEF] * self.nl for _ in range(max_cosets)]
        self.ncosets = 1
        self.trail: list[tuple[int, int]] = []

    def mark(self):
        return len(self.trail), self.ncosets

    def rewind(self, mark):
        upto, ncosets = mark
        while len(self.trail) > upto:
            c, letter = self.trail.pop()
            self.table[c][letter] = UNDEF
        self.ncosets = ncosets

    def define(self, c, letter, d):
        """Set c.letter = d, propagate deductions; on contradiction raise
        _Collapse (caller rewinds)."""
        table = self.table
        trail = self.trail
        pending = [(c, letter, d)]
        while pending:
            c, letter, d = pending.pop()
            cur = table[c][letter]
            if cur != UNDEF:
                if cur != d:
                    raise _Collapse
                continue
            inv = letter ^ 1
            back = table[d][inv]
            if back != UNDEF and back != c:
                raise _Collapse
            table[c][letter] = d
            trail.append((c, letter))
            if table[d][inv] == UNDEF:
                table[d][inv] = c
                trail.append((d, inv))
            for rl, pos in self.occurrences[letter]:
                u = c if rl[pos] == letter else d
                n = len(rl)
                # forward walk from position pos
                f = pos
                cf = u
                steps = 0
                while steps < n:
                    nxt = table[cf][rl[f]]
                    if nxt == UNDEF:
                        break
                    cf = nxt
                    f += 1
                    if f == n:
                        f = 0
                    steps += 1
                if steps == n:
                    if cf != u:
                        raise _Collapse
                    continue
                # backward walk from position pos
                b = pos
                cb = u
                back_steps = 0
                limit = n - steps - 1
                while back_steps < limit:
                    prev = table[cb][rl[b - 1 if b else n - 1] ^ 1]
                    if prev == UNDEF:
                        break
                    cb = prev
                    b = b - 1 if b else n - 1
                    back_steps += 1
                if back_steps == limit:
                    pending.append((cf, rl[f], cb))

    def first_undefined(self, start=0):
        nl = self.nl
        for slot in range(start, self.ncosets * nl):
            if self.table[slot // nl][slot % nl] == UNDEF:
                return slot
        return None

    def flat(self):
        return tuple(v for row in self.table[:self.ncosets] for v in row)


@dataclass(frozen=True)
class SubgroupRecord:
    index: int
    actions: tuple[tuple[int, ...], ...]    # permutation per generator
    is_cyclic_cover: bool


def _standardize(flat_actions, nl, base):
    """Relabel cosets by first appearance scanning rows from `base`;
    returns the flat table tuple in the new labels."""
    n = len(flat_actions) // nl
    label = {base: 0}
    order = [base]
    i = 0
    while i < len(order):
        c = order[i]
        for letter in range(nl):
            d = flat_actions[c * nl + letter]
            if d not in label:
                label[d] = len(order)
                order.append(d)
        i += 1
    out = [0] * (n * nl)
    for c in range(n):
        for letter in range(nl):
            out[label[c] * nl + letter] = label[flat_actions[c * nl + letter]]
    return tuple(out)


def low_index_subgroups(pres: GroupPresentation, max_index: int,
                        cap: int = 12) -> list[SubgroupRecord]:
    """All subgroups of index <= max_index up to conjugacy.

    Exhaustive backtracking over standard-form coset tables with forced
    deductions; one representative per conjugacy class survives the
    canonicity filter."""
    if max_index > cap:
        raise ValueError(f"index {max_index} above the configured cap {cap}")
    relators = [r for r in pres.relators if r]
    nl = _nletters(pres.num_generators)
    classes: dict[tuple, None] = {}
    part = _Partial(pres.num_generators, relators, max_index)

    def dfs(scan_from):
        slot = part.first_undefined(scan_from)
        if slot is None:
            flat = part.flat()
            n = part.ncosets
            canon = min(_standardize(flat, nl, b) for b in range(n))
            classes.setdefault((n, canon))
            return
        c, letter = slot // nl, slot % nl
        limit = part.ncosets + (1 if part.ncosets < max_index else 0)
        for d in range(limit):
            mark = part.mark()
            if d == part.ncosets:
                part.ncosets += 1
            try:
                part.define(c, letter, d)
            except _Collapse:
                part.rewind(mark)
                continue
            dfs(slot)
            part.rewind(mark)

    dfs(0)
    results = []
    for n, canon in classes:
        actions = tuple(tuple(canon[c * nl + _letter(g)] for c in range(n))
                        for g in range(1, pres.num_generators + 1))
        results.append(SubgroupRecord(n, actions, _actions_commute(actions)))
    results.sort(key=lambda r: (r.index, r.actions))
    return results


def _actions_commute(actions) -> bool:
    """Transitive abelian permutation image means the action factors through
    the abelianization Z, i.e. the cover is cyclic."""
    for i in range(len(actions)):
        for j in range(i + 1, len(actions)):
            a, b = actions[i], actions[j]
            if any(a[b[c]] != b[a[c]] for c in range(len(a))):
                return False
    return True


def is_cyclic_cover(record: SubgroupRecord) -> bool:
    return record.is_cyclic_cover


@dataclass(frozen=True)
class MinimalCoverReport:
    knot: str
    degree: int | None
    cap: int
    matches_irregular_cover: bool | None
    factorizations: tuple[tuple[str, int], ...]   # (rendered Delta mod p, p)

    def line(self) -> str:
        if self.degree is None:
            return f"{self.knot}: all covers of index <= {self.cap} are cyclic"
        tag = "Yes" if self.matches_irregular_cover else "No"
        facs = ", ".join(f"({s}, {p})" for s, p in self.factorizations)
        return f"{self.knot}, {self.degree}: {tag}, {facs}"


def minimal_noncyclic_degree(pres: GroupPresentation, cap: int = 8):
    """Smallest index of a non-cyclic subgroup, or None if every subgroup of
    index <= cap is a cyclic cover.  Searches index by index and stops at the
    first hit, so exhaustiveness is only ever needed up to the answer.
    Also returns the records found up to the stopping index."""
    collected: list[SubgroupRecord] = []
    for k in range(1, cap + 1):
        at_k = [r for r in low_index_subgroups(pres, k) if r.index == k]
        cyclic = sum(1 for r in at_k if r.is_cyclic_cover)
        assert cyclic == 1, f"expected exactly one cyclic cover class at index {k}"
        collected.extend(at_k)
        if any(not r.is_cyclic_cover for r in at_k):
            return k, collected
    return None, collected
