"""Knot diagrams as PD codes, the built-in knot table, and Wirtinger data.

PD convention: each crossing is a 4-tuple (a, b, c, d) of edge labels listed
counterclockwise starting from the incoming under-strand edge a.  Edges are
numbered 1..2n along the knot, so the outgoing under-strand edge is a+1 and
the over-strand edges {b, d} are consecutive.  The crossing sign is +1 when
b = d+1 (mod 2n) and -1 when d = b+1.
"""

from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass
from importlib import resources

from .presentations import GroupPresentation, Word, free_reduce

TABLE_ENV_VAR = "KNOTCOVER_TABLE"


class DiagramError(ValueError):
    pass


@dataclass(frozen=True)
class KnotDiagram:
    crossings: tuple[tuple[int, int, int, int], ...]
    name: str | None = None

    @property
    def crossing_count(self) -> int:
        return len(self.crossings)

    @property
    def edge_count(self) -> int:
        return 2 * len(self.crossings)

    def signs(self) -> list[int]:
        m = self.edge_count
        out = []
        for a, b, c, d in self.crossings:
            if b % m == (d + 1) % m:
                out.append(1)
            elif d % m == (b + 1) % m:
                out.append(-1)
            else:  # unreachable after validation
                raise DiagramError(f"over-strand edges not consecutive at {(a, b, c, d)}")
        return out

    def writhe(self) -> int:
        return sum(self.signs())


def validate_diagram(crossings, name=None) -> KnotDiagram:
    crossings = [tuple(int(x) for x in c) for c in crossings]
    if not crossings:
        raise DiagramError("empty diagram")
    for c in crossings:
        if len(c) != 4:
            raise DiagramError(f"crossing {c} is not a 4-tuple")
    n = len(crossings)
    m = 2 * n
    labels = [x for c in crossings for x in c]
    lo = min(labels)
    if lo == 0:  # accept 0-based input, normalize to 1..2n
        crossings = [tuple(x + 1 for x in c) for c in crossings]
        labels = [x + 1 for x in labels]
    counts: dict[int, int] = {}
    for x in labels:
        counts[x] = counts.get(x, 0) + 1
    if sorted(counts) != list(range(1, m + 1)):
        raise DiagramError(f"edge labels must be exactly 1..{m}")
    bad = [x for x, k in counts.items() if k != 2]
    if bad:
        raise DiagramError(f"edge labels {sorted(bad)} do not occur exactly twice")
    for a, b, c, d in crossings:
        if c % m != (a + 1) % m:
            raise DiagramError(
                "under-strand edges are not consecutive; this PD code is not "
                "a single-component knot in traversal labelling")
        if not (b % m == (d + 1) % m or d % m == (b + 1) % m):
            raise DiagramError(
                f"over-strand edges not consecutive at crossing {(a, b, c, d)}")
    return KnotDiagram(tuple(crossings), name)


_PD_CROSSING = re.compile(r"[Xx][\(\[]\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*[\)\]]")


def parse_pd(text: str, name: str | None = None) -> KnotDiagram:
    """Parse `PD[X(1,4,2,5), ...]` or a JSON list of 4-tuples."""
    text = text.strip()
    if not text:
        raise DiagramError("empty diagram")
    if text.startswith("[") or text.startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise DiagramError(f"malformed JSON PD code: {e}") from None
        if not isinstance(data, list):
            raise DiagramError("JSON PD code must be a list of 4-tuples")
        return validate_diagram(data, name)
    body = text
    mo = re.match(r"^PD\s*[\[\(](.*)[\]\)]$", text, re.IGNORECASE | re.DOTALL)
    if mo:
        body = mo.group(1)
    found = _PD_CROSSING.findall(body)
    if not found:
        raise DiagramError("no crossings found (expected PD[X(a,b,c,d), ...])")
    leftover = _PD_CROSSING.sub("", body).replace(",", "").strip()
    if leftover:
        raise DiagramError(f"unparsed PD content: {leftover!r}")
    return validate_diagram([tuple(map(int, g)) for g in found], name)


# ---------------------------------------------------------------------------
# Wirtinger structure


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def _arc_classes(diagram: KnotDiagram):
    """Merge the two over-strand edges at every crossing; the classes are the
    Wirtinger arcs.  Returns (class id per edge (1-based), class -> arc number,
    crossing order sorted by under-in edge)."""
    m = diagram.edge_count
    uf = _UnionFind(m + 1)
    for a, b, c, d in diagram.crossings:
        uf.union(b, d)
    order = sorted(range(len(diagram.crossings)),
                   key=lambda k: diagram.crossings[k][0])
    arc_number: dict[int, int] = {}
    for num, k in enumerate(order, start=1):
        root = uf.find(diagram.crossings[k][0])
        if root in arc_number:
            raise DiagramError("two under-strands on one arc; inconsistent diagram")
        arc_number[root] = num
    if len(arc_number) != len(diagram.crossings):
        raise DiagramError("arc count does not match crossing count")
    return uf, arc_number, order


def wirtinger(diagram: KnotDiagram) -> GroupPresentation:
    """Wirtinger presentation: one generator per arc (n of them), one
    conjugation relator per crossing, generator k ending under crossing k so
    relator k links x_k and x_(k+1).  Generator 1 is the meridian."""
    uf, arc_number, order = _arc_classes(diagram)
    n = diagram.crossing_count
    signs = diagram.signs()
    relators: list[Word] = []
    for pos, k in enumerate(order, start=1):
        a, b, c, d = diagram.crossings[k]
        i = arc_number[uf.find(a)]
        out = arc_number[uf.find(c)]
        o = arc_number[uf.find(b)]
        assert i == pos and out == pos % n + 1
        if signs[k] > 0:
            rel = (i, o, -out, -o)   # x_i x_o = x_o x_out
        else:
            rel = (out, o, -i, -o)   # x_out x_o = x_o x_i
        rel = free_reduce(rel)
        relators.append(rel)
    relators = [r for r in relators if r]
    longitude = longitude_word(diagram)
    return GroupPresentation(max(n, 1), tuple(relators), meridian_index=1,
                             longitude=longitude)


def longitude_word(diagram: KnotDiagram) -> Word:
    """Preferred longitude in Wirtinger generators: walking the knot from the
    start of arc 1, each under-passage contributes the over-arc generator to
    the power of the crossing sign; a final meridian power kills the writhe."""
    uf, arc_number, order = _arc_classes(diagram)
    signs = diagram.signs()
    n = diagram.crossing_count
    word: list[int] = []
    for k in order:
        a, b, c, d = diagram.crossings[k]
        o = arc_number[uf.find(b)]
        s = signs[k]
        word.append(o if s > 0 else -o)
    w = sum(signs)
    word.extend([-1] * w if w > 0 else [1] * (-w))
    return free_reduce(word)


# ---------------------------------------------------------------------------
# built-in table


def _table_path() -> str | None:
    return os.environ.get(TABLE_ENV_VAR)


def load_knot_table() -> dict:
    path = _table_path()
    if path:
        with open(path) as f:
            return json.load(f)
    return json.loads(resources.files("knotcover.data")
                      .joinpath("knot_table.json").read_text())


def knot_names() -> list[str]:
    return sorted(load_knot_table(), key=_name_key)


def _name_key(name: str):
    mo = re.match(r"^(\d+)_(\d+)$", name)
    if mo:
        return (0, int(mo.group(1)), int(mo.group(2)))
    return (1, 0, 0, name)


def builtin_knot(name: str) -> KnotDiagram:
    table = load_knot_table()
    if name not in table:
        raise KeyError(f"unknown knot {name!r}; known: {', '.join(knot_names())}")
    return validate_diagram(table[name]["pd"], name)


def knot_metadata(name: str) -> dict:
    table = load_knot_table()
    if name not in table:
        raise KeyError(f"unknown knot {name!r}")
    return table[name]
