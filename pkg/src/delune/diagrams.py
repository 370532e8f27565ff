"""Planar diagrams of knots and links as signed Gauss/PD data.

A crossing is a 4-tuple of edge labels listed counterclockwise starting at
the incoming under-strand, plus a sign:

    slot 0: under-strand in          slot 2: under-strand out
    sign +1: over-strand enters at slot 3 and leaves at slot 1
    sign -1: over-strand enters at slot 1 and leaves at slot 3

Edges are oriented arcs between consecutive crossings; every edge label
appears exactly twice, once at an entry slot and once at an exit slot.
Faces are traced by the dart rule: from the dart (c, i) follow the edge to
its far end (c', j) and continue with (c', j+1 mod 4).  A valid diagram is
connected and spherical, i.e. faces == crossings + 2.

The flat (unsigned, unoriented) version of the same data drives shadow
enumeration; ``FlatDiagram.assign`` lifts a shadow back to a signed diagram
by choosing which strand goes under at each vertex.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import InvalidDiagram

Dart = tuple[int, int]

UNDER_IN = 0
UNDER_OUT = 2


def over_in_slot(sign: int) -> int:
    return 3 if sign > 0 else 1


def over_out_slot(sign: int) -> int:
    return 1 if sign > 0 else 3


def is_over_slot(slot: int) -> bool:
    """Slots 1 and 3 carry the over-strand regardless of sign."""
    return slot % 2 == 1


def strand_exit(slot: int) -> int:
    """The slot where a strand entering at ``slot`` leaves the crossing."""
    return (slot + 2) % 4


def _build_ends(edge_tuples: Sequence[tuple[int, int, int, int]]) -> dict[int, list[Dart]]:
    ends: dict[int, list[Dart]] = {}
    for c, edges in enumerate(edge_tuples):
        for i, e in enumerate(edges):
            ends.setdefault(e, []).append((c, i))
    for e, occ in ends.items():
        if len(occ) != 2:
            raise InvalidDiagram(f"edge {e} has {len(occ)} endpoints, expected 2")
    return ends


def _trace_faces(
    edge_tuples: Sequence[tuple[int, int, int, int]],
    ends: dict[int, list[Dart]],
) -> list[list[Dart]]:
    def mate(c: int, i: int) -> Dart:
        a, b = ends[edge_tuples[c][i]]
        return b if a == (c, i) else a

    seen: set[Dart] = set()
    faces: list[list[Dart]] = []
    for c in range(len(edge_tuples)):
        for i in range(4):
            if (c, i) in seen:
                continue
            walk: list[Dart] = []
            d = (c, i)
            while d not in seen:
                seen.add(d)
                walk.append(d)
                mc, mi = mate(*d)
                d = (mc, (mi + 1) % 4)
            if d != walk[0]:
                raise InvalidDiagram("face walk does not close; corrupt edge data")
            faces.append(walk)
    return faces


def _check_connected(edge_tuples: Sequence[tuple[int, int, int, int]],
                     ends: dict[int, list[Dart]]) -> None:
    n = len(edge_tuples)
    if n <= 1:
        return
    seen = {0}
    stack = [0]
    while stack:
        c = stack.pop()
        for e in edge_tuples[c]:
            for c2, _ in ends[e]:
                if c2 not in seen:
                    seen.add(c2)
                    stack.append(c2)
    if len(seen) != n:
        raise InvalidDiagram(
            f"diagram is split: {len(seen)} of {n} crossings reachable from crossing 0"
        )


def _canonical_traverse(
    edge_tuples: Sequence[tuple[int, int, int, int]],
    ends: dict[int, list[Dart]],
    signs: Sequence[int] | None,
    c0: int,
    s0: int,
) -> tuple:
    """Relabel crossings/slots from a start dart and emit a comparable code."""

    def mate(c: int, i: int) -> Dart:
        a, b = ends[edge_tuples[c][i]]
        return b if a == (c, i) else a

    order = [c0]
    base = {c0: s0}
    idx = {c0: 0}
    k = 0
    while k < len(order):
        c = order[k]
        b = base[c]
        for r in range(4):
            c2, j2 = mate(c, (b + r) % 4)
            if c2 not in idx:
                idx[c2] = len(order)
                base[c2] = j2
                order.append(c2)
        k += 1
    tokens: list[int] = []
    for c in order:
        b = base[c]
        for r in range(4):
            c2, j2 = mate(c, (b + r) % 4)
            tokens.append(idx[c2])
            tokens.append((j2 - base[c2]) % 4)
        if signs is not None:
            tokens.append((0 - b) % 4)
            tokens.append(1 if signs[c] > 0 else 0)
    return tuple(tokens)


def _canonical_code(
    edge_tuples: Sequence[tuple[int, int, int, int]],
    signs: Sequence[int] | None,
    reflect_variant,
) -> str:
    """Minimum traversal code over all start darts of both mirror variants."""
    best: tuple | None = None
    for tuples, sgns in (
        (edge_tuples, signs),
        reflect_variant,
    ):
        ends = _build_ends(tuples)
        for c0 in range(len(tuples)):
            for s0 in range(4):
                code = _canonical_traverse(tuples, ends, sgns, c0, s0)
                if best is None or code < best:
                    best = code
    assert best is not None
    return ".".join(str(t) for t in best)


@dataclass(frozen=True)
class Crossing:
    """One crossing: edges counterclockwise from the under-strand entry."""

    edges: tuple[int, int, int, int]
    sign: int

    def __post_init__(self):
        if not isinstance(self.edges, tuple):
            object.__setattr__(self, "edges", tuple(self.edges))
        if len(self.edges) != 4 or any(not isinstance(e, int) or e < 0 for e in self.edges):
            raise InvalidDiagram(f"crossing edges must be 4 non-negative ints, got {self.edges}")
        if self.sign not in (-1, 1):
            raise InvalidDiagram(f"crossing sign must be +1 or -1, got {self.sign}")

    @property
    def over_in(self) -> int:
        return self.edges[over_in_slot(self.sign)]

    @property
    def over_out(self) -> int:
        return self.edges[over_out_slot(self.sign)]

    @property
    def under_in(self) -> int:
        return self.edges[UNDER_IN]

    @property
    def under_out(self) -> int:
        return self.edges[UNDER_OUT]

    def reflected(self) -> "Crossing":
        e0, e1, e2, e3 = self.edges
        return Crossing((e0, e3, e2, e1), -self.sign)

    def switched(self) -> "Crossing":
        """Exchange over and under strands (a crossing change)."""
        e0, e1, e2, e3 = self.edges
        if self.sign > 0:
            return Crossing((e3, e0, e1, e2), -1)
        return Crossing((e1, e2, e3, e0), 1)


@dataclass(frozen=True)
class Face:
    """A complementary region, stored as its counterclockwise dart walk."""

    index: int
    darts: tuple[Dart, ...]
    edges: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.darts)

    @property
    def crossings(self) -> tuple[int, ...]:
        return tuple(sorted({c for c, _ in self.darts}))


@dataclass(frozen=True)
class Tassel:
    """A maximal twist region: consecutive crossings joined by clasp lunes.

    ``crossings`` lists the chain in order; all share ``sign``.  ``cyclic``
    marks chains that close up on themselves (the standard torus diagrams).
    """

    crossings: tuple[int, ...]
    sign: int
    cyclic: bool
    lunes: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.crossings)


@dataclass(frozen=True)
class LuneReport:
    """Classified degree-2 faces of one diagram.

    ``tassels`` covers lunes whose two crossings have equal signs (twist
    regions); ``reducible_pairs`` are opposite-sign lunes that a Reidemeister
    II move removes; ``curls`` are lunes with both corners at one crossing
    (Reidemeister I).  ``stray`` holds twist lunes that could not be chained
    into a disjoint site and is empty for every diagram arising here.
    """

    tassels: tuple[Tassel, ...]
    reducible_pairs: tuple[Face, ...]
    curls: tuple[Face, ...]
    stray: tuple[Face, ...] = ()

    @property
    def lune_count(self) -> int:
        n = len(self.reducible_pairs) + len(self.curls) + len(self.stray)
        return n + sum(len(t.lunes) for t in self.tassels)


@dataclass(frozen=True)
class Diagram:
    """A connected spherical link diagram plus optional crossingless circle.

    ``free_circles`` is only meaningful for the zero-crossing unknot; a
    positive value alongside crossings would be a split link, which is
    rejected.
    """

    crossings: tuple[Crossing, ...]
    free_circles: int = 0

    def __post_init__(self):
        if not isinstance(self.crossings, tuple):
            object.__setattr__(self, "crossings", tuple(self.crossings))
        if self.free_circles < 0:
            raise InvalidDiagram("free_circles must be non-negative")
        if self.n == 0:
            if self.free_circles == 0:
                raise InvalidDiagram("empty diagram: no crossings and no circle")
            if self.free_circles > 1:
                raise InvalidDiagram("multiple free circles form a split link")
            return
        if self.free_circles:
            raise InvalidDiagram("free circle alongside crossings forms a split link")
        ends = _build_ends(self._edge_tuples)
        for c, x in enumerate(self.crossings):
            ins = {UNDER_IN, over_in_slot(x.sign)}
            for i, e in enumerate(x.edges):
                occ = ends[e]
                other = occ[1] if occ[0] == (c, i) else occ[0]
                here_in = i in ins
                oc, oi = other
                oins = {UNDER_IN, over_in_slot(self.crossings[oc].sign)}
                if here_in == (oi in oins):
                    raise InvalidDiagram(
                        f"edge {e} is not consistently oriented between "
                        f"crossings {c} and {oc}"
                    )
        _check_connected(self._edge_tuples, ends)
        faces = _trace_faces(self._edge_tuples, ends)
        if len(faces) != self.n + 2:
            raise InvalidDiagram(
                f"diagram is not spherical: {len(faces)} faces for {self.n} "
                f"crossings (expected {self.n + 2})"
            )

    # -- basic accessors ---------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.crossings)

    @property
    def _edge_tuples(self) -> list[tuple[int, int, int, int]]:
        return [x.edges for x in self.crossings]

    @cached_property
    def edge_ends(self) -> dict[int, tuple[Dart, Dart]]:
        ends = _build_ends(self._edge_tuples)
        return {e: (occ[0], occ[1]) for e, occ in ends.items()}

    @property
    def edge_labels(self) -> list[int]:
        return sorted(self.edge_ends)

    def edge_at(self, dart: Dart) -> int:
        return self.crossings[dart[0]].edges[dart[1]]

    def mate(self, dart: Dart) -> Dart:
        a, b = self.edge_ends[self.edge_at(dart)]
        return b if a == dart else a

    def is_entry(self, dart: Dart) -> bool:
        c, i = dart
        return i in (UNDER_IN, over_in_slot(self.crossings[c].sign))

    @cached_property
    def direction(self) -> dict[int, tuple[Dart, Dart]]:
        """Edge label -> (exit dart, entry dart) along its orientation."""
        out = {}
        for e, (a, b) in self.edge_ends.items():
            out[e] = (b, a) if self.is_entry(a) else (a, b)
        return out

    @property
    def writhe(self) -> int:
        return sum(x.sign for x in self.crossings)

    # -- faces and components ----------------------------------------------

    @cached_property
    def faces(self) -> tuple[Face, ...]:
        if self.n == 0:
            return ()
        walks = _trace_faces(self._edge_tuples, _build_ends(self._edge_tuples))
        return tuple(
            Face(i, tuple(w), tuple(self.edge_at(d) for d in w))
            for i, w in enumerate(walks)
        )

    @property
    def face_degrees(self) -> list[int]:
        return sorted(f.degree for f in self.faces)

    @cached_property
    def n_components(self) -> int:
        if self.n == 0:
            return self.free_circles
        parent = {e: e for e in self.edge_ends}

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for x in self.crossings:
            parent[find(x.edges[0])] = find(x.edges[2])
            parent[find(x.edges[1])] = find(x.edges[3])
        return len({find(e) for e in parent})

    @cached_property
    def arcs(self) -> dict[int, int]:
        """Edge label -> arc id, merging edges across over-strand passages.

        Arcs are the coloring variables: an arc keeps one color while it
        bridges over any number of crossings.
        """
        parent = {e: e for e in self.edge_ends}

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for x in self.crossings:
            parent[find(x.over_in)] = find(x.over_out)
        reps = sorted({find(e) for e in parent})
        lookup = {r: i for i, r in enumerate(reps)}
        return {e: lookup[find(e)] for e in parent}

    @property
    def n_arcs(self) -> int:
        return len(set(self.arcs.values())) if self.n else self.free_circles

    # -- lunes and tassels -------------------------------------------------

    @property
    def lunes(self) -> tuple[Face, ...]:
        return tuple(f for f in self.faces if f.degree == 2)

    @property
    def is_lune_free(self) -> bool:
        return all(f.degree != 2 for f in self.faces)

    @cached_property
    def lune_report(self) -> LuneReport:
        curls = []
        pairs = []
        twist: list[Face] = []
        for f in self.lunes:
            (ca, ia), (cb, ib) = f.darts
            if ca == cb:
                curls.append(f)
            elif (ia % 2 == 1) != (ib % 2 == 0):
                twist.append(f)
            else:
                pairs.append(f)

        adj: dict[int, dict[int, list[Face]]] = {}
        for f in twist:
            (ca, _), (cb, _) = f.darts
            adj.setdefault(ca, {}).setdefault(cb, []).append(f)
            adj.setdefault(cb, {}).setdefault(ca, []).append(f)

        sites: list[Tassel] = []
        stray: list[Face] = []
        unseen = set(adj)
        while unseen:
            start = min(unseen)
            comp = {start}
            stack = [start]
            while stack:
                c = stack.pop()
                for c2 in adj[c]:
                    if c2 not in comp:
                        comp.add(c2)
                        stack.append(c2)
            unseen -= comp

            simple = all(len(v) == 1 for c in comp for v in adj[c].values())
            degs = {c: len(adj[c]) for c in comp}
            if len(comp) == 2 and not simple:
                chain = sorted(comp)
                cyclic = True
            elif simple and all(d <= 2 for d in degs.values()):
                endpoints = sorted(c for c, d in degs.items() if d == 1)
                cyclic = not endpoints
                cur = endpoints[0] if endpoints else min(comp)
                chain = [cur]
                prev = None
                while len(chain) < len(comp):
                    nxt = min(c for c in adj[cur] if c != prev)
                    prev, cur = cur, nxt
                    chain.append(cur)
            else:
                # Branching twist clusters do not occur in the diagrams this
                # package produces; report their lunes unchained rather than
                # guess a schedule for them.
                for c in sorted(comp):
                    for c2, fs in adj[c].items():
                        if c < c2:
                            stray.extend(fs)
                continue

            lune_ids = []
            for a, b in zip(chain, chain[1:]):
                lune_ids.extend(f.index for f in adj[a][b])
            if cyclic and len(chain) > 2:
                lune_ids.extend(f.index for f in adj[chain[-1]][chain[0]])
            sign = self.crossings[chain[0]].sign
            if any(self.crossings[c].sign != sign for c in chain):
                # Equal-sign is what makes a chain a twist region; a mixed
                # chain means the classification above is wrong for this
                # diagram, so surface its lunes instead of mis-reporting.
                for a, b in zip(chain, chain[1:]):
                    stray.extend(adj[a][b])
                continue
            sites.append(Tassel(tuple(chain), sign, cyclic, tuple(sorted(lune_ids))))

        sites.sort(key=lambda t: t.crossings)
        return LuneReport(tuple(sites), tuple(pairs), tuple(curls), tuple(stray))

    # -- constructors ------------------------------------------------------

    @classmethod
    def unknot(cls) -> "Diagram":
        return cls((), free_circles=1)

    @classmethod
    def from_braid(cls, word: Sequence[int], strands: int | None = None) -> "Diagram":
        """Plat-free braid closure.

        ``word`` uses the usual convention: letter ``+i`` crosses strand
        ``i+1`` over strand ``i`` (a positive crossing once closed), ``-i``
        the opposite.  Every strand position must be used by at least one
        letter, otherwise the closure is split.
        """
        word = list(word)
        if not word:
            raise InvalidDiagram("empty braid word")
        if any(not isinstance(w, int) or w == 0 for w in word):
            raise InvalidDiagram(f"braid letters must be non-zero ints, got {word}")
        width = max(abs(w) for w in word) + 1
        if strands is None:
            strands = width
        if strands < width:
            raise InvalidDiagram(f"braid letter exceeds {strands} strands")
        used = {abs(w) for w in word}
        if set(range(1, strands)) - used:
            raise InvalidDiagram("unused strand position: closure would be split")

        start = list(range(strands))
        cur = list(start)
        nxt = strands
        raw: list[tuple[tuple[int, int, int, int], int]] = []
        for w in word:
            i = abs(w) - 1
            a, b = cur[i], cur[i + 1]
            c, d = nxt, nxt + 1
            nxt += 2
            if w > 0:
                raw.append(((a, c, d, b), 1))
            else:
                raw.append(((b, a, c, d), -1))
            cur[i], cur[i + 1] = c, d

        parent = list(range(nxt))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for p in range(strands):
            parent[find(cur[p])] = find(start[p])
        reps = sorted({find(e) for e in range(nxt)})
        dense = {r: i for i, r in enumerate(reps)}
        crossings = tuple(
            Crossing(tuple(dense[find(e)] for e in edges), s) for edges, s in raw
        )
        return cls(crossings)

    @classmethod
    def from_json_obj(cls, obj) -> "Diagram":
        if not isinstance(obj, dict) or "crossings" not in obj:
            raise InvalidDiagram("expected an object with a 'crossings' list")
        xs = []
        for item in obj["crossings"]:
            if isinstance(item, dict):
                edges, sign = item.get("edges"), item.get("sign")
            elif isinstance(item, (list, tuple)) and len(item) == 5:
                edges, sign = item[:4], item[4]
            else:
                raise InvalidDiagram(f"bad crossing entry: {item!r}")
            if not isinstance(edges, (list, tuple)) or len(edges) != 4:
                raise InvalidDiagram(f"bad crossing edges: {edges!r}")
            xs.append(Crossing(tuple(int(e) for e in edges), int(sign)))
        return cls(tuple(xs), free_circles=int(obj.get("free_circles", 0)))

    @classmethod
    def parse(cls, text: str) -> "Diagram":
        """Parse either the JSON form or the line-based ``X e0 e1 e2 e3 s`` form."""
        stripped = text.strip()
        if not stripped:
            raise InvalidDiagram("empty input")
        if stripped[0] in "{[":
            try:
                obj = json.loads(stripped)
            except json.JSONDecodeError as exc:
                raise InvalidDiagram(f"bad JSON: {exc}") from exc
            if isinstance(obj, list):
                obj = {"crossings": obj}
            return cls.from_json_obj(obj)
        xs = []
        circles = 0
        for lineno, line in enumerate(stripped.splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            tok = line.split()
            if tok == ["O"]:
                circles += 1
                continue
            if tok and tok[0].upper() == "X":
                tok = tok[1:]
            if len(tok) != 5:
                raise InvalidDiagram(f"line {lineno}: expected 'X e0 e1 e2 e3 sign'")
            try:
                vals = [int(t) for t in tok]
            except ValueError as exc:
                raise InvalidDiagram(f"line {lineno}: {exc}") from exc
            xs.append(Crossing(tuple(vals[:4]), vals[4]))
        return cls(tuple(xs), free_circles=circles)

    # -- output ------------------------------------------------------------

    def to_json_obj(self) -> dict:
        return {
            "crossings": [{"edges": list(x.edges), "sign": x.sign} for x in self.crossings],
            "free_circles": self.free_circles,
        }

    def to_text(self) -> str:
        lines = ["O"] * self.free_circles
        lines += [
            f"X {x.edges[0]} {x.edges[1]} {x.edges[2]} {x.edges[3]} {x.sign:+d}"
            for x in self.crossings
        ]
        return "\n".join(lines)

    # -- transforms --------------------------------------------------------

    def reflected(self) -> "Diagram":
        """Mirror image: reverse the cyclic order at every crossing."""
        return Diagram(tuple(x.reflected() for x in self.crossings), self.free_circles)

    def with_crossing_switched(self, k: int) -> "Diagram":
        xs = list(self.crossings)
        xs[k] = xs[k].switched()
        return Diagram(tuple(xs), self.free_circles)

    def renumbered(self) -> "Diagram":
        """Relabel edges 0..2n-1 in order of first appearance."""
        lookup: dict[int, int] = {}
        xs = []
        for x in self.crossings:
            for e in x.edges:
                if e not in lookup:
                    lookup[e] = len(lookup)
            xs.append(Crossing(tuple(lookup[e] for e in x.edges), x.sign))
        return Diagram(tuple(xs), self.free_circles)

    def canonical_code(self) -> str:
        """Label-free code, minimal over start darts and reflection.

        Two diagrams get the same code exactly when they match as oriented
        sphere diagrams up to relabeling and mirror reflection.
        """
        if self.n == 0:
            return "O"
        signs = [x.sign for x in self.crossings]
        refl = self.reflected()
        return _canonical_code(
            self._edge_tuples,
            signs,
            (refl._edge_tuples, [x.sign for x in refl.crossings]),
        )

    def shadow(self) -> "FlatDiagram":
        return FlatDiagram(tuple(x.edges for x in self.crossings))


@dataclass(frozen=True)
class FlatDiagram:
    """An unsigned, unoriented 4-valent spherical shadow."""

    crossings: tuple[tuple[int, int, int, int], ...]

    def __post_init__(self):
        if not self.crossings:
            raise InvalidDiagram("empty shadow")
        ends = _build_ends(self.crossings)
        _check_connected(self.crossings, ends)
        faces = _trace_faces(self.crossings, ends)
        if len(faces) != self.n + 2:
            raise InvalidDiagram(
                f"shadow is not spherical: {len(faces)} faces for {self.n} vertices"
            )

    @property
    def n(self) -> int:
        return len(self.crossings)

    @cached_property
    def edge_ends(self) -> dict[int, tuple[Dart, Dart]]:
        ends = _build_ends(self.crossings)
        return {e: (occ[0], occ[1]) for e, occ in ends.items()}

    def mate(self, dart: Dart) -> Dart:
        a, b = self.edge_ends[self.crossings[dart[0]][dart[1]]]
        return b if a == dart else a

    @cached_property
    def face_degrees(self) -> list[int]:
        walks = _trace_faces(self.crossings, _build_ends(self.crossings))
        return sorted(len(w) for w in walks)

    @cached_property
    def strand_walks(self) -> list[list[Dart]]:
        """Transversal cycles; each dart in a walk is where the strand enters."""
        walks = []
        seen: set[Dart] = set()
        for c in range(self.n):
            for i in range(4):
                if (c, i) in seen:
                    continue
                walk = []
                d = (c, i)
                while d not in seen:
                    seen.add(d)
                    seen.add((d[0], strand_exit(d[1])))
                    walk.append(d)
                    d = self.mate((d[0], strand_exit(d[1])))
                walks.append(walk)
        return walks

    @property
    def n_components(self) -> int:
        return len(self.strand_walks)

    @cached_property
    def entry_darts(self) -> set[Dart]:
        """One orientation choice per strand: darts where strands enter."""
        return {d for walk in self.strand_walks for d in walk}

    def canonical_code(self) -> str:
        flipped = tuple((e0, e3, e2, e1) for e0, e1, e2, e3 in self.crossings)
        return _canonical_code(self.crossings, None, (flipped, None))

    def assign(self, under_bits: int) -> Diagram:
        """Lift the shadow: bit k = 0 puts the (slot 0, slot 2) strand of
        vertex k underneath, bit k = 1 the (slot 1, slot 3) strand."""
        xs = []
        for c, edges in enumerate(self.crossings):
            pair = (under_bits >> c) & 1
            u_in = pair if (c, pair) in self.entry_darts else pair + 2
            o_in = next(s for s in ((1 - pair), (1 - pair) + 2)
                        if (c, s) in self.entry_darts)
            rot = tuple(edges[(u_in + r) % 4] for r in range(4))
            sign = 1 if (o_in - u_in) % 4 == 3 else -1
            xs.append(Crossing(rot, sign))
        return Diagram(tuple(xs))

    def alternating_bits(self) -> int:
        """Bit assignment making the lift alternating along every strand."""
        constraints: dict[int, list[tuple[int, int]]] = {c: [] for c in range(self.n)}
        for walk in self.strand_walks:
            passages = [(c, 0 if i in (0, 2) else 1) for c, i in walk]
            m = len(passages)
            for t in range(m):
                (c1, p1), (c2, p2) = passages[t], passages[(t + 1) % m]
                parity = p1 ^ p2 ^ 1
                constraints[c1].append((c2, parity))
                constraints[c2].append((c1, parity))
        bits: dict[int, int] = {}
        for c0 in range(self.n):
            if c0 in bits:
                continue
            bits[c0] = 0
            stack = [c0]
            while stack:
                c = stack.pop()
                for c2, parity in constraints[c]:
                    want = bits[c] ^ parity
                    if c2 in bits:
                        if bits[c2] != want:
                            raise InvalidDiagram("shadow admits no alternating lift")
                    else:
                        bits[c2] = want
                        stack.append(c2)
        return sum(bits[c] << c for c in range(self.n))
