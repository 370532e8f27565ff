"""Kauffman bracket, writhe-normalized polynomial, and diagram fingerprints.

The production bracket contracts crossings one at a time, merging partial
states that induce the same strand pairing on the processed boundary; this
keeps link diagrams of 20ish crossings comfortable.  ``bracket_state_sum``
is the direct 2^n state sum, kept as an independent oracle for tests and
small inputs.

Fingerprints (normalized polynomial up to mirror, determinant, component
count) drive recognition against the bundled reference table of prime
knots through 9 crossings.
"""

from __future__ import annotations

import cmath
import itertools
import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .coloring import determinant
from .diagrams import Diagram
from .errors import CapExceeded, DeluneError
from .laurent import LOOP, LaurentPoly

BRACKET_CAP = 20


def _div_by_delta(b: LaurentPoly) -> LaurentPoly:
    """Exact division by the loop value -A^2 - A^-2."""
    if b.is_zero():
        return b
    items = dict(b.items())
    low = min(items)
    work = {e - low: c for e, c in items.items()}
    quot: dict[int, int] = {}
    for e in range(max(work), 3, -1):
        c = work.get(e, 0)
        if not c:
            continue
        quot[e - 4] = c
        work[e] = 0
        work[e - 4] = work.get(e - 4, 0) - c
    if any(work.get(e, 0) for e in work):
        raise DeluneError("bracket sum not divisible by the loop value")
    # b / (A^4 + 1) shifted back, then times -A^2
    return LaurentPoly({e + low + 2: -c for e, c in quot.items()})


def _contraction_order(d: Diagram) -> list[int]:
    """Process crossings so the open boundary stays small."""
    remaining = set(range(d.n))
    order = [0]
    remaining.discard(0)
    while remaining:
        def gain(c):
            return sum(
                1 for i in range(4)
                if d.mate((c, i))[0] not in remaining or d.mate((c, i))[0] == c
            )
        best = max(sorted(remaining), key=gain)
        order.append(best)
        remaining.discard(best)
    return order


def kauffman_bracket(d: Diagram, cap: int = BRACKET_CAP) -> LaurentPoly:
    """Bracket polynomial in the variable A, with the unknot normalized to 1."""
    if d.n == 0:
        return LaurentPoly.one()
    if d.n > cap:
        raise CapExceeded(f"bracket limited to {cap} crossings, got {d.n}")

    A = LaurentPoly.monomial(1)
    Ainv = LaurentPoly.monomial(-1)
    states: dict[frozenset, LaurentPoly] = {frozenset(): LaurentPoly.one()}
    processed: set[int] = set()
    for c in _contraction_order(d):
        mates = [d.mate((c, i)) for i in range(4)]
        new_states: dict[frozenset, LaurentPoly] = {}
        for pairing, weight in states.items():
            pmap = {}
            for pr in pairing:
                a, b = tuple(pr)
                pmap[a] = b
                pmap[b] = a
            kept = [pr for pr in pairing if not any(q[0] == c for q in pr)]
            for arcs, factor in ((((0, 1), (2, 3)), A), (((0, 3), (1, 2)), Ainv)):
                # splice the two smoothing arcs into the open strands; the
                # local graph is a disjoint union of terminal-to-terminal
                # paths and closed loops, with parallel edges possible, so
                # walk by edge id rather than by neighbor
                adj: dict[tuple, list[tuple[int, tuple]]] = {}
                n_links = 0

                def link(u, v):
                    nonlocal n_links
                    adj.setdefault(u, []).append((n_links, v))
                    adj.setdefault(v, []).append((n_links, u))
                    n_links += 1

                for a, b in arcs:
                    link(("s", a), ("s", b))
                for i in range(4):
                    m = mates[i]
                    if m[0] == c:
                        if i < m[1]:
                            link(("s", i), ("s", m[1]))
                    elif (c, i) in pmap:
                        q = pmap[(c, i)]
                        if q[0] == c:
                            if i < q[1]:
                                link(("s", i), ("s", q[1]))
                        else:
                            link(("s", i), ("t", q))
                    else:
                        link(("s", i), ("t", m))

                new_pairs = list(kept)
                used: set[int] = set()
                for start in sorted(adj):
                    if start[0] != "t":
                        continue
                    (k0, node), = adj[start]
                    if k0 in used:
                        continue
                    used.add(k0)
                    while node[0] != "t":
                        k, node = next(
                            (k, v) for k, v in adj[node] if k not in used
                        )
                        used.add(k)
                    new_pairs.append(frozenset({start[1], node[1]}))
                loops = 0
                for start in sorted(adj):
                    for k0, v0 in adj[start]:
                        if k0 in used:
                            continue
                        loops += 1
                        used.add(k0)
                        node = v0
                        while True:
                            step = next(
                                ((k, v) for k, v in adj[node] if k not in used),
                                None,
                            )
                            if step is None:
                                break
                            used.add(step[0])
                            node = step[1]
                assert len(used) == n_links

                w = weight * factor
                for _ in range(loops):
                    w = w * LOOP
                key = frozenset(new_pairs)
                if key in new_states:
                    new_states[key] = new_states[key] + w
                else:
                    new_states[key] = w
        states = new_states
        processed.add(c)

    total = LaurentPoly.zero()
    for pairing, weight in states.items():
        assert not pairing, "open strands left after full contraction"
        total = total + weight
    return _div_by_delta(total)


def bracket_state_sum(d: Diagram, cap: int = 12) -> LaurentPoly:
    """Direct 2^n evaluation; the slow oracle the contraction is tested against."""
    if d.n == 0:
        return LaurentPoly.one()
    if d.n > cap:
        raise CapExceeded(f"state sum limited to {cap} crossings, got {d.n}")
    darts = [(c, i) for c in range(d.n) for i in range(4)]
    index = {dd: k for k, dd in enumerate(darts)}
    edge_joins = []
    for e, (a, b) in d.edge_ends.items():
        edge_joins.append((index[a], index[b]))

    total = LaurentPoly.zero()
    for bits in itertools.product((0, 1), repeat=d.n):
        parent = list(range(len(darts)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            parent[find(x)] = find(y)

        for x, y in edge_joins:
            union(x, y)
        exp = 0
        for c, bit in enumerate(bits):
            arcs = ((0, 1), (2, 3)) if bit == 0 else ((0, 3), (1, 2))
            exp += 1 if bit == 0 else -1
            for a, b in arcs:
                union(index[(c, a)], index[(c, b)])
        loops = len({find(k) for k in range(len(darts))})
        term = LaurentPoly.monomial(exp)
        for _ in range(loops - 1):
            term = term * LOOP
        total = total + term
    return total


def normalized_polynomial(d: Diagram, cap: int = BRACKET_CAP) -> LaurentPoly:
    """Bracket times (-A^3)^(-writhe): invariant under all three moves."""
    w = d.writhe
    prefactor = LaurentPoly.monomial(-3 * w, 1 if w % 2 == 0 else -1)
    return prefactor * kauffman_bracket(d, cap)


def determinant_from_polynomial(f: LaurentPoly) -> int:
    """|f| at A = exp(i*pi/4); numeric cross-check for the coloring route."""
    return round(abs(f.evaluate(cmath.exp(1j * cmath.pi / 4))))


@dataclass(frozen=True)
class Fingerprint:
    """Mirror-blind invariant triple used for table lookup."""

    f_key: str
    det: int
    components: int

    @classmethod
    def of(cls, d: Diagram, cap: int = BRACKET_CAP) -> "Fingerprint":
        f = normalized_polynomial(d, cap)
        key = min(f.key(), f.mirror().key())
        return cls(key, determinant(d), d.n_components)


class ReferenceTable:
    """Bundled invariants of prime knots through 9 crossings.

    Built once by scripts/build_reference_table.py from tangle
    presentations; the JSON payload is frozen into package data.
    """

    def __init__(self, payload: dict):
        self.entries = payload["knots"]
        self._by_name = {e["name"]: e for e in self.entries}
        self._by_print: dict[tuple[str, int], list[str]] = {}
        for e in self.entries:
            self._by_print.setdefault((e["f_key"], e["det"]), []).append(e["name"])

    @classmethod
    @lru_cache(maxsize=1)
    def bundled(cls) -> "ReferenceTable":
        text = resources.files("delune").joinpath("data/knots9.json").read_text()
        return cls(json.loads(text))

    @property
    def names(self) -> list[str]:
        return [e["name"] for e in self.entries]

    def entry(self, name: str) -> dict:
        return self._by_name[name]

    def diagram(self, name: str) -> Diagram:
        return Diagram.from_json_obj({"crossings": self._by_name[name]["pd"]})

    def lookup(self, fp: Fingerprint) -> tuple[str, ...]:
        if fp.components != 1:
            return ()
        return tuple(self._by_print.get((fp.f_key, fp.det), ()))

    def recognize(self, d: Diagram, cap: int = BRACKET_CAP) -> tuple[str, ...]:
        """Candidate knot names; more than one only for table-level clashes."""
        return self.lookup(Fingerprint.of(d, cap))


def recognize(d: Diagram, cap: int = BRACKET_CAP) -> tuple[str, ...]:
    return ReferenceTable.bundled().recognize(d, cap)
