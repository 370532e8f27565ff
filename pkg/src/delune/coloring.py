"""Fox colorings of diagrams: counts, determinant, and minimum palettes.

Colors live on arcs (over-strands), one variable per arc.  Every crossing
imposes ``under_in + under_out - 2 * over = 0``.  The integer structure of
that relation matrix (its Smith form) gives the determinant and the count
of colorings mod any m; the mod-p kernel gives concrete colorings.

Two colorings are equivalent when an affine map ``x -> a*x + b`` (a a unit
mod p) carries one to the other; palette size is constant on classes, so
the diagram-level minimum scans one representative per class.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Mapping

from .diagrams import Diagram
from .snf import smith_normal_form


def relation_matrix(d: Diagram) -> list[list[int]]:
    arcs = d.arcs
    width = d.n_arcs
    rows = []
    for x in d.crossings:
        row = [0] * width
        row[arcs[x.under_in]] += 1
        row[arcs[x.under_out]] += 1
        row[arcs[x.over_in]] -= 2
        rows.append(row)
    return rows


@dataclass(frozen=True)
class ColoringSpace:
    """Modulus-independent summary of a diagram's coloring relations."""

    divisors: tuple[int, ...]
    n_arcs: int

    @property
    def rank(self) -> int:
        return len(self.divisors)

    @property
    def determinant(self) -> int:
        if self.rank != self.n_arcs - 1:
            return 0
        return math.prod(self.divisors)

    def count(self, m: int) -> int:
        if m < 1:
            raise ValueError("modulus must be positive")
        free = self.n_arcs - self.rank
        return m ** free * math.prod(math.gcd(div, m) for div in self.divisors)

    def has_nontrivial(self, m: int) -> bool:
        return self.count(m) > m


def coloring_space(d: Diagram) -> ColoringSpace:
    if d.n == 0:
        return ColoringSpace((), d.n_arcs)
    return ColoringSpace(tuple(smith_normal_form(relation_matrix(d))), d.n_arcs)


def determinant(d: Diagram) -> int:
    return coloring_space(d).determinant


def count_colorings(d: Diagram, m: int) -> int:
    return coloring_space(d).count(m)


# -- mod-p colorings -------------------------------------------------------

def _kernel_mod_p(rows: list[list[int]], width: int, p: int) -> list[list[int]]:
    """Kernel basis of the matrix over GF(p), in RREF free-column form."""
    M = [[v % p for v in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(width):
        pr = next((i for i in range(r, len(M)) if M[i][c]), None)
        if pr is None:
            continue
        M[r], M[pr] = M[pr], M[r]
        inv = pow(M[r][c], -1, p)
        M[r] = [(v * inv) % p for v in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [(a - f * b) % p for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    free = [c for c in range(width) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * width
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-M[i][fc]) % p
        basis.append(v)
    return basis


def coloring_rank_mod_p(d: Diagram, p: int) -> int:
    """Dimension of the mod-p coloring space (1 means trivial only)."""
    if d.n == 0:
        return 1
    return len(_kernel_mod_p(relation_matrix(d), d.n_arcs, p))


def class_representatives(d: Diagram, p: int) -> Iterator[tuple[int, ...]]:
    """One arc-coloring per affine class of nontrivial mod-p colorings.

    The scan is deterministic, so the first palette minimizer is stable.
    """
    if d.n == 0:
        return
    width = d.n_arcs
    basis = _kernel_mod_p(relation_matrix(d), width, p)
    k = len(basis)
    if k <= 1:
        return
    ones = [0] * width
    for v in basis:
        ones = [(a + b) % p for a, b in zip(ones, v)]
    assert all(a == 1 for a in ones), "constant vector must span the trivial part"
    rest = basis[1:]
    # Affine classes correspond to projective classes over the non-constant
    # part: first nonzero coefficient pinned to 1.
    for lead in range(len(rest)):
        for tail in itertools.product(range(p), repeat=len(rest) - lead - 1):
            coeffs = (0,) * lead + (1,) + tail
            vec = [0] * width
            for t, v in zip(coeffs, rest):
                if t:
                    vec = [(a + t * b) % p for a, b in zip(vec, v)]
            yield tuple(vec)


def n_classes(d: Diagram, p: int) -> int:
    k = coloring_rank_mod_p(d, p)
    if k <= 1:
        return 0
    return (p ** (k - 1) - 1) // (p - 1)


@dataclass(frozen=True)
class PaletteResult:
    """Minimum palette over nontrivial mod-p colorings of one diagram."""

    p: int
    size: int
    arc_colors: tuple[int, ...]
    edge_colors: dict[int, int]
    classes_scanned: int


def edge_colors_from_arcs(d: Diagram, vec) -> dict[int, int]:
    arcs = d.arcs
    return {e: vec[arcs[e]] for e in arcs}


def min_palette(d: Diagram, p: int) -> PaletteResult | None:
    """Smallest number of distinct colors over all nontrivial p-colorings.

    Returns None when the diagram only admits trivial colorings mod p.
    """
    best: tuple[int, tuple[int, ...]] | None = None
    scanned = 0
    for vec in class_representatives(d, p):
        scanned += 1
        size = len(set(vec))
        if best is None or size < best[0]:
            best = (size, vec)
    if best is None:
        return None
    size, vec = best
    return PaletteResult(p, size, vec, edge_colors_from_arcs(d, vec), scanned)


def is_coloring(d: Diagram, colors: Mapping[int, int], m: int) -> bool:
    """Edge-level check: over-strand continuity plus the crossing relation."""
    if any(e not in colors for e in d.edge_ends):
        return False
    for x in d.crossings:
        if colors[x.over_in] % m != colors[x.over_out] % m:
            return False
        if (colors[x.under_in] + colors[x.under_out] - 2 * colors[x.over_in]) % m:
            return False
    return True


def palette_of(colors: Mapping[int, int], m: int) -> set[int]:
    return {c % m for c in colors.values()}
