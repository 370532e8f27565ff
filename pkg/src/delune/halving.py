"""Halving arithmetic for twist regions.

Replacing a k-crossing twist region by the cheap template keeps the lower
half, floor(k/2).  Iterating lands in {2, 3, 4} and the number of steps l
and the landing value t are determined by the leading bits of k: write k in
binary; if it starts 100... the landing value is 4 after length-3 steps,
otherwise it is the top two bits (2 or 3) after length-2 steps.

The splitting game models the other reduction style: a region of size
k > 4 splits into floor(k/2) and ceil(k/2) - 1, both at least 2, and
regions of size at most 4 stop.
"""

from __future__ import annotations

from dataclasses import dataclass

TERMINAL = frozenset({2, 3, 4})


def lower_half(n: int) -> int:
    if n < 2:
        raise ValueError(f"twist size must be at least 2, got {n}")
    return n // 2


def halving_sequence(n: int) -> list[int]:
    """Values strictly after n until the first member of {2, 3, 4}."""
    if n < 5:
        raise ValueError(f"{n} is already terminal; halving starts at 5")
    seq = []
    while n not in TERMINAL:
        n = lower_half(n)
        seq.append(n)
    return seq


@dataclass(frozen=True)
class HalvingRecord:
    """A halving run: the iterates, their count l, and the landing value t."""

    n: int
    seq: tuple[int, ...]

    @property
    def l(self) -> int:
        return len(self.seq)

    @property
    def t(self) -> int:
        return self.seq[-1]

    def to_json_obj(self) -> dict:
        return {"n": self.n, "seq": list(self.seq), "l": self.l, "t": self.t}


def lh_record(n: int) -> HalvingRecord:
    return HalvingRecord(n, tuple(halving_sequence(n)))


def halving_depth(n: int) -> tuple[int, int]:
    """(number of halvings, landing value) without iterating."""
    if n < 2:
        raise ValueError(f"twist size must be at least 2, got {n}")
    if n in TERMINAL:
        return 0, n
    length = n.bit_length()
    if n >> (length - 3) == 4:
        return length - 3, 4
    return length - 2, n >> (length - 2)


def closed_form(n: int) -> tuple[int, int]:
    """(l, t) for odd n >= 5 from the exponent gap of n - 1, no iteration.

    Write n = 2^{e_1} + ... + 2^{e_N} + 1 with e_1 > ... > e_N >= 1.  The
    landing value is 3 when the top gap e_1 - e_2 is 1, 2 when it is 2,
    and 4 otherwise (including N = 1), with l = e_1 - 1 in the first two
    cases and e_1 - 2 in the last.  The smallest case n = 5 is the one
    exception: a single halving lands on 2, not 4.

    Even n is refused; the case analysis reads the expansion of n - 1 and
    extending it to even n gives wrong depths (n = 10 would come out as
    one step to 4 when iteration takes two steps to 2).
    """
    if n < 5 or n % 2 == 0:
        raise ValueError(f"closed form covers odd n >= 5, got {n}")
    if n == 5:
        return 1, 2
    exps = [i for i in range(n.bit_length()) if (n - 1) >> i & 1]
    e1 = exps[-1]
    if len(exps) == 1 or e1 - exps[-2] > 2:
        return e1 - 2, 4
    if e1 - exps[-2] == 1:
        return e1 - 1, 3
    return e1 - 1, 2


def torus_color_bound(p: int) -> int:
    """Palette bound t + 2l - 1 for the (2, p) torus knot, p > 7."""
    if p <= 7:
        raise ValueError(f"bound applies above 7, got {p}")
    steps, landing = halving_depth(p)
    return landing + 2 * steps - 1


# -- splitting game --------------------------------------------------------

def split_sizes(k: int) -> tuple[int, int]:
    """How a twist region of size k > 4 splits: (floor(k/2), ceil(k/2) - 1)."""
    if k <= 4:
        raise ValueError(f"regions of size {k} do not split")
    return k // 2, (k + 1) // 2 - 1


def game_terminals(n: int) -> list[int]:
    """Multiset of stopped region sizes, sorted, splitting greedily to the end."""
    if n < 2:
        raise ValueError(f"twist size must be at least 2, got {n}")
    if n <= 4:
        return [n]
    a, b = split_sizes(n)
    return sorted(game_terminals(a) + game_terminals(b))


def game_terminal_count(n: int) -> int:
    if n <= 4:
        return 1
    a, b = split_sizes(n)
    return game_terminal_count(a) + game_terminal_count(b)


@dataclass(frozen=True)
class GameSummary:
    n: int
    terminals: tuple[int, ...]
    depth: int

    @property
    def count(self) -> int:
        return len(self.terminals)

    @property
    def has_two(self) -> bool:
        return 2 in self.terminals


def play_game(n: int) -> GameSummary:
    steps, _ = halving_depth(n)
    return GameSummary(n, tuple(game_terminals(n)), steps)


def teneva_bound(n: int) -> int:
    """Extra-crossing bound for delunifying a size-n region by the game, n > 4.

    6 * 2^l - 1 when no terminal region has size 2, else 9 * 2^l - 1,
    where l is the halving depth of n.
    """
    if n <= 4:
        raise ValueError(f"bound applies to splittable regions, got {n}")
    g = play_game(n)
    base = 9 if g.has_two else 6
    return base * 2 ** g.depth - 1
