"""Grey subsets of Z_p and the smallest size where a non-grey set appears.

A subset S of Z_p is grey when some unit multiple of it leaves a cyclic
gap of at least (p+1)/2, i.e. mu*S fits inside a closed arc shorter than
half the circle.  Palettes that stay grey can always be squeezed further,
so the first size admitting a non-grey subset is the obstruction level of
the prime.

Normalization: greyness is invariant under x -> mu*x + c, so scanning
subsets that contain both 0 and 1 sees every class once; multipliers only
need to run to (p-1)/2 because mu and p - mu mirror the gap profile.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import CapExceeded

DEFAULT_PRIME_CAP = 43


def max_cyclic_gap(values, p: int) -> int:
    """Largest gap between consecutive residues of a nonempty subset."""
    vs = sorted(v % p for v in values)
    if len(vs) == 1:
        return p
    gaps = [b - a for a, b in zip(vs, vs[1:])]
    gaps.append(vs[0] + p - vs[-1])
    return max(gaps)


def _check_odd_prime(p: int) -> None:
    if p < 3 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
        raise ValueError(f"p must be an odd prime, got {p}")


def is_grey(values, p: int) -> bool:
    _check_odd_prime(p)
    vs = {v % p for v in values}
    if len(vs) != len(list(values)):
        raise ValueError("subset has repeated residues")
    half = (p + 1) // 2
    for mu in range(1, p // 2 + 1):
        if max_cyclic_gap([mu * v for v in vs], p) >= half:
            return True
    return False


def _grey_mask(subsets: np.ndarray, p: int) -> np.ndarray:
    """Boolean mask: which rows (each a subset of Z_p) are grey."""
    n, s = subsets.shape
    half = (p + 1) // 2
    grey = np.zeros(n, dtype=bool)
    for mu in range(1, p // 2 + 1):
        scaled = np.sort((subsets * mu) % p, axis=1)
        gaps = np.diff(scaled, axis=1)
        wrap = (scaled[:, 0] + p - scaled[:, -1])[:, None]
        grey |= np.concatenate([gaps, wrap], axis=1).max(axis=1) >= half
        if grey.all():
            break
    return grey


@dataclass(frozen=True)
class SizeScan:
    size: int
    examined: int
    grey: int


@dataclass(frozen=True)
class GreyReport:
    """Where the all-grey regime of Z_p ends.

    grey_index is the largest size at which every subset is grey; algmincol
    is one more, the size of the smallest non-grey subset, and the witness
    is the first such subset in scan order.  All fields are deterministic
    functions of p, so serialized reports are byte-identical across runs.
    """

    p: int
    grey_index: int
    algmincol: int
    witness: tuple[int, ...]
    scans: tuple[SizeScan, ...]

    def to_json_obj(self) -> dict:
        return {
            "p": self.p,
            "grey_index": self.grey_index,
            "algmincol": self.algmincol,
            "witness": list(self.witness),
            "scans": [
                {"size": sc.size, "examined": sc.examined, "grey": sc.grey}
                for sc in self.scans
            ],
        }


def grey_index(p: int, cap: int = DEFAULT_PRIME_CAP) -> GreyReport:
    """Scan subset sizes upward until a non-grey subset of Z_p appears.

    Witness order: subsets containing {0, 1}, remaining elements in
    lexicographic order.  The scan is exhaustive per size, so the report
    also certifies that every smaller subset is grey.
    """
    _check_odd_prime(p)
    if p > cap:
        raise CapExceeded(f"p={p} above the scan cap {cap}; raise cap to force")
    scans = []
    for s in range(3, p + 1):
        rest = np.array(
            list(itertools.combinations(range(2, p), s - 2)), dtype=np.int64
        ).reshape(-1, s - 2)
        base = np.zeros((rest.shape[0], 2), dtype=np.int64)
        base[:, 1] = 1
        subsets = np.concatenate([base, rest], axis=1)
        grey = _grey_mask(subsets, p)
        scans.append(SizeScan(s, int(subsets.shape[0]), int(grey.sum())))
        if not grey.all():
            first = int(np.flatnonzero(~grey)[0])
            witness = tuple(int(v) for v in subsets[first])
            return GreyReport(p, s - 1, s, witness, tuple(scans))
    raise AssertionError(f"every subset of Z_{p} is grey; p too small to scan")


def rainbow_index(p: int, cap: int = DEFAULT_PRIME_CAP) -> int:
    """Size of the smallest non-grey subset, a lower bound for palette minima."""
    return grey_index(p, cap).algmincol
