"""Integer Laurent polynomials in one variable.

The bracket state sum lives in Z[A, A^-1].  A polynomial is held as a
mapping from exponent to nonzero integer coefficient, so negative powers
cost nothing and equality is exact.
"""

from __future__ import annotations

from typing import Iterable, Mapping


class LaurentPoly:
    """Immutable Laurent polynomial with integer coefficients."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict[int, int] = {}
        for exp, c in items:
            if c:
                acc[exp] = acc.get(exp, 0) + c
                if not acc[exp]:
                    del acc[exp]
        self._coeffs = acc

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "LaurentPoly":
        return cls({exp: coeff})

    def items(self) -> list[tuple[int, int]]:
        return sorted(self._coeffs.items())

    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self._coeffs.items()))

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        acc = dict(self._coeffs)
        for exp, c in other._coeffs.items():
            acc[exp] = acc.get(exp, 0) + c
            if not acc[exp]:
                del acc[exp]
        out = LaurentPoly.zero()
        out._coeffs = acc
        return out

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self._coeffs.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        if isinstance(other, int):
            return LaurentPoly({e: c * other for e, c in self._coeffs.items()})
        acc: dict[int, int] = {}
        for e1, c1 in self._coeffs.items():
            for e2, c2 in other._coeffs.items():
                e = e1 + e2
                acc[e] = acc.get(e, 0) + c1 * c2
                if not acc[e]:
                    del acc[e]
        out = LaurentPoly.zero()
        out._coeffs = acc
        return out

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if len(self._coeffs) != 1:
                raise ValueError("negative powers only for monomials")
            ((exp, c),) = self._coeffs.items()
            if c not in (1, -1):
                raise ValueError("negative powers only for unit monomials")
            return LaurentPoly({exp * n: c if n % 2 else 1})
        out = LaurentPoly.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by A^k."""
        return LaurentPoly({e + k: c for e, c in self._coeffs.items()})

    def mirror(self) -> "LaurentPoly":
        """Substitute A -> A^-1 (the mirror-image bracket)."""
        return LaurentPoly({-e: c for e, c in self._coeffs.items()})

    def evaluate(self, value: complex) -> complex:
        return sum(c * value**e for e, c in self._coeffs.items())

    def key(self) -> str:
        """Canonical text form, usable as a dictionary key."""
        return ",".join(f"{e}:{c}" for e, c in self.items()) or "0"

    def __repr__(self) -> str:
        if not self._coeffs:
            return "0"
        parts = []
        for e, c in self.items():
            if e == 0:
                parts.append(f"{c}")
            elif e == 1:
                parts.append(f"{c}*A")
            else:
                parts.append(f"{c}*A^{e}")
        return " + ".join(parts).replace("+ -", "- ")


#: Loop value delta = -A^2 - A^-2 used by the bracket recursion.
LOOP = LaurentPoly({2: -1, -2: -1})
