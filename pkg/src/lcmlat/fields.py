"""Coefficient fields for exact linear algebra: the rationals and GF(p).

Field elements are plain Python values. Over the rationals they are ints or
`fractions.Fraction`; over GF(p) they are canonical residues in range(p).
A `FieldSpec` carries the arithmetic so callers never branch on the field.
No floating point is used anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Scalar = Union[int, Fraction]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The rationals (p is None) or the prime field GF(p)."""

    p: int | None = None

    def __post_init__(self) -> None:
        if self.p is not None and not _is_prime(self.p):
            raise ValueError(f"field characteristic must be prime, got {self.p!r}")

    @property
    def is_rationals(self) -> bool:
        return self.p is None

    # element constructors

    def zero(self) -> Scalar:
        return Fraction(0) if self.p is None else 0

    def one(self) -> Scalar:
        return Fraction(1) if self.p is None else 1

    def of_int(self, k: int) -> Scalar:
        return Fraction(k) if self.p is None else k % self.p

    def of_rational(self, q: Fraction | int) -> Scalar:
        """Image of an exact rational, when its denominator is invertible."""
        q = Fraction(q)
        if self.p is None:
            return q
        if q.denominator % self.p == 0:
            raise ZeroDivisionError(f"denominator {q.denominator} not invertible mod {self.p}")
        return q.numerator * pow(q.denominator, -1, self.p) % self.p

    # arithmetic

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        self._check(a)
        self._check(b)
        return a + b if self.p is None else (a + b) % self.p

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        self._check(a)
        self._check(b)
        return a - b if self.p is None else (a - b) % self.p

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        self._check(a)
        self._check(b)
        return a * b if self.p is None else (a * b) % self.p

    def neg(self, a: Scalar) -> Scalar:
        self._check(a)
        return -a if self.p is None else (-a) % self.p

    def inv(self, a: Scalar) -> Scalar:
        self._check(a)
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        if self.p is None:
            return Fraction(1) / Fraction(a)
        return pow(a, -1, self.p)

    def is_zero(self, a: Scalar) -> bool:
        self._check(a)
        return a == 0 if self.p is None else a % self.p == 0

    def _check(self, a: Scalar) -> None:
        if self.p is None:
            if not isinstance(a, (int, Fraction)):
                raise TypeError(f"not an exact rational: {a!r}")
        elif not isinstance(a, int) or isinstance(a, bool):
            raise TypeError(f"not a residue mod {self.p}: {a!r}")

    # formatting

    def format_scalar(self, a: Scalar) -> str:
        self._check(a)
        if self.p is None:
            return str(Fraction(a))
        return f"{a % self.p} mod {self.p}"

    def __str__(self) -> str:
        return "Q" if self.p is None else f"F{self.p}"

    @staticmethod
    def parse(text: str) -> "FieldSpec":
        """Parse "Q", "Fp" or "GF(p)" into a field spec."""
        s = text.strip()
        if s in ("Q", "q", "QQ"):
            return RATIONALS
        for prefix, suffix in (("F", ""), ("GF(", ")"), ("gf(", ")"), ("f", "")):
            if s.startswith(prefix) and s.endswith(suffix) and len(s) > len(prefix) + len(suffix):
                body = s[len(prefix):len(s) - len(suffix)] if suffix else s[len(prefix):]
                if body.isdigit():
                    return FieldSpec(int(body))
        raise ValueError(f"cannot parse field {text!r} (expected Q or Fp with p prime)")


RATIONALS = FieldSpec()


def GF(p: int) -> FieldSpec:
    return FieldSpec(p)
