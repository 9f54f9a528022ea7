"""Monomials with exact exponent arithmetic, and monomial ideals.

A monomial is an exponent vector over a fixed tuple of variable names (its
ambient ring). All operations are pure; values are immutable and hashable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import AmbientMismatchError, NotDivisibleError

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class Monomial:
    vars: tuple[str, ...]
    exponents: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "vars", tuple(self.vars))
        object.__setattr__(self, "exponents", tuple(self.exponents))
        if len(self.vars) != len(self.exponents):
            raise ValueError("variable and exponent counts differ")
        if len(set(self.vars)) != len(self.vars):
            raise ValueError("variable names must be distinct")
        for e in self.exponents:
            if not isinstance(e, int) or isinstance(e, bool) or e < 0:
                raise ValueError(f"exponents must be nonnegative integers, got {e!r}")

    @classmethod
    def one(cls, vars: tuple[str, ...]) -> "Monomial":
        """The unit monomial 1 (the lcm of the empty set)."""
        return cls(tuple(vars), (0,) * len(vars))

    @classmethod
    def from_factors(cls, vars: tuple[str, ...], factors: dict[str, int]) -> "Monomial":
        vars = tuple(vars)
        unknown = set(factors) - set(vars)
        if unknown:
            raise ValueError(f"unknown variables {sorted(unknown)}")
        return cls(vars, tuple(factors.get(v, 0) for v in vars))

    def same_ambient(self, other: "Monomial") -> bool:
        return self.vars == other.vars

    def _require_ambient(self, other: "Monomial") -> None:
        if not self.same_ambient(other):
            raise AmbientMismatchError(f"ambient rings differ: {self.vars} vs {other.vars}")

    @property
    def is_one(self) -> bool:
        return all(e == 0 for e in self.exponents)

    def total_degree(self) -> int:
        return sum(self.exponents)

    def exponent(self, var: str) -> int:
        return self.exponents[self.vars.index(var)]

    def lcm(self, other: "Monomial") -> "Monomial":
        self._require_ambient(other)
        return Monomial(self.vars, tuple(max(a, b) for a, b in zip(self.exponents, other.exponents)))

    def divides(self, other: "Monomial") -> bool:
        self._require_ambient(other)
        return all(a <= b for a, b in zip(self.exponents, other.exponents))

    def quotient(self, other: "Monomial") -> "Monomial":
        """self / other, defined only when other divides self."""
        self._require_ambient(other)
        if not other.divides(self):
            raise NotDivisibleError(f"{other} does not divide {self}")
        return Monomial(self.vars, tuple(a - b for a, b in zip(self.exponents, other.exponents)))

    def times(self, other: "Monomial") -> "Monomial":
        self._require_ambient(other)
        return Monomial(self.vars, tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def __str__(self) -> str:
        parts = []
        for v, e in zip(self.vars, self.exponents):
            if e == 1:
                parts.append(v)
            elif e > 1:
                parts.append(f"{v}^{e}")
        return "*".join(parts) if parts else "1"

    def __repr__(self) -> str:
        return f"Monomial({self})"


def lcm(a: Monomial, b: Monomial) -> Monomial:
    return a.lcm(b)


def divides(a: Monomial, b: Monomial) -> bool:
    return a.divides(b)


def quotient_monomial(b: Monomial, a: Monomial) -> Monomial:
    """b / a, the forced monomial factor of a homogeneous matrix entry."""
    return b.quotient(a)


@dataclass(frozen=True)
class MonomialIdeal:
    """An ordered generating set; the order fixes the atom numbering."""

    generators: tuple[Monomial, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "generators", tuple(self.generators))
        if not self.generators:
            raise ValueError("a monomial ideal needs at least one generator")
        first = self.generators[0]
        for g in self.generators[1:]:
            first._require_ambient(g)

    @property
    def vars(self) -> tuple[str, ...]:
        return self.generators[0].vars

    def __len__(self) -> int:
        return len(self.generators)

    def is_minimally_generated(self) -> bool:
        gens = self.generators
        for i, g in enumerate(gens):
            for j, h in enumerate(gens):
                if i != j and h.divides(g) and (h != g or j < i):
                    return False
        return True

    def minimalize(self) -> "MonomialIdeal":
        return minimalize_generators(self)

    def __str__(self) -> str:
        return "(" + ", ".join(str(g) for g in self.generators) + ")"


def minimalize_generators(ideal: MonomialIdeal) -> MonomialIdeal:
    """Drop generators strictly divisible by another; keep relative order.

    Exact duplicates collapse to their first occurrence, so the output never
    has one generator dividing another. Idempotent.
    """
    gens = ideal.generators
    keep: list[Monomial] = []
    for i, g in enumerate(gens):
        dominated = False
        for j, h in enumerate(gens):
            if j == i:
                continue
            if h.divides(g) and (h != g or j < i):
                dominated = True
                break
        if not dominated:
            keep.append(g)
    return MonomialIdeal(tuple(keep))


def parse_monomial(text: str, vars: tuple[str, ...]) -> Monomial:
    """Parse a `*`-separated product of `var^k` factors; `1` is the unit."""
    s = text.strip()
    if s == "1":
        return Monomial.one(vars)
    factors: dict[str, int] = {}
    for piece in s.split("*"):
        piece = piece.strip()
        if not piece:
            raise ValueError(f"empty factor in {text!r}")
        if "^" in piece:
            name, _, exp = piece.partition("^")
            name = name.strip()
            exp = exp.strip()
            if not exp.isdigit():
                raise ValueError(f"bad exponent in factor {piece!r}")
            k = int(exp)
        else:
            name, k = piece, 1
        if name not in vars:
            raise ValueError(f"unknown variable {name!r}")
        factors[name] = factors.get(name, 0) + k
    return Monomial.from_factors(vars, factors)


def parse_ideal(text: str) -> MonomialIdeal:
    """Parse the ideal file format.

    The first content line is `vars: a b c ...`; each following nonempty,
    non-`#` line is one generator such as `a^2*b`. Generator order in the
    file is the atom order.
    """
    vars: tuple[str, ...] | None = None
    gens: list[Monomial] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if vars is None:
            if not line.startswith("vars:"):
                raise ValueError(f"line {lineno}: expected 'vars: ...' header, got {line!r}")
            names = line[len("vars:"):].split()
            if not names:
                raise ValueError(f"line {lineno}: no variable names after 'vars:'")
            for name in names:
                if not _IDENT.match(name):
                    raise ValueError(f"line {lineno}: bad variable name {name!r}")
            if len(set(names)) != len(names):
                raise ValueError(f"line {lineno}: duplicate variable names")
            vars = tuple(names)
            continue
        try:
            gens.append(parse_monomial(line, vars))
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    if vars is None:
        raise ValueError("line 1: missing 'vars:' header (empty input)")
    if not gens:
        raise ValueError("no generators after the 'vars:' header")
    return MonomialIdeal(tuple(gens))


def format_ideal(ideal: MonomialIdeal) -> str:
    lines = ["vars: " + " ".join(ideal.vars)]
    lines.extend(str(g) for g in ideal.generators)
    return "\n".join(lines) + "\n"
