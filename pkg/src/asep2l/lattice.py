"""Occupation sequences, two-layer paths, and compositions.

An occupation is a 0/1 sequence over sites 1..L, bit-packed into an integer
word with bit j-1 holding site j. A pair of occupations (tau, xi) of equal
length determines the random-walk path of partial sums of tau_j - xi_j,
whose level-occupation counts above the minimum form a composition of L+1.

Enumeration here is deterministic: occupations in lexicographic order of
the site sequence (site 1 most significant) and paths in lexicographic
order of their step sequences with steps ordered -1 < 0 < +1.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import EnumerationCapExceeded

DEFAULT_MAX_L = 14
MU_DEFAULT_MAX_L = 10

_ENV_CAP = "ASEP_MAX_L"


def enumeration_cap(default: int = DEFAULT_MAX_L) -> int:
    """Effective cap: the ASEP_MAX_L environment variable, else default."""
    raw = os.environ.get(_ENV_CAP)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{_ENV_CAP} must be an integer, got {raw!r}")


def _check_cap(L: int, max_L: int | None, default: int) -> None:
    cap = enumeration_cap(default) if max_L is None else max_L
    if L > cap:
        raise EnumerationCapExceeded(f"L={L} exceeds cap {cap}")


@dataclass(frozen=True)
class Occupation:
    """Bit-packed 0/1 sequence; bit j-1 of word is site j."""

    length: int
    word: int

    def __post_init__(self):
        if self.length < 0:
            raise ValueError("length must be nonnegative")
        if not 0 <= self.word < (1 << self.length if self.length else 1):
            raise ValueError("word out of range for length")

    @classmethod
    def from_bits(cls, bits: Sequence[int]) -> "Occupation":
        word = 0
        for j, b in enumerate(bits):
            if b not in (0, 1):
                raise ValueError(f"occupation entries must be 0 or 1, got {b}")
            word |= b << j
        return cls(len(bits), word)

    @classmethod
    def from_string(cls, text: str) -> "Occupation":
        if not all(ch in "01" for ch in text):
            raise ValueError(f"occupation strings use only 0 and 1: {text!r}")
        return cls.from_bits([int(ch) for ch in text])

    def bit(self, j: int) -> int:
        """Occupancy of site j (1-based)."""
        if not 1 <= j <= self.length:
            raise IndexError(f"site {j} outside 1..{self.length}")
        return (self.word >> (j - 1)) & 1

    def bits(self) -> tuple[int, ...]:
        return tuple((self.word >> i) & 1 for i in range(self.length))

    def count(self) -> int:
        return self.word.bit_count()

    def prepend(self, b: int) -> "Occupation":
        return Occupation(self.length + 1, (self.word << 1) | b)

    def append(self, b: int) -> "Occupation":
        return Occupation(self.length + 1, self.word | (b << self.length))

    def concat(self, other: "Occupation") -> "Occupation":
        return Occupation(
            self.length + other.length, self.word | (other.word << self.length)
        )

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits())

    def __repr__(self) -> str:
        return f"Occupation({str(self)!r})" if self.length else "Occupation('')"


EMPTY_OCCUPATION = Occupation(0, 0)


class LatticePath:
    """Integer sequence starting at 0 with increments in {-1, 0, +1}.

    Caches the four statistics every weight formula reads: minimum,
    maximum, end value, and the number of horizontal (level) steps.
    """

    __slots__ = ("values", "minimum", "maximum", "end", "horizontal")

    def __init__(self, values: Sequence[int]):
        vals = tuple(int(v) for v in values)
        if not vals or vals[0] != 0:
            raise ValueError("path must start at 0")
        horizontal = 0
        for a, b in zip(vals, vals[1:]):
            step = b - a
            if step not in (-1, 0, 1):
                raise ValueError("path increments must be in {-1, 0, +1}")
            if step == 0:
                horizontal += 1
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "minimum", min(vals))
        object.__setattr__(self, "maximum", max(vals))
        object.__setattr__(self, "end", vals[-1])
        object.__setattr__(self, "horizontal", horizontal)

    def __setattr__(self, name, value):
        raise AttributeError("LatticePath is immutable")

    @classmethod
    def from_steps(cls, steps: Sequence[int]) -> "LatticePath":
        vals = [0]
        for s in steps:
            vals.append(vals[-1] + s)
        return cls(vals)

    @property
    def length(self) -> int:
        """Number of steps (the system size L)."""
        return len(self.values) - 1

    def steps(self) -> tuple[int, ...]:
        return tuple(b - a for a, b in zip(self.values, self.values[1:]))

    def __eq__(self, other) -> bool:
        return isinstance(other, LatticePath) and self.values == other.values

    def __hash__(self) -> int:
        return hash(("LatticePath", self.values))

    def __repr__(self) -> str:
        return f"LatticePath({list(self.values)!r})"


def path_of(tau: Occupation, xi: Occupation) -> LatticePath:
    """Partial sums of tau_j - xi_j, a path of length L+1."""
    if tau.length != xi.length:
        raise ValueError(
            f"length mismatch: tau has {tau.length} sites, xi has {xi.length}"
        )
    vals = [0]
    acc = 0
    for tb, xb in zip(tau.bits(), xi.bits()):
        acc += tb - xb
        vals.append(acc)
    return LatticePath(vals)


def xi_of(tau: Occupation, gamma: LatticePath) -> Occupation:
    """Recover the bottom layer: xi_j = tau_j - (gamma_j - gamma_{j-1})."""
    if tau.length != gamma.length:
        raise ValueError("length mismatch between tau and path")
    bits = []
    for tb, step in zip(tau.bits(), gamma.steps()):
        b = tb - step
        if b not in (0, 1):
            raise ValueError("tau is not compatible with the path")
        bits.append(b)
    return Occupation.from_bits(bits)


def composition_of(gamma: LatticePath) -> tuple[int, ...]:
    """Counts of visits to each level from the minimum upward."""
    lo = gamma.minimum
    counts = [0] * (gamma.maximum - lo + 1)
    for v in gamma.values:
        counts[v - lo] += 1
    return tuple(counts)


def is_motzkin(gamma: LatticePath) -> bool:
    """True when the path never dips below 0 and ends at 0."""
    return gamma.minimum >= 0 and gamma.end == 0


def enumerate_occupations(L: int, max_L: int | None = None) -> Iterator[Occupation]:
    """All 2**L occupations in lexicographic order of the site sequence."""
    if L < 0:
        raise ValueError("L must be nonnegative")
    _check_cap(L, max_L, DEFAULT_MAX_L)
    for k in range(1 << L):
        word = 0
        for j in range(L):
            # site j+1 reads bit (L-1-j) of k, so k orders lexicographically
            word |= ((k >> (L - 1 - j)) & 1) << j
        yield Occupation(L, word)


def enumerate_pairs(
    L: int, max_L: int | None = None
) -> Iterator[tuple[Occupation, Occupation]]:
    """All 4**L ordered pairs (tau, xi), tau-major lexicographic order."""
    taus = list(enumerate_occupations(L, max_L))
    for tau in taus:
        for xi in taus:
            yield tau, xi


def path_from_index(L: int, index: int) -> LatticePath:
    """The index-th path in step-lexicographic order (base-3 decode)."""
    digits = []
    k = index
    for _ in range(L):
        digits.append(k % 3)
        k //= 3
    if k:
        raise IndexError(f"path index {index} out of range for L={L}")
    return LatticePath.from_steps([d - 1 for d in reversed(digits)])


def enumerate_paths(L: int, max_L: int | None = None) -> Iterator[LatticePath]:
    """All 3**L paths of length L in step-lexicographic order."""
    if L < 0:
        raise ValueError("L must be nonnegative")
    _check_cap(L, max_L, DEFAULT_MAX_L)
    steps = [-1] * L
    vals = [0] * (L + 1)
    while True:
        for i in range(L):
            vals[i + 1] = vals[i] + steps[i]
        yield LatticePath(vals)
        # odometer increment over steps in order -1 < 0 < +1
        i = L - 1
        while i >= 0 and steps[i] == 1:
            steps[i] = -1
            i -= 1
        if i < 0:
            return
        steps[i] += 1


def tau_from_path(gamma: LatticePath, eta: Sequence[int]) -> Occupation:
    """Top layer read off the path: 1 on up-steps, 0 on down-steps, and the
    supplied eta bit on level steps."""
    L = gamma.length
    if len(eta) != L:
        raise ValueError(f"eta must have length {L}, got {len(eta)}")
    bits = []
    for j, step in enumerate(gamma.steps()):
        if step == 1:
            bits.append(1)
        elif step == -1:
            bits.append(0)
        else:
            b = eta[j]
            if b not in (0, 1):
                raise ValueError("eta entries must be 0 or 1")
            bits.append(b)
    return Occupation.from_bits(bits)
