"""Two-layer probability ensemble and the stationary marginal.

The two-layer law normalizes the weight Q over all 4**L pairs (tau, xi);
the stationary measure of the exclusion process is its top-layer marginal.
The marginal is computed by walking the 3**L paths and spreading each
path's weight over the top layers compatible with it (up-steps force 1,
down-steps force 0, level steps are free), which touches each of the 4**L
pairs once while evaluating only 3**L weights with memoized composition
polynomials.

All arithmetic is exact; no floats enter this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import NotInConfigurationSpace
from .lattice import (
    MU_DEFAULT_MAX_L,
    LatticePath,
    Occupation,
    enumerate_occupations,
    enumerate_pairs,
    enumerate_paths,
    is_motzkin,
    path_from_index,
    path_of,
)
from .weights import ModelParams, path_weight, q_weight


class Distribution:
    """Ordered exact probability distribution over hashable states."""

    __slots__ = ("states", "probs", "_index")

    def __init__(self, states: Iterable, probs: Iterable[Fraction]):
        st = tuple(states)
        pr = tuple(Fraction(p) for p in probs)
        if len(st) != len(pr):
            raise ValueError("states and probabilities differ in length")
        if any(p < 0 for p in pr):
            raise ValueError("probabilities must be nonnegative")
        if sum(pr, Fraction(0)) != 1:
            raise ValueError("probabilities must sum to exactly 1")
        index = {s: i for i, s in enumerate(st)}
        if len(index) != len(st):
            raise ValueError("duplicate states")
        object.__setattr__(self, "states", st)
        object.__setattr__(self, "probs", pr)
        object.__setattr__(self, "_index", index)

    def __setattr__(self, name, value):
        raise AttributeError("Distribution is immutable")

    def __len__(self) -> int:
        return len(self.states)

    def __contains__(self, state) -> bool:
        return state in self._index

    def prob(self, state) -> Fraction:
        return self.probs[self._index[state]]

    def items(self):
        return zip(self.states, self.probs)

    def support(self) -> tuple:
        return tuple(s for s, p in self.items() if p > 0)

    def as_dict(self) -> dict:
        return dict(self.items())

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Distribution)
            and self.states == other.states
            and self.probs == other.probs
        )

    def __hash__(self):
        return hash(("Distribution", self.states, self.probs))

    def __repr__(self) -> str:
        return f"Distribution(n={len(self)})"


def two_layer_law(L: int, p: ModelParams, max_L: int | None = None) -> Distribution:
    """Exact law on pairs (tau, xi), proportional to the weight Q."""
    states = []
    weights = []
    total = Fraction(0)
    for tau, xi in enumerate_pairs(L, max_L):
        w = q_weight(tau, xi, p)
        states.append((tau, xi))
        weights.append(w)
        total += w
    return Distribution(states, [w / total for w in weights])


def _path_mass_into(table: dict[int, Fraction], gamma: LatticePath, wgt) -> None:
    """Add a path's weight to every compatible top-layer word."""
    base = 0
    mask = 0
    for i, step in enumerate(gamma.steps()):
        if step == 1:
            base |= 1 << i
        elif step == 0:
            mask |= 1 << i
    sub = mask
    while True:
        key = base | sub
        table[key] = table.get(key, Fraction(0)) + wgt
        if sub == 0:
            break
        sub = (sub - 1) & mask


def _mu_range_table(
    L: int, p: ModelParams, start: int, stop: int
) -> dict[int, Fraction]:
    table: dict[int, Fraction] = {}
    for k in range(start, stop):
        gamma = path_from_index(L, k)
        _path_mass_into(table, gamma, path_weight(gamma, p))
    return table


def _mu_range_worker(args) -> dict[int, Fraction]:
    return _mu_range_table(*args)


def _mu_table(
    L: int, p: ModelParams, max_L: int | None, jobs: int = 1
) -> dict[int, Fraction]:
    """Unnormalized top-layer masses, keyed by packed occupation word."""
    if jobs <= 1:
        table: dict[int, Fraction] = {}
        for gamma in enumerate_paths(L, max_L):
            _path_mass_into(table, gamma, path_weight(gamma, p))
        return table
    # consume one path to trigger cap validation before forking
    next(iter(enumerate_paths(L, max_L)))
    from multiprocessing import get_context

    npaths = 3 ** L
    chunk = -(-npaths // jobs)
    ranges = [
        (L, p, lo, min(lo + chunk, npaths)) for lo in range(0, npaths, chunk)
    ]
    with get_context("fork").Pool(jobs) as pool:
        parts = pool.map(_mu_range_worker, ranges)
    table = {}
    for part in parts:
        for key, val in part.items():
            table[key] = table.get(key, Fraction(0)) + val
    return table


def _resolve_mu_cap(L: int, max_L: int | None) -> int:
    from .lattice import enumeration_cap
    from .errors import EnumerationCapExceeded

    cap = enumeration_cap(MU_DEFAULT_MAX_L) if max_L is None else max_L
    if L > cap:
        raise EnumerationCapExceeded(f"L={L} exceeds cap {cap}")
    return cap


def stationary_mu(
    L: int, p: ModelParams, max_L: int | None = None, jobs: int = 1
) -> Distribution:
    """Stationary measure of the exclusion process as the top marginal."""
    if L < 0:
        raise ValueError("L must be nonnegative")
    _resolve_mu_cap(L, max_L)
    table = _mu_table(L, p, L, jobs)
    total = sum(table.values(), Fraction(0))
    states = list(enumerate_occupations(L, max_L=L))
    probs = [table.get(s.word, Fraction(0)) / total for s in states]
    return Distribution(states, probs)


@dataclass(frozen=True)
class PhiTable:
    """Basic weights: bottom-layer sums of the rescaled two-layer weight."""

    L: int
    params: ModelParams
    values: dict

    def value(self, tau: Occupation) -> Fraction:
        return self.values[tau]

    def total(self) -> Fraction:
        return sum(self.values.values(), Fraction(0))

    def normalized(self) -> Distribution:
        z = self.total()
        states = tuple(enumerate_occupations(self.L, max_L=self.L))
        return Distribution(states, [self.values[s] / z for s in states])


def phi_table(L: int, p: ModelParams, max_L: int | None = None) -> PhiTable:
    """Exact basic-weight table; raises SingularParameter at poles."""
    scale = p.tilde_scale(L)
    _resolve_mu_cap(L, max_L)
    table = _mu_table(L, p, L)
    values = {
        occ: scale * table.get(occ.word, Fraction(0))
        for occ in enumerate_occupations(L, max_L=L)
    }
    return PhiTable(L, p, values)


def path_law(L: int, p: ModelParams, max_L: int | None = None) -> Distribution:
    """Marginal law of the path: mass 2**H(gamma) * weight(gamma)."""
    states = []
    weights = []
    total = Fraction(0)
    for gamma in enumerate_paths(L, max_L):
        w = (1 << gamma.horizontal) * path_weight(gamma, p)
        states.append(gamma)
        weights.append(w)
        total += w
    return Distribution(states, [w / total for w in weights])


def top_marginal(pairs: Distribution) -> Distribution:
    """Project a distribution over (tau, xi) pairs onto the top layer."""
    acc: dict[Occupation, Fraction] = {}
    for (tau, _), pr in pairs.items():
        acc[tau] = acc.get(tau, Fraction(0)) + pr
    L = pairs.states[0][0].length
    states = tuple(enumerate_occupations(L, max_L=L))
    return Distribution(states, [acc.get(s, Fraction(0)) for s in states])


def path_law_top_marginal(paths: Distribution) -> Distribution:
    """Push the path law through the level-step coin flips, exactly."""
    L = paths.states[0].length
    table: dict[int, Fraction] = {}
    for gamma, pr in paths.items():
        _path_mass_into(table, gamma, pr / (1 << gamma.horizontal))
    states = tuple(enumerate_occupations(L, max_L=L))
    return Distribution(states, [table.get(s.word, Fraction(0)) for s in states])


def duchi_weight(tau: Occupation, xi: Occupation, A, B) -> Fraction:
    """Comparison weight on the Motzkin configuration space.

    Sites sitting on a zero-level step of the path with the bottom layer
    occupied are labeled W; sites whose step starts at level zero with the
    bottom layer empty and no W-labeled site anywhere to their left are
    labeled B. The weight is (1+A)**#B * (1+B)**#W.
    """
    A = Fraction(A)
    B = Fraction(B)
    if A < 0 or B < 0:
        raise ValueError("A and B must be nonnegative")
    gamma = path_of(tau, xi)
    if not is_motzkin(gamma):
        raise NotInConfigurationSpace(
            "pair lies outside the Motzkin configuration space"
        )
    xb = xi.bits()
    vals = gamma.values
    n_w = 0
    n_b = 0
    seen_w = False
    for j in range(1, tau.length + 1):
        if vals[j - 1] == 0 and vals[j] == 0 and xb[j - 1] == 1:
            n_w += 1
            seen_w = True
        elif vals[j - 1] == 0 and xb[j - 1] == 0 and not seen_w:
            n_b += 1
    return (1 + A) ** n_b * (1 + B) ** n_w


def duchi_distribution(L: int, A, B, max_L: int | None = None) -> Distribution:
    """Normalized comparison measure over the Motzkin pairs."""
    states = []
    weights = []
    total = Fraction(0)
    for tau, xi in enumerate_pairs(L, max_L):
        if not is_motzkin(path_of(tau, xi)):
            continue
        w = duchi_weight(tau, xi, A, B)
        states.append((tau, xi))
        weights.append(w)
        total += w
    return Distribution(states, [w / total for w in weights])
