"""Ground truth: the exclusion-process generator and its exact stationary law.

The continuous-time generator acts on the 2**L occupation words: particles
hop right at rate 1 and left at rate q when the target site is free;
particles enter at site 1 at rate alpha and leave there at rate gamma;
they leave at site L at rate beta and enter there at rate delta. Under the
boundary constraint used throughout this package, gamma = q(1-alpha) and
delta = q(1-beta) with alpha = 1/(1+A), beta = 1/(1+B).

The stationary distribution is the one-dimensional nullspace of the
transposed generator, normalized to total mass one. Two exact solvers are
provided: dense fraction-free (Bareiss) elimination over the integers for
small state spaces, and p-adic lifting (one LU factorization modulo a
word-sized prime, iterated residue refinement, then rational
reconstruction) for larger ones. Either way the result is verified
exactly against the generator before it is returned, and solvability
modulo the prime certifies that the nullspace is one-dimensional.

The Gillespie simulator at the bottom is the only floating-point code in
the package.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

import numpy as np

from .errors import EnumerationCapExceeded, SingularSystem
from .ensemble import Distribution
from .lattice import Occupation, enumerate_occupations
from .weights import ModelParams

ORACLE_MAX_L = 12
GILLESPIE_MAX_L = 30


@dataclass(frozen=True)
class Rates:
    """Exact transition rates of the open exclusion process."""

    alpha: Fraction
    beta: Fraction
    gamma: Fraction
    delta: Fraction
    q: Fraction

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma", "delta", "q"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if any(getattr(self, n) < 0 for n in ("alpha", "beta", "gamma", "delta", "q")):
            raise ValueError("rates must be nonnegative")


def rates_from_params(p: ModelParams) -> Rates:
    """Boundary rates (alpha, beta, gamma, delta) determined by (q, A, B)."""
    alpha = 1 / (1 + p.A)
    beta = 1 / (1 + p.B)
    return Rates(
        alpha=alpha,
        beta=beta,
        gamma=p.q * (1 - alpha),
        delta=p.q * (1 - beta),
        q=p.q,
    )


class GeneratorMatrix:
    """Sparse generator: rows of {column: rate}, diagonal = -row sum."""

    __slots__ = ("L", "dim", "rows")

    def __init__(self, L: int, rows):
        self.L = L
        self.dim = 1 << L
        self.rows = rows

    def entry(self, i: int, j: int) -> Fraction:
        if i == j:
            return -sum(self.rows[i].values(), Fraction(0))
        return self.rows[i].get(j, Fraction(0))

    def apply_left(self, x) -> list[Fraction]:
        """Row-vector product x @ G, exact."""
        out = [Fraction(0)] * self.dim
        for i, row in enumerate(self.rows):
            xi = x[i]
            if xi == 0:
                continue
            diag = Fraction(0)
            for j, rate in row.items():
                out[j] += xi * rate
                diag += rate
            out[i] -= xi * diag
        return out


def build_generator(L: int, r: Rates, max_L: int | None = None) -> GeneratorMatrix:
    """Assemble the generator over all 2**L occupation words."""
    if L < 1:
        raise ValueError("generator needs L >= 1")
    cap = ORACLE_MAX_L if max_L is None else max_L
    if L > cap:
        raise EnumerationCapExceeded(f"L={L} exceeds oracle cap {cap}")
    last = 1 << (L - 1)
    rows = []
    for w in range(1 << L):
        row: dict[int, Fraction] = {}

        def add(target: int, rate: Fraction):
            if rate != 0:
                row[target] = row.get(target, Fraction(0)) + rate

        for i in range(L - 1):
            pair = (w >> i) & 3
            if pair == 1:  # occupied, free -> hop right
                add(w ^ (3 << i), Fraction(1))
            elif pair == 2:  # free, occupied -> hop left
                add(w ^ (3 << i), r.q)
        if w & 1:
            add(w & ~1, r.gamma)  # leave at site 1
        else:
            add(w | 1, r.alpha)  # enter at site 1
        if w & last:
            add(w & ~last, r.beta)  # leave at site L
        else:
            add(w | last, r.delta)  # enter at site L
        rows.append(row)
    return GeneratorMatrix(L, tuple(rows))


# ---------------------------------------------------------------------------
# exact solvers


def _integer_transpose(g: GeneratorMatrix):
    """Clear denominators and transpose: columns of the scaled generator."""
    denoms = set()
    for row in g.rows:
        for rate in row.values():
            denoms.add(rate.denominator)
    scale = 1
    for d in denoms:
        scale = scale * d // gcd(scale, d)
    cols = [dict() for _ in range(g.dim)]
    for i, row in enumerate(g.rows):
        diag = 0
        for j, rate in row.items():
            v = int(rate * scale)
            cols[j][i] = cols[j].get(i, 0) + v
            diag += v
        cols[i][i] = cols[i].get(i, 0) - diag
    return cols


def solve_bareiss(matrix: list[list[int]], rhs: list[int]) -> list[Fraction]:
    """Fraction-free Gaussian elimination for an integer square system."""
    n = len(matrix)
    aug = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
    prev = 1
    for k in range(n):
        piv = next((i for i in range(k, n) if aug[i][k] != 0), None)
        if piv is None:
            raise SingularSystem("singular system in exact elimination")
        if piv != k:
            aug[k], aug[piv] = aug[piv], aug[k]
        pivot = aug[k][k]
        for i in range(k + 1, n):
            fi = aug[i][k]
            rowi = aug[i]
            rowk = aug[k]
            for j in range(k + 1, n + 1):
                rowi[j] = (pivot * rowi[j] - fi * rowk[j]) // prev
            rowi[k] = 0
        prev = pivot
    x = [Fraction(0)] * n
    for i in reversed(range(n)):
        s = Fraction(aug[i][n])
        for j in range(i + 1, n):
            s -= aug[i][j] * x[j]
        x[i] = s / aug[i][i]
    return x


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _primes_near(start: int, count: int) -> list[int]:
    out = []
    n = start | 1
    while len(out) < count:
        if _is_prime(n):
            out.append(n)
        n += 2
    return out


class _SingularModP(Exception):
    pass


def _lu_mod_p(dense: np.ndarray, p: int):
    """In-place LU with partial pivoting over GF(p); returns (lu, perm)."""
    a = dense % p
    n = a.shape[0]
    perm = np.arange(n)
    for k in range(n):
        nz = np.nonzero(a[k:, k])[0]
        if nz.size == 0:
            raise _SingularModP
        piv = k + int(nz[0])
        if piv != k:
            a[[k, piv]] = a[[piv, k]]
            perm[[k, piv]] = perm[[piv, k]]
        inv = pow(int(a[k, k]), p - 2, p)
        if k + 1 < n:
            mult = (a[k + 1 :, k] * inv) % p
            a[k + 1 :, k] = mult
            a[k + 1 :, k + 1 :] = (
                a[k + 1 :, k + 1 :] - mult[:, None] * a[k, k + 1 :][None, :]
            ) % p
    inv_diag = np.array([pow(int(a[i, i]), p - 2, p) for i in range(n)], dtype=np.int64)
    return a, perm, inv_diag


def _solve_mod_p(lu, perm, inv_diag, b: np.ndarray, p: int) -> np.ndarray:
    n = lu.shape[0]
    y = np.zeros(n, dtype=np.int64)
    pb = b[perm]
    for i in range(n):
        y[i] = (pb[i] - np.dot(lu[i, :i], y[:i])) % p
    x = np.zeros(n, dtype=np.int64)
    for i in range(n - 1, -1, -1):
        s = (y[i] - np.dot(lu[i, i + 1 :], x[i + 1 :])) % p
        x[i] = s * int(inv_diag[i]) % p
    return x


def _rational_reconstruct(a: int, m: int) -> Fraction | None:
    """Unique n/d with a*d = n mod m, |n|, d <= sqrt(m/2), if it exists."""
    bound = isqrt(m // 2)
    r0, r1 = m, a % m
    s0, s1 = 0, 1
    while r1 > bound:
        quot = r0 // r1
        r0, r1 = r1, r0 - quot * r1
        s0, s1 = s1, s0 - quot * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    num, den = (r1, s1) if s1 > 0 else (-r1, -s1)
    if gcd(abs(num), den) != 1:
        return None
    return Fraction(num, den)


def solve_dixon(
    rows: list[dict[int, int]], rhs: list[int], max_digits: int = 4096
) -> list[Fraction]:
    """Solve an integer system exactly by p-adic lifting.

    One LU factorization modulo a word-sized prime, then one cheap
    mod-p solve per p-adic digit; entries are recovered with rational
    reconstruction and the candidate is verified exactly.
    """
    n = len(rows)
    for p in _primes_near(1 << 25, 5):
        dense = np.zeros((n, n), dtype=np.int64)
        for i, row in enumerate(rows):
            for j, v in row.items():
                dense[i, j] = v % p
        try:
            lu, perm, inv_diag = _lu_mod_p(dense, p)
        except _SingularModP:
            continue
        residue = [int(v) for v in rhs]
        combined = [0] * n
        p_power = 1
        digits = 0
        checkpoint = 8
        while digits < max_digits:
            rk = np.array([v % p for v in residue], dtype=np.int64)
            xk = _solve_mod_p(lu, perm, inv_diag, rk, p)
            xs = [int(v) for v in xk]
            for i in range(n):
                combined[i] += p_power * xs[i]
            p_power *= p
            # residue <- (residue - M x_k) / p, exactly
            new_res = list(residue)
            for i, row in enumerate(rows):
                acc = new_res[i]
                for j, v in row.items():
                    acc -= v * xs[j]
                new_res[i] = acc // p
            residue = new_res
            digits += 1
            if digits == checkpoint or digits == max_digits:
                checkpoint *= 2
                candidate = []
                for v in combined:
                    f = _rational_reconstruct(v, p_power)
                    if f is None:
                        break
                    candidate.append(f)
                if len(candidate) == n and _verify_integer_solution(
                    rows, rhs, candidate
                ):
                    return candidate
        raise SingularSystem("p-adic lifting did not converge")
    raise SingularSystem("matrix singular modulo every tested prime")


def _verify_integer_solution(rows, rhs, x) -> bool:
    for i, row in enumerate(rows):
        acc = Fraction(0)
        for j, v in row.items():
            acc += v * x[j]
        if acc != rhs[i]:
            return False
    return True


def stationary_exact(g: GeneratorMatrix, method: str = "auto") -> Distribution:
    """The unique probability vector annihilated by the generator.

    Solves the transposed system with the normalization row substituted
    for the (redundant) last equation, then verifies x @ G = 0 and
    sum(x) = 1 exactly before returning.
    """
    n = g.dim
    cols = _integer_transpose(g)
    cols[n - 1] = {j: 1 for j in range(n)}
    rhs = [0] * (n - 1) + [1]
    if method == "auto":
        method = "bareiss" if n <= 64 else "dixon"
    if method == "bareiss":
        dense = [[cols[i].get(j, 0) for j in range(n)] for i in range(n)]
        x = solve_bareiss(dense, rhs)
    elif method == "dixon":
        x = solve_dixon(cols, rhs)
    else:
        raise ValueError(f"unknown method {method!r}")
    if sum(x, Fraction(0)) != 1:
        raise SingularSystem("solution failed exact normalization")
    if any(v != 0 for v in g.apply_left(x)):
        raise SingularSystem("solution does not annihilate the generator")
    states = list(enumerate_occupations(g.L, max_L=g.L))
    return Distribution(states, [x[s.word] for s in states])


# ---------------------------------------------------------------------------
# stochastic simulation (floating point, quarantined here)


@dataclass
class SimulationResult:
    """Time-averaged occupation frequencies from an event-driven run."""

    L: int
    observed_time: float
    steps: int
    site_density: tuple[float, ...]
    config_freq: dict | None
    insufficient: bool


def gillespie_simulate(
    L: int,
    r: Rates,
    horizon: float,
    burn_in: float = 0.0,
    seed: int = 0,
    max_L: int | None = None,
) -> SimulationResult:
    """Exponential-clock simulation of the process; reproducible per seed."""
    cap = GILLESPIE_MAX_L if max_L is None else max_L
    if not 1 <= L <= cap:
        raise EnumerationCapExceeded(f"L={L} outside 1..{cap}")
    rates = {k: float(getattr(r, k)) for k in ("alpha", "beta", "gamma", "delta", "q")}
    rng = random.Random(seed)
    track_configs = L <= 12
    config_time: dict[int, float] = {}
    site_time = [0.0] * L
    last = 1 << (L - 1)
    w = 0
    t = 0.0
    t_end = burn_in + max(horizon, 0.0)
    steps = 0

    def moves(state: int):
        out = []
        for i in range(L - 1):
            pair = (state >> i) & 3
            if pair == 1:
                out.append((1.0, state ^ (3 << i)))
            elif pair == 2 and rates["q"] > 0:
                out.append((rates["q"], state ^ (3 << i)))
        if state & 1:
            if rates["gamma"] > 0:
                out.append((rates["gamma"], state & ~1))
        elif rates["alpha"] > 0:
            out.append((rates["alpha"], state | 1))
        if state & last:
            if rates["beta"] > 0:
                out.append((rates["beta"], state & ~last))
        elif rates["delta"] > 0:
            out.append((rates["delta"], state | last))
        return out

    def credit(state: int, lo: float, hi: float):
        span = min(hi, t_end) - max(lo, burn_in)
        if span <= 0:
            return
        if track_configs:
            config_time[state] = config_time.get(state, 0.0) + span
        for i in range(L):
            if (state >> i) & 1:
                site_time[i] += span

    while t < t_end:
        options = moves(w)
        total = sum(rate for rate, _ in options)
        if total == 0.0:
            credit(w, t, t_end)
            t = t_end
            break
        dt = rng.expovariate(total)
        credit(w, t, t + dt)
        t += dt
        if t >= t_end:
            break
        pick = rng.random() * total
        acc = 0.0
        target = options[-1][1]
        for rate, nxt in options:
            acc += rate
            if pick < acc:
                target = nxt
                break
        w = target
        steps += 1

    observed = max(horizon, 0.0)
    insufficient = observed <= 0.0
    freq = None
    if track_configs and not insufficient:
        freq = {
            Occupation(L, word): span / observed
            for word, span in sorted(config_time.items())
        }
    density = tuple(
        (s / observed if not insufficient else 0.0) for s in site_time
    )
    return SimulationResult(
        L=L,
        observed_time=observed,
        steps=steps,
        site_density=density,
        config_freq=freq,
        insufficient=insufficient,
    )
