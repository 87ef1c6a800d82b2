"""Composition weight polynomials and the two-layer weight function.

A composition (s_0, ..., s_r) of L+1 carries a polynomial w in one
variable, computed two independent ways:

* operator route: starting from 1/(1-z), apply for each part (right to
  left) one q-difference derivative followed by s_j - 1 applications of
  "multiply by z then differentiate". After L+1 applications the basis
  denominator has depth L+2 and the numerator coefficients are w.
* series route: multiply the truncated power series
  sum_n z^n prod_j ([n+j+1]_q)^(s_j) by the expanded (z;q)_(L+2); all
  product coefficients beyond degree L-r must cancel exactly.

The two-layer weight of a pair (tau, xi) with path gamma is

    Q = B**(end - min) * A**(-min) * w_{comp(gamma)}(A*B),

a polynomial in A and B with nonnegative coefficients, well defined at
A = 0 or B = 0. The rescaled weight multiplies Q by
(AB;q)_2 / (AB;q)_(L+2) and is only defined away from the poles
A*B = q**-k.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import SingularParameter
from .lattice import (
    DEFAULT_MAX_L,
    LatticePath,
    Occupation,
    composition_of,
    enumerate_paths,
    path_of,
)
from .qcalc import (
    QPolynomial,
    Rational,
    geometric_unit,
    jackson_dq,
    jackson_dq_z,
    pochhammer_polynomial,
    q_number,
    q_pochhammer,
)


def _validate_composition(sigma) -> tuple[int, ...]:
    parts = tuple(int(s) for s in sigma)
    if not parts or any(s <= 0 for s in parts):
        raise ValueError(f"composition needs positive parts, got {sigma!r}")
    return parts


def w_sigma_operator(sigma, q: Rational) -> QPolynomial:
    """Composition polynomial via the iterated difference-operator product."""
    parts = _validate_composition(sigma)
    q = Fraction(q)
    L = sum(parts) - 1
    e = geometric_unit()
    for s in reversed(parts):
        e = jackson_dq(e, q)
        for _ in range(s - 1):
            e = jackson_dq_z(e, q)
    assert e.depth == L + 2
    return e.numerator()


def w_sigma_series(sigma, q: Rational) -> QPolynomial:
    """Composition polynomial via the truncated q-series route.

    Raises AssertionError if any product coefficient beyond degree L-r
    survives; that would mean one of the two routes is broken.
    """
    parts = _validate_composition(sigma)
    q = Fraction(q)
    L = sum(parts) - 1
    r = len(parts) - 1
    # series term n: prod_j [n+j+1]_q ** s_j, needed for n = 0..L+2
    terms = []
    for n in range(L + 3):
        t = Fraction(1)
        for j, s in enumerate(parts):
            t *= q_number(n + j + 1, q) ** s
        terms.append(t)
    poch = pochhammer_polynomial(q, L + 2)
    coeffs = []
    for k in range(L + 3):
        c = Fraction(0)
        for i in range(k + 1):
            c += poch.coefficient(i) * terms[k - i]
        coeffs.append(c)
    for k in range(L - r + 1, L + 3):
        assert coeffs[k] == 0, (
            f"series route leaked degree {k} > {L - r} for sigma={parts}, q={q}"
        )
    return QPolynomial(coeffs[: L - r + 1])


@lru_cache(maxsize=None)
def _w_polynomial(sigma: tuple[int, ...], q: Fraction) -> QPolynomial:
    return w_sigma_operator(sigma, q)


@lru_cache(maxsize=None)
def _w_value(sigma: tuple[int, ...], q: Fraction, z: Fraction) -> Fraction:
    return _w_polynomial(sigma, q)(z)


@dataclass(frozen=True)
class ModelParams:
    """Exact model parameters: 0 <= q < 1 and boundary strengths A, B >= 0."""

    q: Fraction
    A: Fraction
    B: Fraction

    def __post_init__(self):
        object.__setattr__(self, "q", Fraction(self.q))
        object.__setattr__(self, "A", Fraction(self.A))
        object.__setattr__(self, "B", Fraction(self.B))
        if not 0 <= self.q < 1:
            raise ValueError(f"q must satisfy 0 <= q < 1, got {self.q}")
        if self.A < 0 or self.B < 0:
            raise ValueError(f"A and B must be nonnegative, got {self.A}, {self.B}")

    @property
    def ab(self) -> Fraction:
        return self.A * self.B

    @property
    def singular_level(self) -> int | None:
        """Smallest N >= 1 with A*B*q**(N+2) == 1, else None.

        At such a point the rescaled-weight system degenerates for sizes
        above N; the polynomial weights remain well defined.
        """
        if self.q == 0 or self.ab == 0:
            return None
        value = self.ab * self.q ** 3
        n = 1
        while value >= 1:
            if value == 1:
                return n
            value *= self.q
            n += 1
        return None

    def tilde_scale(self, L: int) -> Fraction:
        """(AB;q)_2 / (AB;q)_(L+2), refusing poles with SingularParameter."""
        ab, q = self.ab, self.q
        power = Fraction(1)
        for k in range(L + 2):
            if ab * power == 1:
                raise SingularParameter(
                    f"A*B == q**-{k} makes the rescaled weight singular at L={L}"
                )
            power *= q
        return q_pochhammer(ab, q, 2) / q_pochhammer(ab, q, L + 2)


def path_weight(gamma: LatticePath, p: ModelParams) -> Fraction:
    """Two-layer weight read off a path: B**(end-min) A**(-min) w(AB)."""
    w = _w_value(composition_of(gamma), p.q, p.ab)
    return p.B ** (gamma.end - gamma.minimum) * p.A ** (-gamma.minimum) * w


def q_weight(tau: Occupation, xi: Occupation, p: ModelParams) -> Fraction:
    """Two-layer weight of a pair; nonnegative, positive when A, B > 0."""
    return path_weight(path_of(tau, xi), p)


def tilde_q_weight(tau: Occupation, xi: Occupation, p: ModelParams) -> Fraction:
    """Rescaled two-layer weight; its sign may vary with L when A*B*q*q > 1."""
    if tau.length != xi.length:
        raise ValueError("length mismatch between tau and xi")
    return p.tilde_scale(tau.length) * q_weight(tau, xi, p)


def partition_Z(L: int, p: ModelParams, max_L: int | None = None) -> Fraction:
    """Normalization: the sum of Q over all 4**L pairs.

    Computed by summing 2**H(gamma) * weight(gamma) over the 3**L paths,
    which groups the pairs sharing a path.
    """
    if L < 0:
        raise ValueError("L must be nonnegative")
    total = Fraction(0)
    for gamma in enumerate_paths(L, max_L):
        total += (1 << gamma.horizontal) * path_weight(gamma, p)
    return total


def clear_weight_caches() -> None:
    """Drop memoized composition polynomials and values (mainly for tests)."""
    _w_polynomial.cache_clear()
    _w_value.cache_clear()
