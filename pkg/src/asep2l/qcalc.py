"""Exact q-calculus primitives.

Provides q-numbers, q-factorials, q-Pochhammer symbols, dense polynomials
over rationals, and the q-difference (Jackson) derivative

    (D_q f)(z) = (f(z) - f(q z)) / ((1 - q) z)

realized as an exact operator on the closed family of rational functions

    sum_j c_j * z**j / (z;q)_n.

Such a function is stored as a :class:`BasisElement` with denominator depth
``n`` and numerator coefficients ``c_j``. Applying ``D_q`` or ``D_q . z``
(multiply by z, then differentiate) raises the depth by exactly one:

    D_q [z^j / (z;q)_n]       = ([j]_q z^(j-1) + q^j [n-j]_q z^j) / (z;q)_(n+1)
    (D_q . z) [z^j / (z;q)_n] = ([j+1]_q z^j + q^(j+1) [n-1-j]_q z^(j+1)) / (z;q)_(n+1)

Both action formulas are pinned by tests against the raw difference
quotient at rational sample points. Everything here is exact; q must be a
rational with 0 <= q < 1 and all arithmetic is over Fraction.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction


def q_number(n: int, q: Rational) -> Fraction:
    """[n]_q = 1 + q + ... + q**(n-1); zero for n = 0."""
    if n < 0:
        raise ValueError(f"q-number needs n >= 0, got {n}")
    q = Fraction(q)
    total = Fraction(0)
    power = Fraction(1)
    for _ in range(n):
        total += power
        power *= q
    return total


def q_factorial(n: int, q: Rational) -> Fraction:
    """[n]_q! = product of [k]_q for k = 1..n; one for n = 0."""
    if n < 0:
        raise ValueError(f"q-factorial needs n >= 0, got {n}")
    out = Fraction(1)
    for k in range(1, n + 1):
        out *= q_number(k, q)
    return out


def q_pochhammer(a: Rational, q: Rational, n: int) -> Fraction:
    """(a;q)_n = product of (1 - a q**k) for k = 0..n-1; one for n = 0."""
    if n < 0:
        raise ValueError(f"q-Pochhammer needs n >= 0, got {n}")
    a = Fraction(a)
    q = Fraction(q)
    out = Fraction(1)
    power = Fraction(1)
    for _ in range(n):
        out *= 1 - a * power
        power *= q
    return out


class QPolynomial:
    """Dense univariate polynomial over Fraction, trailing zeros trimmed.

    coefficient i multiplies z**i; the zero polynomial has no coefficients,
    so equality of values is structural equality.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Rational] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("QPolynomial is immutable")

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __eq__(self, other) -> bool:
        return isinstance(other, QPolynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(("QPolynomial", self.coeffs))

    def __add__(self, other: "QPolynomial") -> "QPolynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return QPolynomial(out)

    def __sub__(self, other: "QPolynomial") -> "QPolynomial":
        return self + other.scale(Fraction(-1))

    def scale(self, c: Rational) -> "QPolynomial":
        c = Fraction(c)
        return QPolynomial(ci * c for ci in self.coeffs)

    def __mul__(self, other: "QPolynomial") -> "QPolynomial":
        if self.is_zero() or other.is_zero():
            return QPolynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return QPolynomial(out)

    def shift(self, k: int = 1) -> "QPolynomial":
        """Multiply by z**k."""
        if self.is_zero():
            return self
        return QPolynomial((Fraction(0),) * k + self.coeffs)

    def __call__(self, z: Rational) -> Fraction:
        return poly_eval(self, z)

    def __repr__(self) -> str:
        return f"QPolynomial({list(self.coeffs)!r})"


def poly_eval(p: QPolynomial, z: Rational) -> Fraction:
    """Exact Horner evaluation of p at z."""
    z = Fraction(z)
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * z + c
    return acc


def pochhammer_polynomial(q: Rational, n: int) -> QPolynomial:
    """(z;q)_n expanded in z: product of (1 - q**k z) for k = 0..n-1."""
    if n < 0:
        raise ValueError(f"need n >= 0, got {n}")
    q = Fraction(q)
    out = QPolynomial([1])
    power = Fraction(1)
    for _ in range(n):
        out = out * QPolynomial([1, -power])
        power *= q
    return out


class BasisElement:
    """Exact element sum_j c_j z**j / (z;q)_depth with q supplied per call.

    Trailing zero coefficients are trimmed so equal values compare equal
    structurally. The difference-operator actions keep numerator degree
    strictly below the depth, so iterated applications stay in the family.
    """

    __slots__ = ("depth", "coeffs")

    def __init__(self, depth: int, coeffs: Iterable[Rational]):
        if depth < 0:
            raise ValueError(f"depth must be nonnegative, got {depth}")
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "depth", depth)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("BasisElement is immutable")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BasisElement)
            and self.depth == other.depth
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash(("BasisElement", self.depth, self.coeffs))

    def numerator(self) -> QPolynomial:
        return QPolynomial(self.coeffs)

    def shift(self) -> "BasisElement":
        """Multiply by z at fixed depth."""
        return BasisElement(self.depth, (Fraction(0),) + self.coeffs)

    def raise_depth(self, q: Rational, target: int) -> "BasisElement":
        """Rewrite at a larger depth by multiplying numerator and
        denominator with the missing (1 - q**k z) factors."""
        if target < self.depth:
            raise ValueError("cannot lower depth")
        q = Fraction(q)
        num = self.numerator()
        power = q ** self.depth
        for _ in range(target - self.depth):
            num = num * QPolynomial([1, -power])
            power *= q
        return BasisElement(target, num.coeffs)

    def evaluate(self, q: Rational, z: Rational) -> Fraction:
        """Value at a rational point z (z must avoid the poles q**-k)."""
        denom = q_pochhammer(z, q, self.depth)
        if denom == 0:
            raise ZeroDivisionError(f"evaluation at pole z={z}")
        return poly_eval(self.numerator(), z) / denom

    def __repr__(self) -> str:
        return f"BasisElement(depth={self.depth}, coeffs={list(self.coeffs)!r})"


def geometric_unit() -> BasisElement:
    """1/(1-z) = 1/(z;q)_1, the seed of every operator product."""
    return BasisElement(1, (Fraction(1),))


def jackson_dq(e: BasisElement, q: Rational) -> BasisElement:
    """Apply D_q; the result has depth e.depth + 1."""
    q = Fraction(q)
    n = e.depth
    out = [Fraction(0)] * (len(e.coeffs) + 1)
    for j, c in enumerate(e.coeffs):
        if c == 0:
            continue
        if j > n:
            raise ValueError("D_q action needs numerator degree <= depth")
        if j >= 1:
            out[j - 1] += c * q_number(j, q)
        out[j] += c * q ** j * q_number(n - j, q)
    return BasisElement(n + 1, out)


def jackson_dq_z(e: BasisElement, q: Rational) -> BasisElement:
    """Apply D_q after multiplying by z; the result has depth e.depth + 1."""
    q = Fraction(q)
    n = e.depth
    out = [Fraction(0)] * (len(e.coeffs) + 1)
    for j, c in enumerate(e.coeffs):
        if c == 0:
            continue
        if j > n - 1:
            raise ValueError("D_q.z action needs numerator degree < depth")
        out[j] += c * q_number(j + 1, q)
        if n - 1 - j > 0:
            out[j + 1] += c * q ** (j + 1) * q_number(n - 1 - j, q)
    return BasisElement(n + 1, out)
