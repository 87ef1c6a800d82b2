#!/usr/bin/env python3
"""Composition weight polynomials, two ways.

Each composition of L+1 carries a polynomial built by an iterated
difference-operator product; a truncated q-series gives a second,
independent route to the same coefficients. This script prints a few of
the polynomials, checks the two routes against each other, and shows the
fixed values at z = 0 and z = 1 that pin the whole family.
"""

from fractions import Fraction as F
from itertools import product

from asep2l import q_factorial, q_number, w_sigma_operator, w_sigma_series
from asep2l.qcalc import poly_eval


def compositions_of(total):
    for cuts in product((0, 1), repeat=total - 1):
        parts, run = [], 1
        for c in cuts:
            if c:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        yield tuple(parts)


def render(poly):
    if poly.is_zero():
        return "0"
    chunks = []
    for i, c in enumerate(poly.coeffs):
        if c == 0:
            continue
        chunks.append(str(c) if i == 0 else f"({c})z^{i}")
    return " + ".join(chunks)


def main():
    q = F(1, 2)
    print(f"q = {q}\n")
    for sigma in ((2,), (1, 1), (3, 1), (2, 2), (7, 3, 1)):
        poly = w_sigma_operator(sigma, q)
        assert poly == w_sigma_series(sigma, q)
        name = ",".join(str(s) for s in sigma)
        print(f"w_({name}) = {render(poly)}")

    print("\nchecking both routes over every composition with L <= 6 ...")
    mismatches = 0
    for L in range(7):
        for sigma in compositions_of(L + 1):
            if w_sigma_operator(sigma, q) != w_sigma_series(sigma, q):
                mismatches += 1
    print(f"mismatches: {mismatches}")

    L = 5
    print(f"\nfixed values for all compositions of {L + 1}:")
    target = q_factorial(L + 1, q)
    for sigma in compositions_of(L + 1):
        poly = w_sigma_operator(sigma, q)
        at_zero = poly_eval(poly, F(0))
        expected_zero = F(1)
        for j, s in enumerate(sigma):
            expected_zero *= q_number(j + 1, q) ** s
        assert poly_eval(poly, F(1)) == target
        assert at_zero == expected_zero
    print(f"  every w evaluates to [L+1]_q! = {target} at z = 1")
    print("  and to the product of level factors at z = 0")


if __name__ == "__main__":
    main()
