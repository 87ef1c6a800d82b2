#!/usr/bin/env python3
"""Compute the exact stationary measure and confirm it against brute force.

The stationary law of the open exclusion process is obtained here as the
top-layer marginal of the two-layer ensemble, then compared entry by entry
with the nullspace of the generator, in exact rational arithmetic. The
sweep crosses the fan region (A*B < 1), the shock region (A*B > 1), the
boundary A*B = 1, and the degenerate corners A = 0 and B = 0.
"""

from fractions import Fraction as F

from asep2l import (
    ModelParams,
    build_generator,
    rates_from_params,
    stationary_exact,
    stationary_mu,
)

SWEEP = [
    ("fan", ModelParams(q=F(1, 2), A=F(1, 2), B=F(1, 3))),
    ("shock", ModelParams(q=F(1, 2), A=F(2), B=F(3))),
    ("boundary", ModelParams(q=F(1, 3), A=F(1), B=F(1))),
    ("no left reservoir pressure", ModelParams(q=F(1, 2), A=F(0), B=F(2))),
    ("no right reservoir pressure", ModelParams(q=F(1, 2), A=F(3), B=F(0))),
    ("rescaling pole A*B*q*q = 1", ModelParams(q=F(1, 2), A=F(4), B=F(1))),
]


def density_profile(mu, L):
    """Mean occupancy per site, still exact."""
    profile = [F(0)] * L
    for occ, pr in mu.items():
        for j in range(1, L + 1):
            if occ.bit(j):
                profile[j - 1] += pr
    return profile


def main():
    L = 5
    for label, params in SWEEP:
        mu = stationary_mu(L, params)
        oracle = stationary_exact(build_generator(L, rates_from_params(params)))
        agree = "exact match" if mu == oracle else "MISMATCH"
        print(f"\n{label}: q={params.q} A={params.A} B={params.B}  [{agree}]")
        profile = density_profile(mu, L)
        print("  site densities:", "  ".join(str(d) for d in profile))
        top = sorted(mu.items(), key=lambda kv: kv[1], reverse=True)[:3]
        for occ, pr in top:
            print(f"  most likely {occ} with probability {pr}")


if __name__ == "__main__":
    main()
