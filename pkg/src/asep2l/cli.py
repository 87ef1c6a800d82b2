"""Command-line interface.

Subcommands: mu, wsigma, qweight, partition, verify, oracle, sample,
compare. All rational inputs and outputs use the "p" or "p/q" text form;
no floats cross the boundary except the simulator's frequencies. Exit
codes: 0 success (or verification pass), 1 verification failure, 2 usage
error, 3 singular parameters.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import ensemble, oracle, recursions, sampler
from .errors import EnumerationCapExceeded, SingularParameter
from .lattice import Occupation, enumerate_occupations
from .rational import format_rational, parse_rational
from .weights import ModelParams, partition_Z, q_weight, tilde_q_weight, w_sigma_operator

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_USAGE = 2
EXIT_SINGULAR = 3


def _params(args) -> ModelParams:
    q = parse_rational(args.q)
    a = parse_rational(args.A)
    b = parse_rational(args.B)
    if not 0 <= q < 1:
        raise ValueError(f"q must satisfy 0 <= q < 1, got {q}")
    if a < 0 or b < 0:
        raise ValueError("A and B must be nonnegative")
    return ModelParams(q=q, A=a, B=b)


def _emit(args, text: str) -> None:
    out = getattr(args, "out", None)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
            if not text.endswith("\n"):
                fh.write("\n")
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _mu_payload(L: int, p: ModelParams, dist) -> dict:
    return {
        "L": L,
        "q": format_rational(p.q),
        "A": format_rational(p.A),
        "B": format_rational(p.B),
        "mu": {str(s): format_rational(pr) for s, pr in dist.items()},
    }


def _cmd_mu(args) -> int:
    p = _params(args)
    dist = ensemble.stationary_mu(args.L, p, max_L=args.max_L, jobs=args.jobs)
    if args.format == "csv":
        lines = ["state,probability"]
        lines += [f"{s},{format_rational(pr)}" for s, pr in dist.items()]
        _emit(args, "\n".join(lines))
    else:
        _emit(args, json.dumps(_mu_payload(args.L, p, dist), indent=2))
    return EXIT_OK


def _cmd_wsigma(args) -> int:
    parts = [int(s) for s in args.sigma.replace(" ", "").split(",") if s]
    if not parts or any(s <= 0 for s in parts):
        raise ValueError(f"sigma must be positive integers, got {args.sigma!r}")
    q = parse_rational(args.q)
    if not 0 <= q < 1:
        raise ValueError(f"q must satisfy 0 <= q < 1, got {q}")
    poly = w_sigma_operator(tuple(parts), q)
    payload = {
        "sigma": parts,
        "q": format_rational(q),
        "coeffs": [format_rational(c) for c in poly.coeffs],
    }
    _emit(args, json.dumps(payload, indent=2))
    return EXIT_OK


def _cmd_qweight(args) -> int:
    p = _params(args)
    tau = Occupation.from_string(args.tau)
    xi = Occupation.from_string(args.xi)
    payload = {
        "tau": str(tau),
        "xi": str(xi),
        "Q": format_rational(q_weight(tau, xi, p)),
    }
    if args.tilde:
        payload["Qtilde"] = format_rational(tilde_q_weight(tau, xi, p))
    _emit(args, json.dumps(payload, indent=2))
    return EXIT_OK


def _cmd_partition(args) -> int:
    p = _params(args)
    payload = {
        "L": args.L,
        "q": format_rational(p.q),
        "A": format_rational(p.A),
        "B": format_rational(p.B),
        "Z": format_rational(partition_Z(args.L, p, max_L=args.max_L)),
    }
    _emit(args, json.dumps(payload, indent=2))
    return EXIT_OK


def _cmd_verify(args) -> int:
    p = _params(args)
    if args.L < 0:
        raise ValueError("L must be nonnegative")
    reports = []
    which = args.identity
    if which in ("left", "all"):
        for ell in range(args.L + 1):
            reports.append(recursions.check_left_boundary(ell, p))
    if which in ("right", "all"):
        for ell in range(args.L + 1):
            reports.append(recursions.check_right_boundary(ell, p))
    if which in ("bulk", "all"):
        for n1 in range(max(args.L - 1, 0)):
            for n2 in range(max(args.L - 1 - n1, 0)):
                reports.append(recursions.check_bulk(n1, n2, p))
    if which in ("basic", "all"):
        reports.append(recursions.check_basic_weight_equations(args.L, p))
    passed = all(r.passed for r in reports)
    payload = {
        "identity": which,
        "L": args.L,
        "passed": passed,
        "reports": [r.to_dict() for r in reports],
    }
    _emit(args, json.dumps(payload, indent=2))
    return EXIT_OK if passed else EXIT_VERIFY_FAIL


def _cmd_oracle(args) -> int:
    p = _params(args)
    r = oracle.rates_from_params(p)
    if args.simulate:
        result = oracle.gillespie_simulate(
            args.L, r, horizon=args.horizon, burn_in=args.burn_in, seed=args.seed
        )
        lines = []
        if result.config_freq is not None:
            lines.append("state,frequency")
            lines += [f"{s},{f!r}" for s, f in result.config_freq.items()]
        else:
            lines.append("site,density")
            lines += [f"{i + 1},{d!r}" for i, d in enumerate(result.site_density)]
        _emit(args, "\n".join(lines))
        return EXIT_OK
    g = oracle.build_generator(args.L, r, max_L=args.max_L)
    dist = oracle.stationary_exact(g)
    payload = {
        "L": args.L,
        "q": format_rational(p.q),
        "A": format_rational(p.A),
        "B": format_rational(p.B),
        "pi": {str(s): format_rational(pr) for s, pr in dist.items()},
    }
    _emit(args, json.dumps(payload, indent=2))
    return EXIT_OK


def _cmd_sample(args) -> int:
    p = _params(args)
    batch = sampler.sample_two_layer(
        args.L, p, args.n, seed=args.seed, route=args.route, max_L=args.max_L
    )
    lines = ["tau,xi"]
    lines += [f"{t},{x}" for t, x in batch.draws]
    _emit(args, "\n".join(lines))
    return EXIT_OK


def _cmd_compare(args) -> int:
    p = _params(args)
    mu = ensemble.stationary_mu(args.L, p, max_L=args.max_L, jobs=args.jobs)
    g = oracle.build_generator(args.L, oracle.rates_from_params(p), max_L=args.max_L)
    pi = oracle.stationary_exact(g)
    if mu == pi:
        _emit(args, f"PASS: top-layer marginal equals the exact stationary law (L={args.L})")
        return EXIT_OK
    diffs = [
        f"{s}: mu={format_rational(mp)} oracle={format_rational(op)}"
        for (s, mp), (_, op) in zip(mu.items(), pi.items())
        if mp != op
    ]
    _emit(args, "FAIL:\n" + "\n".join(diffs))
    return EXIT_VERIFY_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="asep2l",
        description="Exact two-layer computations for the open exclusion process.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, L=True, rates=True):
        if L:
            sp.add_argument("--L", type=int, required=True, help="system size")
        if rates:
            sp.add_argument("--q", required=True, help="bias, rational in [0,1)")
            sp.add_argument("--A", required=True, help="left boundary strength")
            sp.add_argument("--B", required=True, help="right boundary strength")
        sp.add_argument("--out", help="write output to this path")
        sp.add_argument("--max-L", dest="max_L", type=int, help="override size cap")

    sp = sub.add_parser("mu", help="exact stationary measure")
    common(sp)
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.add_argument("--jobs", type=int, default=1)
    sp.set_defaults(func=_cmd_mu)

    sp = sub.add_parser("wsigma", help="composition weight polynomial")
    sp.add_argument("--sigma", required=True, help="comma-separated parts")
    sp.add_argument("--q", required=True)
    sp.add_argument("--out")
    sp.set_defaults(func=_cmd_wsigma)

    sp = sub.add_parser("qweight", help="two-layer weight of one pair")
    common(sp, L=False)
    sp.add_argument("--tau", required=True, help="top layer, e.g. 0101")
    sp.add_argument("--xi", required=True, help="bottom layer")
    sp.add_argument("--tilde", action="store_true", help="also emit rescaled weight")
    sp.set_defaults(func=_cmd_qweight)

    sp = sub.add_parser("partition", help="partition function Z")
    common(sp)
    sp.set_defaults(func=_cmd_partition)

    sp = sub.add_parser("verify", help="exhaustive identity checks")
    common(sp)
    sp.add_argument(
        "--identity",
        choices=("left", "right", "bulk", "basic", "all"),
        default="all",
    )
    sp.set_defaults(func=_cmd_verify)

    sp = sub.add_parser("oracle", help="brute-force stationary law or simulation")
    common(sp)
    sp.add_argument("--simulate", action="store_true")
    sp.add_argument("--horizon", type=float, default=1000.0)
    sp.add_argument("--burn-in", dest="burn_in", type=float, default=0.0)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=_cmd_oracle)

    sp = sub.add_parser("sample", help="exact inverse-CDF draws")
    common(sp)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--route", choices=("path", "pair"), default="path")
    sp.set_defaults(func=_cmd_sample)

    sp = sub.add_parser("compare", help="stationary marginal vs oracle")
    common(sp)
    sp.add_argument("--jobs", type=int, default=1)
    sp.set_defaults(func=_cmd_compare)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except SingularParameter as exc:
        print(f"singular parameters: {exc}", file=sys.stderr)
        return EXIT_SINGULAR
    except (ValueError, EnumerationCapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
