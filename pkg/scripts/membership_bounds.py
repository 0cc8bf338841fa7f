"""Bounded search for T_p in the right ideal generated by the adjoint fields.

Sweeps the test degree N, operator order K and coefficient degree M for each
invariant p up to a given degree and prints the verdict with the solver rank.

    python3 scripts/membership_bounds.py --algebra sl2 --N 3 4 --K 2 3 --M 2 3 4
"""
import argparse
import itertools
import time

from duflostar import StarContext, WheelCoefficients, catalog, invariant_basis
from duflostar.diffops import T_action, check_decomposition, r_ideal_membership


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--algebra", default="sl2")
    ap.add_argument("--profile", choices=("zero", "duflo"), default="zero")
    ap.add_argument("--p-degree", type=int, default=2)
    ap.add_argument("--N", type=int, nargs="+", default=[3])
    ap.add_argument("--K", type=int, nargs="+", default=[2, 3])
    ap.add_argument("--M", type=int, nargs="+", default=[2, 3, 4])
    args = ap.parse_args()

    L = catalog(args.algebra)
    trunc = max(args.N) + args.p_degree
    w = WheelCoefficients.duflo(trunc) if args.profile == "duflo" else WheelCoefficients.zero()
    ctx = StarContext.build(L, trunc, w)
    for d in range(args.p_degree + 1):
        for p in invariant_basis(L, d):
            action = T_action(p, ctx)
            for n, k, m in itertools.product(args.N, args.K, args.M):
                t0 = time.perf_counter()
                res = r_ideal_membership(action, L, n, k, m)
                ok = res.found and check_decomposition(action, L, res.decomposition, n)
                print(f"p={p.to_str(L.basis_names):<16} N={n} K={k} M={m}  {res.verdict:<13} "
                      f"verified={ok!s:<5} rank={res.rank}/{res.unknowns}  "
                      f"{time.perf_counter() - t0:.1f}s", flush=True)


if __name__ == "__main__":
    main()
