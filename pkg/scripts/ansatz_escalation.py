"""How much coefficient degree does the right-star operator of p need?

For each algebra, profile and monomial p, fit the operator against all r of
degree <= n for several n and print the smallest slack s (coefficients of
degree <= order + s) that works.  A slack that keeps growing with n means
the operator has coefficients of unbounded degree.

    python3 scripts/ansatz_escalation.py --algebras aff1 sl2 --max-test-degree 7
"""
import argparse
import time

from duflostar import Poly, StarContext, WheelCoefficients, catalog
from duflostar.diffops import extract_right_star_operator
from duflostar.errors import AnsatzInfeasible
from duflostar.poly import monomials_up_to


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--algebras", nargs="+", default=["heisenberg3", "ut3", "aff1", "sl2", "so3"])
    ap.add_argument("--profiles", nargs="+", default=["zero", "duflo"])
    ap.add_argument("--p-degree", type=int, default=2)
    ap.add_argument("--min-test-degree", type=int, default=2)
    ap.add_argument("--max-test-degree", type=int, default=6)
    args = ap.parse_args()

    degrees = range(args.min_test_degree, args.max_test_degree + 1)
    print("algebra      profile p            " + " ".join(f"n={n:<3}" for n in degrees))
    for name in args.algebras:
        L = catalog(name)
        for profile in args.profiles:
            trunc = args.p_degree + args.max_test_degree
            w = WheelCoefficients.duflo(trunc) if profile == "duflo" else WheelCoefficients.zero()
            ctx = StarContext.build(L, trunc, w)
            for g in monomials_up_to(L.dim, args.p_degree):
                p = Poly.monomial(g)
                cells = []
                for n in degrees:
                    try:
                        fit = extract_right_star_operator(p, ctx, n, max_slack=n)
                        cells.append(f"{fit.slack}{'' if fit.unique else '*'}")
                    except AnsatzInfeasible:
                        cells.append("-")
                label = p.to_str(L.basis_names)
                print(f"{name:<12} {profile:<7} {label:<12} " + " ".join(f"{c:<5}" for c in cells))
    print("entries: smallest slack; '*' marks a non-unique fit; '-' infeasible")


if __name__ == "__main__":
    t0 = time.perf_counter()
    main()
    print(f"{time.perf_counter() - t0:.1f}s")
