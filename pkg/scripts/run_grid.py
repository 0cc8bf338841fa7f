"""Run verification suites over the catalog x wheel-profile grid.

Writes one JSON report per cell into --out-dir and prints a summary table.

    python3 scripts/run_grid.py --suite theorem4 --trunc 8 --out-dir reports
"""
import argparse
from pathlib import Path

from duflostar.harness import SUITES, SuiteConfig, run_suite

ALGEBRAS = ["abelian_3", "heisenberg3", "ut3", "aff1", "sl2", "so3"]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--suite", choices=SUITES + ("all",), default="all")
    ap.add_argument("--trunc", type=int, default=8)
    ap.add_argument("--algebras", nargs="+", default=ALGEBRAS)
    ap.add_argument("--profiles", nargs="+", default=["zero", "duflo"])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out-dir", default="reports")
    args = ap.parse_args()

    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    worst = 0
    print(f"{'algebra':<12} {'wheels':<7} {'pass':>5} {'fail':>5} {'inconc':>7} {'skip':>5}")
    for name in args.algebras:
        for profile in args.profiles:
            cfg = SuiteConfig(algebra=name, trunc=args.trunc, wheels=profile, suite=args.suite,
                              seed=args.seed)
            report = run_suite(cfg)
            (out / f"{args.suite}-{name}-{profile}.json").write_text(report.to_json())
            s = report.summary
            worst = max(worst, report.exit_code)
            print(f"{name:<12} {profile:<7} {s['pass']:>5} {s['fail']:>5} {s['inconclusive']:>7} "
                  f"{s['skipped']:>5}", flush=True)
    return worst


if __name__ == "__main__":
    raise SystemExit(main())
