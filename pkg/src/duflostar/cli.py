"""``verify`` command line entry point."""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .errors import ConfigError, ParseError
from .harness import OUT_DIR_ENV, SUITES, SuiteConfig, run_suite


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="verify", description="Run exact verification suites for "
                                 "Duflo/star-product identities on a Lie algebra.")
    ap.add_argument("--suite", required=True, choices=SUITES + ("all",))
    ap.add_argument("--algebra", required=True, help="catalog name (abelian_N, heisenberg3, sl2, so3, "
                    "aff1, ut3) or path to an algebra file")
    ap.add_argument("--trunc", type=int, required=True, help="jet truncation degree N")
    ap.add_argument("--wheels", default="zero", help="zero | duflo | c2,c4,... (rationals p/q)")
    ap.add_argument("--order-bound", type=int, default=2, help="K: operator order in R-membership")
    ap.add_argument("--coeff-bound", type=int, default=2, help="M: coefficient degree in R-membership")
    ap.add_argument("--membership-degree", type=int, default=3, help="N: test degree in R-membership")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--samples", type=int, default=20)
    ap.add_argument("--sample-degree", type=int, default=3)
    ap.add_argument("--format", dest="fmt", choices=("text", "json"), default="text")
    ap.add_argument("--out", help=f"report path; ${OUT_DIR_ENV} overrides the directory")
    ap.add_argument("--timing", action="store_true", help="include timings in JSON output")
    return ap


def output_path(out: str | None, cfg: SuiteConfig) -> Path | None:
    override = os.environ.get(OUT_DIR_ENV)
    if out is None and not override:
        return None
    ext = "json" if cfg.fmt == "json" else "txt"
    name = Path(out).name if out else f"report-{cfg.suite}-{Path(cfg.algebra).stem}.{ext}"
    if override:
        return Path(override) / name
    return Path(out)


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    cfg = SuiteConfig(algebra=args.algebra, trunc=args.trunc, wheels=args.wheels, suite=args.suite,
                      order_bound=args.order_bound, coeff_bound=args.coeff_bound,
                      membership_degree=args.membership_degree, seed=args.seed,
                      samples=args.samples, sample_degree=args.sample_degree,
                      fmt=args.fmt, out=args.out, timing=args.timing)
    try:
        report = run_suite(cfg)
    except (ConfigError, ParseError) as exc:
        print(f"verify: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    text = report.to_json(timing=cfg.timing) if cfg.fmt == "json" else report.to_text()
    path = output_path(cfg.out, cfg)
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    if path is None or cfg.fmt == "text":
        sys.stdout.write(text)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
