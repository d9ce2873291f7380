#!/usr/bin/env python3
"""
twistlab command line
=====================
Runs the verification suites, evaluates star products and lists fixtures.

Usage:
    python twistlab.py verify --suite all --order 3 --seed 20240101 --report out.json
    python twistlab.py star --space gstar --f x --g y --order 2
    python twistlab.py fixtures list

Design decisions:
    - Exit codes: 0 all checks pass, 1 some check fails, 2 usage, config or
      parse error.
    - The JSON report is written with sorted keys and no timings, so two runs
      with the same config and seed are byte-identical.
"""

import argparse
import json
import logging
import os
import sys
from typing import List, Optional

from dotenv import load_dotenv
from pydantic import ValidationError

from config import MAX_ORDER, SuiteConfig
from exprcas import TwistlabError, parse
from liebialg import FIXTURE_DIR, load_algebra
from momentum import GDUAL_CHART, coadjoint_fields
from quantizeudf import CocycleGamma, StarProduct, dressing_hopf_action, m_gamma
from suites import SUITES, run_suite
from ueahopf import Enveloping, HSeries, jordanian_twist

load_dotenv()

logger = logging.getLogger(__name__)

SPACES = ("gstar", "gdual-coadjoint", "group")
SPACE_COORDS = {"gstar": ("x", "y"), "gdual-coadjoint": GDUAL_CHART.coords, "group": ("a", "n")}

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2


# ----------------------------------------------------------------------
# verify
# ----------------------------------------------------------------------

def write_report(run, path: str) -> None:
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(run.to_dict(), fh, indent=2, sort_keys=True, ensure_ascii=False)
        fh.write("\n")


def cmd_verify(args) -> int:
    config = SuiteConfig.from_env(suite=args.suite, order=args.order, seed=args.seed,
                                  samples=args.samples, report=args.report, twist=args.twist)
    print(f"\n🔍 Running suite '{config.suite}' (order {config.order}, seed {config.seed}, "
          f"{config.samples} samples)")
    run = run_suite(config, progress=lambda name: print(f"   ▶️  {name} ..."))

    print(f"\n📊 Results:")
    for report in run.reports:
        print(f"   {report.summary()}  ({run.timings[report.name]:.1f}s)")
        first = report.first_failure
        if first is not None:
            where = f" at order {first.order}" if first.order is not None else ""
            print(f"       ❌ first failure: {first.name}{where} {first.detail}".rstrip())
    constants = run.constants()
    if constants:
        print(f"\n🧮 Derived constants:")
        for key in sorted(constants):
            print(f"   {key} = {constants[key]}")

    path = config.report_path()
    write_report(run, path)
    print(f"\n💾 Report saved to {path}")
    if not run.reports:
        print("ℹ️  No suites selected")
    print("✅ All checks passed" if run.passed else "❌ Some checks failed")
    return EXIT_OK if run.passed else EXIT_CHECK_FAILED


# ----------------------------------------------------------------------
# star
# ----------------------------------------------------------------------

def star_calc(space: str, f_text: str, g_text: str, order: int) -> HSeries:
    """f ⋆ g on the chosen space with the Jordanian twist."""
    if space not in SPACES:
        raise TwistlabError(f"unknown space {space!r}; choose from {', '.join(SPACES)}")
    coords = SPACE_COORDS[space]
    f, g = parse(f_text, coords), parse(g_text, coords)
    F = jordanian_twist(Enveloping(load_algebra("axb")), order)
    if space == "gstar":
        return StarProduct(F, dressing_hopf_action())(f, g)
    if space == "gdual-coadjoint":
        return StarProduct(F, coadjoint_fields())(f, g)
    return m_gamma(CocycleGamma(F), f, g)


def cmd_star(args) -> int:
    order = args.order if args.order is not None else SuiteConfig.from_env().order
    SuiteConfig(order=order)
    series = star_calc(args.space, args.f, args.g, order)
    print(series)
    return EXIT_OK


# ----------------------------------------------------------------------
# fixtures
# ----------------------------------------------------------------------

def cmd_fixtures(args) -> int:
    print(f"📁 Fixtures in {FIXTURE_DIR}:")
    for name in sorted(os.listdir(FIXTURE_DIR)):
        if name.endswith(".json"):
            with open(os.path.join(FIXTURE_DIR, name), "r", encoding="utf-8") as fh:
                doc = json.load(fh)
            kind = "twist" if "terms" in doc else "algebra"
            print(f"   • {name[:-5]} ({kind})")
    print(f"\n🧪 Suites: {', '.join(SUITES)}, all")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Twist quantization and momentum map verifier")
    parser.add_argument("--verbose", action="store_true", help="Debug logging from the library modules")
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="Run verification suites")
    verify.add_argument("--suite", default="all",
                        help=f"Suite name, comma list or 'all' ({', '.join(SUITES)})")
    verify.add_argument("--order", type=int, default=None, help=f"hbar order, 0..{MAX_ORDER}")
    verify.add_argument("--seed", type=int, default=None, help="Random seed for sampled checks")
    verify.add_argument("--samples", type=int, default=None, help="Random sample count")
    verify.add_argument("--twist", default=None, help="Twist fixture name (default: generated Jordanian)")
    verify.add_argument("--report", default=None, help="JSON report path")
    verify.set_defaults(handler=cmd_verify)

    star = sub.add_parser("star", help="Print the star product f ⋆ g")
    star.add_argument("--space", choices=SPACES, default="gstar")
    star.add_argument("--f", required=True, help="First function, e.g. 'x*y'")
    star.add_argument("--g", required=True, help="Second function")
    star.add_argument("--order", type=int, default=None)
    star.set_defaults(handler=cmd_star)

    fixtures = sub.add_parser("fixtures", help="Fixture listing")
    fixtures.add_argument("action", choices=["list"])
    fixtures.set_defaults(handler=cmd_fixtures)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(asctime)s %(name)s %(levelname)s %(message)s")
    try:
        return args.handler(args)
    except ValidationError as e:
        print(f"❌ Invalid configuration: {e}")
        return EXIT_USAGE
    except TwistlabError as e:
        print(f"❌ Error: {e}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
