#!/usr/bin/env python3
"""Command-line entry point for the free *-algebra toolkit."""

import sys
import argparse
import traceback
from pathlib import Path

from src.cli import (
    COMMANDS,
    EXIT_NEGATIVE,
    EXIT_PRECONDITION,
    EXIT_USAGE,
    CommandOptions,
    load_problem,
    render,
    run,
)
from src.config import configure_logging, load_config
from src.errors import ConfigError, ParseError, PreconditionError, ToolkitError
from src.metrics import PerformanceMetrics


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Exact computations in the free *-algebra F<x, x*>",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Reduced Groebner basis of the commutator *-ideal
  python main.py gb --problem problems/commutator.json

  # Membership of 1 - xx* in the Toeplitz ideal (exit 1: non_member)
  python main.py member --problem problems/toeplitz.json --poly "1 - x1*x1'"

  # Certify the moment functional through degree 3
  python main.py verify-functional --problem problems/commutator.json --degree 3

  # Matrix witness for the commutator ideal at d = 1
  python main.py witness --problem problems/commutator.json --degree 1

  # Canonical form in the q-deformed algebra (x = x1, a = x2)
  python main.py canon --algebra qweyl --q 1/2 --poly "x2'*x2"

Exit codes: 0 success, 1 negative answer, 2 usage or parse error, 3 precondition violated.
        """
    )

    parser.add_argument('command', choices=sorted(COMMANDS), help='Operation to run')
    parser.add_argument('expressions', nargs='*', help='Polynomials (same as repeated --poly)')
    parser.add_argument('--problem', type=Path, help='Problem file (JSON)')
    parser.add_argument('--degree', type=int, help='Truncation or construction degree')
    parser.add_argument('--field', choices=['Q', 'Qi'], help='Scalar field when no problem file is given')
    parser.add_argument('--g', type=int, help='Variable count when no problem file is given')
    parser.add_argument('--poly', action='append', default=[], help='Polynomial expression (repeatable)')
    parser.add_argument('--q', help='Deformation parameter p/q for the q-system')
    parser.add_argument('--matrix', action='append', default=[], help='Named matrix tuple from the problem file')
    parser.add_argument('--vector', help='Named vector from the problem file')
    parser.add_argument('--algebra', choices=['toeplitz', 'qweyl'], help='Rewriting quotient for canon')
    parser.add_argument('--k', action='append', default=[], help='k value for the k-identity (repeatable)')
    parser.add_argument('--json', action='store_true', default=True, help='JSON output (default)')
    parser.add_argument('--stats', action='store_true', help='Print timing summary to stderr')
    parser.add_argument('--verbose', '-v', action='store_true', help='Debug logging')
    return parser


def main(argv=None):
    """Main entry point."""
    args = build_parser().parse_intermixed_args(argv)

    try:
        config = load_config()
    except ConfigError as e:
        print(f"ERROR: {e}", file=sys.stderr)
        print("Example: cp .env.example .env", file=sys.stderr)
        return EXIT_USAGE
    configure_logging(config, args.verbose)

    options = CommandOptions(
        degree=args.degree,
        polys=list(args.poly) + list(args.expressions),
        q=args.q,
        matrices=list(args.matrix),
        vector=args.vector,
        algebra=args.algebra,
        k_values=list(args.k),
        g=args.g,
        field=args.field or config.field,
        default_degree=config.degree,
        max_doublings=config.max_doublings,
    )
    metrics = PerformanceMetrics()

    try:
        problem = None
        if args.problem is not None:
            problem = load_problem(args.problem, options.field, config.degree)
        with metrics.timed(args.command):
            payload, code = run(args.command, problem, options)
        print(render(payload))
        if args.stats:
            metrics.print_summary(file=sys.stderr)
        return code
    except KeyboardInterrupt:
        print("\n\n✗ Interrupted by user", file=sys.stderr)
        return 130
    except (ParseError, FileNotFoundError) as e:
        print(f"✗ {e}", file=sys.stderr)
        return EXIT_USAGE
    except PreconditionError as e:
        print(f"✗ Precondition violated: {e}", file=sys.stderr)
        return EXIT_PRECONDITION
    except ToolkitError as e:
        print(f"✗ {e}", file=sys.stderr)
        if args.verbose:
            traceback.print_exc()
        return EXIT_NEGATIVE


if __name__ == "__main__":
    sys.exit(main())
