"""Compare naive, pure-Python and compiled block-distinctness.

    python3 benchmarks/bench_kernels.py [--k 2,10,100,1000] [--mmax 3000] [--repeat 3]

Exits nonzero if any strategy disagrees with the others.
"""
import argparse
import sys

from antipowers.bench import default_cases, format_table, run_bench
from antipowers.cli import parse_range


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--k", type=parse_range, default=[2, 10, 100, 1000])
    parser.add_argument("--mmax", type=int, default=3000)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--strategies", default=None, help="comma list of naive,python,native")
    args = parser.parse_args(argv)
    strategies = args.strategies.split(",") if args.strategies else None
    report = run_bench(default_cases(args.k, args.mmax), strategies, args.repeat)
    sys.stdout.write(format_table(report))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
