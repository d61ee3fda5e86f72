"""Command-line entry point: ``rees-elim run <script>``."""

import argparse
import sys

from .elimination import MAX_DEGREE
from .probes import parse_grid_spec
from .session import run_session


def build_parser():
    parser = argparse.ArgumentParser(prog="rees-elim", description="Replay Rees-algebra session scripts.")
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="execute a session script and print its report")
    run.add_argument("script")
    run.add_argument("--records", metavar="OUT", help="also write JSON records to OUT")
    run.add_argument("--probe-grid", metavar="SPEC",
                     help="default probe coordinates, e.g. '0,1,-1,2' or '-2..2'")
    run.add_argument("--max-degree", type=int, default=MAX_DEGREE,
                     help=f"cap on transversal degree (default {MAX_DEGREE})")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    values = parse_grid_spec(args.probe_grid) if args.probe_grid else None
    try:
        report = run_session(args.script, values, args.max_degree)
    except OSError as exc:
        print(f"rees-elim: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(report.text())
    if args.records:
        with open(args.records, "w", encoding="utf-8") as fh:
            fh.write(report.dumps_records())
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
