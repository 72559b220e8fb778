"""
unitgroup-lab command line

    unitgroup-lab verify <c5|s3|sn|an|s4|a4|a8|all> [--max-n N] [--json PATH] [--threads K]

Exit codes: 0 every report passed (or is the expected A8 obstruction),
1 a claim failed to reproduce, 2 usage or configuration error.
"""
from pathlib import Path
from typing import List, Optional, Sequence
import argparse
import json
import logging
import sys
import time

from app.api.models import VerificationReport
from app.services.verification_service import CLAIMS, verification_service
from app.utils.config import settings

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="unitgroup-lab",
        description="Certificates for rings whose unit group is a symmetric or alternating group",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {settings.APP_VERSION}")
    commands = parser.add_subparsers(dest="command", required=True)

    verify = commands.add_parser("verify", help="Recompute one claim (or all of them)")
    verify.add_argument("claim", choices=CLAIMS)
    verify.add_argument("--max-n", type=int, default=None,
                        help=f"Largest n for the S_n / A_n families (default {settings.DEFAULT_MAX_N})")
    verify.add_argument("--json", type=Path, default=None, dest="json_path",
                        help="Write the reports as a JSON array to this file")
    verify.add_argument("--threads", type=int, default=None,
                        help="Claims run concurrently by 'verify all'")
    verify.add_argument("--timings", action="store_true",
                        help="Keep wall-clock ms in the JSON output")
    verify.add_argument("-v", "--verbose", action="store_true", help="Debug logging")
    return parser


def render_reports(reports: List[VerificationReport], timings: bool = False) -> str:
    """
    Reports as a stable JSON array

    ms is null unless timings is set, so repeated runs give identical files.
    """
    return json.dumps(
        [{**report.certified(), "ms": report.ms if timings else None} for report in reports],
        indent=2,
        sort_keys=True,
    )


def summary_line(report: VerificationReport) -> str:
    failed = sorted(
        name for name, value in report.facts.items()
        if isinstance(value, dict) and value.get("ok") is False
    )
    line = f"{report.verdict.upper():<10} {report.id:<6} {report.anchor.section}"
    if failed:
        line += f"  (mismatched: {', '.join(failed)})"
    return line


def run_verify(args: argparse.Namespace) -> int:
    start = time.time()
    reports = verification_service.run(args.claim, max_n=args.max_n, threads=args.threads)

    for report in reports:
        print(summary_line(report))

    json_path = args.json_path or settings.JSON_OUTPUT
    if json_path:
        Path(json_path).write_text(render_reports(reports, args.timings) + "\n", encoding="utf-8")
        logger.info(f"Wrote {len(reports)} reports to {json_path}")

    passed = all(report.passed for report in reports)
    logger.info(f"verify {args.claim}: {len(reports)} reports in {time.time() - start:.2f}s")
    return EXIT_OK if passed else EXIT_MISMATCH


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    logging.basicConfig(
        level=logging.DEBUG if (args.verbose or settings.DEBUG) else logging.INFO,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    )

    try:
        return run_verify(args)

    except ValueError as e:
        logger.error(f"Usage error: {str(e)}")
        return EXIT_USAGE

    except Exception as e:
        logger.error(f"Verification error: {str(e)}", exc_info=True)
        return EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
