"""
octo-cr 命令行

    octo-cr table   [--format json|csv|markdown]
    octo-cr systems [--format json|markdown] [--diff-paper]
    octo-cr verify  SUITE [--seed N] [--samples N] [--out PATH] [--timings] [--workers N] [--pdf PATH]

stdout 只输出表格与报告，日志写 stderr。
退出码：0 全部通过，1 存在失败检查（或 --diff-paper 发现未登记差异），2 用法/配置/IO 错误。
"""

import argparse
import logging
import sys
from typing import Optional, Sequence

from . import __version__
from .core.error_handler import EXIT_FAILED, EXIT_OK, EXIT_USAGE, error_handler
from .core.logging import setup_logging
from .utils.formats import SYSTEM_FORMATS, TABLE_FORMATS, render_systems, render_table, systems_data
from .verification.report import write_report
from .verification.runner import available_suites, run_suite

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="octo-cr", description="八元数 Cauchy-Riemann 方程组的数值验证工具")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", default=None, help="日志级别，默认读取 OCTO_CR_LOG_LEVEL")
    sub = parser.add_subparsers(dest="command", required=True)

    table = sub.add_parser("table", help="输出 8x8 乘法表")
    table.add_argument("--format", choices=TABLE_FORMATS, default="json")
    table.set_defaults(handler=cmd_table)

    systems = sub.add_parser("systems", help="输出实 8x8 与复 4x4 方程组")
    systems.add_argument("--format", choices=SYSTEM_FORMATS, default="json")
    systems.add_argument("--diff-paper", action="store_true", help="与随包的手工转录比对")
    systems.set_defaults(handler=cmd_systems)

    verify = sub.add_parser("verify", help="运行验证套件并输出 JSON 报告")
    verify.add_argument("suite", choices=available_suites())
    verify.add_argument("--seed", type=int, default=None, help="随机种子，默认读取 OCTO_CR_SEED")
    verify.add_argument("--samples", type=int, default=None, help="覆盖所选套件的主样本数")
    verify.add_argument("--out", default=None, help="报告写入文件而不是 stdout")
    verify.add_argument("--timings", action="store_true", help="记录每项检查的耗时（报告不再逐字节可复现）")
    verify.add_argument("--workers", type=int, default=None, help="并行线程数")
    verify.add_argument("--pdf", default=None, help="另存一份 PDF 报告")
    verify.set_defaults(handler=cmd_verify)
    return parser


@error_handler("table 命令")
def cmd_table(args: argparse.Namespace) -> int:
    sys.stdout.write(render_table(args.format))
    return EXIT_OK


@error_handler("systems 命令")
def cmd_systems(args: argparse.Namespace) -> int:
    sys.stdout.write(render_systems(args.format, args.diff_paper))
    if args.diff_paper and systems_data(diff_paper=True)["diff"]["unacknowledged"]:
        return EXIT_FAILED
    return EXIT_OK


@error_handler("verify 命令")
def cmd_verify(args: argparse.Namespace) -> int:
    report = run_suite(args.suite, seed=args.seed, samples=args.samples, workers=args.workers, timings=args.timings)
    if args.out:
        write_report(report, args.out)
        logger.info(f"报告已写入: {args.out}")
    else:
        sys.stdout.write(report.to_json())
    if args.pdf:
        from .utils.report_pdf import report_to_pdf

        report_to_pdf(report, args.pdf)
    return EXIT_OK if report.all_passed else EXIT_FAILED


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse 对 --help / --version 以 0 退出，用法错误以 2 退出
        return EXIT_OK if not e.code else EXIT_USAGE
    setup_logging(level=args.log_level)
    return args.handler(args)


if __name__ == "__main__":
    sys.exit(main())
