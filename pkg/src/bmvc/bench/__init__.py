"""Bench 模块

基准测试网格、合成测试集与结果汇总。
"""

from .runner import (
    CSV_COLUMNS,
    BenchCell,
    BenchReport,
    BenchRow,
    crop_to_multiple,
    luma_of,
    plot_psnr,
    run_bench,
    run_cell,
    write_csv,
)
from .summary import TableConfig, TableFormatter, format_summary, summarize
from .testset import synthetic_image, synthetic_test_set

__all__ = [
    "BenchCell",
    "BenchRow",
    "BenchReport",
    "CSV_COLUMNS",
    "run_bench",
    "run_cell",
    "write_csv",
    "plot_psnr",
    "crop_to_multiple",
    "luma_of",
    "TableConfig",
    "TableFormatter",
    "format_summary",
    "summarize",
    "synthetic_image",
    "synthetic_test_set",
]
