"""基准结果汇总表"""

from collections import defaultdict
from dataclasses import dataclass

import numpy as np

from .runner import BenchRow


@dataclass
class TableConfig:
    """表格配置"""

    padding: int = 2
    border_char: str = "-"
    col_sep: str = "|"


class TableFormatter:
    """等宽文本表格"""

    def __init__(self, config: TableConfig | None = None) -> None:
        self.config = config or TableConfig()

    def format_table(self, headers: list[str], rows: list[list[str]]) -> str:
        if not headers:
            return ""
        widths = [len(h) for h in headers]
        for row in rows:
            for i, cell in enumerate(row):
                widths[i] = max(widths[i], len(str(cell)))
        widths = [w + self.config.padding * 2 for w in widths]

        border = self._border(widths)
        lines = [border, self._row(headers, widths), border]
        lines.extend(self._row(row, widths) for row in rows)
        if rows:
            lines.append(border)
        return "\n".join(lines)

    def _border(self, widths: list[int]) -> str:
        return self.config.col_sep.join(self.config.border_char * w for w in widths)

    def _row(self, cells: list[str], widths: list[int]) -> str:
        pad = self.config.padding
        return self.config.col_sep.join(
            " " * pad + str(cell).ljust(width - 2 * pad) + " " * pad
            for cell, width in zip(cells, widths)
        )


SUMMARY_HEADERS = ["codec", "Cr", "bits", "images", "PSNR(dB)", "SSIM"]


def summarize(rows: list[BenchRow]) -> list[list[str]]:
    """按 (codec, 目标 Cr, bits) 聚合平均 PSNR/SSIM"""
    groups: dict[tuple[str, int, int], list[BenchRow]] = defaultdict(list)
    for row in rows:
        groups[(row.codec, row.ratio, row.bits)].append(row)

    table = []
    for (codec, ratio, bits), members in sorted(groups.items()):
        table.append(
            [
                codec,
                str(ratio),
                str(bits),
                str(len(members)),
                f"{np.mean([m.psnr for m in members]):.2f}",
                f"{np.mean([m.ssim for m in members]):.4f}",
            ]
        )
    return table


def format_summary(rows: list[BenchRow], config: TableConfig | None = None) -> str:
    return TableFormatter(config).format_table(SUMMARY_HEADERS, summarize(rows))
