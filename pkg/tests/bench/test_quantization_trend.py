"""
量化鲁棒性趋势

BMVC 的测量动态范围只有块数量级，位深从 8 变到 16 时 PSNR 几乎不变；
分块 CS 的测量值可达数百，同一压缩比下对位深更敏感。
"""

import numpy as np
import pytest

from bmvc.bench import BenchCell, crop_to_multiple, run_cell, synthetic_test_set
from bmvc.core import DecodeConfig

BITS = (8, 10, 12, 14, 16)


def mean_psnr_by_bits(codec: str, images: list[np.ndarray]) -> list[float]:
    cfg = DecodeConfig()
    return [
        float(np.mean([run_cell(BenchCell("img", codec, 16, bits), img, 42, cfg).psnr for img in images]))
        for bits in BITS
    ]


@pytest.mark.slow
class TestQuantizationTrend:
    """测试位深对重建质量的影响"""

    def test_bmvc_spread_below_block_cs(self):
        """BMVC 跨位深的 PSNR 极差不超过 0.5 dB，且小于分块 CS"""
        images = [crop_to_multiple(img, 24) for _, img in synthetic_test_set(5, 256, seed=42)]
        bmvc = mean_psnr_by_bits("bmvc", images)
        block_cs = mean_psnr_by_bits("block-cs", images)
        bmvc_spread = max(bmvc) - min(bmvc)
        assert bmvc_spread <= 0.5
        assert max(block_cs) - min(block_cs) > bmvc_spread
