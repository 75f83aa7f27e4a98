"""基准测试

对 (图像, 编解码器, Cr, bits) 网格逐格执行 编码 → 写码流 → 读码流 → 解码，
在 Y 平面上计算 PSNR/SSIM，并写出 CSV、SVG 曲线和运行清单。
"""

import csv
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import product
from pathlib import Path

import numpy as np
from matplotlib.figure import Figure

from ..baselines.block_cs import BLOCK_SIZE
from ..codec.pipeline import decode_stream, encode_frames
from ..color.yuv import rgb_to_yuv
from ..config.settings import BenchSettings, EncodeSettings
from ..container.stream import read_stream, write_stream
from ..core.config import DecodeConfig
from ..core.exceptions import BmvcError
from ..metrics.manifest import RunManifest
from ..metrics.quality import psnr, ssim
from ..utils.timing import Stopwatch

logger = logging.getLogger(__name__)

CSV_COLUMNS = (
    "image",
    "codec",
    "ratio",
    "compression_ratio",
    "bits",
    "psnr",
    "ssim",
    "additions",
    "multiplications",
    "stream_bytes",
    "encode_seconds",
    "decode_seconds",
    "seed",
)


@dataclass(frozen=True)
class BenchCell:
    """网格中的一格"""

    image: str
    codec: str
    ratio: int
    bits: int


@dataclass
class BenchRow:
    """一格的测量结果，字段与 CSV 列一一对应"""

    image: str
    codec: str
    ratio: int
    compression_ratio: float
    bits: int
    psnr: float
    ssim: float
    additions: int
    multiplications: int
    stream_bytes: int
    encode_seconds: float
    decode_seconds: float
    seed: int

    def to_csv_row(self) -> dict[str, object]:
        row = asdict(self)
        for key in ("compression_ratio", "psnr", "ssim"):
            row[key] = f"{row[key]:.6f}"
        for key in ("encode_seconds", "decode_seconds"):
            row[key] = f"{row[key]:.4f}"
        return row


@dataclass
class BenchReport:
    """一次基准运行的产物"""

    rows: list[BenchRow] = field(default_factory=list)
    skipped: list[tuple[BenchCell, str]] = field(default_factory=list)
    csv_path: Path | None = None
    plots: list[Path] = field(default_factory=list)
    manifest_path: Path | None = None


def luma_of(image: np.ndarray) -> np.ndarray:
    """基准只在 Y 平面上比较"""
    arr = np.asarray(image, dtype=np.float64)
    if arr.ndim == 3:
        arr = np.clip(rgb_to_yuv(arr)[0], 0.0, 1.0)
    return arr


def crop_to_multiple(image: np.ndarray, multiple: int) -> np.ndarray:
    """左上角裁剪到 multiple 的整数倍；不足一个单位时原样返回"""
    h, w = image.shape[:2]
    ch, cw = h - h % multiple, w - w % multiple
    if ch == 0 or cw == 0:
        return image
    return image[:ch, :cw]


def run_cell(cell: BenchCell, image: np.ndarray, seed: int, cfg: DecodeConfig) -> BenchRow:
    """执行一格

    Raises:
        BmvcError: 几何不合法等导致该格无法运行
    """
    settings = EncodeSettings(codec=cell.codec, ratio=cell.ratio, bits=cell.bits, seed=seed)
    with Stopwatch() as encode_clock:
        stream, stats, codec = encode_frames([image], settings)
        data = write_stream(stream.header, stream.frames)
    with Stopwatch() as decode_clock:
        decoded = decode_stream(read_stream(data), cfg)
    restored = decoded[0].luma
    return BenchRow(
        image=cell.image,
        codec=cell.codec,
        ratio=cell.ratio,
        compression_ratio=stats.compression_ratio,
        bits=cell.bits,
        psnr=psnr(image, restored),
        ssim=ssim(image, restored),
        additions=stats.additions,
        multiplications=stats.multiplications,
        stream_bytes=len(data),
        encode_seconds=encode_clock.elapsed,
        decode_seconds=decode_clock.elapsed,
        seed=codec.seed,
    )


def _run_cell_job(
    cell: BenchCell, image: np.ndarray, seed: int, cfg: DecodeConfig
) -> tuple[BenchCell, BenchRow | None, str]:
    try:
        return cell, run_cell(cell, image, seed, cfg), ""
    except BmvcError as e:
        return cell, None, str(e)


def _prepare_images(
    images: list[tuple[str, np.ndarray]], codecs: tuple[str, ...]
) -> dict[str, np.ndarray]:
    prepared = {}
    for name, image in images:
        luma = luma_of(image)
        if "block-cs" in codecs:
            cropped = crop_to_multiple(luma, BLOCK_SIZE)
            if cropped.shape != luma.shape:
                logger.info("%s 裁剪为 %dx%d 以适配 24×24 分块", name, *cropped.shape)
            luma = cropped
        prepared[name] = luma
    return prepared


def write_csv(path: Path, rows: list[BenchRow]) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.DictWriter(f, fieldnames=CSV_COLUMNS)
        writer.writeheader()
        for row in rows:
            writer.writerow(row.to_csv_row())
    return path


def _mean_curve(rows: list[BenchRow], key: str) -> dict[str, tuple[list[int], list[float]]]:
    curves: dict[str, tuple[list[int], list[float]]] = {}
    for codec in sorted({r.codec for r in rows}):
        members = [r for r in rows if r.codec == codec and math.isfinite(r.psnr)]
        xs = sorted({getattr(r, key) for r in members})
        if not xs:
            continue
        ys = [float(np.mean([r.psnr for r in members if getattr(r, key) == x])) for x in xs]
        curves[codec] = (xs, ys)
    return curves


def plot_psnr(rows: list[BenchRow], key: str, path: Path, xlabel: str) -> Path:
    """平均 PSNR 随 key（ratio 或 bits）变化的 SVG 曲线"""
    fig = Figure(figsize=(6, 4))
    ax = fig.subplots()
    for codec, (xs, ys) in _mean_curve(rows, key).items():
        ax.plot(xs, ys, marker="o", label=codec)
    if key == "ratio":
        ax.set_xscale("log", base=2)
    ax.set_xlabel(xlabel)
    ax.set_ylabel("PSNR (dB)")
    ax.grid(True, alpha=0.3)
    if ax.get_legend_handles_labels()[0]:
        ax.legend()
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, format="svg")
    return path


def run_bench(
    images: list[tuple[str, np.ndarray]],
    settings: BenchSettings,
    cfg: DecodeConfig,
    out_dir: Path,
    *,
    inputs: list[Path] | None = None,
) -> BenchReport:
    """执行基准网格并写出全部产物

    Args:
        images: [(名称, 图像)]，彩色图像只取 Y 平面
        settings: 基准设置
        cfg: 解码配置
        out_dir: 输出目录，写入 results.csv、psnr_vs_ratio.svg、psnr_vs_bits.svg、manifest.yaml
        inputs: 输入文件路径，记录到清单中（合成测试集时为空）

    Raises:
        BmvcError: 没有输入图像
    """
    if not images:
        raise BmvcError("没有可用的测试图像")
    prepared = _prepare_images(images, settings.codecs)
    cells = [
        BenchCell(image=name, codec=codec, ratio=ratio, bits=bits)
        for name, codec, ratio, bits in product(
            prepared, settings.codecs, settings.ratios, settings.bits
        )
    ]
    logger.info("基准网格: %d 格, workers=%d", len(cells), settings.workers)

    if settings.workers > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=settings.workers) as executor:
            futures = [
                executor.submit(_run_cell_job, c, prepared[c.image], settings.seed, cfg)
                for c in cells
            ]
            results = [future.result() for future in futures]
    else:
        results = [_run_cell_job(c, prepared[c.image], settings.seed, cfg) for c in cells]

    report = BenchReport()
    for index, (cell, row, error) in enumerate(results, start=1):
        if row is None:
            logger.warning("跳过 %s/%s Cr=%d bits=%d: %s", cell.image, cell.codec, cell.ratio, cell.bits, error)
            report.skipped.append((cell, error))
            continue
        logger.info(
            "[%d/%d] %s %s Cr=%d bits=%d PSNR=%.2f dB",
            index,
            len(results),
            cell.image,
            cell.codec,
            cell.ratio,
            cell.bits,
            row.psnr,
        )
        report.rows.append(row)

    report.csv_path = write_csv(out_dir / "results.csv", report.rows)
    report.plots = [
        plot_psnr(report.rows, "ratio", out_dir / "psnr_vs_ratio.svg", "compression ratio"),
        plot_psnr(report.rows, "bits", out_dir / "psnr_vs_bits.svg", "quantization bits"),
    ]

    manifest = RunManifest(
        command="bench",
        seeds=_manifest_seeds(settings.seed, report.rows),
        settings={"bench": settings.to_dict(), "decode": cfg.to_dict()},
    )
    for path in inputs or []:
        manifest.add_input(path)
    report.manifest_path = manifest.save(out_dir / "manifest.yaml")
    return report


def _manifest_seeds(seed: int, rows: list[BenchRow]) -> dict[str, int]:
    seeds = {"bench": seed}
    for row in rows:
        if row.codec == "block-cs":
            seeds[f"block-cs@{row.ratio}"] = row.seed
    return seeds
