"""CLI 命令

encode / decode / bench / mask 四个命令。退出码：0 成功，2 用法错误
（参数格式、空编解码器列表、调度字符串无效），1 数据或运行时错误。
"""

import logging
import sys
import typing as t
from contextlib import contextmanager
from pathlib import Path
from typing import Optional

import humanize
import typer

from ..bench.runner import luma_of, run_bench
from ..bench.summary import format_summary
from ..bench.testset import synthetic_test_set
from ..codec.pipeline import decode_stream, encode_frames
from ..config.settings import Settings, load_settings, parse_size
from ..container.stream import load_stream, save_stream
from ..core.exceptions import BmvcError, ConfigValidationError
from ..image.loader import gather_images, load_image, save_image
from ..mask.generator import export_mask, generate_mask
from ..metrics.quality import psnr, ssim
from ..utils.logging import get_logger
from ..utils.timing import Stopwatch, format_duration
from .registry import register_command

USAGE_EXIT = 2
ERROR_EXIT = 1


@contextmanager
def handle_errors() -> t.Iterator[None]:
    """把库异常转换为退出码"""
    try:
        yield
    except ConfigValidationError as e:
        typer.secho(f"✗ 参数错误: {e}", fg=typer.colors.RED, bold=True)
        sys.exit(USAGE_EXIT)
    except BmvcError as e:
        typer.secho(f"✗ 错误: {e}", fg=typer.colors.RED, bold=True)
        sys.exit(ERROR_EXIT)


def _setup_logging(verbose: bool) -> None:
    get_logger("bmvc", level=logging.DEBUG if verbose else logging.INFO)


def _settings(config: Path | None, section: str, values: dict[str, t.Any]) -> Settings:
    overrides = {k: v for k, v in values.items() if v is not None}
    return load_settings(config, {section: overrides} if overrides else None)


def _parse_list(text: str | None, convert: t.Callable[[str], t.Any], name: str) -> list | None:
    if text is None:
        return None
    items = [item.strip() for item in text.split(",") if item.strip()]
    try:
        return [convert(item) for item in items]
    except ValueError as e:
        raise ConfigValidationError(f"{name} 列表格式无效", {"value": text}) from e


def _numbered(path: Path, index: int, count: int) -> Path:
    if count == 1:
        return path
    return path.with_name(f"{path.stem}_{index:04d}{path.suffix}")


@register_command("encode")
def encode(
    inputs: list[Path] = typer.Option(..., "--input", "-i", help="输入图像，可重复给出多帧"),
    output: Path = typer.Option(..., "--output", "-o", help="输出码流路径"),
    block: Optional[str] = typer.Option(None, "--block", help="BMVC 块尺寸 HxW"),
    ratio: Optional[int] = typer.Option(None, "--ratio", help="目标压缩比，未给出块尺寸时使用"),
    bits: Optional[int] = typer.Option(None, "--bits", help="量化位深 8-16"),
    seed: Optional[int] = typer.Option(None, "--seed", help="掩码种子"),
    codec: Optional[str] = typer.Option(None, "--codec", help="bmvc / random-ds / block-cs"),
    color: Optional[bool] = typer.Option(None, "--color/--gray", help="按 YUV 编码彩色输入"),
    chroma_factor: Optional[int] = typer.Option(None, "--chroma-factor", help="色度下采样因子"),
    stats: bool = typer.Option(False, "--stats", help="打印运算次数与码流大小"),
    config: Optional[Path] = typer.Option(None, "--config", "-c", help="YAML 设置文件"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="输出调试日志"),
) -> None:
    """把一帧或多帧图像编码为码流"""
    _setup_logging(verbose)
    with handle_errors():
        settings = _settings(
            config,
            "encode",
            {
                "block": block,
                "ratio": ratio,
                "bits": bits,
                "seed": seed,
                "codec": codec,
                "color": color,
                "chroma_factor": chroma_factor,
            },
        )
        images = [load_image(path) for path in inputs]
        stream, encode_stats, _ = encode_frames(images, settings.encode)
        written = save_stream(output, stream)

        typer.secho(f"✓ 已写入 {output}", fg=typer.colors.GREEN, bold=True)
        if stats:
            header = stream.header
            typer.echo(f"  编解码器: {header.codec.label}")
            typer.echo(f"  帧: {header.frame_height}x{header.frame_width} × {header.frame_count}")
            typer.echo(f"  测量: {header.block_height}x{header.block_width}")
            typer.echo(f"  压缩比: {encode_stats.compression_ratio:.2f}")
            typer.echo(f"  加法次数: {encode_stats.additions}")
            typer.echo(f"  乘法次数: {encode_stats.multiplications}")
            typer.echo(f"  码流大小: {humanize.naturalsize(written)} ({written} bytes)")


@register_command("decode")
def decode(
    source: Path = typer.Argument(..., help="输入码流"),
    output: Path = typer.Option(..., "--output", "-o", help="输出图像，多帧时自动编号"),
    denoiser: Optional[str] = typer.Option(None, "--denoiser", help="tv / nlm / identity"),
    iters: Optional[int] = typer.Option(None, "--iters", help="总迭代次数，均分到各 σ 级别"),
    schedule: Optional[str] = typer.Option(None, "--schedule", help="σ 调度，如 20x20,10x20,5x20"),
    final_projection: Optional[bool] = typer.Option(
        None, "--final-projection/--no-final-projection", help="返回前是否做最终投影"
    ),
    reference: Optional[list[Path]] = typer.Option(
        None, "--reference", "-r", help="参考图像，与帧一一对应"
    ),
    trace: Optional[Path] = typer.Option(None, "--trace", help="迭代轨迹 CSV"),
    workers: int = typer.Option(1, "--workers", "-w", min=1, help="并发解码的帧数"),
    config: Optional[Path] = typer.Option(None, "--config", "-c", help="YAML 设置文件"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="输出调试日志"),
) -> None:
    """解码码流并写出图像"""
    _setup_logging(verbose)
    with handle_errors():
        settings = _settings(
            config,
            "decode",
            {"schedule": schedule, "denoiser": denoiser, "final_projection": final_projection},
        )
        cfg = settings.decode
        if iters is not None:
            cfg = cfg.with_total_iterations(iters)

        stream = load_stream(source)
        references = [load_image(path) for path in reference] if reference else None
        with Stopwatch() as clock:
            decoded = decode_stream(stream, cfg, references=references, workers=workers)

        count = len(decoded)
        for index, frame in enumerate(decoded):
            path = save_image(_numbered(output, index, count), frame.image)
            typer.echo(f"  写入 {path}")
            if trace is not None:
                frame.trace.to_csv(_numbered(trace, index, count))
            if references is not None:
                truth = luma_of(references[index])
                typer.echo(
                    f"  帧 {index}: PSNR={psnr(truth, frame.luma):.2f} dB, "
                    f"SSIM={ssim(truth, frame.luma):.4f}"
                )
        typer.secho(
            f"✓ 解码 {count} 帧，耗时 {format_duration(clock.elapsed)}",
            fg=typer.colors.GREEN,
            bold=True,
        )


@register_command("bench")
def bench(
    images: Optional[Path] = typer.Option(
        None, "--images", help="测试图像目录，缺省时使用合成测试集"
    ),
    output: Path = typer.Option(Path("bench_out"), "--output", "-o", help="输出目录"),
    codecs: Optional[str] = typer.Option(None, "--codecs", help="逗号分隔的编解码器"),
    ratios: Optional[str] = typer.Option(None, "--ratios", help="逗号分隔的压缩比"),
    bits: Optional[str] = typer.Option(None, "--bits", help="逗号分隔的位深"),
    workers: Optional[int] = typer.Option(None, "--workers", "-w", help="并行进程数"),
    seed: Optional[int] = typer.Option(None, "--seed", help="掩码与合成图像种子"),
    size: Optional[int] = typer.Option(None, "--size", help="合成图像边长"),
    count: Optional[int] = typer.Option(None, "--count", help="合成图像数量"),
    iters: Optional[int] = typer.Option(None, "--iters", help="解码总迭代次数"),
    denoiser: Optional[str] = typer.Option(None, "--denoiser", help="tv / nlm / identity"),
    config: Optional[Path] = typer.Option(None, "--config", "-c", help="YAML 设置文件"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="输出调试日志"),
) -> None:
    """在 (图像, 编解码器, Cr, bits) 网格上运行基准测试"""
    _setup_logging(verbose)
    with handle_errors():
        overrides: dict[str, t.Any] = {
            "bench": {
                k: v
                for k, v in {
                    "codecs": _parse_list(codecs, str, "codecs"),
                    "ratios": _parse_list(ratios, int, "ratios"),
                    "bits": _parse_list(bits, int, "bits"),
                    "workers": workers,
                    "seed": seed,
                    "image_size": size,
                    "image_count": count,
                }.items()
                if v is not None
            }
        }
        if denoiser is not None:
            overrides["decode"] = {"denoiser": denoiser}
        settings = load_settings(config, overrides)
        cfg = settings.decode
        if iters is not None:
            cfg = cfg.with_total_iterations(iters)

        inputs: list[Path] = []
        if images is not None:
            inputs = gather_images([images])
            if not inputs:
                raise BmvcError("目录中没有可读取的图像", {"path": str(images)})
            test_set = [(path.stem, load_image(path)) for path in inputs]
        else:
            bench_settings = settings.bench
            test_set = synthetic_test_set(
                bench_settings.image_count, bench_settings.image_size, bench_settings.seed
            )

        with Stopwatch() as clock:
            report = run_bench(test_set, settings.bench, cfg, output, inputs=inputs)

        typer.echo(format_summary(report.rows))
        if report.skipped:
            typer.secho(f"  跳过 {len(report.skipped)} 格", fg=typer.colors.YELLOW)
        typer.secho(
            f"✓ {len(report.rows)} 行结果写入 {report.csv_path}，耗时 {format_duration(clock.elapsed)}",
            fg=typer.colors.GREEN,
            bold=True,
        )


@register_command("mask")
def mask(
    seed: int = typer.Option(42, "--seed", help="掩码种子"),
    size: str = typer.Option(..., "--size", help="掩码尺寸 HxW"),
    output: Path = typer.Option(..., "--output", "-o", help="输出 PBM 路径"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="输出调试日志"),
) -> None:
    """导出密钥掩码为 PBM 以便检查"""
    _setup_logging(verbose)
    with handle_errors():
        height, width = parse_size(size)
        if not 0 <= seed < 2**64:
            raise ConfigValidationError("种子必须是 64 位无符号整数", {"seed": seed})
        plane = generate_mask(seed, height, width)
        export_mask(plane, output)
        typer.secho(
            f"✓ 已写入 {output}（1 的比例 {plane.fraction_of_ones:.3f}）",
            fg=typer.colors.GREEN,
            bold=True,
        )
