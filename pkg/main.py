from bmvc import DecodeConfig, EncodeSettings, decode_stream, encode_frames, psnr, synthetic_test_set


def main():
    name, image = synthetic_test_set(count=1, size=64)[0]
    stream, stats, _ = encode_frames([image], EncodeSettings(ratio=16, bits=8))
    decoded = decode_stream(stream, DecodeConfig())
    print(f"{name}: Cr={stats.compression_ratio:.0f}, {stats.stream_bytes} bytes, "
          f"PSNR={psnr(image, decoded[0].luma):.2f} dB")


if __name__ == "__main__":
    main()
