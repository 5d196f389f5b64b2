"""PGM (P2 ascii / P5 binary) reading and writing, maxval up to 255."""

from __future__ import annotations

import numpy as np

from .grid import Image


def read_pgm(data: bytes, *, remap_zero: bool = False) -> Image:
    """Parse P2 or P5 bytes into an Image.

    Grey level 0 is rejected (geodesic weights assume strictly positive
    values) unless ``remap_zero`` lifts zeros to 1.
    """
    magic, pos = _token(data, 0)
    if magic not in (b"P2", b"P5"):
        raise ValueError(f"unsupported PNM magic {magic!r} (want P2 or P5)")
    fields = []
    for _ in range(3):
        tok, pos = _token(data, pos)
        fields.append(_int_token(tok))
    width, height, maxval = fields
    if width < 1 or height < 1:
        raise ValueError(f"invalid dimensions {width}x{height}")
    if not 0 < maxval <= 255:
        raise ValueError(f"maxval {maxval} out of range (1..255)")
    count = width * height
    if magic == b"P5":
        # single whitespace byte separates the header from the raster
        raster = data[pos + 1:]
        if len(raster) < count:
            raise ValueError(f"raster holds {len(raster)} bytes, need {count}")
        values = np.frombuffer(raster[:count], dtype=np.uint8).astype(np.int64)
    else:
        toks = data[pos:].split()
        if len(toks) < count:
            raise ValueError(f"raster holds {len(toks)} samples, need {count}")
        values = np.array([_int_token(t) for t in toks[:count]], dtype=np.int64)
    if values.max() > maxval:
        raise ValueError(f"sample {values.max()} exceeds maxval {maxval}")
    if (values == 0).any():
        if not remap_zero:
            raise ValueError(
                "image contains grey level 0; pass remap_zero to lift it to 1"
            )
        values = np.maximum(values, 1)
    return Image(values.reshape(height, width))


def write_pgm(image: Image) -> bytes:
    """Serialize an Image as binary P5 with maxval 255."""
    header = f"P5\n{image.width} {image.height}\n255\n".encode("ascii")
    return header + image.pixels.astype(np.uint8).tobytes()


def _token(data: bytes, pos: int) -> tuple[bytes, int]:
    """Next whitespace-delimited header token, skipping '#' comments."""
    n = len(data)
    while pos < n:
        ch = data[pos:pos + 1]
        if ch.isspace():
            pos += 1
        elif ch == b"#":
            end = data.find(b"\n", pos)
            pos = n if end < 0 else end + 1
        else:
            break
    if pos >= n:
        raise ValueError("truncated PNM header")
    start = pos
    while pos < n and not data[pos:pos + 1].isspace():
        pos += 1
    return data[start:pos], pos


def _int_token(tok: bytes) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ValueError(f"expected integer in PNM data, got {tok!r}") from None
