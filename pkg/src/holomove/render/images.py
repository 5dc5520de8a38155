"""Image and label-dump emission.

PPM (P6, 8-bit, no comments) is the bit-exact reference format; PNG is a
convenience behind an optional Pillow import.  The label dump is a flat
binary regression format: two little-endian uint32 (width, height) followed
by one label byte per pixel, row-major.
"""

import struct

import numpy as np

from .spec import RasterClass

__all__ = ["emit_image", "load_label_dump", "write_label_dump"]


def emit_image(raster: RasterClass, path, fmt: str = "ppm"):
    """Write the raster's palette image; returns the path written."""
    rgb = raster.to_rgb()
    if fmt == "ppm":
        header = f"P6\n{raster.spec.width} {raster.spec.height}\n255\n"
        with open(path, "wb") as fh:
            fh.write(header.encode("ascii"))
            fh.write(rgb.tobytes())
    elif fmt == "png":
        try:
            from PIL import Image
        except ImportError as exc:
            raise RuntimeError("PNG output needs Pillow (pip install holomove[png])") from exc
        Image.fromarray(rgb, mode="RGB").save(path, format="PNG")
    else:
        raise ValueError(f"unknown image format {fmt!r}")
    return path


def write_label_dump(raster: RasterClass, path):
    with open(path, "wb") as fh:
        fh.write(struct.pack("<II", raster.spec.width, raster.spec.height))
        fh.write(np.ascontiguousarray(raster.labels, dtype=np.uint8).tobytes())
    return path


def load_label_dump(path) -> np.ndarray:
    with open(path, "rb") as fh:
        width, height = struct.unpack("<II", fh.read(8))
        data = np.frombuffer(fh.read(width * height), dtype=np.uint8)
    return data.reshape(height, width)
