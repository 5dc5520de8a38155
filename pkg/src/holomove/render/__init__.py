"""Tile-parallel raster classification and image emission."""

from .engine import (bounding_radius, component_count, default_workers,
                     hausdorff_pixels, render)
from .images import emit_image, load_label_dump, write_label_dump
from .spec import (DEFAULT_PALETTE, LABEL_IN, LABEL_OTHER, LABEL_OUT,
                   LABEL_UNDECIDED, RasterClass, RenderSpec)

__all__ = [
    "DEFAULT_PALETTE",
    "LABEL_IN",
    "LABEL_OTHER",
    "LABEL_OUT",
    "LABEL_UNDECIDED",
    "RasterClass",
    "RenderSpec",
    "bounding_radius",
    "component_count",
    "default_workers",
    "emit_image",
    "hausdorff_pixels",
    "load_label_dump",
    "render",
    "write_label_dump",
]
