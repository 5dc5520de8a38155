"""Raster specifications and classified rasters."""

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "DEFAULT_PALETTE",
    "KINDS",
    "LABEL_IN",
    "LABEL_OTHER",
    "LABEL_OUT",
    "LABEL_UNDECIDED",
    "RasterClass",
    "RenderSpec",
]

# class labels shared by every raster kind
LABEL_OUT = 0        # escaped / not attracted / outside locus
LABEL_IN = 1         # locus member, immediate basin, main component
LABEL_UNDECIDED = 2  # budget exhausted without a decision
LABEL_OTHER = 3      # attracted, but in a different component than the anchor

# blue to match the reference figures; escape white, undecided gray
DEFAULT_PALETTE = {
    LABEL_OUT: (255, 255, 255),
    LABEL_IN: (0x30, 0x60, 0xC0),
    LABEL_UNDECIDED: (128, 128, 128),
    LABEL_OTHER: (0x70, 0xA0, 0xE0),
}

KINDS = ("param_plane_fa", "dyn_plane_fa", "locus_g", "mandelbrot")


@dataclass(frozen=True)
class RenderSpec:
    """Everything needed to classify one window deterministically.

    kind selects the per-pixel predicate; param carries a for dyn_plane_fa
    and lambda for locus_g (unused otherwise).  Pixels are sampled at their
    centers, row 0 at y_min.
    """

    x_min: float
    x_max: float
    y_min: float
    y_max: float
    width: int
    height: int
    kind: str
    param: complex = 0j
    max_iter: int = 2000
    escape_radius: float = 1e6
    palette: dict = field(default_factory=lambda: dict(DEFAULT_PALETTE))

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown raster kind {self.kind!r}")
        if self.width < 16 or self.height < 16:
            raise ValueError("resolution must be at least 16x16")
        if not (self.x_max > self.x_min and self.y_max > self.y_min):
            raise ValueError("degenerate window")
        if self.kind in ("dyn_plane_fa", "locus_g") and self.param == 0:
            raise ValueError(f"{self.kind} requires a nonzero parameter")

    @property
    def pixel_width(self) -> float:
        return (self.x_max - self.x_min) / self.width

    @property
    def pixel_height(self) -> float:
        return (self.y_max - self.y_min) / self.height

    def xs(self) -> np.ndarray:
        return self.x_min + (np.arange(self.width) + 0.5) * self.pixel_width

    def ys(self) -> np.ndarray:
        return self.y_min + (np.arange(self.height) + 0.5) * self.pixel_height

    def pixel_of(self, z: complex):
        """(row, col) of the pixel containing z, clipped to the window."""
        col = int(np.clip((z.real - self.x_min) / self.pixel_width, 0, self.width - 1))
        row = int(np.clip((z.imag - self.y_min) / self.pixel_height, 0, self.height - 1))
        return row, col

    def key(self):
        """Hashable identity for caching (palette excluded)."""
        return (self.x_min, self.x_max, self.y_min, self.y_max, self.width,
                self.height, self.kind, self.param, self.max_iter,
                self.escape_radius)


@dataclass
class RasterClass:
    """Pixel-grid classification: labels plus decision-step provenance.

    Identical specs produce bit-identical labels regardless of worker count
    or tile scheduling.
    """

    spec: RenderSpec
    labels: np.ndarray   # (height, width) uint8
    steps: np.ndarray    # (height, width) int32, decision step per pixel
    backend: str = ""

    def label_points(self, label: int) -> np.ndarray:
        """Complex pixel-center coordinates carrying the given label."""
        iy, ix = np.where(self.labels == label)
        return self.spec.xs()[ix] + 1j * self.spec.ys()[iy]

    def fraction(self, label: int) -> float:
        return float(np.mean(self.labels == label))

    def undecided_fraction(self) -> float:
        """Pixels that ran out of budget without any terminal event."""
        if self.spec.kind in ("mandelbrot", "locus_g"):
            return self.fraction(LABEL_UNDECIDED)
        stuck = (self.labels != LABEL_IN) & (self.labels != LABEL_OTHER) \
            & (self.steps >= self.spec.max_iter)
        return float(np.mean(stuck | (self.labels == LABEL_UNDECIDED)))

    def to_rgb(self) -> np.ndarray:
        out = np.zeros((self.spec.height, self.spec.width, 3), dtype=np.uint8)
        for label, color in self.spec.palette.items():
            out[self.labels == label] = color
        return out
