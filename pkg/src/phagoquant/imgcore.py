"""Core raster types and pixel-level primitives.

Working representation for all image math is a 2D float64 array with
intensities in [0, 1]; bit depth is carried as metadata on :class:`Frame`.
All neighborhood operations use reflective (edge-repeat) border handling,
which conserves total intensity under smoothing and keeps dark borders
from biasing downstream statistics.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy import ndimage
from scipy.signal import fftconvolve

# Direct separable convolution up to this kernel size, FFT above it.
_FFT_KERNEL_CUTOFF = 31


class BitDepth(enum.Enum):
    U8 = "u8"
    U16 = "u16"


class Connectivity(enum.Enum):
    FOUR = 4
    EIGHT = 8


@dataclass(frozen=True)
class Frame:
    """One grayscale raster with time index and physical calibration.

    pixels: 2D float64 array, row-major, intensities in [0, 1].
    """

    pixels: np.ndarray
    bit_depth_origin: BitDepth = BitDepth.U16
    t_index: int = 0
    pixel_pitch_um: float = 0.103

    def __post_init__(self):
        px = np.asarray(self.pixels, dtype=np.float64)
        object.__setattr__(self, "pixels", px)
        if px.ndim != 2 or px.shape[0] < 1 or px.shape[1] < 1:
            raise ValueError(f"frame must be a nonempty 2D array, got shape {px.shape}")
        if not np.all(np.isfinite(px)):
            raise ValueError("frame intensities must be finite")
        if px.min() < 0.0 or px.max() > 1.0:
            raise ValueError("frame intensities must lie in [0, 1]")

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    def with_pixels(self, pixels: np.ndarray) -> "Frame":
        return Frame(pixels, self.bit_depth_origin, self.t_index, self.pixel_pitch_um)


@dataclass(frozen=True)
class GaussianSpec:
    """Smoothing kernel description: odd pixel size (0 disables) and sigma."""

    kernel_size: int
    sigma: float = 0.0

    def __post_init__(self):
        if self.kernel_size == 0:
            return
        if self.kernel_size < 3 or self.kernel_size % 2 == 0:
            raise ValueError(f"kernel_size must be 0 or an odd integer >= 3, got {self.kernel_size}")
        if self.sigma <= 0.0:
            object.__setattr__(self, "sigma", gaussian_sigma(self.kernel_size))


@dataclass(frozen=True)
class LabelMap:
    """Integer component labels, 0 = background, 1..max_label = components."""

    labels: np.ndarray
    max_label: int

    def __post_init__(self):
        lab = np.asarray(self.labels)
        if not np.issubdtype(lab.dtype, np.integer):
            lab = lab.astype(np.int32)
        object.__setattr__(self, "labels", lab)

    @property
    def height(self) -> int:
        return self.labels.shape[0]

    @property
    def width(self) -> int:
        return self.labels.shape[1]


@dataclass(frozen=True)
class RegionFeatures:
    label: int
    area_px: int
    centroid_xy: tuple[float, float]  # (column mean, row mean)


def gaussian_sigma(kernel_size: int) -> float:
    """Standard deviation paired with an odd smoothing kernel size.

    sigma = 0.3 * ((kernel_size - 1) * 0.5 - 1) + 0.8, e.g. 513 -> 77.3.
    """
    if kernel_size < 3 or kernel_size % 2 == 0:
        raise ValueError(f"kernel_size must be an odd integer >= 3, got {kernel_size}")
    return 0.3 * ((kernel_size - 1) * 0.5 - 1.0) + 0.8


def gaussian_kernel(kernel_size: int, sigma: float | None = None) -> np.ndarray:
    """Sampled 1D Gaussian, normalized to unit sum."""
    if sigma is None:
        sigma = gaussian_sigma(kernel_size)
    half = kernel_size // 2
    x = np.arange(-half, half + 1, dtype=np.float64)
    k = np.exp(-(x * x) / (2.0 * sigma * sigma))
    return k / k.sum()


def _smooth_array(img: np.ndarray, kernel_size: int, sigma: float | None = None) -> np.ndarray:
    # scipy's "reflect" and numpy's "symmetric" are the same edge-repeat
    # extension, so the direct and FFT paths agree to float rounding.
    if kernel_size == 0:
        return img
    k = gaussian_kernel(kernel_size, sigma)
    if kernel_size <= _FFT_KERNEL_CUTOFF:
        out = ndimage.correlate1d(img, k, axis=0, mode="reflect")
        out = ndimage.correlate1d(out, k, axis=1, mode="reflect")
        return out
    half = kernel_size // 2
    out = np.pad(img, ((half, half), (0, 0)), mode="symmetric")
    out = fftconvolve(out, k[:, None], mode="valid")
    out = np.pad(out, ((0, 0), (half, half)), mode="symmetric")
    out = fftconvolve(out, k[None, :], mode="valid")
    return out


def gaussian_smooth(frame: Frame, spec: GaussianSpec) -> Frame:
    """Separable Gaussian smoothing with reflective borders.

    A zero kernel size returns the input frame unchanged. The kernel is
    the sampled, unit-sum Gaussian of :func:`gaussian_kernel`, so total
    intensity is preserved up to float rounding. Output is clamped to
    [0, 1] (a no-op beyond rounding, since the kernel is non-negative).
    """
    if spec.kernel_size == 0:
        return frame
    out = _smooth_array(frame.pixels, spec.kernel_size, spec.sigma)
    np.clip(out, 0.0, 1.0, out=out)
    return frame.with_pixels(out)


def laplacian5(pixels: np.ndarray) -> np.ndarray:
    """Five-point Laplacian with reflective borders; signed, unclamped output."""
    img = np.asarray(pixels, dtype=np.float64)
    if img.ndim != 2 or img.shape[0] < 3 or img.shape[1] < 3:
        raise ValueError(f"laplacian5 needs at least a 3x3 image, got shape {img.shape}")
    p = np.pad(img, 1, mode="symmetric")
    return p[:-2, 1:-1] + p[2:, 1:-1] + p[1:-1, :-2] + p[1:-1, 2:] - 4.0 * img


def _pull_sample(img: np.ndarray, offset_x: float, offset_y: float):
    """Bilinear sample of img at (x + offset_x, y + offset_y).

    Returns (values, mask): out-of-bounds samples are 0 with mask False.
    Translation sampling is separable, so index vectors stay 1D.
    """
    h, w = img.shape
    xs = np.arange(w, dtype=np.float64) + offset_x
    ys = np.arange(h, dtype=np.float64) + offset_y
    valid_x = (xs >= 0.0) & (xs <= w - 1.0)
    valid_y = (ys >= 0.0) & (ys <= h - 1.0)

    x0 = np.clip(np.floor(xs).astype(np.intp), 0, w - 1)
    y0 = np.clip(np.floor(ys).astype(np.intp), 0, h - 1)
    x1 = np.minimum(x0 + 1, w - 1)
    y1 = np.minimum(y0 + 1, h - 1)
    wx = np.clip(xs - x0, 0.0, 1.0)
    wy = np.clip(ys - y0, 0.0, 1.0)

    top = img[y0[:, None], x0[None, :]] * (1.0 - wx) + img[y0[:, None], x1[None, :]] * wx
    bot = img[y1[:, None], x0[None, :]] * (1.0 - wx) + img[y1[:, None], x1[None, :]] * wx
    out = top * (1.0 - wy)[:, None] + bot * wy[:, None]

    mask = valid_y[:, None] & valid_x[None, :]
    out[~mask] = 0.0
    return out, mask


def warp_translate(frame: Frame, dx: float, dy: float) -> Frame:
    """Translate frame content by (dx, dy) with bilinear interpolation.

    Output pixel (x, y) samples the source at (x - dx, y - dy); samples
    falling outside the source become 0. Sub-pixel shifts are supported.
    """
    if not (math.isfinite(dx) and math.isfinite(dy)):
        raise ValueError(f"shift must be finite, got ({dx}, {dy})")
    out, _ = _pull_sample(frame.pixels, -dx, -dy)
    np.clip(out, 0.0, 1.0, out=out)
    return frame.with_pixels(out)


_STRUCT_FOUR = np.array([[0, 1, 0], [1, 1, 1], [0, 1, 0]], dtype=bool)
_STRUCT_EIGHT = np.ones((3, 3), dtype=bool)


def label_components(binary: np.ndarray, connectivity: Connectivity = Connectivity.EIGHT) -> LabelMap:
    """Label maximal connected foreground components of a {0,1} mask.

    Labels are renumbered to raster-scan first-touch order, making the
    output deterministic regardless of the underlying labeling pass.
    """
    mask = np.asarray(binary)
    if mask.dtype != bool:
        vals = np.unique(mask)
        if not np.all(np.isin(vals, (0, 1))):
            raise ValueError("label_components expects a binary mask of 0s and 1s")
        mask = mask.astype(bool)
    structure = _STRUCT_FOUR if connectivity is Connectivity.FOUR else _STRUCT_EIGHT
    raw, n = ndimage.label(mask, structure=structure)
    if n == 0:
        return LabelMap(np.zeros(mask.shape, dtype=np.int32), 0)
    flat = raw.ravel()
    first_touch = np.full(n + 1, flat.size, dtype=np.intp)
    idx = np.flatnonzero(flat)
    np.minimum.at(first_touch, flat[idx], idx)
    order = np.argsort(first_touch[1:], kind="stable")
    remap = np.zeros(n + 1, dtype=np.int32)
    remap[order + 1] = np.arange(1, n + 1, dtype=np.int32)
    return LabelMap(remap[raw], n)


def region_features(labels: LabelMap) -> list[RegionFeatures]:
    """Per-label pixel count and centroid (column mean, row mean)."""
    if labels.max_label == 0:
        return []
    lab = labels.labels
    flat = lab.ravel()
    n = labels.max_label
    areas = np.bincount(flat, minlength=n + 1)[1:]
    yy, xx = np.indices(lab.shape)
    sx = np.bincount(flat, weights=xx.ravel(), minlength=n + 1)[1:]
    sy = np.bincount(flat, weights=yy.ravel(), minlength=n + 1)[1:]
    return [
        RegionFeatures(label=i + 1, area_px=int(areas[i]),
                       centroid_xy=(sx[i] / areas[i], sy[i] / areas[i]))
        for i in range(n)
    ]


def resize_half(pixels: np.ndarray) -> np.ndarray:
    """Downscale by 2 with 2x2 block averaging; preserves mean intensity."""
    img = np.asarray(pixels, dtype=np.float64)
    h, w = img.shape
    if h % 2 or w % 2:
        raise ValueError(f"resize_half needs even dimensions, got {img.shape}")
    return img.reshape(h // 2, 2, w // 2, 2).mean(axis=(1, 3))
